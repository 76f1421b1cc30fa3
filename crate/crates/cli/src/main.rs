//! `tnloop`: factor totally nonnegative loop matrices and check the
//! identities behind the factorization.
//!
//! Results go to stdout as JSON, traces to stderr. Exit status is 0 on
//! success, 1 on usage or I/O errors (and unresolved factorizations), and 2
//! when the input is refuted.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use tnloop::factor::{factor, FactorError, FactorResult};
use tnloop::interlace::{hurwitz, interlaces_routh, interlaces_sturm};
use tnloop::io::{
    parse_poly_csv, read_dense_matrix, read_loop_matrix, read_network, DenseMatrixJson, LoopMatrixJson, NetworkJson,
    WitnessJson,
};
use tnloop::random::{rational_matrix, small_planar_network, tn_matrix};
use tnloop::tl::{all_immanants, comp_minor_immanant, verify_rs, verify_rs_all};
use tnloop::tncheck::{default_scan, is_tn_window};
use tnloop::scalar::rat;
use tnloop::CylNetwork;

#[derive(Parser)]
#[command(name = "tnloop", version, about = "Totally nonnegative loop matrices and cylindrical networks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Factor a loop matrix into a cylindrical network with nonnegative weights.
    Factor {
        #[arg(long)]
        input: PathBuf,
        /// Also write the network JSON here.
        #[arg(long)]
        output: Option<PathBuf>,
        /// Print every step to stderr.
        #[arg(long)]
        trace: bool,
    },
    /// Scan minors of the unfolding for a negative one.
    CheckTn {
        #[arg(long)]
        input: PathBuf,
        /// Number of row periods scanned.
        #[arg(long)]
        span: Option<usize>,
        /// Largest minor order scanned.
        #[arg(long)]
        order: Option<usize>,
    },
    /// Weight matrix of a network.
    WeightMatrix {
        #[arg(long)]
        input: PathBuf,
        /// Folded matrix (the default).
        #[arg(long, conflicts_with = "window")]
        folded: bool,
        /// Top-left R x C window of the unfolding.
        #[arg(long, num_args = 2, value_names = ["R", "C"])]
        window: Option<Vec<usize>>,
    },
    /// Compare path-family sums with minors of the weight matrix.
    GlvVerify {
        /// Network to check; random planar networks otherwise.
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long, default_value_t = 10)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Largest minor order.
        #[arg(long, default_value_t = 2)]
        order: usize,
        /// Rows and columns are taken from this many periods.
        #[arg(long, default_value_t = 2)]
        periods: usize,
    },
    /// Check the complementary minor expansion and immanant positivity.
    TlVerify {
        #[arg(long, default_value_t = 4)]
        n: usize,
        #[arg(long, default_value_t = 10)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Dense matrix JSON; checks a single (I, J) pair with --rows/--cols.
        #[arg(long, requires_all = ["rows", "cols"])]
        matrix: Option<PathBuf>,
        #[arg(long, value_delimiter = ',')]
        rows: Option<Vec<usize>>,
        #[arg(long, value_delimiter = ',')]
        cols: Option<Vec<usize>>,
    },
    /// Decide whether p0 interlaces p1.
    Interlace {
        /// Coefficients, lowest degree first, e.g. "1,3,2".
        #[arg(long, allow_hyphen_values = true)]
        p0: String,
        #[arg(long, allow_hyphen_values = true)]
        p1: String,
        #[arg(long, value_enum, default_value_t = Method::Sturm)]
        method: Method,
    },
    /// Hurwitz matrix of (p0, p1) as a loop matrix.
    Hurwitz {
        #[arg(long, allow_hyphen_values = true)]
        p0: String,
        #[arg(long, allow_hyphen_values = true)]
        p1: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Sturm,
    Routh,
    Both,
}

/// Successful runs either pass or refute their input.
enum Verdict {
    Pass,
    Refuted,
}

type CmdResult = Result<Verdict, String>;

fn read(path: &Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn write(path: &Path, text: &str) -> Result<(), String> {
    fs::write(path, format!("{text}\n")).map_err(|e| format!("{}: {e}", path.display()))
}

fn emit<T: serde::Serialize>(v: &T) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn trace(result: &FactorResult) {
    for (k, s) in result.steps.iter().enumerate() {
        let corner = match &s.corner {
            Some((o, c)) => format!(" corner ({}, {}) in {o:?} orientation", c.i_star, c.j_star),
            None => String::new(),
        };
        let coeffs: Vec<String> = s.coefficients.iter().map(ToString::to_string).collect();
        eprintln!(
            "step {}: {} on the {:?}{corner}, coefficients [{}], now {}x{}",
            k + 1,
            s.kind,
            s.side,
            coeffs.join(", "),
            s.resulting_matrix.n(),
            s.resulting_matrix.m()
        );
    }
}

fn cmd_factor(input: &Path, output: Option<&Path>, show_trace: bool) -> CmdResult {
    let m = read_loop_matrix(&read(input)?).map_err(|e| e.to_string())?;
    match factor(&m) {
        Ok(result) => {
            if show_trace {
                trace(&result);
            }
            let net = json!(&NetworkJson::from_network(&result.network));
            if let Some(path) = output {
                write(path, &serde_json::to_string_pretty(&net).expect("serializable"))?;
            }
            emit(&json!({ "certified": result.certified, "steps": result.steps.len(), "network": net }));
            Ok(Verdict::Pass)
        }
        Err(FactorError::NotTotallyNonnegative { witness, on_input, reason }) => {
            eprintln!("not totally nonnegative: {reason}");
            emit(&json!({ "witness": json!(&WitnessJson::from(&witness)), "on_input": on_input, "reason": reason }));
            Ok(Verdict::Refuted)
        }
        Err(e) => Err(e.to_string()),
    }
}

fn cmd_check_tn(input: &Path, span: Option<usize>, order: Option<usize>) -> CmdResult {
    let m = read_loop_matrix(&read(input)?).map_err(|e| e.to_string())?;
    let (default_span, default_order) = default_scan(m.n());
    let (span, order) = (span.unwrap_or(default_span), order.unwrap_or(default_order));
    match is_tn_window(&m, span, order).witness() {
        None => {
            emit(&json!({ "tn": true, "span": span, "order": order }));
            Ok(Verdict::Pass)
        }
        Some(w) => {
            emit(&json!({ "tn": false, "span": span, "order": order, "witness": json!(&WitnessJson::from(&w)) }));
            Ok(Verdict::Refuted)
        }
    }
}

fn cmd_weight_matrix(input: &Path, window: Option<Vec<usize>>) -> CmdResult {
    let net = read_network(&read(input)?).map_err(|e| e.to_string())?;
    let w = net.folded_weight_matrix();
    match window {
        Some(rc) => {
            let rows: Vec<i64> = (1..=rc[0] as i64).collect();
            let cols: Vec<i64> = (1..=rc[1] as i64).collect();
            emit(&DenseMatrixJson::from_matrix(&w.window(&rows, &cols)));
        }
        None => emit(&LoopMatrixJson::from_matrix(&w)),
    }
    Ok(Verdict::Pass)
}

fn subsets(range: std::ops::RangeInclusive<i64>, k: usize) -> Vec<Vec<i64>> {
    let items: Vec<i64> = range.collect();
    let mut out = Vec::new();
    let mut stack: Vec<usize> = Vec::new();
    fn rec(items: &[i64], k: usize, start: usize, stack: &mut Vec<usize>, out: &mut Vec<Vec<i64>>) {
        if stack.len() == k {
            out.push(stack.iter().map(|&i| items[i]).collect());
            return;
        }
        for i in start..items.len() {
            stack.push(i);
            rec(items, k, i + 1, stack, out);
            stack.pop();
        }
    }
    rec(&items, k, 0, &mut stack, &mut out);
    out
}

fn glv_check(net: &CylNetwork, order: usize, periods: usize) -> Result<(usize, Vec<Value>), String> {
    let w = net.folded_weight_matrix();
    let (mut checked, mut failures) = (0, Vec::new());
    for k in 1..=order {
        for rows in subsets(1..=(periods * net.n()) as i64, k) {
            for cols in subsets(1..=(periods * net.m()) as i64, k) {
                let det = w.window(&rows, &cols).determinant().map_err(|e| e.to_string())?;
                let paths = net.glv_minor(&rows, &cols).map_err(|e| e.to_string())?;
                checked += 1;
                if paths != det {
                    eprintln!("FAIL rows {rows:?} cols {cols:?}: paths {paths}, determinant {det}");
                    failures.push(json!({ "rows": rows, "cols": cols, "paths": paths.to_string(), "det": det.to_string() }));
                }
            }
        }
    }
    Ok((checked, failures))
}

fn cmd_glv_verify(input: Option<&Path>, trials: usize, seed: u64, order: usize, periods: usize) -> CmdResult {
    let nets: Vec<CylNetwork> = match input {
        Some(path) => vec![read_network(&read(path)?).map_err(|e| e.to_string())?],
        None => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..trials)
                .map(|_| {
                    let n = rng.gen_range(1..=3);
                    let m = rng.gen_range(1..=3);
                    small_planar_network(&mut rng, n, m, 8, 12, 1)
                })
                .collect()
        }
    };
    let (mut checked, mut failures) = (0, Vec::new());
    for (k, net) in nets.iter().enumerate() {
        let (c, f) = glv_check(net, order, periods)?;
        eprintln!("network {}: {c} minors, {} failures", k + 1, f.len());
        checked += c;
        failures.extend(f);
    }
    let ok = failures.is_empty();
    emit(&json!({ "networks": nets.len(), "minors": checked, "failures": failures }));
    Ok(if ok { Verdict::Pass } else { Verdict::Refuted })
}

fn cmd_tl_verify(
    n: usize,
    trials: usize,
    seed: u64,
    matrix: Option<&Path>,
    rows: Option<Vec<usize>>,
    cols: Option<Vec<usize>>,
) -> CmdResult {
    if let (Some(path), Some(rows), Some(cols)) = (matrix, rows, cols) {
        let m = read_dense_matrix(&read(path)?).map_err(|e| e.to_string())?;
        let ok = verify_rs(&m, &rows, &cols).map_err(|e| e.to_string())?;
        let value = comp_minor_immanant(&m, &rows, &cols).map_err(|e| e.to_string())?;
        eprintln!("{} complementary minor expansion I={rows:?} J={cols:?}", if ok { "PASS" } else { "FAIL" });
        emit(&json!({ "identity": ok, "value": value.to_string() }));
        return Ok(if ok { Verdict::Pass } else { Verdict::Refuted });
    }
    if n == 0 {
        return Err("--n must be positive".into());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut expansion_failures, mut negative_immanants) = (0, 0);
    for trial in 1..=trials {
        let m = rational_matrix(&mut rng, n);
        let failures = verify_rs_all(&m).map_err(|e| e.to_string())?;
        eprintln!("{} trial {trial}: complementary minor expansion", if failures.is_empty() { "PASS" } else { "FAIL" });
        expansion_failures += failures.len();

        let tn = tn_matrix(&mut rng, n, 2 * n + 2);
        let negative = all_immanants(&tn).map_err(|e| e.to_string())?.iter().filter(|(_, v)| *v < rat(0)).count();
        eprintln!("{} trial {trial}: immanants of a TN matrix are nonnegative", if negative == 0 { "PASS" } else { "FAIL" });
        negative_immanants += negative;
    }
    let ok = expansion_failures == 0 && negative_immanants == 0;
    emit(&json!({
        "n": n,
        "trials": trials,
        "expansion_failures": expansion_failures,
        "negative_immanants": negative_immanants,
    }));
    Ok(if ok { Verdict::Pass } else { Verdict::Refuted })
}

fn cmd_interlace(p0: &str, p1: &str, method: Method) -> CmdResult {
    let p0 = parse_poly_csv(p0).map_err(|e| e.to_string())?;
    let p1 = parse_poly_csv(p1).map_err(|e| e.to_string())?;
    let routh = || interlaces_routh(&p0, &p1).map_err(|e| e.to_string());
    let (answer, out) = match method {
        Method::Sturm => {
            let s = interlaces_sturm(&p0, &p1);
            (s, json!({ "interlaces": s }))
        }
        Method::Routh => {
            let r = routh()?;
            (r, json!({ "interlaces": r }))
        }
        Method::Both => {
            let (s, r) = (interlaces_sturm(&p0, &p1), routh()?);
            if s != r {
                emit(&json!({ "sturm": s, "routh": r, "agree": false }));
                return Err("deciders disagree".into());
            }
            (s, json!({ "interlaces": s, "agree": true }))
        }
    };
    emit(&out);
    Ok(if answer { Verdict::Pass } else { Verdict::Refuted })
}

fn cmd_hurwitz(p0: &str, p1: &str, out: Option<&Path>) -> CmdResult {
    let h = hurwitz(&parse_poly_csv(p0).map_err(|e| e.to_string())?, &parse_poly_csv(p1).map_err(|e| e.to_string())?);
    let text = serde_json::to_string_pretty(&LoopMatrixJson::from_matrix(&h)).expect("serializable");
    match out {
        Some(path) => write(path, &text)?,
        None => println!("{text}"),
    }
    Ok(Verdict::Pass)
}

fn main() -> ExitCode {
    // clap uses status 2 for usage errors, which is reserved for refutations here.
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let result = match cli.command {
        Command::Factor { input, output, trace } => cmd_factor(&input, output.as_deref(), trace),
        Command::CheckTn { input, span, order } => cmd_check_tn(&input, span, order),
        Command::WeightMatrix { input, folded: _, window } => cmd_weight_matrix(&input, window),
        Command::GlvVerify { input, trials, seed, order, periods } => {
            cmd_glv_verify(input.as_deref(), trials, seed, order, periods)
        }
        Command::TlVerify { n, trials, seed, matrix, rows, cols } => {
            cmd_tl_verify(n, trials, seed, matrix.as_deref(), rows, cols)
        }
        Command::Interlace { p0, p1, method } => cmd_interlace(&p0, &p1, method),
        Command::Hurwitz { p0, p1, out } => cmd_hurwitz(&p0, &p1, out.as_deref()),
    };
    match result {
        Ok(Verdict::Pass) => ExitCode::SUCCESS,
        Ok(Verdict::Refuted) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
