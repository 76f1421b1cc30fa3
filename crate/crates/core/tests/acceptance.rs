//! Acceptance checks. Runs as a plain binary under `cargo test` and prints
//! one line per criterion. All comparisons are exact (tolerance 0); each
//! criterion also has a wall-clock budget that counts toward its verdict.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::{counterexample, example_folded, example_network, index_subsets, lp};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tnloop::factor::{certify, factor, FactorError, StepKind};
use tnloop::interlace::{hurwitz, interlaces_routh, interlaces_sturm, one_by_two, reverse};
use tnloop::random::{planar_network, poly_pair, rational_matrix, small_planar_network, tn_matrix};
use tnloop::scalar::rat;
use tnloop::tl::{
    all_immanants, cm_diagram, comp_minor_immanant, theta, tl_multiply, verify_dcmd_det_report, verify_rs_all,
    NcMatching, TlElement,
};
use tnloop::tncheck::{find_special_sw_corner, is_tn_window};
use tnloop::{DenseMatrix, LoopMatrix, RatPoly};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn subsets(n: usize) -> Vec<Vec<usize>> {
    (0..1u32 << n).map(|mask| (1..=n).filter(|k| mask & (1 << (k - 1)) != 0).collect()).collect()
}

fn dense(rows: &[&[i64]]) -> DenseMatrix {
    DenseMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect()).unwrap()
}

fn c1_unfolding() -> Outcome {
    // 1/(1-6t) truncated after t^2
    let m = LoopMatrix::new(
        2,
        2,
        vec![
            vec![lp(&[(0, 1), (1, 6), (2, 36)]), lp(&[(0, 2), (1, 12), (2, 72)])],
            vec![lp(&[(1, 3), (2, 18)]), lp(&[(0, 1), (1, 6), (2, 36)])],
        ],
    )
    .unwrap();
    let expected = [dense(&[&[1, 2], &[0, 1]]), dense(&[&[6, 12], &[3, 6]]), dense(&[&[36, 72], &[18, 36]])];
    for (d, block) in expected.iter().enumerate() {
        ensure(m.block(d as i64) == *block, || format!("block A{d} = {}", m.block(d as i64)))?;
    }
    let window = m.window(&[1, 2, 3, 4], &[1, 2, 3, 4, 5, 6]);
    let shown = dense(&[&[1, 2, 6, 12, 36, 72], &[0, 1, 3, 6, 18, 36], &[0, 0, 1, 2, 6, 12], &[0, 0, 0, 1, 3, 6]]);
    ensure(window == shown, || format!("window {window}"))?;
    Ok("3 blocks and 4x6 window exact".into())
}

fn c2_cylindrical_example() -> Outcome {
    let w = example_network().folded_weight_matrix();
    ensure(w == example_folded(), || format!("folded {w}"))?;
    let window = w.window(&[1, 2, 3, 4, 5, 6], &[1, 2, 3, 4, 5, 6]);
    let shown = dense(&[
        &[1, 0, 0, 0, 0, 0],
        &[0, 1, 0, 0, 0, 0],
        &[0, 0, 1, 1, 0, 0],
        &[0, 0, 1, 1, 0, 0],
        &[0, 0, 0, 0, 1, 0],
        &[0, 0, 0, 0, 0, 1],
    ]);
    ensure(window == shown, || format!("window {window}"))?;
    Ok("folded matrix and 6x6 window exact".into())
}

fn c3_tl5() -> Outcome {
    let g = |i| TlElement::generator(5, i).unwrap();
    let lhs = tl_multiply(&tl_multiply(&g(1), &g(2)).unwrap(), &g(2).add(&g(3)).unwrap()).unwrap();
    let ta = NcMatching::from_pairs(5, &[(1, 2), (3, 6), (7, 8), (4, 9), (5, 10)]).unwrap();
    let tb = NcMatching::from_pairs(5, &[(1, 2), (3, 6), (4, 7), (8, 9), (5, 10)]).unwrap();
    let xi = RatPoly::monomial(rat(1), 1);
    let rhs = TlElement::basis(ta).scale(&xi).add(&TlElement::basis(tb)).unwrap();
    ensure(lhs == rhs, || format!("got {lhs:?}"))?;
    Ok("(t1 t2)(t2 + t3) = xi T_a + T_b".into())
}

fn c4_rhoades_skandera() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut pairs = 0;
    for k in 0..50 {
        let n = 3 + k % 3;
        let m = rational_matrix(&mut rng, n);
        let failures = verify_rs_all(&m).map_err(|e| e.to_string())?;
        ensure(failures.is_empty(), || format!("matrix {m} fails on {failures:?}"))?;
        pairs += subsets(n).iter().map(|r| subsets(n).iter().filter(|c| c.len() == r.len()).count()).sum::<usize>();
    }
    Ok(format!("50 matrices, {pairs} (I,J) pairs, 0 failures"))
}

fn c5_positivity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut vanishing = 0;
    for k in 0..100 {
        let n = 1 + k % 5;
        let m = tn_matrix(&mut rng, n, 2 * n + 2);
        let imms = all_immanants(&m).map_err(|e| e.to_string())?;
        if let Some((t, v)) = imms.iter().find(|(_, v)| *v < rat(0)) {
            return Err(format!("imm_{t:?} = {v} on {m}"));
        }
        for rows in subsets(n) {
            for cols in subsets(n).into_iter().filter(|c| c.len() == rows.len()) {
                if comp_minor_immanant(&m, &rows, &cols).map_err(|e| e.to_string())? != rat(0) {
                    continue;
                }
                vanishing += 1;
                for t in theta(&cm_diagram(&rows, &cols, n).map_err(|e| e.to_string())?) {
                    let v = &imms.iter().find(|(s, _)| *s == t).expect("basis element").1;
                    ensure(*v == rat(0), || format!("imm_{t:?} = {v} but C = 0 for I={rows:?} J={cols:?}"))?;
                }
            }
        }
    }
    Ok(format!("100 TN matrices, all immanants >= 0, {vanishing} vanishing C_(I,J) checked"))
}

fn c6_glv() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut minors = 0;
    for _ in 0..20 {
        let n = rng.gen_range(1..=3);
        let m = rng.gen_range(1..=3);
        let net = small_planar_network(&mut rng, n, m, 8, 12, 1);
        let w = net.folded_weight_matrix();
        for k in 1..=3 {
            for rows in index_subsets(1..=(2 * n) as i64, k) {
                for cols in index_subsets(1..=(2 * m) as i64, k) {
                    let det = w.window(&rows, &cols).determinant().map_err(|e| e.to_string())?;
                    let paths = net.glv_minor(&rows, &cols).map_err(|e| e.to_string())?;
                    ensure(paths == det, || format!("{net:?} I={rows:?} J={cols:?}: {paths} vs {det}"))?;
                    minors += 1;
                }
            }
        }
    }
    Ok(format!("20 networks, {minors} minors"))
}

fn factor_corpus() -> Vec<LoopMatrix> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    (0..30)
        .map(|_| {
            let n = rng.gen_range(1..=3);
            let m = rng.gen_range(1..=3);
            small_planar_network(&mut rng, n, m, 14, 10, 2).folded_weight_matrix()
        })
        .collect()
}

fn c7_roundtrip() -> Outcome {
    let mut steps = 0;
    for w in factor_corpus() {
        let r = factor(&w).map_err(|e| format!("{e} on {w}"))?;
        ensure(r.certified && certify(&w, &r.network), || format!("not certified: {w}"))?;
        ensure(r.network.edges().iter().all(|e| e.weight >= rat(0)), || "negative weight".into())?;
        ensure(r.network.folded_weight_matrix() == w, || format!("mismatch on {w}"))?;
        steps += r.steps.len();
    }
    Ok(format!("30 networks certified, {steps} steps"))
}

fn c8_stage_tn() -> Outcome {
    let mut checked = 0;
    for w in factor_corpus() {
        let r = factor(&w).map_err(|e| format!("{e} on {w}"))?;
        for s in r.steps.iter().filter(|s| matches!(s.kind, StepKind::CornerElim | StepKind::NonspecialElim)) {
            if let Some(wit) = is_tn_window(&s.resulting_matrix, 2, 3).witness() {
                return Err(format!("{} after {} on {w}: {wit:?}", s.resulting_matrix, s.kind));
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} post-elimination matrices pass (span 2, order 3)"))
}

fn c9_dcmd() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut total = 0;
    for (n, m) in [(2usize, 1usize), (4, 2)] {
        let mut instances = 0;
        while instances < 20 {
            let pieces = rng.gen_range(2..=5);
            let mat = planar_network(&mut rng, n, m, pieces).folded_weight_matrix();
            let Ok(Some(corner)) = find_special_sw_corner(&mat) else { continue };
            let rows_pool: Vec<i64> = (corner.i_star - 1..corner.i_star + 2 * n as i64).collect();
            let cols_pool: Vec<i64> = (corner.j_star..corner.j_star + 3 * m as i64 + 2).collect();
            for _ in 0..10 {
                let k = rng.gen_range(1..=4.min(rows_pool.len()).min(cols_pool.len()));
                let mut rows: Vec<i64> = rand::seq::index::sample(&mut rng, rows_pool.len(), k)
                    .into_iter()
                    .map(|x| rows_pool[x])
                    .collect();
                let mut cols: Vec<i64> = rand::seq::index::sample(&mut rng, cols_pool.len(), k)
                    .into_iter()
                    .map(|x| cols_pool[x])
                    .collect();
                rows.sort_unstable();
                cols.sort_unstable();
                let report = verify_dcmd_det_report(&mat, &corner, &rows, &cols).map_err(|e| e.to_string())?;
                ensure(report.all(), || format!("{mat} {corner:?} I={rows:?} J={cols:?}: {report:?}"))?;
                total += 1;
            }
            instances += 1;
        }
    }
    Ok(format!("40 instances, {total} submatrices, all identities exact"))
}

fn c10_interlacing() -> Outcome {
    let m = counterexample();
    let w = is_tn_window(&m, 3, 4).witness().ok_or("no witness")?;
    ensure(w.value == rat(-22), || format!("witness {w:?}"))?;
    match factor(&m) {
        Err(FactorError::NotTotallyNonnegative { witness, on_input: true, .. }) if witness.value == rat(-22) => {}
        other => return Err(format!("factor on counterexample: {other:?}")),
    }

    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let (mut yes, mut no) = (0, 0);
    for _ in 0..300 {
        let (p0, p1) = poly_pair(&mut rng, 6);
        let sturm = interlaces_sturm(&p0, &p1);
        let routh = interlaces_routh(&p0, &p1).map_err(|e| e.to_string())?;
        let certified = match factor(&hurwitz(&p0, &p1)) {
            Ok(r) => r.certified,
            Err(FactorError::NotTotallyNonnegative { .. }) => false,
            Err(e) => return Err(format!("{e} for p0 = {p0}, p1 = {p1}")),
        };
        ensure(sturm == routh && routh == certified, || {
            format!("p0 = {p0}, p1 = {p1}: sturm {sturm}, routh {routh}, factor {certified}")
        })?;
        if sturm {
            yes += 1;
        } else {
            no += 1;
        }
    }

    let mut reversed = 0;
    while reversed < 50 {
        let (a, b) = poly_pair(&mut rng, 5);
        let (p0, p1) = (b, a);
        let Some(d) = p1.degree() else { continue };
        let expected = match (reverse(&p0, d), reverse(&p1, d)) {
            (Ok(r0), Ok(r1)) => interlaces_sturm(&r0, &r1),
            _ => false,
        };
        let certified = match factor(&one_by_two(&p1, &p0)) {
            Ok(r) => r.certified,
            Err(FactorError::NotTotallyNonnegative { .. }) => false,
            Err(e) => return Err(format!("{e} for [{p1}, {p0}]")),
        };
        ensure(expected == certified, || format!("[{p1}, {p0}]: reversal {expected}, factor {certified}"))?;
        reversed += 1;
    }
    Ok(format!("witness -22; 300 pairs agree ({yes} interlacing, {no} not); 50 reversals agree"))
}

struct Criterion {
    id: u32,
    name: &'static str,
    budget: Duration,
    run: fn() -> Outcome,
}

fn main() -> ExitCode {
    // `cargo test -- --list` and filters are not meaningful here.
    if std::env::args().any(|a| a == "--list") {
        return ExitCode::SUCCESS;
    }
    let secs = Duration::from_secs;
    let criteria = [
        Criterion { id: 1, name: "unfolding fixture", budget: secs(1), run: c1_unfolding },
        Criterion { id: 2, name: "cylindrical network fixture", budget: secs(1), run: c2_cylindrical_example },
        Criterion { id: 3, name: "TL_5 product", budget: secs(1), run: c3_tl5 },
        Criterion { id: 4, name: "Rhoades-Skandera identity", budget: secs(120), run: c4_rhoades_skandera },
        Criterion { id: 5, name: "immanant positivity and vanishing", budget: secs(120), run: c5_positivity },
        Criterion { id: 6, name: "cylindrical GLV", budget: secs(120), run: c6_glv },
        Criterion { id: 7, name: "factorization roundtrip", budget: secs(120), run: c7_roundtrip },
        Criterion { id: 8, name: "eliminated matrices stay TN", budget: secs(120), run: c8_stage_tn },
        Criterion { id: 9, name: "decorated diagram identity", budget: secs(120), run: c9_dcmd },
        Criterion { id: 10, name: "interlacing and Hurwitz matrices", budget: secs(180), run: c10_interlacing },
    ];
    let mut failures = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let (verdict, detail) = match outcome {
            Ok(d) if elapsed <= c.budget => ("PASS", d),
            Ok(d) => ("FAIL", format!("{d}; over budget")),
            Err(e) => ("FAIL", e),
        };
        if verdict == "FAIL" {
            failures += 1;
        }
        println!(
            "[{verdict}] criterion {:>2} {:<34} {:>9.3}s (budget {}s) {detail}",
            c.id,
            c.name,
            elapsed.as_secs_f64(),
            c.budget.as_secs()
        );
    }
    println!("acceptance: {} passed, {failures} failed", criteria.len() - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
