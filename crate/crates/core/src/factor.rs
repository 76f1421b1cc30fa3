//! Factorization of totally nonnegative loop matrices into cylindrical
//! networks.
//!
//! Each step writes the current matrix as `R · M'` or `M' · R` where `R` is
//! the weight matrix of a small network with nonnegative weights and `M'`
//! is simpler. Steps available:
//!
//! * deleting an identically zero folded row or column (shrinks a period);
//! * a single-diagonal matrix, realized directly (terminates);
//! * eliminating a special SW corner by a periodic row operation, applied
//!   to the matrix, its transpose, its 180° rotation or the rotated
//!   transpose;
//! * for square matrices without any such corner, splitting off a whirl
//!   factor found from a rational root of the folded determinant.
//!
//! Negative data met along the way is reported together with a negative
//! minor of the input when one can be found.

use std::fmt;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::laurent::Laurent;
use crate::network::{
    concatenate, diagonal_network, elementary_row_network, empty_network, rotate_network, row_deletion_network,
    transpose_network, whirl_network,
};
use crate::roots::rational_roots;
use crate::tncheck::{default_scan, find_special_sw_corner, is_tn_window, CornerLocation, MinorWitness, TnCheckError};
use crate::{CylNetwork, LaurentPoly, LoopMatrix, RatPoly, Rational};

/// Upper bound on the number of steps; the termination measure makes this
/// unreachable for well-formed inputs.
const MAX_STEPS: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FactorError {
    /// A negative minor was found. `on_input` tells whether the witness
    /// indexes the input matrix or an intermediate matrix of the run.
    #[error("matrix is not totally nonnegative ({reason}); witness minor {} on rows {:?}, cols {:?}", witness.value, witness.rows, witness.cols)]
    NotTotallyNonnegative { witness: MinorWitness<Rational>, on_input: bool, reason: String },
    /// The run got stuck without a refutation, e.g. when the only whirl
    /// factors available have irrational parameters.
    #[error("factorization unresolved: {0}")]
    Unresolved(String),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StepKind {
    CornerElim,
    NonspecialElim,
    RowDelete,
    ColDelete,
    BaseDiagonal,
}

impl fmt::Display for StepKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            StepKind::CornerElim => "corner_elim",
            StepKind::NonspecialElim => "nonspecial_elim",
            StepKind::RowDelete => "row_delete",
            StepKind::ColDelete => "col_delete",
            StepKind::BaseDiagonal => "base_diagonal",
        };
        f.write_str(s)
    }
}

/// Which side the extracted factor sits on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    /// `before = W(piece) · after`
    Left,
    /// `before = after · W(piece)`
    Right,
}

/// Orientation in which a corner was found.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    Direct,
    Transposed,
    Rotated,
    RotatedTransposed,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorStep {
    pub kind: StepKind,
    pub side: Side,
    pub network_piece: CylNetwork,
    pub resulting_matrix: LoopMatrix,
    /// Corner used (in the coordinates of the oriented matrix).
    pub corner: Option<(Orientation, CornerLocation<Rational>)>,
    /// Row-operation coefficient or whirl parameters.
    pub coefficients: Vec<Rational>,
}

impl FactorStep {
    /// Whether `W(piece)` combined with the resulting matrix gives `before`.
    pub fn reproduces(&self, before: &LoopMatrix) -> bool {
        let w = self.network_piece.folded_weight_matrix();
        let product = match self.side {
            Side::Left => w.mul(&self.resulting_matrix),
            Side::Right => self.resulting_matrix.mul(&w),
        };
        product.as_ref() == Ok(before)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorResult {
    pub steps: Vec<FactorStep>,
    pub network: CylNetwork,
    pub certified: bool,
}

/// True iff `net` has nonnegative weights and folded weight matrix `m`.
pub fn certify(m: &LoopMatrix, net: &CylNetwork) -> bool {
    net.edges().iter().all(|e| !e.weight.is_negative()) && net.folded_weight_matrix() == *m
}

fn internal<E: fmt::Display>(e: E) -> FactorError {
    FactorError::Internal(e.to_string())
}

/// Eliminates a special SW corner: subtracts `c = a0 / b0` times row
/// `i* - 1` from every row congruent to `i*`. Returns the one-edge network
/// `R` and `M'` with `M = R · M'`.
pub fn eliminate_corner(
    m: &LoopMatrix,
    corner: &CornerLocation<Rational>,
) -> Result<(CylNetwork, LoopMatrix), FactorError> {
    if corner.b0.is_zero() {
        return Err(stage_refutation(m, "corner pivot is zero"));
    }
    let c = &corner.a0 / &corner.b0;
    if c.is_negative() {
        return Err(stage_refutation(m, "negative elimination coefficient"));
    }
    let (k, _) = crate::loop_matrix::split_index(corner.i_star, m.n());
    let reduced = m.periodic_row_operation(k, &c);
    let piece = elementary_row_network(m.n(), k, c).map_err(internal)?;
    if piece.folded_weight_matrix().mul(&reduced).map_err(internal)? != *m {
        return Err(FactorError::Internal("row operation does not reproduce the matrix".into()));
    }
    Ok((piece, reduced))
}

/// Refutation built from an intermediate matrix: a negative coefficient
/// gives a 1×1 witness, otherwise a small window scan is tried.
fn stage_refutation(m: &LoopMatrix, reason: &str) -> FactorError {
    let witness = negative_entry(m).or_else(|| {
        let (span, order) = default_scan(m.n());
        is_tn_window(m, span, order).witness()
    });
    match witness {
        Some(witness) => FactorError::NotTotallyNonnegative { witness, on_input: false, reason: reason.to_string() },
        None => FactorError::Unresolved(reason.to_string()),
    }
}

fn negative_entry(m: &LoopMatrix) -> Option<MinorWitness<Rational>> {
    for i in 1..=m.n() {
        for j in 1..=m.m() {
            if let Some((d, c)) = m.entry(i, j).terms().find(|(_, c)| c.is_negative()) {
                let col = j as i64 + d * m.m() as i64;
                return Some(MinorWitness { rows: vec![i as i64], cols: vec![col], value: c.clone() });
            }
        }
    }
    None
}

/// Replaces a refutation on an intermediate matrix by one on the input when
/// the default window scan of the input finds a negative minor.
fn lift_refutation(input: &LoopMatrix, err: FactorError) -> FactorError {
    match err {
        FactorError::NotTotallyNonnegative { on_input: false, reason, witness } => {
            let (span, order) = default_scan(input.n());
            match is_tn_window(input, span, order).witness() {
                Some(w) => FactorError::NotTotallyNonnegative { witness: w, on_input: true, reason },
                None => FactorError::NotTotallyNonnegative { witness, on_input: false, reason },
            }
        }
        FactorError::Unresolved(reason) => {
            let (span, order) = default_scan(input.n());
            match is_tn_window(input, span, order).witness() {
                Some(w) => FactorError::NotTotallyNonnegative { witness: w, on_input: true, reason },
                None => FactorError::Unresolved(reason),
            }
        }
        other => other,
    }
}

/// Lexicographic termination measure: periods, then the span of the folded
/// determinant (square case), then the number of nonzero coefficients.
fn measure(m: &LoopMatrix) -> (usize, i64, usize) {
    let span = if m.n() == m.m() {
        m.folded_determinant()
            .ok()
            .and_then(|d| Some(d.max_degree()? - d.min_degree()?))
            .unwrap_or(0)
    } else {
        0
    };
    (m.n() + m.m(), span, m.term_count())
}

/// Factors `m` into a cylindrical network with nonnegative weights.
pub fn factor(m: &LoopMatrix) -> Result<FactorResult, FactorError> {
    run(m).map_err(|e| lift_refutation(m, e))
}

fn run(input: &LoopMatrix) -> Result<FactorResult, FactorError> {
    let mut cur = input.clone();
    let mut steps: Vec<FactorStep> = Vec::new();
    let mut last = None;
    for _ in 0..MAX_STEPS {
        if cur.has_negative_coefficient() {
            let reason = if steps.is_empty() {
                "negative coefficient".to_string()
            } else {
                format!("negative coefficient at step {}", steps.len() + 1)
            };
            return Err(stage_refutation(&cur, &reason));
        }
        let mu = measure(&cur);
        if last.as_ref().is_some_and(|prev| mu >= *prev) {
            return Err(FactorError::Unresolved(format!("no progress at measure {mu:?}")));
        }
        last = Some(mu);
        let step = next_step(&cur)?;
        if !step.reproduces(&cur) {
            return Err(FactorError::Internal(format!("{} step does not reproduce its input", step.kind)));
        }
        let done = step.kind == StepKind::BaseDiagonal;
        cur = step.resulting_matrix.clone();
        steps.push(step);
        if done {
            let network = assemble(&steps)?;
            let certified = certify(input, &network);
            if !certified {
                return Err(FactorError::Internal("assembled network does not reproduce the input".into()));
            }
            return Ok(FactorResult { steps, network, certified });
        }
    }
    Err(FactorError::Unresolved("step limit reached".into()))
}

/// Left pieces in order, then the base, then right pieces in reverse.
fn assemble(steps: &[FactorStep]) -> Result<CylNetwork, FactorError> {
    let lefts = steps.iter().filter(|s| s.side == Side::Left);
    let rights = steps.iter().filter(|s| s.side == Side::Right).rev();
    let mut net: Option<CylNetwork> = None;
    for s in lefts.chain(rights) {
        net = Some(match net {
            None => s.network_piece.clone(),
            Some(prev) => concatenate(&prev, &s.network_piece).map_err(internal)?,
        });
    }
    net.ok_or_else(|| FactorError::Internal("no steps".into()))
}

fn base_step(m: &LoopMatrix, piece: CylNetwork) -> FactorStep {
    FactorStep {
        kind: StepKind::BaseDiagonal,
        side: Side::Left,
        resulting_matrix: LoopMatrix::identity(m.m()),
        network_piece: piece,
        corner: None,
        coefficients: Vec::new(),
    }
}

fn next_step(m: &LoopMatrix) -> Result<FactorStep, FactorError> {
    if m.is_zero() {
        // The identity on the sink side keeps the step identity valid.
        return Ok(base_step(m, empty_network(m.n(), m.m()).map_err(internal)?));
    }
    if let Some(&k) = m.zero_rows().first() {
        let piece = transpose_network(&row_deletion_network(m.n(), k).map_err(internal)?);
        return Ok(FactorStep {
            kind: StepKind::RowDelete,
            side: Side::Left,
            network_piece: piece,
            resulting_matrix: m.without_row(k).map_err(internal)?,
            corner: None,
            coefficients: Vec::new(),
        });
    }
    if let Some(&k) = m.zero_cols().first() {
        return Ok(FactorStep {
            kind: StepKind::ColDelete,
            side: Side::Right,
            network_piece: row_deletion_network(m.m(), k).map_err(internal)?,
            resulting_matrix: m.without_col(k).map_err(internal)?,
            corner: None,
            coefficients: Vec::new(),
        });
    }
    if let Some(d) = m.single_diagonal() {
        let weights: Vec<Rational> = (1..=m.n() as i64).map(|i| m.unfold_entry(i, i + d)).collect();
        return Ok(base_step(m, diagonal_network(&weights, d).map_err(internal)?));
    }
    let orientations: &[Orientation] = match m.n().cmp(&m.m()) {
        std::cmp::Ordering::Greater => &[Orientation::Direct, Orientation::Rotated],
        std::cmp::Ordering::Less => &[Orientation::Transposed, Orientation::RotatedTransposed],
        std::cmp::Ordering::Equal => {
            &[Orientation::Direct, Orientation::Transposed, Orientation::Rotated, Orientation::RotatedTransposed]
        }
    };
    for &o in orientations {
        let oriented = orient(m, o);
        let corner = match find_special_sw_corner(&oriented) {
            Ok(Some(c)) => c,
            Ok(None) => continue,
            Err(e) => return Err(corner_refutation(&oriented, e)),
        };
        let (piece, reduced) = eliminate_corner(&oriented, &corner)?;
        let (piece, reduced, side) = match o {
            Orientation::Direct => (piece, reduced, Side::Left),
            Orientation::Transposed => (transpose_network(&piece), reduced.transpose(), Side::Right),
            Orientation::Rotated => (rotate_network(&piece), reduced.rotate(), Side::Left),
            Orientation::RotatedTransposed => {
                (transpose_network(&rotate_network(&piece)), reduced.rotate().transpose(), Side::Right)
            }
        };
        let coefficients = vec![&corner.a0 / &corner.b0];
        return Ok(FactorStep {
            kind: StepKind::CornerElim,
            side,
            network_piece: piece,
            resulting_matrix: reduced,
            corner: Some((o, corner)),
            coefficients,
        });
    }
    if let Some((params, reduced)) = extract_whirl(m)? {
        return Ok(FactorStep {
            kind: StepKind::NonspecialElim,
            side: Side::Left,
            network_piece: whirl_network(&params).map_err(internal)?,
            resulting_matrix: reduced,
            corner: None,
            coefficients: params,
        });
    }
    if let Some((params, reduced)) = extract_whirl(&m.transpose())? {
        return Ok(FactorStep {
            kind: StepKind::NonspecialElim,
            side: Side::Right,
            network_piece: transpose_network(&whirl_network(&params).map_err(internal)?),
            resulting_matrix: reduced.transpose(),
            corner: None,
            coefficients: params,
        });
    }
    Err(stage_refutation(m, "no special corner and no rational whirl factor"))
}

fn orient(m: &LoopMatrix, o: Orientation) -> LoopMatrix {
    match o {
        Orientation::Direct => m.clone(),
        Orientation::Transposed => m.transpose(),
        Orientation::Rotated => m.rotate(),
        Orientation::RotatedTransposed => m.transpose().rotate(),
    }
}

fn corner_refutation(m: &LoopMatrix, e: TnCheckError) -> FactorError {
    stage_refutation(m, &e.to_string())
}

/// Tries to write the square matrix `m` as `W · M'` with `W` a whirl with
/// positive rational parameters and `M'` having nonnegative coefficients.
///
/// `det W = 1 - (-1)^n (Π a_i) t` must divide `det M`, so candidate points
/// `t0` are the rational roots of `det M` of sign `(-1)^n`; the parameters
/// are then forced by a left null vector of `M(t0)`.
fn extract_whirl(m: &LoopMatrix) -> Result<Option<(Vec<Rational>, LoopMatrix)>, FactorError> {
    let n = m.n();
    let det = m.folded_determinant().map_err(internal)?;
    let Some(low) = det.min_degree() else {
        return Ok(None);
    };
    let det_poly = det.shift(-low).to_poly().expect("shifted to nonnegative degrees");
    let sign_ok = |t0: &Rational| if n % 2 == 0 { t0.is_positive() } else { t0.is_negative() };
    for t0 in rational_roots(&det_poly).into_iter().filter(sign_ok) {
        let at = m.eval(&t0);
        for y in at.transpose().null_space() {
            if y.iter().any(Zero::is_zero) {
                continue;
            }
            let mut params: Vec<Rational> = (1..n).map(|j| -(&y[j] / &y[j - 1])).collect();
            params.push(-(&y[0] / (&y[n - 1] * &t0)));
            if params.iter().any(|a| !a.is_positive()) {
                continue;
            }
            if let Some(reduced) = divide_by_whirl(m, &params) {
                if !reduced.has_negative_coefficient() && reduced.term_count() > 0 {
                    return Ok(Some((params, reduced)));
                }
            }
        }
    }
    Ok(None)
}

/// Solves `W · X = m` for the whirl `W` with the given parameters, if the
/// solution has Laurent polynomial entries.
fn divide_by_whirl(m: &LoopMatrix, a: &[Rational]) -> Option<LoopMatrix> {
    let n = m.n();
    let rows = m.to_rows();
    // X_1 (1 - (-1)^n α t) = Σ_k (-1)^k (a_1 ⋯ a_k) M_{1+k}
    let mut s1: Vec<LaurentPoly> = rows[0].clone();
    let mut prefix = Rational::one();
    for k in 1..n {
        prefix = -(prefix * &a[k - 1]);
        for (acc, e) in s1.iter_mut().zip(&rows[k]) {
            *acc = &*acc + &e.scale(&prefix);
        }
    }
    let alpha: Rational = a.iter().fold(Rational::one(), |acc, x| acc * x);
    let beta = if n % 2 == 0 { -alpha } else { alpha };
    let mut x: Vec<Vec<LaurentPoly>> = vec![Vec::new(); n];
    x[0] = s1.iter().map(|e| divide_by_linear(e, &beta)).collect::<Option<Vec<_>>>()?;
    // X_n = M_n - a_n t X_1, then X_j = M_j - a_j X_{j+1} upward.
    if n > 1 {
        x[n - 1] = rows[n - 1].iter().zip(&x[0]).map(|(mv, x1)| mv - &x1.shift(1).scale(&a[n - 1])).collect();
        for j in (1..n - 1).rev() {
            x[j] = rows[j].iter().zip(&x[j + 1]).map(|(mv, xv)| mv - &xv.scale(&a[j])).collect();
        }
    }
    let out = LoopMatrix::new(n, m.m(), x).ok()?;
    let w = whirl_network(a).ok()?.folded_weight_matrix();
    (w.mul(&out).ok()? == *m).then_some(out)
}

/// Exact quotient `e / (1 + β t)`, if it is a Laurent polynomial.
fn divide_by_linear(e: &LaurentPoly, beta: &Rational) -> Option<LaurentPoly> {
    let Some(low) = e.min_degree() else {
        return Some(Laurent::zero());
    };
    let p = e.shift(-low).to_poly().expect("nonnegative degrees");
    let divisor = RatPoly::new(vec![Rational::one(), beta.clone()]);
    let (q, r) = p.div_rem(&divisor);
    r.is_zero().then(|| Laurent::from_poly(&q).shift(low))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn lp(c: &[i64]) -> LaurentPoly {
        Laurent::from_terms(c.iter().enumerate().map(|(d, &x)| (d as i64, rat(x))))
    }

    #[test]
    fn identity_is_a_single_base_step() {
        let r = factor(&LoopMatrix::identity(3)).unwrap();
        assert_eq!(r.steps.len(), 1);
        assert_eq!(r.steps[0].kind, StepKind::BaseDiagonal);
        assert!(r.certified);
    }

    #[test]
    fn scalar_band_uses_whirls() {
        // (1 + t)(2 + t)
        let m = LoopMatrix::new(1, 1, vec![vec![lp(&[2, 3, 1])]]).unwrap();
        let r = factor(&m).unwrap();
        assert!(r.certified);
        assert!(r.steps.iter().any(|s| s.kind == StepKind::NonspecialElim));
    }

    #[test]
    fn irrational_roots_are_unresolved() {
        // 1 + 3t + t^2 has irrational negative roots.
        let m = LoopMatrix::new(1, 1, vec![vec![lp(&[1, 3, 1])]]).unwrap();
        assert!(matches!(factor(&m), Err(FactorError::Unresolved(_))));
    }

    #[test]
    fn zero_corner_coefficient_is_harmless() {
        let m = LoopMatrix::new(2, 1, vec![vec![lp(&[1])], vec![lp(&[0, 1])]]).unwrap();
        assert!(factor(&m).unwrap().certified);
    }
}
