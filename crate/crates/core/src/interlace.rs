//! Interlacing polynomials and Hurwitz matrices.
//!
//! `p0` interlaces `p1` when both are real-rooted, `deg p0` is `deg p1` or
//! `deg p1 + 1`, and the roots (with multiplicity, in decreasing order)
//! alternate weakly starting from `p0`: `χ1 ≥ ψ1 ≥ χ2 ≥ ψ2 ≥ …`. A
//! real-rooted polynomial and the zero polynomial interlace in either
//! order.
//!
//! Two independent deciders are provided: one isolates roots with Sturm
//! sequences, the other runs the Routh-style reduction
//! `(p0, p1) → (p1, (p0 - c p1) / t)` with `c = p0(0) / p1(0)`.

use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::laurent::Laurent;
use crate::roots::{square_free, square_free_factorization, RootIsolation};
use crate::{LoopMatrix, RatPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InterlaceError {
    #[error("polynomial has a negative coefficient: {0}")]
    NegativeCoefficient(String),
    #[error("entry ({row}, {col}) has negative powers of t")]
    NotPolynomial { row: usize, col: usize },
    #[error("cannot reverse a degree {degree} polynomial inside degree {target}")]
    ReverseDegree { degree: usize, target: usize },
}

/// `H(p0, p1)`: the (2,1)-periodic matrix folding to the column `[p1; p0]`.
pub fn hurwitz(p0: &RatPoly, p1: &RatPoly) -> LoopMatrix {
    LoopMatrix::new(2, 1, vec![vec![Laurent::from_poly(p1)], vec![Laurent::from_poly(p0)]])
        .expect("2x1 shape is valid")
}

/// The (1,2)-periodic matrix folding to the row `[p1, p0]`.
pub fn one_by_two(p1: &RatPoly, p0: &RatPoly) -> LoopMatrix {
    LoopMatrix::new(1, 2, vec![vec![Laurent::from_poly(p1), Laurent::from_poly(p0)]]).expect("1x2 shape is valid")
}

/// `t^d p(1/t)`.
pub fn reverse(p: &RatPoly, d: usize) -> Result<RatPoly, InterlaceError> {
    let deg = p.degree().unwrap_or(0);
    if deg > d {
        return Err(InterlaceError::ReverseDegree { degree: deg, target: d });
    }
    Ok(RatPoly::new((0..=d).map(|k| p.coeff(d - k)).collect()))
}

/// Whether every root of `p` is real. Constants count as real-rooted.
pub fn is_real_rooted(p: &RatPoly) -> bool {
    let sqf = square_free(p);
    match sqf.degree() {
        None | Some(0) => true,
        Some(d) => RootIsolation::new(&sqf).intervals.len() == d,
    }
}

/// Root-isolation decider.
pub fn interlaces_sturm(p0: &RatPoly, p1: &RatPoly) -> bool {
    if p1.is_zero() {
        return is_real_rooted(p0);
    }
    if p0.is_zero() {
        return is_real_rooted(p1);
    }
    let (d0, d1) = (p0.degree().unwrap_or(0), p1.degree().unwrap_or(0));
    if d0 != d1 && d0 != d1 + 1 {
        return false;
    }
    if d0 == 0 {
        return true;
    }
    // Distinct roots of the product, increasing; each root is represented
    // by its rank, so comparing ranks compares the roots exactly.
    let iso = RootIsolation::new(&(p0 * p1));
    let ranks_of = |p: &RatPoly| -> Vec<usize> {
        let factors = square_free_factorization(p);
        let mut out = Vec::new();
        for k in (0..iso.intervals.len()).rev() {
            let mult: usize = factors.iter().filter(|(_, f)| iso.is_root_of(k, f)).map(|(e, _)| *e).sum();
            out.extend(std::iter::repeat_n(k, mult));
        }
        out
    };
    let (chi, psi) = (ranks_of(p0), ranks_of(p1));
    if chi.len() != d0 || psi.len() != d1 {
        return false;
    }
    let mut chain = Vec::with_capacity(d0 + d1);
    for k in 0..d0 {
        chain.push(chi[k]);
        if k < d1 {
            chain.push(psi[k]);
        }
    }
    chain.windows(2).all(|w| w[0] >= w[1])
}

fn check_nonnegative(p: &RatPoly) -> Result<(), InterlaceError> {
    if p.coeffs().iter().any(Signed::is_negative) {
        return Err(InterlaceError::NegativeCoefficient(p.to_string()));
    }
    Ok(())
}

/// Routh-style decider for polynomials with nonnegative coefficients.
pub fn interlaces_routh(p0: &RatPoly, p1: &RatPoly) -> Result<bool, InterlaceError> {
    check_nonnegative(p0)?;
    check_nonnegative(p1)?;
    let (mut p0, mut p1) = (p0.clone(), p1.clone());
    loop {
        let (d0, d1) = (p0.degree().unwrap_or(0), p1.degree().unwrap_or(0));
        if d0 == 0 && d1 == 0 {
            return Ok(true);
        }
        // p is real-rooted iff p interlaces p'.
        if p1.is_zero() {
            p1 = p0.derivative();
            continue;
        }
        if p0.is_zero() {
            p0 = p1.derivative();
            std::mem::swap(&mut p0, &mut p1);
            continue;
        }
        if d0 < d1 || d0 > d1 + 1 {
            return Ok(false);
        }
        let (a0, b0) = (p0.constant_term(), p1.constant_term());
        match (a0.is_zero(), b0.is_zero()) {
            (false, true) => return Ok(false),
            (true, true) => {
                p0 = p0.shift_down(1);
                p1 = p1.shift_down(1);
            }
            (true, false) => {
                let next = p0.shift_down(1);
                p0 = std::mem::replace(&mut p1, next);
            }
            (false, false) => {
                let c = &a0 / &b0;
                let r = (&p0 - &p1.scale(&c)).shift_down(1);
                if r.coeffs().iter().any(Signed::is_negative) {
                    return Ok(false);
                }
                p0 = std::mem::replace(&mut p1, r);
            }
        }
    }
}

/// Default decider.
pub fn interlaces(p0: &RatPoly, p1: &RatPoly) -> bool {
    interlaces_sturm(p0, p1)
}

/// A necessary condition on a polynomial loop matrix that fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SameRowColViolation {
    /// `p_{i2,j}` does not interlace `p_{i,j}`.
    Column { i: usize, i2: usize, j: usize },
    /// The reversal of `p_{i,j2}` does not interlace that of `p_{i,j}`.
    Row { i: usize, j: usize, j2: usize },
}

/// Checks the pairwise interlacing conditions that every TN polynomial
/// loop matrix satisfies. An empty result does not imply TN.
pub fn check_same_row_col(m: &LoopMatrix) -> Result<Vec<SameRowColViolation>, InterlaceError> {
    let mut p = vec![vec![RatPoly::zero(); m.m()]; m.n()];
    for i in 1..=m.n() {
        for j in 1..=m.m() {
            let e = m.entry(i, j);
            let poly = e.to_poly().ok_or(InterlaceError::NotPolynomial { row: i, col: j })?;
            check_nonnegative(&poly)?;
            p[i - 1][j - 1] = poly;
        }
    }
    let mut out = Vec::new();
    for j in 0..m.m() {
        for i in 0..m.n() {
            for i2 in i + 1..m.n() {
                if !interlaces_sturm(&p[i2][j], &p[i][j]) {
                    out.push(SameRowColViolation::Column { i: i + 1, i2: i2 + 1, j: j + 1 });
                }
            }
        }
    }
    for i in 0..m.n() {
        for j in 0..m.m() {
            for j2 in j + 1..m.m() {
                let d = p[i][j].degree().unwrap_or_else(|| p[i][j2].degree().unwrap_or(0));
                let ok = match (reverse(&p[i][j2], d), reverse(&p[i][j], d)) {
                    (Ok(a), Ok(b)) => interlaces_sturm(&a, &b),
                    _ => false,
                };
                if !ok {
                    out.push(SameRowColViolation::Row { i: i + 1, j: j + 1, j2: j2 + 1 });
                }
            }
        }
    }
    Ok(out)
}
