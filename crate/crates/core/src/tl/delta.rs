//! Decorated complementary minor diagrams and the bookkeeping that writes a
//! minor of a corner-eliminated matrix as a signed combination of
//! complementary minor immanants of a generalized submatrix of the original.

use super::cmd::{CmDiagram, Dot};
use super::immanant::comp_minor_immanant;
use super::TlError;
use crate::loop_matrix::{split_index, PeriodicMatrix};
use crate::matrix::Matrix;
use crate::scalar::Scalar;
use crate::tncheck::{is_special_sw_corner, CornerLocation};

/// A complementary minor diagram whose right column may contain gray
/// blocks. A gray block is a pair of consecutive dots that stands for
/// "white over black" minus "black over white".
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DecoratedCmDiagram {
    left: Vec<Dot>,
    /// `None` marks a gray dot.
    right: Vec<Option<Dot>>,
    /// 0-based top positions of the gray blocks, increasing.
    gray_blocks: Vec<usize>,
}

impl DecoratedCmDiagram {
    /// Gray dots are paired top-down; a run of odd length is rejected.
    pub fn new(left: Vec<Dot>, right: Vec<Option<Dot>>) -> Result<Self, TlError> {
        if left.len() != right.len() {
            return Err(TlError::SizeMismatch(format!("columns of length {} and {}", left.len(), right.len())));
        }
        let mut gray_blocks = Vec::new();
        let mut k = 0;
        while k < right.len() {
            if right[k].is_none() {
                if right.get(k + 1).is_none_or(Option::is_some) {
                    return Err(TlError::Unbalanced(format!("unpaired gray dot at position {}", k + 1)));
                }
                gray_blocks.push(k);
                k += 2;
            } else {
                k += 1;
            }
        }
        Ok(Self { left, right, gray_blocks })
    }

    pub fn size(&self) -> usize {
        self.left.len()
    }

    pub fn left(&self) -> &[Dot] {
        &self.left
    }

    pub fn right(&self) -> &[Option<Dot>] {
        &self.right
    }

    pub fn gray_blocks(&self) -> &[usize] {
        &self.gray_blocks
    }

    /// The diagram with gray blocks whose index (in `gray_blocks`) is in
    /// `chosen` made black over white, and the others white over black.
    pub fn specialize(&self, chosen: &[usize]) -> CmDiagram {
        let mut right: Vec<Dot> = self.right.iter().map(|d| d.unwrap_or(Dot::White)).collect();
        for (b, &top) in self.gray_blocks.iter().enumerate() {
            let (t, u) = if chosen.contains(&b) { (Dot::Black, Dot::White) } else { (Dot::White, Dot::Black) };
            right[top] = t;
            right[top + 1] = u;
        }
        CmDiagram { left: self.left.clone(), right }
    }

    /// Value on `m` of the signed sum the diagram stands for.
    pub fn evaluate<T: Scalar>(&self, m: &Matrix<T>) -> Result<T, TlError> {
        expand_decorated(self).into_iter().try_fold(T::zero(), |acc, (sign, d)| {
            let v = d.evaluate(m)?;
            Ok(if sign < 0 { acc - v } else { acc + v })
        })
    }
}

/// All `2^k` specializations of a diagram with `k` gray blocks, with sign
/// `(-1)^|S|`. Entry `s` specializes the blocks whose bit is set in `s`.
pub fn expand_decorated(d: &DecoratedCmDiagram) -> Vec<(i8, CmDiagram)> {
    let k = d.gray_blocks.len();
    (0..1usize << k)
        .map(|mask| {
            let chosen: Vec<usize> = (0..k).filter(|b| mask >> b & 1 == 1).collect();
            let sign = if chosen.len() % 2 == 0 { 1 } else { -1 };
            (sign, d.specialize(&chosen))
        })
        .collect()
}

/// Data attached to a submatrix `Δ = M'[I, J]` of the matrix `M'` obtained
/// from `M` by eliminating a special SW corner.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeltaMachinery<T> {
    pub rows: Vec<i64>,
    pub cols: Vec<i64>,
    /// Rows `r` of `I` congruent to `i*` with `r - 1` outside `I`.
    pub a_rows: Vec<i64>,
    /// Columns `j* + km` matching `i* + kn` in `A`.
    pub c_cols: Vec<i64>,
    /// Sorted rows `I ∪ A⁻` of the generalized submatrix.
    pub tilde_rows: Vec<i64>,
    /// Sorted multiset `J ⊔ C` of its columns.
    pub tilde_cols: Vec<i64>,
    pub tilde: Matrix<T>,
    pub diagram: DecoratedCmDiagram,
    pub corner: CornerLocation<T>,
}

fn strictly_increasing(xs: &[i64]) -> bool {
    xs.windows(2).all(|w| w[0] < w[1])
}

pub fn build_delta_machinery<T: Scalar>(
    m: &PeriodicMatrix<T>,
    corner: &CornerLocation<T>,
    rows: &[i64],
    cols: &[i64],
) -> Result<DeltaMachinery<T>, TlError> {
    if rows.len() != cols.len() {
        return Err(TlError::SizeMismatch(format!("|I| = {} but |J| = {}", rows.len(), cols.len())));
    }
    if !strictly_increasing(rows) || !strictly_increasing(cols) {
        return Err(TlError::SizeMismatch("index sets must be strictly increasing".into()));
    }
    if !is_special_sw_corner(m, corner.i_star, corner.j_star) {
        return Err(TlError::CornerNotSpecial);
    }
    let (n, mm) = (m.n(), m.m());
    let (res, _) = split_index(corner.i_star, n);
    let a_rows: Vec<i64> =
        rows.iter().copied().filter(|&r| split_index(r, n).0 == res && !rows.contains(&(r - 1))).collect();
    // i* + kn = r, so k = (r - i*) / n exactly.
    let c_cols: Vec<i64> = a_rows.iter().map(|&r| corner.j_star + (r - corner.i_star) / n as i64 * mm as i64).collect();
    let mut tilde_rows: Vec<i64> = rows.iter().copied().chain(a_rows.iter().map(|r| r - 1)).collect();
    tilde_rows.sort_unstable();
    let mut tilde_cols: Vec<i64> = cols.iter().chain(&c_cols).copied().collect();
    tilde_cols.sort_unstable();

    let mut left = Vec::with_capacity(tilde_cols.len());
    for (k, c) in tilde_cols.iter().enumerate() {
        let in_j = cols.contains(c);
        let in_c = c_cols.contains(c);
        left.push(match (in_c, in_j) {
            (true, false) => Dot::Black,
            (false, _) => Dot::White,
            (true, true) if k == 0 || tilde_cols[k - 1] != *c => Dot::Black,
            (true, true) => Dot::White,
        });
    }
    let right = tilde_rows
        .iter()
        .map(|r| if a_rows.contains(r) || a_rows.contains(&(r + 1)) { None } else { Some(Dot::Black) })
        .collect();
    let diagram = DecoratedCmDiagram::new(left, right)?;
    Ok(DeltaMachinery {
        rows: rows.to_vec(),
        cols: cols.to_vec(),
        tilde: m.window(&tilde_rows, &tilde_cols),
        a_rows,
        c_cols,
        tilde_rows,
        tilde_cols,
        diagram,
        corner: corner.clone(),
    })
}

impl<T: Scalar> DeltaMachinery<T> {
    /// Elimination coefficient `c = a0 / b0`.
    pub fn coefficient(&self) -> T {
        self.corner.a0.clone() / self.corner.b0.clone()
    }

    /// `Δ = M'[I, J]` computed from the eliminated matrix.
    pub fn delta(&self, m: &PeriodicMatrix<T>) -> Matrix<T> {
        let (k, _) = split_index(self.corner.i_star, m.n());
        m.periodic_row_operation(k, &self.coefficient()).window(&self.rows, &self.cols)
    }

    /// `Δ^S = M[(I ∖ S) ∪ S⁻, J]` for `S ⊆ A`.
    pub fn delta_s(&self, m: &PeriodicMatrix<T>, s: &[i64]) -> Result<Matrix<T>, TlError> {
        if s.iter().any(|r| !self.a_rows.contains(r)) {
            return Err(TlError::NotSubsetOfA);
        }
        let mut rows: Vec<i64> = self.rows.iter().map(|&r| if s.contains(&r) { r - 1 } else { r }).collect();
        rows.sort_unstable();
        Ok(m.window(&rows, &self.cols))
    }

    /// 1-based positions in the generalized submatrix of the rows
    /// `S ∪ (A ∖ S)⁻` and of the first copies of the columns `C`.
    fn complement_positions(&self, s: &[i64]) -> (Vec<usize>, Vec<usize>) {
        let rows = self
            .tilde_rows
            .iter()
            .enumerate()
            .filter(|(_, r)| s.contains(r) || (self.a_rows.contains(&(*r + 1)) && !s.contains(&(*r + 1))))
            .map(|(k, _)| k + 1)
            .collect();
        let cols = self.diagram.left.iter().enumerate().filter(|(_, d)| **d == Dot::Black).map(|(k, _)| k + 1).collect();
        (rows, cols)
    }
}

/// Outcome of each identity checked by [`verify_dcmd_det`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DcmdReport<T> {
    pub det: T,
    pub a_size: usize,
    /// `|Δ| = Σ_S (-c)^|S| |Δ^S|`.
    pub multilinear: bool,
    /// `b0^|A| (-c)^|S| = (-1)^|S| det Δ̃[S ∪ (A∖S)⁻, C]` for every `S`.
    pub diagonal: bool,
    /// `C_{S ∪ (A∖S)⁻, C}(Δ̃) = D_Δ^S(Δ̃)` for every `S`.
    pub specializations: bool,
    /// `b0^|A| |Δ| = D_Δ(Δ̃)`.
    pub main: bool,
}

impl<T> DcmdReport<T> {
    pub fn all(&self) -> bool {
        self.multilinear && self.diagonal && self.specializations && self.main
    }
}

fn pow<T: Scalar>(x: &T, k: usize) -> T {
    (0..k).fold(T::one(), |acc, _| acc * x.clone())
}

pub fn verify_dcmd_det_report<T: Scalar>(
    m: &PeriodicMatrix<T>,
    corner: &CornerLocation<T>,
    rows: &[i64],
    cols: &[i64],
) -> Result<DcmdReport<T>, TlError> {
    if corner.b0.is_zero() {
        return Err(TlError::CornerNotSpecial);
    }
    let dm = build_delta_machinery(m, corner, rows, cols)?;
    let det = dm.delta(m).determinant()?;
    let neg_c = -dm.coefficient();
    let b_pow = pow(&corner.b0, dm.a_rows.len());
    let specs = expand_decorated(&dm.diagram);

    let mut multilinear_sum = T::zero();
    let mut diagonal = true;
    let mut specializations = true;
    for (mask, (_, spec)) in specs.iter().enumerate() {
        let s: Vec<i64> =
            dm.a_rows.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, &r)| r).collect();
        let scale = pow(&neg_c, s.len());
        multilinear_sum = multilinear_sum + scale.clone() * dm.delta_s(m, &s)?.determinant()?;

        let (prow, pcol) = dm.complement_positions(&s);
        let r0: Vec<usize> = prow.iter().map(|k| k - 1).collect();
        let c0: Vec<usize> = pcol.iter().map(|k| k - 1).collect();
        let tri = dm.tilde.minor(&r0, &c0)?;
        let signed_tri = if s.len() % 2 == 0 { tri } else { -tri };
        diagonal &= b_pow.clone() * scale == signed_tri;
        specializations &= comp_minor_immanant(&dm.tilde, &prow, &pcol)? == spec.evaluate(&dm.tilde)?;
    }
    let main = b_pow * det.clone() == dm.diagram.evaluate(&dm.tilde)?;
    Ok(DcmdReport { multilinear: multilinear_sum == det, diagonal, specializations, main, det, a_size: dm.a_rows.len() })
}

/// Checks `|Δ| = b0^{-|A|} D_Δ(Δ̃)` together with the intermediate
/// identities listed in [`DcmdReport`].
pub fn verify_dcmd_det<T: Scalar>(
    m: &PeriodicMatrix<T>,
    corner: &CornerLocation<T>,
    rows: &[i64],
    cols: &[i64],
) -> Result<bool, TlError> {
    Ok(verify_dcmd_det_report(m, corner, rows, cols)?.all())
}
