//! Window-based total nonnegativity checks, convex support and special SW
//! corners of periodic matrices, and Loewner-Whitney generators.

use itertools::Itertools;
use thiserror::Error;

use crate::loop_matrix::PeriodicMatrix;
use crate::matrix::Matrix;
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TnCheckError {
    #[error("folded row {0} is identically zero")]
    ZeroRow(usize),
    #[error("folded column {0} is identically zero")]
    ZeroCol(usize),
    #[error("support is not convex")]
    NotConvex,
    #[error("leftmost support positions decrease between global rows {0} and {1}")]
    NotStaircase(i64, i64),
    #[error("candidate corner ({0}, {1}) is not a special SW corner")]
    CornerNotSpecial(i64, i64),
    #[error("no special SW corner although n > m")]
    MissingCorner,
    #[error("generator value must be nonnegative")]
    NegativeValue,
    #[error("generator position {position} out of range for size {size}")]
    PositionOutOfRange { size: usize, position: usize },
}

/// A minor of the unfolded matrix together with its value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinorWitness<T> {
    pub rows: Vec<i64>,
    pub cols: Vec<i64>,
    pub value: T,
}

/// Outcome of a finite window scan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TnVerdict<T> {
    Pass,
    Witness(MinorWitness<T>),
}

impl<T> TnVerdict<T> {
    pub fn is_pass(&self) -> bool {
        matches!(self, TnVerdict::Pass)
    }

    pub fn witness(self) -> Option<MinorWitness<T>> {
        match self {
            TnVerdict::Pass => None,
            TnVerdict::Witness(w) => Some(w),
        }
    }
}

/// Position of a special SW corner, in 1-based global indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CornerLocation<T> {
    pub i_star: i64,
    pub j_star: i64,
    pub a0: T,
    pub b0: T,
}

/// Default scan parameters used by the refuter: three row periods and
/// minors up to order `min(4, 3n)`.
pub fn default_scan(n: usize) -> (usize, usize) {
    (3, (3 * n).min(4))
}

/// Scans every minor of order at most `max_order` with rows in
/// `1..=row_span·n` and columns spanning the support band of those rows.
/// Returns the first negative minor in lexicographic order (by order, then
/// row set, then column set). Passing is not a proof of total
/// nonnegativity.
pub fn is_tn_window<T: Scalar>(m: &PeriodicMatrix<T>, row_span: usize, max_order: usize) -> TnVerdict<T> {
    let Some((lo, hi)) = m.degree_range() else {
        return TnVerdict::Pass;
    };
    let rows: Vec<i64> = (1..=(row_span * m.n()) as i64).collect();
    let mm = m.m() as i64;
    let cols: Vec<i64> = (1 + lo * mm..=(row_span as i64 + hi) * mm).collect();
    let window = m.window(&rows, &cols);
    match first_negative_minor(&window, max_order) {
        Some((r, c, value)) => TnVerdict::Witness(MinorWitness {
            rows: r.into_iter().map(|k| rows[k]).collect(),
            cols: c.into_iter().map(|k| cols[k]).collect(),
            value,
        }),
        None => TnVerdict::Pass,
    }
}

/// Dense analogue of [`is_tn_window`]; witness indices are 1-based.
pub fn is_tn_dense<T: Scalar>(matrix: &Matrix<T>, max_order: usize) -> TnVerdict<T> {
    match first_negative_minor(matrix, max_order) {
        Some((r, c, value)) => TnVerdict::Witness(MinorWitness {
            rows: r.into_iter().map(|k| k as i64 + 1).collect(),
            cols: c.into_iter().map(|k| k as i64 + 1).collect(),
            value,
        }),
        None => TnVerdict::Pass,
    }
}

type MinorHit<T> = (Vec<usize>, Vec<usize>, T);

fn first_negative_minor<T: Scalar>(w: &Matrix<T>, max_order: usize) -> Option<MinorHit<T>> {
    let order_cap = max_order.min(w.rows()).min(w.cols());
    for k in 1..=order_cap {
        for rows in (0..w.rows()).combinations(k) {
            // Columns vanishing on every chosen row only produce zero minors.
            let live: Vec<usize> = (0..w.cols()).filter(|&c| rows.iter().any(|&r| !w.get(r, c).is_zero())).collect();
            for cols in live.into_iter().combinations(k) {
                let value = w.minor(&rows, &cols).expect("square by construction");
                if value.is_negative() {
                    return Some((rows, cols, value));
                }
            }
        }
    }
    None
}

/// Global column indices of the support of global row `row`, ascending.
fn row_support<T: Scalar>(m: &PeriodicMatrix<T>, row: i64) -> Vec<i64> {
    let (i, r) = crate::loop_matrix::split_index(row, m.n());
    let mm = m.m() as i64;
    let mut out: Vec<i64> = (1..=m.m())
        .flat_map(|j| m.entry(i, j).terms().map(move |(d, _)| j as i64 + (d + r) * mm).collect::<Vec<_>>())
        .collect();
    out.sort_unstable();
    out
}

/// Global row indices of the support of global column `col`, ascending.
fn col_support<T: Scalar>(m: &PeriodicMatrix<T>, col: i64) -> Vec<i64> {
    let (j, s) = crate::loop_matrix::split_index(col, m.m());
    let nn = m.n() as i64;
    let mut out: Vec<i64> = (1..=m.n())
        .flat_map(|i| m.entry(i, j).terms().map(move |(d, _)| i as i64 + (s - d) * nn).collect::<Vec<_>>())
        .collect();
    out.sort_unstable();
    out
}

fn is_contiguous(support: &[i64]) -> bool {
    support.windows(2).all(|w| w[1] == w[0] + 1)
}

fn require_no_zero_lines<T: Scalar>(m: &PeriodicMatrix<T>, check_cols: bool) -> Result<(), TnCheckError> {
    if let Some(&i) = m.zero_rows().first() {
        return Err(TnCheckError::ZeroRow(i));
    }
    if check_cols {
        if let Some(&j) = m.zero_cols().first() {
            return Err(TnCheckError::ZeroCol(j));
        }
    }
    Ok(())
}

/// True iff every row and column of the unfolding has no internal zeros.
/// One period of rows and columns suffices by periodicity.
pub fn convex_support<T: Scalar>(m: &PeriodicMatrix<T>) -> Result<bool, TnCheckError> {
    require_no_zero_lines(m, true)?;
    let rows_ok = (1..=m.n() as i64).all(|r| is_contiguous(&row_support(m, r)));
    let cols_ok = (1..=m.m() as i64).all(|c| is_contiguous(&col_support(m, c)));
    Ok(rows_ok && cols_ok)
}

/// Leftmost nonzero column of each global row `1..=n+2`.
pub fn leftmost_columns<T: Scalar>(m: &PeriodicMatrix<T>) -> Result<Vec<i64>, TnCheckError> {
    require_no_zero_lines(m, false)?;
    Ok((1..=m.n() as i64 + 2).map(|r| row_support(m, r)[0]).collect())
}

/// Locates the special SW corner used for elimination. With `ℓ(i)` the
/// leftmost nonzero column of row `i`, this is the last `i*` in `2..=n+1`
/// with `ℓ(i*-1) = ℓ(i*)` whose run of equal values ends at `i*`, so that
/// the column below the corner is clear even when the run wraps past row
/// `n+1`. The returned indices are translated by whole periods so that
/// `j* >= 1`.
pub fn find_special_sw_corner<T: Scalar>(m: &PeriodicMatrix<T>) -> Result<Option<CornerLocation<T>>, TnCheckError> {
    if !convex_support(m)? {
        return Err(TnCheckError::NotConvex);
    }
    let ell = leftmost_columns(m)?;
    for k in 1..ell.len() {
        if ell[k] < ell[k - 1] {
            return Err(TnCheckError::NotStaircase(k as i64, k as i64 + 1));
        }
    }
    // ell[k] is ℓ(k + 1); the candidate row is i* = k + 1.
    let Some(k) = (1..=m.n()).rev().find(|&k| ell[k] == ell[k - 1] && ell[k + 1] != ell[k]) else {
        if m.n() > m.m() {
            return Err(TnCheckError::MissingCorner);
        }
        return Ok(None);
    };
    let (mut i_star, mut j_star) = (k as i64 + 1, ell[k]);
    if j_star < 1 {
        let periods = (1 - j_star + m.m() as i64 - 1) / m.m() as i64;
        i_star += periods * m.n() as i64;
        j_star += periods * m.m() as i64;
    }
    if !is_special_sw_corner(m, i_star, j_star) {
        return Err(TnCheckError::CornerNotSpecial(i_star, j_star));
    }
    Ok(Some(CornerLocation {
        i_star,
        j_star,
        a0: m.unfold_entry(i_star, j_star),
        b0: m.unfold_entry(i_star - 1, j_star),
    }))
}

/// Checks the special SW corner conditions at global position `(i, j)`:
/// nothing nonzero strictly left of `(i, j)` or of `(i-1, j)`, and nothing
/// nonzero strictly below `(i, j)`, with both `(i, j)` and `(i-1, j)` nonzero.
pub fn is_special_sw_corner<T: Scalar>(m: &PeriodicMatrix<T>, i: i64, j: i64) -> bool {
    if m.unfold_entry(i, j).is_zero() || m.unfold_entry(i - 1, j).is_zero() {
        return false;
    }
    let left_clear = |row: i64| row_support(m, row).first().is_some_and(|&c| c == j);
    let below_clear = col_support(m, j).last().is_some_and(|&r| r == i);
    left_clear(i) && left_clear(i - 1) && below_clear
}

/// Kind of Loewner-Whitney generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeneratorKind {
    /// Identity plus `value` at `(position, position + 1)`.
    Upper,
    /// Identity plus `value` at `(position + 1, position)`.
    Lower,
    /// Identity with `(position, position)` replaced by `value`.
    Diagonal,
}

/// Elementary totally nonnegative generator; `position` is 1-based.
pub fn lw_generator<T: Scalar>(
    size: usize,
    kind: GeneratorKind,
    position: usize,
    value: T,
) -> Result<Matrix<T>, TnCheckError> {
    if value.is_negative() {
        return Err(TnCheckError::NegativeValue);
    }
    let limit = if kind == GeneratorKind::Diagonal { size } else { size.saturating_sub(1) };
    if position == 0 || position > limit {
        return Err(TnCheckError::PositionOutOfRange { size, position });
    }
    let p = position - 1;
    let mut out = Matrix::identity(size);
    match kind {
        GeneratorKind::Upper => out.set(p, p + 1, value),
        GeneratorKind::Lower => out.set(p + 1, p, value),
        GeneratorKind::Diagonal => out.set(p, p, value),
    }
    Ok(out)
}
