//! Folded representation of (n,m)-periodic block-Toeplitz matrices.
//!
//! An n×m grid of Laurent polynomials stands for the infinite matrix whose
//! entry at global position `(i + r n, j + s m)` is the coefficient of
//! `t^(s-r)` in the `(i, j)` grid entry (residues `i, j` are 1-based).
//! Global indices may be any integer; the matrix is periodic, so negative
//! and zero indices are just further copies of the same blocks.

use std::fmt;

use crate::error::CoreError;
use crate::laurent::Laurent;
use crate::matrix::Matrix;
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PeriodicMatrix<T> {
    n: usize,
    m: usize,
    entries: Vec<Laurent<T>>,
}

/// Splits a 1-based global index into `(residue in 1..=period, block)`.
pub fn split_index(global: i64, period: usize) -> (usize, i64) {
    let p = period as i64;
    let residue = (global - 1).rem_euclid(p) + 1;
    (residue as usize, (global - residue) / p)
}

impl<T: Scalar> PeriodicMatrix<T> {
    pub fn new(n: usize, m: usize, rows: Vec<Vec<Laurent<T>>>) -> Result<Self, CoreError> {
        if n == 0 || m == 0 {
            return Err(CoreError::ZeroPeriod { n, m });
        }
        if rows.len() != n || rows.iter().any(|r| r.len() != m) {
            return Err(CoreError::ShapeMismatch(format!("expected a {n}x{m} grid of entries")));
        }
        Ok(Self { n, m, entries: rows.into_iter().flatten().collect() })
    }

    /// Builds from a closure over 1-based residues.
    ///
    /// # Panics
    /// Panics if either period is zero.
    pub fn from_fn(n: usize, m: usize, mut f: impl FnMut(usize, usize) -> Laurent<T>) -> Self {
        assert!(n > 0 && m > 0, "periods must be positive");
        let mut entries = Vec::with_capacity(n * m);
        for i in 1..=n {
            for j in 1..=m {
                entries.push(f(i, j));
            }
        }
        Self { n, m, entries }
    }

    /// Folds the blocks `A_d, A_{d+1}, ...` (with `d = first_degree`), all of
    /// the same shape, into a loop matrix.
    pub fn from_blocks(blocks: &[Matrix<T>], first_degree: i64) -> Result<Self, CoreError> {
        let first = blocks
            .first()
            .ok_or_else(|| CoreError::ShapeMismatch("at least one block is required".into()))?;
        let (n, m) = (first.rows(), first.cols());
        if blocks.iter().any(|b| b.rows() != n || b.cols() != m) {
            return Err(CoreError::ShapeMismatch("blocks differ in shape".into()));
        }
        if n == 0 || m == 0 {
            return Err(CoreError::ZeroPeriod { n, m });
        }
        Ok(Self::from_fn(n, m, |i, j| {
            Laurent::from_terms(
                blocks.iter().enumerate().map(|(k, b)| (first_degree + k as i64, b.get(i - 1, j - 1).clone())),
            )
        }))
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { Laurent::one() } else { Laurent::zero() })
    }

    pub fn zero(n: usize, m: usize) -> Self {
        Self::from_fn(n, m, |_, _| Laurent::zero())
    }

    /// Row period.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Column period.
    pub fn m(&self) -> usize {
        self.m
    }

    /// Folded entry at 1-based residues.
    pub fn entry(&self, i: usize, j: usize) -> &Laurent<T> {
        &self.entries[(i - 1) * self.m + (j - 1)]
    }

    pub fn to_rows(&self) -> Vec<Vec<Laurent<T>>> {
        self.entries.chunks(self.m).map(<[Laurent<T>]>::to_vec).collect()
    }

    /// Entry of the infinite matrix at 1-based global position.
    pub fn unfold_entry(&self, row: i64, col: i64) -> T {
        let (i, r) = split_index(row, self.n);
        let (j, s) = split_index(col, self.m);
        self.entry(i, j).coeff(s - r)
    }

    /// Generalized window of the unfolding; repeated indices are kept.
    pub fn window(&self, rows: &[i64], cols: &[i64]) -> Matrix<T> {
        Matrix::from_fn(rows.len(), cols.len(), |a, b| self.unfold_entry(rows[a], cols[b]))
    }

    /// Window on the contiguous ranges `1..=rows`, `1..=cols`.
    pub fn leading_window(&self, rows: usize, cols: usize) -> Matrix<T> {
        Matrix::from_fn(rows, cols, |a, b| self.unfold_entry(a as i64 + 1, b as i64 + 1))
    }

    /// Coefficient block `A_d`.
    pub fn block(&self, d: i64) -> Matrix<T> {
        Matrix::from_fn(self.n, self.m, |i, j| self.entry(i + 1, j + 1).coeff(d))
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self, CoreError> {
        if self.m != rhs.n {
            return Err(CoreError::ShapeMismatch(format!(
                "cannot multiply ({},{})-periodic by ({},{})-periodic",
                self.n, self.m, rhs.n, rhs.m
            )));
        }
        Ok(Self::from_fn(self.n, rhs.m, |i, j| {
            let mut acc = Laurent::zero();
            for k in 1..=self.m {
                let a = self.entry(i, k);
                let b = rhs.entry(k, j);
                if !a.is_zero() && !b.is_zero() {
                    acc = &acc + &(a * b);
                }
            }
            acc
        }))
    }

    pub fn add(&self, rhs: &Self) -> Result<Self, CoreError> {
        self.same_shape(rhs)?;
        Ok(Self::from_fn(self.n, self.m, |i, j| self.entry(i, j) + rhs.entry(i, j)))
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self, CoreError> {
        self.same_shape(rhs)?;
        Ok(Self::from_fn(self.n, self.m, |i, j| self.entry(i, j) - rhs.entry(i, j)))
    }

    fn same_shape(&self, rhs: &Self) -> Result<(), CoreError> {
        if self.n != rhs.n || self.m != rhs.m {
            return Err(CoreError::ShapeMismatch(format!(
                "({},{})-periodic vs ({},{})-periodic",
                self.n, self.m, rhs.n, rhs.m
            )));
        }
        Ok(())
    }

    /// Folded form of the transposed infinite matrix.
    pub fn transpose(&self) -> Self {
        Self::from_fn(self.m, self.n, |i, j| self.entry(j, i).invert_variable())
    }

    /// Folded form of the infinite matrix rotated by 180 degrees
    /// (global entry `(I, J)` moves to `(1 - I, 1 - J)`).
    pub fn rotate(&self) -> Self {
        Self::from_fn(self.n, self.m, |i, j| self.entry(self.n + 1 - i, self.m + 1 - j).invert_variable())
    }

    /// Smallest and largest `t`-degree present, `None` for the zero matrix.
    pub fn degree_range(&self) -> Option<(i64, i64)> {
        let lo = self.entries.iter().filter_map(Laurent::min_degree).min()?;
        let hi = self.entries.iter().filter_map(Laurent::max_degree).max()?;
        Some((lo, hi))
    }

    /// Total number of nonzero coefficients in the folded grid.
    pub fn term_count(&self) -> usize {
        self.entries.iter().map(Laurent::term_count).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Laurent::is_zero)
    }

    pub fn has_negative_coefficient(&self) -> bool {
        self.entries.iter().any(Laurent::has_negative_coefficient)
    }

    /// 1-based residues of identically zero folded rows.
    pub fn zero_rows(&self) -> Vec<usize> {
        (1..=self.n).filter(|&i| (1..=self.m).all(|j| self.entry(i, j).is_zero())).collect()
    }

    /// 1-based residues of identically zero folded columns.
    pub fn zero_cols(&self) -> Vec<usize> {
        (1..=self.m).filter(|&j| (1..=self.n).all(|i| self.entry(i, j).is_zero())).collect()
    }

    /// Drops folded row `k`; requires `n >= 2`.
    pub fn without_row(&self, k: usize) -> Result<Self, CoreError> {
        if self.n < 2 || k == 0 || k > self.n {
            return Err(CoreError::IndexOutOfRange(format!("cannot drop row {k} of {}", self.n)));
        }
        let rows = self.to_rows().into_iter().enumerate().filter(|(i, _)| i + 1 != k).map(|(_, r)| r).collect();
        Self::new(self.n - 1, self.m, rows)
    }

    /// Drops folded column `k`; requires `m >= 2`.
    pub fn without_col(&self, k: usize) -> Result<Self, CoreError> {
        Ok(self.transpose().without_row(k)?.transpose())
    }

    /// If every nonzero entry of the unfolding lies on one diagonal
    /// `J - I = d` (only possible when `n = m`), returns `d`.
    pub fn single_diagonal(&self) -> Option<i64> {
        if self.n != self.m || self.is_zero() {
            return None;
        }
        let mut offset = None;
        for i in 1..=self.n {
            for j in 1..=self.m {
                for (e, _) in self.entry(i, j).terms() {
                    let d = j as i64 - i as i64 + e * self.n as i64;
                    match offset {
                        None => offset = Some(d),
                        Some(o) if o != d => return None,
                        _ => {}
                    }
                }
            }
        }
        offset
    }

    /// Evaluates every entry at `t = x`.
    pub fn eval(&self, x: &T) -> Matrix<T> {
        Matrix::from_fn(self.n, self.m, |i, j| self.entry(i + 1, j + 1).eval(x))
    }

    /// Periodic row operation: subtracts `c` times global row `I - 1` from
    /// every global row `I ≡ k (mod n)`.
    pub fn periodic_row_operation(&self, k: usize, c: &T) -> Self {
        let prev = if k == 1 { self.n } else { k - 1 };
        let shift = if k == 1 { -1 } else { 0 };
        Self::from_fn(self.n, self.m, |i, j| {
            if i == k {
                self.entry(i, j) - &self.entry(prev, j).shift(shift).scale(c)
            } else {
                self.entry(i, j).clone()
            }
        })
    }

    /// Applies `f` to every entry.
    pub fn map(&self, mut f: impl FnMut(&Laurent<T>) -> Laurent<T>) -> Self {
        Self { n: self.n, m: self.m, entries: self.entries.iter().map(&mut f).collect() }
    }

    /// Determinant of the folded square matrix, as a Laurent polynomial.
    pub fn folded_determinant(&self) -> Result<Laurent<T>, CoreError> {
        if self.n != self.m {
            return Err(CoreError::NotSquare { rows: self.n, cols: self.m });
        }
        let rows: Vec<usize> = (1..=self.n).collect();
        let cols: Vec<usize> = (1..=self.m).collect();
        Ok(self.laplace(&rows, &cols))
    }

    fn laplace(&self, rows: &[usize], cols: &[usize]) -> Laurent<T> {
        if rows.is_empty() {
            return Laurent::one();
        }
        let i = rows[0];
        let mut acc = Laurent::zero();
        for (pos, &j) in cols.iter().enumerate() {
            let e = self.entry(i, j);
            if e.is_zero() {
                continue;
            }
            let rest: Vec<usize> = cols.iter().copied().filter(|&c| c != j).collect();
            let term = e * &self.laplace(&rows[1..], &rest);
            acc = if pos % 2 == 0 { &acc + &term } else { &acc - &term };
        }
        acc
    }
}

impl<T: Scalar + fmt::Display> fmt::Display for PeriodicMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.entries.chunks(self.m) {
            let cells: Vec<String> = row.iter().map(|e| e.to_string()).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;
    use crate::Rational;

    fn lp(terms: &[(i64, i64)]) -> Laurent<Rational> {
        Laurent::from_terms(terms.iter().map(|&(d, c)| (d, rat(c))))
    }

    #[test]
    fn split_index_handles_all_integers() {
        assert_eq!(split_index(1, 3), (1, 0));
        assert_eq!(split_index(3, 3), (3, 0));
        assert_eq!(split_index(4, 3), (1, 1));
        assert_eq!(split_index(0, 3), (3, -1));
        assert_eq!(split_index(-2, 3), (1, -1));
    }

    #[test]
    fn scalar_multiplication() {
        let t = PeriodicMatrix::new(1, 1, vec![vec![lp(&[(1, 1)])]]).unwrap();
        assert_eq!(t.mul(&t).unwrap().entry(1, 1), &lp(&[(2, 1)]));
    }

    #[test]
    fn row_operation_wraps_with_shift() {
        let m = PeriodicMatrix::new(2, 1, vec![vec![lp(&[(0, 2), (1, 1)])], vec![lp(&[(0, 1), (1, 1)])]]).unwrap();
        let out = m.periodic_row_operation(1, &rat(1));
        assert_eq!(out.entry(1, 1), &lp(&[(-1, -1), (0, 1), (1, 1)]));
        for row in 1..=6 {
            for col in 1..=6 {
                let expect = if row % 2 == 1 {
                    m.unfold_entry(row, col) - m.unfold_entry(row - 1, col)
                } else {
                    m.unfold_entry(row, col)
                };
                assert_eq!(out.unfold_entry(row, col), expect);
            }
        }
    }

    #[test]
    fn transpose_and_rotate_match_unfolding() {
        let m = PeriodicMatrix::new(
            2,
            3,
            vec![vec![lp(&[(0, 1)]), lp(&[(1, 2)]), lp(&[(-1, 3)])], vec![lp(&[]), lp(&[(0, 4), (2, 5)]), lp(&[(0, 6)])]],
        )
        .unwrap();
        let t = m.transpose();
        let r = m.rotate();
        for a in -5..8 {
            for b in -5..8 {
                assert_eq!(t.unfold_entry(b, a), m.unfold_entry(a, b));
                assert_eq!(r.unfold_entry(1 - a, 1 - b), m.unfold_entry(a, b));
            }
        }
    }

    #[test]
    fn single_diagonal_detection() {
        let d = PeriodicMatrix::new(2, 2, vec![vec![lp(&[]), lp(&[(0, 2)])], vec![lp(&[(1, 3)]), lp(&[])]]).unwrap();
        assert_eq!(d.single_diagonal(), Some(1));
        assert_eq!(PeriodicMatrix::<Rational>::identity(3).single_diagonal(), Some(0));
        let band = PeriodicMatrix::new(1, 1, vec![vec![lp(&[(0, 1), (1, 1)])]]).unwrap();
        assert_eq!(band.single_diagonal(), None);
    }
}
