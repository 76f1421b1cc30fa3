//! Dense finite matrices.

use std::fmt;
use std::ops::Index;

use crate::error::CoreError;
use crate::scalar::Scalar;

/// Row-major dense matrix. Indices are 0-based here; the 1-based global
/// indices of the periodic matrices are translated by the callers.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Result<Self, CoreError> {
        if data.len() != rows * cols {
            return Err(CoreError::ShapeMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self, CoreError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(CoreError::ShapeMismatch("ragged rows".into()));
        }
        Self::new(r, c, rows.into_iter().flatten().collect())
    }

    /// Builds from a closure over 0-based positions.
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| T::zero())
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: T) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self, CoreError> {
        if self.cols != rhs.rows {
            return Err(CoreError::ShapeMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(Self::from_fn(self.rows, rhs.cols, |i, j| {
            (0..self.cols).fold(T::zero(), |acc, k| acc + self.get(i, k).clone() * rhs.get(k, j).clone())
        }))
    }

    /// Generalized submatrix: repeated indices are allowed and kept in order.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |a, b| self.get(rows[a], cols[b]).clone())
    }

    /// Exact determinant by Gaussian elimination; the 0×0 determinant is 1.
    pub fn determinant(&self) -> Result<T, CoreError> {
        if !self.is_square() {
            return Err(CoreError::NotSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        let mut a = self.data.clone();
        let mut det = T::one();
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| !a[r * n + col].is_zero()) else {
                return Ok(T::zero());
            };
            if pivot != col {
                for k in 0..n {
                    a.swap(pivot * n + k, col * n + k);
                }
                det = -det;
            }
            let p = a[col * n + col].clone();
            det = det * p.clone();
            for r in col + 1..n {
                let factor = a[r * n + col].clone();
                if factor.is_zero() {
                    continue;
                }
                let factor = factor / p.clone();
                for k in col..n {
                    let v = a[r * n + k].clone() - factor.clone() * a[col * n + k].clone();
                    a[r * n + k] = v;
                }
            }
        }
        Ok(det)
    }

    /// Minor on 0-based row and column lists.
    pub fn minor(&self, rows: &[usize], cols: &[usize]) -> Result<T, CoreError> {
        self.submatrix(rows, cols).determinant()
    }

    /// Basis of the right null space `{x : M x = 0}`, read off the reduced
    /// row echelon form (one vector per free column).
    pub fn null_space(&self) -> Vec<Vec<T>> {
        let (rows, cols) = (self.rows, self.cols);
        let mut a = self.data.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            let Some(p) = (r..rows).find(|&k| !a[k * cols + c].is_zero()) else { continue };
            for k in 0..cols {
                a.swap(p * cols + k, r * cols + k);
            }
            let inv = T::one() / a[r * cols + c].clone();
            for k in 0..cols {
                a[r * cols + k] = a[r * cols + k].clone() * inv.clone();
            }
            for other in 0..rows {
                if other == r || a[other * cols + c].is_zero() {
                    continue;
                }
                let f = a[other * cols + c].clone();
                for k in 0..cols {
                    let v = a[other * cols + k].clone() - f.clone() * a[r * cols + k].clone();
                    a[other * cols + k] = v;
                }
            }
            pivots.push(c);
            r += 1;
            if r == rows {
                break;
            }
        }
        (0..cols)
            .filter(|c| !pivots.contains(c))
            .map(|free| {
                let mut x = vec![T::zero(); cols];
                x[free] = T::one();
                for (row, &pc) in pivots.iter().enumerate() {
                    x[pc] = -a[row * cols + free].clone();
                }
                x
            })
            .collect()
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T: Scalar + fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|c| c.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;
    use crate::Rational;

    fn m(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect()).unwrap()
    }

    #[test]
    fn determinant_fixtures() {
        assert_eq!(m(&[&[21, 40], &[10, 18]]).determinant().unwrap(), rat(-22));
        assert_eq!(Matrix::<Rational>::zeros(0, 0).determinant().unwrap(), rat(1));
        assert_eq!(m(&[&[2, 1], &[1, 1]]).determinant().unwrap(), rat(1));
        assert_eq!(m(&[&[0, 1], &[1, 0]]).determinant().unwrap(), rat(-1));
    }

    #[test]
    fn determinant_rejects_rectangles() {
        assert!(matches!(m(&[&[1, 2]]).determinant(), Err(CoreError::NotSquare { .. })));
    }

    #[test]
    fn null_space_vectors_are_annihilated() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        let ns = a.null_space();
        assert_eq!(ns.len(), 1);
        let x = Matrix::new(3, 1, ns[0].clone()).unwrap();
        assert_eq!(a.mul(&x).unwrap(), Matrix::zeros(3, 1));
        assert!(Matrix::<Rational>::identity(3).null_space().is_empty());
    }

    #[test]
    fn submatrix_keeps_duplicates() {
        let a = m(&[&[1, 2], &[3, 4]]);
        assert_eq!(a.submatrix(&[1, 1], &[0]), m(&[&[3], &[3]]));
    }
}
