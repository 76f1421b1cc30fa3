use super::immanant::{all_immanants, comp_minor_immanant};
use super::matching::{tl_basis, NcMatching};
use super::TlError;
use crate::matrix::Matrix;
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Dot {
    Black,
    White,
}

/// Two columns of colored dots encoding a complementary minor immanant:
/// black dots on the left mark the column set, white dots on the right the
/// row set.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CmDiagram {
    pub left: Vec<Dot>,
    pub right: Vec<Dot>,
}

impl CmDiagram {
    pub fn size(&self) -> usize {
        self.left.len()
    }

    /// 1-based row set (white dots on the right).
    pub fn row_set(&self) -> Vec<usize> {
        positions(&self.right, Dot::White)
    }

    /// 1-based column set (black dots on the left).
    pub fn col_set(&self) -> Vec<usize> {
        positions(&self.left, Dot::Black)
    }

    fn color(&self, point: usize) -> Dot {
        let n = self.size();
        if point < n {
            self.left[point]
        } else {
            self.right[point - n]
        }
    }

    /// Whether every strand of `t` joins a white dot to a black dot.
    pub fn is_compatible(&self, t: &NcMatching) -> bool {
        (0..2 * self.size()).all(|p| self.color(p) != self.color(t.partner0(p)))
    }

    /// `C_{I,J}(M)` for the sets read off the diagram.
    pub fn evaluate<T: Scalar>(&self, m: &Matrix<T>) -> Result<T, TlError> {
        let (rows, cols) = (self.row_set(), self.col_set());
        if rows.len() != cols.len() {
            return Err(TlError::Unbalanced(format!("{} white right dots, {} black left dots", rows.len(), cols.len())));
        }
        comp_minor_immanant(m, &rows, &cols)
    }
}

fn positions(dots: &[Dot], color: Dot) -> Vec<usize> {
    dots.iter().enumerate().filter(|(_, &d)| d == color).map(|(k, _)| k + 1).collect()
}

/// Diagram of the complementary minor immanant with row set `rows` and
/// column set `cols` (1-based) on `size` dots per column.
pub fn cm_diagram(rows: &[usize], cols: &[usize], size: usize) -> Result<CmDiagram, TlError> {
    if rows.len() != cols.len() {
        return Err(TlError::SizeMismatch(format!("|I| = {} but |J| = {}", rows.len(), cols.len())));
    }
    if let Some(&bad) = rows.iter().chain(cols).find(|&&k| k == 0 || k > size) {
        return Err(TlError::IndexOutOfRange { index: bad, n: size });
    }
    let left = (1..=size).map(|j| if cols.contains(&j) { Dot::Black } else { Dot::White }).collect();
    let right = (1..=size).map(|i| if rows.contains(&i) { Dot::White } else { Dot::Black }).collect();
    Ok(CmDiagram { left, right })
}

/// Basis matchings compatible with the diagram.
pub fn theta(d: &CmDiagram) -> Vec<NcMatching> {
    if d.size() == 0 {
        return Vec::new();
    }
    tl_basis(d.size()).iter().filter(|t| d.is_compatible(t)).cloned().collect()
}

/// Checks `C_{I,J}(M) = Σ_{T ∈ Θ(I,J)} imm_T(M)` exactly.
pub fn verify_rs<T: Scalar>(m: &Matrix<T>, rows: &[usize], cols: &[usize]) -> Result<bool, TlError> {
    let d = cm_diagram(rows, cols, m.rows())?;
    let lhs = comp_minor_immanant(m, rows, cols)?;
    let compatible = theta(&d);
    let rhs = all_immanants(m)?
        .into_iter()
        .filter(|(t, _)| compatible.contains(t))
        .fold(T::zero(), |acc, (_, v)| acc + v);
    Ok(lhs == rhs)
}

/// Runs [`verify_rs`] over every pair `(I, J)` with `|I| = |J|`, computing
/// the immanants once. Returns the failing pairs.
pub fn verify_rs_all<T: Scalar>(m: &Matrix<T>) -> Result<Vec<(Vec<usize>, Vec<usize>)>, TlError> {
    let n = m.rows();
    let imms = all_immanants(m)?;
    let subsets: Vec<Vec<usize>> =
        (0..1usize << n).map(|mask| (1..=n).filter(|k| mask >> (k - 1) & 1 == 1).collect()).collect();
    let mut failures = Vec::new();
    for rows in &subsets {
        for cols in subsets.iter().filter(|c| c.len() == rows.len()) {
            let d = cm_diagram(rows, cols, n)?;
            let rhs = imms.iter().filter(|(t, _)| d.is_compatible(t)).fold(T::zero(), |acc, (_, v)| acc + v.clone());
            if comp_minor_immanant(m, rows, cols)? != rhs {
                failures.push((rows.clone(), cols.clone()));
            }
        }
    }
    Ok(failures)
}
