//! Sparse Laurent polynomials in one variable `t`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::poly::Poly;
use crate::scalar::Scalar;

/// A Laurent polynomial `Σ c_d t^d` with finitely many nonzero coefficients.
///
/// Zero coefficients are never stored, so structural equality is
/// mathematical equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Laurent<T> {
    coeffs: BTreeMap<i64, T>,
}

impl<T: Scalar> Default for Laurent<T> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<T: Scalar> Laurent<T> {
    pub fn zero() -> Self {
        Self { coeffs: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(T::one())
    }

    pub fn constant(c: T) -> Self {
        Self::monomial(c, 0)
    }

    /// `c · t^degree`.
    pub fn monomial(c: T, degree: i64) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(degree, c);
        }
        Self { coeffs }
    }

    /// Builds from `(degree, coefficient)` pairs, summing repeated degrees.
    pub fn from_terms<I: IntoIterator<Item = (i64, T)>>(terms: I) -> Self {
        let mut out = Self::zero();
        for (d, c) in terms {
            out.add_term(d, c);
        }
        out
    }

    /// Adds `c · t^degree` in place.
    pub fn add_term(&mut self, degree: i64, c: T) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.remove(&degree) {
            Some(old) => {
                let sum = old + c;
                if !sum.is_zero() {
                    self.coeffs.insert(degree, sum);
                }
            }
            None => {
                self.coeffs.insert(degree, c);
            }
        }
    }

    pub fn coeff(&self, degree: i64) -> T {
        self.coeffs.get(&degree).cloned().unwrap_or_else(T::zero)
    }

    /// Nonzero terms in increasing degree.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &T)> + '_ {
        self.coeffs.iter().map(|(d, c)| (*d, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeff(0).is_one()
    }

    /// Number of nonzero coefficients.
    pub fn term_count(&self) -> usize {
        self.coeffs.len()
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    /// True if any stored coefficient is negative.
    pub fn has_negative_coefficient(&self) -> bool {
        self.coeffs.values().any(|c| c.is_negative())
    }

    pub fn scale(&self, k: &T) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        Self { coeffs: self.coeffs.iter().map(|(d, c)| (*d, c.clone() * k.clone())).collect() }
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self { coeffs: self.coeffs.iter().map(|(d, c)| (d + k, c.clone())).collect() }
    }

    /// Substitutes `t ↦ t^{-1}`.
    pub fn invert_variable(&self) -> Self {
        Self { coeffs: self.coeffs.iter().map(|(d, c)| (-d, c.clone())).collect() }
    }

    /// Evaluates at `x`; `x` must be nonzero if negative degrees are present.
    pub fn eval(&self, x: &T) -> T {
        let mut acc = T::zero();
        for (d, c) in &self.coeffs {
            acc = acc + c.clone() * power(x, *d);
        }
        acc
    }

    /// Converts to an ordinary polynomial; `None` if a negative degree occurs.
    pub fn to_poly(&self) -> Option<Poly<T>> {
        if self.min_degree().is_some_and(|d| d < 0) {
            return None;
        }
        let top = match self.max_degree() {
            Some(d) => d as usize,
            None => return Some(Poly::zero()),
        };
        let mut coeffs = vec![T::zero(); top + 1];
        for (d, c) in &self.coeffs {
            coeffs[*d as usize] = c.clone();
        }
        Some(Poly::new(coeffs))
    }

    pub fn from_poly(p: &Poly<T>) -> Self {
        Self::from_terms(p.coeffs().iter().enumerate().map(|(d, c)| (d as i64, c.clone())))
    }
}

fn power<T: Scalar>(x: &T, d: i64) -> T {
    let base = if d < 0 { T::one() / x.clone() } else { x.clone() };
    let mut acc = T::one();
    for _ in 0..d.unsigned_abs() {
        acc = acc * base.clone();
    }
    acc
}

impl<T: Scalar> Add for &Laurent<T> {
    type Output = Laurent<T>;
    fn add(self, rhs: Self) -> Laurent<T> {
        let mut out = self.clone();
        for (d, c) in &rhs.coeffs {
            out.add_term(*d, c.clone());
        }
        out
    }
}

impl<T: Scalar> Sub for &Laurent<T> {
    type Output = Laurent<T>;
    fn sub(self, rhs: Self) -> Laurent<T> {
        let mut out = self.clone();
        for (d, c) in &rhs.coeffs {
            out.add_term(*d, -c.clone());
        }
        out
    }
}

impl<T: Scalar> Mul for &Laurent<T> {
    type Output = Laurent<T>;
    fn mul(self, rhs: Self) -> Laurent<T> {
        let mut out = Laurent::zero();
        for (d1, c1) in &self.coeffs {
            for (d2, c2) in &rhs.coeffs {
                out.add_term(d1 + d2, c1.clone() * c2.clone());
            }
        }
        out
    }
}

impl<T: Scalar> Neg for &Laurent<T> {
    type Output = Laurent<T>;
    fn neg(self) -> Laurent<T> {
        Laurent { coeffs: self.coeffs.iter().map(|(d, c)| (*d, -c.clone())).collect() }
    }
}

impl<T: Scalar> Add for Laurent<T> {
    type Output = Laurent<T>;
    fn add(self, rhs: Self) -> Laurent<T> {
        &self + &rhs
    }
}

impl<T: Scalar> Sub for Laurent<T> {
    type Output = Laurent<T>;
    fn sub(self, rhs: Self) -> Laurent<T> {
        &self - &rhs
    }
}

impl<T: Scalar> Mul for Laurent<T> {
    type Output = Laurent<T>;
    fn mul(self, rhs: Self) -> Laurent<T> {
        &self * &rhs
    }
}

impl<T: Scalar> Neg for Laurent<T> {
    type Output = Laurent<T>;
    fn neg(self) -> Laurent<T> {
        -&self
    }
}

impl<T: Scalar + fmt::Display> fmt::Display for Laurent<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (d, c)) in self.coeffs.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            match *d {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*t")?,
                _ => write!(f, "{c}*t^{d}")?,
            }
        }
        Ok(())
    }
}
