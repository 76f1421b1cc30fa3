use std::collections::BTreeMap;

use super::matching::{tl_generator, NcMatching};
use super::TlError;
use crate::{RatPoly, Rational};

/// Element of `TL_n(ξ)`: a combination of basis matchings with
/// coefficients that are polynomials in `ξ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TlElement {
    n: usize,
    terms: BTreeMap<NcMatching, RatPoly>,
}

impl TlElement {
    pub fn zero(n: usize) -> Self {
        Self { n, terms: BTreeMap::new() }
    }

    pub fn basis(t: NcMatching) -> Self {
        let n = t.n();
        let mut terms = BTreeMap::new();
        terms.insert(t, RatPoly::one());
        Self { n, terms }
    }

    pub fn identity(n: usize) -> Self {
        Self::basis(NcMatching::identity(n))
    }

    pub fn generator(n: usize, i: usize) -> Result<Self, TlError> {
        Ok(Self::basis(tl_generator(n, i)?))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<NcMatching, RatPoly> {
        &self.terms
    }

    pub fn coefficient(&self, t: &NcMatching) -> RatPoly {
        self.terms.get(t).cloned().unwrap_or_else(RatPoly::zero)
    }

    fn add_term(&mut self, t: NcMatching, c: RatPoly) {
        if c.is_zero() {
            return;
        }
        let sum = match self.terms.remove(&t) {
            Some(old) => &old + &c,
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(t, sum);
        }
    }

    fn check(&self, other: &Self) -> Result<(), TlError> {
        if self.n != other.n {
            return Err(TlError::SizeMismatch(format!("TL_{} vs TL_{}", self.n, other.n)));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, TlError> {
        self.check(other)?;
        let mut out = self.clone();
        for (t, c) in &other.terms {
            out.add_term(t.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, TlError> {
        self.add(&other.scale(&RatPoly::constant(Rational::from_integer((-1).into()))))
    }

    pub fn scale(&self, k: &RatPoly) -> Self {
        let mut out = Self::zero(self.n);
        for (t, c) in &self.terms {
            out.add_term(t.clone(), c * k);
        }
        out
    }

    /// Specializes `ξ` to a number.
    pub fn evaluate(&self, xi: &Rational) -> BTreeMap<NcMatching, Rational> {
        self.terms
            .iter()
            .map(|(t, c)| (t.clone(), c.eval(xi)))
            .filter(|(_, v)| *v != Rational::from_integer(0.into()))
            .collect()
    }
}

/// Bilinear diagram product; every closed loop contributes a factor `ξ`.
pub fn tl_multiply(a: &TlElement, b: &TlElement) -> Result<TlElement, TlError> {
    a.check(b)?;
    let mut out = TlElement::zero(a.n);
    for (ta, ca) in &a.terms {
        for (tb, cb) in &b.terms {
            let (t, loops) = ta.compose(tb);
            let xi_power = RatPoly::monomial(Rational::from_integer(1.into()), loops);
            out.add_term(t, &(ca * cb) * &xi_power);
        }
    }
    Ok(out)
}
