//! Real root isolation for rational polynomials via Sturm sequences.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::{RatPoly, Rational};

/// Sturm sequence `p, p', -rem(p, p'), ...`.
pub fn sturm_chain(p: &RatPoly) -> Vec<RatPoly> {
    let mut chain = vec![p.clone()];
    if p.degree().unwrap_or(0) == 0 {
        return chain;
    }
    chain.push(p.derivative());
    loop {
        let k = chain.len();
        let (_, r) = chain[k - 2].div_rem(&chain[k - 1]);
        if r.is_zero() {
            break;
        }
        chain.push(-&r);
    }
    chain
}

fn sign_changes(values: impl Iterator<Item = Rational>) -> usize {
    let mut last = 0i8;
    let mut changes = 0;
    for v in values {
        let s = if v.is_positive() {
            1
        } else if v.is_negative() {
            -1
        } else {
            continue;
        };
        if last != 0 && s != last {
            changes += 1;
        }
        last = s;
    }
    changes
}

/// Sturm chain with evaluation helpers.
#[derive(Debug, Clone)]
pub struct Sturm {
    chain: Vec<RatPoly>,
}

impl Sturm {
    /// `p` should be square-free for counts to be exact.
    pub fn new(p: &RatPoly) -> Self {
        Self { chain: sturm_chain(p) }
    }

    pub fn changes_at(&self, x: &Rational) -> usize {
        sign_changes(self.chain.iter().map(|q| q.eval(x)))
    }

    /// Number of distinct roots in the half-open interval `(lo, hi]`.
    pub fn count(&self, lo: &Rational, hi: &Rational) -> usize {
        self.changes_at(lo).saturating_sub(self.changes_at(hi))
    }

    pub fn poly(&self) -> &RatPoly {
        &self.chain[0]
    }
}

/// Square-free part `p / gcd(p, p')`, made monic.
pub fn square_free(p: &RatPoly) -> RatPoly {
    if p.degree().unwrap_or(0) == 0 {
        return p.monic();
    }
    let g = p.gcd(&p.derivative());
    p.div_rem(&g).0.monic()
}

/// Yun's decomposition: `p = c · Π f_e^e` with `f_e` square-free, pairwise
/// coprime and monic. Returns `(e, f_e)` for the nonconstant factors.
pub fn square_free_factorization(p: &RatPoly) -> Vec<(usize, RatPoly)> {
    let mut out = Vec::new();
    if p.degree().unwrap_or(0) == 0 {
        return out;
    }
    let dp = p.derivative();
    let a0 = p.gcd(&dp);
    let mut b = p.div_rem(&a0).0;
    let mut c = dp.div_rem(&a0).0;
    let mut d = &c - &b.derivative();
    let mut e = 1;
    while b.degree().unwrap_or(0) > 0 {
        let a = b.gcd(&d);
        if a.degree().unwrap_or(0) > 0 {
            out.push((e, a.clone()));
        }
        b = b.div_rem(&a).0;
        c = d.div_rem(&a).0;
        d = &c - &b.derivative();
        e += 1;
    }
    out
}

/// Interval `(lo, hi]` containing exactly one root; `lo == hi` means the
/// root is known exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootInterval {
    pub lo: Rational,
    pub hi: Rational,
}

impl RootInterval {
    pub fn exact(&self) -> Option<&Rational> {
        (self.lo == self.hi).then_some(&self.hi)
    }
}

/// Disjoint isolating intervals for the distinct real roots of a polynomial,
/// in increasing order.
#[derive(Debug, Clone)]
pub struct RootIsolation {
    pub intervals: Vec<RootInterval>,
    sturm: Sturm,
}

impl RootIsolation {
    /// Isolates the distinct real roots of `p` (any multiplicities).
    pub fn new(p: &RatPoly) -> Self {
        let sqf = square_free(p);
        let sturm = Sturm::new(&sqf);
        let mut intervals = Vec::new();
        if sqf.degree().unwrap_or(0) > 0 {
            let bound = cauchy_bound(&sqf);
            split(&sturm, -bound.clone(), bound, &mut intervals);
        }
        Self { intervals, sturm }
    }

    /// The square-free polynomial whose roots are isolated.
    pub fn poly(&self) -> &RatPoly {
        self.sturm.poly()
    }

    /// Halves interval `k` (or pins it to an exact root).
    pub fn refine(&mut self, k: usize) {
        let iv = &self.intervals[k];
        if iv.exact().is_some() {
            return;
        }
        let mid = (&iv.lo + &iv.hi) / Rational::from_integer(2.into());
        let next = if self.poly().eval(&mid).is_zero() {
            RootInterval { lo: mid.clone(), hi: mid }
        } else if self.sturm.count(&iv.lo, &mid) == 1 {
            RootInterval { lo: iv.lo.clone(), hi: mid }
        } else {
            RootInterval { lo: mid, hi: iv.hi.clone() }
        };
        self.intervals[k] = next;
    }

    /// Whether the root in interval `k` is also a root of `q`: true iff
    /// `gcd(p, q)` has a root in that interval.
    pub fn is_root_of(&self, k: usize, q: &RatPoly) -> bool {
        let g = self.poly().gcd(q);
        if g.degree().unwrap_or(0) == 0 {
            return false;
        }
        let iv = &self.intervals[k];
        if let Some(x) = iv.exact() {
            return g.eval(x).is_zero();
        }
        Sturm::new(&g).count(&iv.lo, &iv.hi) == 1
    }
}

fn split(sturm: &Sturm, lo: Rational, hi: Rational, out: &mut Vec<RootInterval>) {
    match sturm.count(&lo, &hi) {
        0 => {}
        1 => {
            if sturm.poly().eval(&hi).is_zero() {
                out.push(RootInterval { lo: hi.clone(), hi });
            } else {
                out.push(RootInterval { lo, hi });
            }
        }
        _ => {
            let mid = (&lo + &hi) / Rational::from_integer(2.into());
            split(sturm, lo, mid.clone(), out);
            split(sturm, mid, hi, out);
        }
    }
}

/// Strict upper bound on the absolute value of every root.
fn cauchy_bound(p: &RatPoly) -> Rational {
    let lead = p.leading();
    let max = p.coeffs()[..p.coeffs().len() - 1].iter().map(|c| (c / &lead).abs()).fold(Rational::zero(), |a, b| {
        if b > a {
            b
        } else {
            a
        }
    });
    max + Rational::from_integer(2.into())
}

/// Simplest rational (smallest denominator, then numerator) in `[lo, hi]`.
pub fn simplest_between(lo: &Rational, hi: &Rational) -> Rational {
    debug_assert!(lo <= hi);
    if lo.is_positive() {
        let fl = lo.floor();
        if &fl == lo {
            return fl;
        }
        let up = &fl + Rational::one();
        if &up <= hi {
            return up;
        }
        let inner = simplest_between(&(hi - &fl).recip(), &(lo - &fl).recip());
        fl + inner.recip()
    } else if hi.is_negative() {
        -simplest_between(&-hi, &-lo)
    } else {
        Rational::zero()
    }
}

/// All rational roots of `p`, increasing.
pub fn rational_roots(p: &RatPoly) -> Vec<Rational> {
    if p.is_zero() {
        return Vec::new();
    }
    let mut iso = RootIsolation::new(p);
    // Two distinct fractions with denominators dividing the (integer)
    // leading coefficient L are at least 1/L² apart.
    let sqf = iso.poly().clone();
    let denom_lcm = sqf.coeffs().iter().fold(num_bigint::BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let lead = (sqf.leading() * Rational::from_integer(denom_lcm)).abs();
    let gap = (&lead * &lead).recip();
    let mut out = Vec::new();
    for k in 0..iso.intervals.len() {
        while iso.intervals[k].exact().is_none() && &iso.intervals[k].hi - &iso.intervals[k].lo >= gap {
            iso.refine(k);
        }
        let iv = &iso.intervals[k];
        let candidate = match iv.exact() {
            Some(x) => x.clone(),
            None => simplest_between(&iv.lo, &iv.hi),
        };
        if sqf.eval(&candidate).is_zero() {
            out.push(candidate);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, ratio};

    fn p(c: &[i64]) -> RatPoly {
        RatPoly::new(c.iter().map(|&x| rat(x)).collect())
    }

    #[test]
    fn isolates_and_counts() {
        // (t-1)(t+2)(t^2-2)
        let q = &(&p(&[-1, 1]) * &p(&[2, 1])) * &p(&[-2, 0, 1]);
        let iso = RootIsolation::new(&q);
        assert_eq!(iso.intervals.len(), 4);
        assert_eq!(rational_roots(&q), vec![rat(-2), rat(1)]);
        assert!(RootIsolation::new(&p(&[1, 0, 1])).intervals.is_empty());
    }

    #[test]
    fn repeated_and_fractional_roots() {
        let q = RatPoly::from_roots(rat(6), &[ratio(-2, 3), ratio(-2, 3), ratio(5, 7), rat(0)]);
        assert_eq!(rational_roots(&q), vec![ratio(-2, 3), rat(0), ratio(5, 7)]);
        let yun = square_free_factorization(&q);
        assert_eq!(yun.iter().map(|(e, f)| (*e, f.degree().unwrap())).collect::<Vec<_>>(), vec![(1, 2), (2, 1)]);
    }

    #[test]
    fn simplest_fraction() {
        assert_eq!(simplest_between(&ratio(3, 10), &ratio(4, 10)), ratio(1, 3));
        assert_eq!(simplest_between(&ratio(-4, 10), &ratio(-3, 10)), ratio(-1, 3));
        assert_eq!(simplest_between(&ratio(-1, 2), &ratio(1, 2)), rat(0));
        assert_eq!(simplest_between(&ratio(7, 3), &ratio(7, 3)), ratio(7, 3));
    }
}
