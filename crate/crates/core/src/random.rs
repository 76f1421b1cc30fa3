//! Seeded generators for test instances: planar cylindrical networks,
//! totally nonnegative dense matrices, and real-rooted polynomials.

use rand::Rng;

use crate::network::{
    concatenate, diagonal_network, elementary_row_network, rotate_network, transpose_network, whirl_network, Edge,
    Network,
};
use crate::scalar::ratio;
use crate::tncheck::{lw_generator, GeneratorKind};
use crate::{CylNetwork, DenseMatrix, RatPoly, Rational};

/// Positive rational `p/q` with `1 <= p <= max_num`, `1 <= q <= max_den`.
pub fn positive_rational<R: Rng>(rng: &mut R, max_num: i64, max_den: i64) -> Rational {
    ratio(rng.gen_range(1..=max_num), rng.gen_range(1..=max_den))
}

/// Rational with numerator in `-bound..=bound` and denominator in `1..=max_den`.
pub fn signed_rational<R: Rng>(rng: &mut R, bound: i64, max_den: i64) -> Rational {
    ratio(rng.gen_range(-bound..=bound), rng.gen_range(1..=max_den))
}

fn weight<R: Rng>(rng: &mut R) -> Rational {
    positive_rational(rng, 5, 3)
}

/// Period-preserving planar piece on `p` strands.
fn square_piece<R: Rng>(rng: &mut R, p: usize) -> CylNetwork {
    let choice = rng.gen_range(0..6);
    let net = match choice {
        0 => elementary_row_network(p, rng.gen_range(1..=p), weight(rng)),
        1 => elementary_row_network(p, rng.gen_range(1..=p), weight(rng)).map(|n| rotate_network(&n)),
        2 => diagonal_network(&(0..p).map(|_| weight(rng)).collect::<Vec<_>>(), 0),
        3 => diagonal_network(&vec![Rational::from_integer(1.into()); p], if rng.gen_bool(0.5) { 1 } else { -1 }),
        4 => whirl_network(&(0..p).map(|_| weight(rng)).collect::<Vec<_>>()),
        _ => whirl_network(&(0..p).map(|_| weight(rng)).collect::<Vec<_>>()).map(|n| rotate_network(&n)),
    };
    net.expect("valid piece parameters")
}

/// `p` sources to `p - 1` sinks: strands `k` and `k + 1` merge.
fn contraction<R: Rng>(rng: &mut R, p: usize) -> CylNetwork {
    let k = rng.gen_range(1..p);
    let edges = (1..=p)
        .map(|i| Edge { tail: i - 1, head: p + if i <= k { i } else { i - 1 } - 1, weight: weight(rng), hcross: 0 })
        .collect();
    Network::new(2 * p - 1, edges, (0..p).collect(), (p..2 * p - 1).collect()).expect("valid contraction")
}

/// Random planar cylindrical network with `n` sources and `m` sinks, made by
/// concatenating `pieces` planar elementary pieces (plus the transitions
/// needed to change the period) and simplifying.
pub fn planar_network<R: Rng>(rng: &mut R, n: usize, m: usize, pieces: usize) -> CylNetwork {
    let mut p = n;
    let mut net: Option<CylNetwork> = None;
    let transitions = n.abs_diff(m);
    let total = pieces + transitions;
    let mut remaining_transitions = transitions;
    for step in 0..total {
        let left = total - step;
        let transition = remaining_transitions > 0 && (left == remaining_transitions || rng.gen_bool(0.4));
        let piece = if transition {
            remaining_transitions -= 1;
            if p > m {
                p -= 1;
                contraction(rng, p + 1)
            } else {
                p += 1;
                transpose_network(&contraction(rng, p))
            }
        } else {
            square_piece(rng, p)
        };
        net = Some(match net {
            None => piece,
            Some(prev) => concatenate(&prev, &piece).expect("matching arity"),
        });
    }
    let net = net.unwrap_or_else(|| crate::network::identity_network(n).expect("positive period"));
    net.simplified()
}

/// Like [`planar_network`], retried until the size limits hold.
pub fn small_planar_network<R: Rng>(
    rng: &mut R,
    n: usize,
    m: usize,
    max_vertices: usize,
    max_edges: usize,
    max_hcross: i64,
) -> CylNetwork {
    loop {
        let pieces = rng.gen_range(1..=3);
        let net = planar_network(rng, n, m, pieces);
        if net.vertex_count() <= max_vertices
            && net.edges().len() <= max_edges
            && net.edges().iter().all(|e| e.hcross.abs() <= max_hcross)
        {
            return net;
        }
    }
}

/// Product of `factors` random Loewner-Whitney generators of size `n`; the
/// diagonal generators use positive values so the result is invertible.
pub fn tn_matrix<R: Rng>(rng: &mut R, n: usize, factors: usize) -> DenseMatrix {
    let mut acc = DenseMatrix::identity(n);
    for _ in 0..factors {
        let g = if n == 1 {
            lw_generator(1, GeneratorKind::Diagonal, 1, weight(rng))
        } else {
            match rng.gen_range(0..3) {
                0 => lw_generator(n, GeneratorKind::Upper, rng.gen_range(1..n), weight(rng)),
                1 => lw_generator(n, GeneratorKind::Lower, rng.gen_range(1..n), weight(rng)),
                _ => lw_generator(n, GeneratorKind::Diagonal, rng.gen_range(1..=n), weight(rng)),
            }
        };
        acc = acc.mul(&g.expect("valid generator")).expect("square factors");
    }
    acc
}

/// Square matrix of small signed rationals.
pub fn rational_matrix<R: Rng>(rng: &mut R, n: usize) -> DenseMatrix {
    DenseMatrix::from_fn(n, n, |_, _| signed_rational(rng, 6, 3))
}

/// `lead · Π (t + r_k)` with the `r_k` random nonnegative rationals, so all
/// roots are rational and nonpositive and all coefficients nonnegative.
pub fn real_rooted_poly<R: Rng>(rng: &mut R, degree: usize) -> RatPoly {
    let roots: Vec<Rational> = (0..degree).map(|_| -ratio(rng.gen_range(0..=8), rng.gen_range(1..=3))).collect();
    RatPoly::from_roots(positive_rational(rng, 4, 2), &roots)
}

fn nonpositive_root<R: Rng>(rng: &mut R) -> Rational {
    -ratio(rng.gen_range(0..=8), rng.gen_range(1..=3))
}

/// Pair `(p0, p1)` of polynomials with nonnegative coefficients and degree
/// at most `max_degree`. Roughly half interlace by construction; the rest
/// are independent real-rooted pairs, perturbations that are not
/// real-rooted, and degenerate cases (constants, zero, shared roots).
pub fn poly_pair<R: Rng>(rng: &mut R, max_degree: usize) -> (RatPoly, RatPoly) {
    let d1 = rng.gen_range(0..max_degree.max(1));
    let d0 = (d1 + usize::from(rng.gen_bool(0.5))).min(max_degree);
    match rng.gen_range(0..10) {
        0..=4 => {
            let mut roots: Vec<Rational> = (0..d0 + d1).map(|_| nonpositive_root(rng)).collect();
            roots.sort_by(|a, b| b.cmp(a));
            let chi: Vec<Rational> = roots.iter().step_by(2).cloned().collect();
            let psi: Vec<Rational> = roots.iter().skip(1).step_by(2).cloned().collect();
            (
                RatPoly::from_roots(positive_rational(rng, 4, 2), &chi),
                RatPoly::from_roots(positive_rational(rng, 4, 2), &psi),
            )
        }
        5..=6 => (real_rooted_poly(rng, d0), real_rooted_poly(rng, d1)),
        7..=8 => {
            let (p0, p1) = (real_rooted_poly(rng, d0), real_rooted_poly(rng, d1));
            let bump = |rng: &mut R, p: RatPoly| {
                let mut c = p.coeffs().to_vec();
                if c.len() >= 3 {
                    let k = rng.gen_range(1..c.len() - 1);
                    c[k] = &c[k] / ratio(rng.gen_range(2..=6), 1);
                }
                RatPoly::new(c)
            };
            if rng.gen_bool(0.5) {
                (bump(rng, p0), p1)
            } else {
                (p0, bump(rng, p1))
            }
        }
        _ => match rng.gen_range(0..4) {
            0 => (real_rooted_poly(rng, d0), RatPoly::zero()),
            1 => (RatPoly::zero(), real_rooted_poly(rng, d1)),
            2 => {
                let shared = nonpositive_root(rng);
                let p0 = RatPoly::from_roots(ratio(1, 1), &vec![shared.clone(); d0]);
                let p1 = RatPoly::from_roots(ratio(1, 1), &vec![shared; d1]);
                (p0, p1)
            }
            _ => (RatPoly::constant(positive_rational(rng, 4, 2)), real_rooted_poly(rng, d1.min(1))),
        },
    }
}
