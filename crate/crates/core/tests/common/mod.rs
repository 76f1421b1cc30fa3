#![allow(dead_code)]

use tnloop::network::{Edge, Network};
use tnloop::scalar::rat;
use tnloop::{CylNetwork, LaurentPoly, LoopMatrix, Rational};

/// Three sources, three sinks and one interior vertex `x`:
/// `v1 → x → w1`, `x → w3` crossing 𝔥 clockwise, `v3 → x` crossing it
/// counterclockwise, and `v2 → w2`. All weights one.
pub fn example_network() -> CylNetwork {
    let e = |tail, head, hcross| Edge { tail, head, weight: rat(1), hcross };
    Network::new(
        7,
        vec![e(0, 6, 0), e(6, 3, 0), e(6, 5, -1), e(2, 6, 1), e(1, 4, 0)],
        vec![0, 1, 2],
        vec![3, 4, 5],
    )
    .unwrap()
}

pub fn lp(terms: &[(i64, i64)]) -> LaurentPoly {
    LaurentPoly::from_terms(terms.iter().map(|&(d, c)| (d, rat(c))))
}

/// `[[1, 0, t^-1], [0, 1, 0], [t, 0, 1]]`.
pub fn example_folded() -> LoopMatrix {
    LoopMatrix::new(
        3,
        3,
        vec![
            vec![lp(&[(0, 1)]), lp(&[]), lp(&[(-1, 1)])],
            vec![lp(&[]), lp(&[(0, 1)]), lp(&[])],
            vec![lp(&[(1, 1)]), lp(&[]), lp(&[(0, 1)])],
        ],
    )
    .unwrap()
}

/// Polynomial entries from coefficient lists, low degree first.
pub fn poly_matrix(rows: &[&[&[i64]]]) -> LoopMatrix {
    let n = rows.len();
    let m = rows[0].len();
    LoopMatrix::new(
        n,
        m,
        rows.iter()
            .map(|r| {
                r.iter()
                    .map(|c| LaurentPoly::from_terms(c.iter().enumerate().map(|(d, &x)| (d as i64, rat(x)))))
                    .collect()
            })
            .collect(),
    )
    .unwrap()
}

/// The 2x2 polynomial matrix whose entries interlace pairwise along rows
/// and columns but which has a negative 2x2 minor.
pub fn counterexample() -> LoopMatrix {
    poly_matrix(&[&[&[21, 10, 1], &[40, 14, 1]], &[&[10, 7, 1], &[18, 9, 1]]])
}

pub fn index_subsets(range: std::ops::RangeInclusive<i64>, k: usize) -> Vec<Vec<i64>> {
    let items: Vec<i64> = range.collect();
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(items: &[i64], k: usize, start: usize, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            cur.push(items[i]);
            rec(items, k, i + 1, cur, out);
            cur.pop();
        }
    }
    rec(&items, k, 0, &mut cur, &mut out);
    out
}

pub fn rationals(values: &[i64]) -> Vec<Rational> {
    values.iter().map(|&v| rat(v)).collect()
}
