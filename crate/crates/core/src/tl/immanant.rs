use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use super::matching::{tl_basis, tl_generator, NcMatching};
use super::algebra::{tl_multiply, TlElement};
use super::TlError;
use crate::matrix::Matrix;
use crate::scalar::Scalar;
use crate::Rational;

/// Permutation in one-line notation on `1..=n`.
pub type Permutation = Vec<usize>;

fn check_permutation(w: &[usize]) -> Result<(), TlError> {
    let mut seen = vec![false; w.len()];
    for &x in w {
        if x == 0 || x > w.len() || std::mem::replace(&mut seen[x - 1], true) {
            return Err(TlError::NotPermutation(w.to_vec()));
        }
    }
    Ok(())
}

/// Smallest `j` such that `s_j w` is shorter than `w`, i.e. `j + 1`
/// appears before `j` in the one-line notation.
fn first_left_descent(w: &[usize]) -> Option<usize> {
    let mut pos = vec![0; w.len() + 1];
    for (k, &x) in w.iter().enumerate() {
        pos[x] = k;
    }
    (1..w.len()).find(|&j| pos[j] > pos[j + 1])
}

/// `s_j w`: swaps the values `j` and `j + 1`.
fn left_multiply(j: usize, w: &[usize]) -> Permutation {
    w.iter().map(|&x| if x == j { j + 1 } else if x == j + 1 { j } else { x }).collect()
}

/// Lexicographically smallest reduced word `[j_1, ..., j_k]` with
/// `w = s_{j_1} ··· s_{j_k}`.
pub fn reduced_word(w: &[usize]) -> Result<Vec<usize>, TlError> {
    check_permutation(w)?;
    let mut cur = w.to_vec();
    let mut word = Vec::new();
    while let Some(j) = first_left_descent(&cur) {
        word.push(j);
        cur = left_multiply(j, &cur);
    }
    Ok(word)
}

/// All permutations of `1..=n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (1..=n).collect();
    loop {
        out.push(cur.clone());
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else { break };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).expect("successor exists");
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
    out
}

/// Coefficient of `t` in `Π (t_{j_k} - 1)` over the given word, in `TL_n(2)`.
pub fn phi_of_word(t: &NcMatching, word: &[usize]) -> Result<Rational, TlError> {
    let n = t.n();
    let one = TlElement::identity(n);
    let mut acc = one.clone();
    for &j in word {
        let factor = TlElement::generator(n, j)?.sub(&one)?;
        acc = tl_multiply(&acc, &factor)?;
    }
    let two = Rational::from_integer(2.into());
    Ok(acc.coefficient(t).eval(&two))
}

/// `φ_T(w)` computed directly from the canonical reduced word.
pub fn phi(t: &NcMatching, w: &[usize]) -> Result<Rational, TlError> {
    if w.len() != t.n() {
        return Err(TlError::SizeMismatch(format!("matching on {} strands, permutation of {}", t.n(), w.len())));
    }
    phi_of_word(t, &reduced_word(w)?)
}

/// Table of `φ_T(w)` for all `T` and `w`, as integer vectors over the basis.
struct PhiTable {
    perms: Vec<Permutation>,
    index: HashMap<NcMatching, usize>,
    vectors: Vec<Vec<i64>>,
}

type TableCache = RwLock<HashMap<usize, Arc<PhiTable>>>;

fn phi_table(n: usize) -> Arc<PhiTable> {
    static CACHE: OnceLock<TableCache> = OnceLock::new();
    let cache = CACHE.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(t) = cache.read().expect("phi cache poisoned").get(&n) {
        return t.clone();
    }
    let table = Arc::new(build_phi_table(n));
    cache.write().expect("phi cache poisoned").entry(n).or_insert_with(|| table.clone()).clone()
}

/// Builds every vector from a shorter one: if `j` is the first letter of the
/// canonical word of `w`, then `vec(w) = (t_j - 1) · vec(s_j w)`.
fn build_phi_table(n: usize) -> PhiTable {
    let basis = tl_basis(n);
    let index: HashMap<NcMatching, usize> = basis.iter().cloned().enumerate().map(|(k, t)| (t, k)).collect();
    let mut perms = permutations(n);
    perms.sort_by_key(|w| inversions(w));
    let perm_index: HashMap<Permutation, usize> = perms.iter().cloned().enumerate().map(|(k, w)| (w, k)).collect();
    // Left multiplication by each generator, as a map on basis indices.
    let gens: Vec<Vec<(usize, i64)>> = (1..n)
        .map(|j| {
            let g = tl_generator(n, j).expect("valid generator");
            basis
                .iter()
                .map(|t| {
                    let (prod, loops) = g.compose(t);
                    (index[&prod], 1i64 << loops)
                })
                .collect()
        })
        .collect();
    let mut vectors: Vec<Vec<i64>> = vec![Vec::new(); perms.len()];
    for (k, w) in perms.iter().enumerate() {
        let mut v = vec![0i64; basis.len()];
        match first_left_descent(w) {
            None => v[index[&NcMatching::identity(n)]] = 1,
            Some(j) => {
                let prev = &vectors[perm_index[&left_multiply(j, w)]];
                for (b, &c) in prev.iter().enumerate() {
                    if c == 0 {
                        continue;
                    }
                    let (target, mult) = gens[j - 1][b];
                    v[target] += mult * c;
                    v[b] -= c;
                }
            }
        }
        vectors[k] = v;
    }
    PhiTable { perms, index, vectors }
}

fn inversions(w: &[usize]) -> usize {
    (0..w.len()).map(|i| (i + 1..w.len()).filter(|&j| w[i] > w[j]).count()).sum()
}

/// `φ_T(w)` read from the memoized table.
pub fn phi_vector(w: &[usize]) -> Result<Vec<(NcMatching, i64)>, TlError> {
    check_permutation(w)?;
    let table = phi_table(w.len());
    let k = table.perms.iter().position(|p| p == w).expect("every permutation is tabulated");
    let basis = tl_basis(w.len());
    Ok(basis.iter().cloned().zip(table.vectors[k].iter().copied()).collect())
}

pub(crate) fn from_int<T: Scalar>(k: i64) -> T {
    let mut acc = T::zero();
    let mut base = T::one();
    let mut rest = k.unsigned_abs();
    while rest > 0 {
        if rest & 1 == 1 {
            acc = acc + base.clone();
        }
        base = base.clone() + base;
        rest >>= 1;
    }
    if k < 0 {
        -acc
    } else {
        acc
    }
}

/// `imm_T(M) = Σ_w φ_T(w) Π_i M[i, w(i)]`.
pub fn tl_immanant<T: Scalar>(t: &NcMatching, m: &Matrix<T>) -> Result<T, TlError> {
    let all = all_immanants(m)?;
    Ok(all.into_iter().find(|(s, _)| s == t).map(|(_, v)| v).expect("basis contains every matching"))
}

/// `imm_T(M)` for every basis matching `T`, in basis order.
pub fn all_immanants<T: Scalar>(m: &Matrix<T>) -> Result<Vec<(NcMatching, T)>, TlError> {
    if !m.is_square() {
        return Err(TlError::Core(crate::CoreError::NotSquare { rows: m.rows(), cols: m.cols() }));
    }
    let n = m.rows();
    let basis = tl_basis(n.max(1));
    if n == 0 {
        return Ok(Vec::new());
    }
    let table = phi_table(n);
    let mut acc = vec![T::zero(); basis.len()];
    for (w, vec) in table.perms.iter().zip(&table.vectors) {
        let prod = w.iter().enumerate().fold(T::one(), |p, (i, &wi)| p * m.get(i, wi - 1).clone());
        if prod.is_zero() {
            continue;
        }
        for (b, &c) in vec.iter().enumerate() {
            if c != 0 {
                acc[b] = acc[b].clone() + from_int::<T>(c) * prod.clone();
            }
        }
    }
    debug_assert_eq!(table.index.len(), basis.len());
    Ok(basis.iter().cloned().zip(acc).collect())
}

/// `det M[I, J] · det M[Ī, J̄]` with 1-based index sets.
pub fn comp_minor_immanant<T: Scalar>(m: &Matrix<T>, rows: &[usize], cols: &[usize]) -> Result<T, TlError> {
    if !m.is_square() {
        return Err(TlError::Core(crate::CoreError::NotSquare { rows: m.rows(), cols: m.cols() }));
    }
    if rows.len() != cols.len() {
        return Err(TlError::SizeMismatch(format!("|I| = {} but |J| = {}", rows.len(), cols.len())));
    }
    let n = m.rows();
    if let Some(&bad) = rows.iter().chain(cols).find(|&&k| k == 0 || k > n) {
        return Err(TlError::IndexOutOfRange { index: bad, n });
    }
    let r: Vec<usize> = rows.iter().map(|k| k - 1).collect();
    let c: Vec<usize> = cols.iter().map(|k| k - 1).collect();
    let rc: Vec<usize> = (0..n).filter(|k| !r.contains(k)).collect();
    let cc: Vec<usize> = (0..n).filter(|k| !c.contains(k)).collect();
    Ok(m.minor(&r, &c)? * m.minor(&rc, &cc)?)
}

