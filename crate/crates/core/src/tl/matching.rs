use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use super::TlError;

/// Perfect noncrossing matching on `2n` points (a basis element of
/// `TL_n`). Internally points are 0-based: left `k` is `k - 1`, right `k`
/// is `n + k - 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NcMatching {
    n: usize,
    partner: Vec<usize>,
}

impl NcMatching {
    /// Builds from 1-based point pairs and validates the result.
    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<Self, TlError> {
        let mut partner = vec![usize::MAX; 2 * n];
        for &(a, b) in pairs {
            if a == 0 || b == 0 || a > 2 * n || b > 2 * n || a == b {
                return Err(TlError::NotPerfectMatching(format!("bad pair ({a}, {b})")));
            }
            if partner[a - 1] != usize::MAX || partner[b - 1] != usize::MAX {
                return Err(TlError::NotPerfectMatching(format!("point repeated in ({a}, {b})")));
            }
            partner[a - 1] = b - 1;
            partner[b - 1] = a - 1;
        }
        if partner.contains(&usize::MAX) {
            return Err(TlError::NotPerfectMatching("unmatched point".into()));
        }
        let out = Self { n, partner };
        if !out.is_noncrossing() {
            return Err(TlError::Crossing);
        }
        Ok(out)
    }

    /// All strands horizontal.
    pub fn identity(n: usize) -> Self {
        Self { n, partner: (0..2 * n).map(|p| if p < n { p + n } else { p - n }).collect() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Partner of 1-based point `p`.
    pub fn partner(&self, p: usize) -> usize {
        self.partner[p - 1] + 1
    }

    pub(crate) fn partner0(&self, p: usize) -> usize {
        self.partner[p]
    }

    /// Sorted 1-based pairs `(a, b)` with `a < b`.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        (0..2 * self.n).filter(|&p| p < self.partner[p]).map(|p| (p + 1, self.partner[p] + 1)).collect()
    }

    /// Position on the boundary circle: down the left column, then up the
    /// right column.
    fn cyclic(&self, p: usize) -> usize {
        if p < self.n {
            p
        } else {
            3 * self.n - 1 - p
        }
    }

    pub fn is_noncrossing(&self) -> bool {
        let chords: Vec<(usize, usize)> = (0..2 * self.n)
            .filter(|&p| p < self.partner[p])
            .map(|p| {
                let (a, b) = (self.cyclic(p), self.cyclic(self.partner[p]));
                (a.min(b), a.max(b))
            })
            .collect();
        chords.iter().all(|&(a, b)| chords.iter().all(|&(c, d)| !(a < c && c < b && b < d)))
    }

    /// Diagram product `self · other` (other glued to the right) and the
    /// number of closed loops removed.
    pub fn compose(&self, other: &Self) -> (Self, usize) {
        let n = self.n;
        assert_eq!(n, other.n, "matchings of different sizes");
        let mut partner = vec![usize::MAX; 2 * n];
        let mut visited = vec![false; n];
        for p in 0..n {
            partner[p] = self.walk(other, p, &mut visited);
        }
        for p in n..2 * n {
            let q = other.partner[p];
            partner[p] = if q >= n {
                q
            } else {
                visited[q] = true;
                self.walk(other, n + q, &mut visited)
            };
        }
        let mut loops = 0;
        for s in 0..n {
            if visited[s] {
                continue;
            }
            loops += 1;
            let mut k = s;
            while !visited[k] {
                visited[k] = true;
                let a = self.partner[k + n] - n;
                visited[a] = true;
                k = other.partner[a];
            }
        }
        (Self { n, partner }, loops)
    }

    /// Follows a strand entering `self` at point `p` until it leaves the
    /// glued diagram; returns the exit point in result numbering. Middle
    /// points crossed are marked in `visited`.
    fn walk(&self, other: &Self, mut p: usize, visited: &mut [bool]) -> usize {
        let n = self.n;
        loop {
            let q = self.partner[p];
            if q < n {
                return q;
            }
            visited[q - n] = true;
            let r = other.partner[q - n];
            if r >= n {
                return r;
            }
            visited[r] = true;
            p = n + r;
        }
    }
}

/// Generator `t_i`: left `i`–`i+1` and right `i`–`i+1` joined, all other
/// strands horizontal.
pub fn tl_generator(n: usize, i: usize) -> Result<NcMatching, TlError> {
    if i == 0 || i >= n {
        return Err(TlError::IndexOutOfRange { index: i, n });
    }
    let mut m = NcMatching::identity(n);
    let (a, b) = (i - 1, i);
    m.partner[a] = b;
    m.partner[b] = a;
    m.partner[n + a] = n + b;
    m.partner[n + b] = n + a;
    Ok(m)
}

type BasisCache = RwLock<HashMap<usize, Arc<Vec<NcMatching>>>>;

/// All noncrossing perfect matchings on `2n` points, in a fixed order.
pub fn tl_basis(n: usize) -> Arc<Vec<NcMatching>> {
    static CACHE: OnceLock<BasisCache> = OnceLock::new();
    let cache = CACHE.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(b) = cache.read().expect("basis cache poisoned").get(&n) {
        return b.clone();
    }
    let mut out = Vec::new();
    let mut cyc = vec![usize::MAX; 2 * n];
    enumerate(&mut cyc, 0, &mut out);
    // Translate boundary-circle positions back to point numbers.
    let to_point = |c: usize| if c < n { c } else { 3 * n - 1 - c };
    let basis: Vec<NcMatching> = out
        .into_iter()
        .map(|cy| {
            let mut partner = vec![0; 2 * n];
            for (c, &d) in cy.iter().enumerate() {
                partner[to_point(c)] = to_point(d);
            }
            NcMatching { n, partner }
        })
        .collect();
    let basis = Arc::new(basis);
    cache.write().expect("basis cache poisoned").entry(n).or_insert_with(|| basis.clone()).clone()
}

fn enumerate(cyc: &mut Vec<usize>, from: usize, out: &mut Vec<Vec<usize>>) {
    let Some(first) = (from..cyc.len()).find(|&p| cyc[p] == usize::MAX) else {
        out.push(cyc.clone());
        return;
    };
    // Pair `first` with a later free point leaving an even, self-contained
    // stretch in between.
    let mut q = first + 1;
    while q < cyc.len() {
        if cyc[q] == usize::MAX && (q - first) % 2 == 1 && (first + 1..q).all(|p| cyc[p] == usize::MAX) {
            cyc[first] = q;
            cyc[q] = first;
            enumerate(cyc, first + 1, out);
            cyc[first] = usize::MAX;
            cyc[q] = usize::MAX;
        }
        q += 1;
    }
}
