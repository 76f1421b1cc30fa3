//! Cylindrical networks: acyclic weighted digraphs whose edges record how
//! often they cross the reference line 𝔥 between the two boundary circles.

use std::collections::{HashMap, VecDeque};

use thiserror::Error;

use crate::laurent::Laurent;
use crate::loop_matrix::{split_index, PeriodicMatrix};
use crate::scalar::Scalar;

/// Enumeration stops with [`NetworkError::TooManyPaths`] beyond this count.
pub const PATH_LIMIT: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NetworkError {
    #[error("vertex {0} out of range")]
    VertexOutOfRange(usize),
    #[error("the network contains a directed cycle")]
    Cyclic,
    #[error("vertex {0} is listed more than once among sources and sinks")]
    DuplicateTerminal(usize),
    #[error("source vertex {0} has an incoming edge")]
    SourceHasIncoming(usize),
    #[error("sink vertex {0} has an outgoing edge")]
    SinkHasOutgoing(usize),
    #[error("a network needs at least one source and one sink")]
    NoTerminals,
    #[error("terminal index {index} out of range 1..={count}")]
    TerminalOutOfRange { index: usize, count: usize },
    #[error("more than {PATH_LIMIT} paths")]
    TooManyPaths,
    #[error("arity mismatch: {0}")]
    ArityMismatch(String),
    #[error("edge weight must be nonnegative")]
    NegativeWeight,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Edge<T> {
    pub tail: usize,
    pub head: usize,
    pub weight: T,
    /// Signed number of counterclockwise crossings of 𝔥.
    pub hcross: i64,
}

/// A directed path given by its edge indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NetPath<T> {
    pub edges: Vec<usize>,
    pub weight: T,
    pub rotor: i64,
}

/// Acyclic network on a cylinder. Sources `v_1..v_n` and sinks `w_1..w_m`
/// are vertex ids (0-based); sources have no incoming and sinks no outgoing
/// edges, which makes concatenation multiply weight matrices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Network<T> {
    vertex_count: usize,
    edges: Vec<Edge<T>>,
    sources: Vec<usize>,
    sinks: Vec<usize>,
    topo: Vec<usize>,
    out_edges: Vec<Vec<usize>>,
}

impl<T: Scalar> Network<T> {
    pub fn new(
        vertex_count: usize,
        edges: Vec<Edge<T>>,
        sources: Vec<usize>,
        sinks: Vec<usize>,
    ) -> Result<Self, NetworkError> {
        if sources.is_empty() || sinks.is_empty() {
            return Err(NetworkError::NoTerminals);
        }
        let mut seen = vec![false; vertex_count];
        for &v in sources.iter().chain(&sinks) {
            if v >= vertex_count {
                return Err(NetworkError::VertexOutOfRange(v));
            }
            if std::mem::replace(&mut seen[v], true) {
                return Err(NetworkError::DuplicateTerminal(v));
            }
        }
        let mut out_edges = vec![Vec::new(); vertex_count];
        let mut indegree = vec![0usize; vertex_count];
        for (k, e) in edges.iter().enumerate() {
            for v in [e.tail, e.head] {
                if v >= vertex_count {
                    return Err(NetworkError::VertexOutOfRange(v));
                }
            }
            out_edges[e.tail].push(k);
            indegree[e.head] += 1;
        }
        if let Some(&s) = sources.iter().find(|&&s| indegree[s] > 0) {
            return Err(NetworkError::SourceHasIncoming(s));
        }
        if let Some(&w) = sinks.iter().find(|&&w| !out_edges[w].is_empty()) {
            return Err(NetworkError::SinkHasOutgoing(w));
        }
        let mut queue: VecDeque<usize> = (0..vertex_count).filter(|&v| indegree[v] == 0).collect();
        let mut topo = Vec::with_capacity(vertex_count);
        while let Some(v) = queue.pop_front() {
            topo.push(v);
            for &k in &out_edges[v] {
                let h = edges[k].head;
                indegree[h] -= 1;
                if indegree[h] == 0 {
                    queue.push_back(h);
                }
            }
        }
        if topo.len() != vertex_count {
            return Err(NetworkError::Cyclic);
        }
        Ok(Self { vertex_count, edges, sources, sinks, topo, out_edges })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &[Edge<T>] {
        &self.edges
    }

    pub fn sources(&self) -> &[usize] {
        &self.sources
    }

    pub fn sinks(&self) -> &[usize] {
        &self.sinks
    }

    /// Number of sources, the row period of the weight matrix.
    pub fn n(&self) -> usize {
        self.sources.len()
    }

    /// Number of sinks, the column period of the weight matrix.
    pub fn m(&self) -> usize {
        self.sinks.len()
    }

    pub fn min_weight(&self) -> Option<&T> {
        self.edges.iter().map(|e| &e.weight).min_by(|a, b| a.partial_cmp(b).expect("comparable weights"))
    }

    fn check_terminal(index: usize, count: usize) -> Result<(), NetworkError> {
        if index == 0 || index > count {
            return Err(NetworkError::TerminalOutOfRange { index, count });
        }
        Ok(())
    }

    /// All paths from source `v_i` to sink `w_j` (1-based), ordered
    /// lexicographically by edge index sequence.
    pub fn enumerate_paths(&self, i: usize, j: usize) -> Result<Vec<NetPath<T>>, NetworkError> {
        Self::check_terminal(i, self.n())?;
        Self::check_terminal(j, self.m())?;
        let target = self.sinks[j - 1];
        let reaches = self.reaches(target);
        let mut out = Vec::new();
        let mut stack = Vec::new();
        self.dfs(self.sources[i - 1], target, &reaches, &mut stack, &mut out)?;
        Ok(out)
    }

    fn reaches(&self, target: usize) -> Vec<bool> {
        let mut reach = vec![false; self.vertex_count];
        reach[target] = true;
        for &v in self.topo.iter().rev() {
            if self.out_edges[v].iter().any(|&k| reach[self.edges[k].head]) {
                reach[v] = true;
            }
        }
        reach
    }

    fn dfs(
        &self,
        v: usize,
        target: usize,
        reaches: &[bool],
        stack: &mut Vec<usize>,
        out: &mut Vec<NetPath<T>>,
    ) -> Result<(), NetworkError> {
        if !reaches[v] {
            return Ok(());
        }
        if v == target {
            if out.len() >= PATH_LIMIT {
                return Err(NetworkError::TooManyPaths);
            }
            out.push(self.make_path(stack.clone()));
            return Ok(());
        }
        for &k in &self.out_edges[v] {
            stack.push(k);
            self.dfs(self.edges[k].head, target, reaches, stack, out)?;
            stack.pop();
        }
        Ok(())
    }

    fn make_path(&self, edges: Vec<usize>) -> NetPath<T> {
        let weight = edges.iter().fold(T::one(), |acc, &k| acc * self.edges[k].weight.clone());
        let rotor = edges.iter().map(|&k| self.edges[k].hcross).sum();
        NetPath { edges, weight, rotor }
    }

    /// Vertices visited by `path`, paired with the rotor accumulated on
    /// arrival at each of them.
    pub fn path_vertices(&self, start: usize, path: &NetPath<T>) -> Vec<(usize, i64)> {
        let mut out = vec![(start, 0)];
        let mut rot = 0;
        for &k in &path.edges {
            rot += self.edges[k].hcross;
            out.push((self.edges[k].head, rot));
        }
        out
    }

    /// Folded weight matrix: entry `(i, j)` is `Σ_p wt(p) t^rot(p)` over the
    /// paths from `v_i` to `w_j`, computed by dynamic programming.
    pub fn folded_weight_matrix(&self) -> PeriodicMatrix<T> {
        let mut rows = Vec::with_capacity(self.n());
        for &s in &self.sources {
            let mut val: Vec<Laurent<T>> = vec![Laurent::zero(); self.vertex_count];
            val[s] = Laurent::one();
            for &v in &self.topo {
                if val[v].is_zero() {
                    continue;
                }
                for &k in &self.out_edges[v] {
                    let e = &self.edges[k];
                    let add = val[v].scale(&e.weight).shift(e.hcross);
                    val[e.head] = &val[e.head] + &add;
                }
            }
            rows.push(self.sinks.iter().map(|&w| val[w].clone()).collect());
        }
        PeriodicMatrix::new(self.n(), self.m(), rows).expect("terminal lists are nonempty")
    }

    /// Signed sum over families of pairwise uncrossed `(I_l, J_l)`-paths of
    /// the product of their weights (global 1-based indices).
    pub fn glv_minor(&self, rows: &[i64], cols: &[i64]) -> Result<T, NetworkError> {
        if rows.len() != cols.len() {
            return Err(NetworkError::ArityMismatch(format!("{} rows vs {} columns", rows.len(), cols.len())));
        }
        let mut choices: Vec<Vec<Candidate<T>>> = Vec::with_capacity(rows.len());
        let mut shifts = Vec::with_capacity(rows.len());
        for (&gi, &gj) in rows.iter().zip(cols) {
            let (i, r) = split_index(gi, self.n());
            let (j, s) = split_index(gj, self.m());
            shifts.push((r, s));
            let list = self
                .enumerate_paths(i, j)?
                .into_iter()
                .filter(|p| p.rotor == s - r)
                .map(|p| {
                    let prefix: HashMap<usize, i64> = self.path_vertices(self.sources[i - 1], &p).into_iter().collect();
                    Candidate { path: p, prefix }
                })
                .collect();
            choices.push(list);
        }
        let mut picked: Vec<usize> = Vec::with_capacity(rows.len());
        let mut total = T::zero();
        family_sum(&choices, &shifts, &mut picked, &mut total);
        Ok(total)
    }
}

struct Candidate<T> {
    path: NetPath<T>,
    prefix: HashMap<usize, i64>,
}

/// `p` and `q` properly cross when swapping tails at a common vertex yields
/// a path of the mixed index pair; uncrossed means no vertex does this.
fn uncrossed<T>(p: &Candidate<T>, p_shift: (i64, i64), q: &Candidate<T>, q_shift: (i64, i64)) -> bool {
    let target = q_shift.1 - p_shift.0;
    !p.prefix.iter().any(|(v, &pre_p)| match q.prefix.get(v) {
        Some(&pre_q) => pre_p + q.path.rotor - pre_q == target,
        None => false,
    })
}

fn family_sum<T: Scalar>(choices: &[Vec<Candidate<T>>], shifts: &[(i64, i64)], picked: &mut Vec<usize>, total: &mut T) {
    let level = picked.len();
    if level == choices.len() {
        let w = picked.iter().enumerate().fold(T::one(), |acc, (l, &k)| acc * choices[l][k].path.weight.clone());
        *total = total.clone() + w;
        return;
    }
    for k in 0..choices[level].len() {
        let cand = &choices[level][k];
        let ok = picked
            .iter()
            .enumerate()
            .all(|(l, &kl)| uncrossed(&choices[l][kl], shifts[l], cand, shifts[level]));
        if ok {
            picked.push(k);
            family_sum(choices, shifts, picked, total);
            picked.pop();
        }
    }
}

/// Glues the sinks of `first` to the sources of `second`; the folded weight
/// matrix of the result is the product of the two folded weight matrices.
pub fn concatenate<T: Scalar>(first: &Network<T>, second: &Network<T>) -> Result<Network<T>, NetworkError> {
    if first.m() != second.n() {
        return Err(NetworkError::ArityMismatch(format!(
            "{} sinks glued to {} sources",
            first.m(),
            second.n()
        )));
    }
    let mut map = vec![usize::MAX; second.vertex_count];
    for (k, &s) in second.sources.iter().enumerate() {
        map[s] = first.sinks[k];
    }
    let mut next = first.vertex_count;
    for slot in map.iter_mut().filter(|slot| **slot == usize::MAX) {
        *slot = next;
        next += 1;
    }
    let mut edges = first.edges.clone();
    edges.extend(second.edges.iter().map(|e| Edge {
        tail: map[e.tail],
        head: map[e.head],
        weight: e.weight.clone(),
        hcross: e.hcross,
    }));
    let sinks = second.sinks.iter().map(|&w| map[w]).collect();
    Network::new(next, edges, first.sources.clone(), sinks)
}

/// Reverses every edge and swaps sources with sinks; the folded weight
/// matrix transposes.
pub fn transpose_network<T: Scalar>(net: &Network<T>) -> Network<T> {
    let edges = net
        .edges
        .iter()
        .map(|e| Edge { tail: e.head, head: e.tail, weight: e.weight.clone(), hcross: -e.hcross })
        .collect();
    Network::new(net.vertex_count, edges, net.sinks.clone(), net.sources.clone()).expect("transpose preserves validity")
}

/// Turns the cylinder upside down: terminal orders reverse and crossings
/// change sign, which rotates the unfolded weight matrix by 180 degrees.
pub fn rotate_network<T: Scalar>(net: &Network<T>) -> Network<T> {
    let edges = net.edges.iter().map(|e| Edge { hcross: -e.hcross, ..e.clone() }).collect();
    let sources = net.sources.iter().rev().copied().collect();
    let sinks = net.sinks.iter().rev().copied().collect();
    Network::new(net.vertex_count, edges, sources, sinks).expect("rotation preserves validity")
}

/// Layout shared by the builders: sources `0..n`, sinks `n..n+m`.
fn layered<T: Scalar>(n: usize, m: usize, edges: Vec<(usize, usize, T, i64)>) -> Result<Network<T>, NetworkError> {
    if edges.iter().any(|e| e.2.is_negative()) {
        return Err(NetworkError::NegativeWeight);
    }
    let edges = edges
        .into_iter()
        .filter(|e| !e.2.is_zero())
        .map(|(i, j, weight, hcross)| Edge { tail: i - 1, head: n + j - 1, weight, hcross })
        .collect();
    Network::new(n + m, edges, (0..n).collect(), (n..n + m).collect())
}

/// `n` sources joined to `n` sinks by weight-one edges.
pub fn identity_network<T: Scalar>(n: usize) -> Result<Network<T>, NetworkError> {
    layered(n, n, (1..=n).map(|i| (i, i, T::one(), 0)).collect())
}

/// `n` sources and `m` sinks with no edges; weight matrix zero.
pub fn empty_network<T: Scalar>(n: usize, m: usize) -> Result<Network<T>, NetworkError> {
    layered(n, m, Vec::new())
}

/// Identity plus one edge `v_k → w_{k-1}` of weight `c`; for `k = 1` the
/// edge goes to `w_n` crossing 𝔥 clockwise, so the folded entry is
/// `c t^{-1}`.
pub fn elementary_row_network<T: Scalar>(n: usize, k: usize, c: T) -> Result<Network<T>, NetworkError> {
    Network::<T>::check_terminal(k, n)?;
    let mut edges: Vec<_> = (1..=n).map(|i| (i, i, T::one(), 0)).collect();
    if k == 1 {
        edges.push((1, n, c, -1));
    } else {
        edges.push((k, k - 1, c, 0));
    }
    layered(n, n, edges)
}

/// `n-1` sources and `n` sinks; source `i` feeds sink `i` for `i < k` and
/// sink `i+1` otherwise, so sink `w_k` receives nothing.
pub fn row_deletion_network<T: Scalar>(n: usize, k: usize) -> Result<Network<T>, NetworkError> {
    if n < 2 {
        return Err(NetworkError::ArityMismatch("row deletion needs period at least 2".into()));
    }
    Network::<T>::check_terminal(k, n)?;
    layered(n - 1, n, (1..n).map(|i| (i, if i < k { i } else { i + 1 }, T::one(), 0)).collect())
}

/// Diagonal weight matrix with the given entries.
pub fn diagonal_base_network<T: Scalar>(weights: &[T]) -> Result<Network<T>, NetworkError> {
    diagonal_network(weights, 0)
}

/// Network whose unfolded weight matrix is supported on the diagonal
/// `J - I = offset`, with entry `weights[i-1]` in every row `I ≡ i`.
pub fn diagonal_network<T: Scalar>(weights: &[T], offset: i64) -> Result<Network<T>, NetworkError> {
    let n = weights.len();
    if n == 0 {
        return Err(NetworkError::NoTerminals);
    }
    let edges = weights
        .iter()
        .enumerate()
        .map(|(k, w)| {
            let i = k as i64 + 1;
            let (j, s) = split_index(i + offset, n);
            (k + 1, j, w.clone(), s)
        })
        .collect();
    layered(n, n, edges)
}

/// Whirl with parameters `a_1..a_n`: folded matrix `I + Σ a_i E_{i,i+1}`
/// with the last parameter wrapping around as `a_n t E_{n,1}`.
pub fn whirl_network<T: Scalar>(params: &[T]) -> Result<Network<T>, NetworkError> {
    let n = params.len();
    if n == 0 {
        return Err(NetworkError::NoTerminals);
    }
    let mut edges: Vec<_> = (1..=n).map(|i| (i, i, T::one(), 0)).collect();
    for (k, a) in params.iter().enumerate() {
        let i = k + 1;
        if i < n {
            edges.push((i, i + 1, a.clone(), 0));
        } else {
            edges.push((n, 1, a.clone(), 1));
        }
    }
    layered(n, n, edges)
}

impl<T: Scalar> Network<T> {
    /// Equivalent smaller network with the same folded weight matrix: drops
    /// zero-weight edges and vertices off every source-sink path, splices out
    /// interior vertices with a single incoming or single outgoing edge, and
    /// merges parallel edges with equal crossing counts. These moves keep a
    /// planar embedding planar.
    pub fn simplified(&self) -> Network<T> {
        let n = self.vertex_count;
        let terminal: Vec<bool> = (0..n).map(|v| self.sources.contains(&v) || self.sinks.contains(&v)).collect();
        let mut alive = vec![true; n];
        let mut edges: Vec<Option<Edge<T>>> =
            self.edges.iter().filter(|e| !e.weight.is_zero()).cloned().map(Some).collect();
        loop {
            let mut changed = false;
            // Merge parallel edges.
            let mut seen: HashMap<(usize, usize, i64), usize> = HashMap::new();
            for k in 0..edges.len() {
                let Some(e) = edges[k].clone() else { continue };
                match seen.get(&(e.tail, e.head, e.hcross)) {
                    Some(&first) => {
                        let keep = edges[first].as_mut().expect("live edge");
                        keep.weight = keep.weight.clone() + e.weight;
                        edges[k] = None;
                        changed = true;
                    }
                    None => {
                        seen.insert((e.tail, e.head, e.hcross), k);
                    }
                }
            }
            // Prune vertices that cannot lie on a source-sink path.
            let live: Vec<Edge<T>> = edges.iter().flatten().cloned().collect();
            let forward = reach_from(n, &live, &self.sources, false);
            let backward = reach_from(n, &live, &self.sinks, true);
            for v in 0..n {
                if alive[v] && !terminal[v] && !(forward[v] && backward[v]) {
                    alive[v] = false;
                    changed = true;
                }
            }
            for slot in edges.iter_mut() {
                if slot.as_ref().is_some_and(|e| !alive[e.tail] || !alive[e.head]) {
                    *slot = None;
                    changed = true;
                }
            }
            // Splice one interior vertex of in- or out-degree one.
            for x in (0..n).filter(|&v| alive[v] && !terminal[v]) {
                let ins: Vec<usize> = (0..edges.len()).filter(|&k| edges[k].as_ref().is_some_and(|e| e.head == x)).collect();
                let outs: Vec<usize> = (0..edges.len()).filter(|&k| edges[k].as_ref().is_some_and(|e| e.tail == x)).collect();
                if ins.len() != 1 && outs.len() != 1 {
                    continue;
                }
                let mut fresh = Vec::new();
                for &a in &ins {
                    for &b in &outs {
                        let (ea, eb) = (edges[a].as_ref().expect("live"), edges[b].as_ref().expect("live"));
                        fresh.push(Edge {
                            tail: ea.tail,
                            head: eb.head,
                            weight: ea.weight.clone() * eb.weight.clone(),
                            hcross: ea.hcross + eb.hcross,
                        });
                    }
                }
                for k in ins.into_iter().chain(outs) {
                    edges[k] = None;
                }
                edges.extend(fresh.into_iter().map(Some));
                alive[x] = false;
                changed = true;
                break;
            }
            if !changed {
                break;
            }
        }
        let mut index = vec![usize::MAX; n];
        let mut count = 0;
        for v in 0..n {
            if alive[v] {
                index[v] = count;
                count += 1;
            }
        }
        let edges = edges
            .into_iter()
            .flatten()
            .map(|e| Edge { tail: index[e.tail], head: index[e.head], ..e })
            .collect();
        let sources = self.sources.iter().map(|&v| index[v]).collect();
        let sinks = self.sinks.iter().map(|&v| index[v]).collect();
        Network::new(count, edges, sources, sinks).expect("simplification preserves validity")
    }
}

fn reach_from<T>(n: usize, edges: &[Edge<T>], start: &[usize], reverse: bool) -> Vec<bool> {
    let mut adj = vec![Vec::new(); n];
    for e in edges {
        if reverse {
            adj[e.head].push(e.tail);
        } else {
            adj[e.tail].push(e.head);
        }
    }
    let mut seen = vec![false; n];
    let mut stack: Vec<usize> = start.to_vec();
    while let Some(v) = stack.pop() {
        if !std::mem::replace(&mut seen[v], true) {
            stack.extend(adj[v].iter().copied());
        }
    }
    seen
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;
    use crate::{LaurentPoly, Rational};

    fn e(tail: usize, head: usize, hcross: i64) -> Edge<Rational> {
        Edge { tail, head, weight: rat(1), hcross }
    }

    #[test]
    fn rejects_cycles_and_bad_terminals() {
        let cyc = Network::new(4, vec![e(0, 2, 0), e(2, 3, 0), e(3, 2, 0), e(2, 1, 0)], vec![0], vec![1]);
        assert_eq!(cyc.unwrap_err(), NetworkError::Cyclic);
        let dup = Network::<Rational>::new(2, vec![], vec![0], vec![0]);
        assert_eq!(dup.unwrap_err(), NetworkError::DuplicateTerminal(0));
    }

    #[test]
    fn elementary_row_matrix() {
        let net = elementary_row_network(7, 3, rat(5)).unwrap();
        let w = net.folded_weight_matrix();
        assert_eq!(w.term_count(), 8);
        assert_eq!(w.entry(3, 2), &LaurentPoly::constant(rat(5)));
        let wrap = elementary_row_network(3, 1, rat(2)).unwrap().folded_weight_matrix();
        assert_eq!(wrap.entry(1, 3), &LaurentPoly::monomial(rat(2), -1));
    }

    #[test]
    fn row_deletion_matrix() {
        let w = row_deletion_network::<Rational>(3, 2).unwrap().folded_weight_matrix();
        let rows: Vec<Vec<Rational>> = w.block(0).to_rows();
        assert_eq!(rows, vec![vec![rat(1), rat(0), rat(0)], vec![rat(0), rat(0), rat(1)]]);
        assert_eq!(w.term_count(), 2);
    }

    #[test]
    fn diagonal_and_whirl() {
        assert_eq!(
            diagonal_base_network(&[rat(1), rat(1)]).unwrap().folded_weight_matrix(),
            PeriodicMatrix::identity(2)
        );
        let d = diagonal_network(&[rat(2), rat(3)], 3).unwrap().folded_weight_matrix();
        assert_eq!(d.single_diagonal(), Some(3));
        assert_eq!(d.unfold_entry(1, 4), rat(2));
        assert_eq!(d.unfold_entry(2, 5), rat(3));
        let w = whirl_network(&[rat(2)]).unwrap().folded_weight_matrix();
        assert_eq!(w.entry(1, 1), &LaurentPoly::from_terms([(0, rat(1)), (1, rat(2))]));
    }
}
