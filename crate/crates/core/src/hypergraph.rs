//! k-uniform hypergraphs on dense vertex sets `0..n`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::combinatorics::{binomial, for_each_subset, ColexTable};
use crate::error::{param, Error, Result};

pub type Vertex = u32;

/// Largest dense counting table (in entries) used for (k-1)-subset bucketing.
pub(crate) const DENSE_TABLE_LIMIT: usize = 1 << 26;

/// An immutable k-uniform hypergraph.
///
/// Edges are stored flat with stride `k`; each edge is strictly ascending and
/// the edge list is sorted lexicographically without repetitions.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Hypergraph {
    k: usize,
    n: usize,
    edges: Vec<Vertex>,
}

impl fmt::Debug for Hypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Hypergraph")
            .field("k", &self.k)
            .field("n", &self.n)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

impl Hypergraph {
    /// Builds a hypergraph from edges given in any vertex order.
    ///
    /// Fails on wrong edge size, repeated vertices, out-of-range vertices and
    /// repeated edges.
    pub fn new<I, E>(k: usize, n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = E>,
        E: AsRef<[Vertex]>,
    {
        let mut flat = Vec::new();
        for e in edges {
            let e = e.as_ref();
            if e.len() != k {
                return Err(Error::InvalidHypergraph(alloc::format!(
                    "edge {e:?} has {} vertices, expected {k}",
                    e.len()
                )));
            }
            let start = flat.len();
            flat.extend_from_slice(e);
            flat[start..].sort_unstable();
        }
        Self::from_flat(k, n, flat)
    }

    /// Builds a hypergraph from a flat edge buffer (stride `k`); each chunk may be unsorted.
    pub fn from_flat(k: usize, n: usize, mut flat: Vec<Vertex>) -> Result<Self> {
        if k < 1 {
            return Err(param!("uniformity must be at least 1"));
        }
        if n > Vertex::MAX as usize {
            return Err(param!("vertex count {n} too large"));
        }
        if !flat.len().is_multiple_of(k) {
            return Err(Error::InvalidHypergraph(alloc::format!(
                "edge buffer length {} is not a multiple of k = {k}",
                flat.len()
            )));
        }
        for e in flat.chunks_exact_mut(k) {
            if !e.windows(2).all(|w| w[0] < w[1]) {
                e.sort_unstable();
            }
            if e.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidHypergraph(alloc::format!(
                    "edge {e:?} repeats a vertex"
                )));
            }
            if let Some(&v) = e.last() {
                if v as usize >= n {
                    return Err(Error::InvalidHypergraph(alloc::format!(
                        "edge {e:?} has vertex {v} outside 0..{n}"
                    )));
                }
            }
        }
        let mut g = Self { k, n, edges: flat };
        if !g.is_sorted_strict() {
            g.sort_edges();
            if let Some(i) = (1..g.edge_count()).find(|&i| g.edge(i - 1) == g.edge(i)) {
                return Err(Error::InvalidHypergraph(alloc::format!(
                    "edge {:?} appears more than once",
                    g.edge(i)
                )));
            }
        }
        Ok(g)
    }

    pub fn empty(k: usize, n: usize) -> Self {
        Self { k, n, edges: Vec::new() }
    }

    /// The complete k-graph `K_n^(k)`.
    pub fn complete(k: usize, n: usize) -> Self {
        let edges = crate::combinatorics::all_subsets(n, k);
        Self { k, n, edges }
    }

    fn is_sorted_strict(&self) -> bool {
        let k = self.k;
        self.edges
            .chunks_exact(k)
            .zip(self.edges.chunks_exact(k).skip(1))
            .all(|(a, b)| a < b)
    }

    fn sort_edges(&mut self) {
        let k = self.k;
        let m = self.edge_count();
        let mut order: Vec<u32> = (0..m as u32).collect();
        let edges = &self.edges;
        order.sort_unstable_by(|&a, &b| {
            let (a, b) = (a as usize * k, b as usize * k);
            edges[a..a + k].cmp(&edges[b..b + k])
        });
        let mut sorted = Vec::with_capacity(self.edges.len());
        for i in order {
            let s = i as usize * k;
            sorted.extend_from_slice(&self.edges[s..s + k]);
        }
        self.edges = sorted;
    }

    #[inline]
    pub fn k(&self) -> usize {
        self.k
    }

    /// Number of vertices; vertices are `0..n`.
    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edges.len().checked_div(self.k).unwrap_or(0)
    }

    #[inline]
    pub fn edge(&self, i: usize) -> &[Vertex] {
        &self.edges[i * self.k..(i + 1) * self.k]
    }

    pub fn edges(&self) -> core::slice::ChunksExact<'_, Vertex> {
        self.edges.chunks_exact(self.k)
    }

    pub fn as_flat(&self) -> &[Vertex] {
        &self.edges
    }

    /// Index of `edge` (ascending) in the edge list.
    pub fn position(&self, edge: &[Vertex]) -> Option<usize> {
        if edge.len() != self.k {
            return None;
        }
        let (mut lo, mut hi) = (0, self.edge_count());
        while lo < hi {
            let mid = (lo + hi) / 2;
            match self.edge(mid).cmp(edge) {
                Ordering::Less => lo = mid + 1,
                Ordering::Greater => hi = mid,
                Ordering::Equal => return Some(mid),
            }
        }
        None
    }

    /// Membership test; `edge` may be given in any order.
    pub fn contains_edge(&self, edge: &[Vertex]) -> bool {
        if edge.windows(2).all(|w| w[0] < w[1]) {
            return self.position(edge).is_some();
        }
        let mut e = edge.to_vec();
        e.sort_unstable();
        self.position(&e).is_some()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = alloc::vec![0usize; self.n];
        for &v in &self.edges {
            deg[v as usize] += 1;
        }
        deg
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.edges.iter().filter(|&&u| u == v).count()
    }

    /// Per-vertex flag: does the vertex lie in at least one edge?
    pub fn covered(&self) -> Vec<bool> {
        let mut seen = alloc::vec![false; self.n];
        for &v in &self.edges {
            seen[v as usize] = true;
        }
        seen
    }

    /// Minimum d-degree: the least number of edges containing a d-set of vertices.
    pub fn min_degree(&self, d: usize) -> Result<usize> {
        if d < 1 || d >= self.k {
            return Err(param!("d = {d} outside 1..{}", self.k));
        }
        if self.n < d {
            return Err(param!("n = {} has no {d}-sets", self.n));
        }
        if d == 1 {
            return Ok(self.degrees().into_iter().min().unwrap_or(0));
        }
        let total = binomial(self.n as u64, d as u64).unwrap_or(u128::MAX);
        if total <= DENSE_TABLE_LIMIT as u128 {
            let table = ColexTable::new(self.n, d).expect("table size checked");
            let mut counts = alloc::vec![0usize; total as usize];
            for e in self.edges() {
                for_each_subset(e, d, |s| counts[table.rank(s)] += 1);
            }
            return Ok(counts.into_iter().min().unwrap_or(0));
        }
        let mut counts: BTreeMap<Vec<Vertex>, usize> = BTreeMap::new();
        for e in self.edges() {
            for_each_subset(e, d, |s| *counts.entry(s.to_vec()).or_insert(0) += 1);
        }
        if (counts.len() as u128) < total {
            return Ok(0);
        }
        Ok(counts.into_values().min().unwrap_or(0))
    }

    fn require_k(&self, k: usize) -> Result<()> {
        if self.k != k {
            return Err(Error::UnsupportedUniformity { expected: k, found: self.k });
        }
        Ok(())
    }

    fn check_vertex(&self, x: Vertex) -> Result<()> {
        if x as usize >= self.n {
            return Err(param!("vertex {x} outside 0..{}", self.n));
        }
        Ok(())
    }

    /// Link graph of `x` in a 3-graph: the 2-graph of pairs `yz` with `xyz` an edge.
    pub fn link_graph(&self, x: Vertex) -> Result<Hypergraph> {
        self.require_k(3)?;
        self.check_vertex(x)?;
        let mut flat = Vec::new();
        for e in self.edges().filter(|e| e.contains(&x)) {
            flat.extend(e.iter().copied().filter(|&v| v != x));
        }
        Hypergraph::from_flat(2, self.n, flat)
    }

    /// The 4-graph on the same vertices with one edge per tetrahedron `K_4^(3)`.
    pub fn tetrahedra(&self) -> Result<Hypergraph> {
        self.require_k(3)?;
        let mut flat = Vec::new();
        for e in self.edges() {
            let (a, b, c) = (e[0], e[1], e[2]);
            for d in c + 1..self.n as Vertex {
                if self.position(&[a, b, d]).is_some()
                    && self.position(&[a, c, d]).is_some()
                    && self.position(&[b, c, d]).is_some()
                {
                    flat.extend_from_slice(&[a, b, c, d]);
                }
            }
        }
        Hypergraph::from_flat(4, self.n, flat)
    }

    /// `G - x`: deletes `x` and its edges, shifting labels above `x` down by one.
    pub fn without_vertex(&self, x: Vertex) -> Result<Hypergraph> {
        self.check_vertex(x)?;
        let flat = self
            .edges()
            .filter(|e| !e.contains(&x))
            .flat_map(|e| e.iter().map(move |&v| if v > x { v - 1 } else { v }))
            .collect();
        Hypergraph::from_flat(self.k, self.n - 1, flat)
    }

    /// Sub-hypergraph on the same vertex set keeping the listed edges.
    pub fn restrict(&self, edge_indices: &[usize]) -> Hypergraph {
        let mut flat = Vec::with_capacity(edge_indices.len() * self.k);
        for &i in edge_indices {
            flat.extend_from_slice(self.edge(i));
        }
        let mut g = Hypergraph { k: self.k, n: self.n, edges: flat };
        if !g.is_sorted_strict() {
            g.sort_edges();
            g.dedup();
        }
        g
    }

    fn dedup(&mut self) {
        let k = self.k;
        let mut out: Vec<Vertex> = Vec::with_capacity(self.edges.len());
        for e in self.edges.chunks_exact(k) {
            if out.len() < k || &out[out.len() - k..] != e {
                out.extend_from_slice(e);
            }
        }
        self.edges = out;
    }

    /// True iff every edge of `self` is an edge of `other` (same k and n).
    pub fn is_subgraph_of(&self, other: &Hypergraph) -> bool {
        self.k == other.k && self.n == other.n && self.edges().all(|e| other.position(e).is_some())
    }

    /// Applies the vertex map `perm` (a permutation of `0..n`).
    pub fn relabel(&self, perm: &[Vertex]) -> Result<Hypergraph> {
        if perm.len() != self.n {
            return Err(param!("relabelling has {} entries for {} vertices", perm.len(), self.n));
        }
        let flat = self.edges.iter().map(|&v| perm[v as usize]).collect();
        Hypergraph::from_flat(self.k, self.n, flat)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn normalises_and_rejects_bad_edges() {
        let g = Hypergraph::new(3, 5, [[2, 0, 1], [4, 3, 1]]).unwrap();
        assert_eq!(g.edge(0), &[0, 1, 2]);
        assert_eq!(g.edge(1), &[1, 3, 4]);
        assert!(Hypergraph::new(3, 5, [[0, 0, 1]]).is_err());
        assert!(Hypergraph::new(3, 5, [[0, 1, 5]]).is_err());
        assert!(Hypergraph::new(3, 5, [[0, 1, 2], [2, 1, 0]]).is_err());
        assert!(Hypergraph::new(3, 5, [vec![0, 1]]).is_err());
    }

    #[test]
    fn degrees_of_complete_graphs() {
        let k5 = Hypergraph::complete(3, 5);
        assert_eq!(k5.edge_count(), 10);
        assert_eq!(k5.min_degree(1).unwrap(), 6);
        assert_eq!(k5.min_degree(2).unwrap(), 3);
        assert!(k5.min_degree(3).is_err());
        assert!(k5.min_degree(0).is_err());
        let k6 = Hypergraph::complete(4, 6);
        assert_eq!(k6.min_degree(3).unwrap(), 3);
        assert_eq!(k6.min_degree(2).unwrap(), 6);
    }

    #[test]
    fn min_degree_counts_missing_sets_as_zero() {
        let g = Hypergraph::new(3, 5, [[0, 1, 2]]).unwrap();
        assert_eq!(g.min_degree(2).unwrap(), 0);
        assert_eq!(g.min_degree(1).unwrap(), 0);
        assert!(Hypergraph::empty(3, 1).min_degree(2).is_err());
    }

    #[test]
    fn link_of_k4() {
        let k4 = Hypergraph::complete(3, 4);
        let link = k4.link_graph(0).unwrap();
        assert_eq!(link.k(), 2);
        assert_eq!(link.edges().collect::<Vec<_>>(), vec![&[1, 2], &[1, 3], &[2, 3]]);
        assert_eq!(link.degree(0), 0);
        assert!(Hypergraph::complete(2, 4).link_graph(0).is_err());
        assert_eq!(Hypergraph::empty(3, 4).link_graph(2).unwrap().edge_count(), 0);
    }

    #[test]
    fn tetrahedra_of_small_graphs() {
        let k5 = Hypergraph::complete(3, 5);
        assert_eq!(k5.tetrahedra().unwrap(), Hypergraph::complete(4, 5));
        let single = Hypergraph::new(3, 5, [[0, 1, 2]]).unwrap();
        assert_eq!(single.tetrahedra().unwrap().edge_count(), 0);
    }

    #[test]
    fn vertex_deletion_shifts_labels() {
        let g = Hypergraph::new(3, 5, [[0, 1, 2], [1, 3, 4], [0, 2, 4]]).unwrap();
        let h = g.without_vertex(1).unwrap();
        assert_eq!(h.n(), 4);
        assert_eq!(h.edges().collect::<Vec<_>>(), vec![&[0, 1, 3]]);
    }

    #[test]
    fn sum_of_degrees_is_k_times_edges() {
        let g = Hypergraph::new(3, 6, [[0, 1, 2], [1, 3, 4], [0, 2, 4], [3, 4, 5]]).unwrap();
        assert_eq!(g.degrees().iter().sum::<usize>(), 3 * g.edge_count());
    }
}
