//! Tight components.
//!
//! Two edges are adjacent when they share `k - 1` vertices. The line graph is
//! never built: every edge is bucketed under each of its (k-1)-subsets and the
//! edges of a bucket are merged in a union-find, which costs `O(k * e(G))`
//! union operations.

use alloc::vec::Vec;

use crate::combinatorics::{binomial, ColexTable};
use crate::hypergraph::{Hypergraph, Vertex, DENSE_TABLE_LIMIT};
use crate::union_find::UnionFind;
use crate::{Error, Result};

/// Partition of the edge set into tight components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentDecomposition {
    n: usize,
    parts: Vec<Vec<usize>>,
    vertex_sets: Vec<Vec<Vertex>>,
    part_of: Vec<usize>,
    spanning: Option<usize>,
}

impl ComponentDecomposition {
    /// Edge indices of every part, parts ordered by their smallest edge index.
    pub fn parts(&self) -> &[Vec<usize>] {
        &self.parts
    }

    pub fn vertex_sets(&self) -> &[Vec<Vertex>] {
        &self.vertex_sets
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn part_of_edge(&self, edge: usize) -> usize {
        self.part_of[edge]
    }

    /// First part whose edges cover every vertex, if any.
    pub fn spanning_part(&self) -> Option<usize> {
        self.spanning
    }

    pub fn has_spanning_part(&self) -> bool {
        self.spanning.is_some()
    }

    pub fn is_spanning(&self, part: usize) -> bool {
        self.n > 0 && self.vertex_sets[part].len() == self.n
    }

    /// The part with the most vertices; ties go to more edges, then to the
    /// smaller minimum vertex.
    pub fn largest_part(&self) -> Option<usize> {
        (0..self.parts.len()).min_by(|&a, &b| {
            let key = |p: usize| {
                (
                    core::cmp::Reverse(self.vertex_sets[p].len()),
                    core::cmp::Reverse(self.parts[p].len()),
                    self.vertex_sets[p][0],
                )
            };
            key(a).cmp(&key(b))
        })
    }
}

/// Connected components of the line graph of `g`, as an edge partition.
pub fn tight_components(g: &Hypergraph) -> ComponentDecomposition {
    let k = g.k();
    let m = g.edge_count();
    let mut uf = UnionFind::new(m);
    let r = k - 1;
    let buckets = binomial(g.n() as u64, r as u64).unwrap_or(u128::MAX);
    let mut ridge = alloc::vec![0 as Vertex; r];
    if buckets <= DENSE_TABLE_LIMIT as u128 {
        let table = ColexTable::new(g.n(), r).expect("bucket count checked");
        let mut first = alloc::vec![usize::MAX; buckets as usize];
        for (i, e) in g.edges().enumerate() {
            for skip in 0..k {
                fill_ridge(e, skip, &mut ridge);
                let slot = &mut first[table.rank(&ridge)];
                if *slot == usize::MAX {
                    *slot = i;
                } else {
                    uf.union(i, *slot);
                }
            }
        }
    } else {
        let mut keyed: Vec<(Vec<Vertex>, usize)> = Vec::with_capacity(m * k);
        for (i, e) in g.edges().enumerate() {
            for skip in 0..k {
                fill_ridge(e, skip, &mut ridge);
                keyed.push((ridge.clone(), i));
            }
        }
        keyed.sort_unstable();
        for w in keyed.windows(2) {
            if w[0].0 == w[1].0 {
                uf.union(w[0].1, w[1].1);
            }
        }
    }

    let mut root_to_part = alloc::vec![usize::MAX; m];
    let mut parts: Vec<Vec<usize>> = Vec::new();
    let mut part_of = alloc::vec![0; m];
    for (i, slot) in part_of.iter_mut().enumerate() {
        let root = uf.find(i);
        if root_to_part[root] == usize::MAX {
            root_to_part[root] = parts.len();
            parts.push(Vec::new());
        }
        let p = root_to_part[root];
        parts[p].push(i);
        *slot = p;
    }

    let mut mark = alloc::vec![usize::MAX; g.n()];
    let vertex_sets: Vec<Vec<Vertex>> = parts
        .iter()
        .enumerate()
        .map(|(p, edges)| {
            let mut vs = Vec::new();
            for &i in edges {
                for &v in g.edge(i) {
                    if mark[v as usize] != p {
                        mark[v as usize] = p;
                        vs.push(v);
                    }
                }
            }
            vs.sort_unstable();
            vs
        })
        .collect();
    let spanning = (0..parts.len()).find(|&p| g.n() > 0 && vertex_sets[p].len() == g.n());
    ComponentDecomposition { n: g.n(), parts, vertex_sets, part_of, spanning }
}

#[inline]
fn fill_ridge(edge: &[Vertex], skip: usize, out: &mut [Vertex]) {
    let mut j = 0;
    for (i, &v) in edge.iter().enumerate() {
        if i != skip {
            out[j] = v;
            j += 1;
        }
    }
}

/// The largest component of a vertex link and the edges through it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkComponent {
    /// Vertex set of the chosen component of `L(x)`.
    pub vertices: Vec<Vertex>,
    /// Indices (into the host edge list) of the edges `xyz` with `yz` in that component.
    pub witness: Vec<usize>,
}

/// Largest-order component `C_x` of the link of `x` and the edge set `Ĉ_x`.
///
/// Ties between components of equal order go to the one with the smallest
/// minimum vertex.
pub fn link_component_diagnostics(g: &Hypergraph, x: Vertex) -> Result<LinkComponent> {
    let link = g.link_graph(x)?;
    if link.edge_count() == 0 {
        return Err(Error::NoComponent(x));
    }
    let n = g.n();
    let mut uf = UnionFind::new(n);
    for e in link.edges() {
        uf.union(e[0] as usize, e[1] as usize);
    }
    let covered = link.covered();
    let mut size = alloc::vec![0usize; n];
    let mut min_vertex = alloc::vec![usize::MAX; n];
    for v in (0..n).filter(|&v| covered[v]) {
        let r = uf.find(v);
        size[r] += 1;
        min_vertex[r] = min_vertex[r].min(v);
    }
    let best = (0..n)
        .filter(|&r| size[r] > 0)
        .min_by_key(|&r| (core::cmp::Reverse(size[r]), min_vertex[r]))
        .expect("link has an edge");
    let vertices: Vec<Vertex> = (0..n)
        .filter(|&v| covered[v] && uf.find(v) == best)
        .map(|v| v as Vertex)
        .collect();
    let witness = g
        .edges()
        .enumerate()
        .filter(|(_, e)| {
            e.contains(&x) && e.iter().any(|&v| v != x && uf.find(v as usize) == best && covered[v as usize])
        })
        .map(|(i, _)| i)
        .collect();
    Ok(LinkComponent { vertices, witness })
}
