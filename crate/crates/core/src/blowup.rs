//! Complete blow-ups: every base vertex becomes a cluster and every base edge
//! becomes the complete k-partite k-graph on its clusters.

use alloc::vec::Vec;
use core::ops::Range;

use crate::error::{param, Result};
use crate::hypergraph::{Hypergraph, Vertex};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlowUp {
    base: Hypergraph,
    sizes: Vec<usize>,
    offsets: Vec<usize>,
    result: Hypergraph,
    phi: Vec<Vertex>,
}

impl BlowUp {
    pub fn base(&self) -> &Hypergraph {
        &self.base
    }

    /// Cluster sizes, one per base vertex.
    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn result(&self) -> &Hypergraph {
        &self.result
    }

    /// The projection `φ` onto base vertices.
    pub fn phi(&self) -> &[Vertex] {
        &self.phi
    }

    /// Result vertices forming the cluster of base vertex `x`.
    pub fn cluster(&self, x: Vertex) -> Range<Vertex> {
        let x = x as usize;
        self.offsets[x] as Vertex..(self.offsets[x] + self.sizes[x]) as Vertex
    }

    pub fn max_cluster(&self) -> usize {
        self.sizes.iter().copied().max().unwrap_or(0)
    }

    /// Sorted base images of a set of result vertices, or `None` when two of
    /// them share a cluster or the image is not a base edge.
    pub fn project(&self, edge: &[Vertex]) -> Option<Vec<Vertex>> {
        let mut image: Vec<Vertex> = edge
            .iter()
            .map(|&v| self.phi.get(v as usize).copied())
            .collect::<Option<_>>()?;
        image.sort_unstable();
        if image.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        self.base.position(&image).map(|_| image)
    }
}

/// Blows up each vertex `x` of `base` into a cluster of `sizes[x]` vertices.
///
/// Cluster `x` occupies the contiguous block starting at `sizes[..x].sum()`.
pub fn blow_up(base: &Hypergraph, sizes: &[usize]) -> Result<BlowUp> {
    if sizes.len() != base.n() {
        return Err(param!("{} cluster sizes given for {} base vertices", sizes.len(), base.n()));
    }
    if let Some(x) = sizes.iter().position(|&s| s == 0) {
        return Err(param!("cluster of base vertex {x} must be non-empty"));
    }
    let mut offsets = Vec::with_capacity(sizes.len());
    let mut total = 0usize;
    for &s in sizes {
        offsets.push(total);
        total += s;
    }
    let mut phi = Vec::with_capacity(total);
    for (x, &s) in sizes.iter().enumerate() {
        phi.extend(core::iter::repeat_n(x as Vertex, s));
    }

    let k = base.k();
    let mut flat = Vec::new();
    let mut pick = alloc::vec![0usize; k];
    for e in base.edges() {
        pick.iter_mut().for_each(|p| *p = 0);
        'product: loop {
            for (j, &x) in e.iter().enumerate() {
                flat.push((offsets[x as usize] + pick[j]) as Vertex);
            }
            // odometer over cluster positions, last coordinate fastest
            let mut j = k;
            loop {
                if j == 0 {
                    break 'product;
                }
                j -= 1;
                pick[j] += 1;
                if pick[j] < sizes[e[j] as usize] {
                    break;
                }
                pick[j] = 0;
            }
        }
    }
    let result = Hypergraph::from_flat(k, total, flat)?;
    Ok(BlowUp { base: base.clone(), sizes: sizes.to_vec(), offsets, result, phi })
}

/// Whether `h` is a spanning subgraph of the blow-up: every vertex is covered
/// and every edge meets the clusters of some base edge once each.
pub fn is_spanning_in_blowup(h: &Hypergraph, b: &BlowUp) -> Result<bool> {
    if h.n() != b.result.n() || h.k() != b.result.k() {
        return Err(param!(
            "hypergraph ({}-uniform on {} vertices) does not share the blow-up's vertex set ({}-uniform on {})",
            h.k(),
            h.n(),
            b.result.k(),
            b.result.n()
        ));
    }
    if !h.covered().iter().all(|&c| c) {
        return Ok(false);
    }
    Ok(h.edges().all(|e| b.project(e).is_some()))
}
