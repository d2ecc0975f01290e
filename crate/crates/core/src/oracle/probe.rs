//! Exploratory check of the codegree condition `δ_{k-1}(G) > n/k` for a
//! spanning tight component.

use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::combinatorics::next_combination;
use crate::components::tight_components;
use crate::hypergraph::{Hypergraph, Vertex};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodegreeReport {
    pub k: usize,
    pub n: usize,
    /// `δ_{k-1}(G)`.
    pub codegree: usize,
    /// Whether `δ_{k-1}(G) > n/k`, compared exactly as `k * δ > n`.
    pub above_bound: bool,
    pub spanning: bool,
}

impl CodegreeReport {
    /// A graph above the bound without a spanning component.
    pub fn is_counterexample(&self) -> bool {
        self.above_bound && !self.spanning
    }
}

pub fn codegree_component_probe(g: &Hypergraph) -> Result<CodegreeReport> {
    let (k, n) = (g.k(), g.n());
    let codegree = if n >= k - 1 { g.min_degree(k - 1)? } else { 0 };
    Ok(CodegreeReport {
        k,
        n,
        codegree,
        above_bound: k * codegree > n,
        spanning: tight_components(g).has_spanning_part(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodegreeBatch {
    pub k: usize,
    pub n: usize,
    pub seed: u64,
    pub p_num: u64,
    pub p_den: u64,
    pub tested: u64,
    pub above_bound: u64,
    pub counterexamples: Vec<Hypergraph>,
}

/// Probes `count` random k-graphs on `n` vertices, each k-set kept with
/// probability `p_num / p_den`.
pub fn codegree_batch(n: usize, k: usize, count: u64, seed: u64, p_num: u64, p_den: u64) -> Result<CodegreeBatch> {
    if k < 2 || n < k {
        return Err(Error::InvalidParameter(alloc::format!("need n >= k >= 2, got n = {n}, k = {k}")));
    }
    if p_den == 0 || p_num > p_den {
        return Err(Error::InvalidParameter(alloc::format!("probability {p_num}/{p_den} is not in [0, 1]")));
    }
    let mut sets: Vec<Vertex> = Vec::new();
    let mut c: Vec<usize> = (0..k).collect();
    loop {
        sets.extend(c.iter().map(|&v| v as Vertex));
        if !next_combination(&mut c, n) {
            break;
        }
    }
    let cut = (u128::from(p_num) << 64) / u128::from(p_den);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut batch = CodegreeBatch {
        k,
        n,
        seed,
        p_num,
        p_den,
        tested: 0,
        above_bound: 0,
        counterexamples: Vec::new(),
    };
    for _ in 0..count {
        let mut flat = Vec::new();
        for set in sets.chunks_exact(k) {
            if u128::from(rng.next_u64()) < cut {
                flat.extend_from_slice(set);
            }
        }
        let g = Hypergraph::from_flat(k, n, flat)?;
        let report = codegree_component_probe(&g)?;
        batch.tested += 1;
        if report.above_bound {
            batch.above_bound += 1;
        }
        if report.is_counterexample() {
            batch.counterexamples.push(g);
        }
    }
    Ok(batch)
}
