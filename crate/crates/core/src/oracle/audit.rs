//! Exhaustive and sampled audits of the minimum-degree condition for a
//! spanning tight component in 3-graphs on at most ten vertices.
//!
//! A 3-graph on `n <= 10` vertices is a `u128` bitmask over the `C(n, 3)`
//! triples in colex order. Degrees are popcounts against per-vertex masks and
//! components are flood fills against per-triple adjacency masks.

use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::combinatorics::binom;
use crate::components::tight_components;
use crate::hypergraph::{Hypergraph, Vertex};
use crate::{Error, Result};

/// Largest vertex count the bitmask audits support.
pub const MAX_AUDIT_N: usize = 10;

/// Default exhaustive budget: at most `2^35` edge subsets.
pub const DEFAULT_MAX_TRIPLES: usize = 35;

/// Samples per reproducible chunk; chunk `c` draws from ChaCha8 stream `c`.
pub const SAMPLE_CHUNK: u64 = 1 << 16;

/// Least integer `δ` with `δ >= C(n-1, 2) / 2 + 1`.
pub fn theorem_degree_bound(n: usize) -> usize {
    (binom(n.saturating_sub(1), 2) + 2).div_ceil(2)
}

/// Triples of `0..n` in colex order with the masks used by the audits.
#[derive(Clone, Debug)]
pub struct TripleIndex {
    n: usize,
    triples: Vec<[Vertex; 3]>,
    vertex_masks: Vec<u128>,
    /// Triples sharing two vertices with triple `i`.
    neighbours: Vec<u128>,
}

impl TripleIndex {
    pub fn new(n: usize) -> Result<Self> {
        if n > MAX_AUDIT_N {
            return Err(Error::ResourceLimit(alloc::format!(
                "bitmask audits support n <= {MAX_AUDIT_N}, got {n}"
            )));
        }
        let mut triples = Vec::new();
        for c in 0..n as Vertex {
            for b in 0..c {
                for a in 0..b {
                    triples.push([a, b, c]);
                }
            }
        }
        let mut vertex_masks = alloc::vec![0u128; n];
        for (i, t) in triples.iter().enumerate() {
            for &v in t {
                vertex_masks[v as usize] |= 1 << i;
            }
        }
        let neighbours = triples
            .iter()
            .map(|t| {
                triples
                    .iter()
                    .enumerate()
                    .filter(|(_, s)| s != &t && s.iter().filter(|v| t.contains(v)).count() == 2)
                    .fold(0u128, |m, (j, _)| m | 1 << j)
            })
            .collect();
        Ok(Self { n, triples, vertex_masks, neighbours })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    pub fn min_degree(&self, mask: u128) -> usize {
        self.vertex_masks.iter().map(|&m| (mask & m).count_ones() as usize).min().unwrap_or(0)
    }

    /// Whether some tight component of `mask` covers every vertex.
    pub fn has_spanning_component(&self, mask: u128) -> bool {
        if self.n == 0 {
            return false;
        }
        let mut rest = mask;
        while rest != 0 {
            let seed = rest & rest.wrapping_neg();
            let mut component = seed;
            let mut frontier = seed;
            while frontier != 0 {
                let mut next = 0u128;
                let mut f = frontier;
                while f != 0 {
                    let i = f.trailing_zeros() as usize;
                    f &= f - 1;
                    next |= self.neighbours[i];
                }
                frontier = next & mask & !component;
                component |= frontier;
            }
            if self.vertex_masks.iter().all(|&m| component & m != 0) {
                return true;
            }
            rest &= !component;
        }
        false
    }

    pub fn to_hypergraph(&self, mask: u128) -> Hypergraph {
        let mut flat = Vec::new();
        let mut m = mask;
        while m != 0 {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            flat.extend_from_slice(&self.triples[i]);
        }
        Hypergraph::from_flat(3, self.n, flat).expect("triples are valid edges")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AuditMode {
    Exhaustive,
    /// Each triple is kept independently with probability `p_num / p_den`.
    Sample { count: u64, seed: u64, p_num: u64, p_den: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuditResult {
    pub n: usize,
    pub mode: AuditMode,
    /// Graphs examined.
    pub tested: u64,
    /// Graphs meeting the degree bound.
    pub qualifying: u64,
    /// Qualifying graphs without a spanning component.
    pub counterexamples: Vec<Hypergraph>,
    /// Largest `δ₁` among examined graphs without a spanning component, with a witness.
    pub extremal: Option<(usize, Hypergraph)>,
    pub seed: Option<u64>,
}

impl AuditResult {
    fn empty(n: usize, mode: AuditMode) -> Self {
        let seed = match mode {
            AuditMode::Sample { seed, .. } => Some(seed),
            AuditMode::Exhaustive => None,
        };
        Self { n, mode, tested: 0, qualifying: 0, counterexamples: Vec::new(), extremal: None, seed }
    }

    /// Folds `other` (a later range or chunk of the same audit) into `self`.
    pub fn merge(&mut self, other: AuditResult) {
        self.tested += other.tested;
        self.qualifying += other.qualifying;
        self.counterexamples.extend(other.counterexamples);
        if let Some((d, w)) = other.extremal {
            if self.extremal.as_ref().is_none_or(|(best, _)| d > *best) {
                self.extremal = Some((d, w));
            }
        }
    }

    pub fn holds(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

struct Scan<'a> {
    index: &'a TripleIndex,
    bound: usize,
    result: AuditResult,
    best_mask: Option<(usize, u128)>,
}

impl Scan<'_> {
    fn visit(&mut self, mask: u128) -> Result<()> {
        self.result.tested += 1;
        let delta = self.index.min_degree(mask);
        let qualifies = delta >= self.bound;
        if qualifies {
            self.result.qualifying += 1;
        }
        let improves = self.best_mask.is_none_or(|(d, _)| delta > d);
        if !qualifies && !improves {
            return Ok(());
        }
        if self.index.has_spanning_component(mask) {
            return Ok(());
        }
        if improves {
            self.best_mask = Some((delta, mask));
        }
        if qualifies {
            let g = self.index.to_hypergraph(mask);
            // independent re-check before recording
            let confirmed = g.min_degree(1)? >= self.bound && !tight_components(&g).has_spanning_part();
            if !confirmed {
                return Err(Error::Internal("bitmask audit disagrees with the direct checkers".into()));
            }
            self.result.counterexamples.push(g);
        }
        Ok(())
    }

    fn finish(mut self) -> Result<AuditResult> {
        if let Some((d, mask)) = self.best_mask {
            let g = self.index.to_hypergraph(mask);
            if g.min_degree(1)? != d || tight_components(&g).has_spanning_part() {
                return Err(Error::Internal("extremal witness failed re-verification".into()));
            }
            self.result.extremal = Some((d, g));
        }
        Ok(self.result)
    }
}

/// Scans the edge-subset masks `start..end` (exclusive) of `n`-vertex 3-graphs.
pub fn exhaustive_range(index: &TripleIndex, start: u128, end: u128) -> Result<AuditResult> {
    let n = index.n();
    let mut scan = Scan {
        index,
        bound: theorem_degree_bound(n),
        result: AuditResult::empty(n, AuditMode::Exhaustive),
        best_mask: None,
    };
    let mut mask = start;
    while mask < end {
        scan.visit(mask)?;
        mask += 1;
    }
    scan.finish()
}

/// Number of masks an exhaustive audit on `n` vertices visits, checked against
/// the budget of `max_triples` triples.
pub fn exhaustive_size(n: usize, max_triples: usize) -> Result<u128> {
    let t = binom(n, 3);
    if t > max_triples || t > 127 {
        return Err(Error::ResourceLimit(alloc::format!(
            "exhaustive audit on n = {n} needs 2^{t} graphs, budget is 2^{max_triples}"
        )));
    }
    Ok(1u128 << t)
}

/// Default inclusion probability for sampling: average degree two above the bound.
pub fn default_sample_probability(n: usize) -> (u64, u64) {
    let den = binom(n.saturating_sub(1), 2).max(1) as u64;
    let num = (theorem_degree_bound(n) as u64 + 2).min(den);
    (num, den)
}

fn sample_mask(rng: &mut ChaCha8Rng, triples: usize, p_num: u64, p_den: u64) -> u128 {
    // keep a triple when a uniform 64-bit draw falls below p * 2^64
    let cut = ((u128::from(p_num) << 64) / u128::from(p_den)).min(u128::from(u64::MAX) + 1);
    let mut mask = 0u128;
    for i in 0..triples {
        if u128::from(rng.next_u64()) < cut {
            mask |= 1 << i;
        }
    }
    mask
}

/// Samples chunk `chunk` of a sampled audit: draws `SAMPLE_CHUNK` graphs
/// (fewer for the last chunk) from stream `chunk` of the seeded generator.
pub fn sample_chunk(index: &TripleIndex, mode: AuditMode, chunk: u64) -> Result<AuditResult> {
    let AuditMode::Sample { count, seed, p_num, p_den } = mode else {
        return Err(Error::Precondition("sample_chunk needs a sampling mode".into()));
    };
    if p_den == 0 || p_num > p_den {
        return Err(param_p(p_num, p_den));
    }
    let n = index.n();
    let mut scan = Scan {
        index,
        bound: theorem_degree_bound(n),
        result: AuditResult::empty(n, mode),
        best_mask: None,
    };
    let begin = chunk * SAMPLE_CHUNK;
    let len = count.saturating_sub(begin).min(SAMPLE_CHUNK);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(chunk);
    for _ in 0..len {
        scan.visit(sample_mask(&mut rng, index.len(), p_num, p_den))?;
    }
    scan.finish()
}

fn param_p(num: u64, den: u64) -> Error {
    Error::InvalidParameter(alloc::format!("probability {num}/{den} is not in [0, 1]"))
}

pub fn sample_chunk_count(count: u64) -> u64 {
    count.div_ceil(SAMPLE_CHUNK)
}

/// Checks that every 3-graph on `n` vertices with `δ₁ >= C(n-1,2)/2 + 1`
/// has a spanning tight component, over all graphs or a seeded sample.
///
/// Single-threaded; the command-line front end splits the same ranges and
/// chunks across threads and merges in order, producing identical results.
pub fn verify_spanning_component_theorem(n: usize, mode: AuditMode, max_triples: usize) -> Result<AuditResult> {
    let index = TripleIndex::new(n)?;
    match mode {
        AuditMode::Exhaustive => {
            let total = exhaustive_size(n, max_triples)?;
            exhaustive_range(&index, 0, total)
        }
        AuditMode::Sample { count, .. } => {
            let mut result = AuditResult::empty(n, mode);
            for chunk in 0..sample_chunk_count(count) {
                result.merge(sample_chunk(&index, mode, chunk)?);
            }
            Ok(result)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentThreshold {
    pub n: usize,
    /// One more than the largest `δ₁` of an `n`-vertex 3-graph with no spanning component.
    pub threshold: usize,
    /// A graph attaining that largest `δ₁` without a spanning component.
    pub witness: Hypergraph,
    pub tested: u64,
}

/// Exact minimum-degree threshold for a spanning tight component on `n` vertices.
pub fn exact_component_threshold(n: usize, max_triples: usize) -> Result<ComponentThreshold> {
    let result = verify_spanning_component_theorem(n, AuditMode::Exhaustive, max_triples)?;
    exact_threshold_from(&result)
}

/// Reads the threshold off a finished exhaustive audit.
pub fn exact_threshold_from(result: &AuditResult) -> Result<ComponentThreshold> {
    if result.mode != AuditMode::Exhaustive {
        return Err(Error::Precondition("threshold needs an exhaustive audit".into()));
    }
    let (delta, witness) = result
        .extremal
        .clone()
        .ok_or_else(|| Error::Internal("the edgeless graph always lacks a spanning component".into()))?;
    Ok(ComponentThreshold { n: result.n, threshold: delta + 1, witness, tested: result.tested })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_bound_values() {
        assert_eq!(theorem_degree_bound(5), 4);
        assert_eq!(theorem_degree_bound(6), 6);
        assert_eq!(theorem_degree_bound(7), 9);
        assert_eq!(theorem_degree_bound(9), 15);
    }

    #[test]
    fn masks_agree_with_direct_computation() {
        let index = TripleIndex::new(6).unwrap();
        assert_eq!(index.len(), 20);
        let mut state = 0x9e37_79b9_7f4a_7c15u64;
        for _ in 0..300 {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            let mask = u128::from(state) & ((1 << 20) - 1);
            let g = index.to_hypergraph(mask);
            assert_eq!(index.min_degree(mask), g.min_degree(1).unwrap());
            assert_eq!(index.has_spanning_component(mask), tight_components(&g).has_spanning_part());
        }
    }

    #[test]
    fn small_exhaustive_audits() {
        let r = verify_spanning_component_theorem(5, AuditMode::Exhaustive, DEFAULT_MAX_TRIPLES).unwrap();
        assert_eq!(r.tested, 1024);
        assert!(r.holds());
        let t = exact_component_threshold(4, DEFAULT_MAX_TRIPLES).unwrap();
        assert_eq!((t.threshold, t.tested), (1, 16));
        assert!(t.threshold <= theorem_degree_bound(4));
        assert!(exhaustive_size(7, 20).is_err());
    }

    #[test]
    fn sampling_is_reproducible() {
        let (p_num, p_den) = default_sample_probability(7);
        let mode = AuditMode::Sample { count: 1000, seed: 7, p_num, p_den };
        let a = verify_spanning_component_theorem(7, mode, 0).unwrap();
        let b = verify_spanning_component_theorem(7, mode, 0).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.tested, 1000);
        assert!(a.holds());
        assert!(a.qualifying > 0);
    }

    #[test]
    fn rejects_large_n() {
        assert!(TripleIndex::new(11).is_err());
    }
}
