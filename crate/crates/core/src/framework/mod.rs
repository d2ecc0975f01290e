//! Hamilton-framework properties of a chosen subgraph `F ⊆ G`:
//! (F1) `F` is one tight component covering every vertex, (F2) `F` has a
//! perfect fractional matching, (F3) `F` has a closed walk of order 1 mod k,
//! (F4) consistency of the choices on `H - x` and `H - y`.

pub mod lp;
pub mod walks;

use alloc::vec::Vec;

pub use lp::{maximum_fractional_matching, perfect_fractional_matching, FractionalMatching, MatchingOptimum};
pub use walks::{closed_walk_residues, is_closed_walk, WalkResidues, DEFAULT_STATE_CAP};

use crate::components::tight_components;
use crate::error::param;
use crate::hypergraph::{Hypergraph, Vertex};
use crate::Result;

/// Whether a threshold value is established or only bounded from above.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ThresholdStatus {
    Known,
    UpperBound,
}

/// A minimum-degree threshold constant, stored as data.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Threshold {
    /// `hf` (Hamilton framework), `hs` (Hamilton sphere) or `ham` (tight Hamilton cycle).
    pub family: &'static str,
    /// Uniformity; `None` for "every k".
    pub k: Option<u32>,
    /// The degree type `d`, written relative to k when `k` is `None`.
    pub d: &'static str,
    pub numerator: u32,
    pub denominator: u32,
    pub status: ThresholdStatus,
}

pub const THRESHOLDS: &[Threshold] = &[
    Threshold { family: "hf", k: None, d: "k-1", numerator: 1, denominator: 2, status: ThresholdStatus::Known },
    Threshold { family: "hf", k: None, d: "k-2", numerator: 5, denominator: 9, status: ThresholdStatus::Known },
    Threshold { family: "hf", k: None, d: "k-3", numerator: 5, denominator: 8, status: ThresholdStatus::Known },
    Threshold { family: "hf", k: Some(3), d: "1", numerator: 5, denominator: 9, status: ThresholdStatus::Known },
    Threshold { family: "hs", k: Some(4), d: "1", numerator: 5, denominator: 8, status: ThresholdStatus::UpperBound },
    Threshold { family: "ham", k: Some(4), d: "1", numerator: 5, denominator: 8, status: ThresholdStatus::UpperBound },
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrameworkReport {
    /// The subgraph the report is about.
    pub framework: Hypergraph,
    /// Index of the default component in `tight_components(G)`, when `F` was not given.
    pub component_index: Option<usize>,
    pub f1: bool,
    pub f2: Option<FractionalMatching>,
    pub f3: bool,
    /// Closed walk of order 1 mod k, when `f3` holds.
    pub f3_witness: Option<Vec<Vertex>>,
    pub f4: Option<bool>,
    pub thresholds: &'static [Threshold],
}

impl FrameworkReport {
    pub fn f1_to_f3(&self) -> bool {
        self.f1 && self.f2.is_some() && self.f3
    }
}

/// Evaluates (F1)–(F3) on `f`, or on the default choice: the tight component
/// with the most vertices (then most edges, then smallest minimum vertex).
pub fn framework_report(g: &Hypergraph, f: Option<&Hypergraph>) -> Result<FrameworkReport> {
    let (framework, component_index) = match f {
        Some(f) => {
            if !f.is_subgraph_of(g) {
                return Err(param!("the framework is not a subgraph of the host"));
            }
            (f.clone(), None)
        }
        None => {
            let d = tight_components(g);
            match d.largest_part() {
                Some(p) => (g.restrict(&d.parts()[p]), Some(p)),
                None => (Hypergraph::empty(g.k(), g.n()), None),
            }
        }
    };
    let pieces = tight_components(&framework);
    let f1 = pieces.len() == 1 && pieces.has_spanning_part();
    let f2 = perfect_fractional_matching(&framework);
    let (f3, f3_witness) = if framework.edge_count() == 0 {
        (false, None)
    } else {
        let residues = closed_walk_residues(&framework, DEFAULT_STATE_CAP)?;
        let w = residues.witness(1).map(<[Vertex]>::to_vec);
        (w.is_some(), w)
    };
    Ok(FrameworkReport { framework, component_index, f1, f2, f3, f3_witness, f4: None, thresholds: THRESHOLDS })
}

/// Re-inserts the deleted vertex `x` into labels of `H - x`.
fn lift(g: &Hypergraph, x: Vertex) -> impl Iterator<Item = Vec<Vertex>> + '_ {
    g.edges().map(move |e| e.iter().map(|&v| if v >= x { v + 1 } else { v }).collect())
}

/// (F4) on one instance: the selections on `H - x` and `H - y`, mapped back
/// into `H`, form a single tight component. Empty selections count as
/// disconnected.
pub fn check_consistency<S>(h: &Hypergraph, x: Vertex, y: Vertex, mut selector: S) -> Result<bool>
where
    S: FnMut(&Hypergraph) -> Hypergraph,
{
    if x == y {
        return Err(param!("x and y must differ"));
    }
    let mut edges: Vec<Vec<Vertex>> = Vec::new();
    for v in [x, y] {
        let minus = h.without_vertex(v)?;
        let chosen = selector(&minus);
        if !chosen.is_subgraph_of(&minus) {
            return Err(param!("selector returned edges outside H - {v}"));
        }
        edges.extend(lift(&chosen, v));
    }
    edges.sort_unstable();
    edges.dedup();
    if edges.is_empty() {
        return Ok(false);
    }
    let union = Hypergraph::new(h.k(), h.n(), edges)?;
    Ok(tight_components(&union).len() == 1)
}

/// The selector used by default reports: the largest tight component.
pub fn largest_component(g: &Hypergraph) -> Hypergraph {
    let d = tight_components(g);
    match d.largest_part() {
        Some(p) => g.restrict(&d.parts()[p]),
        None => Hypergraph::empty(g.k(), g.n()),
    }
}
