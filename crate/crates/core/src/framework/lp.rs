//! Maximum fractional matching by an exact rational simplex.
//!
//! maximise `Σ w_e` subject to `Σ_{e ∋ v} w_e <= 1` for every vertex and
//! `w >= 0`. The slack basis is feasible, so no phase one is needed, and
//! Bland's rule guarantees termination.

use alloc::vec::Vec;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::hypergraph::Hypergraph;

/// Edge weights of a fractional matching, indexed like the graph's edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FractionalMatching {
    pub weights: Vec<BigRational>,
    pub size: BigRational,
}

impl FractionalMatching {
    /// Checks `0 <= w_e`, every vertex load `<= 1` and `size = Σ w_e`, exactly.
    pub fn is_valid_for(&self, g: &Hypergraph) -> bool {
        if self.weights.len() != g.edge_count() || self.weights.iter().any(|w| w.is_negative()) {
            return false;
        }
        let loads = vertex_loads(g, &self.weights);
        let total: BigRational = self.weights.iter().sum();
        loads.iter().all(|l| *l <= BigRational::one()) && total == self.size
    }

    /// Whether the size is exactly `n / k`.
    pub fn is_perfect_for(&self, g: &Hypergraph) -> bool {
        self.size == perfect_size(g)
    }
}

/// Sum of the weights of the edges through each vertex.
pub fn vertex_loads(g: &Hypergraph, weights: &[BigRational]) -> Vec<BigRational> {
    let mut loads = alloc::vec![BigRational::zero(); g.n()];
    for (e, w) in g.edges().zip(weights) {
        for &v in e {
            loads[v as usize] += w;
        }
    }
    loads
}

pub fn perfect_size(g: &Hypergraph) -> BigRational {
    BigRational::new((g.n() as i64).into(), (g.k() as i64).into())
}

/// An optimal matching together with an optimal fractional vertex cover.
///
/// By LP duality the two have equal size; the cover certifies optimality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatchingOptimum {
    pub matching: FractionalMatching,
    /// `y_v >= 0` with `Σ_{v ∈ e} y_v >= 1` for every edge.
    pub cover: Vec<BigRational>,
}

impl MatchingOptimum {
    pub fn cover_is_feasible(&self, g: &Hypergraph) -> bool {
        self.cover.len() == g.n()
            && self.cover.iter().all(|y| !y.is_negative())
            && g.edges().all(|e| e.iter().map(|&v| &self.cover[v as usize]).sum::<BigRational>() >= BigRational::one())
    }

    pub fn cover_size(&self) -> BigRational {
        self.cover.iter().sum()
    }
}

/// Solves the fractional matching LP exactly.
pub fn maximum_fractional_matching(g: &Hypergraph) -> MatchingOptimum {
    let (rows, m) = (g.n(), g.edge_count());
    let cols = m + rows;
    let zero = BigRational::zero();
    let one = BigRational::one();
    // constraint rows: [edge columns | slack columns], right-hand side 1
    let mut tableau: Vec<Vec<BigRational>> = alloc::vec![alloc::vec![zero.clone(); cols]; rows];
    for (j, e) in g.edges().enumerate() {
        for &v in e {
            tableau[v as usize][j] = one.clone();
        }
    }
    for (i, row) in tableau.iter_mut().enumerate() {
        row[m + i] = one.clone();
    }
    let mut rhs = alloc::vec![one.clone(); rows];
    // reduced costs of the objective row z - Σ w_e = 0
    let mut cost = alloc::vec![zero.clone(); cols];
    for c in cost.iter_mut().take(m) {
        *c = -one.clone();
    }
    let mut value = zero.clone();
    let mut basis: Vec<usize> = (m..cols).collect();

    while let Some(enter) = cost.iter().position(|c| c.is_negative()) {
        let mut leave: Option<(usize, BigRational)> = None;
        for i in 0..rows {
            let a = &tableau[i][enter];
            if !a.is_positive() {
                continue;
            }
            let ratio = &rhs[i] / a;
            let better = match &leave {
                None => true,
                Some((l, r)) => ratio < *r || (ratio == *r && basis[i] < basis[*l]),
            };
            if better {
                leave = Some((i, ratio));
            }
        }
        // every column has a positive entry (edges are non-empty), so the
        // problem is bounded
        let (pivot_row, _) = leave.expect("fractional matching LP is bounded");
        let pivot = tableau[pivot_row][enter].clone();
        for x in tableau[pivot_row].iter_mut() {
            if !x.is_zero() {
                *x /= &pivot;
            }
        }
        rhs[pivot_row] /= &pivot;
        let pivot_values = tableau[pivot_row].clone();
        let pivot_rhs = rhs[pivot_row].clone();
        let support: Vec<usize> = (0..cols).filter(|&j| !pivot_values[j].is_zero()).collect();
        for i in 0..rows {
            if i == pivot_row || tableau[i][enter].is_zero() {
                continue;
            }
            let factor = tableau[i][enter].clone();
            for &j in &support {
                let delta = &factor * &pivot_values[j];
                tableau[i][j] -= delta;
            }
            rhs[i] -= &factor * &pivot_rhs;
        }
        let factor = cost[enter].clone();
        for &j in &support {
            let delta = &factor * &pivot_values[j];
            cost[j] -= delta;
        }
        value -= &factor * &pivot_rhs;
        basis[pivot_row] = enter;
    }

    let mut weights = alloc::vec![zero; m];
    for (i, &b) in basis.iter().enumerate() {
        if b < m {
            weights[b] = rhs[i].clone();
        }
    }
    let cover = cost[m..].to_vec();
    MatchingOptimum { matching: FractionalMatching { weights, size: value }, cover }
}

/// A perfect fractional matching (size `n/k`), if one exists.
///
/// Regular graphs get the uniform weighting `1/d` directly; everything else
/// goes through the exact LP.
pub fn perfect_fractional_matching(g: &Hypergraph) -> Option<FractionalMatching> {
    if g.n() == 0 || g.edge_count() == 0 {
        return None;
    }
    let degrees = g.degrees();
    if degrees.iter().all(|&d| d == degrees[0]) {
        let w = BigRational::new(1.into(), (degrees[0] as i64).into());
        let weights = alloc::vec![w; g.edge_count()];
        let size = weights.iter().sum();
        return Some(FractionalMatching { weights, size });
    }
    let optimum = maximum_fractional_matching(g).matching;
    optimum.is_perfect_for(g).then_some(optimum)
}
