//! Backtracking search for a spanning triangulated sphere inside a 3-graph.
//!
//! The complex is grown one face at a time from an open 1-simplex (a pair in
//! exactly one chosen face). Invariants kept along the way:
//! - every pair lies in at most two chosen faces;
//! - the link of every vertex is a disjoint union of paths until it closes
//!   into a single cycle, after which the vertex takes no further faces;
//! - at most `2n - 4` faces are used.
//!
//! A complex with no open pair is then a connected closed surface on which
//! `f <= 2v - 4`, hence `χ >= 2`, hence a sphere.

use alloc::vec::Vec;

use crate::components::tight_components;
use crate::hypergraph::{Hypergraph, Vertex};
use crate::topology::{Face, Surface2};
use crate::{Error, Result};

/// Why no spanning sphere exists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AbsenceReason {
    /// Fewer than four vertices.
    TooFewVertices,
    /// Some vertex lies in fewer than three edges.
    LowDegree { vertex: Vertex, degree: usize },
    /// No tight component covers every vertex; a sphere's faces are tightly connected.
    NoSpanningComponent,
    /// A spanning sphere needs `2n - 4` faces but the spanning components have fewer.
    TooFewEdges { available: usize, required: usize },
    /// `independent` vertices pairwise share no candidate face, so a sphere
    /// would need at least `3 * independent` faces, more than `2n - 4`.
    CoverBound { independent: usize, required: usize, allowed: usize },
    /// The backtracking search finished without finding a sphere.
    Exhausted { nodes: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(Surface2),
    ProvenAbsent(AbsenceReason),
    /// Indeterminate: the node budget ran out first.
    BudgetExhausted { nodes: u64 },
}

impl SearchOutcome {
    pub fn found(&self) -> Option<&Surface2> {
        match self {
            SearchOutcome::Found(s) => Some(s),
            _ => None,
        }
    }

    pub fn is_proven_absent(&self) -> bool {
        matches!(self, SearchOutcome::ProvenAbsent(_))
    }
}

/// Searches `h` for a spanning sphere, expanding at most `budget` search nodes.
pub fn search_spanning_sphere(h: &Hypergraph, budget: u64) -> Result<SearchOutcome> {
    if h.k() != 3 {
        return Err(Error::UnsupportedUniformity { expected: 3, found: h.k() });
    }
    let n = h.n();
    if n < 4 {
        return Ok(SearchOutcome::ProvenAbsent(AbsenceReason::TooFewVertices));
    }
    let required = 2 * n - 4;
    if h.edge_count() < required {
        return Ok(SearchOutcome::ProvenAbsent(AbsenceReason::TooFewEdges {
            available: h.edge_count(),
            required,
        }));
    }
    let degrees = h.degrees();
    if let Some(v) = (0..n).find(|&v| degrees[v] < 3) {
        return Ok(SearchOutcome::ProvenAbsent(AbsenceReason::LowDegree {
            vertex: v as Vertex,
            degree: degrees[v],
        }));
    }
    let decomposition = tight_components(h);
    let spanning: Vec<usize> =
        (0..decomposition.len()).filter(|&p| decomposition.is_spanning(p)).collect();
    if spanning.is_empty() {
        return Ok(SearchOutcome::ProvenAbsent(AbsenceReason::NoSpanningComponent));
    }

    // Pre-checks first, so that cheap proofs of absence never touch the budget.
    let mut live = Vec::new();
    let mut first_reason = None;
    for &p in &spanning {
        let part = h.restrict(&decomposition.parts()[p]);
        let reason = if part.edge_count() < required {
            Some(AbsenceReason::TooFewEdges { available: part.edge_count(), required })
        } else {
            let independent = greedy_independent(&part);
            (3 * independent > required).then_some(AbsenceReason::CoverBound {
                independent,
                required: 3 * independent,
                allowed: required,
            })
        };
        match reason {
            Some(r) => {
                first_reason.get_or_insert(r);
            }
            None => live.push(part),
        }
    }
    if live.is_empty() {
        return Ok(SearchOutcome::ProvenAbsent(first_reason.expect("one reason per component")));
    }

    let mut nodes = 0u64;
    for part in &live {
        let mut search = Search::new(part, budget - nodes.min(budget));
        let found = search.run();
        nodes += search.nodes;
        match found {
            Step::Found => return Ok(SearchOutcome::Found(search.surface())),
            Step::OutOfBudget => return Ok(SearchOutcome::BudgetExhausted { nodes }),
            Step::Dead => {}
        }
    }
    Ok(SearchOutcome::ProvenAbsent(AbsenceReason::Exhausted { nodes }))
}

/// Greedy set of vertices no two of which lie in a common edge, smallest
/// 2-shadow degree first.
fn greedy_independent(g: &Hypergraph) -> usize {
    let n = g.n();
    let mut adjacent = alloc::vec![false; n * n];
    for e in g.edges() {
        for &a in e {
            for &b in e {
                adjacent[a as usize * n + b as usize] = a != b;
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    let shadow = |v: usize| adjacent[v * n..(v + 1) * n].iter().filter(|&&x| x).count();
    order.sort_by_key(|&v| (shadow(v), v));
    let mut chosen: Vec<usize> = Vec::new();
    for v in order {
        if chosen.iter().all(|&u| !adjacent[u * n + v]) {
            chosen.push(v);
        }
    }
    chosen.len()
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Step {
    Found,
    Dead,
    OutOfBudget,
}

const NO_PARTNER: Vertex = Vertex::MAX;

struct Search<'a> {
    g: &'a Hypergraph,
    n: usize,
    budget: u64,
    nodes: u64,
    /// `thirds[a * n + b]`: vertices `c` with `abc` an edge, with that edge's index.
    thirds: Vec<Vec<(Vertex, usize)>>,
    used: Vec<bool>,
    /// Number of chosen faces through each pair.
    count: Vec<u8>,
    /// `partner[v * n + a]`: the other end of the link path of `v` ending at `a`.
    partner: Vec<Vertex>,
    paths: Vec<u32>,
    closed: Vec<bool>,
    touched: Vec<u32>,
    untouched: usize,
    open: usize,
    chosen: Vec<usize>,
    trail: Vec<(usize, Vertex)>,
    target: usize,
}

enum LinkChange {
    NewPath,
    Extend { end: Vertex, other: Vertex },
    Merge { pa: Vertex, pb: Vertex },
    Close,
}

impl<'a> Search<'a> {
    fn new(g: &'a Hypergraph, budget: u64) -> Self {
        let n = g.n();
        let mut thirds = alloc::vec![Vec::new(); n * n];
        for (i, e) in g.edges().enumerate() {
            let (a, b, c) = (e[0] as usize, e[1] as usize, e[2] as usize);
            for (x, y, z) in [(a, b, c), (a, c, b), (b, c, a)] {
                thirds[x * n + y].push((z as Vertex, i));
                thirds[y * n + x].push((z as Vertex, i));
            }
        }
        Search {
            g,
            n,
            budget,
            nodes: 0,
            thirds,
            used: alloc::vec![false; g.edge_count()],
            count: alloc::vec![0; n * n],
            partner: alloc::vec![NO_PARTNER; n * n],
            paths: alloc::vec![0; n],
            closed: alloc::vec![false; n],
            touched: alloc::vec![0; n],
            untouched: n,
            open: 0,
            chosen: Vec::new(),
            trail: Vec::new(),
            target: 2 * n - 4,
        }
    }

    fn surface(&self) -> Surface2 {
        let faces = self.chosen.iter().map(|&i| {
            let e = self.g.edge(i);
            [e[0], e[1], e[2]] as Face
        });
        Surface2::new(self.n, faces).expect("chosen faces are edges")
    }

    fn run(&mut self) -> Step {
        // Every vertex is in the sphere, so branch on the faces through the
        // vertex of smallest degree.
        let degrees = self.g.degrees();
        let v0 = (0..self.n).min_by_key(|&v| (degrees[v], v)).expect("n >= 4");
        let starts: Vec<usize> = self
            .g
            .edges()
            .enumerate()
            .filter(|(_, e)| e.contains(&(v0 as Vertex)))
            .map(|(i, _)| i)
            .collect();
        for i in starts {
            let e = self.g.edge(i);
            let face = [e[0], e[1], e[2]];
            let mark = self.trail.len();
            self.place(i, face);
            let step = self.extend();
            if step != Step::Dead {
                return step;
            }
            self.remove(face, mark);
            // Every sphere through v0 contains this face or avoids it.
            self.used[i] = true;
        }
        Step::Dead
    }

    fn link_change(&self, v: Vertex, a: Vertex, b: Vertex) -> Option<LinkChange> {
        let n = self.n;
        let (v, a, b) = (v as usize, a as usize, b as usize);
        let (da, db) = (self.count[v * n + a], self.count[v * n + b]);
        Some(match (da, db) {
            (0, 0) => LinkChange::NewPath,
            (1, 0) => LinkChange::Extend { end: a as Vertex, other: b as Vertex },
            (0, 1) => LinkChange::Extend { end: b as Vertex, other: a as Vertex },
            (1, 1) => {
                if self.partner[v * n + a] == b as Vertex {
                    if self.paths[v] != 1 {
                        return None;
                    }
                    LinkChange::Close
                } else {
                    LinkChange::Merge {
                        pa: self.partner[v * n + a],
                        pb: self.partner[v * n + b],
                    }
                }
            }
            _ => return None,
        })
    }

    fn legal(&self, idx: usize, f: Face) -> bool {
        if self.used[idx] || f.iter().any(|&v| self.closed[v as usize]) {
            return false;
        }
        let [a, b, c] = f;
        self.link_change(a, b, c).is_some()
            && self.link_change(b, a, c).is_some()
            && self.link_change(c, a, b).is_some()
    }

    fn set_partner(&mut self, v: usize, a: Vertex, value: Vertex) {
        let slot = v * self.n + a as usize;
        self.trail.push((slot, self.partner[slot]));
        self.partner[slot] = value;
    }

    fn place(&mut self, idx: usize, f: Face) {
        let n = self.n;
        let [a, b, c] = f;
        for (v, x, y) in [(a, b, c), (b, a, c), (c, a, b)] {
            let vi = v as usize;
            match self.link_change(v, x, y).expect("placement is legal") {
                LinkChange::NewPath => {
                    self.set_partner(vi, x, y);
                    self.set_partner(vi, y, x);
                    self.paths[vi] += 1;
                }
                LinkChange::Extend { end, other } => {
                    let far = self.partner[vi * n + end as usize];
                    self.set_partner(vi, far, other);
                    self.set_partner(vi, other, far);
                }
                LinkChange::Merge { pa, pb } => {
                    self.set_partner(vi, pa, pb);
                    self.set_partner(vi, pb, pa);
                    self.paths[vi] -= 1;
                }
                LinkChange::Close => {
                    self.closed[vi] = true;
                    self.paths[vi] -= 1;
                }
            }
            if self.touched[vi] == 0 {
                self.untouched -= 1;
            }
            self.touched[vi] += 1;
        }
        for (x, y) in [(a, b), (a, c), (b, c)] {
            let (x, y) = (x as usize, y as usize);
            self.count[x * n + y] += 1;
            self.count[y * n + x] += 1;
            if self.count[x * n + y] == 1 {
                self.open += 1;
            } else {
                self.open -= 1;
            }
        }
        self.used[idx] = true;
        self.chosen.push(idx);
    }

    fn remove(&mut self, f: Face, mark: usize) {
        let n = self.n;
        let idx = self.chosen.pop().expect("a placed face");
        self.used[idx] = false;
        let [a, b, c] = f;
        for (x, y) in [(a, b), (a, c), (b, c)] {
            let (x, y) = (x as usize, y as usize);
            if self.count[x * n + y] == 1 {
                self.open -= 1;
            } else {
                self.open += 1;
            }
            self.count[x * n + y] -= 1;
            self.count[y * n + x] -= 1;
        }
        // Recompute path counts from the link pair counts being restored:
        // undo in the reverse order of `place`.
        for (v, x, y) in [(c, a, b), (b, a, c), (a, b, c)] {
            let vi = v as usize;
            self.touched[vi] -= 1;
            if self.touched[vi] == 0 {
                self.untouched += 1;
            }
            let (dx, dy) = (self.count[vi * n + x as usize], self.count[vi * n + y as usize]);
            if self.closed[vi] {
                self.closed[vi] = false;
                self.paths[vi] += 1;
            } else {
                match (dx, dy) {
                    (0, 0) => self.paths[vi] -= 1,
                    (1, 1) => self.paths[vi] += 1,
                    _ => {}
                }
            }
        }
        while self.trail.len() > mark {
            let (slot, old) = self.trail.pop().expect("non-empty trail");
            self.partner[slot] = old;
        }
    }

    fn faces_needed(&self) -> usize {
        self.open.div_ceil(3).max(self.untouched)
    }

    fn extend(&mut self) -> Step {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Step::OutOfBudget;
        }
        if self.open == 0 {
            return if self.untouched == 0 { Step::Found } else { Step::Dead };
        }
        if self.chosen.len() + self.faces_needed() > self.target {
            return Step::Dead;
        }
        // Branch on the open pair with the fewest legal completions.
        let n = self.n;
        let mut best: Option<(usize, Vec<(usize, Face)>)> = None;
        'pairs: for x in 0..n {
            for y in x + 1..n {
                if self.count[x * n + y] != 1 {
                    continue;
                }
                let options: Vec<(usize, Face)> = self.thirds[x * n + y]
                    .iter()
                    .map(|&(z, idx)| {
                        let mut f = [x as Vertex, y as Vertex, z];
                        f.sort_unstable();
                        (idx, f)
                    })
                    .filter(|&(idx, f)| self.legal(idx, f))
                    .collect();
                if best.as_ref().is_none_or(|(len, _)| options.len() < *len) {
                    let stop = options.len() <= 1;
                    best = Some((options.len(), options));
                    if stop {
                        break 'pairs;
                    }
                }
            }
        }
        let (_, options) = best.expect("an open pair exists");
        for (idx, f) in options {
            let mark = self.trail.len();
            self.place(idx, f);
            let step = self.extend();
            if step != Step::Dead {
                return step;
            }
            self.remove(f, mark);
        }
        Step::Dead
    }
}
