//! Residues mod k of the orders of closed walks.
//!
//! States are ordered (k-1)-tuples of distinct vertices lying in a common
//! edge; `(v_1, ..., v_{k-1}) -> (v_2, ..., v_{k-1}, u)` whenever
//! `{v_1, ..., v_{k-1}, u}` is an edge. Closed walks of order m are exactly
//! closed walks of length m in this digraph. In a strongly connected part of
//! period d the closed-walk lengths are multiples of d and include every large
//! multiple, so the residues mod k are the multiples of gcd(d, k).

use alloc::collections::{BTreeMap, VecDeque};
use alloc::vec::Vec;

use num_integer::Integer;

use crate::hypergraph::{Hypergraph, Vertex};
use crate::{Error, Result};

/// Default cap on the number of walk states.
pub const DEFAULT_STATE_CAP: usize = 4_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WalkResidues {
    pub k: usize,
    /// Achieved residues, ascending.
    pub residues: Vec<usize>,
    /// For each achieved residue, a closed walk of that order mod k.
    pub witnesses: Vec<(usize, Vec<Vertex>)>,
}

impl WalkResidues {
    pub fn contains(&self, r: usize) -> bool {
        self.residues.contains(&(r % self.k))
    }

    pub fn witness(&self, r: usize) -> Option<&[Vertex]> {
        self.witnesses.iter().find(|(x, _)| *x == r % self.k).map(|(_, w)| &w[..])
    }
}

/// Whether every cyclic window of `k` consecutive vertices of `walk` is an edge.
pub fn is_closed_walk(g: &Hypergraph, walk: &[Vertex]) -> bool {
    let k = g.k();
    let m = walk.len();
    if m < k {
        return false;
    }
    let mut window = alloc::vec![0; k];
    (0..m).all(|i| {
        for (j, slot) in window.iter_mut().enumerate() {
            *slot = walk[(i + j) % m];
        }
        window.sort_unstable();
        g.contains_edge(&window)
    })
}

struct StateGraph {
    states: Vec<Vec<Vertex>>,
    succ: Vec<Vec<usize>>,
}

fn build_states(g: &Hypergraph, cap: usize) -> Result<StateGraph> {
    let k = g.k();
    let mut index: BTreeMap<Vec<Vertex>, usize> = BTreeMap::new();
    let mut states: Vec<Vec<Vertex>> = Vec::new();
    // completions of each sorted (k-1)-set
    let mut completions: BTreeMap<Vec<Vertex>, Vec<Vertex>> = BTreeMap::new();
    for e in g.edges() {
        for skip in 0..k {
            let ridge: Vec<Vertex> = e.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v).collect();
            completions.entry(ridge).or_default().push(e[skip]);
        }
    }
    for ridge in completions.keys() {
        let mut perm = ridge.clone();
        // all orderings, generated in lexicographic order
        loop {
            if !index.contains_key(&perm) {
                if states.len() == cap {
                    return Err(Error::ResourceLimit(alloc::format!(
                        "closed-walk state digraph exceeds {cap} states"
                    )));
                }
                index.insert(perm.clone(), states.len());
                states.push(perm.clone());
            }
            if !next_permutation(&mut perm) {
                break;
            }
        }
    }
    let succ = states
        .iter()
        .map(|s| {
            let mut sorted = s.clone();
            sorted.sort_unstable();
            let mut next_state = s[1..].to_vec();
            next_state.push(0);
            completions[&sorted]
                .iter()
                .map(|&u| {
                    *next_state.last_mut().expect("k >= 2") = u;
                    index[&next_state]
                })
                .collect()
        })
        .collect();
    Ok(StateGraph { states, succ })
}

fn next_permutation(p: &mut [Vertex]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let Some(i) = (0..p.len() - 1).rev().find(|&i| p[i] < p[i + 1]) else { return false };
    let j = (i + 1..p.len()).rev().find(|&j| p[j] > p[i]).expect("a larger element exists");
    p.swap(i, j);
    p[i + 1..].reverse();
    true
}

/// Strongly connected components, each listed by its states (Kosaraju, iterative).
fn strong_components(succ: &[Vec<usize>]) -> Vec<usize> {
    let n = succ.len();
    let mut order = Vec::with_capacity(n);
    let mut seen = alloc::vec![false; n];
    for root in 0..n {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut stack = alloc::vec![(root, 0usize)];
        while let Some((v, i)) = stack.last_mut() {
            if let Some(&w) = succ[*v].get(*i) {
                *i += 1;
                if !seen[w] {
                    seen[w] = true;
                    stack.push((w, 0));
                }
            } else {
                order.push(*v);
                stack.pop();
            }
        }
    }
    let mut pred = alloc::vec![Vec::new(); n];
    for (v, ws) in succ.iter().enumerate() {
        for &w in ws {
            pred[w].push(v);
        }
    }
    let mut comp = alloc::vec![usize::MAX; n];
    let mut count = 0;
    for &root in order.iter().rev() {
        if comp[root] != usize::MAX {
            continue;
        }
        comp[root] = count;
        let mut stack = alloc::vec![root];
        while let Some(v) = stack.pop() {
            for &w in &pred[v] {
                if comp[w] == usize::MAX {
                    comp[w] = count;
                    stack.push(w);
                }
            }
        }
        count += 1;
    }
    comp
}

/// All residues mod k of closed-walk orders, each with a witness walk.
///
/// Witnesses are shortest among closed walks through the smallest state of
/// the strongly connected part that realises the residue first.
pub fn closed_walk_residues(g: &Hypergraph, state_cap: usize) -> Result<WalkResidues> {
    if g.edge_count() == 0 {
        return Err(Error::DegenerateInput("closed walks need at least one edge"));
    }
    let k = g.k();
    let sg = build_states(g, state_cap)?;
    let comp = strong_components(&sg.succ);
    let parts = comp.iter().copied().max().map_or(0, |c| c + 1);
    let mut members = alloc::vec![Vec::new(); parts];
    for (s, &c) in comp.iter().enumerate() {
        members[c].push(s);
    }

    let mut witnesses: Vec<(usize, Vec<Vertex>)> = Vec::new();
    for states in &members {
        let c = comp[states[0]];
        let root = states[0];
        // period by BFS levels inside the part
        let mut level = BTreeMap::new();
        level.insert(root, 0usize);
        let mut queue = VecDeque::from([root]);
        let mut period = 0usize;
        while let Some(v) = queue.pop_front() {
            let lv = level[&v];
            for &w in sg.succ[v].iter().filter(|&&w| comp[w] == c) {
                match level.get(&w) {
                    Some(&lw) => period = period.gcd(&(lv + 1).abs_diff(lw)),
                    None => {
                        level.insert(w, lv + 1);
                        queue.push_back(w);
                    }
                }
            }
        }
        if period == 0 {
            continue; // a single state without a loop: no closed walk
        }
        let step = period.gcd(&k);
        let wanted: Vec<usize> =
            (0..k).step_by(step).filter(|r| !witnesses.iter().any(|(x, _)| x == r)).collect();
        if wanted.is_empty() {
            continue;
        }
        for (r, walk) in residue_witnesses(&sg, &comp, root, k, &wanted) {
            witnesses.push((r, walk));
        }
    }
    witnesses.sort();
    let residues = witnesses.iter().map(|(r, _)| *r).collect();
    Ok(WalkResidues { k, residues, witnesses })
}

/// Shortest closed walks through `root` of each wanted order mod k, found by
/// BFS on (state, length mod k).
fn residue_witnesses(
    sg: &StateGraph,
    comp: &[usize],
    root: usize,
    k: usize,
    wanted: &[usize],
) -> Vec<(usize, Vec<Vertex>)> {
    let c = comp[root];
    let mut parent: BTreeMap<(usize, usize), (usize, usize)> = BTreeMap::new();
    let mut queue = VecDeque::new();
    let mut found = Vec::new();
    // the start node is (root, 0) at length 0; closing back at (root, r) with
    // positive length is a closed walk
    queue.push_back((root, 0usize));
    let mut visited = BTreeMap::new();
    visited.insert((root, 0usize), ());
    let mut closing: BTreeMap<usize, (usize, usize)> = BTreeMap::new();
    while let Some((v, r)) = queue.pop_front() {
        for &w in sg.succ[v].iter().filter(|&&w| comp[w] == c) {
            let nr = (r + 1) % k;
            if w == root && wanted.contains(&nr) && !closing.contains_key(&nr) {
                closing.insert(nr, (v, r));
            }
            if visited.insert((w, nr), ()).is_none() {
                parent.insert((w, nr), (v, r));
                queue.push_back((w, nr));
            }
        }
        if closing.len() == wanted.len() {
            break;
        }
    }
    for &r in wanted {
        let Some(&last) = closing.get(&r) else { continue };
        // states along the walk, from root back to root
        let mut path = alloc::vec![root];
        let mut node = last;
        while node != (root, 0) {
            path.push(node.0);
            node = parent[&node];
        }
        path.push(root);
        path.reverse();
        // path = root, s_1, ..., s_{m-1}, root; each step appends one vertex
        let m = path.len() - 1;
        let mut walk: Vec<Vertex> = sg.states[root].clone();
        for &s in &path[1..] {
            walk.push(*sg.states[s].last().expect("states are non-empty"));
        }
        walk.truncate(m);
        found.push((r, walk));
    }
    found
}
