//! Naive reference implementations used as independent oracles.

#![allow(dead_code)]

use std::collections::{BTreeSet, VecDeque};

use tightspan_core::Hypergraph;

pub fn edges(g: &Hypergraph) -> Vec<Vec<u32>> {
    g.edges().map(|e| e.to_vec()).collect()
}

/// Degree of every d-subset by direct scan; returns the minimum.
pub fn naive_min_degree(g: &Hypergraph, d: usize) -> usize {
    let es = edges(g);
    let n = g.n() as u32;
    let mut best = usize::MAX;
    subsets(n, d, &mut |s| {
        let c = es.iter().filter(|e| s.iter().all(|v| e.contains(v))).count();
        best = best.min(c);
    });
    best
}

pub fn subsets(n: u32, r: usize, f: &mut dyn FnMut(&[u32])) {
    fn go(start: u32, n: u32, r: usize, cur: &mut Vec<u32>, f: &mut dyn FnMut(&[u32])) {
        if cur.len() == r {
            f(cur);
            return;
        }
        for v in start..n {
            cur.push(v);
            go(v + 1, n, r, cur, f);
            cur.pop();
        }
    }
    go(0, n, r, &mut Vec::new(), f);
}

fn shared(a: &[u32], b: &[u32]) -> usize {
    a.iter().filter(|v| b.contains(v)).count()
}

/// Tight components by BFS over the explicit line graph; parts as sorted edge-index sets.
pub fn naive_components(g: &Hypergraph) -> BTreeSet<Vec<usize>> {
    let es = edges(g);
    let k = g.k();
    let m = es.len();
    let mut seen = vec![false; m];
    let mut parts = BTreeSet::new();
    for s in 0..m {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut part = vec![s];
        let mut queue = VecDeque::from([s]);
        while let Some(i) = queue.pop_front() {
            for j in 0..m {
                if !seen[j] && shared(&es[i], &es[j]) == k - 1 {
                    seen[j] = true;
                    part.push(j);
                    queue.push_back(j);
                }
            }
        }
        part.sort_unstable();
        parts.insert(part);
    }
    parts
}

pub fn naive_has_spanning(g: &Hypergraph) -> bool {
    naive_components(g).iter().any(|part| {
        let covered: BTreeSet<u32> = part.iter().flat_map(|&i| g.edge(i).to_vec()).collect();
        g.n() > 0 && covered.len() == g.n()
    })
}

/// Euler characteristic from scratch: vertices, distinct pairs, triangles.
pub fn naive_euler(faces: &[[u32; 3]]) -> i64 {
    let mut v = BTreeSet::new();
    let mut e = BTreeSet::new();
    for f in faces {
        v.extend(f.iter().copied());
        e.insert((f[0], f[1]));
        e.insert((f[0], f[2]));
        e.insert((f[1], f[2]));
    }
    v.len() as i64 - e.len() as i64 + faces.len() as i64
}
