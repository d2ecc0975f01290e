use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use super::{Face, Surface2};
use crate::blowup::{is_spanning_in_blowup, BlowUp};
use crate::error::{Error, Result};

/// Two facet families over the edges of a tight 3-uniform base path.
///
/// Entry `i` of each family projects onto the base edge `{i, i+1, i+2}`.
/// Within a family the facets are pairwise vertex-disjoint, and the two
/// families disagree on every base edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubleCover {
    pub family_a: Vec<Face>,
    pub family_b: Vec<Face>,
}

impl DoubleCover {
    /// Re-checks every defining condition against `surface` and `host`.
    pub fn validate(&self, surface: &Surface2, host: &BlowUp) -> bool {
        let Ok(m) = path_edge_count(host) else { return false };
        if self.family_a.len() != m || self.family_b.len() != m {
            return false;
        }
        let over = |f: &Face, i: usize| {
            surface.contains_face(*f)
                && host.project(f).is_some_and(|img| img == [i as u32, i as u32 + 1, i as u32 + 2])
        };
        let disjoint_family = |fam: &[Face]| {
            let mut seen = BTreeSet::new();
            fam.iter().flatten().all(|&v| seen.insert(v))
        };
        (0..m).all(|i| {
            over(&self.family_a[i], i) && over(&self.family_b[i], i) && self.family_a[i] != self.family_b[i]
        }) && disjoint_family(&self.family_a)
            && disjoint_family(&self.family_b)
    }
}

/// Number of base edges if the host's base is the tight 3-uniform path
/// `0, 1, ..., l-1` (edges `{i, i+1, i+2}`).
pub fn path_edge_count(host: &BlowUp) -> Result<usize> {
    let base = host.base();
    if base.k() != 3 {
        return Err(Error::UnsupportedUniformity { expected: 3, found: base.k() });
    }
    let l = base.n();
    let is_path = l >= 3
        && base.edge_count() == l - 2
        && base.edges().enumerate().all(|(i, e)| e == [i as u32, i as u32 + 1, i as u32 + 2]);
    if !is_path {
        return Err(Error::Precondition("host base is not a tight 3-uniform path".into()));
    }
    Ok(l - 2)
}

fn disjoint(a: &Face, b: &Face) -> bool {
    a.iter().all(|v| !b.contains(v))
}

const NONE: usize = usize::MAX;

struct CoverSearch<'a> {
    faces: &'a [Face],
    over: Vec<Vec<usize>>,
    failed: BTreeSet<(usize, [usize; 4])>,
    pick_a: Vec<usize>,
    pick_b: Vec<usize>,
}

impl CoverSearch<'_> {
    fn compatible(&self, f: usize, prev: [usize; 2]) -> bool {
        prev.iter().all(|&p| p == NONE || disjoint(&self.faces[f], &self.faces[p]))
    }

    // Faces over base edges i and i+3 or further apart live in disjoint
    // clusters, so only the last two picks of each family constrain edge i.
    fn extend(&mut self, i: usize, state: [usize; 4]) -> bool {
        if i == self.over.len() {
            return true;
        }
        if self.failed.contains(&(i, state)) {
            return false;
        }
        let [a1, a2, b1, b2] = state;
        let candidates = self.over[i].clone();
        let for_a: Vec<usize> = candidates.iter().copied().filter(|&f| self.compatible(f, [a1, a2])).collect();
        let for_b: Vec<usize> = candidates.iter().copied().filter(|&f| self.compatible(f, [b1, b2])).collect();
        for &fa in &for_a {
            for &fb in for_b.iter().filter(|&&f| f != fa) {
                self.pick_a[i] = fa;
                self.pick_b[i] = fb;
                if self.extend(i + 1, [fa, a1, fb, b1]) {
                    return true;
                }
            }
        }
        self.failed.insert((i, state));
        false
    }
}

/// Searches for a double cover of `surface` inside the path blow-up `host`.
///
/// The search runs along the path and memoises failed states
/// (edge, last two picks of each family), so it is exact and polynomial in
/// the number of facets over each base edge.
pub fn check_doubly_edge_covering(surface: &Surface2, host: &BlowUp) -> Result<Option<DoubleCover>> {
    let m = path_edge_count(host)?;
    if !is_spanning_in_blowup(&surface.to_hypergraph(), host)? {
        return Err(Error::Precondition("surface does not span the host blow-up".into()));
    }
    let mut over = alloc::vec![Vec::new(); m];
    for (idx, f) in surface.faces().iter().enumerate() {
        let img = host.project(f).expect("spanning surface projects onto base edges");
        over[img[0] as usize].push(idx);
    }
    let mut search = CoverSearch {
        faces: surface.faces(),
        over,
        failed: BTreeSet::new(),
        pick_a: alloc::vec![NONE; m],
        pick_b: alloc::vec![NONE; m],
    };
    if !search.extend(0, [NONE; 4]) {
        return Ok(None);
    }
    let faces = surface.faces();
    Ok(Some(DoubleCover {
        family_a: search.pick_a.iter().map(|&i| faces[i]).collect(),
        family_b: search.pick_b.iter().map(|&i| faces[i]).collect(),
    }))
}
