//! Pure 2-dimensional simplicial complexes.
//!
//! In dimension two a pure complex is a closed surface exactly when every edge
//! lies in two triangles, every vertex link is a single cycle and the triangles
//! are connected through shared edges. Classification then only needs the
//! Euler characteristic and orientability.

mod cover;

use alloc::collections::{BTreeSet, VecDeque};
use alloc::vec::Vec;
use core::fmt;

use crate::combinatorics::for_each_subset;
use crate::error::{param, Error, Result};
use crate::hypergraph::{Hypergraph, Vertex};
use crate::union_find::UnionFind;

pub use cover::{check_doubly_edge_covering, path_edge_count, DoubleCover};

pub type Face = [Vertex; 3];

/// A finite set of triangles on the vertex labels `0..n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Surface2 {
    n: usize,
    faces: Vec<Face>,
}

/// Why a complex is not a closed surface.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SurfaceDefect {
    /// An edge lies in a number of triangles other than two.
    EdgeDegree { edge: [Vertex; 2], faces: usize },
    /// The link of a vertex is not one cycle.
    VertexLink { vertex: Vertex },
    /// The triangles split into several edge-connected pieces.
    Disconnected,
}

impl fmt::Display for SurfaceDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SurfaceDefect::EdgeDegree { edge, faces } => {
                write!(f, "edge {}-{} lies in {faces} triangles", edge[0], edge[1])
            }
            SurfaceDefect::VertexLink { vertex } => {
                write!(f, "link of vertex {vertex} is not a single cycle")
            }
            SurfaceDefect::Disconnected => f.write_str("triangles are not edge-connected"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SurfaceKind {
    Sphere,
    Orientable,
    NonOrientable,
    NotAClosedSurface,
}

impl SurfaceKind {
    pub fn as_str(self) -> &'static str {
        match self {
            SurfaceKind::Sphere => "sphere",
            SurfaceKind::Orientable => "orientable",
            SurfaceKind::NonOrientable => "nonOrientable",
            SurfaceKind::NotAClosedSurface => "notAClosedSurface",
        }
    }
}

impl fmt::Display for SurfaceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Outcome of classification: kind, genus (crosscaps when non-orientable) and χ.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SurfaceClass {
    pub kind: SurfaceKind,
    pub genus: u32,
    pub euler: i64,
}

impl SurfaceClass {
    pub fn sphere() -> Self {
        Self { kind: SurfaceKind::Sphere, genus: 0, euler: 2 }
    }

    /// Orientable surface of genus `g`; genus 0 is the sphere.
    pub fn orientable(genus: u32) -> Self {
        if genus == 0 {
            return Self::sphere();
        }
        Self { kind: SurfaceKind::Orientable, genus, euler: 2 - 2 * i64::from(genus) }
    }

    /// Non-orientable surface with `crosscaps >= 1` crosscaps.
    pub fn non_orientable(crosscaps: u32) -> Self {
        Self { kind: SurfaceKind::NonOrientable, genus: crosscaps, euler: 2 - i64::from(crosscaps) }
    }

    pub fn is_closed_surface(&self) -> bool {
        self.kind != SurfaceKind::NotAClosedSurface
    }

    pub fn is_orientable(&self) -> bool {
        matches!(self.kind, SurfaceKind::Sphere | SurfaceKind::Orientable)
    }
}

impl fmt::Display for SurfaceClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "kind={} genus={} chi={}", self.kind, self.genus, self.euler)
    }
}

fn sort3(mut f: Face) -> Face {
    f.sort_unstable();
    f
}

impl Surface2 {
    pub fn new<I: IntoIterator<Item = Face>>(n: usize, faces: I) -> Result<Self> {
        let mut faces: Vec<Face> = faces.into_iter().map(sort3).collect();
        for f in &faces {
            if f[0] == f[1] || f[1] == f[2] {
                return Err(Error::InvalidHypergraph(alloc::format!("triangle {f:?} repeats a vertex")));
            }
            if f[2] as usize >= n {
                return Err(Error::InvalidHypergraph(alloc::format!(
                    "triangle {f:?} has a vertex outside 0..{n}"
                )));
            }
        }
        faces.sort_unstable();
        if let Some(w) = faces.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidHypergraph(alloc::format!("triangle {:?} appears twice", w[0])));
        }
        Ok(Self { n, faces })
    }

    pub fn from_hypergraph(h: &Hypergraph) -> Result<Self> {
        if h.k() != 3 {
            return Err(Error::UnsupportedUniformity { expected: 3, found: h.k() });
        }
        Ok(Self { n: h.n(), faces: h.edges().map(|e| [e[0], e[1], e[2]]).collect() })
    }

    pub fn to_hypergraph(&self) -> Hypergraph {
        Hypergraph::from_flat(3, self.n, self.faces.iter().flatten().copied().collect())
            .expect("faces are validated")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn contains_face(&self, face: Face) -> bool {
        self.faces.binary_search(&sort3(face)).is_ok()
    }

    /// Vertices lying in at least one triangle, ascending.
    pub fn used_vertices(&self) -> Vec<Vertex> {
        let mut seen = alloc::vec![false; self.n];
        for f in &self.faces {
            for &v in f {
                seen[v as usize] = true;
            }
        }
        (0..self.n as Vertex).filter(|&v| seen[v as usize]).collect()
    }

    /// Distinct 1-simplices, ascending.
    pub fn edges(&self) -> Vec<[Vertex; 2]> {
        let mut edges: Vec<[Vertex; 2]> = self.edge_incidences().into_iter().map(|(e, _)| e).collect();
        edges.dedup();
        edges
    }

    /// (edge, face index) for every edge of every face, sorted by edge.
    fn edge_incidences(&self) -> Vec<([Vertex; 2], usize)> {
        let mut out = Vec::with_capacity(3 * self.faces.len());
        for (i, f) in self.faces.iter().enumerate() {
            out.push(([f[0], f[1]], i));
            out.push(([f[0], f[2]], i));
            out.push(([f[1], f[2]], i));
        }
        out.sort_unstable();
        out
    }

    /// `(v, e, f)`: used vertices, distinct edges, triangles.
    pub fn counts(&self) -> (usize, usize, usize) {
        (self.used_vertices().len(), self.edges().len(), self.faces.len())
    }

    /// `v - e + f` over the simplices actually present.
    pub fn euler_characteristic(&self) -> i64 {
        let (v, e, f) = self.counts();
        v as i64 - e as i64 + f as i64
    }

    /// Certifies a closed connected 2-manifold, or names the first defect found.
    pub fn check_closed_surface(&self) -> Result<core::result::Result<(), SurfaceDefect>> {
        if self.faces.is_empty() {
            return Err(Error::DegenerateInput("complex has no triangles"));
        }
        let inc = self.edge_incidences();
        let mut uf = UnionFind::new(self.faces.len());
        let mut i = 0;
        while i < inc.len() {
            let mut j = i;
            while j < inc.len() && inc[j].0 == inc[i].0 {
                j += 1;
            }
            if j - i != 2 {
                return Ok(Err(SurfaceDefect::EdgeDegree { edge: inc[i].0, faces: j - i }));
            }
            uf.union(inc[i].1, inc[i + 1].1);
            i = j;
        }

        // every link vertex now has degree two, so the link is a disjoint
        // union of cycles; it must be exactly one
        let mut at: Vec<Vec<usize>> = alloc::vec![Vec::new(); self.n];
        for (i, f) in self.faces.iter().enumerate() {
            for &v in f {
                at[v as usize].push(i);
            }
        }
        for (v, around) in at.iter().enumerate() {
            if around.is_empty() {
                continue;
            }
            if link_cycle_length(&self.faces, v as Vertex, around) != around.len() {
                return Ok(Err(SurfaceDefect::VertexLink { vertex: v as Vertex }));
            }
        }

        if (1..self.faces.len()).any(|i| !uf.same(0, i)) {
            return Ok(Err(SurfaceDefect::Disconnected));
        }
        Ok(Ok(()))
    }

    /// Whether the triangles admit a coherent orientation (across shared edges
    /// adjacent triangles induce opposite directions). Meaningful for closed surfaces.
    pub fn is_orientable(&self) -> bool {
        let inc = self.edge_incidences();
        let mut adj: Vec<Vec<(usize, i8)>> = alloc::vec![Vec::new(); self.faces.len()];
        let mut i = 0;
        while i < inc.len() {
            let mut j = i;
            while j < inc.len() && inc[j].0 == inc[i].0 {
                j += 1;
            }
            for a in i..j {
                for b in a + 1..j {
                    let (fa, fb) = (inc[a].1, inc[b].1);
                    let rel = -direction(&self.faces[fa], inc[a].0) * direction(&self.faces[fb], inc[b].0);
                    adj[fa].push((fb, rel));
                    adj[fb].push((fa, rel));
                }
            }
            i = j;
        }
        let mut sign = alloc::vec![0i8; self.faces.len()];
        let mut queue = VecDeque::new();
        for start in 0..self.faces.len() {
            if sign[start] != 0 {
                continue;
            }
            sign[start] = 1;
            queue.push_back(start);
            while let Some(f) = queue.pop_front() {
                for &(g, rel) in &adj[f] {
                    let want = sign[f] * rel;
                    if sign[g] == 0 {
                        sign[g] = want;
                        queue.push_back(g);
                    } else if sign[g] != want {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Topological type of the complex.
    pub fn classify(&self) -> SurfaceClass {
        let euler = self.euler_characteristic();
        let closed = matches!(self.check_closed_surface(), Ok(Ok(())));
        if !closed {
            return SurfaceClass { kind: SurfaceKind::NotAClosedSurface, genus: 0, euler };
        }
        if self.is_orientable() {
            let genus = ((2 - euler) / 2) as u32;
            let kind = if genus == 0 { SurfaceKind::Sphere } else { SurfaceKind::Orientable };
            SurfaceClass { kind, genus, euler }
        } else {
            SurfaceClass { kind: SurfaceKind::NonOrientable, genus: (2 - euler) as u32, euler }
        }
    }

    /// Image under the vertex map `perm` (length `n`), on `new_n` vertices.
    pub fn map_vertices(&self, perm: &[Vertex], new_n: usize) -> Result<Surface2> {
        if perm.len() < self.n {
            return Err(param!("vertex map has {} entries for {} vertices", perm.len(), self.n));
        }
        Surface2::new(new_n, self.faces.iter().map(|f| f.map(|v| perm[v as usize])))
    }

    /// Relabels so that `from[i]` becomes `to[i]` and every other used vertex
    /// becomes `fresh, fresh + 1, ...` in increasing order.
    pub fn align_face(&self, from: Face, to: Face, fresh: Vertex) -> Result<Surface2> {
        if !self.contains_face(from) {
            return Err(param!("{from:?} is not a face"));
        }
        let mut map = alloc::vec![Vertex::MAX; self.n];
        for i in 0..3 {
            map[from[i] as usize] = to[i];
        }
        let mut next = fresh;
        for v in self.used_vertices() {
            if map[v as usize] == Vertex::MAX {
                map[v as usize] = next;
                next += 1;
            }
        }
        let top = to.iter().copied().max().unwrap_or(0).max(next.saturating_sub(1));
        self.map_vertices(&map, top as usize + 1)
    }
}

/// Length of the link cycle of `v` that contains its first link edge.
fn link_cycle_length(faces: &[Face], v: Vertex, around: &[usize]) -> usize {
    let others = |f: &Face| -> [Vertex; 2] {
        let mut o = [0; 2];
        let mut j = 0;
        for &u in f {
            if u != v {
                o[j] = u;
                j += 1;
            }
        }
        o
    };
    let first = others(&faces[around[0]]);
    let (start, mut cur) = (first[0], first[1]);
    let mut prev_face = around[0];
    let mut len = 1;
    while cur != start {
        let next = around
            .iter()
            .copied()
            .find(|&fi| fi != prev_face && faces[fi].contains(&cur));
        let Some(fi) = next else { return usize::MAX };
        let o = others(&faces[fi]);
        cur = if o[0] == cur { o[1] } else { o[0] };
        prev_face = fi;
        len += 1;
        if len > around.len() {
            return usize::MAX;
        }
    }
    len
}

/// +1 if the positive orientation of sorted face `f` runs along `edge` ascending.
fn direction(f: &Face, edge: [Vertex; 2]) -> i8 {
    if edge == [f[0], f[2]] {
        -1
    } else {
        1
    }
}

/// `S # T`: the union of two closed surfaces meeting exactly in the triangle
/// `face` (and its faces), with that triangle removed.
pub fn connected_sum(s: &Surface2, t: &Surface2, face: Face) -> Result<Surface2> {
    let face = sort3(face);
    for (name, x) in [("first", s), ("second", t)] {
        if !x.contains_face(face) {
            return Err(Error::GluePrecondition(alloc::format!("{face:?} is not a face of the {name} surface")));
        }
        if !matches!(x.check_closed_surface(), Ok(Ok(()))) {
            return Err(Error::GluePrecondition(alloc::format!("the {name} complex is not a closed surface")));
        }
    }
    let sv: BTreeSet<Vertex> = s.used_vertices().into_iter().collect();
    let shared: Vec<Vertex> = t.used_vertices().into_iter().filter(|v| sv.contains(v)).collect();
    if shared != face {
        return Err(Error::GluePrecondition(alloc::format!(
            "surfaces share vertices {shared:?}, expected exactly {face:?}"
        )));
    }
    let n = s.n.max(t.n);
    Surface2::new(
        n,
        s.faces.iter().chain(&t.faces).copied().filter(|&f| f != face),
    )
}

/// True iff a 3-graph with parts `X`, `Y` (edges of type XXX, XYY, YYY) cannot
/// contain a spanning genus-`g` surface by the Euler count: `x > 2y - 4 + 4g`.
pub fn euler_obstruction(x: u64, y: u64, genus: u64) -> bool {
    (x as i128) > 2 * y as i128 - 4 + 4 * genus as i128
}

/// Necessary conditions for a pure k-uniform complex to be a (k-1)-sphere.
///
/// Exact recognition is only available for k = 3 via [`Surface2::classify`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PseudomanifoldReport {
    /// Every (k-1)-subset of a facet lies in exactly two facets.
    pub ridges_in_two_facets: bool,
    /// Facets are connected through shared ridges.
    pub strongly_connected: bool,
    /// Alternating count of all faces of the induced complex.
    pub euler: i64,
    /// χ of the (k-1)-sphere: `1 + (-1)^(k-1)`.
    pub sphere_euler: i64,
}

impl PseudomanifoldReport {
    pub fn passes_sphere_conditions(&self) -> bool {
        self.ridges_in_two_facets && self.strongly_connected && self.euler == self.sphere_euler
    }
}

pub fn pseudomanifold_check(h: &Hypergraph) -> PseudomanifoldReport {
    let k = h.k();
    let decomposition = crate::components::tight_components(h);
    let mut euler = 0i64;
    let mut ridges_ok = true;
    for j in 1..=k {
        let mut faces: BTreeSet<Vec<Vertex>> = BTreeSet::new();
        let mut ridge_count: alloc::collections::BTreeMap<Vec<Vertex>, usize> = Default::default();
        for e in h.edges() {
            for_each_subset(e, j, |s| {
                faces.insert(s.to_vec());
                if j + 1 == k {
                    *ridge_count.entry(s.to_vec()).or_insert(0) += 1;
                }
            });
        }
        if j + 1 == k {
            ridges_ok = ridge_count.values().all(|&c| c == 2);
        }
        let sign = if j % 2 == 1 { 1 } else { -1 };
        euler += sign * faces.len() as i64;
    }
    let sphere_euler = if k.is_multiple_of(2) { 0 } else { 2 };
    PseudomanifoldReport {
        ridges_in_two_facets: ridges_ok && h.edge_count() > 0,
        strongly_connected: decomposition.len() == 1,
        euler,
        sphere_euler,
    }
}
