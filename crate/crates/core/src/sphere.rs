//! Spanning spheres and surfaces inside blow-ups of the tight 3-uniform path.
//!
//! Pipeline:
//! 1. the octahedron spanning `P_4(1,2,2,1)` with an explicit double cover;
//! 2. [`grow_step`] repeatedly, giving cluster profile `(1,2,3,...,3,2,1)`;
//! 3. small partite spheres glued on by connected sum to fix `n mod 3`;
//! 4. for surfaces, copies of the torus `T9` or projective plane `P12` glued
//!    on the same way.
//!
//! Every step re-verifies its output with the classifier and the spanning
//! check, so correctness rests on the verifiers rather than on the steps.

use alloc::vec::Vec;

use crate::blowup::{blow_up, is_spanning_in_blowup, BlowUp};
use crate::constructions::{fixture, tight_path, FixtureName};
use crate::error::param;
use crate::hypergraph::Vertex;
use crate::oracle::search::search_spanning_sphere;
use crate::topology::{
    check_doubly_edge_covering, connected_sum, path_edge_count, DoubleCover, Face, Surface2, SurfaceClass,
    SurfaceKind,
};
use crate::{Error, Result};

/// Smallest `n` from which [`build_spanning_sphere`] succeeds for every `n`.
pub const SPHERE_N0: usize = 20;

/// Cluster bound of the sphere builder (`k + 2`).
pub const SPHERE_CLUSTER_BOUND: usize = 5;

/// Search budget of the fallback used when a deterministic step fails verification.
const FALLBACK_BUDGET: u64 = 5_000_000;

/// A surface together with the blow-up it spans and, when known, a double cover.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddedSurface {
    pub surface: Surface2,
    pub host: BlowUp,
    pub cover: Option<DoubleCover>,
}

pub type EmbeddedSphere = EmbeddedSurface;

impl EmbeddedSurface {
    /// Checks the class, the spanning property, the cluster bound and the cover.
    pub fn certify(&self, expected: SurfaceClass, cluster_bound: usize) -> Result<()> {
        let class = self.surface.classify();
        if (class.kind, class.genus) != (expected.kind, expected.genus) {
            return Err(Error::Internal(alloc::format!("built {class}, expected {expected}")));
        }
        if !is_spanning_in_blowup(&self.surface.to_hypergraph(), &self.host)? {
            return Err(Error::Internal("built surface does not span its host".into()));
        }
        if self.host.max_cluster() > cluster_bound {
            return Err(Error::Internal(alloc::format!(
                "cluster of size {} exceeds the bound {cluster_bound}",
                self.host.max_cluster()
            )));
        }
        if let Some(cover) = &self.cover {
            if !cover.validate(&self.surface, &self.host) {
                return Err(Error::Internal("attached double cover is invalid".into()));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GadgetVariant {
    /// `K(2, l, l)`, `l >= 2`.
    A,
    /// `K(3, l, l)`, `l >= 3`.
    B,
}

/// A spanning sphere of `K(3,3,3)`, found once by the backtracking search.
const K333_SPHERE: [[u32; 3]; 14] = [
    [0, 3, 6], [0, 3, 7], [0, 4, 6], [0, 4, 7], [1, 3, 6], [1, 3, 7], [1, 4, 6],
    [1, 4, 8], [1, 5, 7], [1, 5, 8], [2, 4, 7], [2, 4, 8], [2, 5, 7], [2, 5, 8],
];

fn sort3(mut f: Face) -> Face {
    f.sort_unstable();
    f
}

/// Mutable working copy: arbitrary vertex ids with an explicit cluster per vertex.
struct Layout {
    faces: Vec<Face>,
    cluster: Vec<u32>,
    sizes: Vec<usize>,
    cover: Option<(Vec<Face>, Vec<Face>)>,
}

impl Layout {
    fn of(e: &EmbeddedSurface) -> Self {
        Layout {
            faces: e.surface.faces().to_vec(),
            cluster: e.host.phi().to_vec(),
            sizes: e.host.sizes().to_vec(),
            cover: e.cover.as_ref().map(|c| (c.family_a.clone(), c.family_b.clone())),
        }
    }

    fn add_vertex(&mut self, cluster: u32) -> Vertex {
        self.cluster.push(cluster);
        self.sizes[cluster as usize] += 1;
        (self.cluster.len() - 1) as Vertex
    }

    /// The vertices of a transversal face, indexed by cluster offset from its lowest cluster.
    fn by_cluster(&self, f: Face) -> [Vertex; 3] {
        let mut out = f;
        out.sort_by_key(|&v| self.cluster[v as usize]);
        out
    }

    fn remove_face(&mut self, f: Face) {
        let f = sort3(f);
        self.faces.retain(|&g| g != f);
    }

    fn add_faces(&mut self, faces: &[Face]) {
        self.faces.extend(faces.iter().map(|&f| sort3(f)));
    }

    /// Renumbers vertices so that clusters are contiguous (stable within a cluster).
    fn finish(self) -> Result<EmbeddedSurface> {
        let n = self.cluster.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&v| (self.cluster[v], v));
        let mut new_id = alloc::vec![0 as Vertex; n];
        for (i, &v) in order.iter().enumerate() {
            new_id[v] = i as Vertex;
        }
        let map = |f: &Face| sort3(f.map(|v| new_id[v as usize]));
        let surface = Surface2::new(n, self.faces.iter().map(map))?;
        let host = blow_up(&tight_path(3, self.sizes.len())?, &self.sizes)?;
        let cover = self.cover.map(|(a, b)| DoubleCover {
            family_a: a.iter().map(map).collect(),
            family_b: b.iter().map(map).collect(),
        });
        Ok(EmbeddedSurface { surface, host, cover })
    }
}

fn partite_layout(sizes: [usize; 3], faces: &[Face]) -> Layout {
    let cluster = (0..3u32).flat_map(|c| core::iter::repeat_n(c, sizes[c as usize])).collect();
    Layout { faces: faces.iter().map(|&f| sort3(f)).collect(), cluster, sizes: sizes.to_vec(), cover: None }
}

/// Subdivides the edge `bc` of the lowest face `abc` into `b c' b' c`,
/// adding one vertex to each of the two larger clusters.
fn widen(layout: &mut Layout) -> Result<()> {
    let first = *layout.faces.iter().min().expect("non-empty surface");
    let [a, b, c] = layout.by_cluster(first);
    let other = layout
        .faces
        .iter()
        .copied()
        .find(|&f| f != first && f.contains(&b) && f.contains(&c))
        .ok_or_else(|| Error::Internal("edge of a sphere lies in one face".into()))?;
    let a2 = layout.by_cluster(other)[0];
    let c2 = layout.add_vertex(2);
    let b2 = layout.add_vertex(1);
    layout.remove_face(first);
    layout.remove_face(other);
    for apex in [a, a2] {
        layout.add_faces(&[[apex, b, c2], [apex, c2, b2], [apex, b2, c]]);
    }
    Ok(())
}

/// Spanning sphere of `K(2,l,l)` (variant A) or `K(3,l,l)` (variant B).
pub fn gadget_sphere(k: usize, variant: GadgetVariant, l: usize) -> Result<EmbeddedSphere> {
    if k != 3 {
        return Err(Error::UnsupportedUniformity { expected: 3, found: k });
    }
    let (mut layout, base) = match variant {
        GadgetVariant::A => {
            let faces: Vec<Face> =
                (0..8u32).map(|m| [m & 1, 2 + ((m >> 1) & 1), 4 + ((m >> 2) & 1)]).collect();
            (partite_layout([2, 2, 2], &faces), 2)
        }
        GadgetVariant::B => (partite_layout([3, 3, 3], &K333_SPHERE), 3),
    };
    if l < base {
        return Err(param!("variant {variant:?} needs l >= {base}, got {l}"));
    }
    for _ in base..l {
        widen(&mut layout)?;
    }
    let sphere = layout.finish()?;
    sphere.certify(SurfaceClass::sphere(), l.max(base))?;
    Ok(sphere)
}

/// The octahedron spanning `P_4(1,2,2,1)`, with its double cover.
pub fn thin_path_base(k: usize) -> Result<EmbeddedSphere> {
    if k != 3 {
        return Err(Error::UnsupportedUniformity { expected: 3, found: k });
    }
    let host = blow_up(&tight_path(3, 4)?, &[1, 2, 2, 1])?;
    let surface = Surface2::from_hypergraph(host.result())?;
    let (u, p1, p2, q1, q2, w) = (0, 1, 2, 3, 4, 5);
    let cover = DoubleCover {
        family_a: alloc::vec![[u, p1, q1], [p2, q2, w]],
        family_b: alloc::vec![[u, p2, q2], [p1, q1, w]],
    };
    let sphere = EmbeddedSurface { surface, host, cover: Some(cover) };
    sphere.certify(SurfaceClass::sphere(), 2)?;
    Ok(sphere)
}

/// Extends a doubly edge-covering sphere in `P_l(a_1, ..., a_l)` to one in
/// `P_{l+1}(1, a_1 + 1, a_2 + 1, a_3, ..., a_l)`.
///
/// With `xyw` the first facet of the first family, `xyw` is replaced by a
/// wheel around the new vertex `z` on the rim `x y x' y'` and a fan from `w`
/// over `y x' y' x`.
pub fn grow_step(s: &EmbeddedSphere) -> Result<EmbeddedSphere> {
    let grown = extend_path(s)?;
    let bound = grown.host.max_cluster();
    if grown.certify(SurfaceClass::sphere(), bound).is_ok() {
        return Ok(grown);
    }
    fallback(grown.host)
}

/// The deterministic part of [`grow_step`], unverified.
fn extend_path(s: &EmbeddedSphere) -> Result<EmbeddedSphere> {
    let cover = s.cover.as_ref().ok_or_else(|| Error::Precondition("grow_step needs a double cover".into()))?;
    if path_edge_count(&s.host)? < 2 {
        return Err(Error::Precondition("grow_step needs a host path on at least 4 vertices".into()));
    }
    let mut layout = Layout::of(s);
    for c in layout.cluster.iter_mut() {
        *c += 1;
    }
    layout.sizes.insert(0, 0);
    let [x, y, w] = layout.by_cluster(cover.family_a[0]);
    let z = layout.add_vertex(0);
    let x2 = layout.add_vertex(1);
    let y2 = layout.add_vertex(2);
    layout.remove_face(cover.family_a[0]);
    layout.add_faces(&[[z, x, y], [z, y, x2], [z, x2, y2], [z, y2, x]]);
    layout.add_faces(&[[w, y, x2], [w, x2, y2], [w, y2, x]]);
    let mut a = alloc::vec![sort3([z, x, y]), sort3([x2, y2, w])];
    a.extend_from_slice(&cover.family_a[1..]);
    let mut b = alloc::vec![sort3([z, x2, y2])];
    b.extend_from_slice(&cover.family_b);
    layout.cover = Some((a, b));
    layout.finish()
}

/// Search for a doubly edge-covering sphere when the deterministic step fails.
fn fallback(host: BlowUp) -> Result<EmbeddedSphere> {
    let found = search_spanning_sphere(host.result(), FALLBACK_BUDGET)?;
    let surface = found
        .found()
        .cloned()
        .ok_or_else(|| Error::Internal("no spanning sphere in the grown host".into()))?;
    let cover = check_doubly_edge_covering(&surface, &host)?
        .ok_or_else(|| Error::Internal("spanning sphere without a double cover".into()))?;
    let sphere = EmbeddedSurface { surface, host, cover: Some(cover) };
    let bound = sphere.host.max_cluster();
    sphere.certify(SurfaceClass::sphere(), bound)?;
    Ok(sphere)
}

/// Glues `piece` (spanning a single-edge blow-up) onto the lowest face of `s`
/// over base edge `{p, p+1, p+2}`, colour class `j` of the piece going to cluster `p + j`.
fn glue_piece(s: &EmbeddedSurface, piece: &EmbeddedSurface, p: u32) -> Result<EmbeddedSurface> {
    let target = *s
        .surface
        .faces()
        .iter()
        .find(|f| s.host.project(&f[..]).is_some_and(|img| img == [p, p + 1, p + 2]))
        .ok_or_else(|| Error::Internal(alloc::format!("no face over base edge starting at {p}")))?;
    let own = piece.surface.faces()[0];
    let aligned = piece.surface.align_face(own, target, s.surface.n() as Vertex)?;
    let mut layout = Layout::of(s);
    layout.cover = None;
    for v in piece.surface.used_vertices().into_iter().filter(|v| !own.contains(v)) {
        layout.add_vertex(p + piece.host.phi()[v as usize]);
    }
    let summed = connected_sum(&s.surface, &aligned, target)?;
    let expected = s.surface.euler_characteristic() + piece.surface.euler_characteristic() - 2;
    if summed.euler_characteristic() != expected {
        return Err(Error::Internal("Euler characteristic not additive across a glue".into()));
    }
    layout.faces = summed.faces().to_vec();
    layout.finish()
}

/// Disjoint base windows `p, p+1, p+2` for `count` pieces: windows of three
/// size-3 clusters from the left if there are enough, else consecutive blocks.
fn pick_windows(sizes: &[usize], count: usize) -> Option<Vec<u32>> {
    let l = sizes.len();
    let mut full = Vec::new();
    let mut p = 0;
    while full.len() < count && p + 3 <= l {
        if sizes[p..p + 3].iter().all(|&s| s == 3) {
            full.push(p as u32);
            p += 3;
        } else {
            p += 1;
        }
    }
    if full.len() == count {
        return Some(full);
    }
    let blocks: Vec<u32> = (0..l / 3).map(|i| 3 * i as u32).take(count).collect();
    (blocks.len() == count).then_some(blocks)
}

/// Cluster profile after growing the thin path base to `n_prime` vertices.
fn grown_profile(n_prime: usize) -> Vec<usize> {
    let middle = (n_prime - 6) / 3;
    let mut sizes = alloc::vec![1, 2];
    sizes.extend(core::iter::repeat_n(3, middle));
    sizes.extend([2, 1]);
    sizes
}

struct Plan {
    gadgets: usize,
    n_prime: usize,
    windows: Vec<u32>,
}

/// Sizing for an `n`-vertex result with `pieces` extra glued pieces adding
/// `extra` vertices in total (each a multiple of 3).
fn plan(n: usize, extra: usize, pieces: usize) -> Option<Plan> {
    let rest = n.checked_sub(extra)?;
    // each 8-vertex gadget adds 5 vertices; 9-vertex ones would add 6 and are never needed
    let gadgets = [0, 2, 1][rest % 3];
    let n_prime = rest.checked_sub(5 * gadgets)?;
    if n_prime < 6 {
        return None;
    }
    let windows = pick_windows(&grown_profile(n_prime), gadgets + pieces)?;
    Some(Plan { gadgets, n_prime, windows })
}

fn assemble(n: usize, fixtures: &[EmbeddedSurface]) -> Result<EmbeddedSurface> {
    let extra: usize = fixtures.iter().map(|f| f.surface.n() - 3).sum();
    let plan = plan(n, extra, fixtures.len())
        .ok_or_else(|| param!("n = {n} is too small for this construction"))?;
    let mut s = thin_path_base(3)?;
    for _ in 0..(plan.n_prime - 6) / 3 {
        s = grow_step(&s)?;
    }
    let gadget = gadget_sphere(3, GadgetVariant::A, 3)?;
    let pieces = core::iter::repeat_n(&gadget, plan.gadgets).chain(fixtures);
    for (piece, &p) in pieces.zip(&plan.windows) {
        s = glue_piece(&s, piece, p)?;
    }
    if s.surface.n() != n {
        return Err(Error::Internal(alloc::format!("assembled {} vertices, wanted {n}", s.surface.n())));
    }
    Ok(s)
}

/// An `n`-vertex sphere spanning a path blow-up with clusters of size at most 5.
pub fn build_spanning_sphere(k: usize, n: usize) -> Result<EmbeddedSphere> {
    if k != 3 {
        return Err(Error::UnsupportedUniformity { expected: 3, found: k });
    }
    if n < SPHERE_N0 {
        return Err(param!("build_spanning_sphere needs n >= {SPHERE_N0}, got {n}"));
    }
    let s = assemble(n, &[])?;
    s.certify(SurfaceClass::sphere(), SPHERE_CLUSTER_BOUND)?;
    Ok(s)
}

fn surface_pieces(spec: SurfaceClass) -> Result<(Option<FixtureName>, usize)> {
    match spec.kind {
        SurfaceKind::Sphere => Ok((None, 0)),
        SurfaceKind::Orientable if spec.genus == 0 => Ok((None, 0)),
        SurfaceKind::Orientable => Ok((Some(FixtureName::T9), spec.genus as usize)),
        SurfaceKind::NonOrientable if spec.genus >= 1 => Ok((Some(FixtureName::P12), spec.genus as usize)),
        _ => Err(param!("cannot build {spec}")),
    }
}

/// Cluster bound `m` achieved by [`build_spanning_surface`]: gadgets and tori
/// add at most 2 to a cluster of size at most 3, projective planes add 3.
pub fn surface_cluster_bound(spec: SurfaceClass) -> Result<usize> {
    Ok(match surface_pieces(spec)?.0 {
        Some(FixtureName::P12) => 6,
        _ => SPHERE_CLUSTER_BOUND,
    })
}

fn feasible(n: usize, spec: SurfaceClass) -> Result<bool> {
    let (name, count) = surface_pieces(spec)?;
    let extra = match name {
        Some(FixtureName::T9) => 6 * count,
        Some(FixtureName::P12) => 9 * count,
        None => 0,
    };
    Ok(plan(n, extra, count).is_some())
}

/// Smallest `n` from which [`build_spanning_surface`] succeeds for every larger `n`.
pub fn surface_n0(spec: SurfaceClass) -> Result<usize> {
    let (_, count) = surface_pieces(spec)?;
    // beyond this every residue has enough windows
    let limit = 60 + 40 * count;
    let mut n0 = 0;
    for n in 0..=limit {
        if !feasible(n, spec)? {
            n0 = n + 1;
        }
    }
    Ok(n0)
}

/// An `n`-vertex copy of the surface `spec` spanning a path blow-up with
/// clusters of size at most [`surface_cluster_bound`].
pub fn build_spanning_surface(spec: SurfaceClass, n: usize) -> Result<EmbeddedSurface> {
    let (name, count) = surface_pieces(spec)?;
    let Some(name) = name else {
        return build_spanning_sphere(3, n);
    };
    let n0 = surface_n0(spec)?;
    if n < n0 {
        return Err(param!("building {spec} needs n >= {n0}, got {n}"));
    }
    let (surface, host) = fixture(name);
    let piece = EmbeddedSurface { surface, host, cover: None };
    let s = assemble(n, &alloc::vec![piece; count])?;
    s.certify(spec, surface_cluster_bound(spec)?)?;
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gadgets() {
        let g = gadget_sphere(3, GadgetVariant::A, 2).unwrap();
        assert_eq!(g.surface.counts(), (6, 12, 8));
        let g = gadget_sphere(3, GadgetVariant::A, 3).unwrap();
        assert_eq!((g.surface.n(), g.host.sizes()), (8, &[2, 3, 3][..]));
        let g = gadget_sphere(3, GadgetVariant::B, 5).unwrap();
        assert_eq!(g.host.sizes(), [3, 5, 5]);
        assert!(gadget_sphere(3, GadgetVariant::B, 2).is_err());
        assert!(gadget_sphere(4, GadgetVariant::A, 2).is_err());
    }

    #[test]
    fn thin_path_and_growth() {
        let s = thin_path_base(3).unwrap();
        assert_eq!(s.surface.counts(), (6, 12, 8));
        assert!(check_doubly_edge_covering(&s.surface, &s.host).unwrap().is_some());
        let s1 = grow_step(&s).unwrap();
        assert_eq!(s1.host.sizes(), [1, 2, 3, 2, 1]);
        assert_eq!(s1.surface.n(), 9);
        let s2 = grow_step(&s1).unwrap();
        assert_eq!(s2.host.sizes(), [1, 2, 3, 3, 2, 1]);
        assert!(s2.cover.is_some());
        let bare = EmbeddedSurface { cover: None, ..s2 };
        assert!(grow_step(&bare).is_err());
    }

    #[test]
    fn deterministic_growth_needs_no_fallback() {
        let mut s = thin_path_base(3).unwrap();
        for _ in 0..12 {
            s = extend_path(&s).unwrap();
            s.certify(SurfaceClass::sphere(), 3).unwrap();
        }
        assert_eq!(s.surface.n(), 6 + 3 * 12);
    }

    #[test]
    fn sphere_threshold_constant() {
        let n0 = surface_n0(SurfaceClass::sphere()).unwrap();
        assert_eq!(n0, SPHERE_N0);
        assert!(build_spanning_sphere(3, SPHERE_N0 - 1).is_err());
    }

    #[test]
    fn spheres_across_residues() {
        for n in [20, 21, 22, 30, 31, 32] {
            let s = build_spanning_sphere(3, n).unwrap();
            assert_eq!(s.surface.counts(), (n, 3 * n - 6, 2 * n - 4));
            assert!(s.host.max_cluster() <= SPHERE_CLUSTER_BOUND);
        }
    }

    #[test]
    fn surfaces() {
        let t = build_spanning_surface(SurfaceClass::orientable(1), 40).unwrap();
        assert_eq!(t.surface.classify().genus, 1);
        let p = build_spanning_surface(SurfaceClass::non_orientable(1), 40).unwrap();
        assert_eq!(p.surface.classify().kind, SurfaceKind::NonOrientable);
        assert_eq!(build_spanning_surface(SurfaceClass::sphere(), 40).unwrap(), build_spanning_sphere(3, 40).unwrap());
    }
}
