//! Deterministic generators for the extremal examples and fixtures.
//!
//! Partitioned constructions lay their parts out as contiguous index ranges in
//! the order Z, X, Y (absent parts are skipped).

use alloc::vec::Vec;
use core::ops::Range;

use crate::blowup::{blow_up, BlowUp};
use crate::combinatorics::{binom, floor_scaled_root_half, next_combination};
use crate::error::{param, Result};
use crate::hypergraph::{Hypergraph, Vertex};
use crate::topology::{Face, Surface2};

/// A named vertex part of a construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Part {
    pub name: &'static str,
    pub range: Range<Vertex>,
}

impl Part {
    pub fn len(&self) -> usize {
        (self.range.end - self.range.start) as usize
    }

    pub fn is_empty(&self) -> bool {
        self.range.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionedGraph {
    pub graph: Hypergraph,
    pub parts: Vec<Part>,
    /// The parameters the generator was called with (after defaults).
    pub params: Vec<(&'static str, u64)>,
}

impl PartitionedGraph {
    pub fn part(&self, name: &str) -> Option<&Part> {
        self.parts.iter().find(|p| p.name == name)
    }

    pub fn part_size(&self, name: &str) -> usize {
        self.part(name).map_or(0, Part::len)
    }
}

fn layout(sizes: &[(&'static str, usize)]) -> (Vec<Part>, Vec<u8>) {
    let mut parts = Vec::new();
    let mut label = Vec::new();
    let mut start = 0u32;
    for (i, &(name, size)) in sizes.iter().enumerate() {
        parts.push(Part { name, range: start..start + size as Vertex });
        label.extend(core::iter::repeat_n(i as u8, size));
        start += size as Vertex;
    }
    (parts, label)
}

/// Every k-subset of `0..n` (lexicographic) accepted by `keep`, as a hypergraph.
fn filtered_complete(k: usize, n: usize, mut keep: impl FnMut(&[usize]) -> bool) -> Hypergraph {
    let mut flat = Vec::new();
    if n >= k {
        let mut c: Vec<usize> = (0..k).collect();
        loop {
            if keep(&c) {
                flat.extend(c.iter().map(|&v| v as Vertex));
            }
            if !next_combination(&mut c, n) {
                break;
            }
        }
    }
    Hypergraph::from_flat(k, n, flat).expect("lexicographic subsets are valid edges")
}

/// `floor(n / sqrt 2)`.
pub fn default_fig1_x(n: usize) -> usize {
    floor_scaled_root_half(n as u64, 2) as usize
}

/// 3-graph on Z ∪ X ∪ Y with all edges of type XXX, XYY, YYY and ZXX.
///
/// Its two tight components (XXX ∪ ZXX and XYY ∪ YYY) both miss a part, so
/// it has no spanning component. Defaults: `|X| = floor(n/√2)`, `|Z| = 1`.
pub fn fig1(n: usize, x_size: Option<usize>, z_size: Option<usize>) -> Result<PartitionedGraph> {
    if n < 5 {
        return Err(param!("fig1 needs n >= 5, got {n}"));
    }
    let x = x_size.unwrap_or_else(|| default_fig1_x(n));
    let z = z_size.unwrap_or(1);
    if x == 0 || z == 0 || x + z >= n {
        return Err(param!("infeasible part sizes |X| = {x}, |Z| = {z} for n = {n}"));
    }
    let y = n - x - z;
    let (parts, label) = layout(&[("Z", z), ("X", x), ("Y", y)]);
    let graph = filtered_complete(3, n, |e| {
        let mut count = [0u8; 3];
        for &v in e {
            count[label[v] as usize] += 1;
        }
        matches!(count, [0, 3, 0] | [0, 1, 2] | [0, 0, 3] | [1, 2, 0])
    });
    Ok(PartitionedGraph {
        graph,
        parts,
        params: alloc::vec![("n", n as u64), ("x", x as u64), ("z", z as u64)],
    })
}

/// Minimum vertex degree of [`fig1`] with part sizes `x, y, z`, in closed form.
pub fn fig1_min_degree(x: usize, y: usize, z: usize) -> usize {
    let mut best = usize::MAX;
    if z > 0 {
        best = best.min(binom(x, 2));
    }
    if x > 0 {
        best = best.min(binom(x - 1, 2) + binom(y, 2) + z * (x - 1));
    }
    if y > 0 {
        best = best.min(binom(y - 1, 2) + x * (y - 1));
    }
    best
}

/// `|X| = ceil(2n/3) + 4g`.
pub fn surface_lower_bound_x(n: usize, genus: usize) -> usize {
    (2 * n).div_ceil(3) + 4 * genus
}

/// 3-graph on X ∪ Y with all edges of type XXX, XYY and YYY, where
/// `|X| = ceil(2n/3) + 4g`. It has no spanning genus-g surface.
///
/// Requires `|Y| >= 2` so that the XYY ∪ YYY component exists.
pub fn surface_lower_bound(n: usize, genus: usize) -> Result<PartitionedGraph> {
    let x = surface_lower_bound_x(n, genus);
    if x + 2 > n || x < 3 {
        return Err(param!("|X| = {x} leaves fewer than two Y vertices for n = {n}, g = {genus}"));
    }
    let y = n - x;
    let (parts, label) = layout(&[("X", x), ("Y", y)]);
    let graph = filtered_complete(3, n, |e| {
        let in_x = e.iter().filter(|&&v| label[v] == 0).count();
        in_x != 2
    });
    Ok(PartitionedGraph {
        graph,
        parts,
        params: alloc::vec![("n", n as u64), ("g", genus as u64), ("x", x as u64)],
    })
}

/// Minimum vertex degree of [`surface_lower_bound`] in closed form.
pub fn surface_lower_bound_min_degree(x: usize, y: usize) -> usize {
    let from_x = binom(x - 1, 2) + binom(y, 2);
    let from_y = binom(y - 1, 2) + x * (y - 1);
    from_x.min(from_y)
}

/// `floor(2^(-1/(k-1)) (n-1))`.
pub fn kgraph_lower_bound_x(n: usize, k: usize) -> usize {
    floor_scaled_root_half(n as u64 - 1, k as u32 - 1) as usize
}

/// k-graph without a spanning component: on X ∪ Y every k-set except those
/// with exactly k-1 vertices in X, plus a vertex z joined to every
/// (k-1)-subset of X.
pub fn kgraph_lower_bound(n: usize, k: usize) -> Result<PartitionedGraph> {
    if k < 3 {
        return Err(param!("uniformity must be at least 3, got {k}"));
    }
    if n < 3 {
        return Err(param!("n = {n} too small"));
    }
    let x = kgraph_lower_bound_x(n, k);
    if x < k || x + 1 >= n {
        return Err(param!("n = {n} too small for k = {k} (|X| = {x})"));
    }
    let y = n - 1 - x;
    let (parts, label) = layout(&[("Z", 1), ("X", x), ("Y", y)]);
    let graph = filtered_complete(k, n, |e| {
        let in_x = e.iter().filter(|&&v| label[v] == 1).count();
        if e[0] == 0 {
            in_x == k - 1
        } else {
            in_x != k - 1
        }
    });
    Ok(PartitionedGraph {
        graph,
        parts,
        params: alloc::vec![("n", n as u64), ("k", k as u64), ("x", x as u64)],
    })
}

/// Complete k-partite k-graph `K_k^(k)(a_1, ..., a_k)` as a blow-up of one edge.
pub fn complete_kpartite(k: usize, sizes: &[usize]) -> Result<BlowUp> {
    if sizes.len() != k {
        return Err(param!("{} part sizes given for k = {k}", sizes.len()));
    }
    let edge: Vec<Vertex> = (0..k as Vertex).collect();
    blow_up(&Hypergraph::new(k, k, [edge])?, sizes)
}

/// Tight k-uniform path on `l` vertices: all k consecutive vertices.
pub fn tight_path(k: usize, l: usize) -> Result<Hypergraph> {
    if k < 2 || l < k {
        return Err(param!("tight path needs l >= k >= 2, got k = {k}, l = {l}"));
    }
    Hypergraph::new(k, l, (0..=l - k).map(|i| (i as Vertex..(i + k) as Vertex).collect::<Vec<_>>()))
}

/// Tight k-uniform cycle on `n >= k + 1` vertices.
pub fn tight_cycle(k: usize, n: usize) -> Result<Hypergraph> {
    if k < 2 || n < k + 1 {
        return Err(param!("tight cycle needs n >= k + 1 >= 3, got k = {k}, n = {n}"));
    }
    Hypergraph::new(
        k,
        n,
        (0..n).map(|i| (0..k).map(|j| ((i + j) % n) as Vertex).collect::<Vec<_>>()),
    )
}

/// `P_l^(k)(a_1, ..., a_l)`.
pub fn path_blowup(k: usize, l: usize, sizes: &[usize]) -> Result<BlowUp> {
    blow_up(&tight_path(k, l)?, sizes)
}

/// Blow-up of the tight cycle on `n` vertices.
pub fn cycle_blowup(k: usize, n: usize, sizes: &[usize]) -> Result<BlowUp> {
    blow_up(&tight_cycle(k, n)?, sizes)
}

/// The two surface fixtures.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FixtureName {
    /// 9-vertex torus.
    T9,
    /// 12-vertex real projective plane.
    P12,
}

impl FixtureName {
    pub fn as_str(self) -> &'static str {
        match self {
            FixtureName::T9 => "T9",
            FixtureName::P12 => "P12",
        }
    }
}

impl core::str::FromStr for FixtureName {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "T9" | "t9" => Ok(FixtureName::T9),
            "P12" | "p12" => Ok(FixtureName::P12),
            other => Err(param!("unknown fixture {other:?} (expected T9 or P12)")),
        }
    }
}

/// Triangles of the 3x3 torus grid, in figure labels. Rows read bottom to top,
/// columns 1-4-7 with the first column repeated on the right; each square is
/// split along its rising diagonal.
const T9_FACES: [[u32; 3]; 18] = [
    [1, 4, 6], [1, 3, 6], [3, 6, 5], [3, 2, 5], [2, 5, 4], [2, 1, 4],
    [4, 7, 9], [4, 6, 9], [6, 9, 8], [6, 5, 8], [5, 8, 7], [5, 4, 7],
    [7, 1, 3], [7, 9, 3], [9, 3, 2], [9, 8, 2], [8, 2, 1], [8, 7, 1],
];

/// Colour classes (red, green, blue) of the torus figure.
const T9_COLOURS: [[u32; 3]; 3] = [[1, 5, 9], [2, 6, 7], [3, 4, 8]];

/// Triangles of the projective-plane figure (hexagon 1-2-3-1-2-3 with
/// antipodal boundary identification), in figure labels.
const P12_FACES: [[u32; 3]; 22] = [
    [1, 3, 4], [3, 4, 6], [2, 3, 6], [4, 5, 6], [1, 4, 7], [4, 7, 8],
    [4, 5, 8], [1, 2, 7], [2, 7, 8], [2, 5, 8], [2, 6, 10], [6, 9, 10],
    [5, 6, 9], [1, 2, 10], [1, 9, 10], [1, 5, 9], [1, 5, 11], [2, 5, 12],
    [5, 11, 12], [1, 3, 11], [3, 11, 12], [2, 3, 12],
];

const P12_COLOURS: [[u32; 4]; 3] = [[1, 6, 8, 12], [2, 4, 9, 11], [3, 5, 7, 10]];

/// A surface fixture with its host: `T9` spans `P_3^(3)(3,3,3)`, `P12` spans
/// `P_3^(3)(4,4,4)`.
///
/// Vertices are renumbered so that each colour class of the figure is one
/// contiguous cluster; [`fixture_labels`] maps vertex ids back to figure labels.
pub fn fixture(name: FixtureName) -> (Surface2, BlowUp) {
    let (faces, colours, size): (&[[u32; 3]], Vec<&[u32]>, usize) = match name {
        FixtureName::T9 => (&T9_FACES, T9_COLOURS.iter().map(|c| &c[..]).collect(), 3),
        FixtureName::P12 => (&P12_FACES, P12_COLOURS.iter().map(|c| &c[..]).collect(), 4),
    };
    let n = 3 * size;
    let mut id_of_label = alloc::vec![0 as Vertex; n + 1];
    for (c, class) in colours.iter().enumerate() {
        for (j, &label) in class.iter().enumerate() {
            id_of_label[label as usize] = (c * size + j) as Vertex;
        }
    }
    let surface = Surface2::new(n, faces.iter().map(|f| f.map(|l| id_of_label[l as usize]) as Face))
        .expect("fixture faces are valid");
    let host = path_blowup(3, 3, &[size, size, size]).expect("fixture host");
    (surface, host)
}

/// Figure label of every vertex id of a fixture.
pub fn fixture_labels(name: FixtureName) -> Vec<u32> {
    match name {
        FixtureName::T9 => T9_COLOURS.iter().flatten().copied().collect(),
        FixtureName::P12 => P12_COLOURS.iter().flatten().copied().collect(),
    }
}
