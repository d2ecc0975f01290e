#![no_std]
#![forbid(unsafe_code)]

//! Tight connectivity, combinatorial surfaces and spanning-sphere builders for
//! uniform hypergraphs.
//!
//! The crate is `no_std` and only needs `alloc`. Everything here is a pure
//! function over immutable values: file formats, threading and the command
//! line live in the companion `tightspan` crate.
//!
//! Modules:
//! - [`hypergraph`]: k-uniform hypergraphs, degrees, link graphs.
//! - [`components`]: tight components and link-component diagnostics.
//! - [`blowup`]: complete blow-ups with their cluster projection.
//! - [`topology`]: closed-surface certification, classification, connected sums,
//!   doubly edge-covering witnesses.
//! - [`constructions`]: generators for the extremal examples and surface fixtures.
//! - [`sphere`]: constructive spanning spheres and surfaces in path blow-ups.
//! - [`framework`]: connectivity, fractional matchings, closed-walk residues.
//! - [`oracle`]: brute-force audits and the spanning-sphere search.

extern crate alloc;

pub mod blowup;
pub mod combinatorics;
pub mod components;
pub mod constructions;
mod error;
pub mod framework;
pub mod hypergraph;
pub mod oracle;
pub mod sphere;
pub mod topology;
mod union_find;

pub use blowup::{blow_up, is_spanning_in_blowup, BlowUp};
pub use components::{link_component_diagnostics, tight_components, ComponentDecomposition};
pub use error::{Error, Result};
pub use hypergraph::{Hypergraph, Vertex};
pub use topology::{Surface2, SurfaceClass, SurfaceKind};
pub use union_find::UnionFind;
