//! Brute-force oracles: exhaustive and sampled degree audits, exact small
//! thresholds, the spanning-sphere search and the codegree probe.

pub mod audit;
pub mod probe;
pub mod search;

pub use audit::{
    exact_component_threshold, verify_spanning_component_theorem, AuditMode, AuditResult, ComponentThreshold,
};
pub use probe::{codegree_batch, codegree_component_probe, CodegreeBatch, CodegreeReport};
pub use search::{search_spanning_sphere, AbsenceReason, SearchOutcome};
