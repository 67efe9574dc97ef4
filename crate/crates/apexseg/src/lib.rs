//! Bipartite apex gadget graphs and their exact geometric representations.
//!
//! The pipeline runs a planar graph through four stages:
//!
//! 1. [`graph`] — the full k-subdivision plus apex construction, with
//!    certifiable structure (bipartite, girth ≥ bound, apex removal planar).
//! 2. [`planarity`] — exact planarity testing and the desk-scale decision
//!    procedure for planar Hamiltonian path completion.
//! 3. [`frontline`] — front line drawings as combinatorial objects, the
//!    edge-area poset and ranks.
//! 4. [`pure2dir`] — exact rational axis-parallel segment arrangements
//!    realizing the gadget, for k = 3 and inductively for all odd k.
//!
//! [`verifier`] closes the loop: it recomputes the intersection graph of an
//! arrangement with exact arithmetic and checks it equals the gadget, label
//! for label, and that the extracted vertex order round-trips to a planar
//! supergraph.

pub mod cli;
pub mod frontline;
pub mod graph;
pub mod planarity;
pub mod pure2dir;
pub mod rational;
pub mod svg;
pub mod verifier;

pub use frontline::{EdgePoset, FrontLineDrawing, Relation, SideAssignment};
pub use graph::{ApexGadget, Graph};
pub use planarity::PhpcCertificate;
pub use pure2dir::{Arrangement, Orientation, Segment};
pub use rational::Rational;
pub use verifier::VerificationReport;

/// Errors surfaced by every stage of the pipeline.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A caller-supplied parameter is outside the operation's domain.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    /// The input value violates an operation precondition.
    #[error("invalid input: {0}")]
    InvalidInput(String),
    /// The graph text or JSON input could not be parsed.
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    /// An internal invariant failed; indicates a bug, not bad input.
    #[error("internal consistency error: {0}")]
    Inconsistency(String),
    /// An arrangement violates a contract it was assumed to satisfy.
    #[error("contract violation: {0}")]
    ContractViolation(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
