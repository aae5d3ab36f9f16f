//! Perfect fractional matchings in random k-out hypergraphs.
//!
//! The crate is organised bottom-up:
//!
//! * [`hypergraph`] holds the immutable r-uniform hypergraph and its
//!   structural predicates (independence, incidence, isolation).
//! * [`lp`] is an exact rational simplex solver (with a floating-point
//!   twin) that produces primal/dual certificates and probes optimal faces.
//! * [`matching`] computes fractional matching and cover numbers, decides
//!   perfection, and inspects the shape of minimum covers.
//! * [`expansion`] decides the expansion hypotheses that force a perfect
//!   fractional matching, by exhaustive enumeration on small instances.
//! * [`models`] samples k-out hypergraphs and runs the random r-graph
//!   process up to its isolated-vertex stopping time.
//! * [`experiments`] ties the above into reproducible Monte Carlo campaigns
//!   with CSV output.
//! * [`sidecar`] reads and writes the `key=value` metadata files that
//!   accompany samples, traces and experiment summaries.

pub mod error;
pub mod expansion;
pub mod experiments;
pub mod hypergraph;
pub mod lp;
pub mod matching;
pub mod models;
pub mod sidecar;

pub use error::{Error, Result};
pub use hypergraph::{Hypergraph, Vertex, VertexSet};
pub use lp::{LinearProgram, LpSolution, LpStatus, Rational};
pub use matching::{Mode, Number};
