//! Randomized graph algorithms around resilient Hamiltonicity.
//!
//! * [`graph`]: bit-matrix graphs, seeded G(n,p), degree caps.
//! * [`oracle`]: exact Hamiltonicity, longest paths and boosters for small n.
//! * [`posa`]: rotation–extension search, rotation closures, booster augmentation.
//! * [`certify`]: expander, quasi-randomness and L-family certificates.
//! * [`extract`]: random sparsification into an expander and assembly of Γ₀.
//! * [`resilience`]: degree-capped adversaries and the resilience harness.
//! * [`packing`]: edge-disjoint Hamilton cycle packing.
//! * [`experiment`]: the Monte Carlo harness, tail bounds and report emission.

pub mod certify;
pub mod error;
pub mod experiment;
pub mod extract;
pub mod graph;
pub mod oracle;
pub mod packing;
pub mod posa;
pub mod resilience;
pub mod rng;

pub use error::{Error, Result};
pub use graph::{
    degree_respects, low_degree_set, wbd_sequence, CapRule, CapSequence, DegreeSequence, Edge, Graph,
    VertexSet,
};
pub use oracle::{CycleWitness, DEFAULT_EXACT_LIMIT};
pub use rng::RngSpec;
