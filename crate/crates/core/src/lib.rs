//! Unions of complete bipartite graphs that avoid `k×k` bipartite independent sets.
//!
//! * [`graph`], [`io`], [`rng`]: data model, JSON documents, seeded randomness.
//! * [`bounds`]: necessary and sufficient size conditions in closed form.
//! * [`construct`]: random placement of bicliques and union-bound certificates.
//! * [`witness`]: exact search for `k×k` independent sets.
//! * [`attack`]: the random side-deletion refuter.
//! * [`superconc`]: depth-two superconcentrator verification and audits.

pub mod attack;
pub mod bitset;
pub mod bounds;
pub mod construct;
pub mod error;
pub mod experiment;
pub mod graph;
pub mod io;
pub mod math;
pub mod nonfinite;
pub mod rng;
pub mod superconc;
pub mod witness;

pub use bitset::Bitset;
pub use error::{Error, Result};
pub use graph::{union_of, Biclique, BicliqueFamily, BipartiteGraph, LayeredGraph, Side, SimpleGraph, VertexSet};
pub use rng::RandomSource;

/// Embedded in every report.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
