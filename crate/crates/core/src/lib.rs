// SPDX-License-Identifier: Apache-2.0

//! Core and truss decompositions of simple undirected graphs, the tables that
//! describe how the two interact, seeded null-model generators, and a
//! clustering-based detector for vertices whose core number disagrees with the
//! truss numbers around them.
//!
//! The crate is organised bottom-up:
//!
//! * [`graph`]: CSR graph, edge-list ingestion and canonical output.
//! * [`decomposition`]: bucket-peeling core and truss decompositions.
//! * [`interplay`]: vertex (VI) and edge (EI) interplay tables.
//! * [`randgen`]: Erdős–Rényi, erased configuration and BTER generators.
//! * [`anomaly`]: truss-profiles, k-means, elbow selection and Z-score outliers.
//!
//! Data-parallel inner loops run on rayon when the `parallel` feature is
//! enabled (the default). Every such loop has a sequential twin selected with
//! [`Execution`], and both produce bit-identical results.

pub mod anomaly;
pub mod decomposition;
mod error;
pub mod graph;
pub mod interplay;
mod par;
pub mod randgen;
mod rng;
pub mod stats;

pub use error::{Error, Result};
pub use graph::{EdgeId, Graph, LoadOptions, VertexId};
pub use par::Execution;
pub use rng::SeededRng;
