//! Subset verification and subset search for causal DAGs.
//!
//! Given a DAG and a set of target edges, compute a minimum set of
//! interventions whose outcomes orient every target edge, or discover the
//! target orientations adaptively when the DAG is hidden.

pub mod brute;
pub mod chordal;
pub mod error;
pub mod experiment;
pub mod generate;
pub mod graph;
pub mod hasse;
pub mod io;
pub mod orientation;
pub mod search;
pub mod stabbing;
pub mod tree;
pub mod verification;
pub mod vertex_cover;

pub use error::{Error, Result};
pub use graph::{Dag, Pdag, TargetEdges};
