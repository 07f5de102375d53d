//! Minimum Connectivity Inference: hypergraphs, cut separation, the
//! constraint-generation solver, the flow baseline, enumeration of optimal
//! solutions and the random instance generator.

pub mod cga;
pub mod cuts;
pub mod enumeration;
mod error;
pub mod flow;
pub mod generator;
pub mod hypergraph;
pub mod registry;

pub use cga::{solve_mci, CgaEngine, CgaOutcome, MciRun, RunStats, Strategy};
pub use cuts::{Cut, CutPool, Routine};
pub use enumeration::{enumerate_chunked, enumerate_naive, SolutionSet};
pub use error::MciError;
pub use flow::{solve_flow_baseline, FlowModel};
pub use generator::{generate_instance, size_bounds, Scenario};
pub use hypergraph::{Edge, Hypergraph, SolutionGraph, Vertex};
pub use registry::{Algorithm, AlgorithmReport, Registry};
