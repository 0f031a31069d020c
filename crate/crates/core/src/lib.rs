//! Indirect QAOA for job-shop scheduling.
//!
//! Solutions are never encoded directly on the register. A schedule is
//! represented by a job-repetition vector, the vector by its lexicographic
//! rank, and the rank by the binary value of the measured qubits. Every
//! bitstring therefore decodes to a feasible, semi-active schedule: the
//! search never leaves the feasible subspace.
//!
//! The crate provides the full pipeline plus the oracles used to validate
//! it:
//!
//! * [`instance`] - instance parsing, validation, and counting;
//! * [`vector`] / [`schedule`] / [`graph`] - job-repetition vectors, the
//!   semi-active decode, and the oriented disjunctive graph cross-check;
//! * [`codec`] - the exact rank <-> vector bijection and the bitstring ->
//!   rank assembly;
//! * [`enumerate`] - exhaustive makespan distributions over every vector;
//! * [`sim`] - a dense statevector simulator with the rank-phase layer and
//!   four entangling mixers;
//! * [`optimizer`] - the sampling objective and the genetic search over the
//!   circuit angles;
//! * [`fixtures`] - the bundled benchmark instances.

pub mod codec;
pub mod enumerate;
pub mod error;
pub mod fixtures;
pub mod graph;
pub mod instance;
pub mod optimizer;
pub mod schedule;
pub mod sim;
pub mod vector;

pub use codec::RankCodec;
pub use enumerate::{
    enumerate_distribution, sample_distribution, MakespanDistribution, DEFAULT_ENUMERATION_BUDGET,
};
pub use error::{Error, Result};
pub use graph::{build_graph, OrientedDisjunctiveGraph};
pub use instance::{JsspInstance, Operation};
pub use optimizer::{
    amplification, evaluate_objective, run_ga, GaConfig, ObjectiveValue, OptimizationResult,
};
pub use schedule::{decode, validate_schedule, Schedule};
pub use sim::{run_circuit, CircuitParams, MemoryBudget, MixerVariant, ShotBatch, StateVector};
pub use vector::BierwirthVector;
