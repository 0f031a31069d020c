use num_bigint::BigUint;
use thiserror::Error;

/// Errors produced by the solver library.
#[derive(Debug, Error)]
pub enum Error {
    /// Instance text that does not follow the file format.
    #[error("malformed instance file at line {line}: {detail}")]
    MalformedInstance { line: usize, detail: String },

    /// An instance with no jobs or no machines.
    #[error("instance must have at least one job and one machine")]
    EmptyInstance,

    /// A job visits the same machine more than once.
    #[error("job {job} visits machine {machine} more than once")]
    DuplicateMachine { job: usize, machine: usize },

    /// A machine index outside `[0, n_machines)`.
    #[error("job {job} references machine {machine}, but only {n_machines} machines exist")]
    MachineOutOfRange {
        job: usize,
        machine: usize,
        n_machines: usize,
    },

    /// A non-positive processing time.
    #[error("job {job}, operation {op}: durations must be >= 1")]
    NonPositiveDuration { job: usize, op: usize },

    /// A job whose operation count differs from the machine count.
    #[error("job {job} has {got} operations, expected {expected}")]
    InconsistentOperationCount {
        job: usize,
        expected: usize,
        got: usize,
    },

    /// A job-repetition vector whose multiplicities do not match the instance.
    #[error("invalid job-repetition vector: {0}")]
    InvalidVector(String),

    /// A multinomial query whose counts do not sum to the remaining length.
    #[error("multinomial counts sum to {counts_sum}, expected {remaining}")]
    CountSumMismatch { remaining: usize, counts_sum: usize },

    /// A rank at or beyond the number of vectors of the instance.
    #[error("rank {rank} out of range: instance has {total} vectors")]
    RankOutOfRange { rank: BigUint, total: BigUint },

    /// Enumeration refused because the instance exceeds the vector budget.
    #[error("enumeration budget exceeded: instance has {total} vectors, budget is {budget}")]
    EnumerationBudget { total: BigUint, budget: u64 },

    /// A statevector larger than the configured amplitude budget.
    #[error("{qubits} qubits need 2^{qubits} amplitudes, over the budget of {max_amplitudes}")]
    MemoryBudget { qubits: usize, max_amplitudes: u64 },

    /// Circuit parameters with mismatched or empty angle lists.
    #[error("invalid circuit parameters: {0}")]
    InvalidParams(String),

    /// A mixer tag outside {1, 2, 3, 4}.
    #[error("unknown mixer variant {0}, expected 1-4")]
    UnknownMixer(u8),

    /// An oriented disjunctive graph that is not acyclic.
    #[error("cycle detected in oriented disjunctive graph")]
    CycleDetected,

    /// A machine ordering that does not cover each operation exactly once.
    #[error("invalid machine ordering: {0}")]
    InvalidMachineOrder(String),

    /// A schedule that violates one of the schedule invariants.
    #[error("schedule validation failed: {0}")]
    InvalidSchedule(String),

    /// Invalid optimizer configuration.
    #[error("invalid optimizer configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T> = std::result::Result<T, Error>;
