//! Single-photon transport through one-dimensional coupled-resonator
//! waveguide clusters.
//!
//! A cluster is a set of tight-binding channels strung between two
//! semi-infinite leads. [`scattering`] evaluates the transfer-matrix closed
//! forms, [`oracle`] solves the same problem as one dense linear system, and
//! [`sweep`] scans the lead wavenumber and locates perfect-reflection
//! windows.

pub mod cluster;
pub mod error;
pub mod linalg;
pub mod oracle;
pub mod scattering;
pub mod sweep;

pub use cluster::{
    build_identical_chain, build_pattern_chain, build_ring, validate, AtomPattern, ClosedForm,
    ClusterSpec, Severity, Topology, ValidationReport, Violation,
};
pub use error::{ClusterError, OracleError, ScatteringError, SweepError};
pub use num_complex::Complex64;
pub use oracle::{solve_network, solve_network_with, EmitterTreatment, NetworkSolution};
pub use scattering::{
    channel_matrix, channel_transfer, dispersion, effective_alpha, elementary_matrix,
    identical_parallel_amplitudes, parallel_aggregates, parallel_amplitudes, ring_aggregates,
    ring_amplitudes, serial_amplitudes, AlphaTerm, CavitySite, ChannelTransfer, Emitter,
    LatticeParams, ModeContext, ParallelAggregates, RingAggregates, RingTerm, ScatteringResult,
    TransferMatrix, POLE_TOLERANCE,
};
pub use sweep::{
    evaluate_point, find_windows, sweep_k, verify_against_oracle, Method, ReflectionWindow,
    SpectrumRecord, SpectrumRow, SweepSpec, VerificationReport, DEFAULT_WINDOW_THRESHOLD,
    SWEEP_POLE_TOLERANCE,
};
