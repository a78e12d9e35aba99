//! Exact sparse state-vector simulation.

mod gate;
mod measure;
mod state;

pub use gate::{omega_pow, GateLabel, Matrix2, SingleQubitGate};
pub use measure::{bell_pair, rotated_bell_measure, seeded_rng, BellMeasurement, Outcomes, SimRng};
pub use state::{
    project_onto, Projection, SparseState, COMPARE_TOL, MAX_SIM_QUBITS, PRUNE_EPS, TERM_GUARD,
};
