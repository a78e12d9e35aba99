//! The homomorphic-encryption protocol engine.

mod keys;
mod logical;
mod resources;
mod storage;
mod teleport;
mod transversal;

pub use keys::{
    clifford_key_update, encrypt, format_circuit, parse_circuit, remove_mask, t_byproduct, t_count,
    CircuitGate, GateKind, KeyRegister, TByproduct,
};
pub use logical::{run_logical_t_protocol, LogicalReport, LOGICAL_T_TERM_BOUND};
pub use resources::{resource_report, ResourceReport};
pub use storage::{run_storage_protocol, StorageReport};
pub use teleport::{
    apply_circuit, decrypt, decrypt_with_schedule, evaluate_circuit, run_a1, run_a1_random,
    run_circuit_protocol, symbolic_key_trace, CircuitReport, KeySchedule, SymbolicBit,
    SymbolicStep, Transcript, TranscriptEvent, A1_CIRCUIT,
};
pub use transversal::{run_transversal_t_protocol, TransversalReport};
