//! Qubit gates compiled to two-level rotations on a single qudit.
//!
//! An `N`-qubit register is mapped onto one qudit with `D = 2^N`
//! computational levels plus an ancilla level. Gates (H, X, T, multi-control
//! CNOT, multi-control Z) become layers of commuting `U(2)` rotations; the
//! crate simulates those programs exactly, checks them against Kronecker
//! product qubit matrices, and builds full Grover search circuits.

pub mod basis;
pub mod error;
pub mod exec;
pub mod format;
pub mod gate;
pub mod grover;
pub mod oracle;
pub mod rotation;
pub mod schedule;
pub mod sim;
pub mod synth;

pub use basis::{bits_to_index, index_to_bits, pair_partner, BitString, SystemShape};
pub use error::{QuditError, Result};
pub use exec::Execution;
pub use gate::GateSpec;
pub use rotation::{rotation_matrix, Axis, Layer, Rotation, RotationProgram};
pub use schedule::{CompiledCircuit, DepthMetrics};
pub use sim::QuditState;
pub use synth::{synth_gate, SynthOptions, SynthesisRecord};
