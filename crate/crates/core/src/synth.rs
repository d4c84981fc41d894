//! Gate synthesis: each qubit gate becomes a short layered program of
//! two-level rotations.
//!
//! Sign conventions (rotation matrix `exp(-iθσ·n̂/2)`, lower level first):
//!
//! * H: `R_y(-π/2)` on every `(l, u)` target pair maps `|l⟩ → (|l⟩-|u⟩)/√2`
//!   and `|u⟩ → (|l⟩+|u⟩)/√2`, i.e. `Z·H`. A final layer of `2π` x-rotations
//!   on the levels with odd target parity removes the accumulated `Z`s.
//! * X and CNOT: `R_y(-π)` maps `|l⟩ → -|u⟩`, `|u⟩ → |l⟩`; a `2π` layer on
//!   the upper levels then yields X exactly. `R_y(+π)` with the same
//!   correction would give `-X`.
//! * T: `R_z(-π/2)` on `(a, D)` multiplies level `a` by `e^{iπ/4}`.
//! * MCZ: `2π` z-rotations, `-1` on both levels of each pair.
//!
//! Correction levels are paired in ascending order (1st with 2nd, 3rd with
//! 4th, ...). A lone level is paired with the ancilla.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::basis::SystemShape;
use crate::error::Result;
use crate::exec::Execution;
use crate::gate::{GateSpec, QubitSet};
use crate::rotation::{Axis, Layer, Rotation, RotationProgram};
use crate::sim::program_unitary;

/// `R_y(-π/2)` per Hadamard target pair.
pub const HADAMARD_Y_EIGHTHS: i32 = -2;
/// `R_y(-π)` per NOT / CNOT pair.
pub const FLIP_Y_EIGHTHS: i32 = -4;
/// `R_z(-π/2)` between a `q_t = 1` level and the ancilla.
pub const T_ANCILLA_Z_EIGHTHS: i32 = -2;
/// `R_z(+π/4)` on `(l, u)` target pairs for the ancilla-free T.
pub const T_PAIR_Z_EIGHTHS: i32 = 1;
/// `2π` phase-correction rotations.
pub const FULL_TURN_EIGHTHS: i32 = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SynthOptions {
    /// Build T from `R_z(-π/2)` rotations against the ancilla (default).
    /// When false, uses `R_z(π/4)` rotations on target pairs, which equal T
    /// only up to a global phase of `e^{-iπ/8}`.
    pub t_uses_ancilla: bool,
}

impl Default for SynthOptions {
    fn default() -> Self {
        Self {
            t_uses_ancilla: true,
        }
    }
}

/// Result of compiling one gate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SynthesisRecord {
    pub spec: GateSpec,
    pub program: RotationProgram,
    /// `(l, u)` level pairs of each layer, in program order.
    pub pairings: Vec<Vec<(usize, usize)>>,
    pub uses_ancilla: bool,
}

impl SynthesisRecord {
    fn new(spec: GateSpec, program: RotationProgram) -> Self {
        let pairings = program
            .layers()
            .iter()
            .map(|layer| layer.iter().map(Rotation::levels).collect())
            .collect();
        let uses_ancilla = program.touches_ancilla();
        Self {
            spec,
            program,
            pairings,
            uses_ancilla,
        }
    }

    pub fn rotation_count(&self) -> usize {
        self.program.rotation_count()
    }

    pub fn depth(&self) -> usize {
        self.program.depth()
    }
}

fn mask_of(shape: SystemShape, qubits: &QubitSet) -> Result<usize> {
    qubits
        .iter()
        .try_fold(0, |acc, &q| Ok(acc | shape.qubit_mask(q)?))
}

/// Pairs ascending `levels` as (1st, 2nd), (3rd, 4th), ...; an odd leftover
/// is paired with the ancilla.
fn correction_layer(levels: &[usize], axis: Axis, shape: SystemShape) -> Layer {
    let mut sorted = levels.to_vec();
    sorted.sort_unstable();
    sorted
        .chunks(2)
        .map(|c| match *c {
            [a, b] => Rotation::on_pair(axis, FULL_TURN_EIGHTHS, a, b),
            [a] => Rotation::on_pair(axis, FULL_TURN_EIGHTHS, a, shape.ancilla()),
            _ => unreachable!(),
        })
        .collect()
}

fn build(shape: SystemShape, spec: GateSpec, layers: Vec<Layer>) -> Result<SynthesisRecord> {
    let program = RotationProgram::from_layers(shape, layers)?;
    Ok(SynthesisRecord::new(spec, program))
}

/// One `R_y(-π/2)` layer per target (ascending), then one `2π` x-layer on
/// the levels reached an odd number of times.
pub fn synth_hadamard(targets: &QubitSet, shape: SystemShape) -> Result<SynthesisRecord> {
    let spec = GateSpec::Hadamard {
        targets: targets.clone(),
    };
    spec.validate(shape.qubits())?;
    let mut layers = Vec::with_capacity(targets.len() + 1);
    for &t in targets {
        let mask = shape.qubit_mask(t)?;
        layers.push(
            (0..shape.dim())
                .filter(|l| l & mask == 0)
                .map(|l| Rotation::on_pair(Axis::Y, HADAMARD_Y_EIGHTHS, l, l | mask))
                .collect(),
        );
    }
    let tmask = mask_of(shape, targets)?;
    let odd: Vec<usize> = (0..shape.dim())
        .filter(|d| (d & tmask).count_ones() % 2 == 1)
        .collect();
    layers.push(correction_layer(&odd, Axis::X, shape));
    build(shape, spec, layers)
}

/// One `R_y(-π)` layer pairing each level (lowest-indexed target bit 0) with
/// its fully flipped image, then `2π` corrections on the images.
pub fn synth_not(targets: &QubitSet, shape: SystemShape) -> Result<SynthesisRecord> {
    let spec = GateSpec::Not {
        targets: targets.clone(),
    };
    spec.validate(shape.qubits())?;
    let mask = mask_of(shape, targets)?;
    let lead = shape.qubit_mask(*targets.first().expect("validated non-empty"))?;
    let pairs: Vec<(usize, usize)> = (0..shape.dim())
        .filter(|d| d & lead == 0)
        .map(|d| (d, d ^ mask))
        .collect();
    flip_record(spec, shape, &pairs)
}

/// `R_y(-π)` between the target-0 and target-1 levels whose controls all
/// read 1, then `2π` corrections on the upper levels.
pub fn synth_cnot(
    controls: &QubitSet,
    target: usize,
    shape: SystemShape,
) -> Result<SynthesisRecord> {
    let spec = GateSpec::ControlledNot {
        controls: controls.clone(),
        target,
    };
    spec.validate(shape.qubits())?;
    let cmask = mask_of(shape, controls)?;
    let tmask = shape.qubit_mask(target)?;
    let pairs: Vec<(usize, usize)> = (0..shape.dim())
        .filter(|d| d & cmask == cmask && d & tmask == 0)
        .map(|d| (d, d | tmask))
        .collect();
    flip_record(spec, shape, &pairs)
}

fn flip_record(
    spec: GateSpec,
    shape: SystemShape,
    pairs: &[(usize, usize)],
) -> Result<SynthesisRecord> {
    let flips = pairs
        .iter()
        .map(|&(l, u)| Rotation::on_pair(Axis::Y, FLIP_Y_EIGHTHS, l, u))
        .collect();
    let uppers: Vec<usize> = pairs.iter().map(|&(_, u)| u).collect();
    build(
        shape,
        spec,
        vec![flips, correction_layer(&uppers, Axis::X, shape)],
    )
}

pub fn synth_t(target: usize, shape: SystemShape, use_ancilla: bool) -> Result<SynthesisRecord> {
    let spec = GateSpec::T { target };
    spec.validate(shape.qubits())?;
    let mask = shape.qubit_mask(target)?;
    let layer = if use_ancilla {
        (0..shape.dim())
            .filter(|a| a & mask != 0)
            .map(|a| Rotation::on_pair(Axis::Z, T_ANCILLA_Z_EIGHTHS, a, shape.ancilla()))
            .collect()
    } else {
        (0..shape.dim())
            .filter(|l| l & mask == 0)
            .map(|l| Rotation::on_pair(Axis::Z, T_PAIR_Z_EIGHTHS, l, l | mask))
            .collect()
    };
    build(shape, spec, vec![layer])
}

/// `2π` z-rotations over the levels whose action bits are all 1.
pub fn synth_mcz(
    controls: &QubitSet,
    targets: &QubitSet,
    shape: SystemShape,
) -> Result<SynthesisRecord> {
    let spec = GateSpec::ControlledZ {
        controls: controls.clone(),
        targets: targets.clone(),
    };
    spec.validate(shape.qubits())?;
    let amask = mask_of(shape, controls)? | mask_of(shape, targets)?;
    let phased: Vec<usize> = (0..shape.dim()).filter(|d| d & amask == amask).collect();
    build(shape, spec, vec![correction_layer(&phased, Axis::Z, shape)])
}

pub fn synth_gate(spec: &GateSpec, shape: SystemShape) -> Result<SynthesisRecord> {
    synth_gate_with(spec, shape, SynthOptions::default())
}

pub fn synth_gate_with(
    spec: &GateSpec,
    shape: SystemShape,
    options: SynthOptions,
) -> Result<SynthesisRecord> {
    match spec {
        GateSpec::Hadamard { targets } => synth_hadamard(targets, shape),
        GateSpec::Not { targets } => synth_not(targets, shape),
        GateSpec::T { target } => synth_t(*target, shape, options.t_uses_ancilla),
        GateSpec::ControlledNot { controls, target } => synth_cnot(controls, *target, shape),
        GateSpec::ControlledZ { controls, targets } => synth_mcz(controls, targets, shape),
    }
}

fn ket(shape: SystemShape, d: usize) -> String {
    if d == shape.ancilla() {
        return format!("|{d}>_anc");
    }
    format!("|{}>", shape.index_to_bits(d).expect("computational level"))
}

/// Human-readable pairing table: rotations per layer in application order,
/// then the image of every computational basis level.
pub fn explain(record: &SynthesisRecord) -> String {
    let shape = record.program.shape();
    let dim = shape.dim();
    let mut out = String::new();
    let _ = writeln!(out, "{} on D = {dim} (+ ancilla level {dim})", record.spec);
    let _ = writeln!(
        out,
        "rotations: {}, depth: {}, ancilla: {}",
        record.rotation_count(),
        record.depth(),
        if record.uses_ancilla { "yes" } else { "no" }
    );
    for (i, layer) in record.program.layers().iter().enumerate() {
        let body: Vec<String> = layer.iter().map(ToString::to_string).collect();
        let _ = writeln!(out, "layer {}: {{ {} }}", i + 1, body.join(" "));
    }
    let u = program_unitary(&record.program, Execution::Sequential);
    for d in 0..dim {
        let terms: Vec<String> = (0..=dim)
            .filter(|&r| u[(r, d)].norm() > 1e-12)
            .map(|r| {
                let z = u[(r, d)];
                let coeff = if (z.im).abs() < 1e-12 {
                    format!("{:+.6}", z.re)
                } else {
                    format!("({:+.6}{:+.6}i)", z.re, z.im)
                };
                format!("{coeff}|{r}>_{dim}")
            })
            .collect();
        let _ = writeln!(
            out,
            "|{d}>_{dim} = {} -> {}",
            ket(shape, d),
            terms.join(" ")
        );
    }
    out
}
