//! Reference qubit-basis matrices and equivalence checks.
//!
//! Gate matrices are assembled from 2x2 factors with `kronecker`, `q_1`
//! being the leftmost (most significant) factor. Nothing here reuses the
//! level-pairing logic of [`crate::synth`].

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::basis::SystemShape;
use crate::error::{QuditError, Result};
use crate::exec::Execution;
use crate::gate::{enumerate_specs, GateSpec};
use crate::schedule::validate_program;
use crate::sim::program_unitary;
use crate::synth::{synth_gate_with, SynthOptions, SynthesisRecord};

pub const EQUIVALENCE_TOLERANCE: f64 = 1e-10;
const ANCILLA_TOLERANCE: f64 = 1e-12;

type CMatrix = DMatrix<Complex64>;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn two_by_two(a: Complex64, b: Complex64, cc: Complex64, d: Complex64) -> CMatrix {
    DMatrix::from_row_slice(2, 2, &[a, b, cc, d])
}

fn identity2() -> CMatrix {
    DMatrix::identity(2, 2)
}

fn hadamard2() -> CMatrix {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    two_by_two(c(h, 0.), c(h, 0.), c(h, 0.), c(-h, 0.))
}

fn pauli_x2() -> CMatrix {
    two_by_two(c(0., 0.), c(1., 0.), c(1., 0.), c(0., 0.))
}

fn t2() -> CMatrix {
    let phase = Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_4);
    two_by_two(c(1., 0.), c(0., 0.), c(0., 0.), phase)
}

fn proj_one2() -> CMatrix {
    two_by_two(c(0., 0.), c(0., 0.), c(0., 0.), c(1., 0.))
}

/// Kronecker product over qubits `1..=n` of `factor(q)`.
fn tensor(n: usize, factor: impl Fn(usize) -> CMatrix) -> CMatrix {
    (2..=n).fold(factor(1), |acc, q| acc.kronecker(&factor(q)))
}

/// Exact `2^n x 2^n` matrix of `spec` in the qubit basis.
pub fn qubit_gate_matrix(spec: &GateSpec, n: usize) -> Result<CMatrix> {
    SystemShape::new(n)?;
    spec.validate(n)?;
    let dim = 1usize << n;
    let id = CMatrix::identity(dim, dim);
    let m = match spec {
        GateSpec::Hadamard { targets } => tensor(n, |q| {
            if targets.contains(&q) {
                hadamard2()
            } else {
                identity2()
            }
        }),
        GateSpec::Not { targets } => tensor(n, |q| {
            if targets.contains(&q) {
                pauli_x2()
            } else {
                identity2()
            }
        }),
        GateSpec::T { target } => tensor(n, |q| if q == *target { t2() } else { identity2() }),
        GateSpec::ControlledNot { controls, target } => {
            // I + P1(controls) ⊗ (X - I)(target)
            let flip = tensor(n, |q| {
                if controls.contains(&q) {
                    proj_one2()
                } else if q == *target {
                    pauli_x2() - identity2()
                } else {
                    identity2()
                }
            });
            id + flip
        }
        GateSpec::ControlledZ { controls, targets } => {
            // I - 2 P1(all action qubits)
            let all_one = tensor(n, |q| {
                if controls.contains(&q) || targets.contains(&q) {
                    proj_one2()
                } else {
                    identity2()
                }
            });
            id - all_one * c(2.0, 0.0)
        }
    };
    Ok(m)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EquivalenceResult {
    /// Exact equality on the computational block, no global phase, with the
    /// ancilla decoupled.
    pub equal: bool,
    pub max_abs_deviation: f64,
    /// `q` with `q · U_qudit ≈ U_qubit`, when one exists.
    pub global_phase: Option<Complex64>,
    pub ancilla_decoupled: bool,
}

/// Compares a qudit unitary's computational block with a qubit matrix.
pub fn compare_unitaries(qudit: &CMatrix, qubit: &CMatrix) -> EquivalenceResult {
    let dim = qubit.nrows();
    let block = qudit.view((0, 0), (dim, dim));
    let max_abs_deviation = block
        .iter()
        .zip(qubit.iter())
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max);

    let anc = dim;
    let ancilla_decoupled = (0..dim).all(|i| {
        qudit[(anc, i)].norm() < ANCILLA_TOLERANCE && qudit[(i, anc)].norm() < ANCILLA_TOLERANCE
    }) && (qudit[(anc, anc)].norm() - 1.0).abs() < ANCILLA_TOLERANCE;

    let (pivot, _) = qubit
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.norm().total_cmp(&b.1.norm()))
        .expect("non-empty matrix");
    let global_phase = (block.iter().nth(pivot).map_or(0.0, |z| z.norm()) > ANCILLA_TOLERANCE)
        .then(|| {
            let q = qubit.iter().nth(pivot).unwrap() / block.iter().nth(pivot).unwrap();
            q / q.norm()
        })
        .filter(|q| {
            block
                .iter()
                .zip(qubit.iter())
                .all(|(a, b)| (q * a - b).norm() < EQUIVALENCE_TOLERANCE)
        });

    EquivalenceResult {
        equal: max_abs_deviation < EQUIVALENCE_TOLERANCE && ancilla_decoupled,
        max_abs_deviation,
        global_phase,
        ancilla_decoupled,
    }
}

pub fn check_equivalence(record: &SynthesisRecord) -> Result<EquivalenceResult> {
    let n = record.program.shape().qubits();
    let qubit = qubit_gate_matrix(&record.spec, n)?;
    let qudit = program_unitary(&record.program, Execution::Sequential);
    Ok(compare_unitaries(&qudit, &qubit))
}

/// Qubit Grover depth under the linear-depth multi-controlled Z model:
/// oracle `8N - 20`, diffusion `8N - 14`, plus the initial H layer.
pub fn qubit_grover_depth(n: usize, t: usize) -> Result<usize> {
    if n < 3 {
        return Err(QuditError::Unsupported(format!(
            "linear qubit depth model needs at least 3 qubits, got {n}"
        )));
    }
    if t == 0 {
        return Err(QuditError::ZeroIterations);
    }
    Ok(t * (16 * n - 34) + 2)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyEntry {
    pub n: usize,
    pub gate: String,
    pub rotation_count: usize,
    pub depth: usize,
    pub layers_commute: bool,
    #[serde(flatten)]
    pub result: EquivalenceResult,
}

impl VerifyEntry {
    pub fn passed(&self) -> bool {
        self.layers_commute && self.result.equal
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub checked: usize,
    pub failed: usize,
    pub entries: Vec<VerifyEntry>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.failed == 0
    }
}

/// Synthesises and checks every gate spec for every `n` in `ns`.
pub fn verify_sweep(ns: &[usize], exec: Execution) -> Result<VerifyReport> {
    let mut jobs = Vec::new();
    for &n in ns {
        SystemShape::new(n)?;
        jobs.extend(enumerate_specs(n).into_iter().map(|s| (n, s)));
    }
    let entries = exec
        .map(&jobs, |(n, spec)| -> Result<VerifyEntry> {
            let shape = SystemShape::new(*n)?;
            let record = synth_gate_with(spec, shape, SynthOptions::default())?;
            Ok(VerifyEntry {
                n: *n,
                gate: spec.to_string(),
                rotation_count: record.rotation_count(),
                depth: record.depth(),
                layers_commute: validate_program(&record.program).is_ok(),
                result: check_equivalence(&record)?,
            })
        })
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    let failed = entries.iter().filter(|e| !e.passed()).count();
    Ok(VerifyReport {
        checked: entries.len(),
        failed,
        entries,
    })
}
