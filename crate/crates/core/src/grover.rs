//! Grover search on a single qudit.
//!
//! Circuit: multi-action H on all qubits, then `t` rounds of
//! oracle (full MCZ, X-wrapped on the zero bits of the marked string) and
//! diffusion (H, X, MCZ, X, H). The diffusion realises `I - 2|s⟩⟨s|`,
//! which is the textbook operator up to a global sign.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::basis::SystemShape;
use crate::error::{QuditError, Result};
use crate::exec::Execution;
use crate::format::fmt_float;
use crate::gate::GateSpec;
use crate::oracle::qubit_grover_depth;
use crate::schedule::CompiledCircuit;
use crate::sim::QuditState;
use crate::synth::{synth_gate, SynthesisRecord};

/// `asin(1/√D)`.
pub fn grover_angle(n: usize) -> f64 {
    (1.0 / ((1u64 << n) as f64).sqrt()).asin()
}

/// `round(π/(4θ) - 1/2)`: the first maximum of the success amplitude.
pub fn optimal_iterations(n: usize) -> Result<usize> {
    if n < 2 {
        return Err(QuditError::Unsupported(format!(
            "Grover search needs at least 2 qubits, got {n}"
        )));
    }
    let theta = grover_angle(n);
    Ok((std::f64::consts::PI / (4.0 * theta) - 0.5).round() as usize)
}

/// Marked amplitude `sin((2t+1)θ)` and its square.
pub fn theoretical_success(n: usize, t: usize) -> (f64, f64) {
    let amplitude = ((2 * t + 1) as f64 * grover_angle(n)).sin();
    (amplitude, amplitude * amplitude)
}

/// Closed-form qudit depth for the all-ones oracle.
pub fn qudit_grover_depth(n: usize, t: usize) -> usize {
    t * (2 * n + 8) + n + 1
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Iterations {
    Auto,
    Fixed(usize),
}

impl std::str::FromStr for Iterations {
    type Err = QuditError;

    fn from_str(s: &str) -> Result<Self> {
        if s == "auto" {
            return Ok(Iterations::Auto);
        }
        match s.parse::<usize>() {
            Ok(0) => Err(QuditError::ZeroIterations),
            Ok(t) => Ok(Iterations::Fixed(t)),
            Err(_) => Err(QuditError::Unsupported(format!(
                "bad iteration count {s:?}"
            ))),
        }
    }
}

fn check_args(n: usize, marked: usize, t: usize) -> Result<SystemShape> {
    if n < 2 {
        return Err(QuditError::Unsupported(format!(
            "Grover search needs at least 2 qubits, got {n}"
        )));
    }
    let shape = SystemShape::new(n)?;
    if marked >= shape.dim() {
        return Err(QuditError::LevelOutOfRange {
            level: marked,
            levels: shape.dim(),
        });
    }
    if t == 0 {
        return Err(QuditError::ZeroIterations);
    }
    Ok(shape)
}

/// Full Grover circuit with one labelled segment per gate.
pub fn build_grover(n: usize, marked: usize, t: usize) -> Result<CompiledCircuit> {
    let shape = check_args(n, marked, t)?;
    let all: Vec<usize> = (1..=n).collect();
    let zero_bits: Vec<usize> = (1..=n)
        .filter(|&q| !shape.bit(marked, q).unwrap())
        .collect();

    let h = synth_gate(&GateSpec::hadamard(all.clone()), shape)?;
    let x = synth_gate(&GateSpec::not(all), shape)?;
    let mcz = synth_gate(&GateSpec::mcz_full(n), shape)?;
    let wrap = if zero_bits.is_empty() {
        None
    } else {
        Some(synth_gate(&GateSpec::not(zero_bits), shape)?)
    };

    let mut gates: Vec<(String, &SynthesisRecord)> = vec![("init/H".into(), &h)];
    for i in 1..=t {
        if let Some(w) = &wrap {
            gates.push((format!("iter{i}/oracle/X"), w));
        }
        gates.push((format!("iter{i}/oracle/MCZ"), &mcz));
        if let Some(w) = &wrap {
            gates.push((format!("iter{i}/oracle/X"), w));
        }
        gates.push((format!("iter{i}/diffusion/H"), &h));
        gates.push((format!("iter{i}/diffusion/X"), &x));
        gates.push((format!("iter{i}/diffusion/MCZ"), &mcz));
        gates.push((format!("iter{i}/diffusion/X"), &x));
        gates.push((format!("iter{i}/diffusion/H"), &h));
    }
    CompiledCircuit::from_records(gates, shape)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroverReport {
    pub n: usize,
    pub d: usize,
    pub marked: usize,
    pub marked_bits: String,
    pub iterations: usize,
    pub qudit_depth: usize,
    pub qudit_rotation_count: usize,
    /// `None` below 3 qubits, where the linear model is undefined.
    pub qubit_depth_linear: Option<usize>,
    pub theoretical_amplitude: f64,
    pub theoretical_probability: f64,
    pub simulated_probability: f64,
    /// Largest ancilla amplitude seen at any gate boundary.
    pub max_ancilla_amplitude: f64,
    pub final_norm: f64,
}

/// Simulates the Grover circuit from the ground state.
pub fn run_grover(n: usize, marked: usize, iterations: Iterations) -> Result<GroverReport> {
    let t = match iterations {
        Iterations::Auto => optimal_iterations(n)?,
        Iterations::Fixed(t) => t,
    };
    let circuit = build_grover(n, marked, t)?;
    let shape = circuit.program.shape();
    let mut state = QuditState::ground(shape);
    let mut max_ancilla: f64 = 0.0;
    for seg in &circuit.segments {
        for layer in &circuit.program.layers()[seg.layers.clone()] {
            state.apply_layer_in_place(layer)?;
        }
        max_ancilla = max_ancilla.max(state.ancilla_amplitude().norm());
    }
    let (amplitude, probability) = theoretical_success(n, t);
    Ok(GroverReport {
        n,
        d: shape.dim(),
        marked,
        marked_bits: shape.index_to_bits(marked)?.to_string(),
        iterations: t,
        qudit_depth: circuit.program.depth(),
        qudit_rotation_count: circuit.program.rotation_count(),
        qubit_depth_linear: qubit_grover_depth(n, t).ok(),
        theoretical_amplitude: amplitude,
        theoretical_probability: probability,
        simulated_probability: state.probabilities()[marked],
        max_ancilla_amplitude: max_ancilla,
        final_norm: state.norm(),
    })
}

/// One auto-iteration row per qubit count, all-ones marked level.
pub fn comparison_table(ns: &[usize], exec: Execution) -> Result<Vec<GroverReport>> {
    exec.map(ns, |&n| {
        let marked = SystemShape::new(n)?.dim() - 1;
        run_grover(n, marked, Iterations::Auto)
    })
    .into_iter()
    .collect()
}

/// Runs every `(n, marked, t)` job; results come back in job order.
pub fn grover_sweep(jobs: &[(usize, usize, usize)], exec: Execution) -> Result<Vec<GroverReport>> {
    exec.map(jobs, |&(n, marked, t)| {
        run_grover(n, marked, Iterations::Fixed(t))
    })
    .into_iter()
    .collect()
}

pub const TABLE_HEADER: &str = "n,d,iterations,amplitude_pct,theoretical_amplitude,theoretical_probability,simulated_probability,qudit_depth,qubit_depth_linear,qudit_rotation_count";

pub fn table_csv(rows: &[GroverReport], digits: usize) -> String {
    let mut out = String::from(TABLE_HEADER);
    out.push('\n');
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{:.2},{},{},{},{},{},{}",
            r.n,
            r.d,
            r.iterations,
            r.theoretical_amplitude * 100.0,
            fmt_float(r.theoretical_amplitude, digits),
            fmt_float(r.theoretical_probability, digits),
            fmt_float(r.simulated_probability, digits),
            r.qudit_depth,
            r.qubit_depth_linear
                .map_or(String::new(), |d| d.to_string()),
            r.qudit_rotation_count,
        );
    }
    out
}

pub fn table_markdown(rows: &[GroverReport], digits: usize) -> String {
    let mut out = String::from(
        "| N (D) | t | amplitude | probability (theory) | probability (simulated) | qudit depth | qubit depth |\n\
         |---|---|---|---|---|---|---|\n",
    );
    for r in rows {
        let _ = writeln!(
            out,
            "| {} ({}) | {} | {:.2}% | {} | {} | {} | {} |",
            r.n,
            r.d,
            r.iterations,
            r.theoretical_amplitude * 100.0,
            fmt_float(r.theoretical_probability, digits),
            fmt_float(r.simulated_probability, digits),
            r.qudit_depth,
            r.qubit_depth_linear
                .map_or("-".to_string(), |d| d.to_string()),
        );
    }
    out
}
