use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use quditc::grover::{comparison_table, run_grover, table_csv, table_markdown, Iterations};
use quditc::oracle::verify_sweep;
use quditc::schedule::{merge_adjacent, metrics, validate_program, CompiledCircuit, DepthMetrics};
use quditc::synth::{explain, synth_gate_with};
use quditc::{
    bits_to_index, BitString, Execution, GateSpec, QuditState, RotationProgram, SynthOptions,
    SystemShape,
};

use crate::output::{metrics_table, probabilities_csv, state_json, to_json};
use crate::{CliError, Format, TableFormat};

/// Circuit file: `{"n": 3, "gates": [{"h":{"targets":[1,2,3]}}, ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CircuitFile {
    pub n: usize,
    pub gates: Vec<GateSpec>,
}

impl CircuitFile {
    pub fn compile(&self) -> Result<CompiledCircuit, CliError> {
        let shape = SystemShape::new(self.n)?;
        let records = self
            .gates
            .iter()
            .map(|g| synth_gate_with(g, shape, SynthOptions::default()))
            .collect::<Result<Vec<_>, _>>()?;
        let labels = self.gates.iter().map(ToString::to_string);
        Ok(CompiledCircuit::from_records(
            labels.zip(records.iter()),
            shape,
        )?)
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text)
        .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display())))
}

fn parse_json<T: for<'de> Deserialize<'de>>(text: &str, what: &str) -> Result<T, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Usage(format!("invalid {what}: {e}")))
}

fn load_state(path: Option<&Path>, shape: SystemShape) -> Result<QuditState, CliError> {
    match path {
        None => Ok(QuditState::ground(shape)),
        Some(p) => {
            let pairs: Vec<[f64; 2]> = parse_json(&read(p)?, "state")?;
            Ok(QuditState::from_pairs(shape, &pairs)?)
        }
    }
}

fn check_layers(program: &RotationProgram) -> Result<(), CliError> {
    validate_program(program).map_err(|e| CliError::Validation {
        message: e.to_string(),
        output: String::new(),
    })
}

pub fn synth(
    gate: &str,
    n: usize,
    format: Format,
    explain_table: bool,
    no_ancilla: bool,
    out: Option<&Path>,
) -> Result<String, CliError> {
    let spec: GateSpec = parse_json(gate, "gate")?;
    let shape = SystemShape::new(n)?;
    let record = synth_gate_with(
        &spec,
        shape,
        SynthOptions {
            t_uses_ancilla: !no_ancilla,
        },
    )?;
    let json = to_json(&record, crate::output::float_digits()?);
    if let Some(path) = out {
        write(path, &json)?;
    }
    let mut text = match format {
        Format::Json => json,
        Format::Table => {
            let mut t = format!(
                "{} on n = {n}: {} rotations, depth {}\n",
                record.spec,
                record.rotation_count(),
                record.depth()
            );
            for (i, layer) in record.program.layers().iter().enumerate() {
                let body: Vec<String> = layer.iter().map(ToString::to_string).collect();
                let _ = writeln!(t, "layer {}: {{ {} }}", i + 1, body.join(" "));
            }
            t
        }
    };
    if explain_table {
        text.push_str(&explain(&record));
    }
    Ok(text)
}

#[derive(Serialize)]
struct RunOutput<'a> {
    metrics: &'a DepthMetrics,
    probabilities: Vec<f64>,
    state: Vec<[f64; 2]>,
}

fn emit_state(
    state: &QuditState,
    metrics: &DepthMetrics,
    state_out: Option<&Path>,
    probs_out: Option<&Path>,
    format: Format,
    digits: usize,
) -> Result<String, CliError> {
    if let Some(p) = state_out {
        write(p, &state_json(state, digits))?;
    }
    if let Some(p) = probs_out {
        write(p, &probabilities_csv(state, digits))?;
    }
    Ok(match format {
        Format::Json => to_json(
            &RunOutput {
                metrics,
                probabilities: state.probabilities(),
                state: state.to_pairs(),
            },
            digits,
        ),
        Format::Table => format!(
            "{}\n{}",
            metrics_table(metrics),
            probabilities_csv(state, digits)
        ),
    })
}

pub fn run(
    circuit: &Path,
    state: Option<&Path>,
    state_out: Option<&Path>,
    probs_out: Option<&Path>,
    format: Format,
    digits: usize,
) -> Result<String, CliError> {
    let file: CircuitFile = parse_json(&read(circuit)?, "circuit")?;
    let compiled = file.compile()?;
    check_layers(&compiled.program)?;
    let mut st = load_state(state, compiled.program.shape())?;
    st.apply_program_in_place(&compiled.program)?;
    emit_state(
        &st,
        &compiled.metrics(),
        state_out,
        probs_out,
        format,
        digits,
    )
}

pub fn simulate(
    program: &Path,
    state: Option<&Path>,
    state_out: Option<&Path>,
    probs_out: Option<&Path>,
    digits: usize,
) -> Result<String, CliError> {
    let program: RotationProgram = parse_json(&read(program)?, "program")?;
    check_layers(&program)?;
    let mut st = load_state(state, program.shape())?;
    st.apply_program_in_place(&program)?;
    if state_out.is_none() && probs_out.is_none() {
        return Ok(state_json(&st, digits));
    }
    if let Some(p) = state_out {
        write(p, &state_json(&st, digits))?;
    }
    let csv = probabilities_csv(&st, digits);
    if let Some(p) = probs_out {
        write(p, &csv)?;
    }
    Ok(csv)
}

pub fn depth(
    program: Option<&Path>,
    circuit: Option<&Path>,
    merge: bool,
    format: Format,
) -> Result<String, CliError> {
    let (program, segments) = match (program, circuit) {
        (Some(p), _) => (
            parse_json::<RotationProgram>(&read(p)?, "program")?,
            Vec::new(),
        ),
        (None, Some(c)) => {
            let compiled = parse_json::<CircuitFile>(&read(c)?, "circuit")?.compile()?;
            (compiled.program, compiled.segments)
        }
        (None, None) => return Err(CliError::Usage("need --program or --circuit".into())),
    };
    check_layers(&program)?;
    let m = if merge {
        // gate boundaries no longer line up after merging
        metrics(&merge_adjacent(&program), &[])
    } else {
        metrics(&program, &segments)
    };
    Ok(match format {
        Format::Json => to_json(&m, 12),
        Format::Table => metrics_table(&m),
    })
}

pub fn grover(
    n: usize,
    marked: Option<&str>,
    iterations: &str,
    format: Format,
    digits: usize,
) -> Result<String, CliError> {
    let shape = SystemShape::new(n)?;
    let marked = match marked {
        None => shape.dim() - 1,
        Some(s) => {
            let bits: BitString = s.parse()?;
            if bits.len() != n {
                return Err(CliError::Usage(format!(
                    "marked string {s:?} must have {n} bits"
                )));
            }
            bits_to_index(&bits)
        }
    };
    let iterations: Iterations = iterations.parse()?;
    let report = run_grover(n, marked, iterations)?;
    Ok(match format {
        Format::Json => to_json(&report, digits),
        Format::Table => {
            let f = |x: f64| quditc::format::fmt_float(x, digits);
            let mut t = String::new();
            let _ = writeln!(t, "qubits (N)              {}", report.n);
            let _ = writeln!(t, "levels (D)              {} + ancilla", report.d);
            let _ = writeln!(
                t,
                "marked                  {} (|{}>)",
                report.marked, report.marked_bits
            );
            let _ = writeln!(t, "iterations              {}", report.iterations);
            let _ = writeln!(t, "qudit depth             {}", report.qudit_depth);
            let _ = writeln!(t, "qudit rotations         {}", report.qudit_rotation_count);
            let _ = writeln!(
                t,
                "qubit depth (linear)    {}",
                report
                    .qubit_depth_linear
                    .map_or("n/a".into(), |d| d.to_string())
            );
            let _ = writeln!(
                t,
                "marked amplitude        {}",
                f(report.theoretical_amplitude)
            );
            let _ = writeln!(
                t,
                "success (theory)        {}",
                f(report.theoretical_probability)
            );
            let _ = writeln!(
                t,
                "success (simulated)     {}",
                f(report.simulated_probability)
            );
            t
        }
    })
}

pub fn table(
    n_min: usize,
    n_max: usize,
    out: Option<&Path>,
    format: TableFormat,
    digits: usize,
) -> Result<String, CliError> {
    if n_min < 2 || n_min > n_max {
        return Err(CliError::Usage(format!(
            "need 2 <= n-min <= n-max, got {n_min}..{n_max}"
        )));
    }
    let ns: Vec<usize> = (n_min..=n_max).collect();
    let rows = comparison_table(&ns, Execution::default())?;
    let csv = table_csv(&rows, digits);
    if let Some(p) = out {
        write(p, &csv)?;
    }
    Ok(match format {
        TableFormat::Csv => csv,
        TableFormat::Markdown => table_markdown(&rows, digits),
    })
}

/// Parses `4`, `2..5` or `2..=5` (both inclusive).
pub fn parse_n_range(s: &str) -> Result<Vec<usize>, CliError> {
    let bad = || CliError::Usage(format!("bad qubit range {s:?}"));
    let (lo, hi) = match s.split_once("..") {
        None => {
            let n = s.trim().parse().map_err(|_| bad())?;
            (n, n)
        }
        Some((a, b)) => (
            a.trim().parse().map_err(|_| bad())?,
            b.trim()
                .trim_start_matches('=')
                .parse()
                .map_err(|_| bad())?,
        ),
    };
    if lo == 0 || lo > hi {
        return Err(bad());
    }
    Ok((lo..=hi).collect())
}

pub fn verify(
    n: &str,
    format: Format,
    json_out: Option<&Path>,
    sequential: bool,
    digits: usize,
) -> Result<String, CliError> {
    let ns = parse_n_range(n)?;
    let exec = if sequential {
        Execution::Sequential
    } else {
        Execution::default()
    };
    let report = verify_sweep(&ns, exec)?;
    let json = to_json(&report, digits);
    if let Some(p) = json_out {
        write(p, &json)?;
    }
    let text = match format {
        Format::Json => json,
        Format::Table => {
            let mut t = String::new();
            for &n in &ns {
                let entries: Vec<_> = report.entries.iter().filter(|e| e.n == n).collect();
                let failed = entries.iter().filter(|e| !e.passed()).count();
                let worst = entries
                    .iter()
                    .map(|e| e.result.max_abs_deviation)
                    .fold(0.0, f64::max);
                let _ = writeln!(
                    t,
                    "n={n}: {} gates, {} failed, max deviation {}",
                    entries.len(),
                    failed,
                    quditc::format::fmt_float(worst, 3)
                );
            }
            for e in report.entries.iter().filter(|e| !e.passed()) {
                let _ = writeln!(
                    t,
                    "FAIL n={} {} deviation {}",
                    e.n, e.gate, e.result.max_abs_deviation
                );
            }
            let _ = writeln!(
                t,
                "{}: {} checked, {} failed",
                if report.passed() { "PASS" } else { "FAIL" },
                report.checked,
                report.failed
            );
            t
        }
    };
    if report.passed() {
        Ok(text)
    } else {
        Err(CliError::Validation {
            message: format!(
                "{} of {} gates differ from the qubit oracle",
                report.failed, report.checked
            ),
            output: text,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_n_range("4").unwrap(), vec![4]);
        assert_eq!(parse_n_range("2..5").unwrap(), vec![2, 3, 4, 5]);
        assert_eq!(parse_n_range("2..=3").unwrap(), vec![2, 3]);
        assert!(parse_n_range("5..2").is_err());
        assert!(parse_n_range("0").is_err());
        assert!(parse_n_range("x").is_err());
    }

    #[test]
    fn circuit_file_round_trip() {
        let text =
            r#"{"n":3,"gates":[{"h":{"targets":[1,2,3]}},{"cnot":{"controls":[1],"target":3}}]}"#;
        let file: CircuitFile = serde_json::from_str(text).unwrap();
        assert_eq!(serde_json::to_string(&file).unwrap(), text);
        let compiled = file.compile().unwrap();
        assert_eq!(compiled.program.depth(), 4 + 2);
    }

    #[test]
    fn invalid_circuit_specs_are_usage_errors() {
        let file = CircuitFile {
            n: 2,
            gates: vec![GateSpec::hadamard([3])],
        };
        assert!(matches!(file.compile(), Err(CliError::Usage(_))));
    }
}
