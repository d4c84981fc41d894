use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use quditc::gate::enumerate_specs;
use quditc::grover::build_grover;
use quditc::schedule::{concat, merge_adjacent, metrics, validate_program, CompiledCircuit};
use quditc::sim::program_unitary;
use quditc::synth::synth_gate;
use quditc::{Execution, GateSpec, SystemShape};

fn max_dev(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> f64 {
    (a - b).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn random_circuit(n: usize, len: usize, rng: &mut ChaCha8Rng) -> (Vec<GateSpec>, CompiledCircuit) {
    let shape = SystemShape::new(n).unwrap();
    let all = enumerate_specs(n);
    let specs: Vec<GateSpec> = (0..len)
        .map(|_| all[rng.gen_range(0..all.len())].clone())
        .collect();
    let records: Vec<_> = specs
        .iter()
        .map(|s| synth_gate(s, shape).unwrap())
        .collect();
    let circuit = CompiledCircuit::from_records(
        specs.iter().map(ToString::to_string).zip(records.iter()),
        shape,
    )
    .unwrap();
    (specs, circuit)
}

#[test]
fn merging_preserves_unitaries() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for i in 0..50 {
        let n = 3 + i % 2;
        let (_, circuit) = random_circuit(n, 2 + i % 7, &mut rng);
        let merged = merge_adjacent(&circuit.program);
        assert!(validate_program(&merged).is_ok());
        assert!(merged.depth() <= circuit.program.depth());
        assert_eq!(merged.rotation_count(), circuit.program.rotation_count());
        let a = program_unitary(&circuit.program, Execution::Sequential);
        let b = program_unitary(&merged, Execution::Sequential);
        assert!(max_dev(&a, &b) < 1e-10);
    }
}

#[test]
fn circuit_depth_is_sum_of_gate_depths() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for n in 2..=5 {
        let (specs, circuit) = random_circuit(n, 12, &mut rng);
        let expected: usize = specs
            .iter()
            .map(|s| match s {
                GateSpec::Hadamard { targets } => targets.len() + 1,
                GateSpec::Not { .. } | GateSpec::ControlledNot { .. } => 2,
                GateSpec::T { .. } | GateSpec::ControlledZ { .. } => 1,
            })
            .sum();
        let m = circuit.metrics();
        assert_eq!(m.depth, expected);
        assert_eq!(m.per_gate.len(), specs.len());
        assert_eq!(
            m.per_gate.iter().map(|g| g.rotation_count).sum::<usize>(),
            m.rotation_count
        );
        let programs: Vec<_> = specs
            .iter()
            .map(|s| synth_gate(s, SystemShape::new(n).unwrap()).unwrap().program)
            .collect();
        assert_eq!(concat(&programs).unwrap(), circuit.program);
    }
}

#[test]
fn metrics_examples() {
    let s = SystemShape::new(3).unwrap();
    let rec = synth_gate(&GateSpec::hadamard([1, 2, 3]), s).unwrap();
    let m = metrics(&rec.program, &[]);
    assert_eq!((m.rotation_count, m.depth), (14, 4));
    for n in 1..=7 {
        let rec = synth_gate(&GateSpec::mcz_full(n), SystemShape::new(n).unwrap()).unwrap();
        let m = metrics(&rec.program, &[]);
        assert_eq!((m.rotation_count, m.depth), (1, 1));
    }
}

#[test]
fn merged_grover_is_no_deeper() {
    let circuit = build_grover(3, 7, 2).unwrap();
    let merged = merge_adjacent(&circuit.program);
    assert!(merged.depth() <= 32);
    let a = program_unitary(&circuit.program, Execution::Sequential);
    let b = program_unitary(&merged, Execution::Sequential);
    assert!(max_dev(&a, &b) < 1e-10);
}
