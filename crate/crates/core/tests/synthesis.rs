use std::collections::BTreeSet;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use quditc::gate::enumerate_specs;
use quditc::oracle::check_equivalence;
use quditc::schedule::validate_program;
use quditc::sim::{apply_program, program_unitary};
use quditc::synth::synth_gate;
use quditc::{Execution, GateSpec, QuditState, SystemShape};

fn shape(n: usize) -> SystemShape {
    SystemShape::new(n).unwrap()
}

/// Every spec for small n; a seeded sample of MCZ/CNOT/H/X specs above that.
fn specs_for(n: usize, rng: &mut ChaCha8Rng) -> Vec<GateSpec> {
    if n <= 5 {
        return enumerate_specs(n);
    }
    let mut specs: Vec<GateSpec> = (1..=n).map(GateSpec::t).collect();
    specs.push(GateSpec::hadamard(1..=n));
    specs.push(GateSpec::not(1..=n));
    specs.push(GateSpec::mcz_full(n));
    specs.push(GateSpec::cnot(1..n, n));
    while specs.len() < 60 {
        let roles: Vec<u8> = (0..n).map(|_| rng.gen_range(0..3)).collect();
        let pick = |r: u8| -> BTreeSet<usize> { (1..=n).filter(|&q| roles[q - 1] == r).collect() };
        let (controls, targets) = (pick(1), pick(2));
        if targets.is_empty() {
            continue;
        }
        specs.push(GateSpec::ControlledZ {
            controls: controls.clone(),
            targets: targets.clone(),
        });
        specs.push(GateSpec::Hadamard {
            targets: targets.clone(),
        });
        specs.push(GateSpec::Not {
            targets: targets.clone(),
        });
        if !controls.is_empty() {
            specs.push(GateSpec::ControlledNot {
                controls,
                target: *targets.first().unwrap(),
            });
        }
    }
    specs
}

fn random_state(shape: SystemShape, rng: &mut ChaCha8Rng) -> QuditState {
    let mut amps: Vec<Complex64> = (0..shape.dim())
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    let norm = amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    amps.iter_mut().for_each(|z| *z /= norm);
    amps.push(Complex64::new(0.0, 0.0));
    QuditState::from_amplitudes(shape, amps).unwrap()
}

#[test]
fn counts_and_depths_follow_closed_forms() {
    for n in 2..=7usize {
        let s = shape(n);
        let d = s.dim();
        for spec in enumerate_specs(n) {
            let rec = synth_gate(&spec, s).unwrap();
            let (count, depth) = (rec.rotation_count(), rec.depth());
            match &spec {
                GateSpec::Hadamard { targets } => {
                    let m = targets.len();
                    assert_eq!((count, depth), (d * (2 * m + 1) / 4, m + 1), "{spec}");
                }
                GateSpec::Not { .. } => assert_eq!((count, depth), (3 * d / 4, 2), "{spec}"),
                GateSpec::T { .. } => assert_eq!((count, depth), (d / 2, 1), "{spec}"),
                GateSpec::ControlledNot { controls, .. } => {
                    let c = controls.len();
                    let want = if n - c >= 2 {
                        3 * (1 << (n - c - 1)) / 2
                    } else {
                        2
                    };
                    assert_eq!((count, depth), (want, 2), "{spec}");
                }
                GateSpec::ControlledZ { controls, targets } => {
                    let k = controls.len() + targets.len();
                    let want = if k == n { 1 } else { 1 << (n - k - 1) };
                    assert_eq!((count, depth), (want, 1), "{spec}");
                }
            }
        }
    }
}

#[test]
fn ancilla_usage_rule() {
    for n in 1..=7usize {
        let s = shape(n);
        for spec in enumerate_specs(n) {
            let rec = synth_gate(&spec, s).unwrap();
            let expected = match &spec {
                GateSpec::T { .. } => true,
                GateSpec::ControlledNot { controls, .. } => n - controls.len() - 1 == 0,
                GateSpec::ControlledZ { controls, targets } => controls.len() + targets.len() == n,
                GateSpec::Hadamard { .. } | GateSpec::Not { .. } => n == 1,
            };
            assert_eq!(rec.uses_ancilla, expected, "{spec} n={n}");
            assert_eq!(rec.uses_ancilla, rec.program.touches_ancilla());
        }
    }
}

#[test]
fn every_synthesized_layer_commutes() {
    for n in 1..=6usize {
        for spec in enumerate_specs(n) {
            let rec = synth_gate(&spec, shape(n)).unwrap();
            assert!(validate_program(&rec.program).is_ok(), "{spec} n={n}");
        }
    }
}

#[test]
fn qubit_oracle_equivalence_up_to_five_qubits() {
    for n in 1..=5usize {
        for spec in enumerate_specs(n) {
            let rec = synth_gate(&spec, shape(n)).unwrap();
            let res = check_equivalence(&rec).unwrap();
            assert!(res.equal, "{spec} n={n}: {res:?}");
            assert!(res.ancilla_decoupled);
        }
    }
}

#[test]
fn synthesized_unitaries_are_unitary() {
    for n in 1..=5usize {
        let size = shape(n).total_levels();
        let id = DMatrix::<Complex64>::identity(size, size);
        for spec in enumerate_specs(n) {
            let u = program_unitary(
                &synth_gate(&spec, shape(n)).unwrap().program,
                Execution::Sequential,
            );
            let dev = (u.adjoint() * &u - &id)
                .iter()
                .map(|z| z.norm())
                .fold(0.0, f64::max);
            assert!(dev < 1e-10, "{spec}");
        }
    }
}

#[test]
fn ancilla_stays_empty_and_norm_is_kept() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for n in 1..=7usize {
        let s = shape(n);
        let specs = specs_for(n, &mut rng);
        let states: Vec<QuditState> = (0..100).map(|_| random_state(s, &mut rng)).collect();
        for spec in &specs {
            let rec = synth_gate(spec, s).unwrap();
            for st in &states {
                let out = apply_program(st, &rec.program).unwrap();
                assert!(out.ancilla_amplitude().norm() < 1e-12, "{spec} n={n}");
                assert!((out.norm() - 1.0).abs() < 1e-10);
            }
        }
    }
}

#[test]
fn simulation_matches_unitary_action() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for n in 1..=4usize {
        let s = shape(n);
        for spec in enumerate_specs(n) {
            let rec = synth_gate(&spec, s).unwrap();
            let u = program_unitary(&rec.program, Execution::Parallel);
            let st = random_state(s, &mut rng);
            let v = nalgebra::DVector::from_column_slice(st.amplitudes());
            let want = &u * v;
            let got = apply_program(&st, &rec.program).unwrap();
            for (a, b) in got.amplitudes().iter().zip(want.iter()) {
                assert!((a - b).norm() < 1e-10);
            }
        }
    }
}

#[test]
fn layer_permutations_do_not_change_the_output() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for n in 2..=5usize {
        let s = shape(n);
        for spec in enumerate_specs(n).into_iter().step_by(7) {
            let rec = synth_gate(&spec, s).unwrap();
            let st = random_state(s, &mut rng);
            let reference = apply_program(&st, &rec.program).unwrap();
            let mut shuffled = rec.program.clone().into_layers();
            for layer in &mut shuffled {
                for i in (1..layer.len()).rev() {
                    let j = rng.gen_range(0..=i);
                    layer.swap(i, j);
                }
            }
            let p = quditc::RotationProgram::from_layers(s, shuffled).unwrap();
            let out = apply_program(&st, &p).unwrap();
            let dev = out
                .amplitudes()
                .iter()
                .zip(reference.amplitudes())
                .map(|(a, b)| (a - b).norm())
                .fold(0.0, f64::max);
            assert!(dev < 1e-12, "{spec}");
        }
    }
}

#[test]
fn gate_examples_on_basis_states() {
    let s = shape(3);
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let out = apply_program(
        &QuditState::ground(s),
        &synth_gate(&GateSpec::hadamard([1]), s).unwrap().program,
    )
    .unwrap();
    assert!((out.amplitude(0) - Complex64::new(h, 0.0)).norm() < 1e-12);
    assert!((out.amplitude(4) - Complex64::new(h, 0.0)).norm() < 1e-12);

    let out = apply_program(
        &QuditState::ground(s),
        &synth_gate(&GateSpec::not([1, 2]), s).unwrap().program,
    )
    .unwrap();
    assert!((out.amplitude(6) - Complex64::new(1.0, 0.0)).norm() < 1e-12);

    let t = synth_gate(&GateSpec::t(2), s).unwrap();
    let out = apply_program(&QuditState::ground(s), &t.program).unwrap();
    assert!((out.amplitude(0) - Complex64::new(1.0, 0.0)).norm() < 1e-12);
}

#[test]
fn repeated_application_orders() {
    // X, CNOT and H square to I; T has order 8.
    for n in 1..=4usize {
        let s = shape(n);
        let size = s.total_levels();
        for spec in enumerate_specs(n) {
            let rec = synth_gate(&spec, s).unwrap();
            let order = if matches!(spec, GateSpec::T { .. }) {
                8
            } else {
                2
            };
            let u = program_unitary(&rec.program, Execution::Sequential);
            let mut p = DMatrix::<Complex64>::identity(size, size);
            for _ in 0..order {
                p = &u * p;
            }
            let block = p.view((0, 0), (s.dim(), s.dim())).clone_owned();
            let dev = (block - DMatrix::<Complex64>::identity(s.dim(), s.dim()))
                .iter()
                .map(|z| z.norm())
                .fold(0.0, f64::max);
            assert!(dev < 1e-10, "{spec}");
        }
    }
}
