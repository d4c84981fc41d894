//! Layer validation, depth accounting and optional cross-gate merging.

use std::ops::Range;

use nalgebra::Matrix4;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::{QuditError, Result};
use crate::rotation::{Layer, Rotation, RotationProgram};
use crate::synth::SynthesisRecord;

const COMMUTATOR_TOLERANCE: f64 = 1e-12;

/// Embeds `r` into the joint subspace spanned by `levels` (at most 4).
fn embed(r: &Rotation, levels: &[usize]) -> Matrix4<Complex64> {
    let mut m = Matrix4::<Complex64>::identity();
    let (j, k) = r.levels();
    let pos = |l: usize| levels.iter().position(|&x| x == l).expect("level in union");
    let (pj, pk) = (pos(j), pos(k));
    let b = r.block();
    m[(pj, pj)] = b[0][0];
    m[(pj, pk)] = b[0][1];
    m[(pk, pj)] = b[1][0];
    m[(pk, pk)] = b[1][1];
    m
}

/// Whether the two rotation matrices commute, decided by the commutator on
/// the union of their levels.
pub fn commutes(a: &Rotation, b: &Rotation) -> bool {
    let (aj, ak) = a.levels();
    let (bj, bk) = b.levels();
    let mut levels = vec![aj, ak, bj, bk];
    levels.sort_unstable();
    levels.dedup();
    if levels.len() == 4 {
        return true;
    }
    let ma = embed(a, &levels);
    let mb = embed(b, &levels);
    let comm = ma * mb - mb * ma;
    comm.iter().all(|z| z.norm() < COMMUTATOR_TOLERANCE)
}

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
#[error("layer {layer}: {first} and {second} do not commute")]
pub struct NonCommutingPair {
    pub layer: usize,
    pub first: Rotation,
    pub second: Rotation,
}

fn first_conflict(layer: &[Rotation]) -> Option<(Rotation, Rotation)> {
    layer.iter().enumerate().find_map(|(i, a)| {
        layer[i + 1..]
            .iter()
            .find(|b| !commutes(a, b))
            .map(|b| (*a, *b))
    })
}

/// Checks every pair inside every layer; reports the first offending pair.
pub fn validate_program(p: &RotationProgram) -> std::result::Result<(), NonCommutingPair> {
    for (layer, rotations) in p.layers().iter().enumerate() {
        if let Some((first, second)) = first_conflict(rotations) {
            return Err(NonCommutingPair {
                layer,
                first,
                second,
            });
        }
    }
    Ok(())
}

/// A named run of consecutive layers inside a circuit program.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Segment {
    pub label: String,
    pub layers: Range<usize>,
    pub rotation_count: usize,
}

/// A program assembled from labelled gates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompiledCircuit {
    pub program: RotationProgram,
    pub segments: Vec<Segment>,
}

impl CompiledCircuit {
    /// Concatenates gate records in order, one segment per record.
    pub fn from_records<'a, I>(records: I, shape: crate::basis::SystemShape) -> Result<Self>
    where
        I: IntoIterator<Item = (String, &'a SynthesisRecord)>,
    {
        let mut layers = Vec::new();
        let mut segments = Vec::new();
        for (label, rec) in records {
            check_shape(shape, &rec.program)?;
            let start = layers.len();
            layers.extend(rec.program.layers().iter().cloned());
            segments.push(Segment {
                label,
                layers: start..layers.len(),
                rotation_count: rec.rotation_count(),
            });
        }
        Ok(Self {
            program: RotationProgram::from_layers(shape, layers)?,
            segments,
        })
    }

    pub fn metrics(&self) -> DepthMetrics {
        metrics(&self.program, &self.segments)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GateMetrics {
    pub label: String,
    pub rotation_count: usize,
    pub depth: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DepthMetrics {
    pub rotation_count: usize,
    pub depth: usize,
    pub per_gate: Vec<GateMetrics>,
}

pub fn metrics(p: &RotationProgram, segments: &[Segment]) -> DepthMetrics {
    DepthMetrics {
        rotation_count: p.rotation_count(),
        depth: p.depth(),
        per_gate: segments
            .iter()
            .map(|s| GateMetrics {
                label: s.label.clone(),
                rotation_count: s.rotation_count,
                depth: s.layers.len(),
            })
            .collect(),
    }
}

fn check_shape(shape: crate::basis::SystemShape, p: &RotationProgram) -> Result<()> {
    if p.shape() != shape {
        return Err(QuditError::ShapeMismatch {
            expected: shape.qubits(),
            found: p.shape().qubits(),
        });
    }
    Ok(())
}

/// Layers of all programs in order; depth is the sum of the inputs' depths.
pub fn concat(programs: &[RotationProgram]) -> Result<RotationProgram> {
    let Some(first) = programs.first() else {
        return Err(QuditError::Unsupported(
            "cannot concatenate zero programs".into(),
        ));
    };
    let shape = first.shape();
    let mut layers = Vec::new();
    for p in programs {
        check_shape(shape, p)?;
        layers.extend(p.layers().iter().cloned());
    }
    RotationProgram::from_layers(shape, layers)
}

/// Greedily folds each layer into the one before it when every cross pair
/// commutes. The program unitary is unchanged.
pub fn merge_adjacent(p: &RotationProgram) -> RotationProgram {
    let mut merged: Vec<Layer> = Vec::with_capacity(p.depth());
    for layer in p.layers() {
        match merged.last_mut() {
            Some(prev) if layer.iter().all(|b| prev.iter().all(|a| commutes(a, b))) => {
                prev.extend(layer.iter().copied());
            }
            _ => merged.push(layer.clone()),
        }
    }
    RotationProgram::from_layers(p.shape(), merged).expect("levels already validated")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::SystemShape;
    use crate::rotation::Axis;
    use proptest::prelude::*;

    fn rot(axis: Axis, m: i32, j: usize, k: usize) -> Rotation {
        Rotation::new(axis, m, j, k).unwrap()
    }

    fn shape(n: usize) -> SystemShape {
        SystemShape::new(n).unwrap()
    }

    #[test]
    fn commutation_examples() {
        assert!(commutes(&rot(Axis::Y, -2, 0, 4), &rot(Axis::Y, -2, 1, 5)));
        assert!(commutes(&rot(Axis::Z, -2, 2, 8), &rot(Axis::Z, -2, 3, 8)));
        assert!(!commutes(&rot(Axis::Y, 2, 0, 1), &rot(Axis::X, 2, 1, 2)));
        // same pair, same axis
        assert!(commutes(&rot(Axis::X, 2, 0, 1), &rot(Axis::X, 5, 0, 1)));
        // same pair, different axis, non-trivial angles
        assert!(!commutes(&rot(Axis::X, 2, 0, 1), &rot(Axis::Y, 2, 0, 1)));
        // full turn is -I on its pair and commutes with anything on the same pair
        assert!(commutes(&rot(Axis::X, 8, 0, 1), &rot(Axis::Y, 2, 0, 1)));
    }

    #[test]
    fn validation() {
        let s = shape(1);
        let bad = RotationProgram::from_layers(
            s,
            vec![vec![], vec![rot(Axis::Y, 2, 0, 1), rot(Axis::X, 2, 1, 2)]],
        )
        .unwrap();
        let err = validate_program(&bad).unwrap_err();
        assert_eq!(err.layer, 1);
        assert_eq!(err.first, rot(Axis::Y, 2, 0, 1));
        assert_eq!(err.second, rot(Axis::X, 2, 1, 2));
        assert!(validate_program(&RotationProgram::new(s)).is_ok());
    }

    #[test]
    fn metrics_and_concat() {
        let s = shape(2);
        let empty = RotationProgram::new(s);
        let m = metrics(&empty, &[]);
        assert_eq!((m.rotation_count, m.depth), (0, 0));

        let a = RotationProgram::from_layers(s, vec![vec![rot(Axis::Z, 8, 3, 4)]]).unwrap();
        let b = RotationProgram::from_layers(
            s,
            vec![vec![rot(Axis::Y, 2, 0, 1)], vec![rot(Axis::Y, 2, 2, 3)]],
        )
        .unwrap();
        assert_eq!(concat(&[a.clone(), empty.clone()]).unwrap(), a);
        assert_eq!(
            concat(&[a.clone(), b.clone()]).unwrap().depth(),
            a.depth() + b.depth()
        );
        assert!(concat(&[a, RotationProgram::new(shape(3))]).is_err());
        assert!(concat(&[]).is_err());
    }

    #[test]
    fn merging() {
        let s = shape(2);
        let p = RotationProgram::from_layers(
            s,
            vec![vec![rot(Axis::Y, 2, 0, 1)], vec![rot(Axis::Y, 2, 2, 3)]],
        )
        .unwrap();
        let m = merge_adjacent(&p);
        assert_eq!(m.depth(), 1);
        assert_eq!(m.rotation_count(), 2);

        let single = RotationProgram::from_layers(s, vec![vec![rot(Axis::Y, 2, 0, 1)]]).unwrap();
        assert_eq!(merge_adjacent(&single), single);

        let blocked = RotationProgram::from_layers(
            s,
            vec![vec![rot(Axis::Y, 2, 0, 1)], vec![rot(Axis::X, 2, 1, 2)]],
        )
        .unwrap();
        assert_eq!(merge_adjacent(&blocked), blocked);
    }

    fn arb_rotation() -> impl Strategy<Value = Rotation> {
        (
            prop_oneof![Just(Axis::X), Just(Axis::Y), Just(Axis::Z)],
            -16i32..=16,
            0usize..6,
            1usize..6,
        )
            .prop_map(|(axis, m, a, off)| Rotation::on_pair(axis, m, a, (a + off) % 6))
    }

    fn arb_diagonal() -> impl Strategy<Value = Rotation> {
        prop_oneof![
            (-16i32..=16, 0usize..6, 1usize..6).prop_map(|(m, a, off)| Rotation::on_pair(
                Axis::Z,
                m,
                a,
                (a + off) % 6
            )),
            (
                prop_oneof![Just(Axis::X), Just(Axis::Y)],
                -2i32..=2,
                0usize..6,
                1usize..6
            )
                .prop_map(|(axis, k, a, off)| Rotation::on_pair(
                    axis,
                    8 * k,
                    a,
                    (a + off) % 6
                )),
        ]
    }

    proptest! {
        #[test]
        fn commutation_is_symmetric(a in arb_rotation(), b in arb_rotation()) {
            prop_assert_eq!(commutes(&a, &b), commutes(&b, &a));
        }

        #[test]
        fn disjoint_levels_commute(a in arb_rotation(), b in arb_rotation()) {
            let (aj, ak) = a.levels();
            prop_assume!(!b.touches(aj) && !b.touches(ak));
            prop_assert!(commutes(&a, &b));
        }

        #[test]
        fn diagonal_rotations_commute(a in arb_diagonal(), b in arb_diagonal()) {
            prop_assert!(a.is_diagonal() && b.is_diagonal());
            prop_assert!(commutes(&a, &b));
        }
    }
}
