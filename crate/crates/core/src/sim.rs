//! Dense statevector simulation of rotation programs.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::basis::SystemShape;
use crate::error::{QuditError, Result};
use crate::exec::Execution;
use crate::rotation::{Rotation, RotationProgram};

const NORM_TOLERANCE: f64 = 1e-10;

/// Amplitudes over the `D` computational levels followed by the ancilla.
#[derive(Debug, Clone, PartialEq)]
pub struct QuditState {
    shape: SystemShape,
    amplitudes: Vec<Complex64>,
}

impl QuditState {
    pub fn ground(shape: SystemShape) -> Self {
        Self::basis(shape, 0).expect("level 0 always exists")
    }

    pub fn basis(shape: SystemShape, level: usize) -> Result<Self> {
        let levels = shape.total_levels();
        if level >= levels {
            return Err(QuditError::LevelOutOfRange { level, levels });
        }
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); levels];
        amplitudes[level] = Complex64::new(1.0, 0.0);
        Ok(Self { shape, amplitudes })
    }

    /// Wraps `amplitudes` after checking length and normalisation.
    pub fn from_amplitudes(shape: SystemShape, amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.len() != shape.total_levels() {
            return Err(QuditError::StateLength {
                expected: shape.total_levels(),
                found: amplitudes.len(),
            });
        }
        let state = Self { shape, amplitudes };
        let norm = state.norm();
        if (norm - 1.0).abs() > NORM_TOLERANCE {
            return Err(QuditError::NotNormalized(norm));
        }
        Ok(state)
    }

    /// Accepts the `[[re, im], ...]` dump format.
    pub fn from_pairs(shape: SystemShape, pairs: &[[f64; 2]]) -> Result<Self> {
        Self::from_amplitudes(
            shape,
            pairs.iter().map(|p| Complex64::new(p[0], p[1])).collect(),
        )
    }

    pub fn to_pairs(&self) -> Vec<[f64; 2]> {
        self.amplitudes.iter().map(|z| [z.re, z.im]).collect()
    }

    pub fn shape(&self) -> SystemShape {
        self.shape
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn amplitude(&self, level: usize) -> Complex64 {
        self.amplitudes[level]
    }

    pub fn ancilla_amplitude(&self) -> Complex64 {
        self.amplitudes[self.shape.ancilla()]
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes
            .iter()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|z| z.norm_sqr()).collect()
    }

    /// In-place rotation of the two amplitudes at the rotation's levels.
    pub fn rotate(&mut self, r: &Rotation) -> Result<()> {
        r.check_shape(self.shape)?;
        let (j, k) = r.levels();
        let b = r.block();
        let (aj, ak) = (self.amplitudes[j], self.amplitudes[k]);
        self.amplitudes[j] = b[0][0] * aj + b[0][1] * ak;
        self.amplitudes[k] = b[1][0] * aj + b[1][1] * ak;
        Ok(())
    }

    /// Applies a layer's rotations in their stored order.
    pub fn apply_layer_in_place(&mut self, layer: &[Rotation]) -> Result<()> {
        layer.iter().try_for_each(|r| self.rotate(r))
    }

    pub fn apply_program_in_place(&mut self, program: &RotationProgram) -> Result<()> {
        self.check_shape(program.shape())?;
        program
            .layers()
            .iter()
            .try_for_each(|l| self.apply_layer_in_place(l))
    }

    fn check_shape(&self, shape: SystemShape) -> Result<()> {
        if shape != self.shape {
            return Err(QuditError::ShapeMismatch {
                expected: self.shape.qubits(),
                found: shape.qubits(),
            });
        }
        Ok(())
    }
}

pub fn ground_state(shape: SystemShape) -> QuditState {
    QuditState::ground(shape)
}

pub fn apply_rotation(state: &QuditState, r: &Rotation) -> Result<QuditState> {
    let mut out = state.clone();
    out.rotate(r)?;
    Ok(out)
}

pub fn apply_layer(state: &QuditState, layer: &[Rotation]) -> Result<QuditState> {
    let mut out = state.clone();
    out.apply_layer_in_place(layer)?;
    Ok(out)
}

pub fn apply_program(state: &QuditState, program: &RotationProgram) -> Result<QuditState> {
    let mut out = state.clone();
    out.apply_program_in_place(program)?;
    Ok(out)
}

pub fn probabilities(state: &QuditState) -> Vec<f64> {
    state.probabilities()
}

/// Full `(D+1) x (D+1)` unitary of `program`, built column by column by
/// running the program on each basis state.
pub fn program_unitary(program: &RotationProgram, exec: Execution) -> DMatrix<Complex64> {
    let shape = program.shape();
    let size = shape.total_levels();
    let columns = exec.map_range(size, |c| {
        let mut s = QuditState::basis(shape, c).expect("column index within shape");
        s.apply_program_in_place(program)
            .expect("program matches its own shape");
        s.amplitudes
    });
    DMatrix::from_fn(size, size, |r, c| columns[c][r])
}
