//! Two-level rotations and the layered programs built from them.
//!
//! A rotation acts as `exp(-i θ (σ·n̂) / 2)` on the span of levels `(j, k)`
//! (level `j` is the first basis vector) and as the identity on every other
//! level. Angles are stored as integer multiples of `π/4`, so every matrix
//! element comes from a fixed table and `R(2π) = -I` holds bit-exactly for
//! all three axes.

use std::fmt;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::basis::SystemShape;
use crate::error::{QuditError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    X,
    Y,
    Z,
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axis::X => "x",
            Axis::Y => "y",
            Axis::Z => "z",
        })
    }
}

/// 2x2 block of a rotation, rows and columns ordered `(j, k)`.
pub type Block = [[Complex64; 2]; 2];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawRotation")]
pub struct Rotation {
    axis: Axis,
    angle_eighths: i32,
    levels: (usize, usize),
}

#[derive(Deserialize)]
struct RawRotation {
    axis: Axis,
    angle_eighths: i32,
    levels: (usize, usize),
}

impl TryFrom<RawRotation> for Rotation {
    type Error = QuditError;

    fn try_from(raw: RawRotation) -> Result<Self> {
        Rotation::new(raw.axis, raw.angle_eighths, raw.levels.0, raw.levels.1)
    }
}

impl Rotation {
    /// Rotation by `angle_eighths · π/4` about `axis` on levels `j < k`.
    pub fn new(axis: Axis, angle_eighths: i32, j: usize, k: usize) -> Result<Self> {
        if j >= k {
            return Err(QuditError::UnorderedLevels { j, k });
        }
        Ok(Self {
            axis,
            angle_eighths,
            levels: (j, k),
        })
    }

    /// Builds the rotation on the unordered pair `{a, b}`.
    pub(crate) fn on_pair(axis: Axis, angle_eighths: i32, a: usize, b: usize) -> Self {
        debug_assert_ne!(a, b);
        Self {
            axis,
            angle_eighths,
            levels: (a.min(b), a.max(b)),
        }
    }

    pub fn axis(&self) -> Axis {
        self.axis
    }

    pub fn angle_eighths(&self) -> i32 {
        self.angle_eighths
    }

    pub fn angle(&self) -> f64 {
        f64::from(self.angle_eighths) * std::f64::consts::FRAC_PI_4
    }

    pub fn levels(&self) -> (usize, usize) {
        self.levels
    }

    pub fn touches(&self, level: usize) -> bool {
        self.levels.0 == level || self.levels.1 == level
    }

    pub fn check_shape(&self, shape: SystemShape) -> Result<()> {
        let levels = shape.total_levels();
        if self.levels.1 >= levels {
            return Err(QuditError::LevelOutOfRange {
                level: self.levels.1,
                levels,
            });
        }
        Ok(())
    }

    /// `true` when the block is diagonal (z axis, or any full `2π` multiple).
    pub fn is_diagonal(&self) -> bool {
        self.axis == Axis::Z || self.angle_eighths.rem_euclid(8) == 0
    }

    pub fn block(&self) -> Block {
        let (c, s) = half_angle_cos_sin(self.angle_eighths);
        let zero = Complex64::new(0.0, 0.0);
        let re = |x: f64| Complex64::new(x, 0.0);
        let im = |x: f64| Complex64::new(0.0, x);
        match self.axis {
            Axis::X => [[re(c), im(-s)], [im(-s), re(c)]],
            Axis::Y => [[re(c), re(-s)], [re(s), re(c)]],
            Axis::Z => [[Complex64::new(c, -s), zero], [zero, Complex64::new(c, s)]],
        }
    }
}

impl fmt::Display for Rotation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "R_{}^({},{})({})",
            self.axis,
            self.levels.0,
            self.levels.1,
            format_angle(self.angle_eighths)
        )
    }
}

/// Renders `m · π/4` as `pi/4`, `-pi/2`, `2pi`, ...
pub fn format_angle(eighths: i32) -> String {
    if eighths == 0 {
        return "0".into();
    }
    let sign = if eighths < 0 { "-" } else { "" };
    let m = eighths.unsigned_abs();
    let (num, den) = match m % 4 {
        0 => (m / 4, 1),
        2 => (m / 2, 2),
        _ => (m, 4),
    };
    match (num, den) {
        (1, 1) => format!("{sign}pi"),
        (_, 1) => format!("{sign}{num}pi"),
        (1, _) => format!("{sign}pi/{den}"),
        _ => format!("{sign}{num}pi/{den}"),
    }
}

/// `(cos(m π/8), sin(m π/8))` for the half angle of a rotation by `m · π/4`.
fn half_angle_cos_sin(m: i32) -> (f64, f64) {
    const C8: f64 = 0.923_879_532_511_286_7; // cos(π/8)
    const S8: f64 = 0.382_683_432_365_089_8; // sin(π/8)
    const R: f64 = std::f64::consts::FRAC_1_SQRT_2;
    const COS: [f64; 16] = [
        1.0, C8, R, S8, 0.0, -S8, -R, -C8, -1.0, -C8, -R, -S8, 0.0, S8, R, C8,
    ];
    let cos = COS[m.rem_euclid(16) as usize];
    let sin = COS[(m - 4).rem_euclid(16) as usize];
    (cos, sin)
}

/// Full `(D+1) x (D+1)` matrix of `r`.
pub fn rotation_matrix(r: &Rotation, shape: SystemShape) -> DMatrix<Complex64> {
    let size = shape.total_levels();
    let mut m = DMatrix::identity(size, size);
    let (j, k) = r.levels();
    let b = r.block();
    m[(j, j)] = b[0][0];
    m[(j, k)] = b[0][1];
    m[(k, j)] = b[1][0];
    m[(k, k)] = b[1][1];
    m
}

pub type Layer = Vec<Rotation>;

/// Ordered layers of mutually commuting rotations on one qudit.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawProgram")]
pub struct RotationProgram {
    #[serde(rename = "n")]
    shape: SystemShape,
    layers: Vec<Layer>,
}

#[derive(Deserialize)]
struct RawProgram {
    n: SystemShape,
    layers: Vec<Layer>,
}

impl TryFrom<RawProgram> for RotationProgram {
    type Error = QuditError;

    fn try_from(raw: RawProgram) -> Result<Self> {
        RotationProgram::from_layers(raw.n, raw.layers)
    }
}

impl RotationProgram {
    pub fn new(shape: SystemShape) -> Self {
        Self {
            shape,
            layers: Vec::new(),
        }
    }

    pub fn from_layers(shape: SystemShape, layers: Vec<Layer>) -> Result<Self> {
        let mut program = Self::new(shape);
        for layer in layers {
            program.push_layer(layer)?;
        }
        Ok(program)
    }

    /// Appends a layer after checking every level against the shape.
    /// Commutation is not checked here; see [`crate::schedule::validate_program`].
    pub fn push_layer(&mut self, layer: Layer) -> Result<()> {
        for r in &layer {
            r.check_shape(self.shape)?;
        }
        self.layers.push(layer);
        Ok(())
    }

    pub fn shape(&self) -> SystemShape {
        self.shape
    }

    pub fn layers(&self) -> &[Layer] {
        &self.layers
    }

    pub fn into_layers(self) -> Vec<Layer> {
        self.layers
    }

    pub fn depth(&self) -> usize {
        self.layers.len()
    }

    pub fn rotation_count(&self) -> usize {
        self.layers.iter().map(Vec::len).sum()
    }

    pub fn rotations(&self) -> impl Iterator<Item = &Rotation> {
        self.layers.iter().flatten()
    }

    pub fn is_empty(&self) -> bool {
        self.layers.is_empty()
    }

    pub fn touches_ancilla(&self) -> bool {
        let anc = self.shape.ancilla();
        self.rotations().any(|r| r.touches(anc))
    }
}
