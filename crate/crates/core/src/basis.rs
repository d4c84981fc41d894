//! Mapping between qudit level indices and qubit bit strings.
//!
//! Level `d` of a `2^N`-level qudit corresponds to the bit string
//! `q_1 q_2 ... q_N`, with `q_1` the most significant bit. Index `D = 2^N`
//! is the extra ancilla level that never carries population.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{QuditError, Result};

/// Largest qubit count the crate will build a shape for.
pub const MAX_QUBITS: usize = 20;

/// Size of a qudit that stands in for `n` qubits: `2^n` computational
/// levels plus one ancilla.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "usize", into = "usize")]
pub struct SystemShape {
    n: usize,
}

impl SystemShape {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_QUBITS {
            return Err(QuditError::InvalidQubitCount { n, max: MAX_QUBITS });
        }
        Ok(Self { n })
    }

    /// Equivalent qubit count `N`.
    pub fn qubits(&self) -> usize {
        self.n
    }

    /// Computational levels `D = 2^N`.
    pub fn dim(&self) -> usize {
        1 << self.n
    }

    /// Index of the ancilla level, equal to `D`.
    pub fn ancilla(&self) -> usize {
        self.dim()
    }

    pub fn total_levels(&self) -> usize {
        self.dim() + 1
    }

    /// Bit mask selecting qubit `t` (1-based) inside a level index.
    pub fn qubit_mask(&self, t: usize) -> Result<usize> {
        if t == 0 || t > self.n {
            return Err(QuditError::QubitOutOfRange {
                index: t,
                n: self.n,
            });
        }
        Ok(1 << (self.n - t))
    }

    /// Value of `q_t` in level `d`.
    pub fn bit(&self, d: usize, t: usize) -> Result<bool> {
        Ok(d & self.qubit_mask(t)? != 0)
    }

    /// Level that differs from `d` only in qubit `t`.
    pub fn pair_partner(&self, d: usize, t: usize) -> Result<usize> {
        if d >= self.dim() {
            return Err(QuditError::LevelOutOfRange {
                level: d,
                levels: self.dim(),
            });
        }
        Ok(d ^ self.qubit_mask(t)?)
    }

    pub fn index_to_bits(&self, d: usize) -> Result<BitString> {
        index_to_bits(d, self.n)
    }
}

impl TryFrom<usize> for SystemShape {
    type Error = QuditError;

    fn try_from(n: usize) -> Result<Self> {
        Self::new(n)
    }
}

impl From<SystemShape> for usize {
    fn from(shape: SystemShape) -> usize {
        shape.n
    }
}

/// Qubit basis label `q_1 ... q_N`, most significant bit first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BitString(Vec<bool>);

impl BitString {
    pub fn new(bits: Vec<bool>) -> Result<Self> {
        if bits.is_empty() {
            return Err(QuditError::BadBitString(String::new()));
        }
        Ok(Self(bits))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for BitString {
    type Err = QuditError;

    fn from_str(s: &str) -> Result<Self> {
        let bits = s
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(QuditError::BadBitString(s.to_string())),
            })
            .collect::<Result<Vec<_>>>()?;
        if bits.is_empty() || bits.len() > usize::BITS as usize - 1 {
            return Err(QuditError::BadBitString(s.to_string()));
        }
        Ok(Self(bits))
    }
}

/// Big-endian binary expansion of `d` over `n` bits.
pub fn index_to_bits(d: usize, n: usize) -> Result<BitString> {
    let shape = SystemShape::new(n)?;
    if d >= shape.dim() {
        return Err(QuditError::LevelOutOfRange {
            level: d,
            levels: shape.dim(),
        });
    }
    Ok(BitString(
        (0..n).map(|i| (d >> (n - 1 - i)) & 1 == 1).collect(),
    ))
}

pub fn bits_to_index(bits: &BitString) -> usize {
    bits.0.iter().fold(0, |acc, &b| (acc << 1) | usize::from(b))
}

pub fn pair_partner(d: usize, t: usize, shape: SystemShape) -> Result<usize> {
    shape.pair_partner(d, t)
}
