//! Qubit-semantics gate descriptions.
//!
//! Qubit indices are 1-based, `q_1` being the most significant bit of a
//! level index.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{QuditError, Result};

pub type QubitSet = BTreeSet<usize>;

/// A gate in the qubit picture.
///
/// JSON uses a single-key object: `{"h":{"targets":[1]}}`,
/// `{"x":{"targets":[1,2]}}`, `{"t":{"target":2}}`,
/// `{"cnot":{"controls":[1],"target":2}}`,
/// `{"mcz":{"controls":[1,2],"targets":[3]}}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GateSpec {
    #[serde(rename = "h")]
    Hadamard { targets: QubitSet },
    #[serde(rename = "x", alias = "not")]
    Not { targets: QubitSet },
    #[serde(rename = "t")]
    T { target: usize },
    #[serde(rename = "cnot", alias = "mcx")]
    ControlledNot { controls: QubitSet, target: usize },
    /// Phase of -1 on every basis state whose controls and targets all read 1.
    #[serde(rename = "mcz")]
    ControlledZ {
        controls: QubitSet,
        targets: QubitSet,
    },
}

impl GateSpec {
    pub fn hadamard(targets: impl IntoIterator<Item = usize>) -> Self {
        GateSpec::Hadamard {
            targets: targets.into_iter().collect(),
        }
    }

    pub fn not(targets: impl IntoIterator<Item = usize>) -> Self {
        GateSpec::Not {
            targets: targets.into_iter().collect(),
        }
    }

    pub fn t(target: usize) -> Self {
        GateSpec::T { target }
    }

    pub fn cnot(controls: impl IntoIterator<Item = usize>, target: usize) -> Self {
        GateSpec::ControlledNot {
            controls: controls.into_iter().collect(),
            target,
        }
    }

    pub fn mcz(
        controls: impl IntoIterator<Item = usize>,
        targets: impl IntoIterator<Item = usize>,
    ) -> Self {
        GateSpec::ControlledZ {
            controls: controls.into_iter().collect(),
            targets: targets.into_iter().collect(),
        }
    }

    /// `(N-1)`-controlled Z acting on every qubit.
    pub fn mcz_full(n: usize) -> Self {
        Self::mcz(1..n, [n])
    }

    pub fn name(&self) -> &'static str {
        match self {
            GateSpec::Hadamard { .. } => "H",
            GateSpec::Not { .. } => "X",
            GateSpec::T { .. } => "T",
            GateSpec::ControlledNot { .. } => "CNOT",
            GateSpec::ControlledZ { .. } => "MCZ",
        }
    }

    pub fn controls(&self) -> QubitSet {
        match self {
            GateSpec::ControlledNot { controls, .. } | GateSpec::ControlledZ { controls, .. } => {
                controls.clone()
            }
            _ => QubitSet::new(),
        }
    }

    pub fn targets(&self) -> QubitSet {
        match self {
            GateSpec::Hadamard { targets }
            | GateSpec::Not { targets }
            | GateSpec::ControlledZ { targets, .. } => targets.clone(),
            GateSpec::T { target } | GateSpec::ControlledNot { target, .. } => {
                QubitSet::from([*target])
            }
        }
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        let targets = self.targets();
        let controls = self.controls();
        if targets.is_empty() {
            return Err(QuditError::EmptyTargets(self.name()));
        }
        if matches!(self, GateSpec::ControlledNot { .. }) && controls.is_empty() {
            return Err(QuditError::EmptyControls(self.name()));
        }
        for &q in targets.iter().chain(&controls) {
            if q == 0 || q > n {
                return Err(QuditError::QubitOutOfRange { index: q, n });
            }
        }
        if let Some(&q) = controls.intersection(&targets).next() {
            return Err(QuditError::Overlap(q));
        }
        Ok(())
    }
}

fn join(set: &QubitSet) -> String {
    set.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

impl fmt::Display for GateSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GateSpec::Hadamard { targets } => write!(f, "H[{}]", join(targets)),
            GateSpec::Not { targets } => write!(f, "X[{}]", join(targets)),
            GateSpec::T { target } => write!(f, "T[{target}]"),
            GateSpec::ControlledNot { controls, target } => {
                write!(f, "CNOT[c={};t={target}]", join(controls))
            }
            GateSpec::ControlledZ { controls, targets } => {
                write!(f, "MCZ[c={};t={}]", join(controls), join(targets))
            }
        }
    }
}

/// Every valid gate spec on `n` qubits: all target subsets for H and X,
/// every T target, every (controls, target) CNOT and every disjoint
/// (controls, targets) MCZ.
pub fn enumerate_specs(n: usize) -> Vec<GateSpec> {
    let subsets =
        |mask: usize| -> QubitSet { (1..=n).filter(|q| mask >> (q - 1) & 1 == 1).collect() };
    let full = 1usize << n;
    let mut specs = Vec::new();
    for m in 1..full {
        specs.push(GateSpec::Hadamard {
            targets: subsets(m),
        });
    }
    for m in 1..full {
        specs.push(GateSpec::Not {
            targets: subsets(m),
        });
    }
    specs.extend((1..=n).map(GateSpec::t));
    for t in 1..=n {
        for m in 1..full {
            if m >> (t - 1) & 1 == 0 {
                specs.push(GateSpec::ControlledNot {
                    controls: subsets(m),
                    target: t,
                });
            }
        }
    }
    for tm in 1..full {
        for cm in 0..full {
            if cm & tm == 0 {
                specs.push(GateSpec::ControlledZ {
                    controls: subsets(cm),
                    targets: subsets(tm),
                });
            }
        }
    }
    specs
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_forms() {
        let g: GateSpec = serde_json::from_str(r#"{"h":{"targets":[1]}}"#).unwrap();
        assert_eq!(g, GateSpec::hadamard([1]));
        let g: GateSpec =
            serde_json::from_str(r#"{"mcz":{"controls":[1,2],"targets":[3]}}"#).unwrap();
        assert_eq!(g, GateSpec::mcz([1, 2], [3]));
        let g: GateSpec = serde_json::from_str(r#"{"not":{"targets":[2,1]}}"#).unwrap();
        assert_eq!(g, GateSpec::not([1, 2]));
        assert_eq!(
            serde_json::to_string(&GateSpec::t(2)).unwrap(),
            r#"{"t":{"target":2}}"#
        );
        assert_eq!(
            serde_json::to_string(&GateSpec::cnot([1], 2)).unwrap(),
            r#"{"cnot":{"controls":[1],"target":2}}"#
        );
        assert!(serde_json::from_str::<GateSpec>(r#"{"swap":{"targets":[1]}}"#).is_err());
    }

    #[test]
    fn validation_errors() {
        assert_eq!(
            GateSpec::hadamard([]).validate(3),
            Err(QuditError::EmptyTargets("H"))
        );
        assert_eq!(
            GateSpec::not([4]).validate(3),
            Err(QuditError::QubitOutOfRange { index: 4, n: 3 })
        );
        assert_eq!(
            GateSpec::t(0).validate(3),
            Err(QuditError::QubitOutOfRange { index: 0, n: 3 })
        );
        assert_eq!(
            GateSpec::cnot([2], 2).validate(3),
            Err(QuditError::Overlap(2))
        );
        assert_eq!(
            GateSpec::cnot([], 2).validate(3),
            Err(QuditError::EmptyControls("CNOT"))
        );
        assert_eq!(
            GateSpec::mcz([1], [1, 2]).validate(3),
            Err(QuditError::Overlap(1))
        );
        assert!(GateSpec::mcz([], [1, 2]).validate(3).is_ok());
        assert!(GateSpec::mcz_full(4).validate(4).is_ok());
    }

    #[test]
    fn labels() {
        assert_eq!(GateSpec::hadamard([3, 1]).to_string(), "H[1,3]");
        assert_eq!(GateSpec::mcz([1, 2], [3]).to_string(), "MCZ[c=1,2;t=3]");
        assert_eq!(GateSpec::cnot([1], 2).to_string(), "CNOT[c=1;t=2]");
    }

    #[test]
    fn enumeration_sizes() {
        // H + X: 2(2^n - 1); T: n; CNOT: n(2^(n-1) - 1); MCZ: 3^n - 2^n
        for n in 1..=5usize {
            let p = 1usize << n;
            let expected = 2 * (p - 1) + n + n * (p / 2 - 1) + 3usize.pow(n as u32) - p;
            let specs = enumerate_specs(n);
            assert_eq!(specs.len(), expected);
            assert!(specs.iter().all(|s| s.validate(n).is_ok()));
        }
    }
}
