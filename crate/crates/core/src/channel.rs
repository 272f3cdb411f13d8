//! Pauli channels and per-error probabilities.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pauli::{Pauli, PauliOperator};

/// Tolerance on the component sum of a channel vector.
pub const NORMALIZATION_TOLERANCE: f64 = 1e-12;

/// Single-qubit Pauli channel given by the probabilities of applying
/// I, X, Y and Z.
#[derive(Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PauliChannel {
    probs: [f64; 4],
}

impl PauliChannel {
    /// Rejects (never renormalizes) vectors off the simplex.
    pub fn new(probs: [f64; 4]) -> Result<Self> {
        if let Some(bad) = probs.iter().find(|p| !(0.0..=1.0).contains(*p)) {
            return Err(Error::InvalidProbabilities(format!(
                "component {bad} outside [0, 1]"
            )));
        }
        let total: f64 = probs.iter().sum();
        if (total - 1.0).abs() > NORMALIZATION_TOLERANCE {
            return Err(Error::InvalidProbabilities(format!(
                "components sum to {total}"
            )));
        }
        Ok(Self { probs })
    }

    /// Depolarizing channel `(f, g, g, g)` with `g = (1 - f) / 3`.
    pub fn depolarizing(f: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&f) {
            return Err(Error::InvalidFidelity(f));
        }
        let g = (1.0 - f) / 3.0;
        Ok(Self {
            probs: [f, g, g, g],
        })
    }

    pub fn noiseless() -> Self {
        Self {
            probs: [1.0, 0.0, 0.0, 0.0],
        }
    }

    pub fn probs(&self) -> [f64; 4] {
        self.probs
    }

    pub fn prob(&self, letter: Pauli) -> f64 {
        self.probs[letter.index()]
    }

    pub fn fidelity(&self) -> f64 {
        self.probs[0]
    }
}

impl fmt::Debug for PauliChannel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PauliChannel{:?}", self.probs)
    }
}

impl FromStr for PauliChannel {
    type Err = Error;

    /// Parses `pI,pX,pY,pZ`.
    fn from_str(s: &str) -> Result<Self> {
        let parts = s
            .split(',')
            .map(|t| t.trim().parse::<f64>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|e| Error::InvalidProbabilities(format!("{s:?}: {e}")))?;
        let probs: [f64; 4] = parts
            .try_into()
            .map_err(|_| Error::InvalidProbabilities(format!("{s:?}: expected four components")))?;
        Self::new(probs)
    }
}

/// One channel per physical qubit of a block.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelAssignment {
    per_qubit: Vec<PauliChannel>,
}

impl ChannelAssignment {
    pub fn new(per_qubit: Vec<PauliChannel>) -> Result<Self> {
        if per_qubit.is_empty() {
            return Err(Error::QubitCount(0));
        }
        Ok(Self { per_qubit })
    }

    pub fn uniform(channel: PauliChannel, n: usize) -> Self {
        Self {
            per_qubit: vec![channel; n.max(1)],
        }
    }

    pub fn depolarizing(f: f64, n: usize) -> Result<Self> {
        Ok(Self::uniform(PauliChannel::depolarizing(f)?, n))
    }

    pub fn len(&self) -> usize {
        self.per_qubit.len()
    }

    pub fn is_empty(&self) -> bool {
        self.per_qubit.is_empty()
    }

    pub fn channels(&self) -> &[PauliChannel] {
        &self.per_qubit
    }

    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.len() {
            return Err(Error::SizeMismatch {
                left: perm.len(),
                right: self.len(),
            });
        }
        let mut out = self.per_qubit.clone();
        for (q, &target) in perm.iter().enumerate() {
            out[target] = self.per_qubit[q];
        }
        Ok(Self { per_qubit: out })
    }

    /// Probability that the channel applies exactly `e`.
    pub fn error_probability(&self, e: &PauliOperator) -> Result<f64> {
        if e.num_qubits() != self.len() {
            return Err(Error::SizeMismatch {
                left: e.num_qubits(),
                right: self.len(),
            });
        }
        Ok(self
            .per_qubit
            .iter()
            .enumerate()
            .map(|(q, c)| c.prob(e.letter(q)))
            .product())
    }
}
