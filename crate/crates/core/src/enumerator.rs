//! Coset weight polynomials evaluated numerically by a single pass over
//! every n-qubit Pauli error.
//!
//! Entry `(i, j)` of a [`JointDistribution`] is the probability that the
//! channel applies an error with syndrome `i` whose logical class is `j`,
//! i.e. the weight polynomial of the coset `s̄_j⊥ ē_i S̄`. Row sums are the
//! syndrome marginals, the weight polynomials of `ē_i S̄⊥`.
//!
//! The pass is split into shards by the letters on the first two qubits
//! (16 shards, or 4 for a single qubit). Each shard accumulates with
//! Neumaier-compensated sums; shards are merged in shard index order, so
//! the result is bit-identical whatever the thread count.

use std::io::{self, Write};

use rayon::prelude::*;

use crate::channel::ChannelAssignment;
use crate::code::{LogicalClass, StabilizerCode, Syndrome, DEFAULT_ENUMERATION_CAP};
use crate::error::{Error, Result};
use crate::pauli::PauliOperator;

/// Grand-total tolerance for a probability table.
pub const TOTAL_TOLERANCE: f64 = 1e-10;

/// `Pr(B_j, i)` over syndromes `i` and Bell columns `(Φ+, Ψ+, Ψ−, Φ−)`.
#[derive(Debug, Clone, PartialEq)]
pub struct JointDistribution {
    n: usize,
    rows: Vec<[f64; 4]>,
}

impl JointDistribution {
    /// Wraps an explicit table. Entries must be nonnegative and the table
    /// must have a power-of-two number of rows matching `n`.
    pub fn from_rows(n: usize, rows: Vec<[f64; 4]>) -> Result<Self> {
        if n == 0 || rows.len() != 1usize << (n - 1) {
            return Err(Error::SizeMismatch {
                left: rows.len(),
                right: 1usize << n.saturating_sub(1),
            });
        }
        if rows.iter().flatten().any(|&v| v.is_nan() || v < 0.0) {
            return Err(Error::InvalidProbabilities("negative table entry".into()));
        }
        Ok(Self { n, rows })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[[f64; 4]] {
        &self.rows
    }

    pub fn row(&self, syndrome: Syndrome) -> [f64; 4] {
        self.rows[syndrome.0 as usize]
    }

    pub fn entry(&self, syndrome: Syndrome, class: LogicalClass) -> f64 {
        self.rows[syndrome.0 as usize][class.index()]
    }

    /// `Pr(i)` for every syndrome.
    pub fn syndrome_marginals(&self) -> Vec<f64> {
        self.rows.iter().map(|r| r.iter().sum()).collect()
    }

    pub fn total(&self) -> f64 {
        let mut acc = NeumaierSum::default();
        for v in self.rows.iter().flatten() {
            acc.add(*v);
        }
        acc.value()
    }

    pub fn is_normalized(&self) -> bool {
        (self.total() - 1.0).abs() <= TOTAL_TOLERANCE
    }

    /// Writes `syndrome,phi_plus,psi_plus,psi_minus,phi_minus`.
    pub fn write_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "syndrome,phi_plus,psi_plus,psi_minus,phi_minus")?;
        for (i, r) in self.rows.iter().enumerate() {
            writeln!(out, "{i},{:e},{:e},{:e},{:e}", r[0], r[1], r[2], r[3])?;
        }
        Ok(())
    }
}

/// Neumaier's variant of Kahan summation.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct NeumaierSum {
    sum: f64,
    comp: f64,
}

impl NeumaierSum {
    #[inline]
    pub fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.comp += (self.sum - t) + v;
        } else {
            self.comp += (v - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }

    fn merge(&mut self, other: &Self) {
        self.add(other.sum);
        self.add(other.comp);
    }
}

fn check_inputs(code: &StabilizerCode, assignment: &ChannelAssignment, cap: usize) -> Result<()> {
    if code.n() > cap {
        return Err(Error::EnumerationCap { n: code.n(), cap });
    }
    if assignment.len() != code.n() {
        return Err(Error::SizeMismatch {
            left: assignment.len(),
            right: code.n(),
        });
    }
    Ok(())
}

/// Joint syndrome/logical-class distribution of `code` under `assignment`.
pub fn joint_distribution(
    code: &StabilizerCode,
    assignment: &ChannelAssignment,
) -> Result<JointDistribution> {
    joint_distribution_with_cap(code, assignment, DEFAULT_ENUMERATION_CAP)
}

pub fn joint_distribution_with_cap(
    code: &StabilizerCode,
    assignment: &ChannelAssignment,
    cap: usize,
) -> Result<JointDistribution> {
    check_inputs(code, assignment, cap)?;
    code.validate()?;
    let plan = Plan::new(code, assignment);

    let shards: Vec<Vec<NeumaierSum>> = (0..plan.num_shards())
        .into_par_iter()
        .map(|s| plan.run_shard(s))
        .collect();

    let mut merged = vec![NeumaierSum::default(); plan.num_rows * 4];
    for shard in &shards {
        for (acc, part) in merged.iter_mut().zip(shard) {
            acc.merge(part);
        }
    }
    let rows = merged
        .chunks_exact(4)
        .map(|c| [c[0].value(), c[1].value(), c[2].value(), c[3].value()])
        .collect();
    Ok(JointDistribution { n: code.n(), rows })
}

/// Precomputed linear maps and probability tables for one enumeration.
struct Plan {
    n: usize,
    num_rows: usize,
    /// Syndrome bits plus the two logical anticommutation bits at 32 and 33,
    /// for every X mask and every Z mask. The key of an error is the XOR.
    key_x: Vec<u64>,
    key_z: Vec<u64>,
    /// Qubits whose letters are fixed per shard.
    shard_qubits: usize,
    /// Per-qubit `(I, X, Y, Z)` probabilities.
    probs: Vec<[f64; 4]>,
    /// Probability of every letter pattern on the lower and upper halves of
    /// the non-shard qubits, indexed by `x_part | z_part << len`.
    lo_len: usize,
    hi_len: usize,
    lo_table: Vec<f64>,
    hi_table: Vec<f64>,
}

const LOGICAL_SHIFT: u32 = 32;
const CLASS_OF_BITS: [usize; 4] = [0, 1, 3, 2];

impl Plan {
    fn new(code: &StabilizerCode, assignment: &ChannelAssignment) -> Self {
        let n = code.n();
        let single_key = |e: PauliOperator| -> u64 {
            let s = code.syndrome_unchecked(&e).0 as u64;
            let wz = e.anticommutes_unchecked(&code.logical_z()) as u64;
            let wx = e.anticommutes_unchecked(&code.logical_x()) as u64;
            s | wz << LOGICAL_SHIFT | wx << (LOGICAL_SHIFT + 1)
        };
        let col_x: Vec<u64> = (0..n)
            .map(|q| single_key(PauliOperator::from_masks_unchecked(n, 1 << q, 0)))
            .collect();
        let col_z: Vec<u64> = (0..n)
            .map(|q| single_key(PauliOperator::from_masks_unchecked(n, 0, 1 << q)))
            .collect();
        let key_x = linear_table(&col_x);
        let key_z = linear_table(&col_z);

        let probs: Vec<[f64; 4]> = assignment.channels().iter().map(|c| c.probs()).collect();
        let shard_qubits = n.min(2);
        let rest = n - shard_qubits;
        let lo_len = rest / 2;
        let hi_len = rest - lo_len;
        let lo_table = pattern_table(&probs[shard_qubits..shard_qubits + lo_len]);
        let hi_table = pattern_table(&probs[shard_qubits + lo_len..]);

        Self {
            n,
            num_rows: code.num_syndromes(),
            key_x,
            key_z,
            shard_qubits,
            probs,
            lo_len,
            hi_len,
            lo_table,
            hi_table,
        }
    }

    fn num_shards(&self) -> usize {
        1 << (2 * self.shard_qubits)
    }

    fn run_shard(&self, shard: usize) -> Vec<NeumaierSum> {
        let mut acc = vec![NeumaierSum::default(); self.num_rows * 4];
        let sq = self.shard_qubits;
        let sx = (shard & ((1 << sq) - 1)) as u32;
        let sz = (shard >> sq) as u32;
        let mut shard_prob = 1.0;
        for q in 0..sq {
            let letter = ((sx >> q) & 1) | ((sz >> q) & 1) << 1;
            // letter bits (x, z) -> (I, X, Z, Y) -> channel index
            shard_prob *= self.probs[q][[0, 1, 3, 2][letter as usize]];
        }
        if shard_prob == 0.0 {
            return acc;
        }

        let rest = self.n - sq;
        let lo_mask = (1u32 << self.lo_len) - 1;
        let syndrome_mask = (1u64 << LOGICAL_SHIFT) - 1;
        for xr in 0..(1u32 << rest) {
            let x = sx | xr << sq;
            let kx = self.key_x[x as usize];
            let (xl, xh) = (xr & lo_mask, xr >> self.lo_len);
            for zr in 0..(1u32 << rest) {
                let (zl, zh) = (zr & lo_mask, zr >> self.lo_len);
                let p = shard_prob
                    * self.lo_table[(xl | zl << self.lo_len) as usize]
                    * self.hi_table[(xh | zh << self.hi_len) as usize];
                if p == 0.0 {
                    continue;
                }
                let z = sz | zr << sq;
                let key = kx ^ self.key_z[z as usize];
                let row = (key & syndrome_mask) as usize;
                let col = CLASS_OF_BITS[(key >> LOGICAL_SHIFT) as usize];
                acc[row * 4 + col].add(p);
            }
        }
        acc
    }
}

/// XOR of `cols[q]` over the set bits `q` of every mask in `0..2^len`.
fn linear_table(cols: &[u64]) -> Vec<u64> {
    let mut table = vec![0u64; 1 << cols.len()];
    for m in 1..table.len() {
        let low = m.trailing_zeros() as usize;
        table[m] = table[m & (m - 1)] ^ cols[low];
    }
    table
}

/// Product probability of every letter pattern on `probs.len()` qubits.
fn pattern_table(probs: &[[f64; 4]]) -> Vec<f64> {
    let len = probs.len();
    let mut table = vec![1.0; 1 << (2 * len)];
    for (idx, slot) in table.iter_mut().enumerate() {
        let x = idx & ((1 << len) - 1);
        let z = idx >> len;
        for (q, p) in probs.iter().enumerate() {
            let letter = ((x >> q) & 1) | ((z >> q) & 1) << 1;
            *slot *= p[[0, 1, 3, 2][letter]];
        }
    }
    table
}

/// Weight polynomial of the coset `representative · S̄`, summed directly over
/// the stabilizer group.
pub fn coset_probability(
    code: &StabilizerCode,
    assignment: &ChannelAssignment,
    representative: &PauliOperator,
) -> Result<f64> {
    check_inputs(code, assignment, DEFAULT_ENUMERATION_CAP)?;
    if representative.num_qubits() != code.n() {
        return Err(Error::SizeMismatch {
            left: representative.num_qubits(),
            right: code.n(),
        });
    }
    let mut acc = NeumaierSum::default();
    for s in code.stabilizer_elements() {
        acc.add(assignment.error_probability(&representative.multiply(&s)?)?);
    }
    Ok(acc.value())
}
