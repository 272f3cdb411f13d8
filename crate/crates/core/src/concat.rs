//! Multi-level concatenation.
//!
//! Decoding an inner block turns its physical errors into a random logical
//! Pauli channel: syndrome `i` occurs with probability `Pr(i)` and leaves the
//! logical qubit under the channel `Pr(B_j | i)`. An outer code then sees one
//! such conditional channel per position, drawn independently from the
//! inner ensemble. All syndromes of all levels are kept as side information,
//! so only the conditional entropy left after the last level counts against
//! the rate.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::capacity::{self, CapacityResult};
use crate::channel::{ChannelAssignment, PauliChannel};
use crate::code::StabilizerCode;
use crate::enumerator::{joint_distribution, NeumaierSum};
use crate::error::{Error, Result};
use crate::pauli::{Pauli, PauliOperator, MAX_QUBITS};

/// Conditionals closer than this (componentwise) are merged.
const MERGE_RESOLUTION: f64 = 1e-12;

/// Upper bound on position tuples expanded for one level.
pub const MAX_TUPLES: u128 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Outcome {
    pub weight: f64,
    pub channel: PauliChannel,
}

/// Distribution over logical Pauli channels left after decoding one level.
#[derive(Debug, Clone, PartialEq)]
pub struct ConditionalChannelEnsemble {
    outcomes: Vec<Outcome>,
    qubits_consumed: usize,
}

impl ConditionalChannelEnsemble {
    /// A bare physical qubit: one outcome, certain.
    pub fn physical(channel: PauliChannel) -> Self {
        Self {
            outcomes: vec![Outcome {
                weight: 1.0,
                channel,
            }],
            qubits_consumed: 1,
        }
    }

    pub fn outcomes(&self) -> &[Outcome] {
        &self.outcomes
    }

    pub fn qubits_consumed(&self) -> usize {
        self.qubits_consumed
    }

    pub fn total_weight(&self) -> f64 {
        let mut acc = NeumaierSum::default();
        for o in &self.outcomes {
            acc.add(o.weight);
        }
        acc.value()
    }

    /// `Σ weight · h4(channel)`: entropy left once every syndrome is known.
    pub fn conditional_entropy(&self) -> f64 {
        let mut acc = NeumaierSum::default();
        for o in &self.outcomes {
            acc.add(
                o.weight * capacity::entropy_unnormalized(&o.channel.probs()).unwrap_or(f64::NAN),
            );
        }
        acc.value()
    }

    /// Entropy of the merged outcome classes.
    pub fn outcome_entropy(&self) -> f64 {
        let weights: Vec<f64> = self.outcomes.iter().map(|o| o.weight).collect();
        capacity::entropy_unnormalized(&weights).unwrap_or(f64::NAN)
    }

    /// Rate achievable by hashing the logical qubits of this ensemble.
    pub fn capacity(&self) -> CapacityResult {
        CapacityResult::from_parts(
            self.outcome_entropy(),
            self.conditional_entropy(),
            self.qubits_consumed,
        )
    }
}

/// Merges conditionals by a quantized key, in sorted key order.
#[derive(Default)]
struct Merger {
    classes: BTreeMap<[i64; 4], (NeumaierSum, [f64; 4])>,
}

impl Merger {
    fn add(&mut self, weight: f64, conditional: [f64; 4]) {
        let key = conditional.map(|v| (v / MERGE_RESOLUTION).round() as i64);
        self.classes
            .entry(key)
            .or_insert_with(|| (NeumaierSum::default(), conditional))
            .0
            .add(weight);
    }

    fn finish(self, qubits_consumed: usize) -> ConditionalChannelEnsemble {
        let outcomes = self
            .classes
            .into_values()
            .map(|(w, c)| Outcome {
                weight: w.value(),
                channel: normalized_channel(c),
            })
            .collect();
        ConditionalChannelEnsemble {
            outcomes,
            qubits_consumed,
        }
    }
}

fn normalized_channel(c: [f64; 4]) -> PauliChannel {
    let clamped = c.map(|v| v.clamp(0.0, 1.0));
    PauliChannel::new(clamped).expect("conditional distribution is normalized")
}

/// Decodes one block of `code` under `assignment` and returns the ensemble
/// of conditional logical channels, one class per distinct conditional.
pub fn condition(
    code: &StabilizerCode,
    assignment: &ChannelAssignment,
) -> Result<ConditionalChannelEnsemble> {
    let dist = joint_distribution(code, assignment)?;
    let mut merger = Merger::default();
    for row in dist.rows() {
        add_row(&mut merger, 1.0, row);
    }
    Ok(merger.finish(code.n()))
}

fn add_row(merger: &mut Merger, weight: f64, row: &[f64; 4]) {
    let pr: f64 = row.iter().sum();
    if pr > 0.0 {
        merger.add(weight * pr, row.map(|v| v / pr));
    }
}

/// Feeds an independent draw from `input` into every position of `code`.
///
/// When the code treats its positions exchangeably only multisets of
/// outcomes are enumerated, each weighted by its multinomial count.
pub fn condition_ensemble(
    code: &StabilizerCode,
    input: &ConditionalChannelEnsemble,
) -> Result<ConditionalChannelEnsemble> {
    let n = code.n();
    let k = input.outcomes.len();
    let symmetric = code.is_permutation_symmetric();
    let count = if symmetric {
        multiset_count(k, n)
    } else {
        (k as u128).checked_pow(n as u32).unwrap_or(u128::MAX)
    };
    if count > MAX_TUPLES {
        return Err(Error::TupleLimit(count));
    }
    let tuples: Vec<Vec<usize>> = if symmetric {
        multisets(k, n)
    } else {
        all_tuples(k, n)
    };

    let parts: Vec<Result<(f64, Vec<[f64; 4]>)>> = tuples
        .par_iter()
        .map(|tuple| {
            let mut weight: f64 = tuple.iter().map(|&i| input.outcomes[i].weight).product();
            if symmetric {
                weight *= multinomial(tuple);
            }
            let assignment =
                ChannelAssignment::new(tuple.iter().map(|&i| input.outcomes[i].channel).collect())?;
            let dist = joint_distribution(code, &assignment)?;
            Ok((weight, dist.rows().to_vec()))
        })
        .collect();

    let mut merger = Merger::default();
    for part in parts {
        let (weight, rows) = part?;
        for row in &rows {
            add_row(&mut merger, weight, row);
        }
    }
    Ok(merger.finish(n * input.qubits_consumed))
}

fn multiset_count(k: usize, n: usize) -> u128 {
    // C(k + n - 1, n)
    let mut acc: u128 = 1;
    for i in 0..n as u128 {
        acc = acc * (k as u128 + i) / (i + 1);
    }
    acc
}

/// Nondecreasing index sequences of length `n` over `0..k`.
fn multisets(k: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k == 0 {
        return out;
    }
    let mut cur = vec![0usize; n];
    loop {
        out.push(cur.clone());
        let Some(pos) = (0..n).rev().find(|&i| cur[i] + 1 < k) else {
            return out;
        };
        let v = cur[pos] + 1;
        for slot in &mut cur[pos..] {
            *slot = v;
        }
    }
}

fn all_tuples(k: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::with_capacity(n)];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..k).map(move |i| {
                    let mut t = t.clone();
                    t.push(i);
                    t
                })
            })
            .collect();
    }
    out
}

/// Number of distinct orderings of a sorted tuple.
fn multinomial(sorted: &[usize]) -> f64 {
    let mut acc = 1.0;
    let mut run = 0;
    for (i, v) in sorted.iter().enumerate() {
        run = if i > 0 && sorted[i - 1] == *v {
            run + 1
        } else {
            1
        };
        acc *= (i + 1) as f64 / run as f64;
    }
    acc
}

/// Capacity of nested codes, innermost first, under one physical channel.
pub fn concatenated_qss_with_channel(
    levels: &[StabilizerCode],
    channel: PauliChannel,
) -> Result<CapacityResult> {
    let ensemble = concatenated_ensemble(levels, channel)?;
    Ok(ensemble.capacity())
}

pub fn concatenated_ensemble(
    levels: &[StabilizerCode],
    channel: PauliChannel,
) -> Result<ConditionalChannelEnsemble> {
    if levels.is_empty() {
        return Err(Error::EmptyLevels);
    }
    let mut ensemble = ConditionalChannelEnsemble::physical(channel);
    for code in levels {
        ensemble = condition_ensemble(code, &ensemble)?;
    }
    Ok(ensemble)
}

/// Capacity of nested codes, innermost first, under the depolarizing channel.
pub fn concatenated_qss(levels: &[StabilizerCode], f: f64) -> Result<CapacityResult> {
    concatenated_qss_with_channel(levels, PauliChannel::depolarizing(f)?)
}

pub const DOUBLE_CAT_BRACKET: (f64, f64) = (0.79, 0.82);

/// Threshold of a rotated `cat(5)` inner code under a `cat(5)` outer code.
pub fn double_cat_threshold() -> Result<f64> {
    let levels = [crate::cat::rotated_cat_code(5)?, crate::cat::cat_code(5)?];
    capacity::threshold(
        |f| {
            concatenated_qss(&levels, f)
                .map(|r| r.q_ss)
                .unwrap_or(f64::NAN)
        },
        DOUBLE_CAT_BRACKET,
    )
}

/// Lifts `outer` through the logical operators of `inner` into one code on
/// `inner.n() * outer.n()` qubits. Block `b` occupies qubits
/// `b * inner.n() .. (b + 1) * inner.n()`.
pub fn flatten(inner: &StabilizerCode, outer: &StabilizerCode) -> Result<StabilizerCode> {
    let m = inner.n();
    let total = m * outer.n();
    if total > MAX_QUBITS {
        return Err(Error::QubitCount(total));
    }
    let place = |op: &PauliOperator, block: usize| -> (u32, u32) {
        let shift = block * m;
        (op.x_bits() << shift, op.z_bits() << shift)
    };
    let lift = |outer_op: &PauliOperator| -> Result<PauliOperator> {
        let (mut x, mut z) = (0u32, 0u32);
        for (b, letter) in outer_op.letters().enumerate() {
            let image = match letter {
                Pauli::I => continue,
                Pauli::X => inner.logical_x(),
                Pauli::Z => inner.logical_z(),
                Pauli::Y => inner.logical_x().multiply(&inner.logical_z())?,
            };
            let (bx, bz) = place(&image, b);
            x ^= bx;
            z ^= bz;
        }
        PauliOperator::from_masks(total, x, z)
    };

    let mut generators = Vec::with_capacity(total - 1);
    for b in 0..outer.n() {
        for g in inner.generators() {
            let (x, z) = place(g, b);
            generators.push(PauliOperator::from_masks(total, x, z)?);
        }
    }
    for g in outer.generators() {
        generators.push(lift(g)?);
    }
    StabilizerCode::new(
        total,
        generators,
        Some((lift(&outer.logical_x())?, lift(&outer.logical_z())?)),
    )
}
