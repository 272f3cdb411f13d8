//! Entropies, hashing and concatenated capacities, coherent information and
//! threshold root finding. All logarithms are base 2.

use rayon::prelude::*;
use serde::Serialize;

use crate::enumerator::{JointDistribution, NeumaierSum, TOTAL_TOLERANCE};
use crate::error::{Error, Result};

/// Sum tolerance accepted by [`entropy`].
pub const ENTROPY_SUM_TOLERANCE: f64 = 1e-9;

/// Largest tolerated disagreement between the two S_X2 routes.
const ROUTE_TOLERANCE: f64 = 1e-9;

pub const DEFAULT_BRACKET: (f64, f64) = (0.75, 0.999);
pub const SCAN_STEP: f64 = 1e-3;
pub const BISECTION_TOLERANCE: f64 = 1e-7;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CapacityResult {
    /// Achievable rate in qubits per channel use.
    pub q_ss: f64,
    /// Average entropy left after syndrome measurement.
    pub s_x2: f64,
    /// Entropy of the syndrome (or outcome class) distribution.
    pub h_syndrome: f64,
    /// Entropy of the joint outcome/Bell distribution.
    pub h_joint: f64,
    /// Physical qubits per logical qubit.
    pub p: usize,
}

impl CapacityResult {
    /// Assembles a result from the outcome entropy and the conditional
    /// entropy; `h_joint` follows from the chain rule.
    pub(crate) fn from_parts(h_syndrome: f64, s_x2: f64, p: usize) -> Self {
        Self {
            q_ss: (1.0 - s_x2) / p as f64,
            s_x2,
            h_syndrome,
            h_joint: h_syndrome + s_x2,
            p,
        }
    }
}

#[inline]
fn plogp(x: f64) -> f64 {
    if x > 0.0 {
        -x * x.log2()
    } else {
        0.0
    }
}

/// Shannon entropy in bits of a probability vector, with `0 log 0 = 0`.
pub fn entropy(xs: &[f64]) -> Result<f64> {
    let total: f64 = xs.iter().sum();
    if (total - 1.0).abs() > ENTROPY_SUM_TOLERANCE {
        return Err(Error::Unnormalized(total));
    }
    entropy_unnormalized(xs)
}

/// `-Σ x log2 x` without the normalization check, for partial sums.
pub fn entropy_unnormalized(xs: &[f64]) -> Result<f64> {
    if let Some(bad) = xs.iter().find(|x| x.is_nan() || **x < 0.0) {
        return Err(Error::InvalidProbabilities(format!("negative entry {bad}")));
    }
    let mut acc = NeumaierSum::default();
    for &x in xs {
        acc.add(plogp(x));
    }
    Ok(acc.value())
}

/// Entropy of one Bell pair after one half crosses the depolarizing channel.
pub fn werner_entropy(f: f64) -> f64 {
    let g = (1.0 - f) / 3.0;
    plogp(f) + 3.0 * plogp(g)
}

/// Random-coding (one-way hashing) rate `1 - S_W(f)`.
pub fn hashing_capacity(f: f64) -> f64 {
    1.0 - werner_entropy(f)
}

/// Conditional entropy of the Bell label given a row, weighted by the row
/// probability: `Pr(i) h4(Pr(B|i))`.
pub(crate) fn weighted_conditional_entropy(row: &[f64; 4]) -> f64 {
    let pr: f64 = row.iter().sum();
    if pr <= 0.0 {
        return 0.0;
    }
    pr * row.iter().map(|&v| plogp(v / pr)).sum::<f64>()
}

fn check_normalized(dist: &JointDistribution) -> Result<()> {
    let total = dist.total();
    if (total - 1.0).abs() > TOTAL_TOLERANCE {
        return Err(Error::Unnormalized(total));
    }
    Ok(())
}

/// Concatenated-code capacity of a single code from its joint table:
/// `(1 + h_N(Pr(i)) - h_4N(Pr(B_j, i))) / p` with `p = dist.n()`.
///
/// `s_x2` is computed separately as `Σ_i Pr(i) h4(Pr(B_j | i))` and must
/// agree with `h_joint - h_syndrome`.
pub fn q_ss(dist: &JointDistribution) -> Result<CapacityResult> {
    check_normalized(dist)?;
    let p = dist.n();
    let h_syndrome = entropy_unnormalized(&dist.syndrome_marginals())?;
    let entries: Vec<f64> = dist.rows().iter().flatten().copied().collect();
    let h_joint = entropy_unnormalized(&entries)?;

    let mut s = NeumaierSum::default();
    for row in dist.rows() {
        s.add(weighted_conditional_entropy(row));
    }
    let s_x2 = s.value();
    let diff = (h_joint - h_syndrome - s_x2).abs();
    assert!(
        diff <= ROUTE_TOLERANCE,
        "conditional-entropy routes disagree by {diff:e}"
    );

    Ok(CapacityResult {
        q_ss: (1.0 + h_syndrome - h_joint) / p as f64,
        s_x2,
        h_syndrome,
        h_joint,
        p,
    })
}

/// Coherent information per physical qubit, `(S(ρ_Q) - S(ρ_RQ)) / p`.
///
/// `ρ_Q` is diagonal with two equal entries `½ Pr(i)` per syndrome space, each
/// the half-sum of the four cosets reaching it; `ρ_RQ` is diagonal in the
/// generalized Bell basis with the table entries as eigenvalues.
pub fn coherent_information(dist: &JointDistribution) -> Result<f64> {
    check_normalized(dist)?;
    let p = dist.n();
    let mut q_spectrum = Vec::with_capacity(2 * dist.rows().len());
    for row in dist.rows() {
        let half = 0.5 * (row[0] + row[3] + row[1] + row[2]);
        q_spectrum.push(half);
        q_spectrum.push(half);
    }
    let s_q = entropy_unnormalized(&q_spectrum)?;
    let rq_spectrum: Vec<f64> = dist.rows().iter().flatten().copied().collect();
    let s_rq = entropy_unnormalized(&rq_spectrum)?;
    Ok((s_q - s_rq) / p as f64)
}

/// Every grid interval `[lo, hi]` on which `capacity` changes sign, scanning
/// `bracket` with step `step`, ordered from high to low fidelity.
pub fn sign_changes<F>(capacity: F, bracket: (f64, f64), step: f64) -> Vec<(f64, f64)>
where
    F: Fn(f64) -> f64 + Sync,
{
    let grid = scan_grid(bracket, step);
    let values: Vec<f64> = grid.par_iter().map(|&f| capacity(f)).collect();
    (1..grid.len())
        .filter(|&k| (values[k - 1] > 0.0) != (values[k] > 0.0))
        .map(|k| (grid[k], grid[k - 1]))
        .collect()
}

/// Grid from `hi` down to `lo` inclusive.
fn scan_grid((lo, hi): (f64, f64), step: f64) -> Vec<f64> {
    let count = ((hi - lo) / step).ceil() as usize;
    let mut grid: Vec<f64> = (0..count)
        .map(|k| hi - k as f64 * step)
        .filter(|&f| f > lo)
        .collect();
    grid.push(lo);
    grid
}

/// Largest fidelity in `bracket` at which `capacity` crosses zero.
///
/// The bracket is pre-scanned at [`SCAN_STEP`]; the highest sign change is
/// refined by bisection to [`BISECTION_TOLERANCE`].
pub fn threshold<F>(capacity: F, bracket: (f64, f64)) -> Result<f64>
where
    F: Fn(f64) -> f64 + Sync,
{
    threshold_with(capacity, bracket, SCAN_STEP, BISECTION_TOLERANCE)
}

pub fn threshold_with<F>(capacity: F, bracket: (f64, f64), step: f64, tol: f64) -> Result<f64>
where
    F: Fn(f64) -> f64 + Sync,
{
    let (lo, hi) = bracket;
    let Some(&(mut a, mut b)) = sign_changes(&capacity, bracket, step).first() else {
        return Err(Error::NoSignChange { lo, hi });
    };
    let positive_at_b = capacity(b) > 0.0;
    while b - a > tol {
        let mid = 0.5 * (a + b);
        if (capacity(mid) > 0.0) == positive_at_b {
            b = mid;
        } else {
            a = mid;
        }
    }
    Ok(0.5 * (a + b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cat::cat_code;
    use crate::channel::ChannelAssignment;
    use crate::code::StabilizerCode;
    use crate::enumerator::joint_distribution;

    #[test]
    fn entropy_examples() {
        assert_eq!(entropy(&[1.0, 0.0, 0.0, 0.0]).unwrap(), 0.0);
        assert!((entropy(&[0.25; 4]).unwrap() - 2.0).abs() < 1e-15);
        assert!((entropy(&[0.5, 0.5]).unwrap() - 1.0).abs() < 1e-15);
        assert!(entropy(&[0.5, 0.6, -0.1]).is_err());
        assert!(entropy(&[0.5, 0.2]).is_err());
        assert!(entropy_unnormalized(&[0.5, 0.2]).is_ok());
    }

    #[test]
    fn hashing_examples() {
        assert_eq!(hashing_capacity(1.0), 1.0);
        assert!((hashing_capacity(0.25) + 1.0).abs() < 1e-15);
        let t = threshold(hashing_capacity, DEFAULT_BRACKET).unwrap();
        assert!((t - 0.81071).abs() < 5e-6, "{t}");
    }

    #[test]
    fn trivial_code_reduces_to_hashing() {
        for f in [0.75, 0.8, 0.85, 0.95, 1.0] {
            let d = joint_distribution(
                &StabilizerCode::trivial(),
                &ChannelAssignment::depolarizing(f, 1).unwrap(),
            )
            .unwrap();
            let r = q_ss(&d).unwrap();
            assert!((r.q_ss - hashing_capacity(f)).abs() < 1e-15);
            assert!((coherent_information(&d).unwrap() - hashing_capacity(f)).abs() < 1e-15);
            assert_eq!(r.h_syndrome, 0.0);
        }
    }

    #[test]
    fn noiseless_channel_gives_inverse_block_size() {
        for n in 1..=6 {
            let code = StabilizerCode::random(n, n as u64).unwrap();
            let d = joint_distribution(&code, &ChannelAssignment::depolarizing(1.0, n).unwrap())
                .unwrap();
            assert_eq!(q_ss(&d).unwrap().q_ss, 1.0 / n as f64);
            assert_eq!(coherent_information(&d).unwrap(), 1.0 / n as f64);
        }
    }

    #[test]
    fn capacity_result_identities() {
        let d = joint_distribution(
            &cat_code(3).unwrap(),
            &ChannelAssignment::depolarizing(0.85, 3).unwrap(),
        )
        .unwrap();
        let r = q_ss(&d).unwrap();
        assert!((r.q_ss - (1.0 + r.h_syndrome - r.h_joint) / 3.0).abs() < 1e-12);
        assert!((r.s_x2 - (r.h_joint - r.h_syndrome)).abs() < 1e-12);
        assert!(r.s_x2 >= 0.0);
        assert!((coherent_information(&d).unwrap() - r.q_ss).abs() < 1e-12);
    }

    #[test]
    fn unnormalized_tables_are_rejected() {
        let d = JointDistribution::from_rows(2, vec![[0.5, 0.0, 0.0, 0.0], [0.1, 0.0, 0.0, 0.0]])
            .unwrap();
        assert!(matches!(q_ss(&d), Err(Error::Unnormalized(_))));
        assert!(matches!(
            coherent_information(&d),
            Err(Error::Unnormalized(_))
        ));
    }

    #[test]
    fn relabelling_invariance() {
        let d = joint_distribution(
            &StabilizerCode::random(4, 5).unwrap(),
            &ChannelAssignment::depolarizing(0.82, 4).unwrap(),
        )
        .unwrap();
        let base = q_ss(&d).unwrap().q_ss;
        let mut rows = d.rows().to_vec();
        rows.reverse();
        let rows: Vec<[f64; 4]> = rows.into_iter().map(|r| [r[0], r[2], r[3], r[1]]).collect();
        let shuffled = JointDistribution::from_rows(4, rows).unwrap();
        assert!((q_ss(&shuffled).unwrap().q_ss - base).abs() < 1e-12);
    }

    #[test]
    fn threshold_finds_largest_root() {
        // Roots off the scan grid; positive above the largest.
        let cubic = |f: f64| (f - 0.8005) * (f - 0.8505) * (f - 0.9005);
        let t = threshold(cubic, (0.75, 0.999)).unwrap();
        assert!((t - 0.9005).abs() < 1e-7);
        assert_eq!(sign_changes(cubic, (0.75, 0.999), SCAN_STEP).len(), 3);
        assert!(matches!(
            threshold(|f| f, (0.75, 0.999)),
            Err(Error::NoSignChange { .. })
        ));
    }
}
