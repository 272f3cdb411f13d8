//! Cat codes and their closed-form coset probabilities.
//!
//! For the `[p, 1]` cat code with stabilizers `Z1 Z2, Z1 Z3, ..., Z1 Zp`,
//! every syndrome with `r` ones has the same four coset probabilities, and
//! there are `C(p-1, r)` such syndromes. This makes the capacity of any block
//! size a sum over `p` classes instead of `4^p` errors.

use serde::Serialize;

use crate::capacity::{self, CapacityResult, DEFAULT_BRACKET};
use crate::code::StabilizerCode;
use crate::error::{Error, Result};
use crate::pauli::{low_mask, PauliOperator, MAX_QUBITS};

/// Terms smaller than this are recomputed in log space.
const UNDERFLOW: f64 = 1e-300;

/// Block sizes whose binomial coefficients are computed exactly.
const EXACT_BINOMIAL_MAX: usize = 60;

/// `[p, 1]` cat code. `p = 1` is the trivial code.
pub fn cat_code(p: usize) -> Result<StabilizerCode> {
    build_cat(p, false)
}

/// Cat code with the roles of X and Z exchanged.
pub fn rotated_cat_code(p: usize) -> Result<StabilizerCode> {
    build_cat(p, true)
}

fn build_cat(p: usize, rotated: bool) -> Result<StabilizerCode> {
    if p == 0 || p > MAX_QUBITS {
        return Err(Error::BlockSize(p));
    }
    let op = |x: u32, z: u32| {
        if rotated {
            PauliOperator::from_masks(p, z, x)
        } else {
            PauliOperator::from_masks(p, x, z)
        }
    };
    let generators = (1..p)
        .map(|q| op(0, 1 | 1 << q))
        .collect::<Result<Vec<_>>>()?;
    let (mut logical_x, mut logical_z) = (op(low_mask(p), 0)?, op(0, 1)?);
    if rotated {
        // The X/Z exchange also exchanges which logical is which.
        std::mem::swap(&mut logical_x, &mut logical_z);
    }
    StabilizerCode::new(p, generators, Some((logical_x, logical_z)))
}

/// Coset probabilities shared by every cat-code syndrome of weight `r`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CatCosetProbs {
    pub p: usize,
    pub r: usize,
    /// `(Pr(Φ+, r), Pr(Ψ+, r), Pr(Ψ−, r), Pr(Φ−, r))` for one syndrome.
    pub probs: [f64; 4],
    /// Number of syndromes sharing these probabilities, `C(p-1, r)`.
    pub multiplicity: f64,
}

impl CatCosetProbs {
    pub fn syndrome_probability(&self) -> f64 {
        self.probs.iter().sum()
    }
}

pub fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    if n <= EXACT_BINOMIAL_MAX {
        let mut acc: u128 = 1;
        for i in 0..k {
            acc = acc * (n - i) as u128 / (i + 1) as u128;
        }
        acc as f64
    } else {
        (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
    }
}

/// `2^a g^b (f+g)^c`, evaluated in log space when a factor leaves the
/// normal floating-point range.
fn power_term(a: i32, g: f64, b: i32, fg: f64, c: i32) -> f64 {
    let (two, gb, fgc) = (2f64.powi(a), g.powi(b), fg.powi(c));
    let in_range = |v: f64| v == 1.0 || (UNDERFLOW..=1.0 / UNDERFLOW).contains(&v);
    if g == 0.0 || fg == 0.0 || (in_range(two) && in_range(gb) && in_range(fgc)) {
        return two * gb * fgc;
    }
    (a as f64 * std::f64::consts::LN_2 + b as f64 * g.ln() + c as f64 * fg.ln()).exp()
}

/// Closed-form coset probabilities for syndrome weight `r` of `cat(p)` under
/// the depolarizing channel with fidelity `f`.
pub fn cat_coset_probs(p: usize, r: usize, f: f64) -> Result<CatCosetProbs> {
    if p == 0 {
        return Err(Error::BlockSize(p));
    }
    if r >= p {
        return Err(Error::SyndromeWeight { p, r });
    }
    if !(0.0..=1.0).contains(&f) {
        return Err(Error::InvalidFidelity(f));
    }
    let g = (1.0 - f) / 3.0;
    let fg = f + g;
    let (pi, ri) = (p as i32, r as i32);

    let psi = power_term(pi - ri - 1, g, pi - ri, fg, ri);
    let (phi_plus, phi_minus) = if r == 0 {
        let a = fg.powi(pi);
        let b = (f - g).powi(pi);
        (0.5 * (a + b), 0.5 * (a - b))
    } else {
        let v = power_term(ri - 1, g, ri, fg, pi - ri);
        (v, v)
    };
    Ok(CatCosetProbs {
        p,
        r,
        probs: [phi_plus, psi, psi, phi_minus],
        multiplicity: binomial(p - 1, r),
    })
}

/// All `p` syndrome-weight classes of `cat(p)`.
pub fn cat_classes(p: usize, f: f64) -> Result<Vec<CatCosetProbs>> {
    (0..p).map(|r| cat_coset_probs(p, r, f)).collect()
}

/// Capacity of a cat inner code from the closed forms, for any `p >= 1`.
pub fn cat_qss(p: usize, f: f64) -> Result<CapacityResult> {
    let classes = cat_classes(p, f)?;
    let mut h_syndrome = 0.0;
    let mut h_joint = 0.0;
    let mut s_x2 = 0.0;
    for c in &classes {
        let pr = c.syndrome_probability();
        if pr <= 0.0 {
            continue;
        }
        h_syndrome += c.multiplicity * -pr * pr.log2();
        h_joint += c.multiplicity
            * c.probs
                .iter()
                .filter(|&&v| v > 0.0)
                .map(|&v| -v * v.log2())
                .sum::<f64>();
        s_x2 += c.multiplicity * capacity::weighted_conditional_entropy(&c.probs);
    }
    Ok(CapacityResult {
        q_ss: (1.0 - s_x2) / p as f64,
        s_x2,
        h_syndrome,
        h_joint,
        p,
    })
}

/// Threshold fidelity of `cat(p)` over the default bracket.
pub fn cat_threshold(p: usize) -> Result<f64> {
    if p == 0 {
        return Err(Error::BlockSize(p));
    }
    capacity::threshold(
        |f| cat_qss(p, f).map(|r| r.q_ss).unwrap_or(f64::NAN),
        DEFAULT_BRACKET,
    )
}

/// `(f-g)^2/(f+g) - sqrt(8 g (f+g))`, whose root is the large-`p` threshold.
pub fn asymptotic_residual(f: f64) -> f64 {
    let g = (1.0 - f) / 3.0;
    (f - g).powi(2) / (f + g) - (8.0 * g * (f + g)).sqrt()
}

/// Limit of the cat-code threshold as `p → ∞`, where the `r = 0` and
/// `r ≈ p/2` contributions have equal exponential bases.
pub fn asymptotic_threshold() -> f64 {
    let (mut lo, mut hi) = (0.75, 1.0);
    debug_assert!(asymptotic_residual(lo) < 0.0 && asymptotic_residual(hi) > 0.0);
    while hi - lo > 1e-9 {
        let mid = 0.5 * (lo + hi);
        if asymptotic_residual(mid) > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}
