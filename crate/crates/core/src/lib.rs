//! Achievable quantum capacities of `[n, 1]` stabilizer codes over Pauli
//! channels.
//!
//! A code is used as the inner stage of a concatenated scheme whose outer
//! stage is a random (hashing) code. Its rate follows from the coset weight
//! polynomials of the stabilizer group: the probability of each
//! syndrome/logical-class pair under the channel. This crate evaluates those
//! polynomials by enumeration ([`enumerator`]) or in closed form for cat codes
//! ([`cat`]), turns them into capacities and thresholds ([`capacity`]), and
//! nests codes recursively ([`concat`]).
//!
//! ```
//! use qcap::{cat, capacity};
//!
//! // The block-5 cat code beats random coding at f = 0.81.
//! assert!(cat::cat_qss(5, 0.81).unwrap().q_ss > 0.0);
//! assert!(capacity::hashing_capacity(0.81) < 0.0);
//! ```

pub mod capacity;
pub mod cat;
pub mod channel;
pub mod code;
pub mod concat;
pub mod enumerator;
pub mod error;
mod gf2;
pub mod pauli;
pub mod scheme;

pub use capacity::{coherent_information, hashing_capacity, q_ss, threshold, CapacityResult};
pub use cat::{
    asymptotic_threshold, cat_code, cat_coset_probs, cat_qss, rotated_cat_code, CatCosetProbs,
};
pub use channel::{ChannelAssignment, PauliChannel};
pub use code::{LogicalClass, StabilizerCode, Syndrome};
pub use concat::{concatenated_qss, double_cat_threshold, ConditionalChannelEnsemble};
pub use enumerator::{coset_probability, joint_distribution, JointDistribution};
pub use error::{CodeViolation, Error, Result};
pub use pauli::{Pauli, PauliOperator};
