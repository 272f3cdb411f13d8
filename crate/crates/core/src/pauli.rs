//! n-qubit Pauli operators modulo phase in the binary symplectic picture.
//!
//! Qubit 1 is the leftmost character of the string form and the least
//! significant bit of both masks. Phases are not represented, so
//! multiplication is XOR of the masks.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MAX_QUBITS: usize = 32;

/// Single-qubit Pauli letter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub const ALL: [Pauli; 4] = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];

    pub fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => Pauli::I,
            (true, false) => Pauli::X,
            (true, true) => Pauli::Y,
            (false, true) => Pauli::Z,
        }
    }

    pub fn bits(self) -> (bool, bool) {
        match self {
            Pauli::I => (false, false),
            Pauli::X => (true, false),
            Pauli::Y => (true, true),
            Pauli::Z => (false, true),
        }
    }

    /// Position in the (I, X, Y, Z) ordering used by channel vectors.
    pub fn index(self) -> usize {
        self as usize
    }

    pub fn as_char(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }
}

/// An n-qubit Pauli operator with its phase discarded.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PauliOperator {
    n: u8,
    x: u32,
    z: u32,
}

#[inline]
pub(crate) fn low_mask(n: usize) -> u32 {
    if n >= 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

impl PauliOperator {
    pub fn identity(n: usize) -> Result<Self> {
        Self::from_masks(n, 0, 0)
    }

    /// Builds an operator from raw masks. Bits above `n` must be clear.
    pub fn from_masks(n: usize, x: u32, z: u32) -> Result<Self> {
        if n == 0 || n > MAX_QUBITS {
            return Err(Error::QubitCount(n));
        }
        let m = low_mask(n);
        if x & !m != 0 || z & !m != 0 {
            return Err(Error::InvalidPauliString(
                format!("x={x:#x} z={z:#x}"),
                "bits set above the qubit count",
            ));
        }
        Ok(Self { n: n as u8, x, z })
    }

    /// Caller guarantees `1 <= n <= 32` and clean high bits.
    #[inline]
    pub(crate) fn from_masks_unchecked(n: usize, x: u32, z: u32) -> Self {
        debug_assert!((1..=MAX_QUBITS).contains(&n));
        debug_assert_eq!(x & !low_mask(n), 0);
        debug_assert_eq!(z & !low_mask(n), 0);
        Self { n: n as u8, x, z }
    }

    /// `letter` on qubit `q` (0-based) and identity elsewhere.
    pub fn single(n: usize, q: usize, letter: Pauli) -> Result<Self> {
        if q >= n {
            return Err(Error::SizeMismatch {
                left: q + 1,
                right: n,
            });
        }
        let (x, z) = letter.bits();
        Self::from_masks(n, (x as u32) << q, (z as u32) << q)
    }

    pub fn from_letters(letters: &[Pauli]) -> Result<Self> {
        let n = letters.len();
        if n == 0 || n > MAX_QUBITS {
            return Err(Error::QubitCount(n));
        }
        let (mut x, mut z) = (0u32, 0u32);
        for (q, l) in letters.iter().enumerate() {
            let (bx, bz) = l.bits();
            x |= (bx as u32) << q;
            z |= (bz as u32) << q;
        }
        Ok(Self { n: n as u8, x, z })
    }

    pub fn num_qubits(&self) -> usize {
        self.n as usize
    }

    pub fn x_bits(&self) -> u32 {
        self.x
    }

    pub fn z_bits(&self) -> u32 {
        self.z
    }

    pub fn letter(&self, q: usize) -> Pauli {
        Pauli::from_bits((self.x >> q) & 1 == 1, (self.z >> q) & 1 == 1)
    }

    pub fn letters(&self) -> impl Iterator<Item = Pauli> + '_ {
        (0..self.num_qubits()).map(|q| self.letter(q))
    }

    pub fn is_identity(&self) -> bool {
        self.x == 0 && self.z == 0
    }

    /// Number of qubits carrying X, Y or Z.
    pub fn weight(&self) -> usize {
        (self.x | self.z).count_ones() as usize
    }

    fn check_size(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::SizeMismatch {
                left: self.num_qubits(),
                right: other.num_qubits(),
            });
        }
        Ok(())
    }

    /// Symplectic product: `true` when the two operators anticommute.
    #[inline]
    pub(crate) fn anticommutes_unchecked(&self, other: &Self) -> bool {
        ((self.x & other.z).count_ones() + (self.z & other.x).count_ones()) & 1 == 1
    }

    pub fn commutes(&self, other: &Self) -> Result<bool> {
        self.check_size(other)?;
        Ok(!self.anticommutes_unchecked(other))
    }

    #[inline]
    pub(crate) fn mul_unchecked(&self, other: &Self) -> Self {
        Self {
            n: self.n,
            x: self.x ^ other.x,
            z: self.z ^ other.z,
        }
    }

    /// Product modulo phase.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.check_size(other)?;
        Ok(self.mul_unchecked(other))
    }

    /// Packs the operator as `x | z << 32` for GF(2) linear algebra.
    #[inline]
    pub(crate) fn to_vector(self) -> u64 {
        self.x as u64 | (self.z as u64) << 32
    }

    #[inline]
    pub(crate) fn from_vector(n: usize, v: u64) -> Self {
        Self::from_masks_unchecked(n, v as u32, (v >> 32) as u32)
    }

    /// Moves qubit `q` to position `perm[q]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.num_qubits() {
            return Err(Error::SizeMismatch {
                left: perm.len(),
                right: self.num_qubits(),
            });
        }
        let (mut x, mut z) = (0u32, 0u32);
        for (q, &target) in perm.iter().enumerate() {
            x |= ((self.x >> q) & 1) << target;
            z |= ((self.z >> q) & 1) << target;
        }
        Self::from_masks(self.num_qubits(), x, z)
    }
}

impl fmt::Display for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in self.letters() {
            write!(f, "{}", l.as_char())?;
        }
        Ok(())
    }
}

impl fmt::Debug for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PauliOperator({self})")
    }
}

impl FromStr for PauliOperator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let n = s.chars().count();
        if n == 0 {
            return Err(Error::InvalidPauliString(s.to_owned(), "empty"));
        }
        if n > MAX_QUBITS {
            return Err(Error::InvalidPauliString(
                s.to_owned(),
                "longer than 32 qubits",
            ));
        }
        let letters = s
            .chars()
            .map(|c| match c {
                'I' => Ok(Pauli::I),
                'X' => Ok(Pauli::X),
                'Y' => Ok(Pauli::Y),
                'Z' => Ok(Pauli::Z),
                _ => Err(Error::InvalidPauliString(
                    s.to_owned(),
                    "only I, X, Y and Z are allowed",
                )),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_letters(&letters)
    }
}

impl Serialize for PauliOperator {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for PauliOperator {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> PauliOperator {
        s.parse().unwrap()
    }

    #[test]
    fn parse_examples() {
        let id = p("III");
        assert!(id.is_identity());
        assert_eq!(id.num_qubits(), 3);

        let xiz = p("XIZ");
        assert_eq!(xiz.x_bits(), 0b001);
        assert_eq!(xiz.z_bits(), 0b100);

        let y = p("Y");
        assert_eq!((y.x_bits(), y.z_bits()), (1, 1));
    }

    #[test]
    fn parse_rejects_bad_input() {
        assert!("".parse::<PauliOperator>().is_err());
        assert!("XQZ".parse::<PauliOperator>().is_err());
        assert!("x".parse::<PauliOperator>().is_err());
        assert!("I".repeat(33).parse::<PauliOperator>().is_err());
        assert!("Z".repeat(32).parse::<PauliOperator>().is_ok());
    }

    #[test]
    fn weights() {
        assert_eq!(p("III").weight(), 0);
        assert_eq!(p("XIZ").weight(), 2);
        assert_eq!(p("YYY").weight(), 3);
    }

    #[test]
    fn commutation() {
        assert!(!p("X").commutes(&p("Z")).unwrap());
        assert!(p("XX").commutes(&p("ZZ")).unwrap());
        assert!(p("XYZ").commutes(&p("III")).unwrap());
        assert!(p("X").commutes(&p("XX")).is_err());
    }

    #[test]
    fn products() {
        let e = p("XYZ");
        assert!(e.multiply(&e).unwrap().is_identity());
        assert_eq!(p("X").multiply(&p("Z")).unwrap(), p("Y"));
        assert_eq!(p("ZZI").multiply(&p("ZIZ")).unwrap(), p("IZZ"));
        assert!(p("X").multiply(&p("XX")).is_err());
    }

    #[test]
    fn permutation_moves_letters() {
        assert_eq!(p("XYZ").permuted(&[2, 0, 1]).unwrap(), p("YZX"));
    }

    fn arb_triple() -> impl Strategy<Value = (PauliOperator, PauliOperator, PauliOperator)> {
        (1usize..=32).prop_flat_map(|n| {
            let m = low_mask(n);
            let op = (any::<u32>(), any::<u32>())
                .prop_map(move |(x, z)| PauliOperator::from_masks(n, x & m, z & m).unwrap());
            (op.clone(), op.clone(), op)
        })
    }

    proptest! {
        #[test]
        fn string_round_trip((a, _, _) in arb_triple()) {
            let s = a.to_string();
            prop_assert_eq!(s.parse::<PauliOperator>().unwrap(), a);
        }

        #[test]
        fn symplectic_bilinearity((a, b, c) in arb_triple()) {
            let ab = a.multiply(&b).unwrap();
            let lhs = ab.commutes(&c).unwrap();
            let rhs = a.commutes(&c).unwrap() == b.commutes(&c).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn weight_bounded((a, _, _) in arb_triple()) {
            prop_assert!(a.weight() <= a.num_qubits());
            prop_assert_eq!(a.weight() == 0, a.is_identity());
        }
    }
}
