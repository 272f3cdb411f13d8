//! `[n, 1]` stabilizer codes: construction, validation, syndromes, logical
//! classes and distance.
//!
//! Syndrome bit `i` is the symplectic product of the error with
//! `generators[i]`, bit 0 least significant. The logical class of an error
//! is read off its commutation with the two logical representatives and is
//! mapped to the Bell label surviving the purification picture:
//! I → Φ+, X → Ψ+, Y → Ψ−, Z → Φ−.

use std::fmt;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{CodeViolation, Error, Result};
use crate::gf2::{self, Basis};
use crate::pauli::{low_mask, Pauli, PauliOperator, MAX_QUBITS};

/// Default largest block size for operations that walk all `4^n` errors.
pub const DEFAULT_ENUMERATION_CAP: usize = 12;

/// Syndrome bits packed into an integer in `[0, 2^(n-1))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Syndrome(pub u32);

impl Syndrome {
    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn weight(self) -> u32 {
        self.0.count_ones()
    }
}

/// Coset of the stabilizer inside its normalizer, i.e. the logical Pauli an
/// error applies to the encoded qubit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum LogicalClass {
    I,
    X,
    Y,
    Z,
}

impl LogicalClass {
    pub const ALL: [LogicalClass; 4] = [
        LogicalClass::I,
        LogicalClass::X,
        LogicalClass::Y,
        LogicalClass::Z,
    ];

    /// Column in `(Φ+, Ψ+, Ψ−, Φ−)` order.
    pub fn index(self) -> usize {
        self as usize
    }

    pub fn bell_label(self) -> &'static str {
        match self {
            LogicalClass::I => "phi_plus",
            LogicalClass::X => "psi_plus",
            LogicalClass::Y => "psi_minus",
            LogicalClass::Z => "phi_minus",
        }
    }

    #[inline]
    pub(crate) fn from_anticommutation(with_z: bool, with_x: bool) -> Self {
        match (with_z, with_x) {
            (false, false) => LogicalClass::I,
            (true, false) => LogicalClass::X,
            (true, true) => LogicalClass::Y,
            (false, true) => LogicalClass::Z,
        }
    }
}

impl From<LogicalClass> for Pauli {
    fn from(c: LogicalClass) -> Self {
        match c {
            LogicalClass::I => Pauli::I,
            LogicalClass::X => Pauli::X,
            LogicalClass::Y => Pauli::Y,
            LogicalClass::Z => Pauli::Z,
        }
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct StabilizerCode {
    n: usize,
    generators: Vec<PauliOperator>,
    logical_x: PauliOperator,
    logical_z: PauliOperator,
}

impl fmt::Debug for StabilizerCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("StabilizerCode")
            .field("n", &self.n)
            .field(
                "generators",
                &self
                    .generators
                    .iter()
                    .map(|g| g.to_string())
                    .collect::<Vec<_>>(),
            )
            .field("logical_x", &self.logical_x.to_string())
            .field("logical_z", &self.logical_z.to_string())
            .finish()
    }
}

/// Checks every code invariant and reports the first violation.
pub fn validate_stabilizer(
    n: usize,
    generators: &[PauliOperator],
    logical_x: &PauliOperator,
    logical_z: &PauliOperator,
) -> std::result::Result<(), CodeViolation> {
    validate_generators(n, generators)?;
    if logical_x.num_qubits() != n {
        return Err(CodeViolation::LogicalSize('X'));
    }
    if logical_z.num_qubits() != n {
        return Err(CodeViolation::LogicalSize('Z'));
    }
    let basis = span(generators);
    for (name, logical) in [('X', logical_x), ('Z', logical_z)] {
        if let Some(i) = generators
            .iter()
            .position(|g| g.anticommutes_unchecked(logical))
        {
            return Err(CodeViolation::LogicalNotInNormalizer(name, i));
        }
        if basis.contains(logical.to_vector()) {
            return Err(CodeViolation::LogicalInStabilizer(name));
        }
    }
    if !logical_x.anticommutes_unchecked(logical_z) {
        return Err(CodeViolation::LogicalsCommute);
    }
    Ok(())
}

fn validate_generators(
    n: usize,
    generators: &[PauliOperator],
) -> std::result::Result<(), CodeViolation> {
    if n == 0 || n > MAX_QUBITS || generators.len() + 1 != n {
        return Err(CodeViolation::Dimension {
            n,
            generators: generators.len(),
        });
    }
    for (i, g) in generators.iter().enumerate() {
        if g.num_qubits() != n {
            return Err(CodeViolation::GeneratorSize {
                index: i,
                expected: n,
                actual: g.num_qubits(),
            });
        }
    }
    for i in 0..generators.len() {
        for j in i + 1..generators.len() {
            if generators[i].anticommutes_unchecked(&generators[j]) {
                return Err(CodeViolation::Anticommuting(i, j));
            }
        }
    }
    let mut basis = Basis::new();
    for (i, g) in generators.iter().enumerate() {
        if !basis.insert(g.to_vector()) {
            return Err(CodeViolation::Dependent(i));
        }
    }
    Ok(())
}

fn span(generators: &[PauliOperator]) -> Basis {
    let mut basis = Basis::new();
    for g in generators {
        basis.insert(g.to_vector());
    }
    basis
}

/// Finds logical X and Z representatives for `n - 1` independent commuting
/// generators on `n` qubits.
///
/// Any valid pair is acceptable; this one prefers a pure-Z representative
/// for logical Z and a pure-X one for logical X whenever the corresponding
/// coset contains such an element.
pub fn derive_logicals(
    n: usize,
    generators: &[PauliOperator],
) -> Result<(PauliOperator, PauliOperator)> {
    validate_generators(n, generators)?;
    let stabilizer = span(generators);

    let mask = low_mask(n) as u64 | (low_mask(n) as u64) << 32;
    // v commutes with g iff popcount(v & swap(g)) is even.
    let constraints: Vec<u64> = generators
        .iter()
        .map(|g| g.z_bits() as u64 | (g.x_bits() as u64) << 32)
        .collect();
    let normalizer = gf2::nullspace(&constraints, mask);

    let mut extended = stabilizer.clone();
    let mut extra = Vec::with_capacity(2);
    for v in normalizer {
        if extended.insert(v) {
            extra.push(v);
        }
    }
    debug_assert_eq!(extra.len(), 2);
    let (a, b) = (extra[0], extra[1]);
    let cosets = [a, b, a ^ b];

    let pure_z = |v: u64| pure_representative(generators, v, true);
    let pure_x = |v: u64| pure_representative(generators, v, false);

    let z_pick = cosets
        .iter()
        .position(|&c| pure_z(c).is_some())
        .unwrap_or(0);
    let z_rep = pure_z(cosets[z_pick]).unwrap_or(cosets[z_pick]);
    let remaining: Vec<u64> = (0..3).filter(|&i| i != z_pick).map(|i| cosets[i]).collect();
    let x_rep = remaining
        .iter()
        .find_map(|&c| pure_x(c))
        .unwrap_or(remaining[0]);

    let logical_x = PauliOperator::from_vector(n, x_rep);
    let logical_z = PauliOperator::from_vector(n, z_rep);
    debug_assert!(logical_x.anticommutes_unchecked(&logical_z));
    Ok((logical_x, logical_z))
}

/// An element of `v·S̄` with no X part (`z_type`) or no Z part, if one exists.
fn pure_representative(generators: &[PauliOperator], v: u64, z_type: bool) -> Option<u64> {
    // Track which stabilizer combination produced each reduced row so the
    // offending half of `v` can be cancelled exactly.
    let part = |w: u64| if z_type { w & 0xffff_ffff } else { w >> 32 };
    let mut rows: Vec<(u64, u64)> = Vec::new();
    for g in generators {
        let full = g.to_vector();
        let mut r = (part(full), full);
        for &(pr, pf) in &rows {
            let pivot = 63 - pr.leading_zeros();
            if r.0 >> pivot & 1 == 1 {
                r = (r.0 ^ pr, r.1 ^ pf);
            }
        }
        if r.0 != 0 {
            let pivot = 63 - r.0.leading_zeros();
            for row in &mut rows {
                if row.0 >> pivot & 1 == 1 {
                    *row = (row.0 ^ r.0, row.1 ^ r.1);
                }
            }
            rows.push(r);
        }
    }
    let mut target = (part(v), v);
    for &(pr, pf) in &rows {
        let pivot = 63 - pr.leading_zeros();
        if target.0 >> pivot & 1 == 1 {
            target = (target.0 ^ pr, target.1 ^ pf);
        }
    }
    (target.0 == 0).then_some(target.1)
}

impl StabilizerCode {
    /// Builds and validates a code. Missing logicals are derived.
    pub fn new(
        n: usize,
        generators: Vec<PauliOperator>,
        logicals: Option<(PauliOperator, PauliOperator)>,
    ) -> Result<Self> {
        let (logical_x, logical_z) = match logicals {
            Some(pair) => pair,
            None => derive_logicals(n, &generators)?,
        };
        validate_stabilizer(n, &generators, &logical_x, &logical_z)?;
        Ok(Self {
            n,
            generators,
            logical_x,
            logical_z,
        })
    }

    /// The `[1, 1]` code with no generators.
    pub fn trivial() -> Self {
        Self {
            n: 1,
            generators: Vec::new(),
            logical_x: PauliOperator::from_masks_unchecked(1, 1, 0),
            logical_z: PauliOperator::from_masks_unchecked(1, 0, 1),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_syndromes(&self) -> usize {
        1usize << self.generators.len()
    }

    pub fn generators(&self) -> &[PauliOperator] {
        &self.generators
    }

    pub fn logical_x(&self) -> PauliOperator {
        self.logical_x
    }

    pub fn logical_z(&self) -> PauliOperator {
        self.logical_z
    }

    pub fn validate(&self) -> std::result::Result<(), CodeViolation> {
        validate_stabilizer(self.n, &self.generators, &self.logical_x, &self.logical_z)
    }

    fn check_size(&self, e: &PauliOperator) -> Result<()> {
        if e.num_qubits() != self.n {
            return Err(Error::SizeMismatch {
                left: e.num_qubits(),
                right: self.n,
            });
        }
        Ok(())
    }

    #[inline]
    pub(crate) fn syndrome_unchecked(&self, e: &PauliOperator) -> Syndrome {
        let mut bits = 0u32;
        for (i, g) in self.generators.iter().enumerate() {
            bits |= (e.anticommutes_unchecked(g) as u32) << i;
        }
        Syndrome(bits)
    }

    pub fn syndrome(&self, e: &PauliOperator) -> Result<Syndrome> {
        self.check_size(e)?;
        Ok(self.syndrome_unchecked(e))
    }

    #[inline]
    pub(crate) fn logical_class_unchecked(&self, e: &PauliOperator) -> LogicalClass {
        LogicalClass::from_anticommutation(
            e.anticommutes_unchecked(&self.logical_z),
            e.anticommutes_unchecked(&self.logical_x),
        )
    }

    pub fn logical_class(&self, e: &PauliOperator) -> Result<LogicalClass> {
        self.check_size(e)?;
        Ok(self.logical_class_unchecked(e))
    }

    /// Whether `e` is (up to phase) an element of the stabilizer group.
    pub fn in_stabilizer(&self, e: &PauliOperator) -> Result<bool> {
        self.check_size(e)?;
        Ok(span(&self.generators).contains(e.to_vector()))
    }

    /// All `2^(n-1)` elements of the stabilizer group, indexed by the subset
    /// of generators multiplied together.
    pub fn stabilizer_elements(&self) -> Vec<PauliOperator> {
        let mut out = Vec::with_capacity(self.num_syndromes());
        out.push(PauliOperator::from_masks_unchecked(self.n, 0, 0));
        for g in &self.generators {
            let len = out.len();
            for i in 0..len {
                out.push(out[i].mul_unchecked(g));
            }
        }
        out
    }

    /// Minimum weight over the normalizer minus the stabilizer, by
    /// enumeration of all `4^n` operators.
    pub fn min_distance(&self) -> Result<usize> {
        self.min_distance_with_cap(DEFAULT_ENUMERATION_CAP)
    }

    pub fn min_distance_with_cap(&self, cap: usize) -> Result<usize> {
        if self.n > cap {
            return Err(Error::EnumerationCap { n: self.n, cap });
        }
        let side = 1u32 << self.n;
        let mut best = usize::MAX;
        for x in 0..side {
            for z in 0..side {
                let e = PauliOperator::from_masks_unchecked(self.n, x, z);
                let w = e.weight();
                if w == 0 || w >= best {
                    continue;
                }
                if self.syndrome_unchecked(&e).0 == 0
                    && self.logical_class_unchecked(&e) != LogicalClass::I
                {
                    best = w;
                }
            }
        }
        Ok(best)
    }

    /// The same code with qubit `q` relabelled as `perm[q]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        let generators = self
            .generators
            .iter()
            .map(|g| g.permuted(perm))
            .collect::<Result<Vec<_>>>()?;
        Self::new(
            self.n,
            generators,
            Some((
                self.logical_x.permuted(perm)?,
                self.logical_z.permuted(perm)?,
            )),
        )
    }

    /// True when every qubit permutation maps the stabilizer group and both
    /// logical cosets onto themselves, so the code treats its positions
    /// exchangeably.
    pub fn is_permutation_symmetric(&self) -> bool {
        let basis = span(&self.generators);
        let same_coset =
            |a: PauliOperator, b: PauliOperator| basis.contains(a.to_vector() ^ b.to_vector());
        // Adjacent transpositions generate the symmetric group.
        (0..self.n.saturating_sub(1)).all(|q| {
            let mut perm: Vec<usize> = (0..self.n).collect();
            perm.swap(q, q + 1);
            let image = |e: &PauliOperator| e.permuted(&perm).expect("permutation length matches");
            self.generators
                .iter()
                .all(|g| basis.contains(image(g).to_vector()))
                && same_coset(image(&self.logical_x), self.logical_x)
                && same_coset(image(&self.logical_z), self.logical_z)
        })
    }

    /// Uniformly random `[n, 1]` code, deterministic in `seed`.
    ///
    /// Generators are drawn one at a time from the symplectic complement of
    /// the current span, rejecting dependent or anticommuting draws. The
    /// number of admissible draws at each step does not depend on the
    /// earlier choices, so every isotropic subspace is equally likely.
    pub fn random(n: usize, seed: u64) -> Result<Self> {
        if !(1..=DEFAULT_ENUMERATION_CAP).contains(&n) {
            return Err(Error::BlockSize(n));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = low_mask(n);
        let mut generators: Vec<PauliOperator> = Vec::with_capacity(n - 1);
        let mut basis = Basis::new();
        while generators.len() + 1 < n {
            let cand =
                PauliOperator::from_masks_unchecked(n, rng.gen::<u32>() & m, rng.gen::<u32>() & m);
            if cand.is_identity() || generators.iter().any(|g| g.anticommutes_unchecked(&cand)) {
                continue;
            }
            if basis.insert(cand.to_vector()) {
                generators.push(cand);
            }
        }
        Self::new(n, generators, None)
    }

    pub fn to_description(&self) -> CodeDescription {
        CodeDescription {
            n: self.n,
            generators: self.generators.iter().map(|g| g.to_string()).collect(),
            logical_x: Some(self.logical_x.to_string()),
            logical_z: Some(self.logical_z.to_string()),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let desc: CodeDescription =
            serde_json::from_str(text).map_err(|e| Error::CodeDescription(e.to_string()))?;
        desc.build()
    }

    pub fn from_json_file(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::CodeDescription(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_description()).expect("code description serializes")
    }
}

/// JSON shape of a code file:
/// `{"n": 5, "generators": ["ZZIII", ...], "logical_x": "XXXXX", "logical_z": "ZIIII"}`.
/// The logicals are optional and derived when absent.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeDescription {
    pub n: usize,
    pub generators: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub logical_x: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub logical_z: Option<String>,
}

impl CodeDescription {
    pub fn build(&self) -> Result<StabilizerCode> {
        let generators = self
            .generators
            .iter()
            .map(|s| s.parse::<PauliOperator>())
            .collect::<Result<Vec<_>>>()?;
        let logicals = match (&self.logical_x, &self.logical_z) {
            (Some(x), Some(z)) => Some((x.parse()?, z.parse()?)),
            (None, None) => None,
            _ => {
                return Err(Error::CodeDescription(
                    "logical_x and logical_z must be given together".into(),
                ))
            }
        };
        StabilizerCode::new(self.n, generators, logicals)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cat::{cat_code, rotated_cat_code};
    use proptest::prelude::*;

    fn p(s: &str) -> PauliOperator {
        s.parse().unwrap()
    }

    fn same_coset(code: &StabilizerCode, a: PauliOperator, b: PauliOperator) -> bool {
        code.in_stabilizer(&a.multiply(&b).unwrap()).unwrap()
    }

    #[test]
    fn cat3_syndromes() {
        let code = cat_code(3).unwrap();
        assert_eq!(code.syndrome(&p("ZII")).unwrap(), Syndrome(0b00));
        assert_eq!(code.syndrome(&p("XII")).unwrap(), Syndrome(0b11));
        assert_eq!(code.syndrome(&p("IXI")).unwrap(), Syndrome(0b01));
        assert!(code.syndrome(&p("XI")).is_err());
    }

    #[test]
    fn logical_classes() {
        let code = cat_code(3).unwrap();
        assert_eq!(code.logical_class(&p("III")).unwrap(), LogicalClass::I);
        assert_eq!(
            code.logical_class(&code.logical_x()).unwrap(),
            LogicalClass::X
        );
        assert_eq!(code.logical_class(&p("ZZI")).unwrap(), LogicalClass::I);
        assert_eq!(code.logical_class(&p("ZII")).unwrap(), LogicalClass::Z);
        assert_eq!(code.logical_class(&p("IZI")).unwrap(), LogicalClass::Z);
        for p in 2..=8 {
            let c = cat_code(p).unwrap();
            assert_eq!(c.logical_class(&c.logical_x()).unwrap(), LogicalClass::X);
            assert_eq!(c.logical_class(&c.logical_z()).unwrap(), LogicalClass::Z);
        }
    }

    #[test]
    fn distances() {
        for p in 2..=8 {
            assert_eq!(cat_code(p).unwrap().min_distance().unwrap(), 1, "cat({p})");
        }
        assert_eq!(StabilizerCode::trivial().min_distance().unwrap(), 1);
        assert_eq!(rotated_cat_code(5).unwrap().min_distance().unwrap(), 1);
        assert!(matches!(
            cat_code(13).unwrap().min_distance(),
            Err(Error::EnumerationCap { n: 13, cap: 12 })
        ));
    }

    #[test]
    fn five_qubit_code_has_distance_three() {
        let gens = ["XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"].map(p).to_vec();
        let code = StabilizerCode::new(5, gens, None).unwrap();
        assert_eq!(code.min_distance().unwrap(), 3);
    }

    #[test]
    fn validation_reports_violations() {
        assert!(cat_code(5).unwrap().validate().is_ok());

        let err = derive_logicals(2, &[p("XX"), p("ZZ")]).unwrap_err();
        assert!(matches!(
            err,
            Error::InvalidCode(CodeViolation::Dimension {
                n: 2,
                generators: 2
            })
        ));

        let err = derive_logicals(3, &[p("ZZI"), p("ZZI")]).unwrap_err();
        assert_eq!(err, Error::InvalidCode(CodeViolation::Dependent(1)));

        let err = derive_logicals(3, &[p("ZZI"), p("XII")]).unwrap_err();
        assert_eq!(err, Error::InvalidCode(CodeViolation::Anticommuting(0, 1)));

        let bad = validate_stabilizer(3, &[p("ZZI"), p("ZIZ")], &p("XXX"), &p("ZZI"));
        assert_eq!(bad, Err(CodeViolation::LogicalInStabilizer('Z')));
        let bad = validate_stabilizer(3, &[p("ZZI"), p("ZIZ")], &p("XII"), &p("ZII"));
        assert_eq!(bad, Err(CodeViolation::LogicalNotInNormalizer('X', 0)));
        let bad = validate_stabilizer(3, &[p("ZZI"), p("ZIZ")], &p("XXX"), &p("XXX"));
        assert_eq!(bad, Err(CodeViolation::LogicalsCommute));
    }

    #[test]
    fn derived_logicals_for_cat_codes() {
        for n in 2..=8 {
            let cat = cat_code(n).unwrap();
            let (lx, lz) = derive_logicals(n, cat.generators()).unwrap();
            assert!(same_coset(
                &cat,
                lx,
                PauliOperator::from_masks(n, low_mask(n), 0).unwrap()
            ));
            assert!(same_coset(
                &cat,
                lz,
                PauliOperator::single(n, 0, Pauli::Z).unwrap()
            ));

            let rot = rotated_cat_code(n).unwrap();
            let (lx, lz) = derive_logicals(n, rot.generators()).unwrap();
            assert!(same_coset(
                &rot,
                lx,
                PauliOperator::single(n, 0, Pauli::X).unwrap()
            ));
            assert!(same_coset(
                &rot,
                lz,
                PauliOperator::from_masks(n, 0, low_mask(n)).unwrap()
            ));
        }
        let (lx, lz) = derive_logicals(1, &[]).unwrap();
        assert_eq!((lx, lz), (p("X"), p("Z")));
    }

    #[test]
    fn cat_degeneracy_witness() {
        let code = cat_code(6).unwrap();
        let zs: Vec<_> = (0..6)
            .map(|q| PauliOperator::single(6, q, Pauli::Z).unwrap())
            .collect();
        for a in &zs {
            for b in &zs {
                assert_eq!(code.syndrome(a).unwrap(), code.syndrome(b).unwrap());
                assert_eq!(
                    code.logical_class(a).unwrap(),
                    code.logical_class(b).unwrap()
                );
            }
        }
        let xs: Vec<_> = (0..6)
            .map(|q| PauliOperator::single(6, q, Pauli::X).unwrap())
            .collect();
        for i in 0..6 {
            for j in i + 1..6 {
                assert_ne!(
                    code.syndrome(&xs[i]).unwrap(),
                    code.syndrome(&xs[j]).unwrap()
                );
            }
        }
    }

    #[test]
    fn random_codes() {
        let a = StabilizerCode::random(5, 1).unwrap();
        let b = StabilizerCode::random(5, 1).unwrap();
        assert_eq!(a, b);
        assert!(a.validate().is_ok());
        let two = StabilizerCode::random(2, 99).unwrap();
        assert_eq!(two.generators().len(), 1);
        for seed in 0..50 {
            let c = StabilizerCode::random(1 + (seed as usize % 8), seed).unwrap();
            assert!(c.validate().is_ok());
        }
    }

    #[test]
    fn permutation_symmetry_detection() {
        assert!(cat_code(5).unwrap().is_permutation_symmetric());
        assert!(rotated_cat_code(4).unwrap().is_permutation_symmetric());
        assert!(StabilizerCode::trivial().is_permutation_symmetric());
        let gens = ["XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"].map(p).to_vec();
        assert!(!StabilizerCode::new(5, gens, None)
            .unwrap()
            .is_permutation_symmetric());
    }

    #[test]
    fn json_round_trip_and_derivation() {
        let code = cat_code(5).unwrap();
        let back = StabilizerCode::from_json(&code.to_json()).unwrap();
        assert_eq!(back, code);

        let derived =
            StabilizerCode::from_json(r#"{"n": 3, "generators": ["ZZI", "ZIZ"]}"#).unwrap();
        assert!(derived.validate().is_ok());
        assert!(StabilizerCode::from_json(r#"{"n": 3, "generators": ["ZZI"]}"#).is_err());
        assert!(
            StabilizerCode::from_json(r#"{"n": 2, "generators": ["ZZ"], "logical_x": "XX"}"#)
                .is_err()
        );
    }

    fn arb_code() -> impl Strategy<Value = StabilizerCode> {
        (1usize..=6, any::<u64>()).prop_map(|(n, seed)| StabilizerCode::random(n, seed).unwrap())
    }

    proptest! {
        #[test]
        fn coset_consistency(code in arb_code(), x in any::<u32>(), z in any::<u32>(), subset in any::<u32>()) {
            let n = code.n();
            let e = PauliOperator::from_masks(n, x & low_mask(n), z & low_mask(n)).unwrap();
            let elements = code.stabilizer_elements();
            let s = elements[subset as usize % elements.len()];
            let es = e.multiply(&s).unwrap();
            prop_assert_eq!(code.syndrome(&es).unwrap(), code.syndrome(&e).unwrap());
            prop_assert_eq!(code.logical_class(&es).unwrap(), code.logical_class(&e).unwrap());
        }

        #[test]
        fn representative_invariance(code in arb_code(), which in 0usize..3) {
            // Swap in a different valid logical pair and check that the
            // induced partition differs only by a relabelling of X, Y, Z.
            let (lx, lz) = (code.logical_x(), code.logical_z());
            let ly = lx.multiply(&lz).unwrap();
            let (nx, nz) = match which {
                0 => (lz, lx),
                1 => (ly, lz),
                _ => (lx, ly),
            };
            let other = StabilizerCode::new(code.n(), code.generators().to_vec(), Some((nx, nz))).unwrap();
            let n = code.n();
            let mut map = std::collections::HashMap::new();
            for x in 0..(1u32 << n) {
                for z in 0..(1u32 << n) {
                    let e = PauliOperator::from_masks(n, x, z).unwrap();
                    let a = code.logical_class(&e).unwrap();
                    let b = other.logical_class(&e).unwrap();
                    let prev = *map.entry(a).or_insert(b);
                    prop_assert_eq!(prev, b);
                }
            }
            prop_assert_eq!(map[&LogicalClass::I], LogicalClass::I);
        }
    }

    #[test]
    fn min_distance_matches_weight_enumeration_oracle() {
        // Oracle: enumerate normalizer elements through the logical cosets
        // rather than scanning all 4^n operators.
        for seed in 0..30u64 {
            let n = 2 + (seed as usize % 5);
            let code = StabilizerCode::random(n, seed).unwrap();
            let stab = code.stabilizer_elements();
            let lx = code.logical_x();
            let lz = code.logical_z();
            let reps = [lx, lz, lx.multiply(&lz).unwrap()];
            let oracle = reps
                .iter()
                .flat_map(|r| stab.iter().map(move |s| r.multiply(s).unwrap().weight()))
                .min()
                .unwrap();
            assert_eq!(code.min_distance().unwrap(), oracle, "seed {seed}");
        }
    }
}
