//! Minimal GF(2) linear algebra on 64-bit packed rows.

/// Incrementally built row-reduced basis. Each stored row owns a distinct
/// pivot bit (its highest set bit), and no other stored row has that bit set.
#[derive(Debug, Clone, Default)]
pub(crate) struct Basis {
    rows: Vec<u64>,
}

impl Basis {
    pub fn new() -> Self {
        Self::default()
    }

    #[cfg(test)]
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Residual of `v` after cancelling every pivot present in the basis.
    pub fn reduce(&self, mut v: u64) -> u64 {
        for &r in &self.rows {
            let pivot = 63 - r.leading_zeros();
            if v >> pivot & 1 == 1 {
                v ^= r;
            }
        }
        v
    }

    pub fn contains(&self, v: u64) -> bool {
        self.reduce(v) == 0
    }

    /// Adds `v` and returns `true` when it was independent of the basis.
    pub fn insert(&mut self, v: u64) -> bool {
        let r = self.reduce(v);
        if r == 0 {
            return false;
        }
        let pivot = 63 - r.leading_zeros();
        for row in &mut self.rows {
            if *row >> pivot & 1 == 1 {
                *row ^= r;
            }
        }
        self.rows.push(r);
        true
    }
}

/// Basis of `{v : v & mask == v, popcount(v & c) even for every c}`.
pub(crate) fn nullspace(constraints: &[u64], mask: u64) -> Vec<u64> {
    // Gauss-Jordan on the constraint rows, restricted to the columns in `mask`.
    let mut rows: Vec<u64> = constraints.iter().map(|c| c & mask).collect();
    let mut pivots: Vec<u32> = Vec::new();
    let mut rank = 0;
    for col in 0..64u32 {
        if mask >> col & 1 == 0 {
            continue;
        }
        let Some(found) = (rank..rows.len()).find(|&i| rows[i] >> col & 1 == 1) else {
            continue;
        };
        rows.swap(rank, found);
        let pivot_row = rows[rank];
        for (i, row) in rows.iter_mut().enumerate() {
            if i != rank && *row >> col & 1 == 1 {
                *row ^= pivot_row;
            }
        }
        pivots.push(col);
        rank += 1;
    }

    let mut basis = Vec::new();
    for free in 0..64u32 {
        if mask >> free & 1 == 0 || pivots.contains(&free) {
            continue;
        }
        let mut v = 1u64 << free;
        for (i, &p) in pivots.iter().enumerate() {
            if rows[i] >> free & 1 == 1 {
                v |= 1u64 << p;
            }
        }
        basis.push(v);
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_detects_dependence() {
        let mut b = Basis::new();
        assert!(b.insert(0b011));
        assert!(b.insert(0b110));
        assert!(!b.insert(0b101));
        assert!(b.contains(0b101));
        assert!(!b.contains(0b001));
        assert_eq!(b.rank(), 2);
    }

    #[test]
    fn nullspace_is_orthogonal_and_complete() {
        let constraints = [0b1100u64, 0b0110];
        let mask = 0b1111;
        let ns = nullspace(&constraints, mask);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            for c in &constraints {
                assert_eq!((v & c).count_ones() % 2, 0);
            }
        }
        let mut b = Basis::new();
        for v in ns {
            assert!(b.insert(v));
        }
        assert!(b.contains(0b1110));
        assert!(b.contains(0b0001));
    }
}
