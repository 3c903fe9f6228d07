//! Rank-2 sublattices of ℤ² in Hermite normal form.
//!
//! A sublattice is stored by its column basis `(x·e₁, y·e₁ + z·e₂)` with
//! `x, z ≥ 1` and `0 ≤ y < x`; this is a bijection with finite-index
//! sublattices and the index is `x·z`.

use crate::error::{domain, Error, Result};
use crate::qform::IntMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Hnf {
    pub x: i128,
    pub y: i128,
    pub z: i128,
}

impl Hnf {
    pub fn index(&self) -> i128 {
        self.x * self.z
    }

    /// Basis vectors as matrix columns: `[[x, y], [0, z]]`.
    pub fn basis(&self) -> IntMatrix {
        IntMatrix::new(self.x, self.y, 0, self.z)
    }

    pub fn contains(&self, v: (i128, i128)) -> bool {
        let (a, b) = v;
        if b % self.z != 0 {
            return false;
        }
        (a - (b / self.z) * self.y) % self.x == 0
    }

    /// Whether `other ⊆ self`.
    pub fn contains_lattice(&self, other: &Hnf) -> bool {
        self.contains((other.x, 0)) && self.contains((other.y, other.z))
    }
}

/// All index-`m` sublattices of ℤ², lexicographic in `(x, y, z)`.
pub fn enumerate_hnf(m: u64) -> Result<Vec<Hnf>> {
    if m == 0 {
        return domain("sublattice index must be at least 1");
    }
    let m = m as i128;
    let mut out = Vec::new();
    for x in 1..=m {
        if m % x != 0 {
            continue;
        }
        let z = m / x;
        out.extend((0..x).map(|y| Hnf { x, y, z }));
    }
    Ok(out)
}

/// Hermite normal form of the ℤ-span of `gens`, or `None` when the span
/// has rank below 2.
pub fn hnf_from_generators(gens: &[(i128, i128)]) -> Result<Option<Hnf>> {
    let mut rows: Vec<(i128, i128)> = gens.iter().copied().filter(|&v| v != (0, 0)).collect();
    // Euclid on the second coordinate until one row carries their gcd.
    let pivot = loop {
        let Some((i, _)) = rows
            .iter()
            .enumerate()
            .filter(|(_, r)| r.1 != 0)
            .min_by_key(|(_, r)| r.1.abs())
        else {
            return Ok(None);
        };
        let (pa, pb) = rows[i];
        let mut done = true;
        for (j, row) in rows.iter_mut().enumerate() {
            if j == i || row.1 == 0 {
                continue;
            }
            let k = row.1.div_euclid(pb);
            row.0 = row
                .0
                .checked_sub(k.checked_mul(pa).ok_or(Error::Overflow("hnf"))?)
                .ok_or(Error::Overflow("hnf"))?;
            row.1 -= k * pb;
            if row.1 != 0 {
                done = false;
            }
        }
        if done {
            break rows.swap_remove(i);
        }
    };
    let (mut u, mut z) = pivot;
    if z < 0 {
        u = -u;
        z = -z;
    }
    let x = rows.iter().fold(0i128, |g, r| num_integer::Integer::gcd(&g, &r.0));
    if x == 0 {
        return Ok(None);
    }
    Ok(Some(Hnf { x, y: u.rem_euclid(x), z }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::sigma;

    #[test]
    fn enumerate_small_indices() {
        assert_eq!(enumerate_hnf(1).unwrap(), vec![Hnf { x: 1, y: 0, z: 1 }]);
        assert_eq!(enumerate_hnf(4).unwrap().len(), 7);
        assert_eq!(enumerate_hnf(6).unwrap().len(), 12);
        assert!(enumerate_hnf(0).is_err());
    }

    #[test]
    fn enumeration_is_sorted_and_distinct() {
        let v = enumerate_hnf(36).unwrap();
        let mut sorted = v.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(v, sorted);
        assert_eq!(v.len() as u64, sigma(36));
    }

    #[test]
    fn hnf_of_own_basis_is_identity() {
        for m in 1..30 {
            for h in enumerate_hnf(m).unwrap() {
                let again = hnf_from_generators(&[(h.x, 0), (h.y, h.z)]).unwrap().unwrap();
                assert_eq!(again, h);
            }
        }
    }

    #[test]
    fn hnf_of_redundant_generators() {
        // 2ℤ × ℤ spanned in a roundabout way
        let h = hnf_from_generators(&[(4, 0), (2, 2), (0, 1), (6, 1)]).unwrap().unwrap();
        assert_eq!(h.index(), 2);
        assert!(h.contains((2, 0)) && h.contains((0, 1)));
        assert!(hnf_from_generators(&[(1, 2), (2, 4)]).unwrap().is_none());
        assert!(hnf_from_generators(&[]).unwrap().is_none());
    }

    #[test]
    fn containment() {
        let h = Hnf { x: 3, y: 1, z: 2 };
        assert!(h.contains((3, 0)));
        assert!(h.contains((1, 2)));
        assert!(h.contains((4, 2)));
        assert!(!h.contains((1, 0)));
        assert!(!h.contains((0, 1)));
        assert!(Hnf { x: 1, y: 0, z: 1 }.contains_lattice(&h));
    }
}
