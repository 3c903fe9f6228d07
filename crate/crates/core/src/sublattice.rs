//! Brute-force ground truth: count index-`m` sublattices of a form's lattice
//! up to proper and full isometry by reducing every subform.

use std::collections::HashSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{domain, Result};
use crate::field::FieldData;
use crate::lattice::{enumerate_hnf, hnf_from_generators, Hnf};
use crate::qform::Bqf;
use crate::Mode;

/// Per-index counts `(a_m^+, a_m)` for `1 ≤ m ≤ N`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoefficientTable {
    pub form: Bqf,
    /// `sl[m-1] = a_m^+`.
    pub sl: Vec<u64>,
    /// `gl[m-1] = a_m`.
    pub gl: Vec<u64>,
}

impl CoefficientTable {
    pub fn max_index(&self) -> usize {
        self.sl.len()
    }

    pub fn column(&self, mode: Mode) -> Vec<i64> {
        let col = match mode {
            Mode::Sl => &self.sl,
            Mode::Gl => &self.gl,
        };
        col.iter().map(|&v| v as i64).collect()
    }

    /// Cumulative sums `s_m = Σ_{i≤m} a_i`.
    pub fn partial_sums(&self, mode: Mode) -> Vec<u64> {
        partial_sums(&self.column(mode).iter().map(|&v| v as u64).collect::<Vec<_>>())
    }
}

pub fn partial_sums(values: &[u64]) -> Vec<u64> {
    values
        .iter()
        .scan(0u64, |acc, &v| {
            *acc += v;
            Some(*acc)
        })
        .collect()
}

/// `(a_m^+, a_m)` for a single index.
pub fn count_index(f: &Bqf, m: u64) -> Result<(u64, u64)> {
    let mut sl = HashSet::new();
    for h in enumerate_hnf(m)? {
        sl.insert(f.transform(&h.basis())?.canonical_sl()?);
    }
    let gl: HashSet<Bqf> = sl.iter().map(|g| Bqf::new_unchecked(g.a, g.b.abs(), g.c)).collect();
    Ok((sl.len() as u64, gl.len() as u64))
}

/// Counts for every index up to `n`. With `parallel` the indices are
/// distributed over the rayon pool; the result does not depend on it.
pub fn brute_coefficients(f: &Bqf, n: usize, parallel: bool) -> Result<CoefficientTable> {
    if n == 0 {
        return domain("the index bound must be at least 1");
    }
    let pairs: Vec<(u64, u64)> = if parallel {
        (1..=n as u64).into_par_iter().map(|m| count_index(f, m)).collect::<Result<_>>()?
    } else {
        (1..=n as u64).map(|m| count_index(f, m)).collect::<Result<_>>()?
    };
    let (sl, gl) = pairs.into_iter().unzip();
    Ok(CoefficientTable { form: *f, sl, gl })
}

/// Smallest `R`-module containing the sublattice `k` of `R = ℤ + ℤτ`,
/// written in the basis `(1, τ)`. Computed by repeatedly adjoining
/// `τ·v` for each basis vector and re-normalizing.
pub fn ring_closure(field: &FieldData, k: Hnf) -> Result<Hnf> {
    let (t, n) = field.generator_poly();
    // τ·(a + bτ) = −n·b + (a + t·b)τ
    let times_tau = |(a, b): (i128, i128)| (-n * b, a + t * b);
    let mut cur = k;
    loop {
        let basis = [(cur.x, 0), (cur.y, cur.z)];
        let gens = [basis[0], basis[1], times_tau(basis[0]), times_tau(basis[1])];
        let next = hnf_from_generators(&gens)?.expect("a full-rank lattice stays full rank");
        if next == cur {
            return Ok(cur);
        }
        cur = next;
    }
}

/// For each `m ≤ n`, the number of index-`m` sublattices `K ⊆ R` with
/// `RK = R`.
pub fn full_closure_counts(field: &FieldData, n: usize) -> Result<Vec<u64>> {
    let whole = Hnf { x: 1, y: 0, z: 1 };
    (1..=n as u64)
        .map(|m| {
            let mut count = 0;
            for k in enumerate_hnf(m)? {
                if ring_closure(field, k)? == whole {
                    count += 1;
                }
            }
            Ok(count)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::sigma;
    use crate::field::field_data;

    fn q(a: i128, b: i128, c: i128) -> Bqf {
        Bqf::new(a, b, c).unwrap()
    }

    #[test]
    fn small_examples() {
        assert_eq!(count_index(&q(1, 1, 1), 1).unwrap(), (1, 1));
        // x²+4y² and the imprimitive 2x²+2y²
        assert_eq!(count_index(&q(1, 0, 1), 2).unwrap(), (2, 2));
        assert_eq!(count_index(&q(1, 1, 2), 2).unwrap().0, 2);
    }

    #[test]
    fn index_two_of_square_lattice() {
        let mut forms: Vec<Bqf> = enumerate_hnf(2)
            .unwrap()
            .iter()
            .map(|h| q(1, 0, 1).transform(&h.basis()).unwrap().reduce().unwrap())
            .collect();
        forms.sort();
        assert_eq!(forms, vec![q(1, 0, 4), q(1, 0, 4), Bqf::new_unchecked(2, 0, 2)]);
    }

    #[test]
    fn table_invariants() {
        let t = brute_coefficients(&q(2, 1, 3), 60, false).unwrap();
        assert_eq!((t.sl[0], t.gl[0]), (1, 1));
        for m in 1..=60 {
            let (s, g) = (t.sl[m - 1], t.gl[m - 1]);
            assert!(g <= s && s <= 2 * g && s <= sigma(m as u64), "m={m}");
        }
        assert_eq!(t, brute_coefficients(&q(2, 1, 3), 60, true).unwrap());
    }

    #[test]
    fn partial_sum_basics() {
        assert_eq!(partial_sums(&[1, 1, 1, 1]), vec![1, 2, 3, 4]);
        let t = brute_coefficients(&q(1, 0, 1), 10, false).unwrap();
        assert_eq!(t.partial_sums(Mode::Gl)[0], 1);
    }

    #[test]
    fn ring_closure_examples() {
        let f = field_data(-20).unwrap();
        // τ² = −5 is odd, so 2ℤ + ℤτ grows to R
        assert_eq!(ring_closure(&f, Hnf { x: 2, y: 0, z: 1 }).unwrap(), Hnf { x: 1, y: 0, z: 1 });
        // ℤ + 2ℤτ closes to R
        assert_eq!(ring_closure(&f, Hnf { x: 1, y: 0, z: 2 }).unwrap(), Hnf { x: 1, y: 0, z: 1 });
        // 2R stays 2R
        assert_eq!(ring_closure(&f, Hnf { x: 2, y: 0, z: 2 }).unwrap(), Hnf { x: 2, y: 0, z: 2 });
        // the ramified prime above 2 is 2ℤ + (1+τ)ℤ
        assert_eq!(ring_closure(&f, Hnf { x: 2, y: 1, z: 1 }).unwrap(), Hnf { x: 2, y: 1, z: 1 });
    }
}
