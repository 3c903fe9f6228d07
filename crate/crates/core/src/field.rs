//! Imaginary quadratic fields given by a fundamental discriminant:
//! unit count, ring generator, and the splitting of rational primes.

use std::fmt;

use serde::Serialize;

use crate::arith::{factorize, is_prime, is_squarefree, kronecker};
use crate::error::{domain, Result};
use crate::qform::Bqf;

/// How the ring of integers is generated over ℤ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum RingGenerator {
    /// `ℤ[(1+√d)/2]`, when `d ≡ 1 mod 4`.
    HalfInteger,
    /// `ℤ[√d]`, when `d ≡ 2, 3 mod 4`.
    SqrtD,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FieldData {
    pub disc: i64,
    /// Square-free `d` with `F = ℚ(√d)`.
    pub d: i64,
    /// Number of roots of unity in the ring of integers.
    pub units: u32,
    pub generator: RingGenerator,
    /// Primes dividing the discriminant, increasing.
    pub ramified: Vec<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SplitKind {
    Split,
    Inert,
    Ramified,
}

impl fmt::Display for SplitKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SplitKind::Split => "split",
            SplitKind::Inert => "inert",
            SplitKind::Ramified => "ramified",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PrimeSplitInfo {
    pub p: u64,
    pub kind: SplitKind,
}

/// Validates a negative fundamental discriminant and returns its field data.
pub fn field_data(disc: i64) -> Result<FieldData> {
    if disc >= 0 {
        return domain(format!("discriminant {disc} must be negative"));
    }
    let abs = disc.unsigned_abs();
    let (d, generator) = match disc.rem_euclid(4) {
        1 => {
            if !is_squarefree(abs) {
                return domain(format!("{disc} ≡ 1 mod 4 but is not square-free"));
            }
            (disc, RingGenerator::HalfInteger)
        }
        0 => {
            let d = disc / 4;
            match d.rem_euclid(4) {
                2 | 3 => {}
                _ => {
                    return domain(format!(
                        "{disc} = 4·{d} with {d} ≡ {} mod 4; a fundamental 4d needs d ≡ 2, 3 mod 4",
                        d.rem_euclid(4)
                    ))
                }
            }
            if !is_squarefree(d.unsigned_abs()) {
                return domain(format!("{disc} = 4·{d} with {d} not square-free"));
            }
            (d, RingGenerator::SqrtD)
        }
        r => return domain(format!("{disc} ≡ {r} mod 4 is not a discriminant")),
    };
    let units = match disc {
        -3 => 6,
        -4 => 4,
        _ => 2,
    };
    let ramified = factorize(abs).into_iter().map(|(p, _)| p).collect();
    Ok(FieldData { disc, d, units, generator, ramified })
}

impl FieldData {
    /// `(trace, norm)` of the ring generator τ, so `τ² = trace·τ − norm`.
    pub fn generator_poly(&self) -> (i128, i128) {
        match self.generator {
            RingGenerator::HalfInteger => (1, (1 - self.d as i128) / 4),
            RingGenerator::SqrtD => (0, -(self.d as i128)),
        }
    }

    pub fn is_exceptional(&self) -> bool {
        self.units != 2
    }

    /// `d mod 4` in `{1, 2, 3}`.
    pub fn d_mod4(&self) -> i64 {
        self.d.rem_euclid(4)
    }

    pub fn split_kind(&self, p: u64) -> SplitKind {
        match kronecker(self.disc, p) {
            1 => SplitKind::Split,
            -1 => SplitKind::Inert,
            _ => SplitKind::Ramified,
        }
    }

    pub fn split_type(&self, p: u64) -> Result<PrimeSplitInfo> {
        if !is_prime(p) {
            return domain(format!("{p} is not prime"));
        }
        Ok(PrimeSplitInfo { p, kind: self.split_kind(p) })
    }

    /// Form of the prime ideal `ℤp + ℤ(b−√D)/2` above a split or ramified
    /// prime, with `b ≡ D mod 2`, `b² ≡ D mod 4p`, `|b|` minimal and ties
    /// broken toward positive `b`. The conjugate prime has the mirrored form.
    pub fn prime_ideal_form(&self, p: u64) -> Result<Bqf> {
        let kind = self.split_type(p)?.kind;
        if kind == SplitKind::Inert {
            return domain(format!("{p} is inert in discriminant {}", self.disc));
        }
        let disc = self.disc as i128;
        let p = p as i128;
        for mag in 0..=p {
            for b in [mag, -mag] {
                if (b - disc).rem_euclid(2) == 0 && (b * b - disc).rem_euclid(4 * p) == 0 {
                    return Bqf::new(p, b, (b * b - disc) / (4 * p));
                }
            }
        }
        unreachable!("a square root of D mod 4p exists for non-inert p")
    }

    /// Reduced form whose class is the ramified prime ideal above `r`.
    pub fn ramified_factor_form(&self, r: u64) -> Result<Bqf> {
        if !self.ramified.contains(&r) {
            return domain(format!("{r} does not divide the discriminant {}", self.disc));
        }
        self.prime_ideal_form(r)?.reduce()
    }
}

impl fmt::Display for FieldData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ring = match self.generator {
            RingGenerator::HalfInteger => format!("Z[(1+sqrt({}))/2]", self.d),
            RingGenerator::SqrtD => format!("Z[sqrt({})]", self.d),
        };
        write!(f, "D={} d={} units={} ring={}", self.disc, self.d, self.units, ring)
    }
}

/// Negative fundamental discriminants in `[lo, -1]`, decreasing in absolute value order reversed.
pub fn fundamental_discriminants(lo: i64) -> Vec<i64> {
    (lo..0).rev().filter(|&d| field_data(d).is_ok()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::primes_up_to;

    #[test]
    fn field_data_examples() {
        let f = field_data(-20).unwrap();
        assert_eq!((f.d, f.units, f.generator), (-5, 2, RingGenerator::SqrtD));
        let f = field_data(-3).unwrap();
        assert_eq!((f.d, f.units, f.generator), (-3, 6, RingGenerator::HalfInteger));
        assert_eq!(field_data(-4).unwrap().units, 4);
        assert!(field_data(-12).is_err());
        assert!(field_data(-16).is_err());
        assert!(field_data(-27).is_err());
        assert!(field_data(5).is_err());
        assert!(field_data(-6).is_err());
    }

    #[test]
    fn fundamental_list_start() {
        assert_eq!(
            fundamental_discriminants(-40),
            vec![-3, -4, -7, -8, -11, -15, -19, -20, -23, -24, -31, -35, -39, -40]
        );
    }

    #[test]
    fn split_examples() {
        let f20 = field_data(-20).unwrap();
        assert_eq!(f20.split_type(3).unwrap().kind, SplitKind::Split);
        assert_eq!(f20.split_type(11).unwrap().kind, SplitKind::Inert);
        assert_eq!(field_data(-7).unwrap().split_type(2).unwrap().kind, SplitKind::Split);
        assert!(f20.split_type(9).is_err());
    }

    #[test]
    fn split_primes_mod_20() {
        let f20 = field_data(-20).unwrap();
        for p in primes_up_to(300) {
            let expected = match p % 20 {
                _ if p == 2 || p == 5 => SplitKind::Ramified,
                1 | 3 | 7 | 9 => SplitKind::Split,
                _ => SplitKind::Inert,
            };
            assert_eq!(f20.split_kind(p), expected, "p={p}");
        }
    }

    #[test]
    fn ramified_exactly_divisors() {
        for d in fundamental_discriminants(-200) {
            let f = field_data(d).unwrap();
            for p in primes_up_to(200) {
                let ram = f.split_kind(p) == SplitKind::Ramified;
                assert_eq!(ram, d % p as i64 == 0, "D={d} p={p}");
            }
        }
    }

    #[test]
    fn ramified_factor_examples() {
        let f20 = field_data(-20).unwrap();
        assert_eq!(f20.ramified_factor_form(2).unwrap(), Bqf::new(2, 2, 3).unwrap());
        assert_eq!(f20.ramified_factor_form(5).unwrap(), Bqf::new(1, 0, 5).unwrap());
        assert_eq!(field_data(-23).unwrap().ramified_factor_form(23).unwrap(), Bqf::new(1, 1, 6).unwrap());
        assert_eq!(field_data(-4).unwrap().ramified_factor_form(2).unwrap(), Bqf::new(1, 0, 1).unwrap());
        assert!(f20.ramified_factor_form(3).is_err());
    }

    #[test]
    fn density_of_split_and_inert() {
        // diagnostic: each type should be near half of the unramified primes
        let primes = primes_up_to(10_000);
        for d in [-7i64, -20, -23, -40] {
            let f = field_data(d).unwrap();
            let split = primes.iter().filter(|&&p| f.split_kind(p) == SplitKind::Split).count() as f64;
            let inert = primes.iter().filter(|&&p| f.split_kind(p) == SplitKind::Inert).count() as f64;
            let half = primes.len() as f64 / 2.0;
            assert!((split - half).abs() < 0.1 * half && (inert - half).abs() < 0.1 * half);
        }
    }
}
