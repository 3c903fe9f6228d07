//! Dirichlet series truncated at a fixed bound, with exact rational
//! coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{domain, Error, Result};
use crate::field::{FieldData, SplitKind};

/// `Σ_{n≤N} c_n n^{-s}`; `coeffs[n-1]` holds `c_n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TruncatedSeries {
    coeffs: Vec<BigRational>,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Smallest-prime-factor table on `0..=n`.
fn spf_table(n: usize) -> Vec<u64> {
    let mut spf = vec![0u64; n + 1];
    for i in 2..=n {
        if spf[i] == 0 {
            for j in (i..=n).step_by(i) {
                if spf[j] == 0 {
                    spf[j] = i as u64;
                }
            }
        }
    }
    spf
}

impl TruncatedSeries {
    pub fn zero(n: usize) -> Self {
        assert!(n >= 1, "truncation bound must be at least 1");
        TruncatedSeries { coeffs: vec![BigRational::zero(); n] }
    }

    /// The multiplicative identity `1`.
    pub fn one(n: usize) -> Self {
        let mut s = Self::zero(n);
        s.coeffs[0] = BigRational::one();
        s
    }

    pub fn from_fn(n: usize, f: impl Fn(u64) -> BigRational) -> Self {
        assert!(n >= 1, "truncation bound must be at least 1");
        TruncatedSeries { coeffs: (1..=n as u64).map(f).collect() }
    }

    pub fn from_integers(values: &[i64]) -> Self {
        TruncatedSeries { coeffs: values.iter().map(|&v| rat(v)).collect() }
    }

    /// Finite sum `Σ c·n^{-s}` over the given terms; terms beyond the bound are dropped.
    pub fn from_terms(n: usize, terms: &[(u64, i64)]) -> Self {
        let mut s = Self::zero(n);
        for &(k, c) in terms {
            if k >= 1 && k as usize <= n {
                s.coeffs[k as usize - 1] += rat(c);
            }
        }
        s
    }

    /// Multiplicative series with `c_{p^e} = local(p, e)`.
    pub fn multiplicative(n: usize, local: impl Fn(u64, u32) -> BigRational) -> Self {
        let spf = spf_table(n);
        Self::from_fn(n, |mut m| {
            let mut acc = BigRational::one();
            while m > 1 {
                let p = spf[m as usize];
                let mut e = 0;
                while m % p == 0 {
                    m /= p;
                    e += 1;
                }
                acc *= local(p, e);
                if acc.is_zero() {
                    break;
                }
            }
            acc
        })
    }

    /// `ζ(s)`.
    pub fn zeta(n: usize) -> Self {
        Self::from_fn(n, |_| BigRational::one())
    }

    /// `ζ(s−1)`.
    pub fn zeta_shift(n: usize) -> Self {
        Self::from_fn(n, |m| rat(m as i64))
    }

    /// `ζ(2s)`.
    pub fn zeta_double(n: usize) -> Self {
        Self::from_fn(n, |m| {
            let r = m.isqrt();
            if r * r == m {
                BigRational::one()
            } else {
                BigRational::zero()
            }
        })
    }

    /// `Π_{p ∈ P} (1 + sign·p^{-s})^{exponent}` for `exponent = ±1`, where
    /// `P` is the set of primes accepted by `member`.
    pub fn prime_product(n: usize, member: impl Fn(u64) -> bool, sign: i64, exponent: i32) -> Self {
        assert!(sign == 1 || sign == -1, "sign must be ±1");
        assert!(exponent == 1 || exponent == -1, "exponent must be ±1");
        Self::multiplicative(n, |p, e| {
            if !member(p) {
                return BigRational::zero();
            }
            if exponent == 1 {
                match e {
                    1 => rat(sign),
                    _ => BigRational::zero(),
                }
            } else {
                // (1 + sign·x)^{-1} = Σ (−sign)^e x^e
                rat((-sign).pow(e))
            }
        })
    }

    /// `Π_{p ∈ P} (1 − p^{-2s})^{-1}`.
    pub fn prime_square_inverse(n: usize, member: impl Fn(u64) -> bool) -> Self {
        Self::multiplicative(n, |p, e| if member(p) && e % 2 == 0 { BigRational::one() } else { BigRational::zero() })
    }

    /// Dedekind zeta `ζ_F(s)`: `c_n` is the number of ideals of norm `n`.
    pub fn zeta_f(field: &FieldData, n: usize) -> Self {
        Self::multiplicative(n, |p, e| match field.split_kind(p) {
            SplitKind::Split => rat(e as i64 + 1),
            SplitKind::Inert if e % 2 == 0 => BigRational::one(),
            SplitKind::Inert => BigRational::zero(),
            SplitKind::Ramified => BigRational::one(),
        })
    }

    /// `Π (1 + sign·p^{-s})^{exponent}` over primes of one splitting type.
    pub fn split_product(field: &FieldData, kind: SplitKind, n: usize, sign: i64, exponent: i32) -> Self {
        Self::prime_product(n, |p| field.split_kind(p) == kind, sign, exponent)
    }

    /// Truncation bound `N`.
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `n^{-s}`, with `n ≥ 1`.
    pub fn coeff(&self, n: usize) -> &BigRational {
        &self.coeffs[n - 1]
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn truncate(&self, n: usize) -> Self {
        assert!(n >= 1 && n <= self.len());
        TruncatedSeries { coeffs: self.coeffs[..n].to_vec() }
    }

    fn check_len(&self, other: &Self) -> Result<()> {
        if self.len() != other.len() {
            return domain(format!("series truncated at {} and {} cannot be combined", self.len(), other.len()));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_len(other)?;
        Ok(TruncatedSeries { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect() })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_len(other)?;
        Ok(TruncatedSeries { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect() })
    }

    /// Dirichlet convolution.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_len(other)?;
        let n = self.len();
        let mut out = vec![BigRational::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let d = i + 1;
            for (j, b) in other.coeffs[..n / d].iter().enumerate() {
                if !b.is_zero() {
                    out[d * (j + 1) - 1] += a * b;
                }
            }
        }
        Ok(TruncatedSeries { coeffs: out })
    }

    /// The unique `C` with `C·other = self` up to the bound.
    pub fn try_div(&self, other: &Self) -> Result<Self> {
        self.check_len(other)?;
        let lead = other.coeffs[0].clone();
        if lead.is_zero() {
            return domain("division by a series with zero leading coefficient");
        }
        let n = self.len();
        let mut out: Vec<BigRational> = self.coeffs.clone();
        // out_m = (a_m − Σ_{d|m, d>1} b_d out_{m/d}) / b_1, with the sum
        // pushed forward from each finished index.
        for m in 1..=n {
            out[m - 1] = &out[m - 1] / &lead;
            if out[m - 1].is_zero() {
                continue;
            }
            let c = out[m - 1].clone();
            for d in 2..=n / m {
                let b = &other.coeffs[d - 1];
                if !b.is_zero() {
                    out[m * d - 1] -= &c * b;
                }
            }
        }
        Ok(TruncatedSeries { coeffs: out })
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        TruncatedSeries { coeffs: self.coeffs.iter().map(|c| c * q).collect() }
    }

    pub fn scale_int(&self, num: i64, den: i64) -> Self {
        self.scale(&BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// Coefficients as machine integers; fails if any is fractional or too large.
    pub fn to_integers(&self) -> Result<Vec<i64>> {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| {
                if !c.is_integer() {
                    return Err(Error::Inconsistent(format!("coefficient {} is {c}, not an integer", i + 1)));
                }
                c.to_integer().to_i64().ok_or(Error::Overflow("series coefficient"))
            })
            .collect()
    }

    /// `Σ_{n≤N} c_n / n^k` as an exact rational.
    pub fn partial_value(&self, k: u32) -> BigRational {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c / BigRational::from_integer(BigInt::from(i as u64 + 1).pow(k)))
            .fold(BigRational::zero(), |acc, x| acc + x)
    }

    pub fn has_nonnegative_coeffs(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn add(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        self.try_add(rhs).expect("series truncation mismatch")
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn sub(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        self.try_sub(rhs).expect("series truncation mismatch")
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn mul(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        self.try_mul(rhs).expect("series truncation mismatch")
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        TruncatedSeries { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| format!("{c}·{}^-s", i + 1))
            .collect();
        if terms.is_empty() {
            write!(f, "0 (mod N={})", self.len())
        } else {
            write!(f, "{} + O({}^-s)", terms.join(" + "), self.len() + 1)
        }
    }
}
