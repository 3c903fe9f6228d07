//! Positive definite binary quadratic forms `ax² + bxy + cy²`, Gauss
//! reduction, and proper / improper equivalence.
//!
//! Forms are stored as coefficient triples rather than Gram matrices so all
//! arithmetic stays integral. Coefficients are `i128` and every operation
//! that can grow them is checked; overflow surfaces as [`Error::Overflow`].

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::arith::gcd;
use crate::error::{domain, Error, Result};

/// A positive definite binary quadratic form. Primitivity is not assumed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Bqf {
    pub a: i128,
    pub b: i128,
    pub c: i128,
}

/// An integer 2×2 matrix acting on column coordinates. The substitution
/// `(x, y) ↦ (p·x + q·y, r·x + s·y)` sends a form `f` to `f ∘ T`; the columns
/// `(p, r)` and `(q, s)` are the new basis vectors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    pub p: i128,
    pub q: i128,
    pub r: i128,
    pub s: i128,
}

/// An [`IntMatrix`] with determinant exactly ±1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct UnimodularMatrix(IntMatrix);

fn mul(x: i128, y: i128) -> Result<i128> {
    x.checked_mul(y).ok_or(Error::Overflow("form arithmetic"))
}

fn add(x: i128, y: i128) -> Result<i128> {
    x.checked_add(y).ok_or(Error::Overflow("form arithmetic"))
}

impl IntMatrix {
    pub const IDENTITY: IntMatrix = IntMatrix { p: 1, q: 0, r: 0, s: 1 };

    pub fn new(p: i128, q: i128, r: i128, s: i128) -> Self {
        IntMatrix { p, q, r, s }
    }

    /// Rows given as `[[p, q], [r, s]]`.
    pub fn from_rows(rows: [[i128; 2]; 2]) -> Self {
        IntMatrix::new(rows[0][0], rows[0][1], rows[1][0], rows[1][1])
    }

    pub fn det(&self) -> i128 {
        self.p * self.s - self.q * self.r
    }

    pub fn compose(&self, other: &IntMatrix) -> Result<IntMatrix> {
        Ok(IntMatrix {
            p: add(mul(self.p, other.p)?, mul(self.q, other.r)?)?,
            q: add(mul(self.p, other.q)?, mul(self.q, other.s)?)?,
            r: add(mul(self.r, other.p)?, mul(self.s, other.r)?)?,
            s: add(mul(self.r, other.q)?, mul(self.s, other.s)?)?,
        })
    }
}

impl UnimodularMatrix {
    pub fn new(p: i128, q: i128, r: i128, s: i128) -> Result<Self> {
        let m = IntMatrix::new(p, q, r, s);
        match m.det() {
            1 | -1 => Ok(UnimodularMatrix(m)),
            d => domain(format!("matrix determinant {d} is not ±1")),
        }
    }

    pub fn identity() -> Self {
        UnimodularMatrix(IntMatrix::IDENTITY)
    }

    /// `x ↦ x + y`.
    pub fn translation() -> Self {
        UnimodularMatrix(IntMatrix::new(1, 1, 0, 1))
    }

    /// `(x, y) ↦ (-y, x)`.
    pub fn rotation() -> Self {
        UnimodularMatrix(IntMatrix::new(0, -1, 1, 0))
    }

    /// `(x, y) ↦ (x, -y)`, determinant −1.
    pub fn mirror() -> Self {
        UnimodularMatrix(IntMatrix::new(1, 0, 0, -1))
    }

    pub fn det(&self) -> i128 {
        self.0.det()
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.0
    }

    pub fn compose(&self, other: &UnimodularMatrix) -> Result<UnimodularMatrix> {
        Ok(UnimodularMatrix(self.0.compose(&other.0)?))
    }
}

impl From<UnimodularMatrix> for IntMatrix {
    fn from(u: UnimodularMatrix) -> Self {
        u.0
    }
}

impl Bqf {
    /// Builds a positive definite form, rejecting anything else.
    pub fn new(a: i128, b: i128, c: i128) -> Result<Self> {
        let f = Bqf { a, b, c };
        let d = f.checked_discriminant()?;
        if a <= 0 || d >= 0 {
            return domain(format!("form {f} is not positive definite (disc {d})"));
        }
        Ok(f)
    }

    pub const fn new_unchecked(a: i128, b: i128, c: i128) -> Self {
        Bqf { a, b, c }
    }

    /// The principal form of discriminant `disc`: `(1, 0, -D/4)` or `(1, 1, (1-D)/4)`.
    pub fn principal(disc: i128) -> Result<Self> {
        match disc.rem_euclid(4) {
            0 => Bqf::new(1, 0, -disc / 4),
            1 => Bqf::new(1, 1, (1 - disc) / 4),
            _ => domain(format!("{disc} is not a discriminant (must be 0 or 1 mod 4)")),
        }
    }

    fn checked_discriminant(&self) -> Result<i128> {
        let bb = mul(self.b, self.b)?;
        let ac4 = mul(mul(4, self.a)?, self.c)?;
        bb.checked_sub(ac4).ok_or(Error::Overflow("discriminant"))
    }

    /// `b² − 4ac`.
    pub fn discriminant(&self) -> i128 {
        self.b * self.b - 4 * self.a * self.c
    }

    pub fn content(&self) -> i128 {
        gcd(gcd(self.a, self.b), self.c)
    }

    pub fn is_primitive(&self) -> bool {
        self.content() == 1
    }

    /// `(a, -b, c)`, the image under a determinant −1 substitution.
    pub fn mirror(&self) -> Bqf {
        Bqf { a: self.a, b: -self.b, c: self.c }
    }

    pub fn eval(&self, x: i128, y: i128) -> Result<i128> {
        add(add(mul(mul(self.a, x)?, x)?, mul(mul(self.b, x)?, y)?)?, mul(mul(self.c, y)?, y)?)
    }

    /// `f ∘ T`. Its discriminant is `det(T)² · disc(f)`.
    pub fn transform(&self, t: &IntMatrix) -> Result<Bqf> {
        if t.det() == 0 {
            return domain("singular basis matrix");
        }
        let a = self.eval(t.p, t.r)?;
        let c = self.eval(t.q, t.s)?;
        // 2a·pq + b(ps + qr) + 2c·rs
        let b = add(
            add(mul(mul(2 * self.a, t.p)?, t.q)?, mul(self.b, add(mul(t.p, t.s)?, mul(t.q, t.r)?)?)?)?,
            mul(mul(2 * self.c, t.r)?, t.s)?,
        )?;
        Ok(Bqf { a, b, c })
    }

    pub fn is_reduced(&self) -> bool {
        let Bqf { a, b, c } = *self;
        b.abs() <= a && a <= c && (b >= 0 || (b.abs() != a && a != c))
    }

    /// Gauss reduction: the unique form with `|b| ≤ a ≤ c`, `b ≥ 0` when
    /// `|b| = a` or `a = c`, properly equivalent to `self`.
    pub fn reduce(&self) -> Result<Bqf> {
        if self.a <= 0 || self.checked_discriminant()? >= 0 {
            return domain(format!("cannot reduce {self}: not positive definite"));
        }
        let Bqf { mut a, mut b, mut c } = *self;
        loop {
            // x ↦ x + k·y brings b into (−a, a]
            let k = (a - b).div_euclid(2 * a);
            if k != 0 {
                let nb = add(b, mul(mul(2, a)?, k)?)?;
                c = add(add(mul(mul(a, k)?, k)?, mul(b, k)?)?, c)?;
                b = nb;
            }
            if a > c {
                std::mem::swap(&mut a, &mut c);
                b = -b;
            } else {
                break;
            }
        }
        if a == c && b < 0 {
            b = -b;
        }
        Ok(Bqf { a, b, c })
    }

    /// Canonical representative of the SL₂(ℤ) class.
    pub fn canonical_sl(&self) -> Result<Bqf> {
        self.reduce()
    }

    /// Canonical representative of the GL₂(ℤ) class: reduce, then `b ← |b|`.
    pub fn canonical_gl(&self) -> Result<Bqf> {
        let r = self.reduce()?;
        Ok(Bqf { b: r.b.abs(), ..r })
    }

    pub fn sl_equivalent(&self, other: &Bqf) -> Result<bool> {
        Ok(self.canonical_sl()? == other.canonical_sl()?)
    }

    pub fn gl_equivalent(&self, other: &Bqf) -> Result<bool> {
        Ok(self.canonical_gl()? == other.canonical_gl()?)
    }
}

impl fmt::Display for Bqf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.a, self.b, self.c)
    }
}

impl FromStr for Bqf {
    type Err = Error;

    /// Parses `"a,b,c"`, optionally wrapped in parentheses.
    fn from_str(s: &str) -> Result<Self> {
        let trimmed = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts: Vec<&str> = trimmed.split(',').map(str::trim).collect();
        if parts.len() != 3 {
            return domain(format!("malformed form {s:?}: expected \"a,b,c\""));
        }
        let mut v = [0i128; 3];
        for (slot, part) in v.iter_mut().zip(&parts) {
            *slot = part
                .parse()
                .map_err(|_| Error::Domain(format!("malformed form {s:?}: {part:?} is not an integer")))?;
        }
        Bqf::new(v[0], v[1], v[2])
    }
}
