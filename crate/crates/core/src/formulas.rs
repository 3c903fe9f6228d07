//! Closed formulas for the proper and full sublattice zeta functions,
//! assembled as truncated Dirichlet series from the class group and the
//! splitting of primes.
//!
//! The central objects are the class sets `S(n)`: the classes of integral
//! ideals of norm `n`. For a lattice in the class `g`, the classes of
//! sub-ideals of index `n` are `g·S(n)` and their conjugates are
//! `g⁻¹·S(n)`, since `S(n)` is closed under inversion.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::arith::{factorize, is_prime};
use crate::class_group::{ClassGroup, ClassSubgroups, OrthoSubgroup};
use crate::error::{domain, Error, Result};
use crate::field::SplitKind;
use crate::qform::Bqf;
use crate::series::TruncatedSeries;

/// Membership mask over the classes of a group.
pub type ClassSet = Vec<bool>;

fn count(set: &ClassSet) -> i64 {
    set.iter().filter(|&&b| b).count() as i64
}

/// Everything needed to assemble formulas for one discriminant up to `N`.
#[derive(Debug, Clone)]
pub struct Formulas {
    group: ClassGroup,
    subgroups: ClassSubgroups,
    sets: Vec<ClassSet>,
    n: usize,
    sl: TruncatedSeries,
}

/// All four series for one class.
#[derive(Debug, Clone, PartialEq)]
pub struct ZetaBundle {
    pub disc: i64,
    pub class: Bqf,
    pub sl: TruncatedSeries,
    pub rot: TruncatedSeries,
    pub refl: TruncatedSeries,
    pub gl: TruncatedSeries,
}

impl ZetaBundle {
    /// Integrality, non-negativity and `gl ≤ sl ≤ 2·gl`, coefficientwise.
    pub fn check(&self) -> Result<()> {
        let sl = self.sl.to_integers()?;
        let gl = self.gl.to_integers()?;
        if self.gl != &self.rot + &self.refl {
            return Err(Error::Inconsistent("gl differs from rot + refl".into()));
        }
        for (i, (&s, &g)) in sl.iter().zip(&gl).enumerate() {
            if g < 0 || g > s || s > 2 * g {
                return Err(Error::Inconsistent(format!(
                    "D={} class {}: index {} has sl={s}, gl={g}",
                    self.disc,
                    self.class,
                    i + 1
                )));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EulerReport {
    pub disc: i64,
    pub max_index: usize,
    /// Whether `a_m^+ = Π a_{p^e}^+` for every `m ≤ N`.
    pub holds: bool,
    /// Smallest failing index with `(a_m^+, Π a_{p^e}^+)`.
    pub witness: Option<(u64, i64, i64)>,
    /// Every class squares to the identity.
    pub elementary_two: bool,
    pub structure: String,
    /// `D = −3, −4`, where the criterion is not claimed.
    pub exceptional: bool,
}

impl EulerReport {
    pub fn criterion_agrees(&self) -> bool {
        self.exceptional || self.holds == self.elementary_two
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ResidueReport {
    pub disc: i64,
    pub max_index: usize,
    /// Exact `Σ_{n≤N} |S(n)|/n²`.
    pub class_sum: String,
    pub class_sum_approx: f64,
    /// Floating estimate of `ζ(2)/ζ_F(2)`.
    pub zeta_ratio: f64,
    /// Estimated residue of the proper zeta function at `s = 2`.
    pub residue: f64,
    /// Predicted `s_N^+ ≈ residue·N²/2`.
    pub predicted_partial_sum: f64,
    /// `s_N^+` from the formula coefficients.
    pub partial_sum: u64,
}

/// `s_N / s_{N/2}` for a list of partial sums (index `m` at position `m-1`).
pub fn doubling_ratio(partial: &[u64]) -> Option<f64> {
    let n = partial.len();
    if n < 2 {
        return None;
    }
    Some(partial[n - 1] as f64 / partial[n / 2 - 1] as f64)
}

fn pow2_poly(n: usize, terms: &[(u32, i64)]) -> TruncatedSeries {
    let t: Vec<(u64, i64)> = terms.iter().map(|&(k, c)| (1u64 << k, c)).collect();
    TruncatedSeries::from_terms(n, &t)
}

/// `1 − 2^{-s} + 2·2^{-2s}`.
pub fn nonortho_factor(n: usize) -> TruncatedSeries {
    pow2_poly(n, &[(0, 1), (1, -1), (2, 2)])
}

impl Formulas {
    pub fn new(disc: i64, n: usize) -> Result<Self> {
        Self::from_group(ClassGroup::new(disc)?, n)
    }

    pub fn from_group(group: ClassGroup, n: usize) -> Result<Self> {
        if n == 0 {
            return domain("the index bound must be at least 1");
        }
        let subgroups = group.subgroups()?;
        let sets = class_sets(&group, n)?;
        let mut me = Formulas { group, subgroups, sets, n, sl: TruncatedSeries::zero(n) };
        me.sl = me.assemble_sl()?;
        Ok(me)
    }

    pub fn group(&self) -> &ClassGroup {
        &self.group
    }

    pub fn subgroups(&self) -> &ClassSubgroups {
        &self.subgroups
    }

    pub fn max_index(&self) -> usize {
        self.n
    }

    /// `S(n)` for `1 ≤ n ≤ N`.
    pub fn class_set(&self, n: usize) -> &ClassSet {
        &self.sets[n - 1]
    }

    /// `g·S(n)`.
    pub fn translated(&self, g: usize, n: usize) -> ClassSet {
        let mut out = vec![false; self.group.order()];
        for (h, &inside) in self.class_set(n).iter().enumerate() {
            if inside {
                out[self.group.compose(g, h)] = true;
            }
        }
        out
    }

    fn counting_series(&self, f: impl Fn(usize) -> i64) -> TruncatedSeries {
        TruncatedSeries::from_fn(self.n, |m| BigRational::from_integer(BigInt::from(f(m as usize))))
    }

    fn units(&self) -> i64 {
        self.group.field().units as i64
    }

    fn zeta_z2(&self) -> TruncatedSeries {
        &TruncatedSeries::zeta(self.n) * &TruncatedSeries::zeta_shift(self.n)
    }

    fn zeta_f(&self) -> TruncatedSeries {
        TruncatedSeries::zeta_f(self.group.field(), self.n)
    }

    /// `ζ(s)ζ(s−1)/ζ_F(s)`.
    fn submodule_ratio(&self) -> Result<TruncatedSeries> {
        self.zeta_z2().try_div(&self.zeta_f())
    }

    fn assemble_sl(&self) -> Result<TruncatedSeries> {
        let w = self.units();
        let sizes = self.counting_series(|m| count(self.class_set(m)));
        let main = (&self.submodule_ratio()? * &sizes).scale_int(2, w);
        if w == 2 {
            return Ok(main);
        }
        let field = self.group.field();
        let split = TruncatedSeries::split_product(field, SplitKind::Split, self.n, -1, 1);
        let extra = (&split * &self.zeta_f()).scale_int(w - 2, w);
        Ok(&main + &extra)
    }

    /// Proper zeta function; the same for every class.
    pub fn sl_zeta(&self) -> &TruncatedSeries {
        &self.sl
    }

    /// `Σ #(g·S(n) ∖ g⁻¹·S(n)) n^{-s}`.
    pub fn rot_correction(&self, g: usize) -> TruncatedSeries {
        let inv = self.group.inverse(g);
        self.counting_series(|m| {
            let a = self.translated(g, m);
            let b = self.translated(inv, m);
            a.iter().zip(&b).filter(|(&x, &y)| x && !y).count() as i64
        })
    }

    /// Sum of the rotational terms for the class `g`.
    pub fn rot_term(&self, g: usize) -> Result<TruncatedSeries> {
        let half = self.sl.scale_int(1, 2);
        if self.units() != 2 {
            return Ok(half);
        }
        let corr = (&self.submodule_ratio()? * &self.rot_correction(g)).scale_int(1, 2);
        Ok(&half + &corr)
    }

    /// `ζ(s)²/(ζ(2s)·Π_r(1+r^{-s}))`.
    fn reflexive_base(&self) -> Result<TruncatedSeries> {
        let n = self.n;
        let zeta = TruncatedSeries::zeta(n);
        let ram = TruncatedSeries::split_product(self.group.field(), SplitKind::Ramified, n, 1, 1);
        (&zeta * &zeta).try_div(&(&TruncatedSeries::zeta_double(n) * &ram))
    }

    /// `Σ #(g·S(n) ∩ X) n^{-s}` for the subset `X` given by `member`.
    fn restricted_count(&self, g: usize, member: impl Fn(usize) -> bool) -> TruncatedSeries {
        self.counting_series(|m| {
            self.translated(g, m).iter().enumerate().filter(|&(h, &inside)| inside && member(h)).count() as i64
        })
    }

    /// Sum of the reflection terms for the class `g`.
    pub fn refl_term(&self, g: usize) -> Result<TruncatedSeries> {
        let n = self.n;
        let field = self.group.field();
        let zeta = TruncatedSeries::zeta(n);
        let zeta_sq = &zeta * &zeta;
        let split_plus = TruncatedSeries::split_product(field, SplitKind::Split, n, 1, 1);
        match field.disc {
            -3 => return Ok((&(&nonortho_factor(n) * &zeta_sq) * &split_plus).scale_int(1, 2)),
            -4 => {
                let f = pow2_poly(n, &[(0, 1), (2, 1)]);
                return Ok((&(&f * &zeta_sq) * &split_plus).scale_int(1, 2));
            }
            _ => {}
        }
        let base = self.reflexive_base()?;
        let sub = &self.subgroups;
        let refl_count = self.restricted_count(g, |h| sub.refl.contains(h));
        let mut total = (&(&nonortho_factor(n) * &base) * &refl_count).scale_int(1, 2);
        match (field.d_mod4(), &sub.ortho) {
            (1, OrthoSubgroup::Absent) => {}
            (2, OrthoSubgroup::Present(_)) => {
                let ram_count = self.restricted_count(g, |h| sub.ram.contains(h));
                total = &total + &(&(&pow2_poly(n, &[(1, 1), (2, -1)]) * &base) * &ram_count);
            }
            (3, OrthoSubgroup::Present(ortho)) => {
                let ortho_count = self.restricted_count(g, |h| ortho.contains(h));
                let rest_count = self.restricted_count(g, |h| sub.ram.contains(h) && !ortho.contains(h));
                total = &total + &(&(&pow2_poly(n, &[(1, 1)]) * &base) * &ortho_count);
                total = &total - &(&(&pow2_poly(n, &[(2, 1)]) * &base) * &rest_count);
            }
            (r, o) => {
                return Err(Error::Inconsistent(format!("d ≡ {r} mod 4 with orthogonal subgroup {o:?}")));
            }
        }
        Ok(total)
    }

    /// Full bundle for the class `g`, checked for integrality and the
    /// sandwich `gl ≤ sl ≤ 2·gl`.
    pub fn gl_zeta(&self, g: usize) -> Result<ZetaBundle> {
        let rot = self.rot_term(g)?;
        let refl = self.refl_term(g)?;
        let gl = &rot + &refl;
        let bundle = ZetaBundle { disc: self.group.disc(), class: self.group.form(g), sl: self.sl.clone(), rot, refl, gl };
        bundle.check()?;
        Ok(bundle)
    }

    fn require_general(&self) -> Result<()> {
        if self.units() != 2 {
            return domain(format!("D={} has extra units; this series is only defined when |O^×| = 2", self.group.disc()));
        }
        Ok(())
    }

    /// `Ψ(g)` for a class with `g² = 1`.
    pub fn psi_series(&self, g: usize) -> Result<TruncatedSeries> {
        self.require_general()?;
        let sub = &self.subgroups;
        if !sub.refl.contains(g) {
            return domain(format!("class {} does not square to the identity", self.group.form(g)));
        }
        let n = self.n;
        let e = match (self.group.field().d_mod4(), sub.ram.contains(g), sub.ortho.contains(g)) {
            (1, _, _) | (_, false, _) => TruncatedSeries::zero(n),
            (2, true, _) => pow2_poly(n, &[(1, 2), (2, -2)]),
            (_, true, true) => pow2_poly(n, &[(1, 2)]),
            (_, true, false) => pow2_poly(n, &[(2, -2)]),
        };
        Ok(&(&nonortho_factor(n) + &e) * &self.reflexive_base()?)
    }

    /// Checks, for every `g` with `g² = 1`, that
    /// `Σ_{𝔞 ∈ ram products} N(𝔞)^{-s} Ψ(g[𝔞])` equals `ζ(s)²/ζ(2s)` times
    /// `1 + 2^{-s}` on the orthogonal subgroup and `1 − 2^{-s} + 2·2^{-2s}`
    /// elsewhere. Returns the classes where it fails.
    pub fn psi_equation_failures(&self) -> Result<Vec<Bqf>> {
        self.require_general()?;
        let n = self.n;
        let ramified = self.group.ramified_classes()?;
        let zeta = TruncatedSeries::zeta(n);
        let base = (&zeta * &zeta).try_div(&TruncatedSeries::zeta_double(n))?;
        let mut failures = Vec::new();
        for g in self.subgroups.refl.elements() {
            let mut lhs = TruncatedSeries::zero(n);
            for mask in 0u32..(1 << ramified.len()) {
                let mut norm = 1u64;
                let mut class = g;
                for (i, &(r, c)) in ramified.iter().enumerate() {
                    if mask & (1 << i) != 0 {
                        norm *= r;
                        class = self.group.compose(class, c);
                    }
                }
                let shift = TruncatedSeries::from_terms(n, &[(norm, 1)]);
                lhs = &lhs + &(&shift * &self.psi_series(class)?);
            }
            let factor = if self.subgroups.ortho.contains(g) { pow2_poly(n, &[(0, 1), (1, 1)]) } else { nonortho_factor(n) };
            if lhs != &factor * &base {
                failures.push(self.group.form(g));
            }
        }
        Ok(failures)
    }

    /// `k_p`: order of `[𝔭]²` for a split prime `p`.
    pub fn k_p(&self, p: u64) -> Result<usize> {
        let field = self.group.field();
        if field.split_type(p)?.kind != SplitKind::Split {
            return domain(format!("{p} is not split in D={}", field.disc));
        }
        let c = self.group.prime_class(p)?;
        Ok(self.group.element_order(self.group.compose(c, c)))
    }

    /// `a_{p^i}^+` for `0 ≤ i ≤ k` from the local factor formula.
    pub fn local_factor(&self, p: u64, k: u32) -> Result<Vec<u128>> {
        self.require_general()?;
        if !is_prime(p) {
            return domain(format!("{p} is not prime"));
        }
        let kp = match self.group.field().split_kind(p) {
            SplitKind::Split => Some(self.k_p(p)? as u32),
            _ => None,
        };
        let p = p as u128;
        (0..=k)
            .map(|i| {
                let top = p.checked_pow(i + 1).ok_or(Error::Overflow("local factor"))?;
                let low = match kp {
                    None => 1,
                    Some(kp) => p.pow((i + 1).saturating_sub(kp)),
                };
                Ok((top - low) / (p - 1))
            })
            .collect()
    }

    /// Compares `a_m^+` with the product of its prime-power coefficients.
    pub fn euler_report(&self) -> Result<EulerReport> {
        let a = self.sl.to_integers()?;
        let mut witness = None;
        for m in 2..=self.n as u64 {
            let product: i64 = factorize(m).iter().map(|&(p, e)| a[p.pow(e) as usize - 1]).product();
            if product != a[m as usize - 1] {
                witness = Some((m, a[m as usize - 1], product));
                break;
            }
        }
        let disc = self.group.disc();
        Ok(EulerReport {
            disc,
            max_index: self.n,
            holds: witness.is_none(),
            witness,
            elementary_two: self.group.is_elementary_two(),
            structure: self.group.structure(),
            exceptional: disc == -3 || disc == -4,
        })
    }

    /// Residue estimate at `s = 2` for the proper zeta function.
    /// Reporting only: no tail bound is attempted.
    pub fn residue_report(&self) -> Result<ResidueReport> {
        let sizes = self.counting_series(|m| count(self.class_set(m)));
        let class_sum = sizes.partial_value(2);
        let approx = class_sum.to_f64().unwrap_or(f64::NAN);
        // ζ_F(2) = ζ(2)·L(2, χ_D), so ζ(2)/ζ_F(2) = 1/L(2, χ_D)
        let disc = self.group.disc();
        let l2: f64 = (1..200_000u64).map(|k| crate::arith::kronecker(disc, k) as f64 / (k as f64 * k as f64)).sum();
        let ratio = 1.0 / l2;
        let residue = 2.0 * ratio * approx / self.units() as f64;
        let sl = self.sl.to_integers()?;
        let n = self.n as f64;
        Ok(ResidueReport {
            disc,
            max_index: self.n,
            class_sum: class_sum.to_string(),
            class_sum_approx: approx,
            zeta_ratio: ratio,
            residue,
            predicted_partial_sum: residue * n * n / 2.0,
            partial_sum: sl.iter().sum::<i64>() as u64,
        })
    }
}

/// `S(n)` for every `n ≤ N`, built prime by prime: a split `p^e`
/// contributes `{[𝔭]^{e−2k}}`, an inert `q^f` the identity when `f` is
/// even and nothing otherwise, a ramified `r^g` the class `[γ]^g`.
pub fn class_sets(group: &ClassGroup, n: usize) -> Result<Vec<ClassSet>> {
    let field = group.field();
    let h = group.order();
    let mut prime_classes = std::collections::HashMap::new();
    let mut out = Vec::with_capacity(n);
    for m in 1..=n as u64 {
        let mut set = vec![false; h];
        set[group.identity()] = true;
        for (p, e) in factorize(m) {
            let local: Vec<usize> = match field.split_kind(p) {
                SplitKind::Inert if e % 2 == 1 => Vec::new(),
                SplitKind::Inert => vec![group.identity()],
                kind => {
                    let c = match prime_classes.get(&p) {
                        Some(&c) => c,
                        None => {
                            let c = group.prime_class(p)?;
                            prime_classes.insert(p, c);
                            c
                        }
                    };
                    if kind == SplitKind::Split {
                        (0..=e as i64).map(|k| group.pow(c, e as i64 - 2 * k)).collect()
                    } else {
                        vec![group.pow(c, e as i64)]
                    }
                }
            };
            let mut next = vec![false; h];
            for (x, &inside) in set.iter().enumerate() {
                if inside {
                    for &y in &local {
                        next[group.compose(x, y)] = true;
                    }
                }
            }
            set = next;
        }
        out.push(set);
    }
    Ok(out)
}

/// Bundle for a primitive form of fundamental discriminant.
pub fn gl_zeta_for_form(f: &Bqf, n: usize) -> Result<ZetaBundle> {
    let disc = f.discriminant().to_i64().ok_or(Error::Overflow("discriminant"))?;
    let formulas = Formulas::new(disc, n)?;
    let g = formulas.group().class_of(f)?;
    formulas.gl_zeta(g)
}

/// Exact rational as a plain string, for reports.
pub fn rational_string(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else if q.is_zero() {
        "0".into()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}
