//! The form class group of a negative fundamental discriminant.
//!
//! Classes are indexed by position in the lexicographically sorted list of
//! reduced primitive forms. Composition goes through the ideal dictionary
//! `(a, b, c) ↦ ℤa + ℤ(b−√D)/2`: the four products of ideal generators are
//! put in Hermite normal form and read back as a form.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::arith::{factorize, gcd};
use crate::error::{domain, Error, Result};
use crate::field::{field_data, FieldData};
use crate::lattice::hnf_from_generators;
use crate::qform::Bqf;

/// An element of `O_F` written as `x + y·w` with `w = (D+√D)/2`.
type FieldElt = (i128, i128);

fn mul_elt(disc: i128, u: FieldElt, v: FieldElt) -> Result<FieldElt> {
    // w² = D·w − (D²−D)/4
    let norm_w = (disc * disc - disc) / 4;
    let over = || Error::Overflow("ideal multiplication");
    let yy = u.1.checked_mul(v.1).ok_or_else(over)?;
    let x = u.0.checked_mul(v.0).and_then(|t| t.checked_sub(norm_w.checked_mul(yy)?)).ok_or_else(over)?;
    let y = u.0
        .checked_mul(v.1)
        .and_then(|t| t.checked_add(v.0.checked_mul(u.1)?))
        .and_then(|t| t.checked_add(disc.checked_mul(yy)?))
        .ok_or_else(over)?;
    Ok((x, y))
}

fn ideal_generators(f: &Bqf) -> [FieldElt; 2] {
    let disc = f.discriminant();
    [(f.a, 0), ((f.b + disc) / 2, -1)]
}

/// Composes two primitive forms of the same discriminant and returns the
/// reduced representative of the product class.
pub fn compose_forms(f: &Bqf, g: &Bqf) -> Result<Bqf> {
    let disc = f.discriminant();
    if g.discriminant() != disc {
        return domain(format!("cannot compose {f} and {g}: discriminants differ"));
    }
    if !f.is_primitive() || !g.is_primitive() {
        return domain("composition is defined on primitive forms only");
    }
    let mut gens = Vec::with_capacity(4);
    for u in ideal_generators(f) {
        for v in ideal_generators(g) {
            gens.push(mul_elt(disc, u, v)?);
        }
    }
    let h = hnf_from_generators(&gens)?
        .ok_or_else(|| Error::Inconsistent(format!("product of {f} and {g} has rank below 2")))?;
    if h.x % h.z != 0 || h.y % h.z != 0 {
        return Err(Error::Inconsistent(format!("product of {f} and {g} is not an ideal")));
    }
    let a = h.x / h.z;
    let b = -2 * (h.y / h.z) - disc;
    let num = b * b - disc;
    if num % (4 * a) != 0 {
        return Err(Error::Inconsistent(format!("product of {f} and {g} gives a non-integral form")));
    }
    Bqf::new(a, b, num / (4 * a))?.reduce()
}

/// All reduced primitive forms of discriminant `disc`, lexicographic.
pub fn reduced_primitive_forms(disc: i64) -> Vec<Bqf> {
    let disc = disc as i128;
    let mut out = Vec::new();
    let mut a: i128 = 1;
    while 3 * a * a <= -disc {
        for b in -a + 1..=a {
            let num = b * b - disc;
            if (b - disc).rem_euclid(2) != 0 || num % (4 * a) != 0 {
                continue;
            }
            let f = Bqf::new_unchecked(a, b, num / (4 * a));
            if f.is_reduced() && f.is_primitive() {
                out.push(f);
            }
        }
        a += 1;
    }
    out.sort();
    out
}

/// A subgroup of the class group as a membership mask.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgroup {
    members: Vec<bool>,
}

impl Subgroup {
    pub fn contains(&self, g: usize) -> bool {
        self.members[g]
    }

    pub fn order(&self) -> usize {
        self.members.iter().filter(|&&m| m).count()
    }

    pub fn elements(&self) -> Vec<usize> {
        (0..self.members.len()).filter(|&g| self.members[g]).collect()
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.members.iter().zip(&other.members).all(|(&a, &b)| !a || b)
    }
}

/// The subgroup generated by orthogonal ramified classes. It does not exist
/// at all when the ring of integers is `ℤ[(1+√d)/2]`, which is not the same
/// as being trivial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OrthoSubgroup {
    Absent,
    Present(Subgroup),
}

impl OrthoSubgroup {
    /// Membership; nothing belongs to an absent subgroup.
    pub fn contains(&self, g: usize) -> bool {
        match self {
            OrthoSubgroup::Absent => false,
            OrthoSubgroup::Present(s) => s.contains(g),
        }
    }

    pub fn as_subgroup(&self) -> Option<&Subgroup> {
        match self {
            OrthoSubgroup::Absent => None,
            OrthoSubgroup::Present(s) => Some(s),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassSubgroups {
    /// Classes with `g² = 1`.
    pub refl: Subgroup,
    /// Generated by the classes of ramified prime ideals.
    pub ram: Subgroup,
    pub ortho: OrthoSubgroup,
}

#[derive(Debug, Clone)]
pub struct ClassGroup {
    field: FieldData,
    forms: Vec<Bqf>,
    lookup: HashMap<Bqf, usize>,
    table: Vec<Vec<usize>>,
    inverse: Vec<usize>,
    identity: usize,
}

impl ClassGroup {
    pub fn new(disc: i64) -> Result<Self> {
        let field = field_data(disc)?;
        let forms = reduced_primitive_forms(disc);
        let lookup: HashMap<Bqf, usize> = forms.iter().enumerate().map(|(i, f)| (*f, i)).collect();
        let find = |f: Bqf| -> Result<usize> {
            lookup
                .get(&f)
                .copied()
                .ok_or_else(|| Error::Inconsistent(format!("{f} is not among the reduced forms of {disc}")))
        };
        let identity = find(Bqf::principal(disc as i128)?)?;
        let mut table = vec![vec![0; forms.len()]; forms.len()];
        for i in 0..forms.len() {
            for j in i..forms.len() {
                let k = find(compose_forms(&forms[i], &forms[j])?)?;
                table[i][j] = k;
                table[j][i] = k;
            }
        }
        let inverse = forms
            .iter()
            .map(|f| find(f.mirror().reduce()?))
            .collect::<Result<Vec<_>>>()?;
        Ok(ClassGroup { field, forms, lookup, table, inverse, identity })
    }

    pub fn field(&self) -> &FieldData {
        &self.field
    }

    pub fn disc(&self) -> i64 {
        self.field.disc
    }

    /// The class number.
    pub fn order(&self) -> usize {
        self.forms.len()
    }

    pub fn forms(&self) -> &[Bqf] {
        &self.forms
    }

    pub fn form(&self, g: usize) -> Bqf {
        self.forms[g]
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    /// Class of an arbitrary primitive form of this discriminant.
    pub fn class_of(&self, f: &Bqf) -> Result<usize> {
        if f.discriminant() != self.disc() as i128 {
            return domain(format!("{f} has discriminant {}, expected {}", f.discriminant(), self.disc()));
        }
        if !f.is_primitive() {
            return domain(format!("{f} is not primitive"));
        }
        let r = f.reduce()?;
        self.lookup
            .get(&r)
            .copied()
            .ok_or_else(|| Error::Inconsistent(format!("reduced form {r} missing from class list")))
    }

    pub fn compose(&self, g: usize, h: usize) -> usize {
        self.table[g][h]
    }

    pub fn inverse(&self, g: usize) -> usize {
        self.inverse[g]
    }

    /// Class of the conjugate ideal, which is the inverse class.
    pub fn conjugate(&self, g: usize) -> usize {
        self.inverse[g]
    }

    pub fn pow(&self, g: usize, e: i64) -> usize {
        let base = if e < 0 { self.inverse(g) } else { g };
        (0..e.unsigned_abs()).fold(self.identity, |acc, _| self.compose(acc, base))
    }

    /// Order of an element.
    pub fn element_order(&self, g: usize) -> usize {
        let mut x = g;
        let mut n = 1;
        while x != self.identity {
            x = self.compose(x, g);
            n += 1;
        }
        n
    }

    pub fn is_elementary_two(&self) -> bool {
        (0..self.order()).all(|g| self.compose(g, g) == self.identity)
    }

    pub fn closure(&self, generators: &[usize]) -> Subgroup {
        let mut members = vec![false; self.order()];
        members[self.identity] = true;
        let mut frontier = vec![self.identity];
        while let Some(x) = frontier.pop() {
            for &g in generators {
                let y = self.compose(x, g);
                if !members[y] {
                    members[y] = true;
                    frontier.push(y);
                }
            }
        }
        Subgroup { members }
    }

    /// Class of the prime ideal above a split or ramified prime `p`, in
    /// the orientation fixed by [`FieldData::prime_ideal_form`].
    pub fn prime_class(&self, p: u64) -> Result<usize> {
        self.class_of(&self.field.prime_ideal_form(p)?)
    }

    /// `(r, class of the prime above r)` for each ramified prime.
    pub fn ramified_classes(&self) -> Result<Vec<(u64, usize)>> {
        self.field
            .ramified
            .iter()
            .map(|&r| Ok((r, self.prime_class(r)?)))
            .collect()
    }

    pub fn subgroups(&self) -> Result<ClassSubgroups> {
        let refl = Subgroup {
            members: (0..self.order()).map(|g| self.compose(g, g) == self.identity).collect(),
        };
        let ramified = self.ramified_classes()?;
        let ram = self.closure(&ramified.iter().map(|&(_, g)| g).collect::<Vec<_>>());
        let ortho = match self.field.d_mod4() {
            1 => OrthoSubgroup::Absent,
            2 => OrthoSubgroup::Present(ram.clone()),
            _ => {
                let gens: Vec<usize> = ramified.iter().filter(|&&(r, _)| r != 2).map(|&(_, g)| g).collect();
                OrthoSubgroup::Present(self.closure(&gens))
            }
        };
        Ok(ClassSubgroups { refl, ram, ortho })
    }

    /// Invariant factors `d₁ | d₂ | …`, empty for the trivial group.
    pub fn invariant_factors(&self) -> Vec<u64> {
        let h = self.order() as u64;
        let orders: Vec<u64> = (0..self.order()).map(|g| self.element_order(g) as u64).collect();
        // per prime, the partition of the p-primary part from |G[p^k]|
        let mut partitions: Vec<(u64, Vec<u32>)> = Vec::new();
        for (p, _) in factorize(h) {
            let torsion = |k: u32| orders.iter().filter(|&&o| p.pow(k) % o == 0).count() as u64;
            let mut ranks = Vec::new();
            let mut k = 1;
            loop {
                let ratio = torsion(k) / torsion(k - 1);
                if ratio == 1 {
                    break;
                }
                ranks.push(ratio.ilog(p));
                k += 1;
            }
            let parts: Vec<u32> = (1..=ranks[0]).map(|i| ranks.iter().filter(|&&r| r >= i).count() as u32).collect();
            partitions.push((p, parts));
        }
        let len = partitions.iter().map(|(_, v)| v.len()).max().unwrap_or(0);
        let mut factors: Vec<u64> = (0..len)
            .map(|j| partitions.iter().map(|(p, v)| v.get(j).map_or(1, |&e| p.pow(e))).product())
            .collect();
        factors.sort_unstable();
        factors
    }

    /// Human-readable structure such as `ℤ/2 × ℤ/4`, or `1` when trivial.
    pub fn structure(&self) -> String {
        let f = self.invariant_factors();
        if f.is_empty() {
            "1".to_string()
        } else {
            f.iter().map(|d| format!("ℤ/{d}")).collect::<Vec<_>>().join(" × ")
        }
    }
}

impl fmt::Display for ClassGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let forms: Vec<String> = self.forms.iter().map(|g| g.to_string()).collect();
        write!(f, "Cl({}) = {} of order {}: {}", self.disc(), self.structure(), self.order(), forms.join(" "))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassGroupSummary {
    pub disc: i64,
    pub h: usize,
    pub structure: String,
    pub classes: Vec<Bqf>,
    pub refl: Vec<Bqf>,
    pub ram: Vec<Bqf>,
    /// `None` when the orthogonal subgroup is absent.
    pub ortho: Option<Vec<Bqf>>,
}

impl ClassGroup {
    pub fn summary(&self) -> Result<ClassGroupSummary> {
        let sub = self.subgroups()?;
        let forms_of = |s: &Subgroup| s.elements().into_iter().map(|g| self.form(g)).collect::<Vec<_>>();
        Ok(ClassGroupSummary {
            disc: self.disc(),
            h: self.order(),
            structure: self.structure(),
            classes: self.forms.clone(),
            refl: forms_of(&sub.refl),
            ram: forms_of(&sub.ram),
            ortho: sub.ortho.as_subgroup().map(forms_of),
        })
    }
}

/// Number of reduced primitive forms, counted independently of the class
/// list construction: every `(a, b)` with `|b| ≤ a ≤ √(|D|/3)`.
pub fn class_number_by_count(disc: i64) -> usize {
    let disc = disc as i128;
    let mut h = 0;
    let mut a: i128 = 1;
    while 3 * a * a <= -disc {
        for b in -a..=a {
            let num = b * b - disc;
            if num % (4 * a) != 0 {
                continue;
            }
            let c = num / (4 * a);
            let reduced = c >= a && !(b < 0 && (b == -a || a == c));
            if reduced && gcd(gcd(a, b), c) == 1 {
                h += 1;
            }
        }
        a += 1;
    }
    h
}
