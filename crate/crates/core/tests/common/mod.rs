//! Hand-transcribed closed formulas for small discriminants, built only from
//! series primitives and congruence descriptions of prime sets. Nothing here
//! consults the class group, so these act as an independent check on the
//! generic assembly.

#![allow(dead_code)]

use latzeta::{Bqf, TruncatedSeries};

type S = TruncatedSeries;

pub fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

fn residue_in(p: u64, modulus: u64, residues: &[u64]) -> bool {
    residues.contains(&(p % modulus))
}

fn squares_mod(q: u64) -> Vec<u64> {
    (1..q).map(|x| x * x % q).collect()
}

/// `x³ − x − 1` has three distinct roots mod `p`.
pub fn cubic_splits(p: u64) -> bool {
    let roots = (0..p).filter(|&x| (x * x % p * x + 2 * p - x - 1) % p == 0).count();
    roots == 3
}

pub fn split_minus23(p: u64) -> bool {
    p != 23 && squares_mod(23).contains(&(p % 23))
}

fn d23_p1(p: u64) -> bool {
    split_minus23(p) && cubic_splits(p)
}

fn d23_p2(p: u64) -> bool {
    split_minus23(p) && !cubic_splits(p)
}

/// `1 + c₁·2^{-s} + c₂·2^{-2s}`.
fn two_poly(n: usize, c1: i64, c2: i64) -> S {
    S::from_terms(n, &[(1, 1), (2, c1), (4, c2)])
}

fn zz(n: usize) -> S {
    &S::zeta(n) * &S::zeta_shift(n)
}

fn zeta_sq(n: usize) -> S {
    &S::zeta(n) * &S::zeta(n)
}

fn prod(n: usize, member: impl Fn(u64) -> bool + Copy, sign: i64, exponent: i32) -> S {
    S::prime_product(n, member, sign, exponent)
}

/// `Σ_{p ∈ P} p^{-s}`.
fn prime_sum(n: usize, member: impl Fn(u64) -> bool) -> S {
    S::from_terms(n, &(1..=n as u64).filter(|&p| is_prime(p) && member(p)).map(|p| (p, 1)).collect::<Vec<_>>())
}

fn half(s: &S) -> S {
    s.scale_int(1, 2)
}

/// `(sl, gl)` for every listed class of a discriminant.
pub struct Fixture {
    pub disc: i64,
    pub classes: Vec<(Bqf, S, S)>,
}

fn q(a: i128, b: i128, c: i128) -> Bqf {
    Bqf::new(a, b, c).unwrap()
}

pub fn d3(n: usize) -> Fixture {
    let p = |p: u64| p % 3 == 1;
    let inert = |p: u64| p % 3 == 2;
    let sl = &(&zz(n) * &prod(n, p, -1, 1)).scale_int(1, 3) + &(&S::zeta(n) * &prod(n, inert, 1, -1)).scale_int(2, 3);
    let refl = half(&(&(&two_poly(n, -1, 2) * &zeta_sq(n)) * &prod(n, p, 1, 1)));
    let gl = &half(&sl) + &refl;
    Fixture { disc: -3, classes: vec![(q(1, 1, 1), sl, gl)] }
}

pub fn d4(n: usize) -> Fixture {
    let p = |p: u64| p % 4 == 1;
    let inert = |p: u64| p % 4 == 3;
    let sl = &half(&(&zz(n) * &prod(n, p, -1, 1))) + &half(&(&S::zeta(n) * &prod(n, inert, 1, -1)));
    let refl = half(&(&(&two_poly(n, 0, 1) * &zeta_sq(n)) * &prod(n, p, 1, 1)));
    let gl = &half(&sl) + &refl;
    Fixture { disc: -4, classes: vec![(q(1, 0, 1), sl, gl)] }
}

pub fn d7(n: usize) -> Fixture {
    let p = |p: u64| residue_in(p, 7, &[1, 2, 4]);
    let sl = &zz(n) * &prod(n, p, -1, 1);
    let refl = half(&(&(&two_poly(n, -1, 2) * &zeta_sq(n)) * &prod(n, p, 1, 1)));
    let gl = &half(&sl) + &refl;
    Fixture { disc: -7, classes: vec![(q(1, 1, 2), sl, gl)] }
}

pub fn d8(n: usize) -> Fixture {
    let p = |p: u64| residue_in(p, 8, &[1, 3]);
    let sl = &zz(n) * &prod(n, p, -1, 1);
    let refl = half(&(&(&two_poly(n, 1, 0) * &zeta_sq(n)) * &prod(n, p, 1, 1)));
    let gl = &half(&sl) + &refl;
    Fixture { disc: -8, classes: vec![(q(1, 0, 2), sl, gl)] }
}

pub fn d20(n: usize) -> Fixture {
    let p = |p: u64| residue_in(p, 20, &[1, 3, 7, 9]);
    let p1 = |p: u64| residue_in(p, 20, &[1, 9]);
    let p2 = |p: u64| residue_in(p, 20, &[3, 7]);
    let sl = &zz(n) * &prod(n, p, -1, 1);
    let common = &half(&sl) + &half(&(&(&two_poly(n, 0, 1) * &zeta_sq(n)) * &prod(n, p, 1, 1)));
    let chi = half(&(&(&(&two_poly(n, 1, -1) - &S::one(n)) * &zeta_sq(n)) * &(&prod(n, p1, 1, 1) * &prod(n, p2, -1, 1))));
    Fixture {
        disc: -20,
        classes: vec![(q(1, 0, 5), sl.clone(), &common + &chi), (q(2, 2, 3), sl, &common - &chi)],
    }
}

pub fn d23(n: usize) -> Fixture {
    let one = S::one(n);
    let p1_minus = prod(n, d23_p1, -1, 1);
    let p2_minus = prod(n, d23_p2, -1, 1);
    let p2_inv = prod(n, d23_p2, -1, -1);
    let p2_sum = prime_sum(n, d23_p2);
    let front = &(&zz(n) * &p1_minus) * &(&p2_minus * &p2_minus);
    let sl = &front * &(&(&p2_inv.scale_int(3, 1) - &p2_sum) - &one.scale_int(2, 1));
    let refl_front = half(
        &(&(&(&two_poly(n, -1, 2) * &zeta_sq(n)) * &prod(n, d23_p1, 1, 1))
            * &(&p2_minus * &prod(n, d23_p2, 1, 1))),
    );
    let gl_one = &half(&sl) + &(&refl_front * &(&p2_inv - &p2_sum));
    let gl_omega = &half(&(&front * &(&p2_inv.scale_int(3, 1) - &one))) + &(&refl_front * &(&p2_inv - &one));
    Fixture {
        disc: -23,
        classes: vec![
            (q(1, 1, 6), sl.clone(), gl_one),
            (q(2, 1, 3), sl.clone(), gl_omega.clone()),
            (q(2, -1, 3), sl, gl_omega),
        ],
    }
}

pub fn all(n: usize) -> Vec<Fixture> {
    vec![d3(n), d4(n), d7(n), d8(n), d20(n), d23(n)]
}

/// Divisor sum by trial division.
pub fn divisor_sum(m: u64) -> u64 {
    (1..=m).filter(|d| m % d == 0).sum()
}
