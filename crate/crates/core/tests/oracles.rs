//! Values checked against implementations that share no code with the crate.

use std::f64::consts::PI;

use num_rational::BigRational;
use num_traits::ToPrimitive;

use weilsum::charsum::{gauss_sum, AddChar, MultChar};
use weilsum::hyperg;
use weilsum::make_field;
use weilsum::moments::empirical_m2;
use weilsum::tracefn::{eval_indexed, Role, Strategy, SumSpec};
use weilsum::weilgrp::{order_formula, GroupKind};

#[derive(Clone, Copy, Debug)]
struct C(f64, f64);

impl C {
    fn root(k: u64, m: u64) -> C {
        let t = 2.0 * PI * (k % m) as f64 / m as f64;
        C(t.cos(), t.sin())
    }
    fn add(self, o: C) -> C {
        C(self.0 + o.0, self.1 + o.1)
    }
    fn mul(self, o: C) -> C {
        C(self.0 * o.0 - self.1 * o.1, self.0 * o.1 + self.1 * o.0)
    }
    fn norm2(self) -> f64 {
        self.0 * self.0 + self.1 * self.1
    }
    fn close(self, o: (f64, f64)) -> bool {
        (self.0 - o.0).abs() < 1e-9 && (self.1 - o.1).abs() < 1e-9
    }
}

fn powmod(b: u64, e: u64, p: u64) -> u64 {
    (0..e).fold(1, |acc, _| acc * b % p)
}

fn primitive_root(p: u64) -> u64 {
    (2..p).find(|&g| (1..p - 1).all(|k| powmod(g, k, p) != 1)).unwrap_or(1)
}

/// Smallest monic polynomial with no root in GF(p) (irreducible for degree ≤ 3),
/// ordered by code with the constant term least significant.
fn smallest_rootless(p: u64, deg: u32) -> Vec<u64> {
    for code in 0..p.pow(deg) {
        let mut c: Vec<u64> = (0..deg).map(|i| code / p.pow(i) % p).collect();
        c.push(1);
        let rootless = (0..p).all(|x| c.iter().rev().fold(0, |acc, &a| (acc * x + a) % p) != 0);
        if rootless {
            return c;
        }
    }
    unreachable!()
}

#[test]
fn canonical_moduli() {
    for (p, f) in [(2, 2), (2, 3), (3, 2), (3, 3), (5, 2), (7, 3)] {
        assert_eq!(make_field(p, f).unwrap().modulus(), smallest_rootless(p, f).as_slice(), "GF({p}^{f})");
    }
    assert_eq!(make_field(2, 3).unwrap().modulus(), &[1, 1, 0, 1]);
    assert_eq!(make_field(3, 2).unwrap().modulus(), &[1, 0, 1]);
}

#[test]
fn prime_field_gauss_sums_match_float_oracle() {
    for p in [3u64, 5, 7, 11, 13] {
        let k = make_field(p, 1).unwrap();
        let g = primitive_root(p);
        assert_eq!(k.generator().code() as u64, g);
        let mut ind = vec![0u64; p as usize];
        for l in 0..p - 1 {
            ind[powmod(g, l, p) as usize] = l;
        }
        for a in 1..p {
            for j in 0..p - 1 {
                let mut s = C(0.0, 0.0);
                for x in 1..p {
                    s = s.add(C::root(a * x, p).mul(C::root(j * ind[x as usize], p - 1)));
                }
                let got = gauss_sum(&AddChar::new(&k, a as i64), &MultChar::new(&k, j as i64)).unwrap();
                assert!(s.close(got.approx()), "p={p} a={a} j={j}: {s:?} vs {:?}", got.approx());
            }
        }
    }
}

#[test]
fn indexed_sums_match_naive_curve_count() {
    for p in [5u64, 7, 11] {
        let k = make_field(p, 1).unwrap();
        let psi = AddChar::new(&k, 1);
        for (a, b) in [(5u64, 2u64), (3, 2), (2, 3), (4, 1)] {
            if a % p == 0 || b % p == 0 {
                continue;
            }
            for u in 1..p {
                let mut s = C(0.0, 0.0);
                for x in 0..p {
                    for y in 0..p {
                        if powmod(x, a, p) == u * powmod(y, b, p) % p {
                            s = s.add(C::root((a * x + (p - b % p) * y) % p, p));
                        }
                    }
                }
                let s = C(-s.0, -s.1);
                let got = eval_indexed(&psi, a, b, &Role::Small, &k.elem(u as u32), Strategy::BruteForce).unwrap();
                assert!(s.close(got.value.approx()), "p={p} A={a} B={b} u={u}");
            }
        }
    }
}

/// GF(9) as pairs a + b·i with i² = −1; the trace to GF(3) is 2a.
fn gf9_all() -> Vec<(u64, u64)> {
    (0..9).map(|c| (c % 3, c / 3)).collect()
}

fn gf9_mul(x: (u64, u64), y: (u64, u64)) -> (u64, u64) {
    ((x.0 * y.0 + 2 * x.1 * y.1) % 3, (x.0 * y.1 + x.1 * y.0) % 3)
}

fn gf9_pow(x: (u64, u64), e: u64) -> (u64, u64) {
    (0..e).fold((1, 0), |acc, _| gf9_mul(acc, x))
}

#[test]
fn second_moment_over_gf9_matches_hand_rolled_field() {
    // Σ_{t≠0} |Σ_x ψ(x^A + t x^B)|² / 81
    for (a, b) in [(5u64, 2u64), (10, 4)] {
        let mut total = 0.0;
        for t in gf9_all().into_iter().filter(|&t| t != (0, 0)) {
            let mut s = C(0.0, 0.0);
            for x in gf9_all() {
                let v = gf9_pow(x, a);
                let w = gf9_mul(t, gf9_pow(x, b));
                let tr = 2 * ((v.0 + w.0) % 3) % 3;
                s = s.add(C::root(tr, 3));
            }
            total += s.norm2();
        }
        let oracle = total / 81.0;
        let rep = empirical_m2(&SumSpec::binomial(3, a, b).unwrap(), &[make_field(3, 2).unwrap()], false).unwrap();
        let got: &BigRational = &rep.empirical[0];
        assert!((got.to_f64().unwrap() - oracle).abs() < 1e-9, "({a},{b}): {got} vs {oracle}");
    }
}

#[test]
fn frobenius_fixes_prime_field_of_gf9() {
    let k = make_field(3, 2).unwrap();
    let fixed = k.enumerate().into_iter().filter(|x| x.frobenius(3).unwrap() == *x).count();
    assert_eq!(fixed, 3);
    // the hand-rolled model agrees: x³ = x exactly on b = 0
    assert_eq!(gf9_all().into_iter().filter(|&x| gf9_pow(x, 3) == x).count(), 3);
}

#[test]
fn n0_by_plain_gcd() {
    fn gcd(a: u64, b: u64) -> u64 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    let a = (2u64.pow(9) + 1) / 3;
    assert_eq!(a, 171);
    assert_eq!(gcd(27, a), 9);
    let r = hyperg::n0_arith(9, 2).unwrap();
    assert_eq!((r.n0, r.cp11), (9, 9));
}

#[test]
fn known_group_orders() {
    assert_eq!(order_formula(GroupKind::Sp, 1, 5), 120);
    assert_eq!(order_formula(GroupKind::Sp, 1, 9), 720);
    assert_eq!(order_formula(GroupKind::Sp, 2, 3), 51840);
    assert_eq!(order_formula(GroupKind::Gu, 3, 2), 648);
    assert_eq!(order_formula(GroupKind::Su, 3, 3), 6048);
    assert_eq!(order_formula(GroupKind::Gu, 3, 3), 24192);
}
