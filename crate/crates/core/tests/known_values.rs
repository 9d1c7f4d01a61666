//! Small worked values, each pinned to its closed form.

use num_bigint::{BigInt, BigUint};

use weilsum::charsum::{stickelberger_value, AddChar};
use weilsum::hyperg::{self, Context, HGKind, HGParams};
use weilsum::tracefn::{eval_family, remark_identity_checks, sp_subfield_trace_at_one, vdgv_power, SumSpec};
use weilsum::weilgrp::{frobenius_fixed_check, gu_total_weil, FFMat, Form};
use weilsum::{make_field, FieldSpec};

fn gf(p: u64, f: u32) -> FieldSpec {
    make_field(p, f).unwrap()
}

fn psi(p: u64) -> AddChar {
    AddChar::new(&gf(p, 1), 1)
}

#[test]
fn stickelberger_signs() {
    assert_eq!(stickelberger_value(3, 4).unwrap(), -3);
    assert_eq!(stickelberger_value(3, 2).unwrap(), 3);
    assert_eq!(stickelberger_value(5, 3).unwrap(), 5);
}

#[test]
fn norm_from_gf9_is_onto_gf3_units() {
    let (e, k) = (gf(3, 2), gf(3, 1));
    for lambda in k.units() {
        assert!(e.units().iter().any(|t| t.pow(4) == lambda.embed(&e).unwrap()));
        assert!(e.units().iter().any(|t| t.rel_norm(&k).unwrap() == lambda));
    }
}

#[test]
fn x10_sum_over_gf9_is_a_power_of_nine() {
    let e = gf(3, 2);
    let raw = eval_family(&SumSpec::binomial(3, 10, 4).unwrap(), &e, &[e.zero()]).unwrap();
    let s = raw.abs_square().as_integer().unwrap();
    assert!((0..6).any(|r| s == BigInt::from(9u64.pow(r))), "|S|² = {s}");
    assert!(vdgv_power(&raw, 3).unwrap().is_some());
}

#[test]
fn sp_trace_at_one_is_minus_field_size() {
    let raw = sp_subfield_trace_at_one(&psi(3), 3, 2, 1, &gf(3, 1)).unwrap();
    assert_eq!(raw.value.as_integer().unwrap(), BigInt::from(-3));
}

#[test]
fn remark_identities_hold_over_gf9() {
    for (n, m) in [(5, 3), (3, 1)] {
        for c in remark_identity_checks(&psi(3), 3, n, m, &gf(3, 2)).unwrap() {
            assert!(c.passed(), "(n,m)=({n},{m}) {}: {:?}", c.name, c.failures);
        }
    }
}

#[test]
fn type_rank_weight_and_determinants() {
    let t = HGParams::small(5, 2, 3).unwrap().type_rank_weight();
    assert_eq!((t.type_pair, t.rank, t.weight), ((4, 1), 4, 4));
    let t = HGParams::new(5, 2, 3, HGKind::Big { chi: 1 }, 4).unwrap().type_rank_weight();
    assert_eq!((t.rank, t.weight), (5, 6));
    let d = HGParams::small(5, 2, 3).unwrap().det_char().unwrap();
    assert_eq!((d.chi2, d.chi), (0, 0));
}

#[test]
fn induction_exclusions() {
    assert!(hyperg::belyi_excluded(5, 2, 3));
    assert!(hyperg::geometrically_primitive(5, 2, 3));
    // gcd(10, 4) = 2, so (10, 4) is a Kummer pullback and not primitive
    assert!(!hyperg::geometrically_primitive(10, 4, 3));
}

#[test]
fn sp_grid_point_wild_part() {
    let r = hyperg::splus_sp(3, 2, 1).unwrap();
    assert!(r.passed());
    let get = |k: &str| r.data.iter().find(|(n, _)| n == k).map(|(_, v)| v.clone()).unwrap();
    assert_eq!(get("wild_dim"), "3");
    assert_eq!(get("slope"), "1/3");
}

#[test]
fn su_grid_points() {
    let r = hyperg::splus_su(3, 3, 1).unwrap();
    assert!(r.passed());
    let r = hyperg::splus_su(2, 3, 1).unwrap();
    assert!(r.passed() && r.flags().next().is_some());
}

#[test]
fn standing_gcds_at_small_points() {
    for (ctx, q, n, m) in [(Context::Sp, 3, 2, 1), (Context::Su, 3, 3, 1), (Context::Su, 2, 3, 1)] {
        assert!(hyperg::standing_gcds(q, n, m, ctx).unwrap().passed(), "{ctx:?} q={q} n={n} m={m}");
    }
}

#[test]
fn n0_values() {
    let r = hyperg::n0_arith(3, 2).unwrap();
    assert_eq!((r.n0, r.passed), (3, true));
    assert_eq!(hyperg::n0_arith(5, 3).unwrap().n0, 1);
}

#[test]
fn weil_degree_lists() {
    let deg = |ctx, n, q| -> Vec<u64> {
        hyperg::weil_degrees(ctx, n, q).unwrap().iter().map(|d| u64::try_from(d).unwrap()).collect()
    };
    let mut sp = deg(Context::Sp, 2, 3);
    sp.sort();
    assert_eq!(sp, vec![4, 5]);
    let mut su = deg(Context::Su, 3, 3);
    su.sort();
    assert_eq!(su, vec![6, 7, 7, 7]);
    let total: BigUint = hyperg::weil_degrees(Context::Su, 3, 3).unwrap().iter().sum();
    assert_eq!(total, BigUint::from(27u32));
}

#[test]
fn unitary_identity_and_diagonal_reflection() {
    let e = gf(3, 2);
    let id = FFMat::identity(&e, 3);
    assert_eq!(gu_total_weil(&id).unwrap(), 27);
    let rho = e.generator().pow(2);
    assert_eq!(rho.pow(4), e.one());
    let h = FFMat::new(&e, 3, vec![rho.code(), 0, 0, 0, 1, 0, 0, 0, 1]).unwrap();
    assert!(h.form_check(Form::Hermitian).unwrap());
}

#[test]
fn frobenius_fixed_points_on_gf27() {
    let r = frobenius_fixed_check(27, 3, 1).unwrap();
    assert_eq!((r.fixed_count, r.degrees), (3, (2, 1)));
    assert!(r.passed);
}
