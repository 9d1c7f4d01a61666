use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::arith;
use crate::charsum::{gauss_sum, stickelberger_check, AddChar, MultChar};
use crate::cyclo::CycInt;
use crate::error::{Error, Result};
use crate::gf::{make_field, FieldSpec};
use crate::hyperg::{self, CheckStatus, Context, HGKind, HGParams};
use crate::moments::{decomposition_check, empirical_m2, exact_m2};
use crate::tracefn::{
    bezout_independence_check, form_equivalence_check, kummer_pullback_check, remark_identity_checks, sp_exponents,
    sp_identity_checks, sp_subfield_trace_at_one, sp_total_trace, su_exponents, su_total_trace, trace_membership,
    vdgv_power, vdgv_trace, BezoutPair, Constraint, IdentityCheck, Role, SpForm, SuForm, SumSpec, Target,
};
use crate::weilgrp::{
    find_entry, frobenius_fixed_check, gross_consistent, gu_total_weil, load_catalog, order_formula, sp_weil_abs_sq,
    torus, CatalogEntry, GroupKind,
};

use super::{Grid, Outcome, Plan, Task};

fn invalid(e: impl std::fmt::Display) -> Error {
    Error::InvalidGrid(e.to_string())
}

fn field(p: u64, f: u32) -> Result<FieldSpec> {
    if f == 0 {
        return Err(invalid("extension degree 0"));
    }
    make_field(p, f).map_err(invalid)
}

fn prime(p: u64) -> Result<u64> {
    if arith::is_prime(p) {
        Ok(p)
    } else {
        Err(invalid(format!("{p} is not prime")))
    }
}

fn prime_power(q: u64) -> Result<(u64, u32)> {
    match arith::factorize(q).as_slice() {
        [(p, f)] => Ok((*p, *f)),
        _ => Err(invalid(format!("{q} is not a prime power"))),
    }
}

fn name(k: &FieldSpec) -> String {
    if k.f() == 1 {
        format!("GF({})", k.p())
    } else {
        format!("GF({}^{})", k.p(), k.f())
    }
}

fn identity(c: &IdentityCheck) -> Outcome {
    let got = if c.failures.is_empty() {
        format!("{} checked", c.checked)
    } else {
        format!("{} of {} failed, first at code {}", c.failures.len(), c.checked, c.failures[0])
    };
    Outcome::new("all equal", got, c.passed())
}

fn count(total: usize, bad: &[u32], what: &str) -> Outcome {
    let got = match bad.first() {
        None => format!("{total} {what}"),
        Some(u) => format!("{} of {total} failed, first at code {u}", bad.len()),
    };
    Outcome::new(format!("all {total} {what}"), got, bad.is_empty() && total > 0)
}

fn psi_base(p: u64) -> Result<AddChar> {
    Ok(AddChar::new(&field(p, 1)?, 1))
}

pub fn fields(grid: &Grid) -> Result<Plan> {
    let list: Vec<(u64, u32)> = match (grid.p, grid.f) {
        (Some(p), Some(f)) => vec![(prime(p)?, f)],
        (Some(p), None) => (1..=4).map(|f| (p, f)).collect(),
        (None, _) => vec![
            (2, 1),
            (2, 2),
            (2, 3),
            (2, 4),
            (2, 8),
            (3, 1),
            (3, 2),
            (3, 3),
            (3, 4),
            (3, 6),
            (5, 1),
            (5, 2),
            (7, 1),
            (7, 2),
        ],
    };
    let mut plan = Plan::default();
    for (p, f) in list {
        let k = field(prime(p)?, f)?;
        plan.field(&k);
        let params = name(&k);
        let k1 = k.clone();
        plan.push(Task::one("fields/modulus-irreducible", params.clone(), move || {
            let ok = FieldSpec::with_modulus(k1.p(), k1.modulus().to_vec()).is_ok();
            Ok(Outcome::new("irreducible", format!("{:?}", k1.modulus()), ok))
        }));
        let k1 = k.clone();
        plan.push(Task::one("fields/frobenius-order", params.clone(), move || {
            let bad: Vec<u32> = sample(&k1).into_iter().filter(|&c| k1.pow_code(c, k1.size() as u128) != c).collect();
            Ok(count(sample(&k1).len(), &bad, "x^(p^f) = x"))
        }));
        let k1 = k.clone();
        plan.push(Task::one("fields/dlog-roundtrip", params.clone(), move || {
            let g = k1.generator();
            let mut bad = Vec::new();
            for x in k1.units() {
                if g.pow(x.dlog()? as u128) != x {
                    bad.push(x.code());
                }
            }
            Ok(count(k1.size() as usize - 1, &bad, "g^dlog(x) = x"))
        }));
        let k1 = k.clone();
        plan.push(Task::one("fields/prime-fixed-points", params.clone(), move || {
            let fixed =
                k1.enumerate().iter().filter(|x| x.frobenius(k1.p()).map(|y| y == **x).unwrap_or(false)).count();
            Ok(Outcome::eq(k1.p() as usize, fixed))
        }));
        for d in arith::divisors(f as u64).into_iter().filter(|&d| d < f as u64) {
            let sub = field(p, d as u32)?;
            let (k1, s1) = (k.clone(), sub.clone());
            let params = format!("{} over {}", name(&k), name(&sub));
            plan.push(Task::one("fields/norm-surjective", params.clone(), move || {
                let mut hit = std::collections::HashSet::new();
                for x in k1.units() {
                    hit.insert(x.rel_norm(&s1)?.code());
                }
                Ok(Outcome::eq(s1.size() as usize - 1, hit.len()))
            }));
            let (k1, s1) = (k.clone(), sub.clone());
            plan.push(Task::one("fields/trace-frobenius", params, move || {
                let mut bad = Vec::new();
                let p = k1.p();
                for x in k1.enumerate() {
                    let lhs = x.rel_trace(&s1)?.frobenius(p)?;
                    let rhs = x.frobenius(p)?.rel_trace(&s1)?;
                    if lhs != rhs {
                        bad.push(x.code());
                    }
                }
                Ok(count(k1.size() as usize, &bad, "Tr(x)^p = Tr(x^p)"))
            }));
        }
    }
    Ok(plan)
}

/// Every code for fields up to 10^4 elements, an even stride above.
fn sample(k: &FieldSpec) -> Vec<u32> {
    let n = k.size();
    let step = (n / 10_000).max(1);
    (0..n).step_by(step as usize).map(|c| c as u32).collect()
}

pub fn gauss(grid: &Grid) -> Result<Plan> {
    let list: Vec<(u64, u32)> = match grid.p {
        Some(p) => vec![(prime(p)?, grid.f.unwrap_or(1))],
        None => vec![(3, 1), (5, 1), (7, 1), (3, 2), (5, 2)],
    };
    let mut plan = Plan::default();
    for (p, f) in list {
        let k = field(p, f)?;
        if k.size() > 1 << 12 {
            return Err(invalid(format!("{} is too large for the exhaustive Gauss suite", name(&k))));
        }
        plan.field(&k);
        let k1 = k.clone();
        plan.push(Task::one("gauss/abs-square", name(&k), move || {
            let want = CycInt::from_int(1, k1.size() as i64);
            let mut total = 0;
            let mut bad = Vec::new();
            for a in 1..k1.p() {
                let psi = AddChar::new(&k1, a as i64);
                for j in 1..k1.size() - 1 {
                    let g = gauss_sum(&psi, &MultChar::new(&k1, j as i64))?;
                    total += 1;
                    if g.abs_square() != want {
                        bad.push(j as u32);
                    }
                }
            }
            Ok(count(total, &bad, "|G|² = #k"))
        }));
        let k1 = k.clone();
        plan.push(Task::one("gauss/trivial-character", name(&k), move || {
            let g = gauss_sum(&AddChar::new(&k1, 1), &MultChar::trivial(&k1))?;
            Ok(Outcome::new("-1", &g, g == CycInt::from_int(1, -1)).with_value(&g))
        }));
        if k.p() > 2 {
            let k1 = k.clone();
            plan.push(Task::one("gauss/quadratic-square", name(&k), move || {
                // G(ψ, χ₂)² = χ₂(−1)·#k
                let g = gauss_sum(&AddChar::new(&k1, 1), &MultChar::quadratic(&k1)?)?;
                let sign = if (k1.size() - 1) % 4 == 0 { 1 } else { -1 };
                let want = CycInt::from_int(1, sign * k1.size() as i64);
                let sq = g.checked_mul(&g)?;
                Ok(Outcome::new(&want, &sq, sq == want).with_value(&g))
            }));
        }
    }
    Ok(plan)
}

pub fn stickelberger(grid: &Grid) -> Result<Plan> {
    let qs: Vec<u64> = match grid.q {
        Some(q) => {
            let (p, _) = prime_power(q)?;
            if p == 2 {
                return Err(invalid("Stickelberger suite needs odd q"));
            }
            vec![q]
        }
        None => vec![3, 5, 7, 9],
    };
    let mut plan = Plan::default();
    for q in qs {
        let (p, f) = prime_power(q)?;
        plan.field(&field(p, 2 * f)?);
        for r in arith::divisors(q + 1).into_iter().filter(|&r| r > 1) {
            plan.push(Task::one("stickelberger/value", format!("q={q} r={r}"), move || {
                let rep = stickelberger_check(q, r)?;
                let got = if rep.passed() {
                    format!("{} ({} pairs)", rep.expected, rep.checked)
                } else {
                    format!("{} of {} pairs differ", rep.failures.len(), rep.checked)
                };
                Ok(Outcome::new(rep.expected, got, rep.passed()).with_value(&rep.failures))
            }));
        }
    }
    Ok(plan)
}

fn roles(e: &FieldSpec) -> Result<Vec<Role>> {
    let chi2 = MultChar::quadratic(e)?;
    let chi1 = MultChar::new(e, 1);
    Ok(vec![Role::Small, Role::Big(chi2.clone()), Role::Big(chi1.clone()), Role::Sharp(chi2), Role::Sharp(chi1)])
}

pub fn identities(grid: &Grid) -> Result<Plan> {
    let ps: Vec<u64> = match grid.p {
        Some(p) => vec![prime(p)?],
        None => vec![3, 5],
    };
    let pairs = match (grid.n, grid.m) {
        (Some(a), Some(b)) => vec![(a as u64, b as u64)],
        _ => vec![(5, 2), (2, 5), (14, 5), (7, 3)],
    };
    let mut plan = Plan::default();
    for &p in &ps {
        if p == 2 {
            return Err(invalid("identity suite needs odd p"));
        }
        let e = field(p, 2)?;
        plan.field(&e);
        let psi = psi_base(p)?;
        for &(a, b) in &pairs {
            BezoutPair::new(a, b, Constraint::None).map_err(invalid)?;
            for role in roles(&e)? {
                let params = format!("A={a} B={b} p={p} E={} role={}", name(&e), role.name());
                let (psi1, e1, r1) = (psi.clone(), e.clone(), role.clone());
                plan.push(Task::one("identities/indexed-zform", params.clone(), move || {
                    Ok(identity(&form_equivalence_check(&psi1, a, b, &r1, &e1)?))
                }));
                let (psi1, e1, r1) = (psi.clone(), e.clone(), role.clone());
                let ids = vec![
                    ("identities/kummer-A".to_string(), params.clone()),
                    ("identities/kummer-B".to_string(), params.clone()),
                ];
                plan.push(Task::many(ids, move || {
                    let (x, y) = kummer_pullback_check(&psi1, a, b, &r1, &e1)?;
                    Ok(vec![identity(&x), identity(&y)])
                }));
                let (psi1, e1, r1) = (psi.clone(), e.clone(), role.clone());
                plan.push(Task::one("identities/bezout-shift", params, move || {
                    let pair = BezoutPair::new(a, b, Constraint::None)?;
                    Ok(identity(&bezout_independence_check(&psi1, &pair, &r1, &e1)?))
                }));
            }
        }
    }
    if grid.is_default() {
        for (q, n, m) in [(3u64, 2u32, 1u32), (3, 1, 2), (5, 2, 1)] {
            let e = field(q, 2)?;
            let psi = psi_base(q)?;
            let params = format!("q={q} n={n} m={m} E={}", name(&e));
            let ids = ["pullback = zform at u^A", "zform = small + big(χ₂)"]
                .iter()
                .map(|s| (format!("identities/sp {s}"), params.clone()))
                .collect();
            plan.push(Task::many(ids, move || {
                Ok(sp_identity_checks(&psi, q, n, m, &e)?.iter().map(identity).collect())
            }));
        }
        for (q, n, m) in [(3u64, 3u32, 1u32), (3, 5, 3), (5, 3, 1)] {
            let e = field(q, 2)?;
            let psi = psi_base(q)?;
            let params = format!("q={q} n={n} m={m} E={}", name(&e));
            let mut ids = Vec::new();
            if arith::gcd(n as u64, q + 1) == 1 {
                ids.push(("identities/su small + big = descent".to_string(), params.clone()));
                ids.push(("identities/su descent at u^A = W".to_string(), params.clone()));
            }
            if arith::gcd(m as u64, q + 1) == 1 {
                ids.push(("identities/su small + sharp = -H".to_string(), params.clone()));
                ids.push(("identities/su H at u^B = W_bis".to_string(), params.clone()));
            }
            plan.push(Task::many(ids, move || {
                Ok(remark_identity_checks(&psi, q, n, m, &e)?.iter().map(identity).collect())
            }));
        }
    }
    Ok(plan)
}

fn tower(grid: &Grid, p: u64, default: &[u32]) -> Result<Vec<FieldSpec>> {
    let degs = grid.tower.clone().unwrap_or_else(|| default.to_vec());
    degs.into_iter()
        .map(|d| {
            let k = field(p, d)?;
            if k.size() > 1 << 16 {
                return Err(invalid(format!("{} is too large for exhaustive parameter scans", name(&k))));
            }
            Ok(k)
        })
        .collect()
}

fn qnm(grid: &Grid, default: &[(u64, u32, u32)]) -> Result<Vec<(u64, u32, u32)>> {
    match (grid.q, grid.n, grid.m) {
        (Some(q), Some(n), Some(m)) => {
            let (p, _) = prime_power(q)?;
            if let Some(pp) = grid.p {
                if pp != p {
                    return Err(invalid(format!("p = {pp} but q = {q}")));
                }
            }
            Ok(vec![(q, n, m)])
        }
        (None, None, None) => Ok(default.to_vec()),
        _ => Err(invalid("q, n and m must be given together")),
    }
}

pub fn vdgv(grid: &Grid) -> Result<Plan> {
    let mut plan = Plan::default();
    for (q, n, m) in qnm(grid, &[(3, 2, 1), (3, 3, 1)])? {
        let (p, fq) = prime_power(q)?;
        let psi = psi_base(p)?;
        let base = field(p, 1)?;
        plan.field(&base);
        for e in tower(grid, p, &[2 * fq, 4 * fq])? {
            plan.field(&e);
            let params = format!("q={q} n={n} m={m} E={}", name(&e));
            let (psi1, e1) = (psi.clone(), e.clone());
            plan.push(Task::one("vdgv/power-of-q", params.clone(), move || {
                let minus_one = e1.from_int(-1);
                let mut bad = Vec::new();
                for u in e1.enumerate() {
                    let raw = vdgv_trace(&psi1, q, &[(u.clone(), m), (minus_one.clone(), n)], &e1)?;
                    if vdgv_power(&raw, q)?.is_none() {
                        bad.push(u.code());
                    }
                }
                Ok(count(e1.size() as usize, &bad, "|S|² = #E·q^r"))
            }));
            if sp_exponents(q, n, m).is_ok() {
                let (psi1, e1) = (psi.clone(), e.clone());
                plan.push(Task::one("vdgv/sp-trace-power-of-q", params, move || {
                    let mut bad = Vec::new();
                    for u in e1.enumerate() {
                        let raw = sp_total_trace(&psi1, q, n, m, &u, SpForm::Pullback)?;
                        if vdgv_power(&raw, q)?.is_none() {
                            bad.push(u.code());
                        }
                    }
                    Ok(count(e1.size() as usize, &bad, "|S|² = #E·q^r"))
                }));
            }
        }
        if sp_exponents(q, n, m).is_ok() && fq == 1 {
            let psi1 = psi.clone();
            plan.push(Task::one("vdgv/sp-trace-at-one", format!("q={q} n={n} m={m} E={}", name(&base)), move || {
                let v = sp_subfield_trace_at_one(&psi1, q, n, m, &base)?.value.as_integer()?;
                Ok(Outcome::eq(BigInt::from(-(p as i64)), v))
            }));
        }
    }
    Ok(plan)
}

fn rat(r: &BigRational) -> String {
    format!("{} ({:.6})", r, r.to_f64().unwrap_or(f64::NAN))
}

pub fn moments(grid: &Grid) -> Result<Plan> {
    let p = prime(grid.p.unwrap_or(3))?;
    let mut plan = Plan::default();
    let spec = |a: u64, b: u64| SumSpec::binomial(p, a, b).map_err(invalid);
    for (a, b, want) in [(10u64, 4u64, 2u64), (28, 4, 4), (5, 2, 1)] {
        let s = spec(a, b)?;
        plan.push(Task::one("moments/exact-m2", format!("A={a} B={b} p={p}"), move || {
            Ok(Outcome::eq(want, exact_m2(&s)))
        }));
    }
    let fields = tower(grid, p, &[2, 4, 6])?;
    for k in &fields {
        plan.field(k);
    }
    let tol = BigRational::new(1.into(), 2.into());
    for (a, b) in [(10u64, 4u64), (5, 2)] {
        let s = spec(a, b)?;
        let (f1, t1) = (fields.clone(), tol.clone());
        let degs: Vec<String> = fields.iter().map(|k| k.f().to_string()).collect();
        let params = format!("A={a} B={b} p={p} tower={}", degs.join(","));
        plan.push(Task::one("moments/empirical-m2", params, move || {
            let rep = empirical_m2(&s, &f1, false)?;
            let dev = rep.deviations();
            let top = rep.empirical.last().cloned().unwrap_or_else(BigRational::zero);
            let monotone = dev.windows(2).skip(1).all(|w| w[1] <= w[0]);
            let got = format!("{}; deviation non-increasing from level 2: {monotone}", rat(&top));
            Ok(Outcome::new(format!("{} ± 1/2", rep.predicted), got, rep.top_within(&t1)).with_value(&rep))
        }));
    }
    let e = field(p, grid.tower.as_ref().and_then(|t| t.first().copied()).unwrap_or(2))?;
    for (a, b) in [(10u64, 4u64), (28, 4)] {
        let s = spec(a, b)?;
        let e1 = e.clone();
        plan.push(Task::one("moments/decomposition", format!("A={a} B={b} E={}", name(&e)), move || {
            Ok(identity(&decomposition_check(&s, &e1)?))
        }));
    }
    Ok(plan)
}

fn membership_task(
    id: &str,
    params: String,
    e: FieldSpec,
    eval: impl Fn(&crate::gf::FieldElem) -> Result<bool> + Send + Sync + 'static,
) -> Task {
    Task::one(id.to_string(), params, move || {
        let mut bad = Vec::new();
        let all = e.enumerate();
        for u in &all {
            if !eval(u)? {
                bad.push(u.code());
            }
        }
        Ok(count(all.len(), &bad, "members"))
    })
}

pub fn sp_traces(grid: &Grid) -> Result<Plan> {
    let mut plan = Plan::default();
    for (q, n, m) in qnm(grid, &[(3, 2, 1)])? {
        let (p, fq) = prime_power(q)?;
        sp_exponents(q, n, m).map_err(invalid)?;
        let psi = Arc::new(psi_base(p)?);
        for e in tower(grid, p, &[2 * fq, 4 * fq])? {
            plan.field(&e);
            let params = format!("q={q} n={n} m={m} E={}", name(&e));
            let psi1 = psi.clone();
            plan.push(membership_task("sp-traces/in-K", params.clone(), e.clone(), move |u| {
                Ok(trace_membership(&sp_total_trace(&psi1, q, n, m, u, SpForm::Pullback)?, Target::K))
            }));
            let (psi1, e1) = (psi.clone(), e.clone());
            let ids = ["pullback = zform at u^A", "zform = small + big(χ₂)"]
                .iter()
                .map(|s| (format!("sp-traces/{s}"), params.clone()))
                .collect();
            plan.push(Task::many(ids, move || {
                Ok(sp_identity_checks(&psi1, q, n, m, &e1)?.iter().map(identity).collect())
            }));
        }
        if fq == 1 {
            let k = field(p, 1)?;
            plan.field(&k);
            let psi1 = psi.clone();
            plan.push(Task::one(
                "sp-traces/at-one-over-prime-field",
                format!("q={q} n={n} m={m} E={}", name(&k)),
                move || {
                    let v = sp_subfield_trace_at_one(&psi1, q, n, m, &k)?.value.as_integer()?;
                    Ok(Outcome::eq(BigInt::from(-(k.size() as i64)), v))
                },
            ));
        }
    }
    Ok(plan)
}

pub fn su_traces(grid: &Grid) -> Result<Plan> {
    let mut plan = Plan::default();
    for (q, n, m) in qnm(grid, &[(3, 3, 1)])? {
        let (p, fq) = prime_power(q)?;
        su_exponents(q, n, m).map_err(invalid)?;
        let psi = Arc::new(psi_base(p)?);
        for e in tower(grid, p, &[2 * fq, 4 * fq])? {
            plan.field(&e);
            let params = format!("q={q} n={n} m={m} E={}", name(&e));
            let psi1 = psi.clone();
            plan.push(membership_task("su-traces/W-in-Q", params.clone(), e.clone(), move |u| {
                Ok(trace_membership(&su_total_trace(&psi1, q, n, m, u, SuForm::W)?, Target::Q))
            }));
            let psi1 = psi.clone();
            plan.push(membership_task("su-traces/W-pm-power-of-q", params.clone(), e.clone(), move |u| {
                Ok(trace_membership(&su_total_trace(&psi1, q, n, m, u, SuForm::W)?, Target::PmPowerOf(q)))
            }));
            if e.f() % (2 * fq) == 0 && e.size() <= 1 << 12 {
                let mut ids = Vec::new();
                if arith::gcd(n as u64, q + 1) == 1 {
                    ids.push(("su-traces/small + big = descent".to_string(), params.clone()));
                    ids.push(("su-traces/descent at u^A = W".to_string(), params.clone()));
                }
                if arith::gcd(m as u64, q + 1) == 1 {
                    ids.push(("su-traces/small + sharp = -H".to_string(), params.clone()));
                    ids.push(("su-traces/H at u^B = W_bis".to_string(), params.clone()));
                }
                if !ids.is_empty() {
                    let (psi1, e1) = (psi.clone(), e.clone());
                    plan.push(Task::many(ids, move || {
                        Ok(remark_identity_checks(&psi1, q, n, m, &e1)?.iter().map(identity).collect())
                    }));
                }
            }
        }
        if p != 2 {
            let e = field(p, 2 * fq)?;
            plan.field(&e);
            let psi1 = psi.clone();
            let params = format!("q={q} n={n} m={m} E={} u=1", name(&e));
            let ids = vec![
                ("su-traces/H-at-one-raw".to_string(), params.clone()),
                ("su-traces/H-at-one-clearing".to_string(), params),
            ];
            plan.push(Task::many(ids, move || {
                let r = su_total_trace(&psi1, q, n, m, &e.one(), SuForm::H)?;
                let raw = r.value.as_integer()?;
                let c = r.clearing.value()?.as_integer()?;
                let sign = if q.div_ceil(2) % 2 == 0 { 1 } else { -1 };
                Ok(vec![
                    Outcome::eq(BigInt::from(q * q), raw).with_value(&r.value),
                    Outcome::eq(BigInt::from(sign * q as i64), c),
                ])
            }));
        }
    }
    Ok(plan)
}

const CLOSURE_CAP: usize = 200_000;

fn weil_entry_task(entry: CatalogEntry) -> Task {
    let params = format!("{} ({:?} n={} q={})", entry.name, entry.kind, entry.n, entry.q);
    let order = order_formula(entry.kind, entry.n, entry.q);
    let mut ids = vec![("weil-groups/order".to_string(), params.clone())];
    match entry.kind {
        GroupKind::Sp => {
            ids.push(("weil-groups/sp-sum-fixed-spaces".into(), params.clone()));
            ids.push(("weil-groups/sp-class-function".into(), params));
        }
        GroupKind::Gu => {
            ids.push(("weil-groups/gu-inner-product".into(), params.clone()));
            ids.push(("weil-groups/gu-class-function".into(), params));
        }
        GroupKind::Su => {}
    }
    Task::many(ids, move || {
        let g = entry.build()?;
        let mut out = vec![Outcome::eq(order, g.order() as u128)];
        match entry.kind {
            GroupKind::Sp => {
                let w = g.class_function("|ω|²", sp_weil_abs_sq)?;
                out.push(Outcome::eq(BigInt::from(2 * g.order()), w.total()));
                out.push(Outcome::eq(true, g.conjugation_invariant(sp_weil_abs_sq, 64, 0)?));
            }
            GroupKind::Gu => {
                let z = g.class_function("ζ", gu_total_weil)?;
                let ip = z.inner_product(&z)?;
                out.push(Outcome::eq(BigRational::from_integer(BigInt::from(entry.q + 1)), ip));
                out.push(Outcome::eq(true, g.conjugation_invariant(gu_total_weil, 64, 0)?));
            }
            GroupKind::Su => {}
        }
        Ok(out)
    })
}

pub fn weil_groups(grid: &Grid) -> Result<Plan> {
    let mut plan = Plan::default();
    let entries: Vec<CatalogEntry> = match (grid.q, grid.n) {
        (Some(q), Some(n)) => {
            let found: Vec<_> = [GroupKind::Sp, GroupKind::Gu, GroupKind::Su]
                .into_iter()
                .filter_map(|k| find_entry(k, n, q).ok())
                .collect();
            if found.is_empty() {
                return Err(invalid(format!("no catalog group with n={n} q={q}")));
            }
            found
        }
        (None, None) => load_catalog()?,
        _ => return Err(invalid("q and n must be given together")),
    };
    for e in entries {
        if order_formula(e.kind, e.n, e.q) as usize > CLOSURE_CAP {
            return Err(invalid(format!("{} exceeds the closure cap {CLOSURE_CAP}", e.name)));
        }
        plan.field(&e.field()?);
        plan.push(weil_entry_task(e));
    }
    if grid.is_default() {
        for (p, f) in [(3u64, 2u32), (3, 3), (5, 1), (7, 1)] {
            let k = field(p, f)?;
            plan.field(&k);
            plan.push(Task::one("weil-groups/gross-torus", format!("GL1({})", k.size()), move || {
                let t = torus(&k);
                let mut bad = Vec::new();
                for (i, h) in t.iter().enumerate() {
                    if !gross_consistent(h)? {
                        bad.push(i as u32);
                    }
                }
                Ok(count(t.len(), &bad, "gross² = p^dimker"))
            }));
        }
        for (q, r, n) in [(27u64, 3u64, 1u32), (125, 5, 1), (27, 3, 2)] {
            plan.push(Task::one("weil-groups/frobenius-fixed", format!("q={q} r={r} n={n}"), move || {
                let rep = frobenius_fixed_check(q, r, n)?;
                let got = format!("fixed {} det legendre {}", rep.fixed_count, rep.det_legendre);
                Ok(Outcome::new(format!("fixed {} det legendre 1", rep.expected), got, rep.passed).with_value(&rep))
            }));
        }
    }
    Ok(plan)
}

fn status(s: &CheckStatus) -> (bool, String) {
    match s {
        CheckStatus::Pass => (true, "pass".into()),
        CheckStatus::Fail => (false, "fail".into()),
        CheckStatus::Flagged(note) => (true, format!("flagged: {note}")),
    }
}

fn report_task(id: &str, params: String, report: hyperg::Report) -> Task {
    let ids = report.checks.iter().map(|c| (format!("{id}/{}", c.name), params.clone())).collect();
    Task::many(ids, move || {
        Ok(report
            .checks
            .iter()
            .map(|c| {
                let (ok, got) = status(&c.status);
                Outcome::new("pass", got, ok)
            })
            .collect())
    })
}

fn hg_exponents(ctx: Context, q: u64, n: u32, m: u32) -> Result<(u64, u64)> {
    match ctx {
        Context::Sp => sp_exponents(q, n, m),
        Context::Su => su_exponents(q, n, m),
    }
}

pub fn hyperg_grid(grid: &Grid) -> Result<Plan> {
    let points = match (grid.q, grid.n, grid.m) {
        (Some(q), Some(n), Some(m)) => {
            prime_power(q)?;
            let ctx = if (n + m) % 2 == 1 { Context::Sp } else { Context::Su };
            vec![(ctx, q, n, m)]
        }
        (None, None, None) => hyperg::default_grid(),
        _ => return Err(invalid("q, n and m must be given together")),
    };
    let mut plan = Plan::default();
    for (ctx, q, n, m) in points {
        let params = format!("{ctx:?} q={q} n={n} m={m}").to_lowercase();
        let gcds = hyperg::standing_gcds(q, n, m, ctx).map_err(invalid)?;
        plan.push(report_task("hyperg/gcd", params.clone(), gcds));
        let sp = match ctx {
            Context::Sp => hyperg::splus_sp(q, n, m),
            Context::Su => hyperg::splus_su(q, n, m),
        }
        .map_err(invalid)?;
        plan.push(report_task("hyperg/splus", params.clone(), sp));
        let (p, _) = prime_power(q)?;
        let (a, b) = hg_exponents(ctx, q, n, m).map_err(invalid)?;
        let deg_n = n.max(m);
        let ids = vec![
            ("hyperg/weil-degree-sum".to_string(), params.clone()),
            ("hyperg/primitive".to_string(), format!("{params} A={a} B={b}")),
            ("hyperg/det-char-inversion".to_string(), format!("{params} A={a} B={b}")),
        ];
        plan.push(Task::many(ids, move || {
            let degs = hyperg::weil_degrees(ctx, deg_n, q)?;
            let sum: num_bigint::BigUint = degs.iter().sum();
            let want = num_bigint::BigUint::from(q).pow(deg_n);
            let ord = q + 1;
            let mut kinds = vec![HGParams::small(a, b, p)?];
            for kind in [HGKind::Big { chi: 1 }, HGKind::Sharp { chi: 1 }] {
                if let Ok(h) = HGParams::new(a, b, p, kind, ord) {
                    kinds.push(h);
                }
            }
            let inv_ok =
                kinds.iter().all(|h| h.det_char().ok() == h.inverted().det_char().ok() && h.det_char().is_ok());
            Ok(vec![
                Outcome::eq(want, sum),
                Outcome::eq(true, hyperg::geometrically_primitive(a, b, p)),
                Outcome::new(format!("{} kinds consistent", kinds.len()), inv_ok, inv_ok),
            ])
        }));
    }
    if grid.is_default() {
        for q in [2u64, 3, 5, 9] {
            for n in [1u32, 3, 5, 7, 9] {
                plan.push(Task::one("hyperg/n0", format!("n={n} q={q}"), move || {
                    let r = hyperg::n0_arith(n, q)?;
                    let got = format!("n0={} gcd(n0(q+1), A)={}", r.n0, r.cp11);
                    Ok(Outcome::new(format!("gcd = n0 = {}", r.n0), got, r.passed))
                }));
            }
        }
        for (a, b, p, want) in [(5u64, 2u64, 3u64, true), (4, 1, 2, false), (10, 4, 3, true)] {
            plan.push(Task::one("hyperg/belyi-excluded", format!("A={a} B={b} p={p}"), move || {
                Ok(Outcome::eq(want, hyperg::belyi_excluded(a, b, p)))
            }));
        }
    }
    Ok(plan)
}
