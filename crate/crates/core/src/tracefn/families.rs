//! The Sp and SU trace families, the van der Geer–van der Vlugt sums, and the
//! descent/pullback identities between their presentations.

use serde::Serialize;

use crate::arith;
use crate::charsum::{AddChar, MultChar};
use crate::cyclo::{ClearingFactor, CycInt};
use crate::error::{Error, Result};
use crate::gf::{FieldElem, FieldSpec};

use super::bezout::{BezoutPair, Constraint};
use super::engine::{zsum, Term};
use super::indexed::{eval_zform, Role};
use super::{IdentityCheck, RawTrace};

/// Presentation of the Sp total trace.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SpForm {
    /// `−Σ ψ_{−1/2}(z^{2A} − u z^{2B})`, defined for all `u ∈ E`.
    Pullback,
    /// `−Σ ψ(A u^α z^{2B} − B u^β z^{2A})` with β even.
    ZForm,
}

/// Presentation of the SU trace.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SuForm {
    /// `−Σ ψ(u z^{q^m+1} − z^{q^n+1})`, defined for all `u ∈ E`.
    W,
    /// `Σ ψ(z^{q^m+1} − u^{−1} z^{q^n+1})`, cleared by `G(ψ_E, χ₂)`.
    WBis,
    /// `Σ ψ(u^α z^{q^m+1} − u^β z^{q^n+1})` with `α ≡ 0 mod q+1`, cleared by `G(ψ_E, χ₂)`.
    H,
}

fn prime_power(q: u64) -> Result<(u64, u32)> {
    let fac = arith::factorize(q);
    if fac.len() != 1 {
        return Err(Error::Hypothesis(format!("{q} is not a prime power")));
    }
    Ok(fac[0])
}

fn qpow(q: u64, n: u32) -> Result<u64> {
    q.checked_pow(n)
        .and_then(|v| v.checked_add(1).map(|_| v))
        .ok_or_else(|| Error::Hypothesis(format!("{q}^{n} overflows")))
}

fn check_char(psi: &AddChar, q: u64, e: &FieldSpec) -> Result<()> {
    let (p, _) = prime_power(q)?;
    if psi.field().f() != 1 || psi.field().p() != p || e.p() != p {
        return Err(Error::FieldMismatch(format!("ψ on {} with q = {q} over {e}", psi.field())));
    }
    Ok(())
}

/// `(A, B)` for the Sp family: `A = (q^{even}+1)/2`, `B = (q^{odd}+1)/2`.
pub fn sp_exponents(q: u64, n: u32, m: u32) -> Result<(u64, u64)> {
    let (p, _) = prime_power(q)?;
    if p == 2 {
        return Err(Error::Hypothesis("the Sp family needs odd q".into()));
    }
    if n == 0 || m == 0 || arith::gcd(n as u64, m as u64) != 1 || (n + m).is_multiple_of(2) {
        return Err(Error::Hypothesis(format!("need gcd(n,m)=1 and exactly one even, got ({n},{m})")));
    }
    let (even, odd) = if n.is_multiple_of(2) { (n, m) } else { (m, n) };
    Ok((qpow(q, even)?.div_ceil(2), qpow(q, odd)?.div_ceil(2)))
}

/// `(A, B) = ((q^n+1)/(q+1), (q^m+1)/(q+1))` for the SU family.
pub fn su_exponents(q: u64, n: u32, m: u32) -> Result<(u64, u64)> {
    prime_power(q)?;
    if n <= m || m == 0 || n.is_multiple_of(2) || m.is_multiple_of(2) || arith::gcd(n as u64, m as u64) != 1 {
        return Err(Error::Hypothesis(format!("need n > m > 0 odd and coprime, got ({n},{m})")));
    }
    Ok(((qpow(q, n)? + 1) / (q + 1), (qpow(q, m)? + 1) / (q + 1)))
}

fn sc(psi: &AddChar, k: i128) -> u64 {
    let p = psi.field().p() as i128;
    (psi.scale() as i128 * k).rem_euclid(p) as u64
}

fn half(p: u64) -> i128 {
    arith::inv_mod(2, p as i128).expect("odd p")
}

fn upow(u: &FieldElem, k: i128) -> Result<u32> {
    Ok(u.pow_signed(k).ok_or(Error::ZeroParameter)?.code())
}

fn finish(e: &FieldSpec, terms: &[Term], minus: bool, clearing: ClearingFactor) -> Result<RawTrace> {
    let v = zsum(e, terms, None)?.to_cyc();
    Ok(RawTrace { value: if minus { -v } else { v }, field: e.clone(), clearing, leading_minus: minus })
}

fn sp_clearing(e: &FieldSpec, psi: &AddChar) -> ClearingFactor {
    ClearingFactor::minus_gauss(e, -(psi.scale() as i64))
}

/// The Sp total trace at `u` over `e`, cleared by `−G(ψ̄_E, χ₂)`.
pub fn sp_total_trace(psi: &AddChar, q: u64, n: u32, m: u32, u: &FieldElem, form: SpForm) -> Result<RawTrace> {
    let e = u.field();
    check_char(psi, q, e)?;
    let (a, b) = sp_exponents(q, n, m)?;
    let p = e.p();
    let terms = match form {
        SpForm::Pullback => {
            let h = half(p);
            [
                Term { coeff: 1, exp: 2 * a as u128, scale: sc(psi, -h) },
                Term { coeff: u.code(), exp: 2 * b as u128, scale: sc(psi, h) },
            ]
        }
        SpForm::ZForm => {
            let pair = BezoutPair::new(a, b, Constraint::BetaEven)?;
            [
                Term { coeff: upow(u, pair.alpha)?, exp: 2 * b as u128, scale: sc(psi, a as i128) },
                Term { coeff: upow(u, pair.beta)?, exp: 2 * a as u128, scale: sc(psi, -(b as i128)) },
            ]
        }
    };
    finish(e, &terms, true, sp_clearing(e, psi))
}

/// The Sp pullback trace at `u = 1` over a subfield `k ⊆ F_q`; equals `−#k`.
pub fn sp_subfield_trace_at_one(psi: &AddChar, q: u64, n: u32, m: u32, k: &FieldSpec) -> Result<RawTrace> {
    let (_, f) = prime_power(q)?;
    if f % k.f() != 0 {
        return Err(Error::NotSubfield { p: k.p(), sub: k.f(), f });
    }
    sp_total_trace(psi, q, n, m, &k.one(), SpForm::Pullback)
}

fn su_w_clearing(e: &FieldSpec) -> ClearingFactor {
    let p = e.p();
    if !e.f().is_multiple_of(2) {
        return ClearingFactor::none(e);
    }
    let base = if p == 2 { 2 } else { -(arith::legendre(p - 1, p) as i64) * p as i64 };
    ClearingFactor::rational_power(e, base, e.f() / 2)
}

/// The SU trace in one of its three presentations.
pub fn su_total_trace(psi: &AddChar, q: u64, n: u32, m: u32, u: &FieldElem, form: SuForm) -> Result<RawTrace> {
    let e = u.field();
    check_char(psi, q, e)?;
    let (a, b) = su_exponents(q, n, m)?;
    let (en, em) = (qpow(q, n)? as u128 + 1, qpow(q, m)? as u128 + 1);
    let (s, ms) = (sc(psi, 1), sc(psi, -1));
    match form {
        SuForm::W => {
            let terms = [Term { coeff: u.code(), exp: em, scale: s }, Term { coeff: 1, exp: en, scale: ms }];
            finish(e, &terms, true, su_w_clearing(e))
        }
        SuForm::WBis => {
            let terms = [Term { coeff: 1, exp: em, scale: s }, Term { coeff: upow(u, -1)?, exp: en, scale: ms }];
            finish(e, &terms, false, ClearingFactor::gauss(e, psi.scale() as i64))
        }
        SuForm::H => {
            let pair = BezoutPair::new(a, b, Constraint::AlphaDivisibleBy(q + 1))?;
            let terms = [
                Term { coeff: upow(u, pair.alpha)?, exp: em, scale: s },
                Term { coeff: upow(u, pair.beta)?, exp: en, scale: ms },
            ];
            finish(e, &terms, false, ClearingFactor::gauss(e, psi.scale() as i64))
        }
    }
}

/// `−Σ_x ψ_E(Σ a_i x^{q^i+1})`, cleared by `−G(ψ̄_E, χ₂)` (no clearing when p = 2).
pub fn vdgv_trace(psi: &AddChar, q: u64, coeffs: &[(FieldElem, u32)], e: &FieldSpec) -> Result<RawTrace> {
    check_char(psi, q, e)?;
    let terms = coeffs
        .iter()
        .map(|(a, i)| Ok(Term { coeff: a.embed(e)?.code(), exp: qpow(q, *i)? as u128 + 1, scale: psi.scale() }))
        .collect::<Result<Vec<_>>>()?;
    let clearing = if e.p() == 2 { ClearingFactor::none(e) } else { sp_clearing(e, psi) };
    finish(e, &terms, true, clearing)
}

/// The exponent r with `|raw|² = #E·Q^r`, where `Q = q` when `E ⊇ F_q` and
/// `Q = #E` when `E ⊆ F_q`; `None` if no such r exists.
pub fn vdgv_power(raw: &RawTrace, q: u64) -> Result<Option<u32>> {
    let (_, f) = prime_power(q)?;
    let e = &raw.field;
    let base = if e.f().is_multiple_of(f) {
        q
    } else if f % e.f() == 0 {
        e.size()
    } else {
        return Err(Error::Hypothesis(format!("{e} is neither a subfield nor an extension of F_{q}")));
    };
    let sq = raw.abs_square().as_integer()?;
    let n = num_bigint::BigInt::from(e.size());
    if sq.clone() % &n != num_bigint::BigInt::from(0) {
        return Ok(None);
    }
    let mut rest = sq / n;
    let mut r = 0;
    let b = num_bigint::BigInt::from(base);
    let one = num_bigint::BigInt::from(1);
    while rest > one && rest.clone() % &b == num_bigint::BigInt::from(0) {
        rest /= &b;
        r += 1;
    }
    Ok((rest == one).then_some(r))
}

fn lift_sum(vals: Vec<CycInt>) -> Result<CycInt> {
    let m = vals.iter().fold(1, |m, v| arith::lcm(m, v.order()));
    vals.into_iter().try_fold(CycInt::zero(m), |acc, v| acc.checked_add(&v.lift(m)?))
}

/// Sp consistency: the pullback form at `u` equals the z-form at `u^A`, and
/// the z-form splits as small + big(χ₂).
pub fn sp_identity_checks(psi: &AddChar, q: u64, n: u32, m: u32, e: &FieldSpec) -> Result<Vec<IdentityCheck>> {
    check_char(psi, q, e)?;
    let (a, b) = sp_exponents(q, n, m)?;
    let pair = BezoutPair::new(a, b, Constraint::BetaEven)?;
    let chi2 = MultChar::quadratic(e)?;
    let mut pb = IdentityCheck::new(format!("Sp pullback = zform∘[A] q={q} n={n} m={m}"), e);
    let mut split = IdentityCheck::new(format!("Sp zform = small + big(χ₂) q={q} n={n} m={m}"), e);
    for u in e.units() {
        let lhs = sp_total_trace(psi, q, n, m, &u, SpForm::Pullback)?;
        let rhs = sp_total_trace(psi, q, n, m, &u.pow(a as u128), SpForm::ZForm)?;
        pb.record(u.code(), lhs.value == rhs.value);
        let total = sp_total_trace(psi, q, n, m, &u, SpForm::ZForm)?;
        let small = eval_zform(psi, &pair, &Role::Small, &u)?.value;
        let big = eval_zform(psi, &pair, &Role::Big(chi2.clone()), &u)?.value;
        split.record(u.code(), total.value == lift_sum(vec![small, big])?);
    }
    Ok(vec![pb, split])
}

/// `−Σ ψ(u^α z^{q^m+1} − u^β z^{q^n+1})` for a given Bezout pair.
fn descent_total(psi: &AddChar, q: u64, n: u32, m: u32, pair: &BezoutPair, u: &FieldElem) -> Result<CycInt> {
    let e = u.field();
    let terms = [
        Term { coeff: upow(u, pair.alpha)?, exp: qpow(q, m)? as u128 + 1, scale: sc(psi, 1) },
        Term { coeff: upow(u, pair.beta)?, exp: qpow(q, n)? as u128 + 1, scale: sc(psi, -1) },
    ];
    Ok(-zsum(e, &terms, None)?.to_cyc())
}

/// The SU descent identities, each checked at every `u ∈ E^×` (E ⊇ F_{q²}).
///
/// When `gcd(n, q+1) = 1`: the small sum plus all big(χ) sums, χ ∈ char(q+1)
/// nontrivial, equals the two-term descent sum with `β ≡ 0 mod q+1`, and the
/// latter at `u^A` is the W trace at `u`. When `gcd(m, q+1) = 1`: the same with
/// sharp decorations and `α ≡ 0 mod q+1` gives the H trace (up to sign), and H
/// at `u^B` is W_bis at `u`.
pub fn remark_identity_checks(psi: &AddChar, q: u64, n: u32, m: u32, e: &FieldSpec) -> Result<Vec<IdentityCheck>> {
    check_char(psi, q, e)?;
    let (a, b) = su_exponents(q, n, m)?;
    let (_, fq) = prime_power(q)?;
    if !e.f().is_multiple_of(2 * fq) {
        return Err(Error::Hypothesis(format!("{e} does not contain F_{}", q * q)));
    }
    let with_n = arith::gcd(n as u64, q + 1) == 1;
    let with_m = arith::gcd(m as u64, q + 1) == 1;
    if !with_n && !with_m {
        return Err(Error::Hypothesis(format!("gcd(n, q+1) and gcd(m, q+1) both exceed 1 for q={q} n={n} m={m}")));
    }
    let chars: Vec<MultChar> = MultChar::dividing(e, q + 1)?.into_iter().skip(1).collect();
    let tag = format!("q={q} n={n} m={m}");
    let mut out = Vec::new();
    if with_n {
        let pair = BezoutPair::new(a, b, Constraint::BetaDivisibleBy(q + 1))?;
        let mut c1 = IdentityCheck::new(format!("small + big sum = descent {tag}"), e);
        let mut c2 = IdentityCheck::new(format!("descent at u^A = W {tag}"), e);
        for u in e.units() {
            let mut vals = vec![eval_zform(psi, &pair, &Role::Small, &u)?.value];
            for chi in &chars {
                vals.push(eval_zform(psi, &pair, &Role::Big(chi.clone()), &u)?.value);
            }
            let rhs = descent_total(psi, q, n, m, &pair, &u)?;
            c1.record(u.code(), lift_sum(vals)? == rhs);
            let pulled = descent_total(psi, q, n, m, &pair, &u.pow(a as u128))?;
            let w = su_total_trace(psi, q, n, m, &u, SuForm::W)?.value;
            c2.record(u.code(), pulled == w);
        }
        out.extend([c1, c2]);
    }
    if with_m {
        let pair = BezoutPair::new(a, b, Constraint::AlphaDivisibleBy(q + 1))?;
        let mut c1 = IdentityCheck::new(format!("small + sharp sum = −H {tag}"), e);
        let mut c2 = IdentityCheck::new(format!("H at u^B = W_bis {tag}"), e);
        for u in e.units() {
            let mut vals = vec![eval_zform(psi, &pair, &Role::Small, &u)?.value];
            for chi in &chars {
                vals.push(eval_zform(psi, &pair, &Role::Sharp(chi.clone()), &u)?.value);
            }
            let h = su_total_trace(psi, q, n, m, &u, SuForm::H)?.value;
            c1.record(u.code(), -lift_sum(vals)? == h);
            let pulled = su_total_trace(psi, q, n, m, &u.pow(b as u128), SuForm::H)?.value;
            let wb = su_total_trace(psi, q, n, m, &u, SuForm::WBis)?.value;
            c2.record(u.code(), pulled == wb);
        }
        out.extend([c1, c2]);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_field;
    use num_bigint::BigInt;

    fn psi3() -> AddChar {
        AddChar::new(&make_field(3, 1).unwrap(), 1)
    }

    #[test]
    fn sp_trace_at_one_over_prime_field() {
        let k = make_field(3, 1).unwrap();
        let r = sp_subfield_trace_at_one(&psi3(), 3, 2, 1, &k).unwrap();
        assert_eq!(r.value.as_integer().unwrap(), BigInt::from(-3));
        assert_eq!(sp_exponents(3, 2, 1).unwrap(), (5, 2));
        assert_eq!(sp_exponents(3, 1, 2).unwrap(), (5, 2));
    }

    #[test]
    fn su_h_at_one_over_gf9() {
        let e = make_field(3, 2).unwrap();
        let r = su_total_trace(&psi3(), 3, 3, 1, &e.one(), SuForm::H).unwrap();
        assert_eq!(r.value.as_integer().unwrap(), BigInt::from(9));
        assert_eq!(r.clearing.value().unwrap().as_integer().unwrap(), BigInt::from(3));
    }

    #[test]
    fn identities_over_gf9() {
        let e = make_field(3, 2).unwrap();
        for c in sp_identity_checks(&psi3(), 3, 2, 1, &e).unwrap() {
            assert!(c.passed(), "{}", c.name);
        }
        let checks = remark_identity_checks(&psi3(), 3, 3, 1, &e).unwrap();
        assert_eq!(checks.len(), 4);
        for c in checks {
            assert!(c.passed(), "{}", c.name);
        }
        let checks = remark_identity_checks(&psi3(), 3, 5, 3, &e).unwrap();
        assert_eq!(checks.len(), 4);
        for c in checks {
            assert!(c.passed(), "{}", c.name);
        }
    }

    #[test]
    fn hypotheses() {
        assert!(sp_exponents(3, 2, 4).is_err());
        assert!(sp_exponents(3, 3, 1).is_err());
        assert!(su_exponents(3, 2, 1).is_err());
        assert!(su_exponents(3, 1, 3).is_err());
        let k = make_field(3, 1).unwrap();
        assert!(remark_identity_checks(&psi3(), 3, 3, 1, &k).is_err());
    }
}
