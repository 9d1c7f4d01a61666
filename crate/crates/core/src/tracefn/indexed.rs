//! Sums over the curves `x^A = u y^B`, their z-parametrisations, and the
//! Kummer pullbacks of the latter.

use crate::arith;
use crate::charsum::{AddChar, MultChar};
use crate::cyclo::{ClearingFactor, Histogram};
use crate::error::{Error, Result};
use crate::gf::{FieldElem, FieldSpec};

use super::bezout::{BezoutPair, Constraint};
use super::engine::{zsum, Deco, Term};
use super::{IdentityCheck, RawTrace};

/// Which multiplicative decoration accompanies a sum.
///
/// `Big(χ)` decorates the `y` side (`χ(y)`, i.e. `χ(u^β z^A)` in z-form) and
/// `Sharp(χ)` the `x` side (`χ(x)`, i.e. `χ(u^α z^B)`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Role {
    Small,
    Big(MultChar),
    Sharp(MultChar),
}

impl Role {
    fn chi(&self, e: &FieldSpec) -> Result<Option<MultChar>> {
        match self {
            Role::Small => Ok(None),
            Role::Big(c) | Role::Sharp(c) => c.lift(e).map(Some),
        }
    }

    pub fn name(&self) -> String {
        match self {
            Role::Small => "small".into(),
            Role::Big(c) => format!("big(chi^{})", c.exponent()),
            Role::Sharp(c) => format!("sharp(chi^{})", c.exponent()),
        }
    }
}

/// Enumeration strategy for [`eval_indexed`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// Brute force up to 2^12 elements, dlog parametrisation above.
    Auto,
    BruteForce,
    Dlog,
}

fn raw(e: &FieldSpec, h: Histogram, psi: &AddChar) -> RawTrace {
    RawTrace {
        value: -h.to_cyc(),
        field: e.clone(),
        clearing: ClearingFactor::minus_gauss(e, psi.scale() as i64),
        leading_minus: true,
    }
}

fn check_base(psi: &AddChar, e: &FieldSpec) -> Result<()> {
    if psi.field().p() != e.p() {
        return Err(Error::FieldMismatch(format!("{} vs {}", psi.field(), e)));
    }
    Ok(())
}

/// −Σ_{x^A = u y^B} ψ_E(Ax − By) · decoration.
pub fn eval_indexed(psi: &AddChar, a: u64, b: u64, role: &Role, u: &FieldElem, strategy: Strategy) -> Result<RawTrace> {
    if arith::gcd(a, b) != 1 {
        return Err(Error::NotCoprime(a, b));
    }
    if u.is_zero() {
        return Err(Error::ZeroParameter);
    }
    let e = u.field().clone();
    check_base(psi, &e)?;
    let p = e.p();
    let q = e.size();
    let n = q - 1;
    let chi = role.chi(&e)?;
    let ord = chi.as_ref().map_or(1, |c| c.order());
    let m = arith::lcm(p, ord);
    let (sp, so) = (m / p, m / ord);
    let (sa, sb) = (psi.scale() * (a % p) % p, psi.scale() * (b % p) % p);
    let mut h = Histogram::new(m);

    let mut visit = |x: u32, y: u32| -> Result<()> {
        let t = (sa * e.abs_trace_code(x) + (p - sb) * e.abs_trace_code(y)) % p;
        let j = match (role, &chi) {
            (Role::Small, _) => 0,
            (Role::Big(_), Some(c)) if y != 0 => c.index_code(y)?,
            (Role::Sharp(_), Some(c)) if x != 0 => c.index_code(x)?,
            _ => return Ok(()),
        };
        h.add(t * sp + j * so, 1);
        Ok(())
    };

    let brute = match strategy {
        Strategy::Auto => q <= 1 << 12,
        Strategy::BruteForce => true,
        Strategy::Dlog => false,
    };
    if brute {
        let xa: Vec<u32> = (0..q as u32).map(|x| e.pow_code(x, a as u128)).collect();
        let yb: Vec<u32> = (0..q as u32).map(|y| e.mul_codes(u.code(), e.pow_code(y, b as u128))).collect();
        for x in 0..q as u32 {
            for y in 0..q as u32 {
                if xa[x as usize] == yb[y as usize] {
                    visit(x, y)?;
                }
            }
        }
    } else {
        let g = arith::gcd(a, n);
        let nn = n / g;
        let inv = if nn > 1 { arith::inv_mod(((a / g) % nn) as i128, nn as i128).expect("coprime") as u64 } else { 0 };
        visit(0, 0)?;
        let lu = e.dlog_code(u.code())?;
        for ly in 0..n {
            let y = e.exp_code(ly);
            let l = (lu as u128 + b as u128 * ly as u128) % n as u128;
            let l = l as u64;
            if !l.is_multiple_of(g) {
                continue;
            }
            let s0 = if nn > 1 { (l / g) as u128 * inv as u128 % nn as u128 } else { 0 } as u64;
            for k in 0..g {
                visit(e.exp_code(s0 + k * nn), y)?;
            }
        }
    }
    Ok(raw(&e, h, psi))
}

fn u_pow(u: &FieldElem, k: i128) -> Result<u32> {
    Ok(u.pow_signed(k).ok_or(Error::ZeroParameter)?.code())
}

/// −Σ_z ψ_E(A u^α z^B − B u^β z^A) · decoration at `u^β z^A` (big) or `u^α z^B` (sharp).
pub fn eval_zform(psi: &AddChar, pair: &BezoutPair, role: &Role, u: &FieldElem) -> Result<RawTrace> {
    if u.is_zero() {
        return Err(Error::ZeroParameter);
    }
    let e = u.field().clone();
    check_base(psi, &e)?;
    let (a, b) = (pair.a, pair.b);
    let p = e.p();
    let s = psi.scale();
    let ua = u_pow(u, pair.alpha)?;
    let ub = u_pow(u, pair.beta)?;
    let terms = [
        Term { coeff: ua, exp: b as u128, scale: s * (a % p) % p },
        Term { coeff: ub, exp: a as u128, scale: (p - s * (b % p) % p) % p },
    ];
    let deco = match (role, role.chi(&e)?) {
        (Role::Big(_), Some(c)) => Some(Deco { chi: c, power: a as u128, constant: ub }),
        (Role::Sharp(_), Some(c)) => Some(Deco { chi: c, power: b as u128, constant: ua }),
        _ => None,
    };
    Ok(raw(&e, zsum(&e, &terms, deco.as_ref())?, psi))
}

/// Generic `−Σ_z ψ(c1·s1·z^e1 + c2·s2·z^e2) · χ(c·z^k)` used for pullback sides.
fn two_term(
    psi: &AddChar,
    e: &FieldSpec,
    (c1, s1, e1): (u32, i64, u64),
    (c2, s2, e2): (u32, i64, u64),
    deco: Option<(MultChar, u32, u64)>,
) -> Result<RawTrace> {
    let p = e.p() as i64;
    let sc = |k: i64| (psi.scale() as i64 * k).rem_euclid(p) as u64;
    let terms =
        [Term { coeff: c1, exp: e1 as u128, scale: sc(s1) }, Term { coeff: c2, exp: e2 as u128, scale: sc(s2) }];
    let d = deco.map(|(chi, c, k)| Deco { chi, power: k as u128, constant: c });
    Ok(raw(e, zsum(e, &terms, d.as_ref())?, psi))
}

/// Checks both Kummer pullback identities at every `u ∈ E^×`:
///
/// * `[A]^*`: zform at `u^A` equals `−Σ ψ(A u z^B − B z^A)` with decoration
///   `χ(z^A)` (big) or `χ(u z^B)` (sharp);
/// * `[B]^*`: zform at `u^B` equals `−Σ ψ(A z^B − B u^{-1} z^A)` with decoration
///   `χ(u^{-1} z^A)` (big) or `χ(z^B)` (sharp).
pub fn kummer_pullback_check(
    psi: &AddChar,
    a: u64,
    b: u64,
    role: &Role,
    e: &FieldSpec,
) -> Result<(IdentityCheck, IdentityCheck)> {
    let pair = BezoutPair::new(a, b, Constraint::None)?;
    let chi = role.chi(e)?;
    let (ai, bi) = (a as i64, b as i64);
    let mut ca = IdentityCheck::new(format!("[A]* pullback A={a} B={b} {}", role.name()), e);
    let mut cb = IdentityCheck::new(format!("[B]* pullback A={a} B={b} {}", role.name()), e);
    for u in e.units() {
        let uinv = u.inv().unwrap().code();
        let lhs = eval_zform(psi, &pair, role, &u.pow(a as u128))?;
        let deco = match role {
            Role::Small => None,
            Role::Big(_) => Some((chi.clone().unwrap(), 1, a)),
            Role::Sharp(_) => Some((chi.clone().unwrap(), u.code(), b)),
        };
        let rhs = two_term(psi, e, (u.code(), ai, b), (1, -bi, a), deco)?;
        ca.record(u.code(), lhs.value == rhs.value);

        let lhs = eval_zform(psi, &pair, role, &u.pow(b as u128))?;
        let deco = match role {
            Role::Small => None,
            Role::Big(_) => Some((chi.clone().unwrap(), uinv, a)),
            Role::Sharp(_) => Some((chi.clone().unwrap(), 1, b)),
        };
        let rhs = two_term(psi, e, (1, ai, b), (uinv, -bi, a), deco)?;
        cb.record(u.code(), lhs.value == rhs.value);
    }
    Ok((ca, cb))
}

/// eval_indexed (both strategies) against eval_zform at every `u ∈ E^×`.
pub fn form_equivalence_check(psi: &AddChar, a: u64, b: u64, role: &Role, e: &FieldSpec) -> Result<IdentityCheck> {
    let pair = BezoutPair::new(a, b, Constraint::None)?;
    let mut c = IdentityCheck::new(format!("indexed = zform A={a} B={b} {}", role.name()), e);
    for u in e.units() {
        let z = eval_zform(psi, &pair, role, &u)?;
        let x = eval_indexed(psi, a, b, role, &u, Strategy::BruteForce)?;
        let y = eval_indexed(psi, a, b, role, &u, Strategy::Dlog)?;
        c.record(u.code(), z.value == x.value && x.value == y.value);
    }
    Ok(c)
}

/// The z-form does not depend on the Bezout representative: compares
/// (α, β) with (α + kB, β + kA) for k = ±1 at every `u ∈ E^×`.
pub fn bezout_independence_check(
    psi: &AddChar,
    pair: &BezoutPair,
    role: &Role,
    e: &FieldSpec,
) -> Result<IdentityCheck> {
    let mut c = IdentityCheck::new(format!("bezout shift A={} B={} {}", pair.a, pair.b, role.name()), e);
    for u in e.units() {
        let v = eval_zform(psi, pair, role, &u)?.value;
        let ok = [-1, 1]
            .iter()
            .map(|&k| eval_zform(psi, &pair.shifted(k), role, &u).map(|r| r.value == v))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .all(|b| b);
        c.record(u.code(), ok);
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_field;

    #[test]
    fn five_two_over_gf9() {
        let e = make_field(3, 2).unwrap();
        let k = make_field(3, 1).unwrap();
        let psi = AddChar::new(&k, 1);
        let chi2 = MultChar::quadratic(&e).unwrap();
        for role in [Role::Small, Role::Big(chi2.clone()), Role::Sharp(chi2.clone())] {
            assert!(form_equivalence_check(&psi, 5, 2, &role, &e).unwrap().passed(), "{}", role.name());
            let (a, b) = kummer_pullback_check(&psi, 5, 2, &role, &e).unwrap();
            assert!(a.passed() && b.passed(), "{}", role.name());
            let pair = BezoutPair::new(5, 2, Constraint::None).unwrap();
            assert!(bezout_independence_check(&psi, &pair, &role, &e).unwrap().passed());
        }
    }

    #[test]
    fn zform_at_one_is_the_one_variable_sum() {
        let e = make_field(3, 2).unwrap();
        let psi = AddChar::new(&make_field(3, 1).unwrap(), 1);
        let pair = BezoutPair::new(5, 2, Constraint::BetaEven).unwrap();
        let z = eval_zform(&psi, &pair, &Role::Small, &e.one()).unwrap();
        let direct = two_term(&psi, &e, (1, 5, 2), (1, -2, 5), None).unwrap();
        assert_eq!(z.value, direct.value);
    }

    #[test]
    fn errors() {
        let e = make_field(3, 2).unwrap();
        let psi = AddChar::new(&make_field(3, 1).unwrap(), 1);
        assert!(eval_indexed(&psi, 4, 2, &Role::Small, &e.one(), Strategy::Auto).is_err());
        assert!(eval_indexed(&psi, 5, 2, &Role::Small, &e.zero(), Strategy::Auto).is_err());
        let pair = BezoutPair::new(5, 2, Constraint::None).unwrap();
        assert!(eval_zform(&psi, &pair, &Role::Small, &e.zero()).is_err());
    }
}
