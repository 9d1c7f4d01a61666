//! Exact field-of-traces and value-set predicates on raw traces.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::arith;
use crate::charsum::MultChar;
use crate::cyclo::ClearingKind;

use super::RawTrace;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Target {
    /// The raw value is a rational integer.
    Q,
    /// The raw value lies in the quadratic subfield of Q(ζ_p).
    K,
    /// The raw value lies in Q(χ), the field of values of χ.
    QChi(MultChar),
    /// The cleared value is ± a power of `q` (or 0 when p = 2).
    PmPowerOf(u64),
}

fn units_where(m: u64, keep: impl Fn(u64) -> bool) -> Vec<i64> {
    (1..m.max(2)).filter(|&c| arith::gcd(c, m) == 1 && keep(c)).map(|c| c as i64).collect()
}

/// Tests `raw` against `target` exactly; clearing factors are multiplied, never divided.
pub fn trace_membership(raw: &RawTrace, target: Target) -> bool {
    let v = &raw.value;
    let p = raw.field.p();
    match target {
        Target::Q => v.is_rational(),
        Target::K => {
            if p == 2 {
                return v.is_rational();
            }
            let m = arith::lcm(v.order(), p);
            let Ok(w) = v.lift(m) else { return false };
            w.fixed_by(&units_where(m, |c| arith::legendre(c % p, p) == 1))
        }
        Target::QChi(chi) => {
            let ord = chi.order();
            let m = arith::lcm(v.order(), ord);
            let Ok(w) = v.lift(m) else { return false };
            w.fixed_by(&units_where(m, |c| c % ord == 1 % ord))
        }
        Target::PmPowerOf(q) => pm_power(raw, q),
    }
}

fn pm_power(raw: &RawTrace, q: u64) -> bool {
    let v = &raw.value;
    if v.is_zero() {
        return raw.field.p() == 2;
    }
    let Ok(c) = raw.clearing.value() else { return false };
    // |v|² = |c|²·q^{2i}
    let Ok(num) = v.abs_square().as_integer() else { return false };
    let den = raw.clearing.abs_square();
    if den.is_zero() || (&num % &den) != BigInt::zero() {
        return false;
    }
    let mut ratio = num / den;
    let q2 = BigInt::from(q) * BigInt::from(q);
    let mut i = 0u32;
    while ratio > BigInt::one() && (&ratio % &q2).is_zero() {
        ratio /= &q2;
        i += 1;
    }
    if !ratio.is_one() {
        return false;
    }
    let qi = BigInt::from(q).pow(i);
    let target = match raw.clearing.kind {
        ClearingKind::None | ClearingKind::RationalPower { .. } => {
            return v.as_integer().map(|n| n.abs() == c.as_integer().unwrap().abs() * qi).unwrap_or(false)
        }
        _ => c.scale(qi),
    };
    let Ok(diff) = v.checked_sub(&target) else { return false };
    let Ok(sum) = v.checked_add(&target) else { return false };
    diff.is_zero() || sum.is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charsum::AddChar;
    use crate::gf::make_field;
    use crate::tracefn::{sp_total_trace, su_total_trace, vdgv_power, SpForm, SuForm};

    #[test]
    fn sp_traces_in_k() {
        let e = make_field(3, 2).unwrap();
        let psi = AddChar::new(&make_field(3, 1).unwrap(), 1);
        for u in e.enumerate() {
            let r = sp_total_trace(&psi, 3, 2, 1, &u, SpForm::Pullback).unwrap();
            assert!(trace_membership(&r, Target::K));
            assert!(vdgv_power(&r, 3).unwrap().is_some());
        }
    }

    #[test]
    fn su_traces_are_pm_powers() {
        let e = make_field(3, 2).unwrap();
        let psi = AddChar::new(&make_field(3, 1).unwrap(), 1);
        for u in e.enumerate() {
            let r = su_total_trace(&psi, 3, 3, 1, &u, SuForm::W).unwrap();
            assert!(trace_membership(&r, Target::Q));
            assert!(trace_membership(&r, Target::PmPowerOf(3)), "{}", r.value);
        }
        let h = su_total_trace(&psi, 3, 3, 1, &e.one(), SuForm::H).unwrap();
        assert!(trace_membership(&h, Target::PmPowerOf(3)));
    }

    #[test]
    fn non_members() {
        let k = make_field(5, 1).unwrap();
        let chi = MultChar::new(&k, 1);
        let psi = AddChar::new(&k, 1);
        let g = crate::charsum::gauss_sum(&psi, &chi).unwrap();
        let raw = RawTrace {
            value: g,
            field: k.clone(),
            clearing: crate::cyclo::ClearingFactor::none(&k),
            leading_minus: false,
        };
        assert!(!trace_membership(&raw, Target::Q));
        assert!(!trace_membership(&raw, Target::K));
        assert!(!trace_membership(&raw, Target::QChi(chi)));
        assert!(!trace_membership(&raw, Target::PmPowerOf(5)));
    }
}
