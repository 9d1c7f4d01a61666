//! Trace functions: exact evaluation of the exponential-sum families and of
//! the identities between their different presentations.
//!
//! Every evaluator returns a [`RawTrace`]: the unnormalised sum (with the
//! customary leading minus sign when flagged) plus the clearing factor that
//! would make it pure of weight zero. Clearing factors are never divided out.

mod bezout;
mod engine;
mod families;
mod indexed;
mod membership;

use serde::Serialize;

use crate::charsum::{AddChar, MultChar};
use crate::cyclo::{ClearingFactor, CycInt};
use crate::error::{Error, Result};
use crate::gf::{FieldElem, FieldSpec};

pub use bezout::{BezoutPair, Constraint};
pub use families::{
    remark_identity_checks, sp_exponents, sp_identity_checks, sp_subfield_trace_at_one, sp_total_trace, su_exponents,
    su_total_trace, vdgv_power, vdgv_trace, SpForm, SuForm,
};
pub use indexed::{
    bezout_independence_check, eval_indexed, eval_zform, form_equivalence_check, kummer_pullback_check, Role, Strategy,
};
pub use membership::{trace_membership, Target};

pub(crate) use engine::{zsum, Deco, Term};

/// A monomial coefficient: an integer acting through GF(p), or a field element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Coeff {
    Int(i64),
    Elem(FieldElem),
}

impl Coeff {
    fn in_field(&self, e: &FieldSpec) -> Result<u32> {
        match self {
            Coeff::Int(n) => Ok(e.from_int(*n).code()),
            Coeff::Elem(x) => Ok(x.embed(e)?.code()),
        }
    }
}

/// A family `t ↦ −Σ_x ψ_E(f(x) + Σ t_i x^{B_i}) ρ(x)`.
#[derive(Clone, Debug)]
pub struct SumSpec {
    psi: AddChar,
    monomials: Vec<(Coeff, u64)>,
    decoration: Option<MultChar>,
    params: Vec<u64>,
}

impl SumSpec {
    pub fn new(
        psi: AddChar,
        monomials: Vec<(Coeff, u64)>,
        decoration: Option<MultChar>,
        params: Vec<u64>,
    ) -> Result<Self> {
        if psi.field().f() != 1 {
            return Err(Error::FieldMismatch(format!("base character lives on {}", psi.field())));
        }
        let p = psi.field().p();
        for &e in monomials.iter().map(|(_, e)| e).chain(&params) {
            if e == 0 || e % p == 0 {
                return Err(Error::ExponentDivisibleByP(e));
            }
        }
        if params.windows(2).any(|w| w[0] <= w[1]) {
            return Err(Error::ParamOrder);
        }
        Ok(SumSpec { psi, monomials, decoration, params })
    }

    /// `ψ_scale(x^a + t·x^b)` over GF(p): the basic one-parameter family.
    pub fn binomial(p: u64, a: u64, b: u64) -> Result<Self> {
        let k = crate::gf::make_field(p, 1)?;
        Self::new(AddChar::new(&k, 1), vec![(Coeff::Int(1), a)], None, vec![b])
    }

    pub fn psi(&self) -> &AddChar {
        &self.psi
    }

    pub fn monomials(&self) -> &[(Coeff, u64)] {
        &self.monomials
    }

    pub fn decoration(&self) -> Option<&MultChar> {
        self.decoration.as_ref()
    }

    pub fn params(&self) -> &[u64] {
        &self.params
    }

    pub fn with_decoration(&self, rho: Option<MultChar>) -> Self {
        SumSpec { decoration: rho, ..self.clone() }
    }
}

/// An exact unnormalised trace value with its normalisation metadata.
#[derive(Clone, Debug, Serialize)]
pub struct RawTrace {
    pub value: CycInt,
    pub field: FieldSpec,
    pub clearing: ClearingFactor,
    /// True when `value` already includes the leading minus sign.
    pub leading_minus: bool,
}

impl RawTrace {
    pub fn abs_square(&self) -> CycInt {
        self.value.abs_square()
    }
}

/// Evaluates a [`SumSpec`] at one parameter point over `e`.
pub fn eval_family(spec: &SumSpec, e: &FieldSpec, params: &[FieldElem]) -> Result<RawTrace> {
    if params.len() != spec.params.len() {
        return Err(Error::ParamCount { expected: spec.params.len(), got: params.len() });
    }
    if e.p() != spec.psi.field().p() {
        return Err(Error::FieldMismatch(format!("{e} has the wrong characteristic")));
    }
    let s = spec.psi.scale();
    let mut terms = Vec::with_capacity(spec.monomials.len() + params.len());
    for (c, exp) in &spec.monomials {
        terms.push(Term { coeff: c.in_field(e)?, exp: *exp as u128, scale: s });
    }
    for (t, exp) in params.iter().zip(&spec.params) {
        terms.push(Term { coeff: t.embed(e)?.code(), exp: *exp as u128, scale: s });
    }
    let deco = match &spec.decoration {
        Some(rho) => Some(Deco { chi: rho.lift(e)?, power: 1, constant: 1 }),
        None => None,
    };
    let h = zsum(e, &terms, deco.as_ref())?;
    Ok(RawTrace {
        value: -h.to_cyc(),
        field: e.clone(),
        clearing: ClearingFactor::minus_gauss(e, s as i64),
        leading_minus: true,
    })
}

/// Outcome of checking an identity of trace functions at every parameter.
#[derive(Clone, Debug, Serialize)]
pub struct IdentityCheck {
    pub name: String,
    pub field: FieldSpec,
    pub checked: usize,
    /// Parameter codes at which the two sides differ.
    pub failures: Vec<u32>,
}

impl IdentityCheck {
    pub(crate) fn new(name: impl Into<String>, field: &FieldSpec) -> Self {
        IdentityCheck { name: name.into(), field: field.clone(), checked: 0, failures: Vec::new() }
    }

    pub(crate) fn record(&mut self, u: u32, ok: bool) {
        self.checked += 1;
        if !ok {
            self.failures.push(u);
        }
    }

    pub fn passed(&self) -> bool {
        self.checked > 0 && self.failures.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_field;
    use num_bigint::BigInt;

    #[test]
    fn x_squared_over_gf3() {
        let k = make_field(3, 1).unwrap();
        let spec = SumSpec::new(AddChar::new(&k, 1), vec![(Coeff::Int(1), 2)], None, vec![]).unwrap();
        let r = eval_family(&spec, &k, &[]).unwrap();
        let z = CycInt::zeta_pow(3, 1);
        assert_eq!(r.value, -(&CycInt::one(3) + &z.scale(2)));
        assert_eq!(r.abs_square().as_integer().unwrap(), BigInt::from(3));
    }

    #[test]
    fn validation() {
        let k = make_field(3, 1).unwrap();
        let psi = AddChar::new(&k, 1);
        assert!(matches!(
            SumSpec::new(psi.clone(), vec![(Coeff::Int(1), 6)], None, vec![]),
            Err(Error::ExponentDivisibleByP(6))
        ));
        assert!(matches!(SumSpec::new(psi.clone(), vec![], None, vec![2, 4]), Err(Error::ParamOrder)));
        let spec = SumSpec::binomial(3, 10, 4).unwrap();
        assert!(matches!(eval_family(&spec, &k, &[]), Err(Error::ParamCount { .. })));
    }

    #[test]
    fn empty_sum_is_minus_field_size() {
        let k = make_field(3, 1).unwrap();
        let e = make_field(3, 2).unwrap();
        let spec = SumSpec::new(AddChar::new(&k, 1), vec![], None, vec![]).unwrap();
        let r = eval_family(&spec, &e, &[]).unwrap();
        assert_eq!(r.value.as_integer().unwrap(), BigInt::from(-9));
        assert!(trace_membership(&r, Target::Q));
    }
}
