//! Additive and multiplicative characters, Gauss sums and Stickelberger values.

use num_bigint::BigInt;
use serde::Serialize;

use crate::arith;
use crate::cyclo::{ClearingFactor, ClearingKind, CycInt, Histogram};
use crate::error::{Error, Result};
use crate::gf::{FieldElem, FieldSpec};

/// ψ_a(x) = ζ_p^{a·Tr(x)} on a field and, through the absolute trace, on
/// every extension of it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AddChar {
    field: FieldSpec,
    scale: u64,
}

impl AddChar {
    pub fn new(field: &FieldSpec, scale: i64) -> Self {
        let p = field.p() as i64;
        AddChar { field: field.clone(), scale: scale.rem_euclid(p) as u64 }
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn scale(&self) -> u64 {
        self.scale
    }

    pub fn is_trivial(&self) -> bool {
        self.scale == 0
    }

    /// The exponent j with ψ(x) = ζ_p^j, for x in an extension of ψ's field.
    pub fn index(&self, x: &FieldElem) -> Result<u64> {
        check_ext(&self.field, x.field())?;
        Ok(self.scale * x.abs_trace() % self.field.p())
    }

    pub fn eval(&self, x: &FieldElem) -> Result<CycInt> {
        Ok(CycInt::zeta_pow(self.field.p(), self.index(x)? as i64))
    }
}

fn check_ext(base: &FieldSpec, e: &FieldSpec) -> Result<()> {
    if e.has_subfield(base) {
        Ok(())
    } else {
        Err(Error::FieldMismatch(format!("{base} is not a subfield of {e}")))
    }
}

/// χ_k(g^m) = ζ_{q-1}^{km} for the canonical generator g, with χ(0) = 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultChar {
    field: FieldSpec,
    exponent: u64,
}

impl MultChar {
    pub fn new(field: &FieldSpec, exponent: i64) -> Self {
        let n = (field.size() - 1) as i64;
        MultChar { field: field.clone(), exponent: exponent.rem_euclid(n) as u64 }
    }

    pub fn trivial(field: &FieldSpec) -> Self {
        Self::new(field, 0)
    }

    /// χ₂, the character of order 2 (odd characteristic only).
    pub fn quadratic(field: &FieldSpec) -> Result<Self> {
        if field.p() == 2 {
            return Err(Error::Hypothesis("no quadratic character in characteristic 2".into()));
        }
        Ok(Self::new(field, ((field.size() - 1) / 2) as i64))
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn order(&self) -> u64 {
        let n = self.field.size() - 1;
        n / arith::gcd(self.exponent, n)
    }

    pub fn is_trivial(&self) -> bool {
        self.exponent == 0
    }

    pub fn pow(&self, k: i64) -> Self {
        let n = (self.field.size() - 1) as i128;
        Self::new(&self.field, ((self.exponent as i128 * k as i128).rem_euclid(n)) as i64)
    }

    pub fn conj(&self) -> Self {
        self.pow(-1)
    }

    /// j with χ(x) = ζ_ord^j for x ≠ 0 (given by code in χ's field).
    pub fn index_code(&self, code: u32) -> Result<u64> {
        let n = self.field.size() - 1;
        let d = arith::gcd(self.exponent, n);
        let ord = n / d;
        let l = self.field.dlog_code(code)?;
        Ok(((self.exponent / d) as u128 * l as u128 % ord as u128) as u64)
    }

    pub fn eval(&self, x: &FieldElem) -> Result<CycInt> {
        if x.field() != &self.field {
            return Err(Error::FieldMismatch(format!("{} vs {}", x.field(), self.field)));
        }
        if x.is_zero() {
            return Ok(CycInt::zero(self.order()));
        }
        Ok(CycInt::zeta_pow(self.order(), self.index_code(x.code())? as i64))
    }

    /// χ ∘ Norm_{E/k} as a character of the extension E.
    pub fn lift(&self, ext: &FieldSpec) -> Result<Self> {
        if ext == &self.field {
            return Ok(self.clone());
        }
        check_ext(&self.field, ext)?;
        let s = ext.generator().rel_norm(&self.field)?.dlog()?;
        let big = ext.size() - 1;
        let ratio = big / (self.field.size() - 1);
        let e = (self.exponent as u128 * s as u128 % big as u128) * ratio as u128 % big as u128;
        Ok(Self::new(ext, e as i64))
    }

    /// All characters χ with χ^d = 1 (requires d | q-1), trivial first.
    pub fn dividing(field: &FieldSpec, d: u64) -> Result<Vec<Self>> {
        let n = field.size() - 1;
        if !n.is_multiple_of(d) {
            return Err(Error::Hypothesis(format!("μ_{d} is not contained in {field}")));
        }
        Ok((0..d).map(|j| Self::new(field, (j * (n / d)) as i64)).collect())
    }

    /// All characters of exact order r.
    pub fn of_order(field: &FieldSpec, r: u64) -> Result<Vec<Self>> {
        Ok(Self::dividing(field, r)?.into_iter().filter(|c| c.order() == r).collect())
    }
}

/// G(ψ, χ) = Σ_{x ≠ 0} ψ(x) χ(x), computed directly over χ's field.
pub fn gauss_sum(psi: &AddChar, chi: &MultChar) -> Result<CycInt> {
    let e = chi.field();
    check_ext(psi.field(), e)?;
    let p = e.p();
    let ord = chi.order();
    let m = arith::lcm(p, ord);
    let (sp, so) = (m / p, m / ord);
    let mut h = Histogram::new(m);
    for c in 1..e.size() as u32 {
        let a = psi.scale() * e.abs_trace_code(c) % p;
        let b = chi.index_code(c)?;
        h.add(a * sp + b * so, 1);
    }
    Ok(h.to_cyc())
}

/// (−1)^{(q+1)/r} q.
pub fn stickelberger_value(q: u64, r: u64) -> Result<i64> {
    check_stickelberger(q, r)?;
    let sign = if ((q + 1) / r).is_multiple_of(2) { 1 } else { -1 };
    Ok(sign * q as i64)
}

fn check_stickelberger(q: u64, r: u64) -> Result<(u64, u32)> {
    let fac = arith::factorize(q);
    if fac.len() != 1 || fac[0].0 == 2 {
        return Err(Error::Hypothesis(format!("{q} is not an odd prime power")));
    }
    if r <= 1 || !(q + 1).is_multiple_of(r) {
        return Err(Error::Hypothesis(format!("{r} does not divide q+1 = {}", q + 1)));
    }
    Ok(fac[0])
}

#[derive(Clone, Debug, Serialize)]
pub struct StickelbergerWitness {
    pub scale: u64,
    pub exponent: u64,
    pub value: CycInt,
}

#[derive(Clone, Debug, Serialize)]
pub struct StickelbergerReport {
    pub q: u64,
    pub r: u64,
    pub expected: i64,
    pub field: FieldSpec,
    pub checked: usize,
    /// Character pairs whose Gauss sum differs from the prediction.
    pub failures: Vec<StickelbergerWitness>,
}

impl StickelbergerReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.checked > 0
    }
}

/// Checks G(ψ_a, χ) over GF(q²) for every nontrivial scale a and every χ of
/// exact order r.
pub fn stickelberger_check(q: u64, r: u64) -> Result<StickelbergerReport> {
    let (p, f) = check_stickelberger(q, r)?;
    let expected = stickelberger_value(q, r)?;
    let e = crate::gf::make_field(p, 2 * f)?;
    let want = CycInt::from_int(1, expected);
    let mut failures = Vec::new();
    let mut checked = 0;
    for chi in MultChar::of_order(&e, r)? {
        for a in 1..p {
            let g = gauss_sum(&AddChar::new(&e, a as i64), &chi)?;
            checked += 1;
            if g.checked_sub(&want)?.is_zero() {
                continue;
            }
            failures.push(StickelbergerWitness { scale: a, exponent: chi.exponent(), value: g });
        }
    }
    Ok(StickelbergerReport { q, r, expected, field: e, checked, failures })
}

impl ClearingFactor {
    pub fn minus_gauss(field: &FieldSpec, scale: i64) -> Self {
        let a = scale.rem_euclid(field.p() as i64) as u64;
        ClearingFactor { kind: ClearingKind::MinusGauss { scale: a }, field: field.clone() }
    }

    pub fn gauss(field: &FieldSpec, scale: i64) -> Self {
        let a = scale.rem_euclid(field.p() as i64) as u64;
        ClearingFactor { kind: ClearingKind::Gauss { scale: a }, field: field.clone() }
    }

    pub fn rational_power(field: &FieldSpec, base: i64, exponent: u32) -> Self {
        ClearingFactor { kind: ClearingKind::RationalPower { base, exponent }, field: field.clone() }
    }

    /// The exact clearing element.
    pub fn value(&self) -> Result<CycInt> {
        let quad = || MultChar::quadratic(&self.field);
        Ok(match &self.kind {
            ClearingKind::None => CycInt::one(1),
            ClearingKind::Gauss { scale } => gauss_sum(&AddChar::new(&self.field, *scale as i64), &quad()?)?,
            ClearingKind::MinusGauss { scale } => -gauss_sum(&AddChar::new(&self.field, *scale as i64), &quad()?)?,
            ClearingKind::RationalPower { base, exponent } => CycInt::from_int(1, BigInt::from(*base).pow(*exponent)),
        })
    }
}
