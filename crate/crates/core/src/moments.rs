//! Second moments of one-parameter families: the gcd formula, its empirical
//! counterpart over a tower of fields, and the χ-decomposition behind it.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use rayon::prelude::*;
use serde::Serialize;

use crate::arith;
use crate::charsum::MultChar;
use crate::cyclo::CycInt;
use crate::error::{Error, Result};
use crate::gf::{FieldElem, FieldSpec};
use crate::tracefn::{eval_family, Coeff, IdentityCheck, SumSpec};

/// An Artin–Schreier reduced polynomial: degrees prime to p, strictly
/// decreasing, nonzero coefficients, no constant term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AsPoly {
    monomials: Vec<(FieldElem, u64)>,
}

impl AsPoly {
    pub fn monomials(&self) -> &[(FieldElem, u64)] {
        &self.monomials
    }

    /// gcd of the degrees (0 for the zero polynomial).
    pub fn gcd_deg(&self) -> u64 {
        self.monomials.iter().fold(0, |g, (_, d)| arith::gcd(g, *d))
    }

    pub fn to_coeffs(&self) -> Vec<(Coeff, u64)> {
        self.monomials.iter().map(|(a, d)| (Coeff::Elem(a.clone()), *d)).collect()
    }
}

/// Rewrites `a·x^{pd}` as `a^{p^{f−1}}·x^d` until every degree is prime to p,
/// merging equal degrees. Preserves `Σ_x ψ_E(f(x))` for every extension E of
/// the coefficient field.
pub fn as_reduce(field: &FieldSpec, monomials: &[(FieldElem, u64)]) -> Result<AsPoly> {
    let p = field.p();
    let root = (p as u128).pow(field.f() - 1);
    let mut acc: Vec<(FieldElem, u64)> = Vec::new();
    for (a, d) in monomials {
        let mut a = a.embed(field)?;
        let mut d = *d;
        if a.is_zero() {
            continue;
        }
        if d == 0 {
            return Err(Error::ConstantTerm);
        }
        while d % p == 0 {
            a = a.pow(root);
            d /= p;
        }
        match acc.iter_mut().find(|(_, e)| *e == d) {
            Some(slot) => slot.0 = &slot.0 + &a,
            None => acc.push((a, d)),
        }
    }
    acc.retain(|(a, _)| !a.is_zero());
    acc.sort_by_key(|x| std::cmp::Reverse(x.1));
    Ok(AsPoly { monomials: acc })
}

/// The predicted second moment: gcd of every monomial degree and parameter exponent.
pub fn exact_m2(spec: &SumSpec) -> u64 {
    spec.monomials().iter().map(|(_, d)| *d).chain(spec.params().iter().copied()).fold(0, arith::gcd)
}

#[derive(Clone, Debug, Serialize)]
pub struct MomentReport {
    pub field_sizes: Vec<u64>,
    /// `Σ_t |S(t)|² / #E²` per field, exact.
    #[serde(serialize_with = "ser_rats")]
    pub empirical: Vec<BigRational>,
    pub predicted: u64,
}

fn ser_rats<S: serde::Serializer>(v: &[BigRational], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for r in v {
        seq.serialize_element(&(r.numer().to_string(), r.denom().to_string()))?;
    }
    seq.end()
}

impl MomentReport {
    /// |empirical − predicted| at each level.
    pub fn deviations(&self) -> Vec<BigRational> {
        let pred = BigRational::from_integer(BigInt::from(self.predicted));
        self.empirical.iter().map(|e| (e - &pred).abs()).collect()
    }

    /// True when the last level is within `tol` of the prediction.
    pub fn top_within(&self, tol: &BigRational) -> bool {
        self.deviations().last().is_some_and(|d| d <= tol)
    }
}

/// Σ_{t ∈ E^×} |S(t)|² / #E² over each field of the tower (`affine` adds t = 0).
pub fn empirical_m2(spec: &SumSpec, tower: &[FieldSpec], affine: bool) -> Result<MomentReport> {
    if spec.params().len() != 1 {
        return Err(Error::ParamCount { expected: 1, got: spec.params().len() });
    }
    let mut empirical = Vec::with_capacity(tower.len());
    for e in tower {
        let ts: Vec<FieldElem> = if affine { e.enumerate() } else { e.units() };
        let total = ts
            .par_iter()
            .map(|t| eval_family(spec, e, std::slice::from_ref(t)).map(|r| r.abs_square()))
            .try_reduce(|| CycInt::zero(e.p()), |a, b| a.checked_add(&b))?;
        let num = total.as_integer()?;
        let den = BigInt::from(e.size()) * BigInt::from(e.size());
        empirical.push(BigRational::new(num, den));
    }
    Ok(MomentReport { field_sizes: tower.iter().map(FieldSpec::size).collect(), empirical, predicted: exact_m2(spec) })
}

/// Checks `S(t) = Σ_{χ ∈ char(D)} S'_χ(t)` at every `t ∈ E^×`, where `D` is the
/// predicted moment and `S'` is the family with every exponent divided by `D`
/// (decorated by χ, the trivial χ left undecorated).
pub fn decomposition_check(spec: &SumSpec, e: &FieldSpec) -> Result<IdentityCheck> {
    if spec.decoration().is_some() {
        return Err(Error::Hypothesis("decomposition is defined for undecorated families".into()));
    }
    let d = exact_m2(spec);
    let chars = MultChar::dividing(e, d)?;
    let reduced = SumSpec::new(
        spec.psi().clone(),
        spec.monomials().iter().map(|(c, k)| (c.clone(), k / d)).collect(),
        None,
        spec.params().iter().map(|k| k / d).collect(),
    )?;
    let mut check = IdentityCheck::new(format!("χ-decomposition D={d}"), e);
    let m = arith::lcm(e.p(), d);
    let results: Vec<(u32, bool)> = e
        .units()
        .par_iter()
        .map(|t| {
            let t = std::slice::from_ref(t);
            let lhs = eval_family(spec, e, t)?.value;
            let mut rhs = CycInt::zero(m);
            for (i, chi) in chars.iter().enumerate() {
                let deco = if i == 0 { None } else { Some(chi.clone()) };
                let v = eval_family(&reduced.with_decoration(deco), e, t)?.value;
                rhs = rhs.checked_add(&v.lift(m)?)?;
            }
            Ok((t[0].code(), lhs == rhs))
        })
        .collect::<Result<_>>()?;
    for (u, ok) in results {
        check.record(u, ok);
    }
    Ok(check)
}

/// `Σ_x ψ_E(f(x))` for an AS polynomial, used to test that reduction preserves sums.
pub fn poly_sum(psi: &crate::charsum::AddChar, f: &[(Coeff, u64)], e: &FieldSpec) -> Result<CycInt> {
    let p = e.p();
    let mut h = crate::cyclo::Histogram::new(p);
    let coeffs: Vec<u32> = f
        .iter()
        .map(|(c, _)| match c {
            Coeff::Int(n) => Ok(e.from_int(*n).code()),
            Coeff::Elem(x) => Ok(x.embed(e)?.code()),
        })
        .collect::<Result<_>>()?;
    for x in 0..e.size() as u32 {
        let mut y = 0;
        for (c, (_, d)) in coeffs.iter().zip(f) {
            y = e.add_codes(y, e.mul_codes(*c, e.pow_code(x, *d as u128)));
        }
        h.add(psi.scale() * e.abs_trace_code(y) % p, 1);
    }
    Ok(h.to_cyc())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charsum::AddChar;
    use crate::gf::make_field;

    #[test]
    fn reduction_examples() {
        let k = make_field(3, 1).unwrap();
        let r = as_reduce(&k, &[(k.one(), 5)]).unwrap();
        assert_eq!(r.monomials(), &[(k.one(), 5)]);
        let r = as_reduce(&k, &[(k.one(), 3)]).unwrap();
        assert_eq!(r.monomials(), &[(k.one(), 1)]);
        let r = as_reduce(&k, &[(k.from_int(2), 6), (k.one(), 5)]).unwrap();
        assert_eq!(r.monomials(), &[(k.one(), 5), (k.from_int(2), 2)]);
        assert!(as_reduce(&k, &[(k.one(), 0)]).is_err());
        let psi = AddChar::new(&k, 1);
        let raw = [(Coeff::Int(2), 6), (Coeff::Int(1), 5)];
        for f in 1..=2 {
            let e = make_field(3, f).unwrap();
            assert_eq!(poly_sum(&psi, &raw, &e).unwrap(), poly_sum(&psi, &r.to_coeffs(), &e).unwrap());
        }
    }

    #[test]
    fn gcd_formula() {
        assert_eq!(exact_m2(&SumSpec::binomial(3, 10, 4).unwrap()), 2);
        assert_eq!(exact_m2(&SumSpec::binomial(3, 28, 4).unwrap()), 4);
        assert_eq!(exact_m2(&SumSpec::binomial(3, 5, 2).unwrap()), 1);
    }

    #[test]
    fn decomposition_over_gf9() {
        let e = make_field(3, 2).unwrap();
        for (a, b) in [(10, 4), (28, 4), (5, 2)] {
            let c = decomposition_check(&SumSpec::binomial(3, a, b).unwrap(), &e).unwrap();
            assert!(c.passed(), "{a},{b}");
        }
    }

    #[test]
    fn moments_small_tower() {
        let tower = [make_field(3, 2).unwrap(), make_field(3, 4).unwrap()];
        let r = empirical_m2(&SumSpec::binomial(3, 10, 4).unwrap(), &tower, false).unwrap();
        assert_eq!(r.predicted, 2);
        assert_eq!(r.empirical.len(), 2);
    }
}
