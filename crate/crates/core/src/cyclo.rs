//! Exact arithmetic in Z[ζ_M], canonical modulo the cyclotomic polynomial Φ_M.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith;
use crate::error::{Error, Result};
use crate::gf::FieldSpec;

/// Φ_M by recursive exact division `(x^M - 1) / Π_{d | M, d < M} Φ_d`.
pub fn cyclotomic_poly(m: u64) -> Vec<BigInt> {
    phi_cached(m).iter().map(|&c| BigInt::from(c)).collect()
}

fn phi_cached(m: u64) -> Arc<Vec<i64>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<Vec<i64>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = cache.lock().unwrap().get(&m) {
        return v.clone();
    }
    let mut num = vec![0i64; m as usize + 1];
    num[0] = -1;
    num[m as usize] = 1;
    for d in arith::divisors(m) {
        if d < m {
            num = exact_div(&num, &phi_cached(d));
        }
    }
    let v = Arc::new(num);
    cache.lock().unwrap().insert(m, v.clone());
    v
}

fn exact_div(a: &[i64], b: &[i64]) -> Vec<i64> {
    let db = b.len() - 1;
    let mut r = a.to_vec();
    let mut q = vec![0i64; a.len() - db];
    for i in (0..q.len()).rev() {
        let c = r[i + db];
        q[i] = c;
        for j in 0..=db {
            r[i + j] -= c * b[j];
        }
    }
    debug_assert!(r.iter().all(|&x| x == 0));
    q
}

/// An element of Z[ζ_M], always stored in canonical reduced form.
///
/// Equality compares values: elements of Z[ζ_M] and Z[ζ_N] are equal when
/// they agree after lifting to the larger order.
#[derive(Clone)]
pub struct CycInt {
    m: u64,
    coeffs: Vec<BigInt>,
}

impl PartialEq for CycInt {
    fn eq(&self, o: &Self) -> bool {
        if self.m == o.m {
            return self.coeffs == o.coeffs;
        }
        match self.common(o) {
            Ok((a, b)) => a.coeffs == b.coeffs,
            Err(_) => false,
        }
    }
}

impl Eq for CycInt {}

impl CycInt {
    pub fn zero(m: u64) -> Self {
        Self::from_int(m, 0)
    }

    pub fn one(m: u64) -> Self {
        Self::from_int(m, 1)
    }

    pub fn from_int(m: u64, n: impl Into<BigInt>) -> Self {
        assert!(m >= 1, "root-of-unity order must be positive");
        let mut coeffs = vec![BigInt::zero(); arith::totient(m) as usize];
        coeffs[0] = n.into();
        CycInt { m, coeffs }
    }

    /// ζ_M^j.
    pub fn zeta_pow(m: u64, j: i64) -> Self {
        let mut h = vec![0i64; m as usize];
        h[j.rem_euclid(m as i64) as usize] = 1;
        Self::from_histogram(m, &h)
    }

    /// Σ_j counts[j] ζ_M^j for a raw exponent histogram (indices taken mod M).
    pub fn from_histogram(m: u64, counts: &[i64]) -> Self {
        let mut folded = vec![0i128; m as usize];
        for (j, &c) in counts.iter().enumerate() {
            folded[j % m as usize] += c as i128;
        }
        match reduce_small(m, folded) {
            Some(coeffs) => CycInt { m, coeffs },
            None => {
                let mut big = vec![BigInt::zero(); m as usize];
                for (j, &c) in counts.iter().enumerate() {
                    big[j % m as usize] += c;
                }
                Self::from_raw(m, big)
            }
        }
    }

    /// Σ_j raw[j] ζ_M^j for arbitrary-length coefficient vectors.
    pub fn from_raw(m: u64, raw: Vec<BigInt>) -> Self {
        let mut v = vec![BigInt::zero(); m as usize];
        for (j, c) in raw.into_iter().enumerate() {
            v[j % m as usize] += c;
        }
        CycInt { m, coeffs: reduce_big(m, v) }
    }

    pub fn order(&self) -> u64 {
        self.m
    }

    /// Canonical coefficients, length φ(M).
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// The value as a rational integer, or the offending coefficients.
    pub fn as_integer(&self) -> Result<BigInt> {
        let bad: Vec<(usize, String)> = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i, c.to_string()))
            .collect();
        if bad.is_empty() {
            Ok(self.coeffs[0].clone())
        } else {
            Err(Error::NotRational(bad))
        }
    }

    /// Re-expresses the element in Z[ζ_N] for a multiple N of M.
    pub fn lift(&self, n: u64) -> Result<Self> {
        if !n.is_multiple_of(self.m) {
            return Err(Error::IncompatibleOrders(self.m, n));
        }
        if n == self.m {
            return Ok(self.clone());
        }
        let k = (n / self.m) as usize;
        let mut v = vec![BigInt::zero(); n as usize];
        for (j, c) in self.coeffs.iter().enumerate() {
            v[j * k] = c.clone();
        }
        Ok(CycInt { m: n, coeffs: reduce_big(n, v) })
    }

    fn common(&self, o: &Self) -> Result<(Self, Self)> {
        if self.m == o.m {
            return Ok((self.clone(), o.clone()));
        }
        if o.m.is_multiple_of(self.m) || self.is_rational() {
            return Ok((self.lift_or_embed(o.m), o.clone()));
        }
        if self.m.is_multiple_of(o.m) || o.is_rational() {
            return Ok((self.clone(), o.lift_or_embed(self.m)));
        }
        Err(Error::IncompatibleOrders(self.m, o.m))
    }

    fn lift_or_embed(&self, n: u64) -> Self {
        if self.is_rational() {
            Self::from_int(n, self.coeffs[0].clone())
        } else {
            self.lift(n).expect("divisibility checked")
        }
    }

    pub fn checked_add(&self, o: &Self) -> Result<Self> {
        let (a, b) = self.common(o)?;
        let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect();
        Ok(CycInt { m: a.m, coeffs })
    }

    pub fn checked_sub(&self, o: &Self) -> Result<Self> {
        self.checked_add(&-o)
    }

    pub fn checked_mul(&self, o: &Self) -> Result<Self> {
        let (a, b) = self.common(o)?;
        let m = a.m as usize;
        let mut v = vec![BigInt::zero(); m];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    v[(i + j) % m] += x * y;
                }
            }
        }
        Ok(CycInt { m: a.m, coeffs: reduce_big(a.m, v) })
    }

    pub fn scale(&self, k: impl Into<BigInt>) -> Self {
        let k = k.into();
        CycInt { m: self.m, coeffs: self.coeffs.iter().map(|c| c * &k).collect() }
    }

    /// The automorphism ζ_M ↦ ζ_M^c.
    pub fn galois(&self, c: i64) -> Result<Self> {
        let m = self.m as i64;
        if arith::gcd(c.rem_euclid(m) as u64, self.m) != 1 {
            return Err(Error::NotUnit { c, m: self.m });
        }
        let mut v = vec![BigInt::zero(); self.m as usize];
        for (j, x) in self.coeffs.iter().enumerate() {
            if !x.is_zero() {
                v[((j as i64 * c).rem_euclid(m)) as usize] += x;
            }
        }
        Ok(CycInt { m: self.m, coeffs: reduce_big(self.m, v) })
    }

    /// Complex conjugation, i.e. `galois(-1)`.
    pub fn conj(&self) -> Self {
        self.galois(-1).expect("-1 is a unit")
    }

    pub fn abs_square(&self) -> Self {
        self * &self.conj()
    }

    /// Floating-point value in C, for display only.
    pub fn approx(&self) -> (f64, f64) {
        let m = self.m as f64;
        self.coeffs.iter().enumerate().fold((0.0, 0.0), |(re, im), (j, c)| {
            let c = c.to_f64().unwrap_or(f64::NAN);
            let t = std::f64::consts::TAU * j as f64 / m;
            (re + c * t.cos(), im + c * t.sin())
        })
    }
}

/// Long division by Φ_M on machine integers; `None` on overflow.
fn reduce_small(m: u64, mut v: Vec<i128>) -> Option<Vec<BigInt>> {
    let phi = phi_cached(m);
    let d = phi.len() - 1;
    for i in (d..v.len()).rev() {
        let c = v[i];
        if c == 0 {
            continue;
        }
        for (j, &pj) in phi.iter().enumerate() {
            if pj != 0 {
                let t = c.checked_mul(pj as i128)?;
                v[i - d + j] = v[i - d + j].checked_sub(t)?;
            }
        }
    }
    v.truncate(d);
    Some(v.into_iter().map(BigInt::from).collect())
}

fn reduce_big(m: u64, mut v: Vec<BigInt>) -> Vec<BigInt> {
    let phi = phi_cached(m);
    let d = phi.len() - 1;
    if v.len() < d {
        v.resize(d, BigInt::zero());
    }
    for i in (d..v.len()).rev() {
        if v[i].is_zero() {
            continue;
        }
        let c = std::mem::take(&mut v[i]);
        for (j, &pj) in phi.iter().enumerate().take(d) {
            if pj != 0 {
                v[i - d + j] -= &c * pj;
            }
        }
    }
    v.truncate(d);
    v
}

impl fmt::Debug for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            let body = match (j, mag.is_one()) {
                (0, _) => mag.to_string(),
                (_, true) => format!("z{}^{}", self.m, j),
                (_, false) => format!("{}*z{}^{}", mag, self.m, j),
            };
            terms.push((sign, body));
        }
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (s, b)) in terms.iter().enumerate() {
            match (i, *s) {
                (0, "+") => write!(f, "{b}")?,
                (0, _) => write!(f, "-{b}")?,
                _ => write!(f, " {s} {b}")?,
            }
        }
        Ok(())
    }
}

macro_rules! op {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl std::ops::$tr<&CycInt> for &CycInt {
            type Output = CycInt;
            /// Panics when the orders are incompatible; see the `checked_` variant.
            fn $m(self, o: &CycInt) -> CycInt {
                self.$checked(o).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl std::ops::$tr<CycInt> for CycInt {
            type Output = CycInt;
            fn $m(self, o: CycInt) -> CycInt {
                (&self).$m(&o)
            }
        }
    };
}

op!(Add, add, checked_add);
op!(Sub, sub, checked_sub);
op!(Mul, mul, checked_mul);

impl std::ops::Neg for &CycInt {
    type Output = CycInt;
    fn neg(self) -> CycInt {
        CycInt { m: self.m, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl std::ops::Neg for CycInt {
    type Output = CycInt;
    fn neg(self) -> CycInt {
        -&self
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum Coef {
    Small(i64),
    Big(String),
}

#[derive(Serialize, Deserialize)]
struct CycModel {
    #[serde(rename = "M")]
    m: u64,
    coeffs: Vec<Coef>,
}

impl Serialize for CycInt {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut coeffs: Vec<Coef> = self
            .coeffs
            .iter()
            .map(|c| c.to_i64().map(Coef::Small).unwrap_or_else(|| Coef::Big(c.to_string())))
            .collect();
        coeffs.resize_with(self.m as usize, || Coef::Small(0));
        CycModel { m: self.m, coeffs }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for CycInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let model = CycModel::deserialize(d)?;
        if model.m == 0 {
            return Err(serde::de::Error::custom("M must be positive"));
        }
        let raw = model
            .coeffs
            .into_iter()
            .map(|c| match c {
                Coef::Small(v) => Ok(BigInt::from(v)),
                Coef::Big(s) => s.parse::<BigInt>().map_err(serde::de::Error::custom),
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(CycInt::from_raw(model.m, raw))
    }
}

/// Raw exponent counts for Σ ζ_M^j, converted to a [`CycInt`] once at the end.
#[derive(Clone, Debug)]
pub struct Histogram {
    m: u64,
    counts: Vec<i64>,
}

impl Histogram {
    pub fn new(m: u64) -> Self {
        Histogram { m, counts: vec![0; m as usize] }
    }

    pub fn order(&self) -> u64 {
        self.m
    }

    #[inline]
    pub fn add(&mut self, j: u64, times: i64) {
        self.counts[(j % self.m) as usize] += times;
    }

    pub fn merge(mut self, o: Histogram) -> Histogram {
        for (a, b) in self.counts.iter_mut().zip(o.counts) {
            *a += b;
        }
        self
    }

    pub fn to_cyc(&self) -> CycInt {
        CycInt::from_histogram(self.m, &self.counts)
    }
}

/// How a raw trace is normalised; never divided out, only carried along.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ClearingKind {
    None,
    /// `-G(ψ_a, χ₂)` over the clearing field.
    MinusGauss {
        scale: u64,
    },
    /// `G(ψ_a, χ₂)` over the clearing field.
    Gauss {
        scale: u64,
    },
    /// `base^exponent`, a rational integer.
    RationalPower {
        base: i64,
        exponent: u32,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClearingFactor {
    #[serde(flatten)]
    pub kind: ClearingKind,
    pub field: FieldSpec,
}

impl ClearingFactor {
    pub fn none(field: &FieldSpec) -> Self {
        ClearingFactor { kind: ClearingKind::None, field: field.clone() }
    }

    /// |clearing|² as an integer.
    pub fn abs_square(&self) -> BigInt {
        match &self.kind {
            ClearingKind::None => BigInt::one(),
            ClearingKind::MinusGauss { .. } | ClearingKind::Gauss { .. } => BigInt::from(self.field.size()),
            ClearingKind::RationalPower { base, exponent } => BigInt::from(*base).pow(2 * exponent),
        }
    }
}

/// Units `c` mod M with `c ≡ 1 mod M/p^v` and `c mod p^v` running over `residues`.
pub fn units_acting_on_p_part(m: u64, p: u64, residues: &[u64]) -> Vec<i64> {
    let mut pv = 1;
    while m.is_multiple_of(pv * p) {
        pv *= p;
    }
    let rest = m / pv;
    residues
        .iter()
        .filter(|&&r| arith::gcd(r, pv) == 1)
        .map(|&r| {
            // CRT: c ≡ 1 mod rest, c ≡ r mod pv.
            let (_, x, _) = arith::egcd(rest as i128, pv as i128);
            let t = ((r as i128 - 1) * x).rem_euclid(pv.max(1) as i128);
            ((1 + rest as i128 * t).rem_euclid(m as i128)) as i64
        })
        .collect()
}

impl CycInt {
    /// True when every listed automorphism fixes the value.
    pub fn fixed_by(&self, units: &[i64]) -> bool {
        units.iter().all(|&c| self.galois(c).map(|g| &g == self).unwrap_or(false))
    }

    /// Integer gcd of the canonical coefficients.
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(m: u64, j: i64) -> CycInt {
        CycInt::zeta_pow(m, j)
    }

    #[test]
    fn cyclotomic_polys() {
        let v = |m| cyclotomic_poly(m).iter().map(|c| c.to_i64().unwrap()).collect::<Vec<_>>();
        assert_eq!(v(1), vec![-1, 1]);
        assert_eq!(v(3), vec![1, 1, 1]);
        assert_eq!(v(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(v(105).len(), 49);
        assert!(v(105).contains(&-2));
    }

    #[test]
    fn ring_examples() {
        assert_eq!(&z(3, 1) + &z(3, 2), CycInt::from_int(3, -1));
        assert_eq!(&z(4, 1) * &z(4, 1), CycInt::from_int(4, -1));
        let a = &CycInt::one(3) + &z(3, 1).scale(2);
        let b = &CycInt::one(3) + &z(3, 2).scale(2);
        assert_eq!(&a * &b, CycInt::from_int(3, 3));
        assert!(a.as_integer().is_err());
    }

    #[test]
    fn conj_and_galois() {
        assert_eq!(z(3, 1).conj(), &CycInt::from_int(3, -1) - &z(3, 1));
        let s = &z(5, 1) + &z(5, 4);
        assert_eq!(s.galois(2).unwrap(), &z(5, 2) + &z(5, 3));
        assert_eq!(CycInt::from_int(12, 7).galois(5).unwrap(), CycInt::from_int(12, 7));
        assert!(s.galois(5).is_err());
    }

    #[test]
    fn abs_squares() {
        let d = &z(3, 1) - &z(3, 2);
        assert_eq!(d.abs_square().as_integer().unwrap(), BigInt::from(3));
        assert!(CycInt::zero(7).abs_square().is_zero());
    }

    #[test]
    fn mixed_orders() {
        let s = &z(3, 1) + &z(6, 1);
        assert_eq!(s.order(), 6);
        assert_eq!(s, &z(6, 2) + &z(6, 1));
        assert!(z(3, 1).checked_add(&z(4, 1)).is_err());
        assert_eq!(&z(3, 1) + &CycInt::from_int(4, 2), &z(3, 1) + &CycInt::from_int(3, 2));
    }

    #[test]
    fn json_shape() {
        let v = &z(3, 1).scale(2) + &CycInt::one(3);
        let s = serde_json::to_string(&v).unwrap();
        assert_eq!(s, r#"{"M":3,"coeffs":[1,2,0]}"#);
        let back: CycInt = serde_json::from_str(&s).unwrap();
        assert_eq!(back, v);
    }

    #[test]
    fn crt_units() {
        let us = units_acting_on_p_part(15, 5, &[1, 2, 3, 4]);
        for (&c, r) in us.iter().zip([1, 2, 3, 4]) {
            assert_eq!(c % 3, 1);
            assert_eq!(c % 5, r);
        }
        assert_eq!(units_acting_on_p_part(3, 3, &[1, 2]), vec![1, 2]);
    }
}
