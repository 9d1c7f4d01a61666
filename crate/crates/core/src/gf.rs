//! Prime fields and their extensions GF(p^f).
//!
//! Elements are encoded as integers `c = Σ c_i p^i` where `c_i` is the
//! coefficient of `x^i` in the reduced polynomial representative. The
//! enumeration order of a field is increasing code order, and the canonical
//! modulus and generator are the first valid candidates in that order.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith;
use crate::error::{Error, Result};

const SIZE_CAP: u64 = 1 << 31;
const TABLE_CAP: u64 = 1 << 24;

/// Discrete-log data for one field, relative to its canonical generator.
#[derive(Debug)]
pub struct DlogTable {
    pub generator: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl DlogTable {
    /// Number of stored logarithms, i.e. `q - 1`.
    pub fn len(&self) -> usize {
        self.exp.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exp.is_empty()
    }
}

struct Inner {
    p: u64,
    f: u32,
    q: u64,
    modulus: Vec<u64>,
    dlog: OnceLock<Option<DlogTable>>,
    trace: OnceLock<Vec<u64>>,
    embeddings: Mutex<HashMap<Vec<u64>, Arc<Embedding>>>,
}

/// A concrete model of GF(p^f): characteristic, degree and modulus.
///
/// Cloning is cheap; lookup tables are built lazily and shared.
#[derive(Clone)]
pub struct FieldSpec(Arc<Inner>);

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.p == other.0.p && self.0.modulus == other.0.modulus)
    }
}

impl Eq for FieldSpec {}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{}) mod {:?}", self.0.p, self.0.f, self.0.modulus)
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.0.p, self.0.f)
    }
}

#[derive(Serialize, Deserialize)]
struct FieldModel {
    p: u64,
    f: u32,
    modulus: Vec<u64>,
}

impl Serialize for FieldSpec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        FieldModel { p: self.p(), f: self.f(), modulus: self.modulus().to_vec() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for FieldSpec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let m = FieldModel::deserialize(d)?;
        let spec = FieldSpec::with_modulus(m.p, m.modulus).map_err(serde::de::Error::custom)?;
        if spec.f() != m.f {
            return Err(serde::de::Error::custom("degree does not match modulus"));
        }
        Ok(spec)
    }
}

/// Builds GF(p^f) with the smallest monic irreducible modulus in code order.
pub fn make_field(p: u64, f: u32) -> Result<FieldSpec> {
    check_size(p, f)?;
    if f == 1 {
        return Ok(FieldSpec::from_parts(p, vec![0, 1]));
    }
    let count = p.pow(f);
    for c in 0..count {
        let mut m = digits_of(c, p, f);
        if m[0] == 0 {
            continue;
        }
        m.push(1);
        if poly::is_irreducible(&m, p) {
            return Ok(FieldSpec::from_parts(p, m));
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

fn check_size(p: u64, f: u32) -> Result<()> {
    if !arith::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if f == 0 {
        return Err(Error::FieldTooLarge { p, f });
    }
    match p.checked_pow(f) {
        Some(q) if q <= SIZE_CAP => Ok(()),
        _ => Err(Error::FieldTooLarge { p, f }),
    }
}

fn digits_of(mut c: u64, p: u64, f: u32) -> Vec<u64> {
    (0..f)
        .map(|_| {
            let d = c % p;
            c /= p;
            d
        })
        .collect()
}

impl FieldSpec {
    fn from_parts(p: u64, modulus: Vec<u64>) -> Self {
        let f = (modulus.len() - 1) as u32;
        FieldSpec(Arc::new(Inner {
            p,
            f,
            q: p.pow(f),
            modulus,
            dlog: OnceLock::new(),
            trace: OnceLock::new(),
            embeddings: Mutex::new(HashMap::new()),
        }))
    }

    /// A field model with an explicitly chosen modulus (constant term first).
    pub fn with_modulus(p: u64, modulus: Vec<u64>) -> Result<Self> {
        if modulus.len() < 2 || *modulus.last().unwrap() != 1 || modulus.iter().any(|&c| c >= p) {
            return Err(Error::BadModulus(modulus));
        }
        check_size(p, (modulus.len() - 1) as u32)?;
        if !poly::is_irreducible(&modulus, p) {
            return Err(Error::BadModulus(modulus));
        }
        Ok(Self::from_parts(p, modulus))
    }

    pub fn p(&self) -> u64 {
        self.0.p
    }

    pub fn f(&self) -> u32 {
        self.0.f
    }

    /// Number of elements.
    pub fn size(&self) -> u64 {
        self.0.q
    }

    pub fn modulus(&self) -> &[u64] {
        &self.0.modulus
    }

    pub fn zero(&self) -> FieldElem {
        self.elem(0)
    }

    pub fn one(&self) -> FieldElem {
        self.elem(1)
    }

    /// Element with the given code. Panics when the code is out of range.
    pub fn elem(&self, code: u32) -> FieldElem {
        assert!((code as u64) < self.0.q, "code {code} out of range for {self}");
        FieldElem { field: self.clone(), code }
    }

    /// Element from coefficients, constant term first; reduced mod p.
    pub fn from_coeffs(&self, coeffs: &[u64]) -> Result<FieldElem> {
        if coeffs.len() > self.0.f as usize {
            return Err(Error::Dimension(format!("{} coefficients for {}", coeffs.len(), self)));
        }
        Ok(self.elem(self.encode(&coeffs.iter().map(|c| c % self.0.p).collect::<Vec<_>>())))
    }

    /// Image of an integer under Z -> GF(p).
    pub fn from_int(&self, n: i64) -> FieldElem {
        self.elem(n.rem_euclid(self.0.p as i64) as u32)
    }

    /// All elements in canonical (code) order.
    pub fn enumerate(&self) -> Vec<FieldElem> {
        (0..self.0.q as u32).map(|c| self.elem(c)).collect()
    }

    /// Nonzero elements in canonical order.
    pub fn units(&self) -> Vec<FieldElem> {
        (1..self.0.q as u32).map(|c| self.elem(c)).collect()
    }

    // ---- raw code arithmetic -------------------------------------------------

    pub fn digits(&self, code: u32) -> Vec<u64> {
        digits_of(code as u64, self.0.p, self.0.f)
    }

    pub fn encode(&self, digits: &[u64]) -> u32 {
        digits.iter().rev().fold(0u64, |acc, &d| acc * self.0.p + d) as u32
    }

    pub fn add_codes(&self, a: u32, b: u32) -> u32 {
        let p = self.0.p as u32;
        if p == 2 {
            return a ^ b;
        }
        let (mut a, mut b, mut r, mut w) = (a, b, 0u32, 1u32);
        while a > 0 || b > 0 {
            r += ((a % p + b % p) % p) * w;
            a /= p;
            b /= p;
            w = w.wrapping_mul(p);
        }
        r
    }

    pub fn neg_code(&self, a: u32) -> u32 {
        let p = self.0.p as u32;
        let (mut a, mut r, mut w) = (a, 0u32, 1u32);
        while a > 0 {
            r += ((p - a % p) % p) * w;
            a /= p;
            w = w.wrapping_mul(p);
        }
        r
    }

    pub fn sub_codes(&self, a: u32, b: u32) -> u32 {
        self.add_codes(a, self.neg_code(b))
    }

    /// Multiplies by an element of the prime field.
    pub fn scale_code(&self, a: u32, k: u64) -> u32 {
        let p = self.0.p;
        let k = k % p;
        let d: Vec<u64> = self.digits(a).into_iter().map(|x| x * k % p).collect();
        self.encode(&d)
    }

    pub fn mul_codes(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        if let Some(t) = self.table() {
            let n = t.exp.len() as u64;
            let e = (t.log[a as usize] as u64 + t.log[b as usize] as u64) % n;
            return t.exp[e as usize];
        }
        self.mul_slow(a, b)
    }

    fn mul_slow(&self, a: u32, b: u32) -> u32 {
        let r = poly::mulmod(&self.digits(a), &self.digits(b), &self.0.modulus, self.0.p);
        self.encode(&r)
    }

    pub fn pow_code(&self, a: u32, e: u128) -> u32 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let n = (self.0.q - 1) as u128;
        if let Some(t) = self.table() {
            let l = (t.log[a as usize] as u128 * (e % n)) % n;
            return t.exp[l as usize];
        }
        let mut e = e % n;
        if e == 0 {
            e = n;
        }
        let (mut base, mut acc) = (a, 1u32);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_slow(acc, base);
            }
            base = self.mul_slow(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv_code(&self, a: u32) -> Option<u32> {
        (a != 0).then(|| self.pow_code(a, (self.0.q - 2) as u128))
    }

    /// Absolute trace to GF(p), as a residue in `[0, p)`.
    pub fn abs_trace_code(&self, a: u32) -> u64 {
        if let Some(t) = self.trace_table() {
            return t[a as usize];
        }
        let basis = self.trace_basis();
        let p = self.0.p;
        self.digits(a).iter().zip(basis).fold(0, |acc, (d, t)| (acc + d * t) % p)
    }

    fn trace_basis(&self) -> Vec<u64> {
        let (p, f) = (self.0.p, self.0.f);
        (0..f)
            .map(|i| {
                let mut d = vec![0u64; f as usize];
                d[i as usize] = 1;
                let x = self.encode(&d);
                let mut y = x;
                let mut acc = 0u32;
                for _ in 0..f {
                    acc = self.add_codes(acc, y);
                    y = self.pow_slow(y, p);
                }
                acc as u64
            })
            .collect()
    }

    fn pow_slow(&self, a: u32, mut e: u64) -> u32 {
        let (mut base, mut acc) = (a, 1u32);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_slow(acc, base);
            }
            base = self.mul_slow(base, base);
            e >>= 1;
        }
        acc
    }

    fn trace_table(&self) -> Option<&Vec<u64>> {
        if self.0.q > TABLE_CAP {
            return None;
        }
        Some(self.0.trace.get_or_init(|| {
            let basis = self.trace_basis();
            let p = self.0.p;
            let mut t = vec![0u64; self.0.q as usize];
            for (c, slot) in t.iter_mut().enumerate() {
                let mut v = c as u64;
                let mut acc = 0;
                for b in &basis {
                    acc += (v % p) * b;
                    v /= p;
                }
                *slot = acc % p;
            }
            t
        }))
    }

    // ---- multiplicative structure -------------------------------------------

    fn table(&self) -> Option<&DlogTable> {
        self.0.dlog.get_or_init(|| (self.0.q <= TABLE_CAP).then(|| self.build_table())).as_ref()
    }

    fn build_table(&self) -> DlogTable {
        let q = self.0.q;
        let g = self.find_generator();
        let mut exp = Vec::with_capacity((q - 1) as usize);
        let mut log = vec![0u32; q as usize];
        let mut x = 1u32;
        for i in 0..(q - 1) {
            exp.push(x);
            log[x as usize] = i as u32;
            x = self.mul_slow(x, g);
        }
        DlogTable { generator: g, exp, log }
    }

    fn find_generator(&self) -> u32 {
        let n = self.0.q - 1;
        let primes: Vec<u64> = arith::factorize(n).into_iter().map(|(l, _)| l).collect();
        (1..self.0.q as u32)
            .find(|&c| primes.iter().all(|l| self.pow_slow(c, n / l) != 1))
            .expect("multiplicative group is cyclic")
    }

    /// The canonical generator: the first element in code order of full order.
    pub fn generator(&self) -> FieldElem {
        match self.table() {
            Some(t) => self.elem(t.generator),
            None => self.elem(self.find_generator()),
        }
    }

    /// Power table `g^i` and logarithm table, indexed by code.
    pub(crate) fn exp_log(&self) -> Result<(&[u32], &[u32])> {
        let t = self.dlog_table()?;
        Ok((&t.exp, &t.log))
    }

    /// Absolute traces of all elements, indexed by code.
    pub(crate) fn trace_slice(&self) -> Result<&[u64]> {
        self.trace_table().map(|v| v.as_slice()).ok_or(Error::NoDlogTable(self.0.q))
    }

    pub fn dlog_table(&self) -> Result<&DlogTable> {
        self.table().ok_or(Error::NoDlogTable(self.0.q))
    }

    pub fn dlog_code(&self, a: u32) -> Result<u64> {
        if a == 0 {
            return Err(Error::DlogZero);
        }
        Ok(self.dlog_table()?.log[a as usize] as u64)
    }

    /// `g^e` for the canonical generator `g`.
    pub fn exp_code(&self, e: u64) -> u32 {
        match self.table() {
            Some(t) => t.exp[(e % (self.0.q - 1)) as usize],
            None => self.pow_code(self.find_generator(), e as u128),
        }
    }

    // ---- subfields ------------------------------------------------------------

    /// True when `sub` has the same characteristic and a degree dividing ours.
    pub fn has_subfield(&self, sub: &FieldSpec) -> bool {
        sub.p() == self.p() && self.f().is_multiple_of(sub.f())
    }

    /// The embedding of `sub` into this field (cached per modulus).
    pub fn embedding_from(&self, sub: &FieldSpec) -> Result<Arc<Embedding>> {
        if !self.has_subfield(sub) {
            return Err(Error::NotSubfield { p: self.p(), sub: sub.f(), f: self.f() });
        }
        let key = sub.modulus().to_vec();
        if let Some(e) = self.0.embeddings.lock().unwrap().get(&key) {
            return Ok(e.clone());
        }
        let e = Arc::new(Embedding::build(sub, self)?);
        self.0.embeddings.lock().unwrap().insert(key, e.clone());
        Ok(e)
    }
}

/// Field homomorphism from a subfield model into an extension model.
///
/// The generator `x` of the subfield is sent to the smallest-code root of
/// the subfield modulus, so repeated constructions agree.
pub struct Embedding {
    pub sub: FieldSpec,
    pub target: FieldSpec,
    forward: Vec<u32>,
    backward: HashMap<u32, u32>,
}

impl Embedding {
    fn build(sub: &FieldSpec, target: &FieldSpec) -> Result<Self> {
        let root = if sub.f() == 1 {
            0
        } else {
            let t = target.dlog_table()?;
            let step = (target.size() - 1) / (sub.size() - 1);
            let mut roots: Vec<u32> = (0..sub.size() - 1)
                .map(|k| t.exp[(k * step) as usize])
                .filter(|&y| {
                    let v = sub
                        .modulus()
                        .iter()
                        .rev()
                        .fold(0u32, |acc, &c| target.add_codes(target.mul_codes(acc, y), c as u32));
                    v == 0
                })
                .collect();
            roots.sort_unstable();
            roots[0]
        };
        let forward: Vec<u32> = (0..sub.size() as u32)
            .map(|c| {
                if sub.f() == 1 {
                    return c;
                }
                sub.digits(c).iter().rev().fold(0u32, |acc, &d| target.add_codes(target.mul_codes(acc, root), d as u32))
            })
            .collect();
        let backward = forward.iter().enumerate().map(|(i, &c)| (c, i as u32)).collect();
        Ok(Embedding { sub: sub.clone(), target: target.clone(), forward, backward })
    }

    pub fn map_code(&self, c: u32) -> u32 {
        self.forward[c as usize]
    }

    /// Preimage of a target element lying in the image.
    pub fn preimage_code(&self, c: u32) -> Option<u32> {
        self.backward.get(&c).copied()
    }
}

/// An element of a specific field model.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElem {
    field: FieldSpec,
    code: u32,
}

impl std::hash::Hash for FieldElem {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.field.p().hash(state);
        self.field.modulus().hash(state);
        self.code.hash(state);
    }
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.coeffs();
        let terms: Vec<String> = d
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| match (i, c) {
                (0, c) => c.to_string(),
                (1, 1) => "x".into(),
                (1, c) => format!("{c}x"),
                (i, 1) => format!("x^{i}"),
                (i, c) => format!("{c}x^{i}"),
            })
            .collect();
        if terms.is_empty() {
            write!(out, "0")
        } else {
            write!(out, "{}", terms.join("+"))
        }
    }
}

impl FieldElem {
    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn code(&self) -> u32 {
        self.code
    }

    pub fn coeffs(&self) -> Vec<u64> {
        self.field.digits(self.code)
    }

    pub fn is_zero(&self) -> bool {
        self.code == 0
    }

    fn same_field(&self, o: &FieldElem, op: &str) {
        assert!(self.field == o.field, "{op}: {} and {} are different fields; embed explicitly", self.field, o.field);
    }

    pub fn inv(&self) -> Option<FieldElem> {
        self.field.inv_code(self.code).map(|c| self.field.elem(c))
    }

    pub fn pow(&self, e: u128) -> FieldElem {
        self.field.elem(self.field.pow_code(self.code, e))
    }

    /// Power with a signed exponent; `None` for a negative power of zero.
    pub fn pow_signed(&self, e: i128) -> Option<FieldElem> {
        if e >= 0 {
            return Some(self.pow(e as u128));
        }
        self.inv().map(|x| x.pow(e.unsigned_abs()))
    }

    pub fn dlog(&self) -> Result<u64> {
        self.field.dlog_code(self.code)
    }

    /// `x^r` for `r` a power of the characteristic.
    pub fn frobenius(&self, r: u64) -> Result<FieldElem> {
        arith::log_exact(r, self.field.p()).ok_or(Error::NotPPower(r))?;
        Ok(self.pow(r as u128))
    }

    /// Absolute trace to GF(p) as a residue.
    pub fn abs_trace(&self) -> u64 {
        self.field.abs_trace_code(self.code)
    }

    pub fn embed(&self, target: &FieldSpec) -> Result<FieldElem> {
        let e = target.embedding_from(&self.field)?;
        Ok(target.elem(e.map_code(self.code)))
    }

    /// Relative trace down to `sub`, returned as an element of `sub`.
    pub fn rel_trace(&self, sub: &FieldSpec) -> Result<FieldElem> {
        let e = self.field.embedding_from(sub)?;
        let k = sub.size() as u128;
        let mut y = self.code;
        let mut acc = 0;
        for _ in 0..(self.field.f() / sub.f()) {
            acc = self.field.add_codes(acc, y);
            y = self.field.pow_code(y, k);
        }
        Ok(sub.elem(e.preimage_code(acc).expect("trace lies in the subfield")))
    }

    /// Relative norm down to `sub`, returned as an element of `sub`.
    pub fn rel_norm(&self, sub: &FieldSpec) -> Result<FieldElem> {
        let e = self.field.embedding_from(sub)?;
        let exp = (self.field.size() - 1) / (sub.size() - 1);
        let n = self.field.pow_code(self.code, exp as u128);
        Ok(sub.elem(e.preimage_code(n).expect("norm lies in the subfield")))
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $f:ident) => {
        impl std::ops::$tr<&FieldElem> for &FieldElem {
            type Output = FieldElem;
            fn $m(self, o: &FieldElem) -> FieldElem {
                self.same_field(o, stringify!($m));
                self.field.elem(self.field.$f(self.code, o.code))
            }
        }
        impl std::ops::$tr<FieldElem> for FieldElem {
            type Output = FieldElem;
            fn $m(self, o: FieldElem) -> FieldElem {
                (&self).$m(&o)
            }
        }
    };
}

binop!(Add, add, add_codes);
binop!(Sub, sub, sub_codes);
binop!(Mul, mul, mul_codes);

impl std::ops::Neg for &FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        self.field.elem(self.field.neg_code(self.code))
    }
}

impl std::ops::Neg for FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        -&self
    }
}

/// Dense polynomials over GF(p), coefficients constant term first.
pub(crate) mod poly {
    pub fn trim(a: &mut Vec<u64>) {
        while a.len() > 1 && *a.last().unwrap() == 0 {
            a.pop();
        }
        if a.is_empty() {
            a.push(0);
        }
    }

    fn is_zero(a: &[u64]) -> bool {
        a.iter().all(|&c| c == 0)
    }

    fn inv(a: u64, p: u64) -> u64 {
        crate::arith::pow_mod(a, p - 2, p)
    }

    pub fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut r = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                r[i + j] = (r[i + j] + x * y) % p;
            }
        }
        trim(&mut r);
        r
    }

    /// Remainder of `a` modulo `m` (m nonzero).
    pub fn rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        let mut m = m.to_vec();
        trim(&mut m);
        let mut r = a.to_vec();
        trim(&mut r);
        let dm = m.len() - 1;
        let lead_inv = inv(m[dm], p);
        while r.len() > dm && !is_zero(&r) {
            let dr = r.len() - 1;
            let c = r[dr] * lead_inv % p;
            for i in 0..=dm {
                let t = c * m[i] % p;
                r[dr - dm + i] = (r[dr - dm + i] + p - t) % p;
            }
            trim(&mut r);
            if r.len() - 1 < dm {
                break;
            }
        }
        r
    }

    /// Product reduced mod a monic modulus, padded to `deg m` coefficients.
    pub fn mulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        let mut r = rem(&mul(a, b, p), m, p);
        r.resize(m.len() - 1, 0);
        r
    }

    pub fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let n = a.len().max(b.len());
        let mut r: Vec<u64> = (0..n)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                (x + p - y) % p
            })
            .collect();
        trim(&mut r);
        r
    }

    pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let (mut a, mut b) = (a.to_vec(), b.to_vec());
        trim(&mut a);
        trim(&mut b);
        while !is_zero(&b) {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        a
    }

    fn powmod(base: &[u64], mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
        let mut acc = vec![1u64];
        let mut b = rem(base, m, p);
        while e > 0 {
            if e & 1 == 1 {
                acc = rem(&mul(&acc, &b, p), m, p);
            }
            b = rem(&mul(&b, &b, p), m, p);
            e >>= 1;
        }
        acc
    }

    /// Irreducibility of a monic polynomial: gcd(x^{p^i} - x, m) = 1 for
    /// every i <= deg/2.
    pub fn is_irreducible(m: &[u64], p: u64) -> bool {
        let d = m.len() - 1;
        if d == 1 {
            return true;
        }
        if m[0] == 0 {
            return false;
        }
        let x = vec![0u64, 1];
        let mut xp = x.clone();
        for _ in 0..d / 2 {
            xp = powmod(&xp, p, m, p);
            let g = gcd(m, &sub(&xp, &x, p), p);
            if g.len() > 1 {
                return false;
            }
        }
        true
    }
}
