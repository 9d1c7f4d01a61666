use serde::Serialize;

use crate::arith;
use crate::error::{Error, Result};
use crate::gf::{make_field, FieldSpec};

use super::matrix::{frobenius_matrix, FFMat, Form, Over};

fn require(g: &FFMat, form: Form) -> Result<()> {
    if g.form_check(form)? {
        Ok(())
    } else {
        Err(Error::FormCheck(format!("{form:?} form not preserved")))
    }
}

/// `|ω(g)|² = p^{dim_{F_p} ker(g−1)}` for `g ∈ Sp_{2n}(q)`.
pub fn sp_weil_abs_sq(g: &FFMat) -> Result<i64> {
    require(g, Form::Symplectic)?;
    Ok((g.field().p() as i64).pow(g.fixed_dim(Over::PrimeSubfield) as u32))
}

/// `ζ_{n,q}(g) = (−1)^n (−q)^{dim_{F_{q²}} ker(g−1)}` for `g ∈ GU_n(q)`.
pub fn gu_total_weil(g: &FFMat) -> Result<i64> {
    require(g, Form::Hermitian)?;
    let f = g.field();
    let q = (f.p() as i64).pow(f.f() / 2);
    let n = g.dim() as u32;
    Ok((-1i64).pow(n) * (-q).pow(g.fixed_dim(Over::Native) as u32))
}

/// `(det_{F_p}(h) / p) · #{b : hb = b}` for `h ∈ GL_n(q)` acting on `B = F_q^n`.
pub fn gross_value(h: &FFMat) -> Result<i64> {
    let p = h.field().p();
    if p == 2 {
        return Err(Error::Hypothesis("the Gross formula needs odd p".into()));
    }
    let det = h.blow_up()?.det();
    if det.is_zero() {
        return Err(Error::Singular);
    }
    let leg = arith::legendre(det.code() as u64, p) as i64;
    let q = h.field().size() as i64;
    Ok(leg * q.pow(h.fixed_dim(Over::Native) as u32))
}

/// `diag(h, (hᵀ)⁻¹)`, the action of `h` on `W = B ⊕ B*`.
pub fn levi_embed(h: &FFMat) -> Result<FFMat> {
    FFMat::block_diag(h, &h.transpose().inverse()?)
}

/// `h` when `g = diag(h, (hᵀ)⁻¹)` stabilises both halves of the Witt basis.
pub fn levi_part(g: &FFMat) -> Option<FFMat> {
    let d = g.dim();
    let n = d / 2;
    let off = (0..n).all(|i| (0..n).all(|j| g.code(i, n + j) == 0 && g.code(n + i, j) == 0));
    if !d.is_multiple_of(2) || !off {
        return None;
    }
    let h = FFMat::new(g.field(), n, (0..n * n).map(|k| g.code(k / n, k % n)).collect()).ok()?;
    (levi_embed(&h).ok()? == *g).then_some(h)
}

/// Checks `gross_value(h)² = sp_weil_abs_sq(diag(h, h^{−T}))`.
pub fn gross_consistent(h: &FFMat) -> Result<bool> {
    let g = gross_value(h)?;
    Ok(g * g == sp_weil_abs_sq(&levi_embed(h)?)?)
}

/// Every `h ∈ GL_1(q)`, i.e. the diagonal torus of `Sp_2(q)`.
pub fn torus(field: &FieldSpec) -> Vec<FFMat> {
    field.units().iter().map(|x| FFMat::new(field, 1, vec![x.code()]).expect("1x1")).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct FrobeniusReport {
    pub q: u64,
    pub r: u64,
    pub e: u32,
    pub n: u32,
    pub fixed_count: u64,
    pub expected: u64,
    /// Legendre symbol of `det_{F_p} σ_r`.
    pub det_legendre: i8,
    /// `((r^n+1)/2, (r^n−1)/2)`.
    pub degrees: (u64, u64),
    pub passed: bool,
}

/// Builds `σ_r : (x_i) ↦ (x_i^r)` on `F_q^n` and checks its fixed space has
/// `r^n` elements, that its determinant is a square, and that the degree pair
/// sums to `r^n`.
pub fn frobenius_fixed_check(q: u64, r: u64, n: u32) -> Result<FrobeniusReport> {
    let fac = arith::factorize(q);
    if fac.len() != 1 || fac[0].0 == 2 {
        return Err(Error::Hypothesis(format!("{q} is not an odd prime power")));
    }
    let (p, f) = fac[0];
    let a = arith::log_exact(r, p).ok_or(Error::NotPPower(r))?;
    if a == 0 || f % a != 0 || (f / a) % 2 == 0 {
        return Err(Error::Hypothesis(format!("q = {q} is not an odd power of r = {r}")));
    }
    let e = f / a;
    let field = make_field(p, f)?;
    let sigma = frobenius_matrix(&field, n as usize, r)?;
    let fixed_count = p.pow(sigma.fixed_dim(Over::Native) as u32);
    let det_legendre = arith::legendre(sigma.det().code() as u64, p);
    let expected = r.pow(n);
    let degrees = (expected.div_ceil(2), (expected - 1) / 2);
    let passed = fixed_count == expected && det_legendre == 1 && degrees.0 + degrees.1 == expected;
    Ok(FrobeniusReport { q, r, e, n, fixed_count, expected, det_legendre, degrees, passed })
}
