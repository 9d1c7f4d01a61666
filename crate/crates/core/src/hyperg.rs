//! Symbolic calculus on hypergeometric parameters: types, ranks, determinant
//! characters, primitivity tests, the (S+) inequalities, and the gcd and
//! parity arithmetic behind the Sp and SU families.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::arith;
use crate::error::{Error, Result};

/// Which of the three hypergeometric shapes; characters are exponents of
/// `ζ_order` for the order carried by [`HGParams`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum HGKind {
    Small,
    Big { chi: u64 },
    Sharp { chi: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct HGParams {
    pub a: u64,
    pub b: u64,
    pub p: u64,
    pub kind: HGKind,
    /// Order of the root of unity χ is written against (1 for `Small`).
    pub chi_order: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TypeRankWeight {
    pub type_pair: (u64, u64),
    pub rank: u64,
    pub weight: u64,
}

/// A geometric determinant `χ₂^{chi2} · χ^{chi}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DetChar {
    /// 0 or 1; always 0 when p = 2.
    pub chi2: u8,
    /// 0 or 1.
    pub chi: u8,
}

impl HGParams {
    pub fn new(a: u64, b: u64, p: u64, kind: HGKind, chi_order: u64) -> Result<Self> {
        if !arith::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if a == 0 || b == 0 || a.is_multiple_of(p) || b.is_multiple_of(p) {
            return Err(Error::Hypothesis(format!("A={a}, B={b} must be positive and prime to {p}")));
        }
        if a == b {
            return Err(Error::Hypothesis("A = B".into()));
        }
        let ord = chi_order.max(1);
        let disjoint = match kind {
            HGKind::Small => true,
            HGKind::Big { chi } => !(chi as u128 * a as u128).is_multiple_of(ord as u128),
            HGKind::Sharp { chi } => !(chi as u128 * b as u128).is_multiple_of(ord as u128),
        };
        if !disjoint {
            return Err(Error::Hypothesis(format!("{kind:?} has overlapping character sets")));
        }
        Ok(HGParams { a, b, p, kind, chi_order: ord })
    }

    pub fn small(a: u64, b: u64, p: u64) -> Result<Self> {
        Self::new(a, b, p, HGKind::Small, 1)
    }

    pub fn type_rank_weight(&self) -> TypeRankWeight {
        let (a, b) = (self.a, self.b);
        match self.kind {
            HGKind::Small => TypeRankWeight { type_pair: (a - 1, b - 1), rank: a.max(b) - 1, weight: a + b - 3 },
            _ => TypeRankWeight { type_pair: (a, b), rank: a.max(b), weight: a + b - 1 },
        }
    }

    /// The geometric determinant for `|A − B| ≥ 2`.
    pub fn det_char(&self) -> Result<DetChar> {
        let (a, b) = (self.a, self.b);
        if a.abs_diff(b) < 2 {
            return Err(Error::Hypothesis(format!("|A−B| < 2 for A={a}, B={b}")));
        }
        let par = |k: u64| if self.p == 2 { 0 } else { ((k - 1) % 2) as u8 };
        let a_big = a > b;
        Ok(match (self.kind, a_big) {
            (HGKind::Small, true) => DetChar { chi2: par(a), chi: 0 },
            (HGKind::Small, false) => DetChar { chi2: par(b), chi: 0 },
            (HGKind::Big { .. }, true) => DetChar { chi2: par(a), chi: 0 },
            (HGKind::Big { .. }, false) => DetChar { chi2: par(b), chi: 1 },
            (HGKind::Sharp { .. }, true) => DetChar { chi2: par(a), chi: 1 },
            (HGKind::Sharp { .. }, false) => DetChar { chi2: par(b), chi: 0 },
        })
    }

    /// The parameters after multiplicative inversion: `(A, B)` swapped and
    /// big/sharp exchanged.
    pub fn inverted(&self) -> Self {
        let kind = match self.kind {
            HGKind::Small => HGKind::Small,
            HGKind::Big { chi } => HGKind::Sharp { chi },
            HGKind::Sharp { chi } => HGKind::Big { chi },
        };
        HGParams { a: self.b, b: self.a, kind, ..*self }
    }
}

/// False exactly when `|A − B|` is prime to p and divisible by p − 1, the
/// only situation in which Belyi induction is possible.
pub fn belyi_excluded(a: u64, b: u64, p: u64) -> bool {
    let d = a.abs_diff(b);
    !(!d.is_multiple_of(p) && d.is_multiple_of(p - 1))
}

/// `gcd(A, B) = 1` (no Kummer induction) and `p | A − B` (no Belyi induction).
pub fn geometrically_primitive(a: u64, b: u64, p: u64) -> bool {
    arith::gcd(a, b) == 1 && a.abs_diff(b).is_multiple_of(p) && belyi_excluded(a, b, p)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "note", rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Flagged(String),
}

impl CheckStatus {
    fn from_bool(ok: bool) -> Self {
        if ok {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail
        }
    }

    pub fn is_fail(&self) -> bool {
        matches!(self, CheckStatus::Fail)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    #[serde(flatten)]
    pub status: CheckStatus,
}

fn check(name: impl Into<String>, ok: bool) -> Check {
    Check { name: name.into(), status: CheckStatus::from_bool(ok) }
}

fn flag(name: impl Into<String>, note: impl Into<String>) -> Check {
    Check { name: name.into(), status: CheckStatus::Flagged(note.into()) }
}

/// Numeric conditions under which the big sheaf with parameters `(A, B)`
/// satisfies (S+). The `max(A,B) ∈ {8, 9}` side conditions are flagged.
pub fn abcond_big(a: u64, b: u64, p: u64) -> Vec<Check> {
    let (mx, d) = (a.max(b), a.abs_diff(b));
    let mut v = vec![
        check("A, B prime to p", !a.is_multiple_of(p) && !b.is_multiple_of(p)),
        check("gcd(A, B) = 1", arith::gcd(a, b) == 1),
        check("p divides A − B", d % p == 0),
        check("max(A, B) prime to p", mx % p != 0),
        check("|A − B| > max(A, B)/2 ≥ 2", 2 * d > mx && mx >= 4),
    ];
    match mx {
        8 => v.push(flag("max(A, B) = 8", format!("requires A − B = 7, have {d}"))),
        9 => v.push(flag("max(A, B) = 9", format!("requires A − B ∈ {{7, 8}}, have {d}"))),
        _ => {}
    }
    v
}

/// As [`abcond_big`] for the small sheaf.
pub fn abcond_small(a: u64, b: u64, p: u64) -> Vec<Check> {
    let (mx, d) = (a.max(b), a.abs_diff(b));
    let r = mx - 1;
    let mut v = vec![
        check("A, B prime to p", !a.is_multiple_of(p) && !b.is_multiple_of(p)),
        check("gcd(A, B) = 1", arith::gcd(a, b) == 1),
        check("p divides A − B", d % p == 0),
        check("p divides max(A − 1, B − 1)", r % p == 0),
        // |A−B| > (2/3)(r−1) > 2
        check("|A − B| > (2/3)(max(A−1, B−1) − 1) > 2", 3 * d > 2 * (r - 1) && 2 * (r - 1) > 6),
    ];
    if mx == 8 {
        v.push(flag("max(A, B) = 8", format!("requires A − B = 7, have {d}")));
    }
    if p == 2 && r == 8 {
        v.push(flag("p = 2, max(A−1, B−1) = 8", "excluded"));
    }
    v
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Context {
    Sp,
    Su,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub context: Context,
    pub q: u64,
    pub n: u32,
    pub m: u32,
    /// Extra computed quantities, rendered as strings (big integers, slopes).
    pub data: Vec<(String, String)>,
    pub checks: Vec<Check>,
}

impl Report {
    fn new(context: Context, q: u64, n: u32, m: u32) -> Self {
        Report { context, q, n, m, data: Vec::new(), checks: Vec::new() }
    }

    fn datum(&mut self, k: &str, v: impl ToString) {
        self.data.push((k.to_string(), v.to_string()));
    }

    /// No check failed (flags are not failures).
    pub fn passed(&self) -> bool {
        !self.checks.iter().any(|c| c.status.is_fail())
    }

    pub fn flags(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| matches!(c.status, CheckStatus::Flagged(_)))
    }
}

fn prime_power(q: u64) -> Result<(u64, u32)> {
    let fac = arith::factorize(q);
    if fac.len() != 1 {
        return Err(Error::Hypothesis(format!("{q} is not a prime power")));
    }
    Ok(fac[0])
}

fn big(x: u64) -> BigUint {
    BigUint::from(x)
}

fn pw(q: u64, n: u32) -> BigUint {
    big(q).pow(n)
}

fn sp_hyp(q: u64, n: u32, m: u32) -> Result<u64> {
    let (p, _) = prime_power(q)?;
    if p == 2 {
        return Err(Error::Hypothesis("Sp context needs odd q".into()));
    }
    if n == 0 || m == 0 || arith::gcd(n as u64, m as u64) != 1 {
        return Err(Error::NotCoprime(n as u64, m as u64));
    }
    if (n + m).is_multiple_of(2) {
        return Err(Error::Hypothesis(format!("exactly one of n={n}, m={m} must be even")));
    }
    Ok(p)
}

fn su_hyp(q: u64, n: u32, m: u32) -> Result<u64> {
    let (p, _) = prime_power(q)?;
    if m == 0 || arith::gcd(n as u64, m as u64) != 1 {
        return Err(Error::NotCoprime(n as u64, m as u64));
    }
    if n <= m || n.is_multiple_of(2) || m.is_multiple_of(2) {
        return Err(Error::Hypothesis(format!("need n > m both odd, got n={n}, m={m}")));
    }
    Ok(p)
}

fn rank_ok(r: &BigUint, min: u64) -> bool {
    *r >= big(min) && *r != big(8) && *r != big(9)
}

/// The (S+) inequalities for the Sp pair: `c = max(n,m)`, `d = min(n,m)`,
/// ranks `(q^c ± 1)/2`, wild part `W = (q^c − q^d)/2`.
pub fn splus_sp(q: u64, n: u32, m: u32) -> Result<Report> {
    let p = sp_hyp(q, n, m)?;
    let (c, d) = (n.max(m), n.min(m));
    let (qc, qd) = (pw(q, c), pw(q, d));
    let rank_big = (&qc + 1u32) / 2u32;
    let rank_small = (&qc - 1u32) / 2u32;
    let w = (&qc - &qd) / 2u32;
    let mut r = Report::new(Context::Sp, q, n, m);
    r.datum("rank_big", &rank_big);
    r.datum("rank_small", &rank_small);
    r.datum("wild_dim", &w);
    r.datum("slope", format!("1/{w}"));
    let pb = big(p);
    r.checks.push(check("p divides W", (&w % &pb).is_zero()));
    r.checks.push(check("ranks prime to p", !(&rank_big % &pb).is_zero() && !(&rank_small % &pb).is_zero()));
    r.checks.push(check("W > (rank_small)/2", big(2) * &w > rank_small));
    r.checks.push(check("W > rank_big/2", big(2) * &w > rank_big));
    let lhs = big(2) * (&qc - &qd);
    let via_a = lhs > &qc + 1u32;
    let via_b = &qd * (pw(q, c - d)) > big(2) * &qd + 1u32;
    r.checks.push(check("2(q^c − q^d) > q^c + 1", via_a));
    r.checks.push(check("q^d(q^{c−d} − 2) > 1", via_b && via_a == via_b));
    r.checks.push(check("rank_small ≥ 4", rank_small >= big(4)));
    r.checks.push(check("ranks ≠ 8", rank_big != big(8) && rank_small != big(8)));
    Ok(r)
}

/// The (S+) inequalities for the SU pair `A = (q^n+1)/(q+1)`, `B = (q^m+1)/(q+1)`.
pub fn splus_su(q: u64, n: u32, m: u32) -> Result<Report> {
    let p = su_hyp(q, n, m)?;
    let (qn, qm) = (pw(q, n), pw(q, m));
    let a = (&qn + 1u32) / (q + 1);
    let b = (&qm + 1u32) / (q + 1);
    let w = &a - &b;
    let mut r = Report::new(Context::Su, q, n, m);
    r.datum("A", &a);
    r.datum("B", &b);
    r.datum("wild_dim", &w);
    r.datum("slope", format!("1/{w}"));
    let pb = big(p);
    r.checks.push(check("p divides A − B", (&w % &pb).is_zero()));
    r.checks.push(check("big: rank A prime to p", !(&a % &pb).is_zero()));
    if rank_ok(&a, 4) {
        r.checks.push(check("big: rank A ≥ 4, A ∉ {8, 9}", true));
        if a == big(7) {
            r.checks.push(flag("big: rank A = 7", "prime rank"));
        }
    } else {
        r.checks.push(flag("big: rank A ≥ 4, A ∉ {8, 9}", format!("rank A = {a} handled separately (prime rank)")));
    }
    r.checks.push(check("big: A − B > A/2", big(2) * &w > a));
    r.checks.push(check("big: q^m(q^{n−m} − 2) > 1", pw(q, n - m) * &qm > big(2) * &qm + 1u32));
    let rs = &a - 1u32;
    r.checks.push(check("small: rank A − 1 divisible by p", (&rs % &pb).is_zero()));
    if rs > big(4) && rs != big(8) && rs != big(9) {
        r.checks.push(check("small: rank A − 1 > 4, ∉ {8, 9}", true));
    } else {
        r.checks.push(flag("small: rank A − 1 > 4, ∉ {8, 9}", format!("rank A − 1 = {rs} handled separately")));
    }
    // 3(A−B) > 2(A−2)
    r.checks.push(check("small: A − B > (2/3)(A − 2)", big(3) * &w + big(4) > big(2) * &a));
    r.checks.push(check("small: q^n − 3q^m ≥ q", qn >= big(3) * &qm + big(q)));
    Ok(r)
}

/// The standing gcd, parity and congruence facts for the context.
pub fn standing_gcds(q: u64, n: u32, m: u32, context: Context) -> Result<Report> {
    let (qn1, qm1) = (pw(q, n) + 1u32, pw(q, m) + 1u32);
    let g = qn1.gcd(&qm1);
    let mut r = Report::new(context, q, n, m);
    r.datum("gcd", &g);
    match context {
        Context::Sp => {
            let p = sp_hyp(q, n, m)?;
            let (even, odd) = if n.is_multiple_of(2) { (n, m) } else { (m, n) };
            let a = (pw(q, even) + 1u32) / 2u32;
            let b = (pw(q, odd) + 1u32) / 2u32;
            r.datum("A", &a);
            r.datum("B", &b);
            r.checks.push(check("gcd(q^n+1, q^m+1) = 2", g == big(2)));
            r.checks.push(check("A odd", a.is_odd()));
            r.checks.push(check("B odd ⇔ q ≡ 1 mod 4", b.is_odd() == (q % 4 == 1)));
            let two = big(2);
            let pb = big(p);
            r.checks.push(check("2A ≡ 2B ≡ 1 mod p", (&two * &a) % &pb == big(1) && (&two * &b) % &pb == big(1)));
            r.checks.push(check("gcd(A, B) = 1", a.gcd(&b).is_one()));
        }
        Context::Su => {
            su_hyp(q, n, m)?;
            let a = &qn1 / (q + 1);
            let b = &qm1 / (q + 1);
            r.datum("A", &a);
            r.datum("B", &b);
            let q1 = big(q + 1);
            r.checks.push(check("gcd(q^n+1, q^m+1) = q+1", g == q1));
            r.checks.push(check("A, B odd", a.is_odd() && b.is_odd()));
            r.checks.push(check(
                "A ≡ n, B ≡ m mod q+1",
                &a % &q1 == big(n as u64) % &q1 && &b % &q1 == big(m as u64) % &q1,
            ));
            if q > 2 {
                let qm = big(q - 1);
                r.checks.push(check("A ≡ B ≡ 1 mod q−1", &a % &qm == big(1) % &qm && &b % &qm == big(1) % &qm));
            }
            r.checks.push(check("gcd(A, B) = 1", a.gcd(&b).is_one()));
            if n >= 3 && (n, q) != (3, 2) {
                let prev = pw(q, n - 1);
                let g1 = qn1.gcd(&(&prev + 1u32));
                let g2 = qn1.gcd(&(&prev - 1u32));
                r.checks.push(check("gcd(q^n+1, q^{n−1}+1) = gcd(2, q−1)", g1 == big(arith::gcd(2, q - 1))));
                r.checks.push(check("gcd(q^n+1, q^{n−1}−1) = q+1", g2 == q1));
            }
        }
    }
    Ok(r)
}

#[derive(Clone, Debug, Serialize)]
pub struct N0Report {
    pub n: u32,
    pub q: u64,
    pub n0: u64,
    pub a: String,
    /// `gcd(n₀(q+1), A)`.
    pub cp11: u64,
    pub passed: bool,
}

/// `n₀ = ∏ ℓ^{v_ℓ(n)}` over primes ℓ dividing `gcd(n, q+1)`, with the check
/// `gcd(n₀(q+1), (q^n+1)/(q+1)) = n₀` and `n₀ = gcd(n, (q+1)^n)`.
pub fn n0_arith(n: u32, q: u64) -> Result<N0Report> {
    prime_power(q)?;
    if n.is_multiple_of(2) {
        return Err(Error::Hypothesis(format!("n = {n} must be odd")));
    }
    let g = arith::gcd(n as u64, q + 1);
    let n0: u64 =
        arith::factorize(n as u64).into_iter().filter(|(l, _)| g.is_multiple_of(*l)).map(|(l, e)| l.pow(e)).product();
    let a = (pw(q, n) + 1u32) / (q + 1);
    let cp11 = big(n0 * (q + 1)).gcd(&a).to_u64().expect("divides n0(q+1)");
    let alt = big(n as u64).gcd(&big(q + 1).pow(n));
    let passed = cp11 == n0 && alt == big(n0);
    Ok(N0Report { n, q, n0, a: a.to_string(), cp11, passed })
}

/// Degrees of the irreducible constituents of the total Weil representation.
pub fn weil_degrees(context: Context, n: u32, q: u64) -> Result<Vec<BigUint>> {
    let qn = pw(q, n);
    match context {
        Context::Sp => {
            if q.is_multiple_of(2) {
                return Err(Error::Hypothesis("Sp degrees need odd q".into()));
            }
            Ok(vec![(&qn - 1u32) / 2u32, (&qn + 1u32) / 2u32])
        }
        Context::Su => {
            if n.is_multiple_of(2) {
                return Err(Error::Hypothesis(format!("n = {n} must be odd")));
            }
            let a = (&qn + 1u32) / (q + 1);
            let mut v = vec![&a - 1u32];
            v.extend(std::iter::repeat_n(a, q as usize));
            Ok(v)
        }
    }
}

/// The default symbolic grid: q ∈ {3, 5, 9} with Sp pairs (2,1), (3,2), (4,1),
/// (5,2) and SU pairs (3,1), (5,1), (5,3), (7,3).
pub fn default_grid() -> Vec<(Context, u64, u32, u32)> {
    let mut g = Vec::new();
    for q in [3, 5, 9] {
        for (n, m) in [(2, 1), (3, 2), (4, 1), (5, 2)] {
            g.push((Context::Sp, q, n, m));
        }
        for (n, m) in [(3, 1), (5, 1), (5, 3), (7, 3)] {
            g.push((Context::Su, q, n, m));
        }
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn types_and_ranks() {
        let s = HGParams::small(5, 2, 3).unwrap().type_rank_weight();
        assert_eq!(s, TypeRankWeight { type_pair: (4, 1), rank: 4, weight: 4 });
        let b = HGParams::new(5, 2, 3, HGKind::Big { chi: 1 }, 2).unwrap().type_rank_weight();
        assert_eq!((b.rank, b.weight), (5, 6));
        assert!(HGParams::small(5, 5, 3).is_err());
        assert!(HGParams::new(4, 3, 5, HGKind::Big { chi: 1 }, 2).is_err());
    }

    #[test]
    fn determinants() {
        assert_eq!(HGParams::small(5, 2, 3).unwrap().det_char().unwrap(), DetChar { chi2: 0, chi: 0 });
        let big = HGParams::new(2, 5, 3, HGKind::Big { chi: 1 }, 4).unwrap();
        assert_eq!(big.det_char().unwrap(), DetChar { chi2: 0, chi: 1 });
        let sharp = HGParams::new(5, 2, 3, HGKind::Sharp { chi: 1 }, 4).unwrap();
        assert_eq!(sharp.det_char().unwrap(), DetChar { chi2: 0, chi: 1 });
        assert!(HGParams::small(3, 2, 5).unwrap().det_char().is_err());
        for h in [big, sharp, HGParams::small(7, 2, 3).unwrap()] {
            assert_eq!(h.det_char().unwrap(), h.inverted().det_char().unwrap());
        }
    }

    #[test]
    fn induction_criteria() {
        assert!(belyi_excluded(5, 2, 3));
        assert!(!belyi_excluded(4, 1, 2));
        assert!(geometrically_primitive(5, 2, 3));
        assert!(!geometrically_primitive(10, 4, 3));
    }

    #[test]
    fn splus_examples() {
        let r = splus_sp(3, 2, 1).unwrap();
        assert!(r.passed() && r.flags().count() == 0);
        assert!(r.data.contains(&("wild_dim".into(), "3".into())));
        let r = splus_su(3, 3, 1).unwrap();
        assert!(r.passed());
        assert_eq!(r.flags().count(), 1);
        let r = splus_su(2, 3, 1).unwrap();
        assert!(r.passed());
        assert!(r.flags().count() >= 1);
        assert!(splus_su(3, 2, 1).is_err());
    }

    #[test]
    fn abcond_flags() {
        assert!(abcond_big(5, 2, 3).iter().all(|c| c.status == CheckStatus::Pass));
        let v = abcond_big(8, 1, 7);
        assert!(v.iter().any(|c| matches!(c.status, CheckStatus::Flagged(_))));
        assert!(abcond_small(5, 2, 3).iter().any(|c| c.status.is_fail()));
        assert!(abcond_small(7, 1, 3).iter().all(|c| !c.status.is_fail()));
    }

    #[test]
    fn gcds_and_n0() {
        assert!(standing_gcds(3, 2, 1, Context::Sp).unwrap().passed());
        assert!(standing_gcds(3, 3, 1, Context::Su).unwrap().passed());
        let r = standing_gcds(2, 3, 1, Context::Su).unwrap();
        assert!(r.passed());
        assert!(r.data.contains(&("gcd".into(), "3".into())));
        assert_eq!(n0_arith(3, 2).unwrap().n0, 3);
        assert_eq!(n0_arith(5, 3).unwrap().n0, 1);
        let r = n0_arith(9, 2).unwrap();
        assert!(r.passed && r.n0 == 9 && r.a == "171");
    }

    #[test]
    fn degrees() {
        let d = weil_degrees(Context::Sp, 2, 3).unwrap();
        assert_eq!(d, vec![big(4), big(5)]);
        let d = weil_degrees(Context::Su, 3, 3).unwrap();
        assert_eq!(d, vec![big(6), big(7), big(7), big(7)]);
    }

    #[test]
    fn default_grid_passes() {
        for (ctx, q, n, m) in default_grid() {
            assert!(standing_gcds(q, n, m, ctx).unwrap().passed(), "{ctx:?} {q} {n} {m}");
            let r = match ctx {
                Context::Sp => splus_sp(q, n, m),
                Context::Su => splus_su(q, n, m),
            }
            .unwrap();
            assert!(r.passed(), "{r:?}");
        }
    }
}
