use serde::Serialize;

use crate::arith;
use crate::error::{Error, Result};

/// Congruence imposed on a Bezout pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Constraint {
    None,
    BetaEven,
    /// β ≡ 0 mod N.
    BetaDivisibleBy(u64),
    /// α ≡ 0 mod N.
    AlphaDivisibleBy(u64),
}

/// Integers α, β with αA − βB = 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BezoutPair {
    pub a: u64,
    pub b: u64,
    pub alpha: i128,
    pub beta: i128,
    pub constraint: Constraint,
}

impl BezoutPair {
    /// The solution meeting `constraint` with the smallest |β| (ties go to β ≥ 0).
    pub fn new(a: u64, b: u64, constraint: Constraint) -> Result<Self> {
        if a == 0 || b == 0 || arith::gcd(a, b) != 1 {
            return Err(Error::NotCoprime(a, b));
        }
        let (ai, bi) = (a as i128, b as i128);
        // a·x + b·y = 1  ⇒  α = x, β = −y.
        let (_, x, y) = arith::egcd(ai, bi);
        let (alpha0, beta0) = (x, -y);
        // Solutions are (α0 + kB, β0 + kA); find the admissible k progression.
        let (k0, step) = match constraint {
            Constraint::None => (0, 1),
            Constraint::BetaEven => solve(ai, -beta0, 2)?,
            Constraint::BetaDivisibleBy(n) => solve(ai, -beta0, n as i128)?,
            Constraint::AlphaDivisibleBy(n) => solve(bi, -alpha0, n as i128)?,
        };
        let base = beta0 + k0 * ai;
        let s = step * ai;
        let t0 = (-base).div_euclid(s);
        let k = (t0 - 1..=t0 + 2)
            .min_by_key(|t| {
                let v = base + t * s;
                (v.abs(), v < 0)
            })
            .unwrap();
        let kk = k0 + k * step;
        let pair = BezoutPair { a, b, alpha: alpha0 + kk * bi, beta: beta0 + kk * ai, constraint };
        debug_assert!(pair.holds());
        Ok(pair)
    }

    /// Shifts to (α + kB, β + kA), which is again a Bezout pair.
    pub fn shifted(&self, k: i128) -> Self {
        BezoutPair {
            alpha: self.alpha + k * self.b as i128,
            beta: self.beta + k * self.a as i128,
            constraint: Constraint::None,
            ..*self
        }
    }

    /// αA − βB = 1 and the constraint is met.
    pub fn holds(&self) -> bool {
        let ok = self.alpha * self.a as i128 - self.beta * self.b as i128 == 1;
        ok && match self.constraint {
            Constraint::None => true,
            Constraint::BetaEven => self.beta % 2 == 0,
            Constraint::BetaDivisibleBy(n) => self.beta % n as i128 == 0,
            Constraint::AlphaDivisibleBy(n) => self.alpha % n as i128 == 0,
        }
    }
}

/// Solutions k of `k·c ≡ r (mod n)` as (k0, step).
fn solve(c: i128, r: i128, n: i128) -> Result<(i128, i128)> {
    let g = arith::gcd(c.rem_euclid(n) as u64, n as u64) as i128;
    if r.rem_euclid(g) != 0 {
        return Err(Error::Hypothesis(format!("no Bezout pair with the requested congruence mod {n}")));
    }
    let m = n / g;
    if m == 1 {
        return Ok((0, 1));
    }
    let inv = arith::inv_mod((c / g).rem_euclid(m), m).expect("coprime after division");
    Ok(((r / g).rem_euclid(m) * inv % m, m))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constraints() {
        let p = BezoutPair::new(5, 2, Constraint::None).unwrap();
        assert!(p.holds());
        assert!(p.beta.abs() <= 2);
        let e = BezoutPair::new(5, 2, Constraint::BetaEven).unwrap();
        assert!(e.holds() && e.beta % 2 == 0);
        let g = BezoutPair::new(7, 1, Constraint::BetaDivisibleBy(4)).unwrap();
        assert!(g.holds());
        let d = BezoutPair::new(7, 1, Constraint::AlphaDivisibleBy(4)).unwrap();
        assert!(d.holds() && d.alpha % 4 == 0);
        assert!(BezoutPair::new(4, 2, Constraint::None).is_err());
        assert!(BezoutPair::new(2, 5, Constraint::BetaDivisibleBy(4)).is_err());
    }

    #[test]
    fn shift_preserves_identity() {
        let p = BezoutPair::new(14, 5, Constraint::None).unwrap();
        for k in -3..4 {
            assert!(p.shifted(k).holds());
        }
    }
}
