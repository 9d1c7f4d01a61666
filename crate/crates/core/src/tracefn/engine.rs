//! The hot loop shared by every one-variable sum.

use rayon::prelude::*;

use crate::arith;
use crate::charsum::MultChar;
use crate::cyclo::Histogram;
use crate::error::Result;
use crate::gf::FieldSpec;

/// `scale · c · z^exp` inside ψ; `scale` is an integer acting through GF(p).
#[derive(Clone, Copy, Debug)]
pub(crate) struct Term {
    pub coeff: u32,
    pub exp: u128,
    pub scale: u64,
}

/// The factor `χ(constant · z^power)`, which vanishes at `z = 0`.
#[derive(Clone, Debug)]
pub(crate) struct Deco {
    pub chi: MultChar,
    pub power: u128,
    pub constant: u32,
}

const PAR_THRESHOLD: u64 = 1 << 14;

/// Σ_{z ∈ E} ψ(Σ terms) · deco(z), without any leading sign.
pub(crate) fn zsum(e: &FieldSpec, terms: &[Term], deco: Option<&Deco>) -> Result<Histogram> {
    let p = e.p();
    let n = e.size() - 1;
    let (exp, _) = e.exp_log()?;
    let tr = e.trace_slice()?;
    let active: Vec<(u64, u64, u64)> = terms
        .iter()
        .filter(|t| t.coeff != 0 && t.scale % p != 0)
        .map(|t| Ok((e.dlog_code(t.coeff)?, (t.exp % n as u128) as u64, t.scale % p)))
        .collect::<Result<_>>()?;

    // χ(c·z^k) = ζ_ord^{k'(log c + k·l)} at z = g^l.
    let (ord, c0, step) = match deco {
        Some(d) => {
            let dd = arith::gcd(d.chi.exponent(), n);
            let ord = n / dd;
            let k1 = (d.chi.exponent() / dd) % ord;
            let c0 = k1 as u128 * e.dlog_code(d.constant)? as u128 % ord as u128;
            let step = k1 as u128 * (d.power % ord as u128) % ord as u128;
            (ord, c0 as u64, step as u64)
        }
        None => (1, 0, 0),
    };
    let m = arith::lcm(p, ord);
    let (sp, so) = (m / p, m / ord);

    let body = |h: &mut Histogram, l: u64| {
        let mut t = 0u64;
        for &(lc, ex, s) in &active {
            let idx = (lc as u128 + ex as u128 * l as u128) % n as u128;
            t += s * tr[exp[idx as usize] as usize];
        }
        let j = (c0 as u128 + step as u128 * l as u128) % ord as u128;
        h.add((t % p) * sp + j as u64 * so, 1);
    };

    let mut h = if n >= PAR_THRESHOLD {
        (0..n)
            .into_par_iter()
            .fold(
                || Histogram::new(m),
                |mut h, l| {
                    body(&mut h, l);
                    h
                },
            )
            .reduce(|| Histogram::new(m), Histogram::merge)
    } else {
        let mut h = Histogram::new(m);
        for l in 0..n {
            body(&mut h, l);
        }
        h
    };
    if deco.is_none() {
        h.add(0, 1);
    }
    Ok(h)
}
