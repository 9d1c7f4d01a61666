//! Exact Gauss sums in Z[ζ_M] and the Stickelberger evaluation.
//!
//! cargo run --example gauss_sums

use weilsum::charsum::{stickelberger_check, stickelberger_value};
use weilsum::{gauss_sum, make_field, AddChar, MultChar, Result};

fn main() -> Result<()> {
    let k = make_field(3, 2)?;
    let psi = AddChar::new(&k, 1);
    for j in 1..8 {
        let chi = MultChar::new(&k, j);
        let g = gauss_sum(&psi, &chi)?;
        let (re, im) = g.approx();
        println!("G(ψ, χ^{j}) over {k}: {re:+.4} {im:+.4}i, |G|² = {}", g.abs_square());
    }

    // chars of order r | q+1 over GF(q²) have rational Gauss sums
    for (q, r) in [(3, 4), (3, 2), (5, 3), (7, 8)] {
        let rep = stickelberger_check(q, r)?;
        println!(
            "q={q} r={r}: expected {}, {} sums checked, ok={}",
            stickelberger_value(q, r)?,
            rep.checked,
            rep.passed()
        );
    }
    Ok(())
}
