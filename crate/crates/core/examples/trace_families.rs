//! The Sp and SU trace families, evaluated exactly, with their clearing factors.
//!
//! cargo run --example trace_families

use weilsum::tracefn::{sp_exponents, sp_total_trace, su_exponents, su_total_trace, SpForm, SuForm};
use weilsum::{make_field, AddChar, Result};

fn main() -> Result<()> {
    let psi = AddChar::new(&make_field(3, 1)?, 1);
    let e = make_field(3, 2)?;

    let (a, b) = sp_exponents(3, 2, 1)?;
    println!("Sp family q=3 n=2 m=1: A={a} B={b}");
    for u in e.units().into_iter().take(4) {
        let t = sp_total_trace(&psi, 3, 2, 1, &u, SpForm::Pullback)?;
        println!("  u={u}: raw {} (clearing |c|² = {})", t.value, t.clearing.abs_square());
    }

    let (a, b) = su_exponents(3, 3, 1)?;
    println!("SU family q=3 n=3 m=1: A={a} B={b}");
    for form in [SuForm::W, SuForm::WBis, SuForm::H] {
        let t = su_total_trace(&psi, 3, 3, 1, &e.one(), form)?;
        println!("  {form:?} at u=1: raw {}, clearing {}", t.value, t.clearing.value()?);
    }
    Ok(())
}
