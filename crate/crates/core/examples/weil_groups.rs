//! Finite symplectic and unitary groups from the generator catalog, Weil
//! character values as class functions, Gross tori and Frobenius fixed points.
//!
//! cargo run --release --example weil_groups

use weilsum::weilgrp::{
    find_entry, frobenius_fixed_check, gross_consistent, gu_total_weil, sp_weil_abs_sq, torus, GroupKind,
};
use weilsum::{make_field, Result};

fn main() -> Result<()> {
    for (n, q) in [(1, 3), (1, 5), (2, 3)] {
        let g = find_entry(GroupKind::Sp, n, q)?.build()?;
        let s = g.class_function("|ω|²", sp_weil_abs_sq)?.total();
        println!("Sp{}({q}): order {}, Σ|ω(g)|² = {s} = 2·|G|", 2 * n, g.order());
    }
    for (n, q) in [(2, 3), (3, 2)] {
        let g = find_entry(GroupKind::Gu, n, q)?.build()?;
        let z = g.class_function("ζ", gu_total_weil)?;
        println!("GU{n}({q}): order {}, <ζ,ζ> = {}", g.order(), z.inner_product(&z)?);
    }

    let tori = torus(&make_field(3, 2)?);
    let ok = tori.iter().map(gross_consistent).collect::<Result<Vec<_>>>()?;
    println!("GL1(9): Gross values consistent on {} of {} elements", ok.iter().filter(|b| **b).count(), ok.len());

    let r = frobenius_fixed_check(27, 3, 1)?;
    println!("σ_3 on GF(27): {} fixed points, degrees {:?}", r.fixed_count, r.degrees);
    Ok(())
}
