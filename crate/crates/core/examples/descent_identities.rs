//! Indexed sums for the small, big and sharp roles, and the identities tying
//! the curve, z-form and Kummer pullback presentations together.
//!
//! cargo run --example descent_identities

use weilsum::tracefn::{
    eval_indexed, eval_zform, form_equivalence_check, kummer_pullback_check, sp_identity_checks, BezoutPair,
    Constraint, Role, Strategy,
};
use weilsum::{make_field, AddChar, MultChar, Result};

fn main() -> Result<()> {
    let psi = AddChar::new(&make_field(3, 1)?, 1);
    let e = make_field(3, 2)?;
    let chi2 = MultChar::quadratic(&e)?;
    let roles = [Role::Small, Role::Big(chi2.clone()), Role::Sharp(chi2)];

    let pair = BezoutPair::new(5, 2, Constraint::None)?;
    let u = e.generator();
    for role in &roles {
        let curve = eval_indexed(&psi, 5, 2, role, &u, Strategy::Auto)?;
        let z = eval_zform(&psi, &pair, role, &u)?;
        println!("{}: curve form {} | z-form {}", role.name(), curve.value, z.value);
    }

    for role in &roles {
        let f = form_equivalence_check(&psi, 5, 2, role, &e)?;
        let (ka, kb) = kummer_pullback_check(&psi, 5, 2, role, &e)?;
        for c in [f, ka, kb] {
            println!("{:<40} {} of {} ok", c.name, c.checked - c.failures.len(), c.checked);
        }
    }

    for c in sp_identity_checks(&psi, 3, 2, 1, &e)? {
        println!("{:<40} passed={}", c.name, c.passed());
    }
    Ok(())
}
