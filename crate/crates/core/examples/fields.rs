//! Canonical field models, discrete logs, embeddings, trace and norm.
//!
//! cargo run --example fields

use weilsum::{make_field, Result};

fn main() -> Result<()> {
    for (p, f) in [(2, 3), (3, 2), (5, 2), (3, 4)] {
        let k = make_field(p, f)?;
        println!("{k}: modulus {:?}, generator {}", k.modulus(), k.generator());
    }

    let (k, e) = (make_field(3, 2)?, make_field(3, 4)?);
    let x = e.generator().pow(17);
    println!("x = g^17 in {e}: dlog {}", x.dlog()?);
    println!("Tr(x) to {k} = {}, N(x) to {k} = {}", x.rel_trace(&k)?, x.rel_norm(&k)?);

    let y = k.generator();
    let ey = y.embed(&e)?;
    println!("{y} in {k} embeds as {ey}; Frobenius^2 fixes it: {}", ey.frobenius(9)? == ey);
    Ok(())
}
