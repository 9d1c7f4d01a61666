//! Second moments of binomial families: the exact gcd prediction against
//! the empirical value up a tower of fields, plus Artin-Schreier reduction.
//!
//! cargo run --release --example moments

use weilsum::moments::{as_reduce, decomposition_check, empirical_m2, exact_m2};
use weilsum::tracefn::SumSpec;
use weilsum::{make_field, Result};

fn main() -> Result<()> {
    let tower = [make_field(3, 2)?, make_field(3, 4)?, make_field(3, 6)?];
    for (a, b) in [(10, 4), (28, 4), (5, 2)] {
        let spec = SumSpec::binomial(3, a, b)?;
        let rep = empirical_m2(&spec, &tower, false)?;
        let levels: Vec<String> = rep.empirical.iter().map(|r| r.to_string()).collect();
        println!("x^{a} + t x^{b}: predicted {}, empirical [{}]", exact_m2(&spec), levels.join(", "));
        let d = decomposition_check(&spec, &tower[0])?;
        println!("  character decomposition over GF(9): {}", d.passed());
    }

    let k = make_field(3, 2)?;
    let red = as_reduce(&k, &[(k.one(), 9), (k.generator(), 6), (k.one(), 4)])?;
    println!("x^9 + g x^6 + x^4 reduces to {:?} (gcd {})", red.monomials(), red.gcd_deg());
    Ok(())
}
