//! Fields of traces: exact membership in Q, the quadratic field K, Q(χ), and
//! the ±q^k test on cleared values.
//!
//! cargo run --example memberships

use weilsum::tracefn::{sp_total_trace, su_total_trace, trace_membership, SpForm, SuForm, Target};
use weilsum::{make_field, AddChar, Result};

fn main() -> Result<()> {
    let psi = AddChar::new(&make_field(3, 1)?, 1);
    let e = make_field(3, 2)?;
    println!("{:>6} {:>4} {:>4} | {:>4} {:>6}", "u", "Sp:Q", "Sp:K", "SU:Q", "SU:±3^k");
    for u in e.enumerate() {
        let sp = sp_total_trace(&psi, 3, 2, 1, &u, SpForm::Pullback)?;
        let su = su_total_trace(&psi, 3, 3, 1, &u, SuForm::W)?;
        println!(
            "{:>6} {:>4} {:>4} | {:>4} {:>6}",
            u.to_string(),
            trace_membership(&sp, Target::Q),
            trace_membership(&sp, Target::K),
            trace_membership(&su, Target::Q),
            trace_membership(&su, Target::PmPowerOf(3)),
        );
    }
    Ok(())
}
