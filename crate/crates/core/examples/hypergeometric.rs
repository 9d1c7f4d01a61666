//! Hypergeometric bookkeeping: type, rank and weight, determinants, the
//! primitivity tests, and the standing arithmetic of the Sp and SU grids.
//!
//! cargo run --example hypergeometric

use weilsum::hyperg::{self, Context, HGKind, HGParams};
use weilsum::Result;

fn main() -> Result<()> {
    for h in [
        HGParams::small(5, 2, 3)?,
        HGParams::new(5, 2, 3, HGKind::Big { chi: 1 }, 4)?,
        HGParams::new(5, 2, 3, HGKind::Sharp { chi: 1 }, 4)?,
    ] {
        let t = h.type_rank_weight();
        println!("{:?}: type {:?} rank {} weight {} det {:?}", h.kind, t.type_pair, t.rank, t.weight, h.det_char()?);
    }
    for (a, b, p) in [(5, 2, 3), (10, 4, 3), (7, 1, 3), (4, 1, 2)] {
        println!(
            "A={a} B={b} p={p}: primitive {}, Belyi excluded {}",
            hyperg::geometrically_primitive(a, b, p),
            hyperg::belyi_excluded(a, b, p)
        );
    }

    for (ctx, q, n, m) in [(Context::Sp, 3, 2, 1), (Context::Su, 3, 3, 1), (Context::Su, 2, 3, 1)] {
        let g = hyperg::standing_gcds(q, n, m, ctx)?;
        let s = match ctx {
            Context::Sp => hyperg::splus_sp(q, n, m)?,
            Context::Su => hyperg::splus_su(q, n, m)?,
        };
        println!("{ctx:?} q={q} n={n} m={m}: gcds {}, inequalities {}", g.passed(), s.passed());
        for (k, v) in &s.data {
            println!("  {k} = {v}");
        }
        for c in s.flags() {
            println!("  flagged: {}", c.name);
        }
    }
    println!("n0(9, 2) = {}", hyperg::n0_arith(9, 2)?.n0);
    println!("SU Weil degrees n=3 q=3: {:?}", hyperg::weil_degrees(Context::Su, 3, 3)?);
    Ok(())
}
