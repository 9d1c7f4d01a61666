//! Running a verification suite from code and reading the report.
//!
//! cargo run --release --example suite_runner [suite]

use weilsum::suite::{run_suite, Format, Grid, SuiteConfig};
use weilsum::Result;

fn main() -> Result<()> {
    let name = std::env::args().nth(1).unwrap_or_else(|| "stickelberger".into());
    let report = run_suite(&name, &SuiteConfig { jobs: 2, ..Default::default() })?;
    println!("{name}: {} rows, {} failed", report.rows.len(), report.failures().count());
    print!("{}", report.render(Format::Csv)?);

    let grid = Grid { q: Some(5), ..Default::default() };
    let narrowed = run_suite("stickelberger", &SuiteConfig { grid, ..Default::default() })?;
    println!("q=5 only: exit code {}", narrowed.exit_code());
    Ok(())
}
