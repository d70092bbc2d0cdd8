//! Runs every commutative diagram of the coherent differential structure
//! in all three models, with a small number of random trials each.
//!
//! `cargo run --release -p cohdiff --example law_suite`

use cohdiff::lawcheck::{run_all, RunConfig};
use cohdiff::Kind;

fn main() -> cohdiff::Result<()> {
    let cfg = RunConfig { trials: 10, seed: 7, ..RunConfig::default() };
    let mut failed = 0;
    for kind in Kind::ALL {
        println!("== {kind}");
        let mut reports = run_all(kind, cfg, None)?;
        reports.sort_by(|a, b| a.diagram.cmp(&b.diagram));
        for r in &reports {
            println!("{}", r.line());
            failed += usize::from(!r.passed());
        }
    }
    println!("{failed} failures");
    Ok(())
}
