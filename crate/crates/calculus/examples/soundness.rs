//! The relational denotation of terms, and a soundness sweep: every step of
//! reduction on a generated corpus must preserve the denotation.
//!
//! `cargo run --release -p cohdiff-calculus --example soundness`

use cohdiff_calculus::corpus::corpus;
use cohdiff_calculus::{interp_term, parse, soundness_check, Reducer, SemEnv, SoundnessReport};

fn main() -> cohdiff_calculus::Result<()> {
    let env = SemEnv::default();
    let m = parse("pi1^0 (D (\\x:i. succ x) (iota1^0 #2))")?;
    println!("[[{m}]] =\n{}", interp_term(&Vec::new(), &m, &env)?);

    let mut total = SoundnessReport::default();
    for j in corpus(5, 100, 8) {
        total.absorb(soundness_check(&Reducer::default(), &j.ctx, &j.term, &env, 200)?);
    }
    println!(
        "corpus: {} steps, {} compared, {} skipped, {} violations",
        total.steps,
        total.checked,
        total.skipped,
        total.violations.len()
    );
    for (rule, k) in &total.rule_counts {
        println!("  {rule:<12} {k}");
    }
    Ok(())
}
