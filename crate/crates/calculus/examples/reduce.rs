//! Type checking and step-by-step reduction, including the derivative of a
//! function and the `∂let` rule at work.
//!
//! `cargo run -p cohdiff-calculus --example reduce`

use cohdiff_calculus::parse::show_context;
use cohdiff_calculus::{dlet, parse, parse_judgment, trace, typecheck, Reducer};

fn main() -> cohdiff_calculus::Result<()> {
    let programs =
        ["(\\x:i. succ (succ x)) #1", "pi1^0 (D (\\x:i. succ x) (iota1^0 #2))", "D (\\x:i. x)", "f : i -> i |- D f"];
    for src in programs {
        let (ctx, m) = parse_judgment(src)?;
        let ty = typecheck(&ctx, &m)?;
        let prefix = if ctx.is_empty() { String::new() } else { format!("{} |- ", show_context(&ctx)) };
        println!("{prefix}{m} : {ty}");
        let (steps, done) = trace(&Reducer::default(), &m, 200);
        for (rule, t) in &steps {
            println!("  --> {t}    [{rule}]");
        }
        println!("  {}\n", if done { "normal form" } else { "out of fuel" });
    }

    // `∂let x = N in M` differentiates M along the variable x.
    let n = parse("iota0^0 #1")?;
    let m = parse("succ x")?;
    println!("dlet x = {n} in {m}  ==  {}", dlet("x", &n, &m));

    // Sums are only typable when the summands are related by summability.
    let (ctx, m) = parse_judgment("x : i, y : i |- x + y")?;
    match typecheck(&ctx, &m) {
        Ok(ty) => println!("{m} : {ty}"),
        Err(e) => println!("{m} is rejected: {e}"),
    }
    Ok(())
}
