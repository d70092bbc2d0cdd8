//! Spaces and relations in the textual `.space` / `.rel` formats.
//!
//! `cargo run -p cohdiff --example text_formats`

use cohdiff::differential::dhat;
use cohdiff::text::{parse_rel, parse_space_expr, parse_space_file, print_rel};
use cohdiff::Kind;

const SPACES: &str = "\
# a coherence space with two coherent atoms
space E kind=coh atoms{a, b} scoh{(a, b)}
space A kind=coh atoms{a}
space F = E & E
";

const REL: &str = "\
source = !A
target = E
[a, a] ↦ b
[a] ↦ a
";

fn main() -> cohdiff::Result<()> {
    let env = parse_space_file(SPACES)?;
    for name in env.names() {
        println!("{name} = {}", env.get(name).expect("listed"));
    }
    let file = parse_rel(REL)?;
    let src = parse_space_expr(file.source.as_deref().unwrap_or("!A"), &env, Kind::Coh)?;
    let tgt = parse_space_expr(file.target.as_deref().unwrap_or("E"), &env, Kind::Coh)?;
    println!("{src} → {tgt}: morphism = {}", src.is_morphism(&tgt, &file.rel));
    let a = src.bang_arg().expect("a Kleisli source");
    print!("D̂s : !S{a} → S{tgt}\n{}", print_rel(&dhat(&file.rel, a)));
    Ok(())
}
