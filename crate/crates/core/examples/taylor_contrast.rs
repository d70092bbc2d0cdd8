//! The derivative `D̂s` of the Kleisli maps `s = {([a], b)}` and
//! `s' = {([a, a], b)}` in coherence spaces and in non-uniform coherence
//! spaces. In COH `s'` is constant up to first order: its derivative has no
//! linear part, because `[0·a, 1·a]` is not a point of `!S E`.
//!
//! `cargo run -p cohdiff --example taylor_contrast`

use cohdiff::differential::dhat;
use cohdiff::text::{parse_rel, print_rel};
use cohdiff::{Atom, Kind, Space};

fn main() -> cohdiff::Result<()> {
    let s = parse_rel("[a] ↦ b")?.rel;
    let s2 = parse_rel("[a, a] ↦ b")?.rel;
    for kind in [Kind::Coh, Kind::Nucs] {
        let e = Space::flat("E", kind, vec![Atom::base("a")]);
        for (name, f) in [("s", &s), ("s'", &s2)] {
            let d = dhat(f, &e);
            let linear = d.pairs().iter().any(|(_, b)| b.as_tag().is_some_and(|(i, _)| i == 1));
            println!("{kind}: D̂{name}  (linear part: {})", if linear { "yes" } else { "none" });
            print!("{}", print_rel(&d));
        }
    }
    Ok(())
}
