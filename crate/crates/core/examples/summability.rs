//! Summability of morphisms: witnesses, sums and the failure mode.
//!
//! `cargo run -p cohdiff --example summability`

use cohdiff::summability::{nary_summable, sum, witness};
use cohdiff::text::parse_rel;
use cohdiff::{Atom, Kind, Space};

fn main() -> cohdiff::Result<()> {
    let (a, b) = (Atom::base("a"), Atom::base("b"));
    let one = Space::one(Kind::Coh);
    let e = Space::flat("E", Kind::Coh, vec![a, b]);

    // Two points of the discrete space E are never coherent, so the maps
    // 1 → E picking them out are summable only if one of them is zero.
    let fa = parse_rel("* ↦ a")?.rel;
    let fb = parse_rel("* ↦ b")?.rel;
    match witness(&fa, &fb, &one, &e) {
        Ok(w) => println!("witness:\n{}", w.witness),
        Err(why) => println!("{{*↦a}} and {{*↦b}} are not summable: {why}"),
    }
    let zero = parse_rel("")?.rel;
    let w = witness(&fa, &zero, &one, &e).expect("0 is summable with anything");
    print!("witness of {{*↦a}} and 0:\n{}", w.witness);
    println!("sum: {}", sum(&fa, &zero, &one, &e)?.to_string().trim());

    // With a coherent pair the sum exists.
    let (c, d) = (Atom::base("c"), Atom::base("d"));
    let f = Space::base("F", Kind::Coh, vec![c.clone(), d.clone()], &[(c, d)], &[])?;
    let fc = parse_rel("* ↦ c")?.rel;
    let fd = parse_rel("* ↦ d")?.rel;
    print!("witness of {{*↦c}} and {{*↦d}} in {f}:\n{}", witness(&fc, &fd, &one, &f).expect("coherent").witness);
    print!("three-term sum with a zero:\n{}", nary_summable(&[fc, zero, fd], &one, &f)?);
    Ok(())
}
