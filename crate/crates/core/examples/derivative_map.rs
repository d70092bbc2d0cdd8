//! The differentiation `∂ : !S E → S!E` on a two-atom coherence space,
//! computed both in closed form and through `∂̄ : !S 1 → S!1`, together with
//! the uniqueness of `∂̄` among Lafont-coalgebra structures on `S 1`.
//!
//! `cargo run -p cohdiff --example derivative_map`

use cohdiff::differential::{dbar, dpartial, dpartial_via_dbar, lafont_solutions};
use cohdiff::{Atom, Budget, Kind, Space};

fn main() -> cohdiff::Result<()> {
    let budget = Budget::degree(2);
    let (a, b) = (Atom::base("a"), Atom::base("b"));
    let e = Space::base("E", Kind::Coh, vec![a.clone(), b.clone()], &[(a, b)], &[])?;

    println!("∂̄ (degree ≤ {}):", budget.max_degree);
    print!("{}", dbar(Kind::Coh, budget)?);

    let d = dpartial(&e, budget)?;
    println!("\n∂ on {e} ({} pairs):", d.len());
    print!("{d}");
    println!("\nagrees with the ∂̄ presentation: {}", d == dpartial_via_dbar(&e, budget)?);

    for kind in [Kind::Coh, Kind::Nucs] {
        let sols = lafont_solutions(kind, 2)?;
        let unique = sols.len() == 1 && sols[0] == dbar(kind, Budget::degree(2))?;
        println!("{kind}: {} coalgebra structure(s) up to degree 2, ∂̄ unique: {unique}", sols.len());
    }
    Ok(())
}
