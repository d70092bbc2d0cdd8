//! Coherent differentiation: the coalgebra `∂̄ : I → !I`, the map
//! `∂̃ = m2 ∘ (id ⊗ ∂̄) : !X ⊗ I → !(X ⊗ I)`, the distributive law
//! `∂ : !S X → S !X`, the Kleisli functor `D̂`, partial derivatives and the
//! local derivative of a stable function at a clique.
//!
//! `∂` has two independent implementations: the closed form
//! ([`dpartial`], a tag-rewriting rule) and the composite obtained from
//! `∂̄` by currying ([`dpartial_via_dbar`]). Atoms of `!S X` are multisets
//! of tagged atoms, so the pair `(m0, m1)` of the usual presentation is
//! written `0·m0 + 1·m1`.

use std::collections::BTreeSet;

use crate::atom::{Atom, Multiset};
use crate::error::Result;
use crate::exponential::materialize;
use crate::expr::{p, partial, split_tags, Evaluator, Expr, Prim};
use crate::rel::{Budget, Rel};
use crate::space::{Kind, Space};

/// The interval `I = 1 & 1` of the given kind.
fn interval(kind: Kind) -> Space {
    Space::interval(kind)
}

/// `∂̄ = {(0·*, k[0·*])} ∪ {(1·*, k[0·*] + [1·*])}`, truncated to outputs
/// of degree at most `budget.max_degree`. The formula is the same in all
/// three models.
pub fn dbar(kind: Kind, budget: Budget) -> Result<Rel> {
    let i = interval(kind);
    Ok(materialize(&p(Prim::Dbar), &i, budget)?.labelled(i.to_string(), i.bang().to_string()))
}

/// Expression for `∂̃_X = m2 ∘ (id ⊗ ∂̄) : !X ⊗ I → !(X ⊗ I)`.
pub fn dtilde_expr() -> Expr {
    p(Prim::M2).after(&p(Prim::Dbar).id_tensor())
}

/// `∂̃_X` on source atoms within `budget`.
pub fn dtilde(x: &Space, budget: Budget) -> Result<Rel> {
    let i = interval(x.kind());
    let src = Space::tensor(&x.bang(), &i);
    let tgt = Space::tensor(x, &i).bang();
    Ok(materialize(&dtilde_expr(), &src, budget)?.labelled(src.to_string(), tgt.to_string()))
}

/// The closed form of `∂_E : !S E → S !E`:
/// `0·m0 ↦ 0·m0` and `0·m0 + [1·a] ↦ 1·(m0 + [a])`, where in COH the
/// latter requires `a ∉ Supp m0` and `m0 + [a]` a multiclique.
pub fn dpartial(e: &Space, budget: Budget) -> Result<Rel> {
    let src = e.s().bang();
    Ok(materialize(&partial(e.kind(), Some(e)), &src, budget)?.labelled(src.to_string(), e.bang().s().to_string()))
}

/// Expression for `∂` derived from `∂̄`: the transpose of
/// `!ev ∘ m2 ∘ (id ⊗ ∂̄) : !(I ⊸ X) ⊗ I → !X`, conjugated by the canonical
/// isomorphisms `S ≅ (I ⊸ –)`.
pub fn dpartial_via_dbar_expr() -> Expr {
    let body = p(Prim::Ev(0)).bang().after(&p(Prim::M2)).after(&p(Prim::Dbar).id_tensor());
    let cur = Expr::curry(&body, vec![Atom::point(0), Atom::point(1)]);
    Expr::seq([p(Prim::CanIso).bang(), cur, p(Prim::CanIsoInv)])
}

/// `∂_E` computed through [`dpartial_via_dbar_expr`].
pub fn dpartial_via_dbar(e: &Space, budget: Budget) -> Result<Rel> {
    let src = e.s().bang();
    Ok(materialize(&dpartial_via_dbar_expr(), &src, budget)?.labelled(src.to_string(), e.bang().s().to_string()))
}

/// `D̂f = S f ∘ ∂_E` for `f : !E → F`, by the explicit formula
/// `{(0·m, 0·b) | (m, b) ∈ f} ∪ {(0·m0 + [1·a], 1·b) | (m0 + [a], b) ∈ f}`
/// (in COH with `a ∉ Supp m0`). The result is exact: no truncation is
/// involved.
pub fn dhat(f: &Rel, e: &Space) -> Rel {
    let coh = e.kind() == Kind::Coh;
    let mut out = Rel::empty().labelled(format!("!S({})", e), format!("S({})", f.tgt_label));
    for (m, b) in f.pairs() {
        let Some(m) = m.as_mset() else { continue };
        out.insert(Atom::mset(m.map(|x| Atom::tag(0, x.clone()))), Atom::tag(0, b.clone()));
        for a in m.support() {
            let m0 = m.remove_one(a).expect("a is in the support");
            if coh && m0.count(a) > 0 {
                continue;
            }
            let input = m0.map(|x| Atom::tag(0, x.clone())).add(Atom::tag(1, a.clone()));
            out.insert(Atom::mset(input), Atom::tag(1, b.clone()));
        }
    }
    out
}

/// Expression for `D̂f`.
pub fn dhat_expr(f: &Expr, e: &Space) -> Expr {
    Expr::dhat(f, e.kind(), Some(e))
}

/// Expression for the linear map `X0 & S X1 → S(X0 & X1)` underlying the
/// Kleisli strength (for `arg = 1`), or its symmetric twin
/// `S X0 & X1 → S(X0 & X1)` (for `arg = 0`).
pub fn with_strength_expr(arg: u8) -> Expr {
    let inj = p(Prim::Inj(0));
    let side = if arg == 1 { Expr::with(&inj, &Expr::id()) } else { Expr::with(&Expr::id(), &inj) };
    p(Prim::Flip).after(&side)
}

/// Expression for the partial derivative of `f : !(X0 & X1) → Y` in
/// argument `arg`: `D̂f` precomposed with the Kleisli strength.
pub fn partial_derivative_expr(f: &Expr, arg: u8, x0: &Space, x1: &Space) -> Expr {
    let x = Space::with(x0, x1);
    dhat_expr(f, &x).after(&with_strength_expr(arg).bang())
}

/// The partial derivative of `f : !(X0 & X1) → Y` in argument `arg`
/// (`0` or `1`), as a relation on source atoms within `budget`. Its source
/// is `!(S X0 & X1)` for `arg = 0` and `!(X0 & S X1)` for `arg = 1`.
pub fn partial_derivative(f: &Rel, arg: u8, x0: &Space, x1: &Space, budget: Budget) -> Result<Rel> {
    let src = if arg == 0 { Space::with(&x0.s(), x1).bang() } else { Space::with(x0, &x1.s()).bang() };
    materialize(&partial_derivative_expr(&Expr::lit(f.clone()), arg, x0, x1), &src, budget)
}

/// `Fun s (x) = {b | ∃ m, Supp m ⊆ x, (m, b) ∈ s}` for `s : !E → F`.
pub fn fun_apply(s: &Rel, x: &BTreeSet<Atom>) -> BTreeSet<Atom> {
    s.pairs()
        .iter()
        .filter(|(m, _)| m.as_mset().is_some_and(|m| m.support().all(|a| x.contains(a))))
        .map(|(_, b)| b.clone())
        .collect()
}

/// The web of the local sub-coherence space `E_x`: atoms `a ∉ x` with
/// `x ∪ {a}` a clique.
pub fn local_web(e: &Space, web: &[Atom], x: &BTreeSet<Atom>) -> BTreeSet<Atom> {
    web.iter().filter(|a| !x.contains(*a) && e.is_clique(x.iter().chain([*a]))).cloned().collect()
}

/// The derivative of `s : !E → F` at the clique `x`:
/// `{(a, b) | a ∈ Web E_x, ∃ m, Supp m ⊆ x, (m + [a], b) ∈ s}`.
///
/// `web` lists the atoms of `E` that are considered.
pub fn local_derivative(s: &Rel, e: &Space, web: &[Atom], x: &BTreeSet<Atom>) -> Rel {
    let ex = local_web(e, web, x);
    let mut out = Rel::empty().labelled(format!("({e})_x"), s.tgt_label.clone());
    for (m, b) in s.pairs() {
        let Some(m) = m.as_mset() else { continue };
        for a in m.support() {
            if !ex.contains(a) {
                continue;
            }
            let rest = m.remove_one(a).expect("a is in the support");
            if rest.support().all(|y| x.contains(y)) {
                out.insert(a.clone(), b.clone());
            }
        }
    }
    out
}

/// Splits a clique of `S E` (a set of tagged atoms) into `(x, u)`.
pub fn split_clique(w: &BTreeSet<Atom>) -> (BTreeSet<Atom>, BTreeSet<Atom>) {
    let mut x = BTreeSet::new();
    let mut u = BTreeSet::new();
    for a in w {
        match a.as_tag() {
            Some((0, y)) => {
                x.insert(y.clone());
            }
            Some((_, y)) => {
                u.insert(y.clone());
            }
            None => {}
        }
    }
    (x, u)
}

/// All cliques of `space` made of atoms from `web`, of size at most
/// `max_size`.
pub fn cliques(space: &Space, web: &[Atom], max_size: usize) -> Vec<BTreeSet<Atom>> {
    let mut out = vec![BTreeSet::new()];
    fn go(space: &Space, web: &[Atom], start: usize, cur: &mut Vec<Atom>, max: usize, out: &mut Vec<BTreeSet<Atom>>) {
        if cur.len() == max {
            return;
        }
        for i in start..web.len() {
            let a = &web[i];
            if space.is_clique(cur.iter().chain([a])) {
                cur.push(a.clone());
                out.push(cur.iter().cloned().collect());
                go(space, web, i + 1, cur, max, out);
                cur.pop();
            }
        }
    }
    go(space, web, 0, &mut Vec::new(), max_size, &mut out);
    out
}

/// Checks `Fun(D̂s)(x, u) = (Fun s(x), ∂s(x)/∂x · u)` for every clique
/// `(x, u)` of `S E` over `web` with `|x| + |u| ≤ max_size`. Returns the
/// first clique where the two sides differ.
pub fn check_clique_derivative(s: &Rel, e: &Space, web: &[Atom], max_size: usize) -> Option<BTreeSet<Atom>> {
    let ds = dhat(s, e);
    let sweb: Vec<Atom> = web.iter().flat_map(|a| [Atom::tag(0, a.clone()), Atom::tag(1, a.clone())]).collect();
    for w in cliques(&e.s(), &sweb, max_size) {
        let lhs = fun_apply(&ds, &w);
        let (x, u) = split_clique(&w);
        let mut rhs: BTreeSet<Atom> = fun_apply(s, &x).into_iter().map(|b| Atom::tag(0, b)).collect();
        let d = local_derivative(s, e, web, &x);
        rhs.extend(crate::space::matapp(&d, &u).into_iter().map(|b| Atom::tag(1, b)));
        if lhs != rhs {
            return Some(w);
        }
    }
    None
}

/// Whether `c : I → !I` (given on outputs of degree at most `degree`)
/// satisfies the three comonoid-morphism equations
/// `der ∘ c = id`, `weak ∘ c = π0` and `contr ∘ c = (c ⊗ c) ∘ Δ`,
/// compared on outputs of degree at most `degree`.
pub fn is_lafont_coalgebra(c: &Rel, degree: u32) -> bool {
    let i_web = [Atom::point(0), Atom::point(1)];
    let lit = Expr::lit(c.clone());
    let mut ev = Evaluator::new(1_000_000);
    // `der ∘ c` at output degree `k` only reads outputs of `c` of degree
    // `k + 1`, hence the smaller cap for the first equation.
    let checks = [
        (p(Prim::Der).after(&lit), Expr::id(), degree.saturating_sub(1)),
        (p(Prim::Weak).after(&lit), Expr::lit([(Atom::point(0), Atom::star())].into_iter().collect()), degree),
        (p(Prim::Contr).after(&lit), Expr::tensor(&lit, &lit).after(&p(Prim::Delta)), degree),
    ];
    for (l, r, cap) in &checks {
        for a in &i_web {
            match (ev.image(l, a, *cap), ev.image(r, a, *cap)) {
                (Ok(x), Ok(y)) if x == y => {}
                _ => return false,
            }
        }
    }
    true
}

/// Brute-force search over all relations `I → !I` with outputs of degree
/// at most `degree` (in the given model) for those satisfying
/// [`is_lafont_coalgebra`]. Only feasible for `degree ≤ 2`.
pub fn lafont_solutions(kind: Kind, degree: u32) -> Result<Vec<Rel>> {
    let i = interval(kind);
    let targets = i.bang().enumerate(Budget::degree(degree))?;
    let candidates: Vec<(Atom, Atom)> = [Atom::point(0), Atom::point(1)]
        .into_iter()
        .flat_map(|a| targets.iter().map(move |b| (a.clone(), b.clone())))
        .collect();
    assert!(candidates.len() <= 20, "search space too large");
    let mut out = Vec::new();
    for mask in 0u32..(1 << candidates.len()) {
        let c: Rel =
            candidates.iter().enumerate().filter(|(k, _)| mask & (1 << k) != 0).map(|(_, pr)| pr.clone()).collect();
        if !i.is_morphism(&i.bang(), &c) {
            continue;
        }
        if is_lafont_coalgebra(&c, degree) {
            out.push(c);
        }
    }
    Ok(out)
}

/// Splits an atom of `!S E` into its 0- and 1-parts.
pub fn split_sbang(a: &Atom) -> Option<(Multiset, Multiset)> {
    a.as_mset().and_then(split_tags)
}
