//! The resource comonad `!`: functorial action, structural maps, promotion
//! and Kleisli composition.
//!
//! Structural maps are available both as lazy [`Expr`] primitives (used by
//! the law checker) and, through [`structural`], as finite relations
//! truncated to a [`Budget`].

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::atom::{Atom, Multiset};
use crate::error::{Error, Result};
use crate::expr::{p, Evaluator, Expr, Prim};
use crate::rel::{Budget, Rel};
use crate::space::{Kind, Space};

/// Names of the structural maps of the resource comonad.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum StructuralMap {
    /// `der_E : !E → E`.
    Der,
    /// `dig_E : !E → !!E`.
    Dig,
    /// `weak_E : !E → 1`.
    Weak,
    /// `contr_E : !E → !E ⊗ !E`.
    Contr,
    /// `seely0 : 1 → !⊤`.
    Seely0,
    /// `seely2 : !E ⊗ !F → !(E & F)`.
    Seely2,
    /// `seely2⁻¹ : !(E & F) → !E ⊗ !F`.
    Seely2Inv,
    /// `m0 : 1 → !1`.
    M0,
    /// `m2 : !E ⊗ !F → !(E ⊗ F)`.
    M2,
}

impl StructuralMap {
    /// Every structural map.
    pub const ALL: [StructuralMap; 9] = [
        StructuralMap::Der,
        StructuralMap::Dig,
        StructuralMap::Weak,
        StructuralMap::Contr,
        StructuralMap::Seely0,
        StructuralMap::Seely2,
        StructuralMap::Seely2Inv,
        StructuralMap::M0,
        StructuralMap::M2,
    ];

    /// The lazy expression for this map.
    pub fn expr(self) -> Expr {
        p(match self {
            StructuralMap::Der => Prim::Der,
            StructuralMap::Dig => Prim::Dig,
            StructuralMap::Weak => Prim::Weak,
            StructuralMap::Contr => Prim::Contr,
            StructuralMap::Seely0 => Prim::Seely0,
            StructuralMap::Seely2 => Prim::Seely2,
            StructuralMap::Seely2Inv => Prim::Seely2Inv,
            StructuralMap::M0 => Prim::M0,
            StructuralMap::M2 => Prim::M2,
        })
    }

    /// Source and target spaces, given the parameter spaces `e` (and `f`
    /// for the binary maps; `e` is reused when absent).
    pub fn signature(self, e: &Space, f: Option<&Space>) -> (Space, Space) {
        let f = f.unwrap_or(e);
        let k = e.kind();
        match self {
            StructuralMap::Der => (e.bang(), e.clone()),
            StructuralMap::Dig => (e.bang(), e.bang().bang()),
            StructuralMap::Weak => (e.bang(), Space::one(k)),
            StructuralMap::Contr => (e.bang(), Space::tensor(&e.bang(), &e.bang())),
            StructuralMap::Seely0 => (Space::one(k), Space::top(k).bang()),
            StructuralMap::Seely2 => (Space::tensor(&e.bang(), &f.bang()), Space::with(e, f).bang()),
            StructuralMap::Seely2Inv => (Space::with(e, f).bang(), Space::tensor(&e.bang(), &f.bang())),
            StructuralMap::M0 => (Space::one(k), Space::one(k).bang()),
            StructuralMap::M2 => (Space::tensor(&e.bang(), &f.bang()), Space::tensor(e, f).bang()),
        }
    }
}

impl fmt::Display for StructuralMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            StructuralMap::Der => "der",
            StructuralMap::Dig => "dig",
            StructuralMap::Weak => "weak",
            StructuralMap::Contr => "contr",
            StructuralMap::Seely0 => "seely0",
            StructuralMap::Seely2 => "seely2",
            StructuralMap::Seely2Inv => "seely2_inv",
            StructuralMap::M0 => "m0",
            StructuralMap::M2 => "m2",
        };
        f.write_str(s)
    }
}

impl FromStr for StructuralMap {
    type Err = Error;
    fn from_str(s: &str) -> Result<StructuralMap> {
        StructuralMap::ALL
            .into_iter()
            .find(|m| m.to_string() == s)
            .ok_or_else(|| Error::InvalidSpace(format!("unknown structural map `{s}`")))
    }
}

/// Evaluates `e` on every atom of `src` within `budget`, keeping outputs
/// of degree at most `budget.max_degree`.
pub fn materialize(e: &Expr, src: &Space, budget: Budget) -> Result<Rel> {
    let domain = src.enumerate(budget)?;
    let mut ev = Evaluator::new(budget.max_atoms);
    ev.relation(e, &domain, budget.max_degree)
}

/// The structural map `name` at `e` (and `f`), as a relation on atoms of
/// degree at most `budget.max_degree` on both sides.
pub fn structural(name: StructuralMap, e: &Space, f: Option<&Space>, budget: Budget) -> Result<Rel> {
    let (src, tgt) = name.signature(e, f);
    Ok(materialize(&name.expr(), &src, budget)?.labelled(src.to_string(), tgt.to_string()))
}

/// `!s = {([a1…an], [b1…bn]) | (ai, bi) ∈ s}` for inputs of degree at most
/// `budget.max_degree`. In COH only inputs whose support is a clique of
/// `src` are kept.
pub fn bang_morphism(s: &Rel, src: &Space, budget: Budget) -> Result<Rel> {
    let inputs: Vec<Atom> = s.domain().into_iter().collect();
    let mut out = Rel::empty().labelled(format!("!({})", s.src_label), format!("!({})", s.tgt_label));
    for m in crate::atom::multisets_up_to(&inputs, budget.max_degree) {
        if src.kind() == Kind::Coh && !src.is_clique(m.support()) {
            continue;
        }
        let mut acc: BTreeSet<Multiset> = BTreeSet::from([Multiset::empty()]);
        for a in m.elements() {
            let img = s.image(&a);
            let mut next = BTreeSet::new();
            for ms in &acc {
                for b in &img {
                    next.insert(ms.add(b.clone()));
                }
            }
            acc = next;
            if acc.len() > budget.max_atoms {
                return Err(Error::BudgetExceeded { what: "functorial image of !".into(), limit: budget.max_atoms });
            }
        }
        for ms in acc {
            out.insert(Atom::mset(m.clone()), Atom::mset(ms));
        }
    }
    Ok(out)
}

/// Kleisli composition of `s : !E → F` and `t : !F → G`, computed by the
/// direct formula `{(m1 + … + mn, c) | ([b1…bn], c) ∈ t, (mi, bi) ∈ s}`,
/// keeping inputs of degree at most `budget.max_degree`.
pub fn kleisli_compose(s: &Rel, t: &Rel, src: &Space, budget: Budget) -> Result<Rel> {
    let mut out = Rel::empty().labelled(s.src_label.clone(), t.tgt_label.clone());
    let by_out: Vec<(Atom, Atom)> = s.pairs().iter().cloned().collect();
    for (mb, c) in t.pairs() {
        let Some(bs) = mb.as_mset() else { continue };
        let mut acc: BTreeSet<Multiset> = BTreeSet::from([Multiset::empty()]);
        for b in bs.elements() {
            let mut next = BTreeSet::new();
            for m in &acc {
                for (mi, bi) in &by_out {
                    if *bi != b {
                        continue;
                    }
                    if let Some(mi) = mi.as_mset() {
                        let sum = m.sum(mi);
                        if sum.nested_degree() <= budget.max_degree {
                            next.insert(sum);
                        }
                    }
                }
            }
            acc = next;
        }
        for m in acc {
            if src.kind() == Kind::Coh && !src.is_clique(m.support()) {
                continue;
            }
            out.insert(Atom::mset(m), c.clone());
        }
    }
    Ok(out)
}

/// Promotion `!s ∘ dig_E` of `s : !E → F`, on inputs of degree at most
/// `budget.max_degree` and outputs of degree at most `budget.max_degree`.
pub fn promotion(s: &Rel, src: &Space, budget: Budget) -> Result<Rel> {
    let e = Expr::lit(s.clone()).promote();
    materialize(&e, &src.bang(), budget)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ms(xs: &[&str]) -> Atom {
        Atom::mset(xs.iter().map(|x| crate::text::parse_atom(x).unwrap()).collect())
    }

    #[test]
    fn der_on_bang_one() {
        let one = Space::one(Kind::Coh);
        let d = structural(StructuralMap::Der, &one, None, Budget::degree(2)).unwrap();
        assert_eq!(d, [(ms(&["*"]), Atom::star())].into_iter().collect());
    }

    #[test]
    fn contr_splits() {
        let e = Space::flat("E", Kind::Nucs, vec![Atom::base("a"), Atom::base("b")]);
        let c = structural(StructuralMap::Contr, &e, None, Budget::degree(2)).unwrap();
        assert_eq!(c.image(&ms(&["a", "b"])).len(), 4);
    }

    #[test]
    fn bang_of_empty_is_unit() {
        let e = Space::one(Kind::Rel);
        let r = bang_morphism(&Rel::empty(), &e, Budget::degree(3)).unwrap();
        assert_eq!(r, [(ms(&[]), ms(&[]))].into_iter().collect());
    }

    #[test]
    fn bang_doubles() {
        let e = Space::flat("E", Kind::Coh, vec![Atom::base("a")]);
        let s: Rel = [(Atom::base("a"), Atom::base("b"))].into_iter().collect();
        let r = bang_morphism(&s, &e, Budget::degree(2)).unwrap();
        assert!(r.contains(&ms(&["a", "a"]), &ms(&["b", "b"])));
    }

    #[test]
    fn promotion_of_zero() {
        let e = Space::one(Kind::Coh);
        let r = promotion(&Rel::empty(), &e, Budget::degree(3)).unwrap();
        assert_eq!(r, [(ms(&[]), ms(&[]))].into_iter().collect());
    }
}
