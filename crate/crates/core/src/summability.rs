//! The summability functor `S`: projections, codiagonal, witnesses of
//! summable pairs, the monad `(S, ι0, θ)`, strengths, `Smont` and the
//! canonical presentation `S E ≅ (I ⊸ E)` with `I = 1 & 1`.
//!
//! Atoms of `S E` are tagged atoms `i·a`. Every structural map is a closed
//! tag-rewriting rule (see [`Prim`]); the law checker validates each rule
//! against its definitional composite.

use std::fmt;
use std::str::FromStr;

use crate::atom::Atom;
use crate::error::{Error, NotSummable, Result};
use crate::exponential::materialize;
use crate::expr::{p, Expr, Prim};
use crate::rel::{Budget, Rel};
use crate::space::{Kind, Space};

/// A summability witness `⟨⟨f0, f1⟩⟩ : X → S Y` together with the pair it
/// witnesses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SummabilityWitness {
    /// `{(a, i·b) | (a, b) ∈ f_i}`.
    pub witness: Rel,
    /// `(f0, f1)`.
    pub components: (Rel, Rel),
}

impl SummabilityWitness {
    /// The sum `σ ∘ ⟨⟨f0, f1⟩⟩`, which is the union `f0 ∪ f1`.
    pub fn sum(&self) -> Rel {
        self.witness
            .map(|a, b| (a.clone(), b.as_tag().map(|(_, x)| x.clone()).unwrap_or_else(|| b.clone())))
            .labelled(self.components.0.src_label.clone(), self.components.0.tgt_label.clone())
    }
}

/// Names of the structural maps of the summability layer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SumStructName {
    /// `π0 : S E → E`.
    Proj0,
    /// `π1 : S E → E`.
    Proj1,
    /// `σ = π0 + π1 : S E → E`.
    Sigma,
    /// `ι0 = ⟨⟨id, 0⟩⟩ : E → S E`.
    Inj0,
    /// `ι1 = ⟨⟨0, id⟩⟩ : E → S E`.
    Inj1,
    /// `c : S²E → S²E`.
    Flip,
    /// `θ : S²E → S E`.
    Theta,
    /// `E ⊗ S F → S(E ⊗ F)`.
    Strength,
    /// `S E ⊗ F → S(E ⊗ F)`.
    StrengthSym,
    /// `S E ⊗ S F → S(E ⊗ F)`.
    Smont,
}

impl SumStructName {
    /// Every name.
    pub const ALL: [SumStructName; 10] = [
        SumStructName::Proj0,
        SumStructName::Proj1,
        SumStructName::Sigma,
        SumStructName::Inj0,
        SumStructName::Inj1,
        SumStructName::Flip,
        SumStructName::Theta,
        SumStructName::Strength,
        SumStructName::StrengthSym,
        SumStructName::Smont,
    ];

    /// The closed-form expression.
    pub fn expr(self) -> Expr {
        p(match self {
            SumStructName::Proj0 => Prim::Proj(0),
            SumStructName::Proj1 => Prim::Proj(1),
            SumStructName::Sigma => Prim::Sigma,
            SumStructName::Inj0 => Prim::Inj(0),
            SumStructName::Inj1 => Prim::Inj(1),
            SumStructName::Flip => Prim::Flip,
            SumStructName::Theta => Prim::Theta,
            SumStructName::Strength => Prim::Str,
            SumStructName::StrengthSym => Prim::StrL,
            SumStructName::Smont => Prim::Smont,
        })
    }

    /// Source and target for parameters `e` (and `f`, defaulting to `e`).
    pub fn signature(self, e: &Space, f: Option<&Space>) -> (Space, Space) {
        let f = f.unwrap_or(e);
        match self {
            SumStructName::Proj0 | SumStructName::Proj1 | SumStructName::Sigma => (e.s(), e.clone()),
            SumStructName::Inj0 | SumStructName::Inj1 => (e.clone(), e.s()),
            SumStructName::Flip => (e.s_pow(2), e.s_pow(2)),
            SumStructName::Theta => (e.s_pow(2), e.s()),
            SumStructName::Strength => (Space::tensor(e, &f.s()), Space::tensor(e, f).s()),
            SumStructName::StrengthSym => (Space::tensor(&e.s(), f), Space::tensor(e, f).s()),
            SumStructName::Smont => (Space::tensor(&e.s(), &f.s()), Space::tensor(e, f).s()),
        }
    }
}

impl fmt::Display for SumStructName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SumStructName::Proj0 => "proj0",
            SumStructName::Proj1 => "proj1",
            SumStructName::Sigma => "sigma",
            SumStructName::Inj0 => "inj0",
            SumStructName::Inj1 => "inj1",
            SumStructName::Flip => "flip",
            SumStructName::Theta => "theta",
            SumStructName::Strength => "strength",
            SumStructName::StrengthSym => "strength_sym",
            SumStructName::Smont => "smont",
        };
        f.write_str(s)
    }
}

impl FromStr for SumStructName {
    type Err = Error;
    fn from_str(s: &str) -> Result<SumStructName> {
        SumStructName::ALL
            .into_iter()
            .find(|m| m.to_string() == s)
            .ok_or_else(|| Error::InvalidSpace(format!("unknown summability map `{s}`")))
    }
}

/// `S s = {(i·a, i·b) | i ∈ {0, 1}, (a, b) ∈ s}`.
pub fn sfun_morphism(s: &Rel) -> Rel {
    let mut out = Rel::empty().labelled(format!("S {}", s.src_label), format!("S {}", s.tgt_label));
    for (a, b) in s.pairs() {
        for i in 0..2 {
            out.insert(Atom::tag(i, a.clone()), Atom::tag(i, b.clone()));
        }
    }
    out
}

/// The structural map `name` at `e` (and `f`) on source atoms within
/// `budget`.
pub fn sum_structural(name: SumStructName, e: &Space, f: Option<&Space>, budget: Budget) -> Result<Rel> {
    let (src, tgt) = name.signature(e, f);
    Ok(materialize(&name.expr(), &src, budget)?.labelled(src.to_string(), tgt.to_string()))
}

/// The candidate witness `{(a, i·b) | (a, b) ∈ f_i}`, without any check.
pub fn raw_witness(f0: &Rel, f1: &Rel) -> Rel {
    let mut w = Rel::empty().labelled(f0.src_label.clone(), format!("S({})", f0.tgt_label));
    for (i, f) in [(0u8, f0), (1u8, f1)] {
        for (a, b) in f.pairs() {
            w.insert(a.clone(), Atom::tag(i, b.clone()));
        }
    }
    w
}

/// The witness `⟨⟨f0, f1⟩⟩ : src → S tgt`, if `f0` and `f1` are summable.
///
/// The candidate relation is unique (the projections are jointly monic),
/// so summability amounts to the candidate being a morphism into `S tgt`.
/// In COH this means `f0 ∩ f1 = ∅` and `f0 ∪ f1` is a morphism; in NUCS an
/// atom may occur in both components when it is strictly coherent with
/// itself; in REL every pair is summable.
pub fn witness(f0: &Rel, f1: &Rel, src: &Space, tgt: &Space) -> std::result::Result<SummabilityWitness, NotSummable> {
    let w = raw_witness(f0, f1);
    let st = tgt.s();
    if let Some((l, r)) = src.morphism_violation(&st, &w) {
        let untag = |(a, b): (Atom, Atom)| {
            let (i, x) = b.as_tag().map(|(i, x)| (i, x.clone())).unwrap_or((0, b.clone()));
            (i, (a, x))
        };
        let (il, pl) = untag(l);
        let (ir, pr) = untag(r);
        let reason = if src.kind() == Kind::Coh && il != ir && pl == pr {
            "components overlap".to_string()
        } else if il == ir {
            format!("component f{il} is not a morphism")
        } else {
            "components are not jointly coherent".to_string()
        };
        let (left, right) = if il <= ir { (pl, pr) } else { (pr, pl) };
        return Err(NotSummable { reason, left, right });
    }
    Ok(SummabilityWitness { witness: w, components: (f0.clone(), f1.clone()) })
}

/// `f0 + f1 = σ ∘ ⟨⟨f0, f1⟩⟩`.
pub fn sum(f0: &Rel, f1: &Rel, src: &Space, tgt: &Space) -> Result<Rel> {
    witness(f0, f1, src, tgt).map(|w| w.sum()).map_err(Error::NotSummable)
}

/// Sum of a finite family, following the inductive definition: the empty
/// family sums to `0`, and `(f1, …, fn)` is summable when `(f1, …, fn-1)`
/// is and its sum is summable with `fn`.
pub fn nary_summable(fs: &[Rel], src: &Space, tgt: &Space) -> Result<Rel> {
    let mut acc = Rel::empty().labelled(src.to_string(), tgt.to_string());
    for f in fs {
        acc = sum(&acc, f, src, tgt)?;
    }
    Ok(acc)
}

/// The interval object `I = 1 & 1` of the given kind.
pub fn interval(kind: Kind) -> Space {
    Space::interval(kind)
}

/// Mutually inverse relations `S E → (I ⊸ E)` and back, on atoms within
/// `budget`.
pub fn canonical_iso(e: &Space, budget: Budget) -> Result<(Rel, Rel)> {
    let i_e = Space::limpl(&interval(e.kind()), e);
    let fwd = materialize(&p(Prim::CanIso), &e.s(), budget)?.labelled(e.s().to_string(), i_e.to_string());
    let bwd = materialize(&p(Prim::CanIsoInv), &i_e, budget)?.labelled(i_e.to_string(), e.s().to_string());
    Ok((fwd, bwd))
}

/// The canonical `S(X ⊸ Y) → (X ⊸ S Y)`, `i·(a, b) ↦ (a, i·b)`, on atoms
/// within `budget`.
pub fn sfun_iso(x: &Space, y: &Space, budget: Budget) -> Result<Rel> {
    materialize(&p(Prim::SFun), &Space::limpl(x, y).s(), budget)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rel::rel_compose;

    fn one() -> Space {
        Space::one(Kind::Coh)
    }

    fn star_rel() -> Rel {
        [(Atom::star(), Atom::star())].into_iter().collect()
    }

    #[test]
    fn s_of_singleton() {
        let s: Rel = [(Atom::base("a"), Atom::base("b"))].into_iter().collect();
        let t = sfun_morphism(&s);
        assert_eq!(t.len(), 2);
        assert!(t.contains(&Atom::tag(1, Atom::base("a")), &Atom::tag(1, Atom::base("b"))));
        assert!(sfun_morphism(&Rel::empty()).is_empty());
    }

    #[test]
    fn overlap_is_not_summable_in_coh() {
        let err = witness(&star_rel(), &star_rel(), &one(), &one()).unwrap_err();
        assert_eq!(err.reason, "components overlap");
    }

    #[test]
    fn overlap_can_be_summable_in_nucs() {
        let e =
            Space::base("E", Kind::Nucs, vec![Atom::base("a")], &[(Atom::base("a"), Atom::base("a"))], &[]).unwrap();
        let r: Rel = [(Atom::base("a"), Atom::base("a"))].into_iter().collect();
        assert!(witness(&r, &r, &e, &e).is_ok());
        let one_n = Space::one(Kind::Nucs);
        assert!(witness(&star_rel(), &star_rel(), &one_n, &one_n).is_err());
    }

    #[test]
    fn zero_is_neutral() {
        let s = sum(&star_rel(), &Rel::empty(), &one(), &one()).unwrap();
        assert_eq!(s, star_rel());
        assert!(nary_summable(&[], &one(), &one()).unwrap().is_empty());
    }

    #[test]
    fn projections_sum_to_sigma_with_identity_witness() {
        let e = one();
        let b = Budget::degree(2);
        let p0 = sum_structural(SumStructName::Proj0, &e, None, b).unwrap();
        let p1 = sum_structural(SumStructName::Proj1, &e, None, b).unwrap();
        let w = witness(&p0, &p1, &e.s(), &e).unwrap();
        assert_eq!(w.witness, Rel::identity(&e.s().enumerate(b).unwrap()));
        let sigma = sum_structural(SumStructName::Sigma, &e, None, b).unwrap();
        assert_eq!(w.sum(), sigma);
    }

    #[test]
    fn canonical_iso_round_trips() {
        let e = one();
        let b = Budget::degree(2);
        let (f, g) = canonical_iso(&e, b).unwrap();
        let web = e.s().enumerate(b).unwrap();
        assert_eq!(rel_compose(&f, &g), Rel::identity(&web));
    }
}
