//! Relations between webs, the currency of every model in this crate.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::atom::Atom;

/// Truncation parameters that make infinite webs finitely checkable.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    /// Bound on the nested degree of enumerated atoms.
    pub max_degree: u32,
    /// Enumeration cap; exceeding it is reported as
    /// [`Error::BudgetExceeded`](crate::Error::BudgetExceeded).
    pub max_atoms: usize,
}

impl Budget {
    /// A budget with the given degree bound and the default atom cap.
    pub fn degree(max_degree: u32) -> Budget {
        Budget { max_degree, ..Budget::default() }
    }
}

impl Default for Budget {
    fn default() -> Budget {
        Budget { max_degree: 3, max_atoms: 20_000 }
    }
}

/// A morphism given extensionally: a finite set of atom pairs.
///
/// The labels describe the intended source and target webs and are used for
/// diagnostics only; they do not take part in equality.
#[derive(Clone, Default)]
pub struct Rel {
    pairs: BTreeSet<(Atom, Atom)>,
    /// Description of the source web.
    pub src_label: String,
    /// Description of the target web.
    pub tgt_label: String,
}

impl PartialEq for Rel {
    fn eq(&self, other: &Rel) -> bool {
        self.pairs == other.pairs
    }
}

impl Eq for Rel {}

impl fmt::Debug for Rel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.pairs.iter().map(|(a, b)| format!("{a} ↦ {b}"))).finish()
    }
}

impl fmt::Display for Rel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (a, b) in &self.pairs {
            writeln!(f, "{a} ↦ {b}")?;
        }
        Ok(())
    }
}

impl FromIterator<(Atom, Atom)> for Rel {
    fn from_iter<I: IntoIterator<Item = (Atom, Atom)>>(iter: I) -> Rel {
        Rel { pairs: iter.into_iter().collect(), ..Rel::default() }
    }
}

impl Rel {
    /// The empty relation, i.e. the zero morphism.
    pub fn empty() -> Rel {
        Rel::default()
    }

    /// The identity `{(a, a) | a ∈ web}`.
    pub fn identity<'a, I: IntoIterator<Item = &'a Atom>>(web: I) -> Rel {
        web.into_iter().map(|a| (a.clone(), a.clone())).collect()
    }

    /// Attaches diagnostic labels.
    pub fn labelled(mut self, src: impl Into<String>, tgt: impl Into<String>) -> Rel {
        self.src_label = src.into();
        self.tgt_label = tgt.into();
        self
    }

    /// The pairs, in canonical order.
    pub fn pairs(&self) -> &BTreeSet<(Atom, Atom)> {
        &self.pairs
    }

    /// Number of pairs.
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    /// Whether this is the zero morphism.
    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Membership test.
    pub fn contains(&self, a: &Atom, b: &Atom) -> bool {
        self.pairs.contains(&(a.clone(), b.clone()))
    }

    /// Adds a pair; returns whether it was new.
    pub fn insert(&mut self, a: Atom, b: Atom) -> bool {
        self.pairs.insert((a, b))
    }

    /// Removes a pair; returns whether it was present.
    pub fn remove(&mut self, a: &Atom, b: &Atom) -> bool {
        self.pairs.remove(&(a.clone(), b.clone()))
    }

    /// `{b | (a, b) ∈ self}`.
    pub fn image(&self, a: &Atom) -> BTreeSet<Atom> {
        self.pairs
            .range((a.clone(), min_atom_sentinel())..)
            .take_while(|(x, _)| x == a)
            .map(|(_, b)| b.clone())
            .collect()
    }

    /// The set of first components.
    pub fn domain(&self) -> BTreeSet<Atom> {
        self.pairs.iter().map(|(a, _)| a.clone()).collect()
    }

    /// Index from inputs to outputs.
    pub fn by_input(&self) -> BTreeMap<Atom, Vec<Atom>> {
        let mut m: BTreeMap<Atom, Vec<Atom>> = BTreeMap::new();
        for (a, b) in &self.pairs {
            m.entry(a.clone()).or_default().push(b.clone());
        }
        m
    }

    /// The converse relation.
    pub fn inverse(&self) -> Rel {
        self.pairs
            .iter()
            .map(|(a, b)| (b.clone(), a.clone()))
            .collect::<Rel>()
            .labelled(self.tgt_label.clone(), self.src_label.clone())
    }

    /// Set union.
    pub fn union(&self, other: &Rel) -> Rel {
        let mut r = self.clone();
        r.pairs.extend(other.pairs.iter().cloned());
        r
    }

    /// Set intersection.
    pub fn intersection(&self, other: &Rel) -> Rel {
        self.pairs
            .intersection(&other.pairs)
            .cloned()
            .collect::<Rel>()
            .labelled(self.src_label.clone(), self.tgt_label.clone())
    }

    /// Keeps the pairs satisfying `keep`.
    pub fn filter(&self, mut keep: impl FnMut(&Atom, &Atom) -> bool) -> Rel {
        self.pairs
            .iter()
            .filter(|(a, b)| keep(a, b))
            .cloned()
            .collect::<Rel>()
            .labelled(self.src_label.clone(), self.tgt_label.clone())
    }

    /// Applies `f` to both components of every pair.
    pub fn map(&self, mut f: impl FnMut(&Atom, &Atom) -> (Atom, Atom)) -> Rel {
        self.pairs.iter().map(|(a, b)| f(a, b)).collect()
    }
}

fn min_atom_sentinel() -> Atom {
    // Base symbols sort before every other shape, and the empty name sorts
    // before every other base symbol.
    Atom::base("")
}

/// Relational composition `{(a, c) | ∃b. (a, b) ∈ s ∧ (b, c) ∈ t}`, i.e.
/// `t ∘ s`.
pub fn rel_compose(s: &Rel, t: &Rel) -> Rel {
    let t_idx = t.by_input();
    let mut out = Rel::empty().labelled(s.src_label.clone(), t.tgt_label.clone());
    for (a, b) in s.pairs() {
        if let Some(cs) = t_idx.get(b) {
            for c in cs {
                out.insert(a.clone(), c.clone());
            }
        }
    }
    out
}

/// A point where two relations (or two composites) disagree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    /// The input atom.
    pub input: Atom,
    /// Its image under the left-hand side.
    pub left: BTreeSet<Atom>,
    /// Its image under the right-hand side.
    pub right: BTreeSet<Atom>,
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |s: &BTreeSet<Atom>| s.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(", ");
        write!(f, "at {}: left {{{}}} vs right {{{}}}", self.input, show(&self.left), show(&self.right))
    }
}

/// Compares `f` and `g` input-wise on `domain`; returns the first input whose
/// images differ.
pub fn rel_equal_on(f: &Rel, g: &Rel, domain: &[Atom]) -> Result<(), Counterexample> {
    for a in domain {
        let (l, r) = (f.image(a), g.image(a));
        if l != r {
            return Err(Counterexample { input: a.clone(), left: l, right: r });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn at(s: &str) -> Atom {
        Atom::base(s)
    }

    #[test]
    fn compose_examples() {
        let s: Rel = [(at("a"), at("b"))].into_iter().collect();
        let t: Rel = [(at("b"), at("c"))].into_iter().collect();
        assert_eq!(rel_compose(&s, &t), [(at("a"), at("c"))].into_iter().collect());
        assert!(rel_compose(&Rel::empty(), &t).is_empty());
        let s2: Rel = [(at("a"), at("b")), (at("a"), at("b'"))].into_iter().collect();
        let t2: Rel = [(at("b"), at("c")), (at("b'"), at("c"))].into_iter().collect();
        assert_eq!(rel_compose(&s2, &t2).len(), 1);
    }

    #[test]
    fn equal_on_reports_witness() {
        let f: Rel = [(at("a"), at("b"))].into_iter().collect();
        assert!(rel_equal_on(&f, &f, &[at("a")]).is_ok());
        let cx = rel_equal_on(&f, &Rel::empty(), &[at("a")]).unwrap_err();
        assert_eq!(cx.input, at("a"));
        assert!(rel_equal_on(&f, &Rel::empty(), &[at("z")]).is_ok());
    }

    #[test]
    fn image_of_structured_atoms() {
        let k = Atom::tag(0, at("a"));
        let r: Rel = [(k.clone(), at("x")), (k.clone(), at("y")), (at("a"), at("z"))].into_iter().collect();
        assert_eq!(r.image(&k).len(), 2);
        assert_eq!(r.image(&at("a")).len(), 1);
    }
}
