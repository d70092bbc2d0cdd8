//! Web elements and finite multisets.
//!
//! Every web in this crate is made of [`Atom`]s: structural trees built from
//! base symbols, 0/1 tags (for `&`, `⊕` and the summability functor `S`),
//! pairs (for `⊗` and `⊸`) and finite multisets (for `!`). Identity is
//! structural equality, so the web of a compound space is a definitional
//! image of the webs of its components.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

/// A web element.
///
/// Cloning is cheap (reference counted); equality, ordering and hashing are
/// structural.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Atom(Arc<Node>);

#[derive(PartialEq, Eq, Hash)]
struct Node {
    degree: u32,
    kind: AtomKind,
}

/// The shape of an [`Atom`].
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AtomKind {
    /// A base symbol, e.g. `*` (the unique point of `1`) or `a`.
    Base(Arc<str>),
    /// A tagged element `(i, a)` with `i ∈ {0, 1}`.
    Tag(u8, Atom),
    /// A pair `(a, b)`.
    Pair(Atom, Atom),
    /// A finite multiset `[a1, …, an]`.
    MSet(Multiset),
}

impl PartialOrd for Atom {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Atom {
    fn cmp(&self, other: &Self) -> Ordering {
        if Arc::ptr_eq(&self.0, &other.0) {
            return Ordering::Equal;
        }
        self.0.kind.cmp(&other.0.kind)
    }
}

impl Atom {
    fn from_kind(kind: AtomKind) -> Atom {
        let degree = match &kind {
            AtomKind::Base(_) => 0,
            AtomKind::Tag(_, a) => a.degree(),
            AtomKind::Pair(a, b) => a.degree() + b.degree(),
            AtomKind::MSet(m) => m.nested_degree(),
        };
        Atom(Arc::new(Node { degree, kind }))
    }

    /// A base symbol.
    pub fn base(name: &str) -> Atom {
        Atom::from_kind(AtomKind::Base(Arc::from(name)))
    }

    /// The unique point `*` of the unit space `1`.
    pub fn star() -> Atom {
        Atom::base("*")
    }

    /// The tagged element `(i, a)`.
    ///
    /// # Panics
    /// Panics if `i > 1`.
    pub fn tag(i: u8, a: Atom) -> Atom {
        assert!(i <= 1, "tag index must be 0 or 1, got {i}");
        Atom::from_kind(AtomKind::Tag(i, a))
    }

    /// The pair `(a, b)`.
    pub fn pair(a: Atom, b: Atom) -> Atom {
        Atom::from_kind(AtomKind::Pair(a, b))
    }

    /// The multiset atom `m`.
    pub fn mset(m: Multiset) -> Atom {
        Atom::from_kind(AtomKind::MSet(m))
    }

    /// The point `(i, *)` of `I = 1 & 1`.
    pub fn point(i: u8) -> Atom {
        Atom::tag(i, Atom::star())
    }

    /// The shape of this atom.
    pub fn kind(&self) -> &AtomKind {
        &self.0.kind
    }

    /// Nested degree: base symbols have degree 0, tags are transparent, a
    /// pair adds the degrees of its sides and a multiset contributes
    /// `Σ count·(1 + degree(element))`.
    pub fn degree(&self) -> u32 {
        self.0.degree
    }

    /// `Some((i, a))` if this atom is a tagged element.
    pub fn as_tag(&self) -> Option<(u8, &Atom)> {
        match self.kind() {
            AtomKind::Tag(i, a) => Some((*i, a)),
            _ => None,
        }
    }

    /// `Some((a, b))` if this atom is a pair.
    pub fn as_pair(&self) -> Option<(&Atom, &Atom)> {
        match self.kind() {
            AtomKind::Pair(a, b) => Some((a, b)),
            _ => None,
        }
    }

    /// `Some(m)` if this atom is a multiset.
    pub fn as_mset(&self) -> Option<&Multiset> {
        match self.kind() {
            AtomKind::MSet(m) => Some(m),
            _ => None,
        }
    }

    /// `Some(name)` if this atom is a base symbol.
    pub fn as_base(&self) -> Option<&str> {
        match self.kind() {
            AtomKind::Base(s) => Some(s),
            _ => None,
        }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind() {
            AtomKind::Base(s) => write!(f, "{s}"),
            AtomKind::Tag(i, a) => write!(f, "{i}·{a}"),
            AtomKind::Pair(a, b) => write!(f, "({a},{b})"),
            AtomKind::MSet(m) => write!(f, "{m}"),
        }
    }
}

impl fmt::Debug for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A finite multiset of atoms in canonical (sorted) form.
///
/// Stored counts are always at least 1, so structural equality coincides
/// with multiset equality.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Multiset(Vec<(Atom, u32)>);

impl Multiset {
    /// The empty multiset `[]`.
    pub fn empty() -> Multiset {
        Multiset(Vec::new())
    }

    /// The singleton `[a]`.
    pub fn singleton(a: Atom) -> Multiset {
        Multiset(vec![(a, 1)])
    }

    /// `n` copies of `a`.
    pub fn repeat(a: Atom, n: u32) -> Multiset {
        if n == 0 {
            Multiset::empty()
        } else {
            Multiset(vec![(a, n)])
        }
    }

    /// Builds a multiset from (element, count) pairs in any order; zero
    /// counts are dropped and duplicates merged.
    pub fn from_counts<I: IntoIterator<Item = (Atom, u32)>>(entries: I) -> Multiset {
        let mut v: Vec<(Atom, u32)> = entries.into_iter().filter(|(_, n)| *n > 0).collect();
        v.sort_by(|x, y| x.0.cmp(&y.0));
        let mut out: Vec<(Atom, u32)> = Vec::with_capacity(v.len());
        for (a, n) in v {
            match out.last_mut() {
                Some((b, m)) if *b == a => *m += n,
                _ => out.push((a, n)),
            }
        }
        Multiset(out)
    }

    /// Entries `(element, count)` in canonical order.
    pub fn entries(&self) -> &[(Atom, u32)] {
        &self.0
    }

    /// Cardinality `#m = Σ counts`.
    pub fn len(&self) -> u32 {
        self.0.iter().map(|(_, n)| n).sum()
    }

    /// Whether this is `[]`.
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Multiplicity of `a`.
    pub fn count(&self, a: &Atom) -> u32 {
        self.0.binary_search_by(|(b, _)| b.cmp(a)).map(|i| self.0[i].1).unwrap_or(0)
    }

    /// The support `Supp m`, in canonical order.
    pub fn support(&self) -> impl Iterator<Item = &Atom> + '_ {
        self.0.iter().map(|(a, _)| a)
    }

    /// All elements with repetition, in canonical order.
    pub fn elements(&self) -> Vec<Atom> {
        let mut v = Vec::with_capacity(self.len() as usize);
        for (a, n) in &self.0 {
            for _ in 0..*n {
                v.push(a.clone());
            }
        }
        v
    }

    /// Nested degree `Σ count·(1 + degree(a))`.
    pub fn nested_degree(&self) -> u32 {
        self.0.iter().map(|(a, n)| n * (1 + a.degree())).sum()
    }

    /// Pointwise sum `m0 + m1`.
    pub fn sum(&self, other: &Multiset) -> Multiset {
        let (mut i, mut j) = (0, 0);
        let (x, y) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(x.len() + y.len());
        while i < x.len() && j < y.len() {
            match x[i].0.cmp(&y[j].0) {
                Ordering::Less => {
                    out.push(x[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(y[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((x[i].0.clone(), x[i].1 + y[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&x[i..]);
        out.extend_from_slice(&y[j..]);
        Multiset(out)
    }

    /// `m + [a]`.
    pub fn add(&self, a: Atom) -> Multiset {
        self.sum(&Multiset::singleton(a))
    }

    /// `m - [a]`, or `None` if `a ∉ Supp m`.
    pub fn remove_one(&self, a: &Atom) -> Option<Multiset> {
        let i = self.0.binary_search_by(|(b, _)| b.cmp(a)).ok()?;
        let mut v = self.0.clone();
        if v[i].1 == 1 {
            v.remove(i);
        } else {
            v[i].1 -= 1;
        }
        Some(Multiset(v))
    }

    /// Applies `f` to every element (with repetition) and re-canonicalises.
    pub fn map(&self, mut f: impl FnMut(&Atom) -> Atom) -> Multiset {
        Multiset::from_counts(self.0.iter().map(|(a, n)| (f(a), *n)))
    }

    /// All decompositions `m = m1 + m2` as ordered pairs.
    pub fn splits(&self) -> Vec<(Multiset, Multiset)> {
        let mut out = vec![(Vec::new(), Vec::new())];
        for (a, n) in &self.0 {
            let mut next = Vec::with_capacity(out.len() * (*n as usize + 1));
            for (l, r) in &out {
                for k in 0..=*n {
                    let mut l2: Vec<(Atom, u32)> = l.clone();
                    let mut r2: Vec<(Atom, u32)> = r.clone();
                    if k > 0 {
                        l2.push((a.clone(), k));
                    }
                    if k < *n {
                        r2.push((a.clone(), n - k));
                    }
                    next.push((l2, r2));
                }
            }
            out = next;
        }
        out.into_iter().map(|(l, r)| (Multiset(l), Multiset(r))).collect()
    }

    /// All decompositions of `m` into a multiset of non-empty multisets
    /// (multiset partitions), each returned once.
    pub fn partitions(&self) -> Vec<Vec<Multiset>> {
        let elems = self.elements();
        let mut seen = std::collections::BTreeSet::new();
        let mut blocks: Vec<Vec<Atom>> = Vec::new();
        fn go(
            elems: &[Atom],
            i: usize,
            blocks: &mut Vec<Vec<Atom>>,
            seen: &mut std::collections::BTreeSet<Vec<Multiset>>,
        ) {
            if i == elems.len() {
                let mut parts: Vec<Multiset> =
                    blocks.iter().map(|b| Multiset::from_counts(b.iter().map(|a| (a.clone(), 1)))).collect();
                parts.sort();
                seen.insert(parts);
                return;
            }
            for k in 0..blocks.len() {
                blocks[k].push(elems[i].clone());
                go(elems, i + 1, blocks, seen);
                blocks[k].pop();
            }
            blocks.push(vec![elems[i].clone()]);
            go(elems, i + 1, blocks, seen);
            blocks.pop();
        }
        go(&elems, 0, &mut blocks, &mut seen);
        seen.into_iter().collect()
    }
}

impl FromIterator<Atom> for Multiset {
    fn from_iter<I: IntoIterator<Item = Atom>>(iter: I) -> Multiset {
        Multiset::from_counts(iter.into_iter().map(|a| (a, 1)))
    }
}

impl fmt::Display for Multiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        let mut first = true;
        for a in self.elements() {
            if !first {
                write!(f, ",")?;
            }
            first = false;
            write!(f, "{a}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for Multiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `m0 + m1`.
pub fn mset_sum(m0: &Multiset, m1: &Multiset) -> Multiset {
    m0.sum(m1)
}

/// All multisets over `elements` whose nested degree is at most
/// `max_degree`, in canonical order of construction.
///
/// `elements` must be free of duplicates.
pub fn multisets_up_to(elements: &[Atom], max_degree: u32) -> Vec<Multiset> {
    let mut sorted: Vec<&Atom> = elements.iter().filter(|a| a.degree() < max_degree).collect();
    sorted.sort();
    sorted.dedup();
    let mut out = Vec::new();
    let mut cur: Vec<(Atom, u32)> = Vec::new();
    fn go(elems: &[&Atom], i: usize, budget: u32, cur: &mut Vec<(Atom, u32)>, out: &mut Vec<Multiset>) {
        if i == elems.len() {
            out.push(Multiset(cur.clone()));
            return;
        }
        go(elems, i + 1, budget, cur, out);
        let cost = 1 + elems[i].degree();
        let mut k = 1;
        while k * cost <= budget {
            cur.push((elems[i].clone(), k));
            go(elems, i + 1, budget - k * cost, cur, out);
            cur.pop();
            k += 1;
        }
    }
    go(&sorted, 0, max_degree, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a() -> Atom {
        Atom::base("a")
    }
    fn b() -> Atom {
        Atom::base("b")
    }

    #[test]
    fn sum_adds_counts() {
        let m0: Multiset = [a()].into_iter().collect();
        let m1: Multiset = [a(), b()].into_iter().collect();
        assert_eq!(mset_sum(&m0, &m1), [a(), a(), b()].into_iter().collect());
        assert_eq!(mset_sum(&Multiset::empty(), &m1), m1);
        assert_eq!(mset_sum(&m0, &m1), mset_sum(&m1, &m0));
    }

    #[test]
    fn nested_degree_counts_through_nesting() {
        let inner: Multiset = [Atom::star(), Atom::star()].into_iter().collect();
        assert_eq!(inner.nested_degree(), 2);
        let outer = Multiset::singleton(Atom::mset(inner));
        assert_eq!(outer.nested_degree(), 3);
        assert_eq!(Atom::pair(Atom::mset(outer.clone()), Atom::mset(outer)).degree(), 6);
    }

    #[test]
    fn multisets_over_singleton() {
        let ms = multisets_up_to(&[Atom::star()], 2);
        assert_eq!(ms.len(), 3);
        assert!(ms.contains(&Multiset::repeat(Atom::star(), 2)));
    }

    #[test]
    fn splits_and_partitions() {
        let m: Multiset = [a(), b()].into_iter().collect();
        assert_eq!(m.splits().len(), 4);
        assert_eq!(m.partitions().len(), 2);
        let m3: Multiset = [a(), a(), b()].into_iter().collect();
        // {aab}, {a}{ab}, {aa}{b}, {a}{a}{b}
        assert_eq!(m3.partitions().len(), 4);
        assert_eq!(Multiset::empty().partitions(), vec![Vec::<Multiset>::new()]);
    }

    #[test]
    fn remove_one() {
        let m: Multiset = [a(), a(), b()].into_iter().collect();
        assert_eq!(m.remove_one(&a()).unwrap(), [a(), b()].into_iter().collect());
        assert!(m.remove_one(&Atom::base("c")).is_none());
    }
}
