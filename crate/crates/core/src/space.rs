//! Coherence spaces (COH), non-uniform coherence spaces (NUCS) and the bare
//! relational model (REL), with their connectives.
//!
//! All three kinds share one verdict function. A COH space is a NUCS whose
//! neutrality relation is equality; the only structural difference is that
//! the web of `!E` in COH is restricted to multicliques. REL has no
//! coherence at all: every pair of atoms is reported as [`Verdict::Neutral`]
//! (hence both coherent and incoherent) and every relation is a morphism.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use crate::atom::{multisets_up_to, Atom, Multiset};
use crate::error::{Error, Result};
use crate::rel::{Budget, Rel};

/// The model a space lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Kind {
    /// Girard's (uniform) coherence spaces.
    Coh,
    /// Non-uniform coherence spaces.
    Nucs,
    /// Sets and relations.
    Rel,
}

impl Kind {
    /// All kinds, in a fixed order.
    pub const ALL: [Kind; 3] = [Kind::Coh, Kind::Nucs, Kind::Rel];

    /// Lower-case name used in text formats and on the command line.
    pub fn name(self) -> &'static str {
        match self {
            Kind::Coh => "coh",
            Kind::Nucs => "nucs",
            Kind::Rel => "rel",
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Kind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Kind> {
        match s.to_ascii_lowercase().as_str() {
            "coh" => Ok(Kind::Coh),
            "nucs" => Ok(Kind::Nucs),
            "rel" => Ok(Kind::Rel),
            other => Err(Error::InvalidSpace(format!("unknown model kind `{other}`"))),
        }
    }
}

/// The relation between two atoms of a space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    /// Strictly coherent.
    StrictlyCoherent,
    /// Neutral (in COH: equal).
    Neutral,
    /// Strictly incoherent.
    StrictlyIncoherent,
}

impl Verdict {
    /// `coh = scoh ∪ neutral`.
    pub fn coherent(self) -> bool {
        self != Verdict::StrictlyIncoherent
    }

    /// `incoh = sincoh ∪ neutral`.
    pub fn incoherent(self) -> bool {
        self != Verdict::StrictlyCoherent
    }

    /// Exchanges the two strict relations (linear negation).
    pub fn dual(self) -> Verdict {
        match self {
            Verdict::StrictlyCoherent => Verdict::StrictlyIncoherent,
            Verdict::Neutral => Verdict::Neutral,
            Verdict::StrictlyIncoherent => Verdict::StrictlyCoherent,
        }
    }

    fn tensor(self, other: Verdict) -> Verdict {
        use Verdict::*;
        match (self, other) {
            (StrictlyIncoherent, _) | (_, StrictlyIncoherent) => StrictlyIncoherent,
            (Neutral, Neutral) => Neutral,
            _ => StrictlyCoherent,
        }
    }
}

/// A base space given extensionally.
#[derive(Debug)]
pub struct BaseSpace {
    name: String,
    atoms: Vec<Atom>,
    scoh: BTreeSet<(Atom, Atom)>,
    sincoh: BTreeSet<(Atom, Atom)>,
}

#[derive(Debug)]
enum Node {
    Base(BaseSpace),
    Top,
    Tensor(Space, Space),
    With(Space, Space),
    Plus(Space, Space),
    Limpl(Space, Space),
    Dual(Space),
    S(Space),
    Bang(Space),
}

/// A space of one of the three kinds; compound spaces compute coherence
/// structurally, on demand.
#[derive(Clone, Debug)]
pub struct Space {
    kind: Kind,
    node: Arc<Node>,
}

impl PartialEq for Space {
    fn eq(&self, other: &Space) -> bool {
        self.kind == other.kind && self.to_string() == other.to_string()
    }
}

impl Space {
    /// A base space.
    ///
    /// For COH, `coherent` lists the coherent pairs of distinct atoms and
    /// every other pair of distinct atoms is incoherent; `incoherent` must
    /// be empty or consistent with that. For NUCS, the two lists give the
    /// strict relations and all remaining pairs (including, possibly, pairs
    /// of distinct atoms) are neutral. For REL both lists are ignored.
    pub fn base(
        name: &str,
        kind: Kind,
        atoms: Vec<Atom>,
        coherent: &[(Atom, Atom)],
        incoherent: &[(Atom, Atom)],
    ) -> Result<Space> {
        let set: BTreeSet<&Atom> = atoms.iter().collect();
        if set.len() != atoms.len() {
            return Err(Error::InvalidSpace(format!("{name}: duplicate atoms")));
        }
        if let Some(a) = atoms.iter().find(|a| a.degree() != 0) {
            return Err(Error::InvalidSpace(format!("{name}: base atom {a} must have degree 0")));
        }
        let sym = |pairs: &[(Atom, Atom)]| -> Result<BTreeSet<(Atom, Atom)>> {
            let mut s = BTreeSet::new();
            for (a, b) in pairs {
                if !set.contains(a) || !set.contains(b) {
                    return Err(Error::InvalidSpace(format!(
                        "{name}: pair ({a},{b}) mentions an atom outside the web"
                    )));
                }
                s.insert((a.clone(), b.clone()));
                s.insert((b.clone(), a.clone()));
            }
            Ok(s)
        };
        let mut scoh = sym(coherent)?;
        let mut sincoh = sym(incoherent)?;
        match kind {
            Kind::Coh => {
                if scoh.iter().chain(sincoh.iter()).any(|(a, b)| a == b) {
                    return Err(Error::InvalidSpace(format!(
                        "{name}: COH coherence is reflexive; diagonal pairs are implicit"
                    )));
                }
                if let Some(p) = scoh.intersection(&sincoh).next() {
                    return Err(Error::InvalidSpace(format!(
                        "{name}: ({},{}) is both coherent and incoherent",
                        p.0, p.1
                    )));
                }
                sincoh.clear();
                for a in &atoms {
                    for b in &atoms {
                        if a != b && !scoh.contains(&(a.clone(), b.clone())) {
                            sincoh.insert((a.clone(), b.clone()));
                        }
                    }
                }
            }
            Kind::Nucs => {
                if let Some(p) = scoh.intersection(&sincoh).next() {
                    return Err(Error::InvalidSpace(format!("{name}: strict relations overlap at ({},{})", p.0, p.1)));
                }
            }
            Kind::Rel => {
                scoh.clear();
                sincoh.clear();
            }
        }
        Ok(Space { kind, node: Arc::new(Node::Base(BaseSpace { name: name.to_string(), atoms, scoh, sincoh })) })
    }

    /// The unit `1 = {*}`, with `*` neutral with itself.
    pub fn one(kind: Kind) -> Space {
        Space::base("1", kind, vec![Atom::star()], &[], &[]).expect("1 is well formed")
    }

    /// The terminal object `⊤` (empty web).
    pub fn top(kind: Kind) -> Space {
        Space { kind, node: Arc::new(Node::Top) }
    }

    /// `I = 1 & 1`, whose web is `{0·*, 1·*}`.
    pub fn interval(kind: Kind) -> Space {
        Space::with(&Space::one(kind), &Space::one(kind))
    }

    /// `Bool = 1 ⊕ 1`.
    pub fn boolean(kind: Kind) -> Space {
        Space::plus(&Space::one(kind), &Space::one(kind))
    }

    /// A flat space on `atoms`: distinct atoms strictly incoherent, every
    /// atom neutral with itself.
    pub fn flat(name: &str, kind: Kind, atoms: Vec<Atom>) -> Space {
        let mut inc = Vec::new();
        for (i, a) in atoms.iter().enumerate() {
            for b in &atoms[i + 1..] {
                inc.push((a.clone(), b.clone()));
            }
        }
        let inc = if kind == Kind::Coh { Vec::new() } else { inc };
        Space::base(name, kind, atoms, &[], &inc).expect("flat space is well formed")
    }

    fn binary(a: &Space, b: &Space, f: fn(Space, Space) -> Node) -> Space {
        assert_eq!(a.kind, b.kind, "cannot combine a {} space with a {} space", a.kind, b.kind);
        Space { kind: a.kind, node: Arc::new(f(a.clone(), b.clone())) }
    }

    /// `E ⊗ F`.
    pub fn tensor(a: &Space, b: &Space) -> Space {
        Space::binary(a, b, Node::Tensor)
    }

    /// `E & F`.
    pub fn with(a: &Space, b: &Space) -> Space {
        Space::binary(a, b, Node::With)
    }

    /// `E ⊕ F`.
    pub fn plus(a: &Space, b: &Space) -> Space {
        Space::binary(a, b, Node::Plus)
    }

    /// `E ⊸ F`.
    pub fn limpl(a: &Space, b: &Space) -> Space {
        Space::binary(a, b, Node::Limpl)
    }

    /// `E⊥`.
    pub fn dual(&self) -> Space {
        Space { kind: self.kind, node: Arc::new(Node::Dual(self.clone())) }
    }

    /// `S E`.
    pub fn s(&self) -> Space {
        Space { kind: self.kind, node: Arc::new(Node::S(self.clone())) }
    }

    /// `S^n E`.
    pub fn s_pow(&self, n: usize) -> Space {
        (0..n).fold(self.clone(), |e, _| e.s())
    }

    /// `!E`.
    pub fn bang(&self) -> Space {
        Space { kind: self.kind, node: Arc::new(Node::Bang(self.clone())) }
    }

    /// The model kind.
    pub fn kind(&self) -> Kind {
        self.kind
    }

    /// The same construction re-interpreted in another kind. Base spaces keep
    /// their atoms; their coherence tables are kept where meaningful.
    pub fn with_kind(&self, kind: Kind) -> Space {
        let node = match &*self.node {
            Node::Base(b) => {
                let coh: Vec<_> = b.scoh.iter().cloned().collect();
                let inc: Vec<_> = if kind == Kind::Coh { Vec::new() } else { b.sincoh.iter().cloned().collect() };
                return Space::base(&b.name, kind, b.atoms.clone(), &coh, &inc)
                    .unwrap_or_else(|_| Space::base(&b.name, kind, b.atoms.clone(), &[], &[]).unwrap());
            }
            Node::Top => Node::Top,
            Node::Tensor(a, b) => Node::Tensor(a.with_kind(kind), b.with_kind(kind)),
            Node::With(a, b) => Node::With(a.with_kind(kind), b.with_kind(kind)),
            Node::Plus(a, b) => Node::Plus(a.with_kind(kind), b.with_kind(kind)),
            Node::Limpl(a, b) => Node::Limpl(a.with_kind(kind), b.with_kind(kind)),
            Node::Dual(a) => Node::Dual(a.with_kind(kind)),
            Node::S(a) => Node::S(a.with_kind(kind)),
            Node::Bang(a) => Node::Bang(a.with_kind(kind)),
        };
        Space { kind, node: Arc::new(node) }
    }

    /// Components of a binary connective or argument of a unary one.
    pub fn components(&self) -> Vec<Space> {
        match &*self.node {
            Node::Base(_) | Node::Top => vec![],
            Node::Tensor(a, b) | Node::With(a, b) | Node::Plus(a, b) | Node::Limpl(a, b) => {
                vec![a.clone(), b.clone()]
            }
            Node::Dual(a) | Node::S(a) | Node::Bang(a) => vec![a.clone()],
        }
    }

    /// If this space is `!E`, returns `E`.
    pub fn bang_arg(&self) -> Option<&Space> {
        match &*self.node {
            Node::Bang(a) => Some(a),
            _ => None,
        }
    }

    /// If this space is `S E`, returns `E`.
    pub fn s_arg(&self) -> Option<&Space> {
        match &*self.node {
            Node::S(a) => Some(a),
            _ => None,
        }
    }

    /// Upper bound on the degree of web atoms, or `None` if unbounded
    /// (the space contains a `!`).
    pub fn max_atom_degree(&self) -> Option<u32> {
        match &*self.node {
            Node::Base(_) | Node::Top => Some(0),
            Node::Tensor(a, b) | Node::Limpl(a, b) => Some(a.max_atom_degree()? + b.max_atom_degree()?),
            Node::With(a, b) | Node::Plus(a, b) => Some(a.max_atom_degree()?.max(b.max_atom_degree()?)),
            Node::Dual(a) | Node::S(a) => a.max_atom_degree(),
            Node::Bang(_) => None,
        }
    }

    fn malformed(&self, a: &Atom) -> Error {
        Error::MalformedAtom { atom: a.to_string(), space: self.to_string() }
    }

    /// The coherence verdict between two atoms of the web.
    ///
    /// In REL every pair is [`Verdict::Neutral`].
    pub fn coherent(&self, a: &Atom, b: &Atom) -> Result<Verdict> {
        if self.kind == Kind::Rel {
            return Ok(Verdict::Neutral);
        }
        self.verdict(a, b)
    }

    fn verdict(&self, a: &Atom, b: &Atom) -> Result<Verdict> {
        match &*self.node {
            Node::Base(bs) => {
                if !bs.atoms.contains(a) {
                    return Err(self.malformed(a));
                }
                if !bs.atoms.contains(b) {
                    return Err(self.malformed(b));
                }
                let key = (a.clone(), b.clone());
                Ok(if bs.scoh.contains(&key) {
                    Verdict::StrictlyCoherent
                } else if bs.sincoh.contains(&key) {
                    Verdict::StrictlyIncoherent
                } else {
                    Verdict::Neutral
                })
            }
            Node::Top => Err(self.malformed(a)),
            Node::Tensor(e, f) | Node::Limpl(e, f) => {
                let (a0, a1) = a.as_pair().ok_or_else(|| self.malformed(a))?;
                let (b0, b1) = b.as_pair().ok_or_else(|| self.malformed(b))?;
                let v0 = e.verdict(a0, b0)?;
                let v1 = f.verdict(a1, b1)?;
                Ok(match &*self.node {
                    Node::Tensor(..) => v0.tensor(v1),
                    _ => v0.tensor(v1.dual()).dual(),
                })
            }
            Node::With(e, f) | Node::Plus(e, f) => {
                let (i, a0) = a.as_tag().ok_or_else(|| self.malformed(a))?;
                let (j, b0) = b.as_tag().ok_or_else(|| self.malformed(b))?;
                if i != j {
                    // Check shapes before answering.
                    let ei = if i == 0 { e } else { f };
                    let ej = if j == 0 { e } else { f };
                    ei.verdict(a0, a0)?;
                    ej.verdict(b0, b0)?;
                    return Ok(match &*self.node {
                        Node::With(..) => Verdict::StrictlyCoherent,
                        _ => Verdict::StrictlyIncoherent,
                    });
                }
                let ei = if i == 0 { e } else { f };
                ei.verdict(a0, b0)
            }
            Node::Dual(e) => Ok(e.verdict(a, b)?.dual()),
            Node::S(e) => {
                let (i, a0) = a.as_tag().ok_or_else(|| self.malformed(a))?;
                let (j, b0) = b.as_tag().ok_or_else(|| self.malformed(b))?;
                let v = e.verdict(a0, b0)?;
                Ok(if i == j || v != Verdict::Neutral { v } else { Verdict::StrictlyIncoherent })
            }
            Node::Bang(e) => {
                let m0 = a.as_mset().ok_or_else(|| self.malformed(a))?;
                let m1 = b.as_mset().ok_or_else(|| self.malformed(b))?;
                let s0: Vec<&Atom> = m0.support().collect();
                let s1: Vec<&Atom> = m1.support().collect();
                let mut table = BTreeMap::new();
                let mut all_coh = true;
                for x in &s0 {
                    for y in &s1 {
                        let v = e.verdict(x, y)?;
                        if !v.coherent() {
                            all_coh = false;
                        }
                        table.insert(((*x).clone(), (*y).clone()), v);
                    }
                }
                if !all_coh {
                    return Ok(Verdict::StrictlyIncoherent);
                }
                if m0.len() == m1.len() && neutral_matching(m0, m1, &table) {
                    Ok(Verdict::Neutral)
                } else {
                    Ok(Verdict::StrictlyCoherent)
                }
            }
        }
    }

    /// Web membership (structural shape, base membership and, in COH, the
    /// multiclique restriction on `!`).
    pub fn contains(&self, a: &Atom) -> bool {
        match &*self.node {
            Node::Base(bs) => bs.atoms.contains(a),
            Node::Top => false,
            Node::Tensor(e, f) | Node::Limpl(e, f) => match a.as_pair() {
                Some((x, y)) => e.contains(x) && f.contains(y),
                None => false,
            },
            Node::With(e, f) | Node::Plus(e, f) => match a.as_tag() {
                Some((0, x)) => e.contains(x),
                Some((_, x)) => f.contains(x),
                None => false,
            },
            Node::Dual(e) => e.contains(a),
            Node::S(e) => match a.as_tag() {
                Some((_, x)) => e.contains(x),
                None => false,
            },
            Node::Bang(e) => match a.as_mset() {
                Some(m) => {
                    m.support().all(|x| e.contains(x)) && (self.kind != Kind::Coh || e.is_clique_iter(m.support()))
                }
                None => false,
            },
        }
    }

    fn is_clique_iter<'a>(&self, xs: impl Iterator<Item = &'a Atom>) -> bool {
        let xs: Vec<&Atom> = xs.collect();
        for (i, a) in xs.iter().enumerate() {
            for b in &xs[i..] {
                match self.coherent(a, b) {
                    Ok(v) if v.coherent() => {}
                    _ => return false,
                }
            }
        }
        true
    }

    /// Whether `x` is a clique: pairwise coherent, including each atom with
    /// itself.
    pub fn is_clique<'a, I: IntoIterator<Item = &'a Atom>>(&self, x: I) -> bool {
        self.is_clique_iter(x.into_iter())
    }

    /// All web atoms of nested degree at most `budget.max_degree`, sorted by
    /// degree then structurally.
    pub fn enumerate(&self, budget: Budget) -> Result<Vec<Atom>> {
        let mut v = self.enum_upto(budget.max_degree, budget.max_atoms)?;
        v.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.cmp(b)));
        if v.len() > budget.max_atoms {
            return Err(self.exceeded(budget.max_atoms));
        }
        Ok(v)
    }

    fn exceeded(&self, limit: usize) -> Error {
        Error::BudgetExceeded { what: format!("web of {self}"), limit }
    }

    fn enum_upto(&self, d: u32, limit: usize) -> Result<Vec<Atom>> {
        let out = match &*self.node {
            Node::Base(bs) => bs.atoms.clone(),
            Node::Top => vec![],
            Node::Tensor(e, f) | Node::Limpl(e, f) => {
                let xs = e.enum_upto(d, limit)?;
                let ys = f.enum_upto(d, limit)?;
                let mut out = Vec::new();
                for x in &xs {
                    for y in &ys {
                        if x.degree() + y.degree() <= d {
                            out.push(Atom::pair(x.clone(), y.clone()));
                            if out.len() > limit {
                                return Err(self.exceeded(limit));
                            }
                        }
                    }
                }
                out
            }
            Node::With(e, f) | Node::Plus(e, f) => {
                let mut out: Vec<Atom> = e.enum_upto(d, limit)?.into_iter().map(|x| Atom::tag(0, x)).collect();
                out.extend(f.enum_upto(d, limit)?.into_iter().map(|x| Atom::tag(1, x)));
                out
            }
            Node::Dual(e) => e.enum_upto(d, limit)?,
            Node::S(e) => {
                let xs = e.enum_upto(d, limit)?;
                let mut out: Vec<Atom> = xs.iter().map(|x| Atom::tag(0, x.clone())).collect();
                out.extend(xs.into_iter().map(|x| Atom::tag(1, x)));
                out
            }
            Node::Bang(e) => {
                if d == 0 {
                    vec![Atom::mset(Multiset::empty())]
                } else {
                    let xs = e.enum_upto(d - 1, limit)?;
                    let ms = multisets_up_to(&xs, d);
                    if ms.len() > limit {
                        return Err(self.exceeded(limit));
                    }
                    ms.into_iter()
                        .filter(|m| self.kind != Kind::Coh || e.is_clique_iter(m.support()))
                        .map(Atom::mset)
                        .collect()
                }
            }
        };
        if out.len() > limit {
            return Err(self.exceeded(limit));
        }
        Ok(out)
    }

    /// Whether `s` is a morphism from `self` to `target`, i.e. a clique of
    /// `self ⊸ target`. Always true in REL.
    pub fn is_morphism(&self, target: &Space, s: &Rel) -> bool {
        self.morphism_violation(target, s).is_none()
    }

    /// The first pair of pairs of `s` witnessing that `s` is not a clique of
    /// `self ⊸ target`, or an out-of-web pair.
    pub fn morphism_violation(&self, target: &Space, s: &Rel) -> Option<((Atom, Atom), (Atom, Atom))> {
        if self.kind == Kind::Rel {
            return None;
        }
        let hom = Space::limpl(self, target);
        let atoms: Vec<Atom> = s.pairs().iter().map(|(a, b)| Atom::pair(a.clone(), b.clone())).collect();
        let pairs: Vec<&(Atom, Atom)> = s.pairs().iter().collect();
        for (i, x) in atoms.iter().enumerate() {
            if !hom.contains(x) {
                return Some((pairs[i].clone(), pairs[i].clone()));
            }
            for (j, y) in atoms.iter().enumerate().skip(i) {
                match hom.coherent(x, y) {
                    Ok(v) if v.coherent() => {}
                    _ => return Some((pairs[i].clone(), pairs[j].clone())),
                }
            }
        }
        None
    }

    /// Name for base spaces, `None` otherwise.
    pub fn base_name(&self) -> Option<&str> {
        match &*self.node {
            Node::Base(b) => Some(&b.name),
            _ => None,
        }
    }

    /// The atoms of a base space.
    pub fn base_atoms(&self) -> Option<&[Atom]> {
        match &*self.node {
            Node::Base(b) => Some(&b.atoms),
            _ => None,
        }
    }
}

/// Whether the elements of `m0` and `m1` (of equal cardinality) can be
/// enumerated so that corresponding elements are neutral.
fn neutral_matching(m0: &Multiset, m1: &Multiset, table: &BTreeMap<(Atom, Atom), Verdict>) -> bool {
    let left = m0.elements();
    let right = m1.elements();
    let n = left.len();
    let adj: Vec<Vec<usize>> = left
        .iter()
        .map(|x| (0..n).filter(|&j| table.get(&(x.clone(), right[j].clone())) == Some(&Verdict::Neutral)).collect())
        .collect();
    let mut owner: Vec<Option<usize>> = vec![None; n];
    fn augment(u: usize, adj: &[Vec<usize>], seen: &mut [bool], owner: &mut [Option<usize>]) -> bool {
        for &v in &adj[u] {
            if !seen[v] {
                seen[v] = true;
                if owner[v].is_none() || augment(owner[v].unwrap(), adj, seen, owner) {
                    owner[v] = Some(u);
                    return true;
                }
            }
        }
        false
    }
    (0..n).all(|u| {
        let mut seen = vec![false; n];
        augment(u, &adj, &mut seen, &mut owner)
    })
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn paren(s: &Space) -> String {
            match &*s.node {
                Node::Base(_) | Node::Top => s.to_string(),
                _ => format!("({s})"),
            }
        }
        match &*self.node {
            Node::Base(b) => write!(f, "{}", b.name),
            Node::Top => write!(f, "⊤"),
            Node::Tensor(a, b) => write!(f, "{} ⊗ {}", paren(a), paren(b)),
            Node::With(a, b) => write!(f, "{} & {}", paren(a), paren(b)),
            Node::Plus(a, b) => write!(f, "{} ⊕ {}", paren(a), paren(b)),
            Node::Limpl(a, b) => write!(f, "{} ⊸ {}", paren(a), paren(b)),
            Node::Dual(a) => write!(f, "~{}", paren(a)),
            Node::S(a) => write!(f, "S {}", paren(a)),
            Node::Bang(a) => write!(f, "!{}", paren(a)),
        }
    }
}

/// Free-function form of [`Space::enumerate`].
pub fn enumerate_web(space: &Space, budget: Budget) -> Result<Vec<Atom>> {
    space.enumerate(budget)
}

/// Free-function form of [`Space::coherent`].
pub fn coherent(space: &Space, a: &Atom, b: &Atom) -> Result<Verdict> {
    space.coherent(a, b)
}

/// Free-function form of [`Space::is_clique`].
pub fn is_clique(space: &Space, x: &BTreeSet<Atom>) -> bool {
    space.is_clique(x.iter())
}

/// Free-function form of [`Space::is_morphism`].
pub fn is_morphism(src: &Space, tgt: &Space, s: &Rel) -> bool {
    src.is_morphism(tgt, s)
}

/// `Matapp s x = {b | a ∈ x, (a, b) ∈ s}`.
pub fn matapp(s: &Rel, x: &BTreeSet<Atom>) -> BTreeSet<Atom> {
    s.pairs().iter().filter(|(a, _)| x.contains(a)).map(|(_, b)| b.clone()).collect()
}

/// `E⊥`.
pub fn dual(space: &Space) -> Space {
    space.dual()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bool_components_are_incoherent_in_coh() {
        let b = Space::boolean(Kind::Coh);
        let v = b.coherent(&Atom::tag(0, Atom::star()), &Atom::tag(1, Atom::star())).unwrap();
        assert!(!v.coherent());
        assert!(!b.is_clique([Atom::tag(0, Atom::star()), Atom::tag(1, Atom::star())].iter()));
    }

    #[test]
    fn s_of_one_in_coh() {
        let s1 = Space::one(Kind::Coh).s();
        let v = s1.coherent(&Atom::point(0), &Atom::point(1)).unwrap();
        assert_eq!(v, Verdict::StrictlyIncoherent);
    }

    #[test]
    fn nucs_bool_self_incoherent_multiset() {
        let b = Space::boolean(Kind::Nucs);
        let m = Atom::mset([Atom::point(0), Atom::point(1)].into_iter().collect());
        let v = b.bang().coherent(&m, &m).unwrap();
        assert_eq!(v, Verdict::StrictlyIncoherent);
        assert!(b.bang().contains(&m));
        assert!(!b.with_kind(Kind::Coh).bang().contains(&m));
    }

    #[test]
    fn unit_is_self_dual_in_nucs() {
        let one = Space::one(Kind::Nucs);
        let v = one.dual().coherent(&Atom::star(), &Atom::star()).unwrap();
        assert_eq!(v, Verdict::Neutral);
    }

    #[test]
    fn dual_of_coh_bool_makes_points_coherent() {
        let b = Space::boolean(Kind::Coh).dual();
        assert!(b.is_clique([Atom::point(0), Atom::point(1)].iter()));
    }

    #[test]
    fn enumerate_examples() {
        let one = Space::one(Kind::Coh);
        let w = one.bang().enumerate(Budget::degree(2)).unwrap();
        assert_eq!(w.len(), 3);
        let i = Space::interval(Kind::Coh);
        assert_eq!(i.enumerate(Budget::degree(5)).unwrap().len(), 2);
        assert_eq!(i.bang().enumerate(Budget::degree(1)).unwrap().len(), 3);
    }

    #[test]
    fn budget_exceeded_is_reported() {
        let i = Space::interval(Kind::Nucs);
        let err = i.bang().bang().enumerate(Budget { max_degree: 4, max_atoms: 10 }).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { .. }));
    }

    #[test]
    fn sigma_is_a_morphism() {
        let one = Space::one(Kind::Coh);
        let sigma: Rel = [(Atom::point(0), Atom::star()), (Atom::point(1), Atom::star())].into_iter().collect();
        assert!(one.s().is_morphism(&one, &sigma));
    }
}
