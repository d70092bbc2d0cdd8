//! Text formats for atoms, relations (`.rel`) and spaces (`.space`).
//!
//! # Atoms
//!
//! ```text
//! atom  ::= '*' | NAME | TAG ('·' | '.') atom | '(' atom ',' atom ')'
//!         | '[' [atom (',' atom)*] ']'
//! TAG   ::= '0' | '1'
//! NAME  ::= [A-Za-z0-9_']+
//! ```
//!
//! A leading `0` or `1` immediately followed by `·` or `.` is a tag; any
//! other run of name characters is a base symbol.
//!
//! # Relations
//!
//! One pair per line, `a ↦ b` (or `a -> b`). Blank lines and `#` comments
//! are ignored. Optional header lines `source = SPACE` and
//! `target = SPACE` record the intended webs as space expressions.
//!
//! # Spaces
//!
//! ```text
//! space NAME kind=coh|nucs|rel atoms{a, b, …} scoh{(a,b), …} [sincoh{(a,c), …}]
//! space NAME = EXPR
//! ```
//!
//! Space expressions use `!E`, `S E`, `~E` (prefix, tightest), then
//! `E (x) F`, `E & F`, `E (+) F`, and `E -o F` (loosest, right
//! associative), with the Unicode forms `⊗ ⊕ ⊸ ⊥` also accepted. The
//! names `1`, `I` (= `1 & 1`), `Bool` (= `1 ⊕ 1`) and `T` (= `⊤`) are
//! predefined.

use std::collections::BTreeMap;

use crate::atom::{Atom, Multiset};
use crate::error::{Error, Result};
use crate::rel::Rel;
use crate::space::{Kind, Space};

struct Lexer<'a> {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    line_start: usize,
    _src: &'a str,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Lexer<'a> {
        Lexer { chars: src.chars().collect(), pos: 0, line: 1, line_start: 0, _src: src }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { line: self.line, col: self.pos - self.line_start + 1, msg: msg.into() })
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn peek_at(&self, k: usize) -> Option<char> {
        self.chars.get(self.pos + k).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += 1;
        if c == '\n' {
            self.line += 1;
            self.line_start = self.pos;
        }
        Some(c)
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if c == '#' {
                while let Some(c) = self.peek() {
                    if c == '\n' {
                        break;
                    }
                    self.bump();
                }
            } else if c.is_whitespace() {
                self.bump();
            } else {
                break;
            }
        }
    }

    fn eat(&mut self, s: &str) -> bool {
        self.skip_ws();
        let n = s.chars().count();
        let matches = s.chars().enumerate().all(|(i, c)| self.peek_at(i) == Some(c));
        if matches {
            for _ in 0..n {
                self.bump();
            }
        }
        matches
    }

    fn expect(&mut self, s: &str) -> Result<()> {
        if self.eat(s) {
            Ok(())
        } else {
            self.err(format!("expected `{s}`"))
        }
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.peek().is_none()
    }

    fn name(&mut self) -> Result<String> {
        self.skip_ws();
        let mut s = String::new();
        while let Some(c) = self.peek() {
            if is_name_char(c) {
                s.push(c);
                self.bump();
            } else {
                break;
            }
        }
        if s.is_empty() {
            self.err("expected a name")
        } else {
            Ok(s)
        }
    }

    fn atom(&mut self) -> Result<Atom> {
        self.skip_ws();
        match self.peek() {
            Some('*') => {
                self.bump();
                Ok(Atom::star())
            }
            Some('(') => {
                self.bump();
                let a = self.atom()?;
                self.expect(",")?;
                let b = self.atom()?;
                self.expect(")")?;
                Ok(Atom::pair(a, b))
            }
            Some('[') => {
                self.bump();
                let mut elems = Vec::new();
                if !self.eat("]") {
                    loop {
                        elems.push(self.atom()?);
                        if self.eat("]") {
                            break;
                        }
                        self.expect(",")?;
                    }
                }
                Ok(Atom::mset(elems.into_iter().collect::<Multiset>()))
            }
            Some(c @ ('0' | '1')) if matches!(self.peek_at(1), Some('·' | '.')) => {
                self.bump();
                self.bump();
                let inner = self.atom()?;
                Ok(Atom::tag(if c == '0' { 0 } else { 1 }, inner))
            }
            Some(c) if is_name_char(c) => Ok(Atom::base(&self.name()?)),
            Some(c) => self.err(format!("unexpected character `{c}` in atom")),
            None => self.err("unexpected end of input in atom"),
        }
    }
}

fn is_name_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '\''
}

/// Parses one atom; the whole input must be consumed.
pub fn parse_atom(src: &str) -> Result<Atom> {
    let mut lx = Lexer::new(src);
    let a = lx.atom()?;
    if !lx.at_end() {
        return lx.err("trailing input after atom");
    }
    Ok(a)
}

/// A parsed relation file.
#[derive(Clone, Debug)]
pub struct RelFile {
    /// The pairs.
    pub rel: Rel,
    /// The `source = …` header, if any.
    pub source: Option<String>,
    /// The `target = …` header, if any.
    pub target: Option<String>,
}

/// Parses the `.rel` format.
pub fn parse_rel(src: &str) -> Result<RelFile> {
    let mut rel = Rel::empty();
    let mut source = None;
    let mut target = None;
    for (i, raw) in src.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let located = |e: Error| match e {
            Error::Parse { col, msg, .. } => Error::Parse { line: i + 1, col, msg },
            other => other,
        };
        for (key, slot) in [("source", &mut source), ("target", &mut target)] {
            if let Some(rest) = line.strip_prefix(key) {
                if let Some(v) = rest.trim_start().strip_prefix('=') {
                    *slot = Some(v.trim().to_string());
                }
            }
        }
        if line.starts_with("source") || line.starts_with("target") {
            continue;
        }
        let (l, r) = if let Some((l, r)) = line.split_once('↦') {
            (l, r)
        } else if let Some((l, r)) = line.split_once("->") {
            (l, r)
        } else {
            return Err(Error::Parse { line: i + 1, col: 1, msg: "expected `a ↦ b`".into() });
        };
        let a = parse_atom(l).map_err(located)?;
        let b = parse_atom(r).map_err(located)?;
        rel.insert(a, b);
    }
    Ok(RelFile { rel, source, target })
}

/// Prints a relation in the `.rel` format (one `a ↦ b` per line).
pub fn print_rel(r: &Rel) -> String {
    r.to_string()
}

/// Named spaces available to space expressions.
#[derive(Clone, Debug, Default)]
pub struct SpaceEnv {
    spaces: BTreeMap<String, Space>,
}

impl SpaceEnv {
    /// An environment with no user definitions.
    pub fn new() -> SpaceEnv {
        SpaceEnv::default()
    }

    /// Looks a name up.
    pub fn get(&self, name: &str) -> Option<&Space> {
        self.spaces.get(name)
    }

    /// Adds or replaces a definition.
    pub fn insert(&mut self, name: &str, space: Space) {
        self.spaces.insert(name.to_string(), space);
    }

    /// Defined names, sorted.
    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.spaces.keys().map(String::as_str)
    }

    /// The kind shared by all definitions, if any.
    pub fn kind(&self) -> Option<Kind> {
        self.spaces.values().next().map(Space::kind)
    }
}

/// Parses a `.space` file into an environment.
pub fn parse_space_file(src: &str) -> Result<SpaceEnv> {
    let mut env = SpaceEnv::new();
    let mut lx = Lexer::new(src);
    while !lx.at_end() {
        let kw = lx.name()?;
        if kw != "space" {
            return lx.err(format!("expected `space`, found `{kw}`"));
        }
        let name = lx.name()?;
        if lx.eat("=") {
            let kind = env.kind().unwrap_or(Kind::Coh);
            let s = space_expr(&mut lx, &env, kind)?;
            env.insert(&name, s);
            continue;
        }
        lx.expect("kind")?;
        lx.expect("=")?;
        let kind: Kind = lx.name()?.parse()?;
        let mut atoms = Vec::new();
        let mut scoh = Vec::new();
        let mut sincoh = Vec::new();
        lx.expect("atoms")?;
        lx.expect("{")?;
        if !lx.eat("}") {
            loop {
                atoms.push(lx.atom()?);
                if lx.eat("}") {
                    break;
                }
                lx.expect(",")?;
            }
        }
        for (kw, list) in [("scoh", &mut scoh), ("sincoh", &mut sincoh)] {
            if lx.eat(kw) {
                lx.expect("{")?;
                if !lx.eat("}") {
                    loop {
                        lx.expect("(")?;
                        let a = lx.atom()?;
                        lx.expect(",")?;
                        let b = lx.atom()?;
                        lx.expect(")")?;
                        list.push((a, b));
                        if lx.eat("}") {
                            break;
                        }
                        lx.expect(",")?;
                    }
                }
            }
        }
        if let Some(k) = env.kind() {
            if k != kind {
                return Err(Error::KindMismatch(format!("space {name} is {kind} but earlier spaces are {k}")));
            }
        }
        let s = Space::base(&name, kind, atoms, &scoh, &sincoh)?;
        env.insert(&name, s);
    }
    Ok(env)
}

/// Parses a space expression against `env`; predefined names are built in
/// `kind` (or in the kind of the environment, when it has definitions).
pub fn parse_space_expr(src: &str, env: &SpaceEnv, kind: Kind) -> Result<Space> {
    let mut lx = Lexer::new(src);
    let kind = env.kind().unwrap_or(kind);
    let s = space_expr(&mut lx, env, kind)?;
    if !lx.at_end() {
        return lx.err("trailing input after space expression");
    }
    Ok(s)
}

fn space_expr(lx: &mut Lexer, env: &SpaceEnv, kind: Kind) -> Result<Space> {
    let lhs = space_plus(lx, env, kind)?;
    if lx.eat("-o") || lx.eat("⊸") {
        let rhs = space_expr(lx, env, kind)?;
        return Ok(Space::limpl(&lhs, &rhs));
    }
    Ok(lhs)
}

fn space_plus(lx: &mut Lexer, env: &SpaceEnv, kind: Kind) -> Result<Space> {
    let mut acc = space_with(lx, env, kind)?;
    while lx.eat("(+)") || lx.eat("⊕") {
        let rhs = space_with(lx, env, kind)?;
        acc = Space::plus(&acc, &rhs);
    }
    Ok(acc)
}

fn space_with(lx: &mut Lexer, env: &SpaceEnv, kind: Kind) -> Result<Space> {
    let mut acc = space_tensor(lx, env, kind)?;
    while lx.eat("&") {
        let rhs = space_tensor(lx, env, kind)?;
        acc = Space::with(&acc, &rhs);
    }
    Ok(acc)
}

fn space_tensor(lx: &mut Lexer, env: &SpaceEnv, kind: Kind) -> Result<Space> {
    let mut acc = space_prefix(lx, env, kind)?;
    while lx.eat("(x)") || lx.eat("⊗") {
        let rhs = space_prefix(lx, env, kind)?;
        acc = Space::tensor(&acc, &rhs);
    }
    Ok(acc)
}

fn space_prefix(lx: &mut Lexer, env: &SpaceEnv, kind: Kind) -> Result<Space> {
    lx.skip_ws();
    if lx.eat("!") {
        return Ok(space_prefix(lx, env, kind)?.bang());
    }
    if lx.eat("~") {
        return Ok(space_prefix(lx, env, kind)?.dual());
    }
    if lx.peek() == Some('S') && !lx.peek_at(1).is_some_and(is_name_char) {
        lx.bump();
        return Ok(space_prefix(lx, env, kind)?.s());
    }
    let s = if lx.eat("(") {
        let s = space_expr(lx, env, kind)?;
        lx.expect(")")?;
        s
    } else if lx.eat("⊤") {
        Space::top(kind)
    } else {
        let name = lx.name()?;
        match env.get(&name) {
            Some(s) => s.clone(),
            None => match name.as_str() {
                "1" => Space::one(kind),
                "I" => Space::interval(kind),
                "Bool" => Space::boolean(kind),
                "T" => Space::top(kind),
                _ => return lx.err(format!("unknown space `{name}`")),
            },
        }
    };
    if lx.eat("⊥") {
        return Ok(s.dual());
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn atom_round_trip() {
        for src in ["*", "0·*", "(a,1·b)", "[a,a,b]", "[]", "[0·[*],(x,y)]"] {
            let a = parse_atom(src).unwrap();
            assert_eq!(parse_atom(&a.to_string()).unwrap(), a, "{src}");
        }
        assert_eq!(parse_atom("0.a").unwrap(), Atom::tag(0, Atom::base("a")));
        assert_eq!(parse_atom("3").unwrap(), Atom::base("3"));
    }

    #[test]
    fn rel_file() {
        let f = parse_rel("source = !E\n# c\n[a] ↦ b\n[a,a] -> b\n").unwrap();
        assert_eq!(f.rel.len(), 2);
        assert_eq!(f.source.as_deref(), Some("!E"));
        assert!(parse_rel("nonsense").is_err());
    }

    #[test]
    fn space_file_and_exprs() {
        let env =
            parse_space_file("space E kind=nucs atoms{a, b} scoh{(a,a)} sincoh{(a,b)}\nspace F = !E (x) S E").unwrap();
        let e = env.get("E").unwrap();
        assert_eq!(e.kind(), Kind::Nucs);
        let f = parse_space_expr("E -o I & Bool", &env, Kind::Coh).unwrap();
        assert_eq!(f.kind(), Kind::Nucs);
        assert!(env.get("F").is_some());
        assert!(parse_space_expr("E -o Q", &env, Kind::Coh).is_err());
    }
}
