//! Concrete syntax.
//!
//! ```text
//! file   ::= [ctx "|-"] term
//! ctx    ::= x ":" type ("," x ":" type)*
//! type   ::= tatom ["->" type]             tatom ::= "i" | "i"<d> | "(" type ")"
//! term   ::= "\" x ":" type "." term       (also "λ")
//!          | term "+" term                 (left associative, loosest)
//!          | term term                     (application, left associative)
//!          | op term                       (prefix, binds tighter than application)
//!          | x | "0" | "#"<n> | const | "(" term ")"
//! op     ::= "D" | "pi0^"<d> | "pi1^"<d> | "iota0^"<d> | "iota1^"<d>
//!          | "sigma^"<d> | "c^"<d> | "fix" | "fix[" type "]"
//! const  ::= ("succ" | "pred" | "if0") ["^"<d>]
//! ```
//!
//! `0` is the zero term; numerals are written `#n`. The depth suffix
//! `^d` may be omitted (meaning 0) on every operator except `c`, where it
//! distinguishes the flip from a variable named `c`. `fix M` requires `M`
//! to be an abstraction `\f:A. …` (its type records `A`); otherwise write
//! `fix[A] M`. Comments run from `--` to the end of the line.

use std::fmt;

use crate::error::{CalcError, Result};
use crate::syntax::{Constant, Context, Term, Ty};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(u64),
    Numeral(u64),
    Lambda,
    Colon,
    Dot,
    Comma,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Plus,
    Caret,
    Arrow,
    Turnstile,
    Eof,
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(src: &str) -> Result<Vec<Spanned>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    let err = |line, col, msg: String| CalcError::Parse { line, col, msg };
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, col);
        let mut adv = |n: usize, i: &mut usize| {
            *i += n;
            col += n;
        };
        match c {
            '\n' => {
                i += 1;
                line += 1;
                col = 1;
                continue;
            }
            c if c.is_whitespace() => {
                adv(1, &mut i);
                continue;
            }
            '-' if chars.get(i + 1) == Some(&'-') => {
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                }
                continue;
            }
            '-' if chars.get(i + 1) == Some(&'>') => {
                adv(2, &mut i);
                out.push(Spanned { tok: Tok::Arrow, line: l0, col: c0 });
                continue;
            }
            '|' if chars.get(i + 1) == Some(&'-') => {
                adv(2, &mut i);
                out.push(Spanned { tok: Tok::Turnstile, line: l0, col: c0 });
                continue;
            }
            '#' | '0'..='9' => {
                let numeral = c == '#';
                let mut j = if numeral { i + 1 } else { i };
                let start = j;
                while j < chars.len() && chars[j].is_ascii_digit() {
                    j += 1;
                }
                if j == start {
                    return Err(err(l0, c0, "expected digits after `#`".into()));
                }
                let s: String = chars[start..j].iter().collect();
                let n: u64 = s.parse().map_err(|_| err(l0, c0, format!("number `{s}` is too large")))?;
                adv(j - i, &mut i);
                out.push(Spanned { tok: if numeral { Tok::Numeral(n) } else { Tok::Int(n) }, line: l0, col: c0 });
                continue;
            }
            c if (c.is_alphabetic() || c == '_') && c != 'λ' => {
                let mut j = i;
                while j < chars.len() && (chars[j].is_alphanumeric() || chars[j] == '_' || chars[j] == '\'') {
                    j += 1;
                }
                let s: String = chars[i..j].iter().collect();
                adv(j - i, &mut i);
                out.push(Spanned { tok: Tok::Ident(s), line: l0, col: c0 });
                continue;
            }
            _ => {}
        }
        let tok = match c {
            '\\' | 'λ' => Tok::Lambda,
            ':' => Tok::Colon,
            '.' => Tok::Dot,
            ',' => Tok::Comma,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '[' => Tok::LBracket,
            ']' => Tok::RBracket,
            '+' => Tok::Plus,
            '^' => Tok::Caret,
            _ => return Err(err(l0, c0, format!("unexpected character `{c}`"))),
        };
        adv(1, &mut i);
        out.push(Spanned { tok, line: l0, col: c0 });
    }
    out.push(Spanned { tok: Tok::Eof, line, col });
    Ok(out)
}

const PREFIX_OPS: &[&str] = &["D", "pi0", "pi1", "iota0", "iota1", "sigma", "fix"];

fn is_keyword(s: &str) -> bool {
    PREFIX_OPS.contains(&s) || Constant::ALL.iter().any(|c| c.name() == s)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek2(&self) -> &Tok {
        &self.toks[(self.pos + 1).min(self.toks.len() - 1)].tok
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, msg: impl Into<String>) -> Result<T> {
        let s = &self.toks[self.pos];
        Err(CalcError::Parse { line: s.line, col: s.col, msg: msg.into() })
    }

    fn expect(&mut self, t: Tok, what: &str) -> Result<()> {
        if *self.peek() == t {
            self.bump();
            Ok(())
        } else {
            self.error(format!("expected {what}, found {}", describe(self.peek())))
        }
    }

    fn ident(&mut self) -> Result<String> {
        match self.peek().clone() {
            Tok::Ident(s) if !is_keyword(&s) => {
                self.bump();
                Ok(s)
            }
            t => self.error(format!("expected a variable, found {}", describe(&t))),
        }
    }

    fn ty(&mut self) -> Result<Ty> {
        let a = self.ty_atom()?;
        if *self.peek() == Tok::Arrow {
            self.bump();
            Ok(Ty::arrow(a, self.ty()?))
        } else {
            Ok(a)
        }
    }

    fn ty_atom(&mut self) -> Result<Ty> {
        match self.peek().clone() {
            Tok::LParen => {
                self.bump();
                let t = self.ty()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(t)
            }
            Tok::Ident(s) if s == "i" => {
                self.bump();
                Ok(Ty::nat())
            }
            Tok::Ident(s) if s.starts_with('i') && s[1..].chars().all(|c| c.is_ascii_digit()) => {
                self.bump();
                match s[1..].parse() {
                    Ok(d) => Ok(Ty::Nat(d)),
                    Err(_) => self.error("type depth is too large"),
                }
            }
            t => self.error(format!("expected a type, found {}", describe(&t))),
        }
    }

    fn depth(&mut self, required: bool) -> Result<u32> {
        if *self.peek() == Tok::Caret {
            self.bump();
            match self.bump() {
                Tok::Int(n) => u32::try_from(n).or_else(|_| self.error("depth is too large")),
                t => self.error(format!("expected a depth after `^`, found {}", describe(&t))),
            }
        } else if required {
            self.error("expected `^d`")
        } else {
            Ok(0)
        }
    }

    fn term(&mut self) -> Result<Term> {
        if *self.peek() == Tok::Lambda {
            return self.lambda();
        }
        let mut t = self.app()?;
        while *self.peek() == Tok::Plus {
            self.bump();
            let r = if *self.peek() == Tok::Lambda { self.lambda()? } else { self.app()? };
            t = Term::Plus(Box::new(t), Box::new(r));
        }
        Ok(t)
    }

    fn lambda(&mut self) -> Result<Term> {
        self.expect(Tok::Lambda, "`\\`")?;
        let x = self.ident()?;
        self.expect(Tok::Colon, "`:`")?;
        let a = self.ty()?;
        self.expect(Tok::Dot, "`.`")?;
        let body = self.term()?;
        Ok(Term::Abs(x, a, Box::new(body)))
    }

    fn starts_arg(&self) -> bool {
        matches!(self.peek(), Tok::Ident(_) | Tok::Int(_) | Tok::Numeral(_) | Tok::LParen | Tok::Lambda)
    }

    fn app(&mut self) -> Result<Term> {
        let mut t = self.prefix()?;
        while self.starts_arg() {
            if *self.peek() == Tok::Lambda {
                let l = self.lambda()?;
                return Ok(Term::App(Box::new(t), Box::new(l)));
            }
            let a = self.prefix()?;
            t = Term::App(Box::new(t), Box::new(a));
        }
        Ok(t)
    }

    fn prefix(&mut self) -> Result<Term> {
        let Tok::Ident(s) = self.peek().clone() else {
            return self.atom();
        };
        let flip = s == "c" && *self.peek2() == Tok::Caret;
        if !flip && !PREFIX_OPS.contains(&s.as_str()) {
            return self.atom();
        }
        self.bump();
        if flip {
            let k = self.depth(true)?;
            return Ok(Term::Flip(k, Box::new(self.prefix()?)));
        }
        match s.as_str() {
            "D" => Ok(Term::D(Box::new(self.prefix()?))),
            "fix" => {
                let annot = if *self.peek() == Tok::LBracket {
                    self.bump();
                    let a = self.ty()?;
                    self.expect(Tok::RBracket, "`]`")?;
                    Some(a)
                } else {
                    None
                };
                let body = self.prefix()?;
                let a = match (annot, &body) {
                    (Some(a), _) => a,
                    (None, Term::Abs(_, a, _)) => a.clone(),
                    (None, _) => return self.error("`fix M` needs `M` to be an abstraction; write `fix[A] M`"),
                };
                Ok(Term::Fix(a, Box::new(body)))
            }
            op => {
                let k = self.depth(false)?;
                let m = Box::new(self.prefix()?);
                Ok(match op {
                    "pi0" => Term::Proj(0, k, m),
                    "pi1" => Term::Proj(1, k, m),
                    "iota0" => Term::Inj(0, k, m),
                    "iota1" => Term::Inj(1, k, m),
                    _ => Term::Sum(k, m),
                })
            }
        }
    }

    fn atom(&mut self) -> Result<Term> {
        match self.peek().clone() {
            Tok::LParen => {
                self.bump();
                let t = self.term()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(t)
            }
            Tok::Int(0) => {
                self.bump();
                Ok(Term::Zero)
            }
            Tok::Int(n) => self.error(format!("bare number `{n}`; numerals are written `#{n}`")),
            Tok::Numeral(n) => {
                self.bump();
                Ok(Term::Num(n))
            }
            Tok::Ident(s) => {
                if let Some(c) = Constant::ALL.into_iter().find(|c| c.name() == s) {
                    self.bump();
                    let k = self.depth(false)?;
                    return Ok(Term::Const(c, k));
                }
                Ok(Term::Var(self.ident()?))
            }
            t => self.error(format!("expected a term, found {}", describe(&t))),
        }
    }

    fn context(&mut self) -> Result<Context> {
        let mut ctx = Vec::new();
        loop {
            let x = self.ident()?;
            self.expect(Tok::Colon, "`:`")?;
            let a = self.ty()?;
            if ctx.iter().any(|(y, _): &(String, Ty)| *y == x) {
                return self.error(format!("variable `{x}` declared twice"));
            }
            ctx.push((x, a));
            if *self.peek() == Tok::Comma {
                self.bump();
            } else {
                return Ok(ctx);
            }
        }
    }

    fn end(&mut self) -> Result<()> {
        if *self.peek() == Tok::Eof {
            Ok(())
        } else {
            self.error(format!("unexpected {}", describe(self.peek())))
        }
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Ident(s) => format!("`{s}`"),
        Tok::Int(n) => format!("`{n}`"),
        Tok::Numeral(n) => format!("`#{n}`"),
        Tok::Lambda => "`\\`".into(),
        Tok::Colon => "`:`".into(),
        Tok::Dot => "`.`".into(),
        Tok::Comma => "`,`".into(),
        Tok::LParen => "`(`".into(),
        Tok::RParen => "`)`".into(),
        Tok::LBracket => "`[`".into(),
        Tok::RBracket => "`]`".into(),
        Tok::Plus => "`+`".into(),
        Tok::Caret => "`^`".into(),
        Tok::Arrow => "`->`".into(),
        Tok::Turnstile => "`|-`".into(),
        Tok::Eof => "end of input".into(),
    }
}

/// Parses a term.
pub fn parse(src: &str) -> Result<Term> {
    let mut p = Parser { toks: lex(src)?, pos: 0 };
    let t = p.term()?;
    p.end()?;
    Ok(t)
}

/// Parses a type.
pub fn parse_ty(src: &str) -> Result<Ty> {
    let mut p = Parser { toks: lex(src)?, pos: 0 };
    let t = p.ty()?;
    p.end()?;
    Ok(t)
}

/// Parses a `.cdl` file: an optional context `x : A, y : B |-` followed by
/// a term.
pub fn parse_judgment(src: &str) -> Result<(Context, Term)> {
    let toks = lex(src)?;
    let has_ctx = toks.iter().any(|t| t.tok == Tok::Turnstile);
    let mut p = Parser { toks, pos: 0 };
    let ctx = if has_ctx {
        let c = if *p.peek() == Tok::Turnstile { Vec::new() } else { p.context()? };
        p.expect(Tok::Turnstile, "`|-`")?;
        c
    } else {
        Vec::new()
    };
    let t = p.term()?;
    p.end()?;
    Ok((ctx, t))
}

/// Prints a context in the syntax accepted by [`parse_judgment`].
pub fn show_context(ctx: &[(String, Ty)]) -> String {
    ctx.iter().map(|(x, a)| format!("{x} : {a}")).collect::<Vec<_>>().join(", ")
}

fn depth_suffix(k: u32) -> String {
    if k == 0 {
        String::new()
    } else {
        format!("^{k}")
    }
}

// Precedence levels: 0 top, 1 left of `+`, 2 right of `+` / head of an
// application, 3 argument / operand of a prefix operator.
fn print(t: &Term, level: u8, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let paren = |needed: bool, f: &mut fmt::Formatter<'_>, body: &dyn Fn(&mut fmt::Formatter<'_>) -> fmt::Result| {
        if needed {
            write!(f, "(")?;
            body(f)?;
            write!(f, ")")
        } else {
            body(f)
        }
    };
    match t {
        Term::Var(x) => write!(f, "{x}"),
        Term::Zero => write!(f, "0"),
        Term::Num(n) => write!(f, "#{n}"),
        Term::Const(c, k) => write!(f, "{}{}", c.name(), depth_suffix(*k)),
        Term::Abs(x, a, m) => paren(level > 0, f, &|f| {
            write!(f, "\\{x}:{a}. ")?;
            print(m, 0, f)
        }),
        Term::Plus(m, n) => paren(level > 1, f, &|f| {
            print(m, 1, f)?;
            write!(f, " + ")?;
            print(n, 2, f)
        }),
        Term::App(m, n) => paren(level > 2, f, &|f| {
            print(m, 2, f)?;
            write!(f, " ")?;
            print(n, 3, f)
        }),
        Term::D(m) => paren(level > 3, f, &|f| {
            write!(f, "D ")?;
            print(m, 3, f)
        }),
        Term::Proj(i, k, m) => paren(level > 3, f, &|f| {
            write!(f, "pi{i}^{k} ")?;
            print(m, 3, f)
        }),
        Term::Inj(i, k, m) => paren(level > 3, f, &|f| {
            write!(f, "iota{i}^{k} ")?;
            print(m, 3, f)
        }),
        Term::Sum(k, m) => paren(level > 3, f, &|f| {
            write!(f, "sigma^{k} ")?;
            print(m, 3, f)
        }),
        Term::Flip(k, m) => paren(level > 3, f, &|f| {
            write!(f, "c^{k} ")?;
            print(m, 3, f)
        }),
        Term::Fix(a, m) => paren(level > 3, f, &|f| {
            match &**m {
                Term::Abs(_, b, _) if b == a => write!(f, "fix ")?,
                _ => write!(f, "fix[{a}] ")?,
            }
            print(m, 3, f)
        }),
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        print(self, 0, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::*;

    #[test]
    fn parses_identity() {
        assert_eq!(parse("\\x:i. x").unwrap(), abs("x", Ty::nat(), var("x")));
    }

    #[test]
    fn parses_depth_indices() {
        let t = parse("pi0^0 (iota1^0 M)").unwrap();
        assert_eq!(t, proj(0, 0, inj(1, 0, var("M"))));
    }

    #[test]
    fn parses_sum_with_zero() {
        assert_eq!(parse("0 + M").unwrap(), plus(Term::Zero, var("M")));
    }

    #[test]
    fn precedence() {
        let t = parse("D f x + pi1^2 y z").unwrap();
        assert_eq!(t, plus(app(d(var("f")), var("x")), app(proj(1, 2, var("y")), var("z"))));
        assert_eq!(parse("c^1 c").unwrap(), flip(1, var("c")));
    }

    #[test]
    fn fix_and_constants() {
        let t = parse("fix (\\f:i -> i. \\n:i. if0 n #0 (f (pred n)))").unwrap();
        assert!(matches!(t, Term::Fix(Ty::Arrow(..), _)));
        assert_eq!(parse("succ^2").unwrap(), Term::Const(Constant::Succ, 2));
        assert!(parse("fix f").is_err());
        assert!(parse("fix[i] f").is_ok());
    }

    #[test]
    fn judgments() {
        let (ctx, t) = parse_judgment("x : i, y : i |- x + y").unwrap();
        assert_eq!(ctx.len(), 2);
        assert_eq!(t, plus(var("x"), var("y")));
        assert!(parse_judgment("x : i, x : i |- x").is_err());
    }

    #[test]
    fn errors_carry_location() {
        match parse("\\x:i.\n  x +") {
            Err(CalcError::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn round_trip_samples() {
        for s in [
            "\\x:i. x",
            "(\\x:i -> i1. x) (D (\\y:i. y))",
            "pi1^0 (sigma^0 (iota0^1 (iota1^0 #3)))",
            "f (a + b) + g 0",
            "\\f:(i -> i) -> i. f (\\x:i. x) + 0",
            "fix[i -> i] g",
            "c^2 (D D h)",
        ] {
            let t = parse(s).unwrap();
            assert_eq!(parse(&t.to_string()).unwrap(), t, "{s} printed as {t}");
        }
    }
}
