use std::fmt;

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Abstract syntax of the class-expression language.
///
/// Grammar (whitespace is insignificant):
///
/// ```text
/// expr     := term { "|" term }                        union
/// term     := atom | term "[" term "]"                 inflation, left-assoc
/// atom     := "I" | "D" | "L" | "IDI"
///           | "I_" INT | "D_" INT | "L_" INT
///           | "Av(" permlist ")" | "G(" permlist ")"
///           | "merge(" expr "," expr ")"
///           | "compose(" expr "," expr ")"
///           | "(" expr ")"
/// permlist := PERM { "," PERM }
/// ```
///
/// Because `,` separates list entries, permutation literals inside
/// `Av(..)` and `G(..)` use the digit form only (length at most 9).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClassExpr {
    /// All increasing permutations.
    I,
    /// All decreasing permutations.
    D,
    /// Avoiders of the decreasing permutation of length `m + 1`.
    Im(usize),
    /// Avoiders of the increasing permutation of length `m + 1`.
    Dm(usize),
    /// Layered permutations, `I[D]`.
    L,
    /// Layered permutations with at most `k` layers.
    Lk(usize),
    /// `I[D[I]]`.
    Idi,
    /// Avoiders of every permutation in the (sorted, deduplicated) basis.
    Av(Vec<Permutation>),
    /// Downward closure of a finite generating set.
    G(Vec<Permutation>),
    Inflate(Box<ClassExpr>, Box<ClassExpr>),
    Merge(Box<ClassExpr>, Box<ClassExpr>),
    Compose(Box<ClassExpr>, Box<ClassExpr>),
    Union(Box<ClassExpr>, Box<ClassExpr>),
}

impl ClassExpr {
    /// `Av(..)` with validation: the basis must be nonempty and must not
    /// contain the empty permutation.
    pub fn av(basis: Vec<Permutation>) -> Result<Self> {
        Ok(ClassExpr::Av(Self::check_permlist(basis, "basis")?))
    }

    /// `G(..)` with the same validation as [`ClassExpr::av`].
    pub fn generated(generators: Vec<Permutation>) -> Result<Self> {
        Ok(ClassExpr::G(Self::check_permlist(generators, "generator")?))
    }

    fn check_permlist(mut perms: Vec<Permutation>, what: &str) -> Result<Vec<Permutation>> {
        if perms.is_empty() {
            return Err(Error::InvalidPermutation(format!("{what} list is empty")));
        }
        if perms.iter().any(|p| p.is_empty()) {
            return Err(Error::InvalidPermutation(format!(
                "the empty permutation is not allowed as a {what}"
            )));
        }
        perms.sort();
        perms.dedup();
        Ok(perms)
    }

    pub fn inflate(a: ClassExpr, b: ClassExpr) -> Self {
        ClassExpr::Inflate(Box::new(a), Box::new(b))
    }

    pub fn merge(a: ClassExpr, b: ClassExpr) -> Self {
        ClassExpr::Merge(Box::new(a), Box::new(b))
    }

    pub fn compose(a: ClassExpr, b: ClassExpr) -> Self {
        ClassExpr::Compose(Box::new(a), Box::new(b))
    }

    pub fn union(a: ClassExpr, b: ClassExpr) -> Self {
        ClassExpr::Union(Box::new(a), Box::new(b))
    }
}

/// Parses the class-expression language; see [`ClassExpr`] for the grammar.
pub fn parse_class_expr(text: &str) -> Result<ClassExpr> {
    let mut parser = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    let expr = parser.expr()?;
    parser.skip_ws();
    if parser.pos != parser.src.len() {
        return Err(parser.err("unexpected trailing input"));
    }
    Ok(expr)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, byte: u8) -> Result<()> {
        if self.peek() == Some(byte) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(format!("expected {:?}", byte as char)))
        }
    }

    fn expr(&mut self) -> Result<ClassExpr> {
        let mut acc = self.term()?;
        while self.peek() == Some(b'|') {
            self.pos += 1;
            let rhs = self.term()?;
            acc = ClassExpr::union(acc, rhs);
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<ClassExpr> {
        let mut acc = self.atom()?;
        while self.peek() == Some(b'[') {
            self.pos += 1;
            let inner = self.term()?;
            self.eat(b']')?;
            acc = ClassExpr::inflate(acc, inner);
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<ClassExpr> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                self.eat(b')')?;
                Ok(inner)
            }
            Some(c) if c.is_ascii_alphabetic() => self.named_atom(),
            Some(c) => Err(self.err(format!("unexpected character {:?}", c as char))),
            None => Err(self.err("unexpected end of input")),
        }
    }

    fn named_atom(&mut self) -> Result<ClassExpr> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphabetic() {
            self.pos += 1;
        }
        let word = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        match word {
            "I" | "D" | "L" if self.src.get(self.pos) == Some(&b'_') => {
                self.pos += 1;
                let m = self.integer()?;
                Ok(match word {
                    "I" => ClassExpr::Im(m),
                    "D" => ClassExpr::Dm(m),
                    _ => ClassExpr::Lk(m),
                })
            }
            "I" => Ok(ClassExpr::I),
            "D" => Ok(ClassExpr::D),
            "L" => Ok(ClassExpr::L),
            "IDI" => Ok(ClassExpr::Idi),
            "Av" => {
                let perms = self.permlist()?;
                self.at(start, ClassExpr::av(perms))
            }
            "G" => {
                let perms = self.permlist()?;
                self.at(start, ClassExpr::generated(perms))
            }
            "merge" => {
                let (a, b) = self.pair()?;
                Ok(ClassExpr::merge(a, b))
            }
            "compose" => {
                let (a, b) = self.pair()?;
                Ok(ClassExpr::compose(a, b))
            }
            _ => {
                self.pos = start;
                Err(self.err(format!("unknown class name {word:?}")))
            }
        }
    }

    /// Rewrites a validation failure into a parse error anchored at `pos`.
    fn at(&self, pos: usize, r: Result<ClassExpr>) -> Result<ClassExpr> {
        r.map_err(|e| Error::Parse {
            pos,
            msg: e.to_string(),
        })
    }

    fn integer(&mut self) -> Result<usize> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected an integer"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| self.err("integer out of range"))
    }

    fn pair(&mut self) -> Result<(ClassExpr, ClassExpr)> {
        self.eat(b'(')?;
        let a = self.expr()?;
        self.eat(b',')?;
        let b = self.expr()?;
        self.eat(b')')?;
        Ok((a, b))
    }

    fn permlist(&mut self) -> Result<Vec<Permutation>> {
        self.eat(b'(')?;
        let mut perms = vec![self.perm_literal()?];
        while self.peek() == Some(b',') {
            self.pos += 1;
            perms.push(self.perm_literal()?);
        }
        self.eat(b')')?;
        Ok(perms)
    }

    fn perm_literal(&mut self) -> Result<Permutation> {
        self.skip_ws();
        let start = self.pos;
        if self.src.get(self.pos) == Some(&b'e') {
            self.pos += 1;
            return Ok(Permutation::empty());
        }
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a permutation literal"));
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        text.parse().map_err(|e: Error| Error::Parse {
            pos: start,
            msg: e.to_string(),
        })
    }
}

impl fmt::Display for ClassExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, false)
    }
}

impl ClassExpr {
    /// `in_term` is true when a union would need parentheses.
    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, in_term: bool) -> fmt::Result {
        match self {
            ClassExpr::I => write!(f, "I"),
            ClassExpr::D => write!(f, "D"),
            ClassExpr::Im(m) => write!(f, "I_{m}"),
            ClassExpr::Dm(m) => write!(f, "D_{m}"),
            ClassExpr::L => write!(f, "L"),
            ClassExpr::Lk(k) => write!(f, "L_{k}"),
            ClassExpr::Idi => write!(f, "IDI"),
            ClassExpr::Av(basis) => write!(f, "Av({})", join_perms(basis)),
            ClassExpr::G(gens) => write!(f, "G({})", join_perms(gens)),
            ClassExpr::Inflate(a, b) => {
                a.fmt_prec(f, true)?;
                write!(f, "[")?;
                b.fmt_prec(f, true)?;
                write!(f, "]")
            }
            ClassExpr::Merge(a, b) => write!(f, "merge({a},{b})"),
            ClassExpr::Compose(a, b) => write!(f, "compose({a},{b})"),
            ClassExpr::Union(a, b) => {
                if in_term {
                    write!(f, "(")?;
                }
                a.fmt_prec(f, false)?;
                write!(f, "|")?;
                // Parsing folds unions to the left; a union right child
                // keeps its parentheses so the tree round-trips.
                let needs_parens = matches!(**b, ClassExpr::Union(..));
                if needs_parens {
                    write!(f, "(")?;
                }
                b.fmt_prec(f, false)?;
                if needs_parens {
                    write!(f, ")")?;
                }
                if in_term {
                    write!(f, ")")?;
                }
                Ok(())
            }
        }
    }
}

fn join_perms(perms: &[Permutation]) -> String {
    perms
        .iter()
        .map(|p| p.to_string())
        .collect::<Vec<_>>()
        .join(",")
}
