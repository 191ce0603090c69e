//! Generator-word expressions: a small language for composites of the
//! structure maps (mu, delta, eta, eps, Nakayama powers, identities and
//! Koszul-signed swaps), with a typechecker that tracks the degree
//! interfaces and an exact evaluator against any algebra.
//!
//! Grammar (composition `.` reads right-to-left, tensor `*` binds tighter,
//! `^` tighter still):
//!
//! ```text
//! expr   := term | expr "." term
//! term   := factor | term "*" factor
//! factor := primary | factor "^" int
//! primary:= eta | eps | mu[a,b] | delta[a,b] | N[a] | id[a,...] | swap[a,b]
//!         | "(" expr ")"
//! ```

use std::fmt;

use thiserror::Error;

use crate::cyclotomic::CycQ;
use crate::frobenius::FrobAlgebra;
use crate::graded::{braiding, canon, GradedMap};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("syntax error at column {column}: {message}")]
pub struct ParseError {
    pub column: usize,
    pub message: String,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("type error: {0}")]
pub struct TypeError(pub String);

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EvalError {
    #[error(transparent)]
    Type(#[from] TypeError),
}

/// Typed AST of a generator word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BordismExpr {
    Eta,
    Eps,
    Mu(i64, i64),
    Delta(i64, i64),
    Nakayama(i64),
    Id(Vec<i64>),
    Swap(i64, i64),
    /// Compose(f, g) is f after g.
    Compose(Box<BordismExpr>, Box<BordismExpr>),
    Tensor(Box<BordismExpr>, Box<BordismExpr>),
    Power(Box<BordismExpr>, i64),
}

/// An ordered list of circle degrees: the boundary interface of a word.
pub type Interface = Vec<u32>;

// ---------------------------------------------------------------------------
// Lexer
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(i64),
    LBracket,
    RBracket,
    LParen,
    RParen,
    Comma,
    Dot,
    Star,
    Caret,
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let mut out = Vec::new();
    let bytes: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let col = i + 1;
        match c {
            ' ' | '\t' | '\n' | '\r' => {
                i += 1;
            }
            '[' => {
                out.push((Tok::LBracket, col));
                i += 1;
            }
            ']' => {
                out.push((Tok::RBracket, col));
                i += 1;
            }
            '(' => {
                out.push((Tok::LParen, col));
                i += 1;
            }
            ')' => {
                out.push((Tok::RParen, col));
                i += 1;
            }
            ',' => {
                out.push((Tok::Comma, col));
                i += 1;
            }
            '.' => {
                out.push((Tok::Dot, col));
                i += 1;
            }
            '*' => {
                out.push((Tok::Star, col));
                i += 1;
            }
            '^' => {
                out.push((Tok::Caret, col));
                i += 1;
            }
            '-' | '0'..='9' => {
                let start = i;
                i += 1;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let text: String = bytes[start..i].iter().collect();
                let value: i64 = text.parse().map_err(|_| ParseError {
                    column: col,
                    message: format!("bad integer literal `{text}`"),
                })?;
                out.push((Tok::Int(value), col));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                i += 1;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == '_') {
                    i += 1;
                }
                out.push((Tok::Ident(bytes[start..i].iter().collect()), col));
            }
            other => {
                return Err(ParseError {
                    column: col,
                    message: format!("unexpected character `{other}`"),
                });
            }
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end_column: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn column(&self) -> usize {
        self.toks
            .get(self.pos)
            .map(|(_, c)| *c)
            .unwrap_or(self.end_column)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(t, _)| t.clone());
        self.pos += 1;
        t
    }

    fn err(&self, message: impl Into<String>) -> ParseError {
        ParseError { column: self.column(), message: message.into() }
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<(), ParseError> {
        if self.peek() == Some(&want) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(format!("expected {what}")))
        }
    }

    fn int(&mut self) -> Result<i64, ParseError> {
        match self.peek() {
            Some(Tok::Int(v)) => {
                let v = *v;
                self.pos += 1;
                Ok(v)
            }
            _ => Err(self.err("expected an integer")),
        }
    }

    fn args(&mut self) -> Result<Vec<i64>, ParseError> {
        self.expect(Tok::LBracket, "`[`")?;
        let mut out = vec![self.int()?];
        while self.peek() == Some(&Tok::Comma) {
            self.pos += 1;
            out.push(self.int()?);
        }
        self.expect(Tok::RBracket, "`]`")?;
        Ok(out)
    }

    fn primary(&mut self) -> Result<BordismExpr, ParseError> {
        match self.bump() {
            Some(Tok::LParen) => {
                let e = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(e)
            }
            Some(Tok::Ident(name)) => {
                let fixed_arity = |args: &[i64], n: usize, this: &Parser| {
                    if args.len() == n {
                        Ok(())
                    } else {
                        Err(this.err(format!("`{name}` takes {n} degree argument(s)")))
                    }
                };
                match name.as_str() {
                    "eta" => Ok(BordismExpr::Eta),
                    "eps" => Ok(BordismExpr::Eps),
                    "mu" => {
                        let a = self.args()?;
                        fixed_arity(&a, 2, self)?;
                        Ok(BordismExpr::Mu(a[0], a[1]))
                    }
                    "delta" => {
                        let a = self.args()?;
                        fixed_arity(&a, 2, self)?;
                        Ok(BordismExpr::Delta(a[0], a[1]))
                    }
                    "N" => {
                        let a = self.args()?;
                        fixed_arity(&a, 1, self)?;
                        Ok(BordismExpr::Nakayama(a[0]))
                    }
                    "id" => {
                        let a = self.args()?;
                        Ok(BordismExpr::Id(a))
                    }
                    "swap" => {
                        let a = self.args()?;
                        fixed_arity(&a, 2, self)?;
                        Ok(BordismExpr::Swap(a[0], a[1]))
                    }
                    other => {
                        self.pos -= 1;
                        Err(self.err(format!("unknown generator `{other}`")))
                    }
                }
            }
            _ => {
                self.pos = self.pos.saturating_sub(1);
                Err(self.err("expected a generator or `(`"))
            }
        }
    }

    fn factor(&mut self) -> Result<BordismExpr, ParseError> {
        let mut base = self.primary()?;
        while self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            let k = self.int()?;
            base = BordismExpr::Power(Box::new(base), k);
        }
        Ok(base)
    }

    fn term(&mut self) -> Result<BordismExpr, ParseError> {
        let mut acc = self.factor()?;
        while self.peek() == Some(&Tok::Star) {
            self.pos += 1;
            let next = self.factor()?;
            acc = BordismExpr::Tensor(Box::new(acc), Box::new(next));
        }
        Ok(acc)
    }

    fn expr(&mut self) -> Result<BordismExpr, ParseError> {
        let mut acc = self.term()?;
        while self.peek() == Some(&Tok::Dot) {
            self.pos += 1;
            let next = self.term()?;
            acc = BordismExpr::Compose(Box::new(acc), Box::new(next));
        }
        Ok(acc)
    }
}

/// Parses an expression; errors carry a 1-based column.
pub fn parse(text: &str) -> Result<BordismExpr, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0, end_column: text.chars().count() + 1 };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(p.err("trailing input"));
    }
    Ok(e)
}

// ---------------------------------------------------------------------------
// Typechecker
// ---------------------------------------------------------------------------

fn interface_str(i: &Interface) -> String {
    let parts: Vec<String> = i.iter().map(|d| d.to_string()).collect();
    format!("({})", parts.join(","))
}

/// Computes the (domain, codomain) interfaces of a word at modulus r.
/// Degrees are reduced mod r; composition requires matching interfaces.
pub fn typecheck(expr: &BordismExpr, r: u32) -> Result<(Interface, Interface), TypeError> {
    let c = |d: i64| canon(r, d);
    match expr {
        BordismExpr::Eta => Ok((vec![], vec![c(1)])),
        BordismExpr::Eps => Ok((vec![c(-1)], vec![])),
        BordismExpr::Mu(a, b) => Ok((vec![c(*a), c(*b)], vec![c(a + b - 1)])),
        BordismExpr::Delta(a, b) => Ok((vec![c(a + b + 1)], vec![c(*a), c(*b)])),
        BordismExpr::Nakayama(a) => Ok((vec![c(*a)], vec![c(*a)])),
        BordismExpr::Id(list) => {
            let i: Interface = list.iter().map(|&d| c(d)).collect();
            Ok((i.clone(), i))
        }
        BordismExpr::Swap(a, b) => Ok((vec![c(*a), c(*b)], vec![c(*b), c(*a)])),
        BordismExpr::Compose(f, g) => {
            let (gd, gc) = typecheck(g, r)?;
            let (fd, fc) = typecheck(f, r)?;
            if gc != fd {
                return Err(TypeError(format!(
                    "interface mismatch in composition: inner produces {}, outer needs {}",
                    interface_str(&gc),
                    interface_str(&fd)
                )));
            }
            Ok((gd, fc))
        }
        BordismExpr::Tensor(x, y) => {
            let (xd, xc) = typecheck(x, r)?;
            let (yd, yc) = typecheck(y, r)?;
            Ok((
                xd.into_iter().chain(yd).collect(),
                xc.into_iter().chain(yc).collect(),
            ))
        }
        BordismExpr::Power(base, k) => {
            let (d, cc) = typecheck(base, r)?;
            if matches!(**base, BordismExpr::Nakayama(_)) {
                return Ok((d, cc));
            }
            if d != cc {
                return Err(TypeError(format!(
                    "power of a non-endomorphism: {} -> {}",
                    interface_str(&d),
                    interface_str(&cc)
                )));
            }
            if *k < 0 {
                return Err(TypeError(
                    "negative powers are only defined for Nakayama generators".into(),
                ));
            }
            Ok((d, cc))
        }
    }
}

/// Result of evaluating a word: closed words collapse to scalars.
#[derive(Clone, Debug, PartialEq)]
pub enum EvalOutcome {
    Scalar(CycQ),
    Map(GradedMap),
}

impl fmt::Display for EvalOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvalOutcome::Scalar(s) => write!(f, "{s}"),
            EvalOutcome::Map(m) => {
                writeln!(f, "map with {} entries:", m.entries().count())?;
                for (out, inp, v) in m.entries() {
                    writeln!(f, "  {out:?} <- {inp:?}: {v}")?;
                }
                Ok(())
            }
        }
    }
}

fn eval_map(expr: &BordismExpr, alg: &FrobAlgebra) -> Result<GradedMap, EvalError> {
    let out = match expr {
        BordismExpr::Eta => alg.eta().clone(),
        BordismExpr::Eps => alg.eps().clone(),
        BordismExpr::Mu(a, b) => alg.mu(*a, *b),
        BordismExpr::Delta(a, b) => alg.delta(*a, *b),
        BordismExpr::Nakayama(a) => alg.nakayama(*a),
        BordismExpr::Id(list) => GradedMap::identity(alg.word(list)),
        BordismExpr::Swap(a, b) => braiding(&alg.piece(*a), &alg.piece(*b)),
        BordismExpr::Compose(f, g) => {
            let gm = eval_map(g, alg)?;
            let fm = eval_map(f, alg)?;
            fm.compose(&gm)
                .map_err(|e| TypeError(format!("composition: {e}")))?
        }
        BordismExpr::Tensor(x, y) => eval_map(x, alg)?.tensor(&eval_map(y, alg)?),
        BordismExpr::Power(base, k) => match **base {
            BordismExpr::Nakayama(a) => alg.nakayama_power(a, *k),
            _ => {
                let m = eval_map(base, alg)?;
                if *k < 0 {
                    return Err(TypeError(
                        "negative powers are only defined for Nakayama generators".into(),
                    )
                    .into());
                }
                m.pow(*k as u32)
                    .map_err(|e| TypeError(format!("power: {e}")))?
            }
        },
    };
    Ok(out)
}

/// Typechecks against the algebra's modulus and evaluates exactly.
pub fn evaluate(expr: &BordismExpr, alg: &FrobAlgebra) -> Result<EvalOutcome, EvalError> {
    let (dom, cod) = typecheck(expr, alg.modulus())?;
    let map = eval_map(expr, alg)?;
    if dom.is_empty() && cod.is_empty() {
        Ok(EvalOutcome::Scalar(map.as_scalar().expect("closed word")))
    } else {
        Ok(EvalOutcome::Map(map))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_the_sphere_word() {
        let e = parse("eps . eta").unwrap();
        assert_eq!(
            e,
            BordismExpr::Compose(Box::new(BordismExpr::Eps), Box::new(BordismExpr::Eta))
        );
    }

    #[test]
    fn parses_the_torus_word_shape() {
        let e = parse("eps . mu[-1,1] . (N[-1]^2 * id[1]) . delta[-1,1] . eta").unwrap();
        let (dom, cod) = typecheck(&e, 3).unwrap();
        assert!(dom.is_empty() && cod.is_empty());
    }

    #[test]
    fn reports_syntax_error_position() {
        let err = parse("mu[0,0").unwrap_err();
        assert_eq!(err.column, 7);
        assert!(parse("mu[0,0]").is_ok());
        assert!(parse("frob[1]").is_err());
    }

    #[test]
    fn typecheck_interfaces() {
        let (d, c) = typecheck(&parse("mu[2,0]").unwrap(), 3).unwrap();
        assert_eq!(d, vec![2, 0]);
        assert_eq!(c, vec![1]);

        let err = typecheck(&parse("mu[1,1] . delta[0,0]").unwrap(), 3).unwrap_err();
        assert!(err.0.contains("(0,0)") && err.0.contains("(1,1)"), "{err}");

        let (d, c) = typecheck(&parse("swap[1,2]").unwrap(), 5).unwrap();
        assert_eq!(d, vec![1, 2]);
        assert_eq!(c, vec![2, 1]);
    }

    #[test]
    fn power_rules() {
        assert!(typecheck(&parse("N[0]^-1").unwrap(), 4).is_ok());
        assert!(typecheck(&parse("mu[0,0]^2").unwrap(), 4).is_err());
        // the handle at r=2 is an endomorphism of the degree-1 piece
        assert!(typecheck(&parse("(mu[0,0] . delta[0,0])^2").unwrap(), 2).is_ok());
        assert!(typecheck(&parse("(mu[0,0] . delta[0,0])^-2").unwrap(), 2).is_err());
    }
}
