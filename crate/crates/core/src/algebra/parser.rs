//! Text form of polynomials and rational functions: a small recursive-descent
//! parser and the matching deterministic renderers.
//!
//! Grammar (usual precedence, `^` tightest):
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := ('+' | '-')* base ('^' exponent)?
//! base   := integer | identifier | '(' expr ')'
//! exponent := '-'? integer | '(' '-'? integer ')'
//! ```
//! Identifiers must come from the caller-supplied variable list.  Rationals
//! are written with `/`, so `3/4` is ordinary division and needs no special
//! lexing.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::error::{KernelError, Result};

use super::multipoly::MultiPoly;
use super::ratfun::RationalFunction;

/// Conventional variable names: `x`, `y`, `z` for up to three variables,
/// `x1..xm` beyond that.
pub fn var_names(m: usize) -> Vec<String> {
    if m <= 3 {
        ["x", "y", "z"][..m].iter().map(|s| s.to_string()).collect()
    } else {
        (1..=m).map(|i| format!("x{i}")).collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

fn err_at(line: usize, col: usize, msg: impl Into<String>) -> KernelError {
    KernelError::Parse { line, col, msg: msg.into() }
}

fn tokenize(input: &str) -> Result<Vec<Spanned>> {
    let mut out = Vec::new();
    let mut line = 1usize;
    let mut col = 1usize;
    let mut chars = input.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (tl, tc) = (line, col);
        let bump = |c: char, line: &mut usize, col: &mut usize| {
            if c == '\n' {
                *line += 1;
                *col = 1;
            } else {
                *col += 1;
            }
        };
        match c {
            ' ' | '\t' | '\r' | '\n' => {
                chars.next();
                bump(c, &mut line, &mut col);
            }
            '0'..='9' => {
                let mut s = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_digit() {
                        s.push(d);
                        chars.next();
                        bump(d, &mut line, &mut col);
                    } else {
                        break;
                    }
                }
                let n: BigInt = s.parse().expect("digit string");
                out.push(Spanned { tok: Tok::Num(n), line: tl, col: tc });
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut s = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_alphanumeric() || d == '_' {
                        s.push(d);
                        chars.next();
                        bump(d, &mut line, &mut col);
                    } else {
                        break;
                    }
                }
                out.push(Spanned { tok: Tok::Ident(s), line: tl, col: tc });
            }
            _ => {
                let tok = match c {
                    '+' => Tok::Plus,
                    '-' => Tok::Minus,
                    '*' => Tok::Star,
                    '/' => Tok::Slash,
                    '^' => Tok::Caret,
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    other => {
                        return Err(err_at(tl, tc, format!("unexpected character '{other}'")))
                    }
                };
                chars.next();
                bump(c, &mut line, &mut col);
                out.push(Spanned { tok, line: tl, col: tc });
            }
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Spanned>,
    pos: usize,
    vars: &'a [String],
    end: (usize, usize),
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|s| &s.tok)
    }

    fn here(&self) -> (usize, usize) {
        self.toks
            .get(self.pos)
            .map(|s| (s.line, s.col))
            .unwrap_or(self.end)
    }

    fn next_tok(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|s| s.tok.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, t: Tok, what: &str) -> Result<()> {
        let (l, c) = self.here();
        match self.next_tok() {
            Some(got) if got == t => Ok(()),
            _ => Err(err_at(l, c, format!("expected {what}"))),
        }
    }

    fn expr(&mut self) -> Result<RationalFunction> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<RationalFunction> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    acc = acc.mul(&self.factor()?);
                }
                Some(Tok::Slash) => {
                    let (l, c) = self.here();
                    self.pos += 1;
                    let rhs = self.factor()?;
                    acc = acc
                        .div(&rhs)
                        .map_err(|_| err_at(l, c, "division by zero"))?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<RationalFunction> {
        let mut negate = false;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                }
                Some(Tok::Minus) => {
                    negate = !negate;
                    self.pos += 1;
                }
                _ => break,
            }
        }
        let mut base = self.base()?;
        if let Some(Tok::Caret) = self.peek() {
            let (l, c) = self.here();
            self.pos += 1;
            let e = self.exponent()?;
            base = base
                .pow(e)
                .map_err(|_| err_at(l, c, "zero raised to a negative power"))?;
        }
        Ok(if negate { base.neg() } else { base })
    }

    fn base(&mut self) -> Result<RationalFunction> {
        let (l, c) = self.here();
        match self.next_tok() {
            Some(Tok::Num(n)) => Ok(RationalFunction::constant(
                self.vars.len(),
                BigRational::from_integer(n),
            )),
            Some(Tok::Ident(name)) => match self.vars.iter().position(|v| *v == name) {
                Some(i) => Ok(RationalFunction::var(self.vars.len(), i)),
                None => Err(err_at(l, c, format!("unknown variable '{name}'"))),
            },
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(inner)
            }
            _ => Err(err_at(l, c, "expected a number, variable, or '('")),
        }
    }

    fn exponent(&mut self) -> Result<i64> {
        let (l, c) = self.here();
        let parenthesized = matches!(self.peek(), Some(Tok::LParen));
        if parenthesized {
            self.pos += 1;
        }
        let mut neg = false;
        if let Some(Tok::Minus) = self.peek() {
            neg = true;
            self.pos += 1;
        }
        let n = match self.next_tok() {
            Some(Tok::Num(n)) => n,
            _ => return Err(err_at(l, c, "expected an integer exponent")),
        };
        if parenthesized {
            self.expect(Tok::RParen, "')'")?;
        }
        let v: i64 = n
            .try_into()
            .map_err(|_| err_at(l, c, "exponent out of range"))?;
        Ok(if neg { -v } else { v })
    }
}

/// Parses an arithmetic expression in the given variables into a canonical
/// rational function.
pub fn parse_ratfun(input: &str, vars: &[String]) -> Result<RationalFunction> {
    let toks = tokenize(input)?;
    let nlines = input.lines().count().max(1);
    let last_len = input.lines().last().map(|l| l.len()).unwrap_or(0);
    let mut p = Parser { toks, pos: 0, vars, end: (nlines, last_len + 1) };
    let f = p.expr()?;
    if p.pos != p.toks.len() {
        let (l, c) = p.here();
        return Err(err_at(l, c, "unexpected trailing input"));
    }
    Ok(f)
}

fn render_coeff_magnitude(c: &BigRational) -> String {
    let a = c.abs();
    if a.denom().is_one() {
        a.numer().to_string()
    } else {
        format!("{}/{}", a.numer(), a.denom())
    }
}

fn render_term(exps: &[i64], coeff: &BigRational, vars: &[String]) -> String {
    let mut parts: Vec<String> = Vec::new();
    let mag = render_coeff_magnitude(coeff);
    let is_const = exps.iter().all(|&e| e == 0);
    if is_const || mag != "1" {
        parts.push(mag);
    }
    for (i, &e) in exps.iter().enumerate() {
        if e == 0 {
            continue;
        }
        if e == 1 {
            parts.push(vars[i].clone());
        } else {
            parts.push(format!("{}^{}", vars[i], e));
        }
    }
    parts.join("*")
}

/// Renders a polynomial with terms in descending lexicographic order of
/// exponent vector, e.g. `x^2*y - 2*x + 1/2`.
pub fn render_poly(p: &MultiPoly, vars: &[String]) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (e, c)) in p.terms().rev().enumerate() {
        if i == 0 {
            if c.is_negative() {
                out.push('-');
            }
        } else if c.is_negative() {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        out.push_str(&render_term(e, c, vars));
    }
    out
}

/// Renders a rational function; a nontrivial denominator produces the fully
/// parenthesized form `(num)/(den)`, which round-trips through the parser.
pub fn render_ratfun(f: &RationalFunction, vars: &[String]) -> String {
    let num = render_poly(f.num(), vars);
    if f.den() == &MultiPoly::one(f.nvars()) {
        num
    } else {
        format!("({})/({})", num, render_poly(f.den(), vars))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(m: usize) -> Vec<String> {
        var_names(m)
    }

    #[test]
    fn variable_naming_convention() {
        assert_eq!(v(2), vec!["x", "y"]);
        assert_eq!(v(3), vec!["x", "y", "z"]);
        assert_eq!(v(4), vec!["x1", "x2", "x3", "x4"]);
    }

    #[test]
    fn parse_and_reduce() {
        let vars = v(1);
        let f = parse_ratfun("(x^2 - 1)/(x - 1)", &vars).unwrap();
        let g = parse_ratfun("x + 1", &vars).unwrap();
        assert_eq!(f, g);
    }

    #[test]
    fn parse_negative_exponents_and_rationals() {
        let vars = v(2);
        let f = parse_ratfun("2*x^-1*y + 3/4", &vars).unwrap();
        let g = parse_ratfun("(8*y + 3*x)/(4*x)", &vars).unwrap();
        assert_eq!(f, g);
        let h = parse_ratfun("x^(-2)", &vars).unwrap();
        assert_eq!(h, RationalFunction::var(2, 0).pow(-2).unwrap());
    }

    #[test]
    fn unary_minus_and_precedence() {
        let vars = v(1);
        let f = parse_ratfun("-x^2 + 2*x - 1", &vars).unwrap();
        let g = parse_ratfun("-(x - 1)^2", &vars).unwrap();
        assert_eq!(f, g);
        // '/' binds like '*': a/b*c = (a/b)*c
        let h = parse_ratfun("1/x*x", &vars).unwrap();
        assert!(h.is_one());
    }

    #[test]
    fn error_positions() {
        let vars = v(1);
        match parse_ratfun("x + q", &vars) {
            Err(KernelError::Parse { line, col, .. }) => {
                assert_eq!((line, col), (1, 5));
            }
            other => panic!("expected parse error, got {other:?}"),
        }
        match parse_ratfun("x +\n* 2", &vars) {
            Err(KernelError::Parse { line, col, .. }) => {
                assert_eq!((line, col), (2, 1));
            }
            other => panic!("expected parse error, got {other:?}"),
        }
        assert!(parse_ratfun("1/(x - x)", &vars).is_err());
    }

    #[test]
    fn rendering_round_trips() {
        let vars = v(2);
        for src in [
            "x^2*y - 1",
            "(x^2*y - 1)/(x + 1)",
            "-x + 1/2",
            "2*x^-1*y + 3",
            "(y^3 - 2*y)/(x^2 + x + 1)",
        ] {
            let f = parse_ratfun(src, &vars).unwrap();
            let s = render_ratfun(&f, &vars);
            let g = parse_ratfun(&s, &vars).unwrap();
            assert_eq!(f, g, "round-trip failed for {src} -> {s}");
        }
    }

    #[test]
    fn rendering_style() {
        let vars = v(2);
        let f = parse_ratfun("y*x^2 - 1", &vars).unwrap();
        assert_eq!(render_ratfun(&f, &vars), "x^2*y - 1");
        let g = parse_ratfun("(1 - x)/(1 + x)", &vars).unwrap();
        assert_eq!(render_ratfun(&g, &vars), "(-x + 1)/(x + 1)");
        let z = RationalFunction::zero(2);
        assert_eq!(render_ratfun(&z, &vars), "0");
    }
}
