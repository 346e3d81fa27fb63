//! Reading systems from text.
//!
//! A document is a list of statements separated by `;` or newlines; `#`
//! starts a comment:
//!
//! ```text
//! weight 1 1
//! chi 0            # optional, checked against H
//! N = 6
//! H = -1/2*x2^2
//! P1 = x1^2
//! P2 = x1*x2
//! ```
//!
//! Expressions use integer literals, `x1`/`x2` (or `x`/`y`), `+ - * / ^` and
//! parentheses. Division is only allowed by constants and exponents must be
//! nonnegative integer literals.

use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::grading::{Polynomial, Qhp, Rational, VectorSeries, Vqhp, Weight};
use crate::normalizer::HamiltonianSystem;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(Rational),
    Var(usize),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

struct Lexer<'a> {
    src: &'a str,
    base: usize,
    line: usize,
    line_start: usize,
}

impl Lexer<'_> {
    fn err(&self, offset: usize, message: impl Into<String>) -> Error {
        Error::Parse {
            line: self.line,
            column: self.base + offset - self.line_start + 1,
            message: message.into(),
        }
    }

    fn tokens(&self) -> Result<Vec<(usize, Tok)>> {
        let bytes = self.src.as_bytes();
        let mut out = Vec::new();
        let mut i = 0;
        while i < bytes.len() {
            let c = bytes[i] as char;
            let start = i;
            let tok = match c {
                ' ' | '\t' | '\r' => {
                    i += 1;
                    continue;
                }
                '+' => Tok::Plus,
                '-' => Tok::Minus,
                '*' => Tok::Star,
                '/' => Tok::Slash,
                '^' => Tok::Caret,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                '0'..='9' => {
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    let n: num_bigint::BigInt = self.src[start..i].parse().expect("digits");
                    out.push((start, Tok::Num(Rational::from_integer(n))));
                    continue;
                }
                'a'..='z' | 'A'..='Z' => {
                    while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                        i += 1;
                    }
                    let v = match &self.src[start..i] {
                        "x1" | "x" => 0,
                        "x2" | "y" => 1,
                        other => return Err(self.err(start, format!("unknown variable '{other}'"))),
                    };
                    out.push((start, Tok::Var(v)));
                    continue;
                }
                _ => return Err(self.err(start, format!("unexpected character '{c}'"))),
            };
            out.push((start, tok));
            i += 1;
        }
        Ok(out)
    }
}

struct Parser<'a> {
    lex: &'a Lexer<'a>,
    toks: Vec<(usize, Tok)>,
    pos: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|(o, _)| *o).unwrap_or(self.lex.src.len())
    }

    fn err(&self, message: impl Into<String>) -> Error {
        self.lex.err(self.offset(), message)
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    acc = &acc * &self.unary()?;
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    let at = self.offset();
                    let d = self.unary()?;
                    let c = constant_value(&d)
                        .ok_or_else(|| self.lex.err(at, "division by a non-constant"))?;
                    if c.is_zero() {
                        return Err(self.lex.err(at, "division by zero"));
                    }
                    acc = acc.scale(&c.recip());
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Polynomial> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                Ok(-&self.unary()?)
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.pos += 1;
        let e = match self.peek() {
            Some(Tok::Num(n)) => n.to_integer().to_u32().ok_or_else(|| self.err("exponent too large"))?,
            _ => return Err(self.err("expected a nonnegative integer exponent")),
        };
        self.pos += 1;
        Ok(base.pow(e))
    }

    fn atom(&mut self) -> Result<Polynomial> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(Polynomial::constant(n))
            }
            Some(Tok::Var(0)) => {
                self.pos += 1;
                Ok(Polynomial::x1())
            }
            Some(Tok::Var(_)) => {
                self.pos += 1;
                Ok(Polynomial::x2())
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(_) => Err(self.err("expected a number, variable or '('")),
            None => Err(self.err("unexpected end of expression")),
        }
    }
}

fn constant_value(p: &Polynomial) -> Option<Rational> {
    match p.len() {
        0 => Some(Rational::zero()),
        1 => p.terms().next().filter(|(m, _)| m.p1 == 0 && m.p2 == 0).map(|(_, c)| c.clone()),
        _ => None,
    }
}

fn parse_expr_at(src: &str, line: usize, line_start: usize, base: usize) -> Result<Polynomial> {
    let lex = Lexer {
        src,
        base,
        line,
        line_start,
    };
    let toks = lex.tokens()?;
    let mut p = Parser {
        lex: &lex,
        toks,
        pos: 0,
    };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(e)
}

/// Parses a single polynomial expression.
pub fn parse_polynomial(src: &str) -> Result<Polynomial> {
    parse_expr_at(src, 1, 0, 0)
}

/// The statements of a system document, before validation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SystemDocument {
    pub weight: Option<(u32, u32)>,
    pub chi: Option<u32>,
    pub truncation: Option<u32>,
    pub hamiltonian: Option<Polynomial>,
    pub p1: Polynomial,
    pub p2: Polynomial,
}

pub fn parse_document(text: &str) -> Result<SystemDocument> {
    let mut doc = SystemDocument::default();
    let mut offset = 0;
    for (idx, raw_line) in text.split('\n').enumerate() {
        let line_no = idx + 1;
        let line_start = offset;
        offset += raw_line.len() + 1;
        let line = raw_line.split('#').next().unwrap_or("");
        let mut col = 0;
        for stmt in line.split(';') {
            let stmt_base = line_start + col;
            col += stmt.len() + 1;
            let trimmed = stmt.trim_start();
            let lead = stmt.len() - trimmed.len();
            let stmt = trimmed.trim_end();
            if stmt.is_empty() {
                continue;
            }
            let err = |at: usize, message: String| Error::Parse {
                line: line_no,
                column: stmt_base + lead + at - line_start + 1,
                message,
            };
            if let Some((lhs, rhs)) = stmt.split_once('=') {
                let key = lhs.trim();
                let rhs_base = stmt_base + lead + lhs.len() + 1;
                let rhs_lead = rhs.len() - rhs.trim_start().len();
                match key {
                    "H" => {
                        doc.hamiltonian = Some(parse_expr_at(rhs, line_no, line_start, rhs_base)?)
                    }
                    "P1" => doc.p1 = parse_expr_at(rhs, line_no, line_start, rhs_base)?,
                    "P2" => doc.p2 = parse_expr_at(rhs, line_no, line_start, rhs_base)?,
                    "N" => {
                        doc.truncation = Some(rhs.trim().parse().map_err(|_| {
                            err(lhs.len() + 1 + rhs_lead, "expected a nonnegative integer".into())
                        })?)
                    }
                    _ => return Err(err(0, format!("unknown assignment target '{key}'"))),
                }
                continue;
            }
            let words: Vec<&str> = stmt.split_whitespace().collect();
            let ints = |n: usize| -> Result<Vec<u32>> {
                if words.len() != n + 1 {
                    return Err(err(0, format!("'{}' expects {n} integer(s)", words[0])));
                }
                words[1..]
                    .iter()
                    .map(|w| w.parse().map_err(|_| err(0, format!("invalid integer '{w}'"))))
                    .collect()
            };
            match words[0] {
                "weight" => {
                    let v = ints(2)?;
                    doc.weight = Some((v[0], v[1]));
                }
                "chi" => doc.chi = Some(ints(1)?[0]),
                "truncate" => doc.truncation = Some(ints(1)?[0]),
                other => return Err(err(0, format!("unknown statement '{other}'"))),
            }
        }
    }
    Ok(doc)
}

impl SystemDocument {
    /// Validates the document into a system.
    pub fn into_system(self) -> Result<HamiltonianSystem> {
        let (g1, g2) = self
            .weight
            .ok_or_else(|| Error::InvalidConfig("missing weight".into()))?;
        let w = Weight::new(g1, g2)?;
        let n = self
            .truncation
            .ok_or_else(|| Error::InvalidConfig("missing truncation N".into()))?;
        let h = self
            .hamiltonian
            .ok_or_else(|| Error::InvalidConfig("missing hamiltonian H".into()))?;
        let gdeg = h.quasi_degree(w).ok_or_else(|| {
            Error::HamiltonianNotQuasiHomogeneous(if h.is_zero() {
                "the hamiltonian is zero".into()
            } else {
                format!("terms of {h} have different generalized degrees")
            })
        })?;
        if gdeg < w.delta() {
            return Err(Error::HamiltonianNotQuasiHomogeneous(format!(
                "generalized degree {gdeg} is below delta = {}",
                w.delta()
            )));
        }
        if let Some(chi) = self.chi {
            if gdeg != chi + w.delta() {
                return Err(Error::HamiltonianNotQuasiHomogeneous(format!(
                    "expected generalized degree {} for chi = {chi}, found {gdeg}",
                    chi + w.delta()
                )));
            }
        }
        let chi = gdeg - w.delta();
        let mut pert = VectorSeries::new(w, n);
        let lowest = [(&self.p1, w.gamma1()), (&self.p2, w.gamma2())]
            .iter()
            .filter_map(|(p, g)| p.min_gdeg(w).map(|d| d as i64 - *g as i64))
            .min();
        if let Some(k) = lowest {
            if k <= chi as i64 {
                return Err(Error::PerturbationOrderTooLow {
                    found: k,
                    min: chi + 1,
                });
            }
        }
        for k in chi + 1..=n {
            let t = Vqhp::from_polys(
                w,
                k,
                self.p1.homogeneous_part(w, k + w.gamma1()),
                self.p2.homogeneous_part(w, k + w.gamma2()),
            )?;
            pert.set(t)?;
        }
        HamiltonianSystem::new(Qhp::new(h, gdeg, w)?, pert)
    }
}

/// Parses and validates a system document.
pub fn parse_system(text: &str) -> Result<HamiltonianSystem> {
    parse_document(text)?.into_system()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grading::{int, rat, Monomial};

    #[test]
    fn expressions() {
        let p = parse_polynomial("-1/2*x2^2 + 3*(x - y)^2").unwrap();
        assert_eq!(p.coeff(Monomial::new(0, 2)), rat(5, 2));
        assert_eq!(p.coeff(Monomial::new(1, 1)), int(-6));
        assert_eq!(p.coeff(Monomial::new(2, 0)), int(3));
        assert_eq!(parse_polynomial("2^3").unwrap(), Polynomial::constant(int(8)));
        assert_eq!(parse_polynomial("x1/2").unwrap(), Polynomial::x1().scale(&rat(1, 2)));
    }

    #[test]
    fn expression_errors_carry_positions() {
        match parse_polynomial("x1 + * x2") {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (1, 6)),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse_polynomial("1/x1"), Err(Error::Parse { .. })));
        assert!(matches!(parse_polynomial("x1^x2"), Err(Error::Parse { .. })));
        assert!(matches!(parse_polynomial("z"), Err(Error::Parse { .. })));
        assert!(matches!(parse_polynomial("(x1"), Err(Error::Parse { .. })));
    }

    #[test]
    fn takens_document() {
        let sys = parse_system("weight 1 1; H = -1/2*x2^2; P1 = x1^2; P2 = x1*x2; N = 6").unwrap();
        assert_eq!(sys.chi(), 0);
        assert_eq!(sys.truncation(), 6);
        assert_eq!(sys.term(1).coeff(1, Monomial::new(2, 0)), int(1));
        assert_eq!(sys.term(1).coeff(2, Monomial::new(1, 1)), int(1));
    }

    #[test]
    fn document_errors() {
        assert!(matches!(
            parse_system("weight 2 4; H = x1^2; N = 3"),
            Err(Error::WeightNotCoprime(2, 4))
        ));
        assert!(matches!(
            parse_system("weight 1 1; chi 1; H = x1^2; N = 3"),
            Err(Error::HamiltonianNotQuasiHomogeneous(_))
        ));
        assert!(matches!(
            parse_system("weight 1 1; H = x1^2 + x2^3; N = 3"),
            Err(Error::HamiltonianNotQuasiHomogeneous(_))
        ));
        assert!(matches!(
            parse_system("weight 1 1; H = x1^3; P1 = x1^2; N = 3"),
            Err(Error::PerturbationOrderTooLow { found: 1, min: 2 })
        ));
        match parse_system("weight 1 1\nH = x1^2 +\nN = 3") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse_system("bogus 1"), Err(Error::Parse { line: 1, column: 1, .. })));
    }

    #[test]
    fn terms_above_truncation_are_dropped() {
        let sys = parse_system("weight 1 1; H = x1*x2; P1 = x1^2 + x1^9; N = 3").unwrap();
        assert_eq!(sys.perturbation().terms().count(), 1);
    }
}
