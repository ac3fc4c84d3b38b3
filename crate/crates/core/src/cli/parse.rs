//! Lexer and recursive-descent parsers for polynomial files and triple files.
//!
//! Polynomial files:
//!
//! ```text
//! file     := header line*
//! header   := "prime" INT
//! line     := "poly" NAME "=" product
//! product  := term ("*" term)*
//! term     := INT | "(" polyexpr ")" ["^" INT]
//! polyexpr := mono (("+" | "-") mono)*
//! mono     := INT ["*"] "X" ["^" INT] | "X" ["^" INT] | INT
//! ```
//!
//! A line ending in `*` continues on the next one, and newlines inside
//! parentheses are ignored.  U+2212 (minus) reads as `-`; U+00B7 and U+22C5
//! (dots) read as `*`.  `#` starts a comment.
//!
//! Triple files:
//!
//! ```text
//! file   := "degree" INT perm*
//! perm   := "perm" NAME "=" cycles
//! cycles := ("(" INT ("," INT)+ ")")+ | "id"
//! ```
//!
//! Names are `x`, `y` (both required) and any name starting with `fold`.

use std::collections::HashSet;
use std::fmt;

use thiserror::Error;

use crate::belyi::FactoredPoly;
use crate::ffpoly::{PrimeField, UniPoly};
use crate::permgrp::{Permutation, Triple};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {col}: {msg}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(String),
    LParen,
    RParen,
    Plus,
    Minus,
    Star,
    Caret,
    Eq,
    Comma,
    Newline,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "{s:?}"),
            Tok::Int(s) => write!(f, "{s}"),
            Tok::LParen => write!(f, "'('"),
            Tok::RParen => write!(f, "')'"),
            Tok::Plus => write!(f, "'+'"),
            Tok::Minus => write!(f, "'-'"),
            Tok::Star => write!(f, "'*'"),
            Tok::Caret => write!(f, "'^'"),
            Tok::Eq => write!(f, "'='"),
            Tok::Comma => write!(f, "','"),
            Tok::Newline => write!(f, "end of line"),
            Tok::Eof => write!(f, "end of input"),
        }
    }
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(text: &str) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut line, mut col) = (1usize, 1usize);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, col);
        let simple = match c {
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            '+' => Some(Tok::Plus),
            '-' | '\u{2212}' => Some(Tok::Minus),
            '*' | '\u{b7}' | '\u{22c5}' => Some(Tok::Star),
            '^' => Some(Tok::Caret),
            '=' => Some(Tok::Eq),
            ',' => Some(Tok::Comma),
            _ => None,
        };
        if let Some(t) = simple {
            out.push(Token { tok: t, line: l0, col: c0 });
            i += 1;
            col += 1;
        } else if c == '\n' {
            out.push(Token { tok: Tok::Newline, line: l0, col: c0 });
            i += 1;
            line += 1;
            col = 1;
        } else if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
        } else if c.is_whitespace() {
            i += 1;
            col += 1;
        } else if c.is_ascii_digit() {
            let s: String = chars[i..].iter().take_while(|c| c.is_ascii_digit()).collect();
            i += s.len();
            col += s.len();
            out.push(Token { tok: Tok::Int(s), line: l0, col: c0 });
        } else if c.is_ascii_alphabetic() || c == '_' {
            let s: String = chars[i..]
                .iter()
                .take_while(|c| c.is_ascii_alphanumeric() || **c == '_')
                .collect();
            i += s.len();
            col += s.len();
            out.push(Token { tok: Tok::Ident(s), line: l0, col: c0 });
        } else {
            return Err(ParseError {
                line: l0,
                col: c0,
                msg: format!("unexpected character {c:?}"),
            });
        }
    }
    out.push(Token { tok: Tok::Eof, line, col });
    Ok(out)
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn new(text: &str) -> Result<Self, ParseError> {
        Ok(Parser { toks: lex(text)?, pos: 0 })
    }

    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn next(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if t.tok != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn err_at(t: &Token, msg: impl Into<String>) -> ParseError {
        ParseError {
            line: t.line,
            col: t.col,
            msg: msg.into(),
        }
    }

    fn unexpected(&self, wanted: &str) -> ParseError {
        let t = self.peek();
        Self::err_at(t, format!("expected {wanted}, found {}", t.tok))
    }

    fn skip_newlines(&mut self) {
        while self.peek().tok == Tok::Newline {
            self.pos += 1;
        }
    }

    fn expect(&mut self, tok: Tok) -> Result<Token, ParseError> {
        if self.peek().tok == tok {
            Ok(self.next())
        } else {
            Err(self.unexpected(&tok.to_string()))
        }
    }

    fn keyword(&mut self, kw: &str) -> Result<Token, ParseError> {
        match &self.peek().tok {
            Tok::Ident(s) if s == kw => Ok(self.next()),
            _ => Err(self.unexpected(&format!("{kw:?}"))),
        }
    }

    fn ident(&mut self) -> Result<(String, Token), ParseError> {
        match &self.peek().tok {
            Tok::Ident(s) => {
                let s = s.clone();
                Ok((s, self.next()))
            }
            _ => Err(self.unexpected("a name")),
        }
    }

    fn int(&mut self) -> Result<(String, Token), ParseError> {
        match &self.peek().tok {
            Tok::Int(s) => {
                let s = s.clone();
                Ok((s, self.next()))
            }
            _ => Err(self.unexpected("an integer")),
        }
    }

    fn small_int(&mut self, what: &str) -> Result<(u64, Token), ParseError> {
        let (s, t) = self.int()?;
        let v = s
            .parse::<u64>()
            .map_err(|_| Self::err_at(&t, format!("{what} {s} is too large")))?;
        Ok((v, t))
    }

    fn end_of_statement(&mut self) -> Result<(), ParseError> {
        match self.peek().tok {
            Tok::Newline | Tok::Eof => {
                self.skip_newlines();
                Ok(())
            }
            _ => Err(self.unexpected("end of line")),
        }
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct ParseOptions {
    /// Reject integer coefficients that are not already reduced mod p.
    pub strict: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyFile {
    pub field: PrimeField,
    pub polys: Vec<(String, FactoredPoly)>,
}

impl PolyFile {
    pub fn get(&self, name: &str) -> Option<&FactoredPoly> {
        self.polys.iter().find(|(n, _)| n == name).map(|(_, p)| p)
    }
}

impl fmt::Display for PolyFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "prime {}", self.field.modulus())?;
        for (name, p) in &self.polys {
            writeln!(f, "poly {name} = {p}")?;
        }
        Ok(())
    }
}

const POLY_NAMES: [&str; 3] = ["p", "q", "r"];

struct PolyParser {
    p: Parser,
    field: PrimeField,
    strict: bool,
    depth: usize,
}

impl PolyParser {
    fn peek(&mut self) -> Token {
        if self.depth > 0 {
            self.p.skip_newlines();
        }
        self.p.peek().clone()
    }

    fn residue(&self, s: &str, t: &Token) -> Result<u32, ParseError> {
        let m = self.field.modulus() as u64;
        let r = s.bytes().fold(0u64, |acc, d| (acc * 10 + (d - b'0') as u64) % m);
        if self.strict && (s.len() > 10 || s.parse::<u64>().map_or(true, |v| v >= m)) {
            return Err(Parser::err_at(t, format!("coefficient {s} is not reduced modulo {m}")));
        }
        Ok(r as u32)
    }

    fn exponent(&mut self) -> Result<u32, ParseError> {
        if self.peek().tok != Tok::Caret {
            return Ok(1);
        }
        self.p.next();
        self.peek();
        let (v, t) = self.p.small_int("exponent")?;
        u32::try_from(v).map_err(|_| Parser::err_at(&t, "exponent too large"))
    }

    fn var(&mut self) -> Result<usize, ParseError> {
        let (name, t) = self.p.ident()?;
        if name != "X" {
            return Err(Parser::err_at(&t, format!("unknown variable {name:?}, expected \"X\"")));
        }
        Ok(self.exponent()? as usize)
    }

    fn mono(&mut self) -> Result<(u32, usize), ParseError> {
        let t = self.peek();
        match &t.tok {
            Tok::Int(s) => {
                let s = s.clone();
                self.p.next();
                let c = self.residue(&s, &t)?;
                let after = self.peek();
                let is_x = |tok: &Tok| matches!(tok, Tok::Ident(n) if n == "X");
                if after.tok == Tok::Star {
                    self.p.next();
                    self.peek();
                    if !is_x(&self.p.peek().tok) {
                        return Err(self.p.unexpected("\"X\""));
                    }
                    Ok((c, self.var()?))
                } else if is_x(&after.tok) {
                    Ok((c, self.var()?))
                } else {
                    Ok((c, 0))
                }
            }
            Tok::Ident(_) => Ok((1, self.var()?)),
            _ => Err(self.p.unexpected("a monomial")),
        }
    }

    fn polyexpr(&mut self) -> Result<UniPoly, ParseError> {
        let k = self.field;
        let mut coeffs: Vec<u32> = Vec::new();
        let mut add = |c: u32, e: usize, neg: bool| {
            if coeffs.len() <= e {
                coeffs.resize(e + 1, 0);
            }
            coeffs[e] = if neg { k.sub(coeffs[e], c) } else { k.add(coeffs[e], c) };
        };
        let mut neg = false;
        if self.peek().tok == Tok::Minus {
            self.p.next();
            neg = true;
        }
        let (c, e) = self.mono()?;
        add(c, e, neg);
        loop {
            match self.peek().tok {
                Tok::Plus => neg = false,
                Tok::Minus => neg = true,
                _ => break,
            }
            self.p.next();
            let (c, e) = self.mono()?;
            add(c, e, neg);
        }
        Ok(UniPoly::from_residues(k, coeffs))
    }

    fn product(&mut self) -> Result<FactoredPoly, ParseError> {
        let k = self.field;
        let mut unit = 1u32;
        let mut factors: Vec<(UniPoly, u32)> = Vec::new();
        loop {
            let t = self.peek();
            match &t.tok {
                Tok::Int(s) => {
                    let s = s.clone();
                    self.p.next();
                    unit = k.mul(unit, self.residue(&s, &t)?);
                }
                Tok::LParen => {
                    self.p.next();
                    self.depth += 1;
                    let f = self.polyexpr()?;
                    self.peek();
                    self.p.expect(Tok::RParen)?;
                    self.depth -= 1;
                    let e = self.exponent()?;
                    if f.is_constant() {
                        unit = k.mul(unit, k.pow(f.coeff(0), e as u64));
                    } else if e > 0 {
                        factors.push((f, e));
                    }
                }
                _ => return Err(self.p.unexpected("an integer or '('")),
            }
            if self.p.peek().tok != Tok::Star {
                break;
            }
            self.p.next();
            self.p.skip_newlines();
        }
        if unit == 0 {
            return Err(Parser::err_at(self.p.peek(), "polynomial is zero"));
        }
        FactoredPoly::new(k.elem(unit as u64), factors)
            .map_err(|e| Parser::err_at(self.p.peek(), e.to_string()))
    }
}

pub fn parse_poly_file(text: &str) -> Result<PolyFile, ParseError> {
    parse_poly_file_with(text, ParseOptions::default())
}

pub fn parse_poly_file_with(text: &str, opts: ParseOptions) -> Result<PolyFile, ParseError> {
    let mut p = Parser::new(text)?;
    p.skip_newlines();
    p.keyword("prime")?;
    let (v, t) = p.small_int("prime")?;
    let field = PrimeField::new(v).map_err(|e| Parser::err_at(&t, e.to_string()))?;
    p.end_of_statement()?;
    let mut pp = PolyParser {
        p,
        field,
        strict: opts.strict,
        depth: 0,
    };
    let mut polys: Vec<(String, FactoredPoly)> = Vec::new();
    while pp.p.peek().tok != Tok::Eof {
        pp.p.keyword("poly")?;
        let (name, t) = pp.p.ident()?;
        if !POLY_NAMES.contains(&name.as_str()) {
            return Err(Parser::err_at(&t, format!("unknown polynomial name {name:?}")));
        }
        if polys.iter().any(|(n, _)| *n == name) {
            return Err(Parser::err_at(&t, format!("polynomial {name:?} defined twice")));
        }
        pp.p.expect(Tok::Eq)?;
        let f = pp.product()?;
        pp.p.end_of_statement()?;
        polys.push((name, f));
    }
    Ok(PolyFile { field, polys })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TripleFile {
    pub degree: usize,
    pub x: Permutation,
    pub y: Permutation,
    pub folding: Vec<(String, Permutation)>,
}

impl TripleFile {
    /// `z` is always computed, never read.
    pub fn triple(&self) -> Triple {
        Triple::new(self.x.clone(), self.y.clone()).expect("validated degrees")
    }

    pub fn folding_elements(&self) -> Vec<Permutation> {
        self.folding.iter().map(|(_, p)| p.clone()).collect()
    }
}

impl fmt::Display for TripleFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "degree {}", self.degree)?;
        writeln!(f, "perm x = {}", self.x)?;
        writeln!(f, "perm y = {}", self.y)?;
        for (n, p) in &self.folding {
            writeln!(f, "perm {n} = {p}")?;
        }
        Ok(())
    }
}

fn cycles(p: &mut Parser, n: usize) -> Result<Permutation, ParseError> {
    if matches!(&p.peek().tok, Tok::Ident(s) if s == "id") {
        p.next();
        return Ok(Permutation::identity(n));
    }
    let mut used = vec![false; n];
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    loop {
        p.expect(Tok::LParen)?;
        let mut cyc = Vec::new();
        loop {
            let (v, t) = p.small_int("point")?;
            let v = v as usize;
            if v == 0 || v > n {
                return Err(Parser::err_at(&t, format!("point {v} is outside 1..={n}")));
            }
            if used[v - 1] {
                return Err(Parser::err_at(&t, format!("point {v} is repeated")));
            }
            used[v - 1] = true;
            cyc.push(v);
            if p.peek().tok == Tok::Comma {
                p.next();
            } else {
                break;
            }
        }
        let close = p.expect(Tok::RParen)?;
        if cyc.len() < 2 {
            return Err(Parser::err_at(&close, "a cycle needs at least two points"));
        }
        cycles.push(cyc);
        if p.peek().tok != Tok::LParen {
            break;
        }
    }
    Ok(Permutation::from_cycles(n, &cycles).expect("points validated"))
}

pub fn parse_triple_file(text: &str) -> Result<TripleFile, ParseError> {
    let mut p = Parser::new(text)?;
    p.skip_newlines();
    p.keyword("degree")?;
    let (n, t) = p.small_int("degree")?;
    if n == 0 || n > u32::MAX as u64 {
        return Err(Parser::err_at(&t, "degree must be positive"));
    }
    let n = n as usize;
    p.end_of_statement()?;
    let (mut x, mut y) = (None, None);
    let mut folding = Vec::new();
    let mut seen = HashSet::new();
    while p.peek().tok != Tok::Eof {
        p.keyword("perm")?;
        let (name, t) = p.ident()?;
        if !seen.insert(name.clone()) {
            return Err(Parser::err_at(&t, format!("permutation {name:?} defined twice")));
        }
        p.expect(Tok::Eq)?;
        let perm = cycles(&mut p, n)?;
        p.end_of_statement()?;
        match name.as_str() {
            "x" => x = Some(perm),
            "y" => y = Some(perm),
            s if s.starts_with("fold") => folding.push((name, perm)),
            "z" => return Err(Parser::err_at(&t, "z is computed as (x*y)^-1 and may not be given")),
            _ => return Err(Parser::err_at(&t, format!("unknown permutation name {name:?}"))),
        }
    }
    let end = p.peek().clone();
    let x = x.ok_or_else(|| Parser::err_at(&end, "missing permutation x"))?;
    let y = y.ok_or_else(|| Parser::err_at(&end, "missing permutation y"))?;
    Ok(TripleFile {
        degree: n,
        x,
        y,
        folding,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn appendix_style_header() {
        let f = parse_poly_file("prime 283\npoly r = 157 * (X + 212)^7").unwrap();
        let r = f.get("r").unwrap();
        assert_eq!(r.unit().value(), 157);
        assert_eq!(r.factors()[0].0, UniPoly::from_i64(f.field, &[212, 1]));
        assert_eq!(r.factors()[0].1, 7);
    }

    #[test]
    fn simple_and_unicode() {
        let f = parse_poly_file("prime 5\npoly q = (X^2 + 1)").unwrap();
        assert_eq!(f.get("q").unwrap().factors().len(), 1);
        assert_eq!(f.get("q").unwrap().factors()[0].1, 1);
        let g = parse_poly_file("prime 7\npoly q = 3 \u{b7} (X \u{2212} 1)^2 \u{b7}\n  (2X^3 - X + 10)").unwrap();
        let q = g.get("q").unwrap();
        assert_eq!(q.unit().value(), 3);
        assert_eq!(q.factors()[1].0, UniPoly::from_i64(g.field, &[3, -1, 0, 2]));
    }

    #[test]
    fn syntax_errors_have_positions() {
        let e = parse_poly_file("prime 5\npoly q = (X +)").unwrap_err();
        assert_eq!((e.line, e.col), (2, 14));
        let e = parse_poly_file("prime 5\npoly s = (X)").unwrap_err();
        assert!(e.msg.contains("unknown polynomial name"));
        let e = parse_poly_file("prime 6\npoly q = (X)").unwrap_err();
        assert_eq!((e.line, e.col), (1, 7));
        assert!(parse_poly_file("prime 5\npoly q = (Y + 1)").is_err());
    }

    #[test]
    fn strict_mode() {
        let text = "prime 5\npoly q = (X + 7)";
        let f = parse_poly_file(text).unwrap();
        assert_eq!(f.get("q").unwrap().factors()[0].0.coeffs(), &[2, 1]);
        let e = parse_poly_file_with(text, ParseOptions { strict: true }).unwrap_err();
        assert_eq!((e.line, e.col), (2, 15));
    }

    #[test]
    fn poly_round_trip() {
        let text = "prime 283\n# comment\npoly r = 157 * (X + 212)^7 * (X^2 + 134X + 135)^7\npoly q = (X^4 + X^3 + 258X^2 + 211X + 120)^3\n";
        let f = parse_poly_file(text).unwrap();
        let g = parse_poly_file(&f.to_string()).unwrap();
        assert_eq!(f, g);
    }

    #[test]
    fn triples() {
        let t = parse_triple_file("degree 3\nperm x = (1,2)\nperm y = (2,3)").unwrap();
        assert_eq!(t.triple().z.cycle_type().to_string(), "3");
        let e = parse_triple_file("degree 3\nperm x = (1,1)\nperm y = id").unwrap_err();
        assert!(e.msg.contains("repeated"));
        assert_eq!((e.line, e.col), (2, 13));
        assert!(parse_triple_file("degree 3\nperm x = (1,4)\nperm y = id").is_err());
        assert!(parse_triple_file("degree 3\nperm x = (1,2)").is_err());
        assert!(parse_triple_file("degree 3\nperm x = id\nperm y = id\nperm z = id").is_err());
        let t = parse_triple_file("degree 4\nperm x = (1,2)(3,4)\nperm y = (1,2,3)\nperm fold1 = (1,2)\n").unwrap();
        assert_eq!(t.folding.len(), 1);
        assert_eq!(parse_triple_file(&t.to_string()).unwrap(), t);
    }
}
