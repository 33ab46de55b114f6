//! Text format for CDGA presentations.
//!
//! ```text
//! # Heisenberg nilmanifold times a circle
//! algebra kt dim 4
//! gen a1 : 1
//! gen a2 : 1
//! gen a3 : 1
//! gen a4 : 1
//! d a3 = -a1*a2
//! omega = a2*a3 + a1*a4
//! ```
//!
//! Generator declaration order is the generator order. Differentials that are
//! not declared are zero. Names in `d` and `omega` lines may refer to
//! generators declared later in the file.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::cdga::FreeCDGA;
use crate::error::AlgebraError;
use crate::grading::{multiply, Element, GeneratorSet};
use crate::qlinalg::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}, column {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("line {line}, column {col}: unknown generator `{name}`")]
    UnknownGenerator { line: usize, col: usize, name: String },
    #[error("line {line}, column {col}: duplicate generator `{name}`")]
    DuplicateGenerator { line: usize, col: usize, name: String },
    #[error("line {line}: {source}")]
    Algebra {
        line: usize,
        #[source]
        source: AlgebraError,
    },
}

/// A position in the source text, 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenDecl {
    pub name: String,
    pub degree: u32,
    pub pos: Pos,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyText {
    pub text: String,
    pub pos: Pos,
}

/// Parsed but not yet resolved presentation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraFile {
    pub name: String,
    pub dim: Option<u32>,
    pub gens: Vec<GenDecl>,
    pub diffs: Vec<(String, Pos, PolyText)>,
    pub omega: Option<PolyText>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Sym(char),
}

fn lex(line: &str, lineno: usize, col0: usize) -> Result<Vec<(Tok, Pos)>, ParseError> {
    let chars: Vec<char> = line.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let pos = Pos {
            line: lineno,
            col: col0 + i,
        };
        if c == '#' {
            break;
        }
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), pos));
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push((Tok::Int(s.parse().expect("digits")), pos));
        } else if "=:*+-/".contains(c) {
            out.push((Tok::Sym(c), pos));
            i += 1;
        } else {
            return Err(ParseError::Syntax {
                line: lineno,
                col: pos.col,
                msg: format!("unexpected character `{c}`"),
            });
        }
    }
    Ok(out)
}

fn syntax(pos: Pos, msg: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line: pos.line,
        col: pos.col,
        msg: msg.into(),
    }
}

fn small_int(n: &BigInt, pos: Pos) -> Result<u32, ParseError> {
    u32::try_from(n).map_err(|_| syntax(pos, "integer out of range"))
}

/// Parses the line structure of a presentation; generator names inside
/// polynomials are resolved later by [`AlgebraFile::build`].
pub fn parse(source: &str) -> Result<AlgebraFile, ParseError> {
    let mut file = AlgebraFile {
        name: "unnamed".into(),
        dim: None,
        gens: Vec::new(),
        diffs: Vec::new(),
        omega: None,
    };
    let mut seen_header = false;
    for (idx, raw) in source.lines().enumerate() {
        let lineno = idx + 1;
        let toks = lex(raw, lineno, 1)?;
        let Some((first, fpos)) = toks.first().cloned() else {
            continue;
        };
        let end = Pos {
            line: lineno,
            col: raw.chars().count() + 1,
        };
        let at = |i: usize| toks.get(i).map_or(end, |t| t.1);
        let ident = |i: usize, what: &str| match toks.get(i) {
            Some((Tok::Ident(s), _)) => Ok(s.clone()),
            _ => Err(syntax(at(i), format!("expected {what}"))),
        };
        let sym = |i: usize, c: char| match toks.get(i) {
            Some((Tok::Sym(x), _)) if *x == c => Ok(()),
            _ => Err(syntax(at(i), format!("expected `{c}`"))),
        };
        // Text after the `=` of a d/omega line, kept verbatim for the second pass.
        let rest_after = |i: usize| -> Result<PolyText, ParseError> {
            let p = at(i);
            if i >= toks.len() {
                return Err(syntax(p, "expected a polynomial"));
            }
            let text: String = raw.chars().skip(p.col - 1).collect();
            let text = text.split('#').next().unwrap_or("").trim_end().to_string();
            Ok(PolyText { text, pos: p })
        };
        let Tok::Ident(kw) = first else {
            return Err(syntax(fpos, "expected `algebra`, `gen`, `d` or `omega`"));
        };
        match kw.as_str() {
            "algebra" => {
                if seen_header {
                    return Err(syntax(fpos, "duplicate `algebra` line"));
                }
                seen_header = true;
                file.name = ident(1, "algebra name")?;
                match toks.get(2) {
                    None => {}
                    Some((Tok::Ident(k), _)) if k == "dim" => match toks.get(3) {
                        Some((Tok::Int(n), p)) => {
                            file.dim = Some(small_int(n, *p)?);
                            if toks.len() > 4 {
                                return Err(syntax(at(4), "unexpected trailing input"));
                            }
                        }
                        _ => return Err(syntax(at(3), "expected an integer dimension")),
                    },
                    Some(_) => return Err(syntax(at(2), "expected `dim` or end of line")),
                }
            }
            "gen" => {
                let name = ident(1, "generator name")?;
                sym(2, ':')?;
                let degree = match toks.get(3) {
                    Some((Tok::Int(n), p)) => small_int(n, *p)?,
                    _ => return Err(syntax(at(3), "expected an integer degree")),
                };
                if toks.len() > 4 {
                    return Err(syntax(at(4), "unexpected trailing input"));
                }
                if file.gens.iter().any(|g| g.name == name) {
                    return Err(ParseError::DuplicateGenerator {
                        line: lineno,
                        col: at(1).col,
                        name,
                    });
                }
                file.gens.push(GenDecl {
                    name,
                    degree,
                    pos: at(1),
                });
            }
            "d" => {
                let name = ident(1, "generator name")?;
                sym(2, '=')?;
                if file.diffs.iter().any(|(n, _, _)| *n == name) {
                    return Err(syntax(at(1), format!("second differential for `{name}`")));
                }
                file.diffs.push((name, at(1), rest_after(3)?));
            }
            "omega" => {
                sym(1, '=')?;
                if file.omega.is_some() {
                    return Err(syntax(fpos, "duplicate `omega` line"));
                }
                file.omega = Some(rest_after(2)?);
            }
            _ => return Err(syntax(fpos, format!("unknown keyword `{kw}`"))),
        }
    }
    Ok(file)
}

fn parse_poly_at(text: &str, pos: Pos, gens: &GeneratorSet) -> Result<Element, ParseError> {
    let toks = lex(text, pos.line, pos.col)?;
    let n = gens.len();
    let end = Pos {
        line: pos.line,
        col: pos.col + text.chars().count(),
    };
    let mut out = Element::zero(n);
    let mut i = 0;
    let mut first = true;
    while i < toks.len() || first {
        let mut negative = false;
        match toks.get(i) {
            Some((Tok::Sym('+'), _)) => i += 1,
            Some((Tok::Sym('-'), _)) => {
                negative = true;
                i += 1;
            }
            Some((_, p)) if !first => return Err(syntax(*p, "expected `+` or `-`")),
            None if !first => unreachable!(),
            _ => {}
        }
        first = false;
        let here = toks.get(i).map_or(end, |t| t.1);
        let mut coeff = Rational::one();
        let mut term = Element::one(n);
        let mut need_factor = true;
        if let Some((Tok::Int(num), _)) = toks.get(i) {
            let num = num.clone();
            i += 1;
            coeff = Rational::from_integer(num);
            if let Some((Tok::Sym('/'), _)) = toks.get(i) {
                i += 1;
                match toks.get(i) {
                    Some((Tok::Int(den), p)) => {
                        if den.is_zero() {
                            return Err(syntax(*p, "zero denominator"));
                        }
                        coeff /= Rational::from_integer(den.clone());
                        i += 1;
                    }
                    _ => return Err(syntax(toks.get(i).map_or(end, |t| t.1), "expected a denominator")),
                }
            }
            need_factor = false;
            if let Some((Tok::Sym('*'), _)) = toks.get(i) {
                i += 1;
                need_factor = true;
            }
        }
        if need_factor {
            loop {
                match toks.get(i) {
                    Some((Tok::Ident(name), p)) => {
                        let g = gens.index_of(name).ok_or_else(|| ParseError::UnknownGenerator {
                            line: p.line,
                            col: p.col,
                            name: name.clone(),
                        })?;
                        term = multiply(&term, &Element::generator(n, g), gens).expect("same generators");
                        i += 1;
                    }
                    other => {
                        let p = other.map_or(if i == 0 { here } else { end }, |t| t.1);
                        return Err(syntax(p, "expected a generator name"));
                    }
                }
                match toks.get(i) {
                    Some((Tok::Sym('*'), _)) => i += 1,
                    _ => break,
                }
            }
        }
        if negative {
            coeff = -coeff;
        }
        out = &out + &term.scaled(&coeff);
    }
    Ok(out)
}

/// Parses a polynomial such as `-a1*b1 + 1/2*a2*b2` over the given generators.
pub fn parse_poly(text: &str, gens: &GeneratorSet) -> Result<Element, ParseError> {
    parse_poly_at(text, Pos { line: 1, col: 1 }, gens)
}

impl AlgebraFile {
    /// Resolves names and builds the algebra. Validation of `d^2 = 0` and the
    /// like is left to [`FreeCDGA::validate`].
    pub fn build(&self) -> Result<FreeCDGA, ParseError> {
        let mut pairs = Vec::new();
        for g in &self.gens {
            pairs.push((g.name.clone(), g.degree));
            GeneratorSet::new(pairs.clone()).map_err(|source| ParseError::Algebra {
                line: g.pos.line,
                source,
            })?;
        }
        let gens = GeneratorSet::new(pairs).expect("checked incrementally");
        let mut diff = vec![Element::zero(gens.len()); gens.len()];
        for (name, pos, poly) in &self.diffs {
            let i = gens.index_of(name).ok_or_else(|| ParseError::UnknownGenerator {
                line: pos.line,
                col: pos.col,
                name: name.clone(),
            })?;
            diff[i] = parse_poly_at(&poly.text, poly.pos, &gens)?;
        }
        let omega = match &self.omega {
            Some(p) => Some(parse_poly_at(&p.text, p.pos, &gens)?),
            None => None,
        };
        let mut alg = FreeCDGA::new(self.name.clone(), gens, diff).expect("arity matches");
        if let Some(m) = self.dim {
            alg = alg.with_formal_dim(m);
        }
        if let Some(w) = omega {
            alg = alg.with_omega(w).expect("arity matches");
        }
        Ok(alg)
    }
}

/// Parses and builds in one step.
pub fn parse_algebra(source: &str) -> Result<FreeCDGA, ParseError> {
    parse(source)?.build()
}

/// Canonical text form; parsing it gives back the same presentation.
pub fn emit(alg: &FreeCDGA) -> String {
    let mut out = String::new();
    out.push_str("algebra ");
    out.push_str(alg.name());
    if let Some(m) = alg.formal_dim() {
        out.push_str(&format!(" dim {m}"));
    }
    out.push('\n');
    for g in alg.gens().iter() {
        out.push_str(&format!("gen {} : {}\n", g.name, g.degree));
    }
    for (i, dx) in alg.differentials().iter().enumerate() {
        if !dx.is_zero() {
            out.push_str(&format!("d {} = {}\n", alg.gens().name(i), alg.display(dx)));
        }
    }
    if let Some(w) = alg.omega() {
        out.push_str(&format!("omega = {}\n", alg.display(w)));
    }
    out
}
