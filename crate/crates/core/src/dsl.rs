//! The `.lie` structure-equation language.
//!
//! ```text
//! # Iwasawa manifold
//! model iwasawa {
//!   dim 3
//!   d w1 = 0
//!   d w2 = 0
//!   d w3 = - w1^w2
//! }
//! ```
//!
//! Coefficients are Gaussian rationals: `2`, `1/2`, `i`, `(1/2+3/4i)`, `(1-i)`.
//! `cw3` is the conjugate of `w3` and may only appear on right-hand sides.
//! `#` starts a comment; `−` and `∧` are accepted for `-` and `^`.

use std::fmt::Write as _;

use num::{BigInt, BigRational, One, Zero};
use thiserror::Error;

use crate::exterior::{canonicalize_monomial, Form, Gen, Monomial, MAX_DIM};
use crate::model::{LieModel, ModelError};
use crate::scalar::Qi;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DslError {
    #[error("syntax error at line {line}, column {col}: expected {expected}, found {found}")]
    SyntaxError { line: usize, col: usize, expected: String, found: String },
    #[error("line {line}, column {col}: duplicate declaration of d w{k}")]
    DuplicateDeclaration { line: usize, col: usize, k: usize },
    #[error("missing declaration of d w{k}")]
    MissingDeclaration { k: usize },
    #[error("line {line}, column {col}: d w{k} has a (0,2) term {term}, which breaks integrability")]
    IntegrabilityError { line: usize, col: usize, k: usize, term: String },
    #[error("line {line}, column {col}: generator index {index} outside 1..={n}")]
    IndexOutOfRange { line: usize, col: usize, index: usize, n: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Sym(char),
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("'{s}'"),
            Tok::Int(n) => format!("'{n}'"),
            Tok::Sym(c) => format!("'{c}'"),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

fn tokenize(text: &str) -> Result<Vec<Token>, DslError> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    let (mut line, mut col) = (1, 1);
    while let Some(&c) = chars.peek() {
        let (tl, tc) = (line, col);
        if c == '\n' {
            chars.next();
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            chars.next();
            col += 1;
            continue;
        }
        if c == '#' {
            while let Some(&c) = chars.peek() {
                if c == '\n' {
                    break;
                }
                chars.next();
                col += 1;
            }
            continue;
        }
        if c.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&d) = chars.peek() {
                if !d.is_ascii_digit() {
                    break;
                }
                s.push(d);
                chars.next();
                col += 1;
            }
            out.push(Token { tok: Tok::Int(s.parse().unwrap()), line: tl, col: tc });
            continue;
        }
        if c.is_alphabetic() || c == '_' {
            let mut s = String::new();
            while let Some(&d) = chars.peek() {
                if !(d.is_alphanumeric() || d == '_') {
                    break;
                }
                s.push(d);
                chars.next();
                col += 1;
            }
            out.push(Token { tok: Tok::Ident(s), line: tl, col: tc });
            continue;
        }
        let sym = match c {
            '−' => '-',
            '∧' => '^',
            '{' | '}' | '(' | ')' | '=' | '+' | '-' | '*' | '^' | '/' => c,
            other => {
                return Err(DslError::SyntaxError {
                    line: tl,
                    col: tc,
                    expected: "a token".into(),
                    found: format!("'{other}'"),
                })
            }
        };
        chars.next();
        col += 1;
        out.push(Token { tok: Tok::Sym(sym), line: tl, col: tc });
    }
    out.push(Token { tok: Tok::Eof, line, col });
    Ok(out)
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    n: usize,
}

/// A coefficient, its generator factors and the source position of the term.
type Term = (Qi, Vec<Gen>, (usize, usize));

impl Parser {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn peek_at(&self, offset: usize) -> &Tok {
        &self.toks[(self.pos + offset).min(self.toks.len() - 1)].tok
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, expected: &str) -> Result<T, DslError> {
        let t = self.peek();
        Err(DslError::SyntaxError {
            line: t.line,
            col: t.col,
            expected: expected.into(),
            found: t.tok.describe(),
        })
    }

    fn expect_sym(&mut self, c: char) -> Result<(), DslError> {
        if self.peek().tok == Tok::Sym(c) {
            self.bump();
            Ok(())
        } else {
            self.error(&format!("'{c}'"))
        }
    }

    fn expect_keyword(&mut self, kw: &str) -> Result<(), DslError> {
        if self.peek().tok == Tok::Ident(kw.into()) {
            self.bump();
            Ok(())
        } else {
            self.error(&format!("'{kw}'"))
        }
    }

    fn eat_sym(&mut self, c: char) -> bool {
        if self.peek().tok == Tok::Sym(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn small_int(&mut self, what: &str) -> Result<usize, DslError> {
        match &self.peek().tok {
            Tok::Int(v) => {
                let v: usize = v.try_into().or_else(|_| self.error(what))?;
                self.bump();
                Ok(v)
            }
            _ => self.error(what),
        }
    }

    fn is_generator(tok: &Tok) -> bool {
        matches!(tok, Tok::Ident(s) if split_generator(s).is_some())
    }

    fn generator(&mut self) -> Result<Gen, DslError> {
        let t = self.peek().clone();
        let g = match &t.tok {
            Tok::Ident(s) => split_generator(s),
            _ => None,
        };
        let Some(g) = g else { return self.error("a generator 'w<k>' or 'cw<k>'") };
        if g.index() == 0 || g.index() > self.n {
            return Err(DslError::IndexOutOfRange { line: t.line, col: t.col, index: g.index(), n: self.n });
        }
        self.bump();
        Ok(g)
    }

    fn rational(&mut self) -> Result<BigRational, DslError> {
        let num = match &self.peek().tok {
            Tok::Int(v) => v.clone(),
            _ => return self.error("a number"),
        };
        self.bump();
        if self.peek().tok == Tok::Sym('/') {
            self.bump();
            let den = match &self.peek().tok {
                Tok::Int(v) if !v.is_zero() => v.clone(),
                _ => return self.error("a nonzero denominator"),
            };
            self.bump();
            Ok(BigRational::new(num, den))
        } else {
            Ok(BigRational::from_integer(num))
        }
    }

    fn is_i(&self) -> bool {
        self.peek().tok == Tok::Ident("i".into())
    }

    /// One summand of a scalar: `RAT`, `i`, `RAT i` or `RAT*i`.
    fn scalar_atom(&mut self) -> Result<Qi, DslError> {
        if self.is_i() {
            self.bump();
            return Ok(Qi::i());
        }
        let r = self.rational()?;
        if self.is_i() {
            self.bump();
            return Ok(Qi::new(BigRational::zero(), r));
        }
        if self.peek().tok == Tok::Sym('*') && *self.peek_at(1) == Tok::Ident("i".into()) {
            self.bump();
            self.bump();
            return Ok(Qi::new(BigRational::zero(), r));
        }
        Ok(Qi::from(r))
    }

    /// `( [sign] atom ((+|-) atom)* )`
    fn paren_scalar(&mut self) -> Result<Qi, DslError> {
        self.expect_sym('(')?;
        let mut negative = self.eat_sym('-');
        if !negative {
            self.eat_sym('+');
        }
        let mut total = Qi::zero();
        loop {
            let a = self.scalar_atom()?;
            total = if negative { total - a } else { total + a };
            if self.eat_sym('+') {
                negative = false;
            } else if self.eat_sym('-') {
                negative = true;
            } else {
                break;
            }
        }
        self.expect_sym(')')?;
        Ok(total)
    }

    fn starts_coefficient(&self) -> bool {
        matches!(self.peek().tok, Tok::Int(_) | Tok::Sym('(')) || self.is_i()
    }

    /// `[coeff ["*"]] [gen ("^" gen)*]`; at least one of the two parts must be present.
    fn term(&mut self) -> Result<Term, DslError> {
        let pos = (self.peek().line, self.peek().col);
        let mut coeff = Qi::one();
        let mut had_coeff = false;
        if self.starts_coefficient() {
            coeff = if self.peek().tok == Tok::Sym('(') { self.paren_scalar()? } else { self.scalar_atom()? };
            had_coeff = true;
            if self.eat_sym('*') && !Self::is_generator(&self.peek().tok) {
                return self.error("a generator after '*'");
            }
        }
        let mut gens = Vec::new();
        if Self::is_generator(&self.peek().tok) {
            gens.push(self.generator()?);
            while self.eat_sym('^') {
                gens.push(self.generator()?);
            }
        } else if !had_coeff {
            return self.error("a term");
        }
        Ok((coeff, gens, pos))
    }

    /// A signed sum of terms. Each term is reported with its source position.
    fn form(&mut self) -> Result<Vec<Term>, DslError> {
        let mut negative = self.eat_sym('-');
        if !negative {
            self.eat_sym('+');
        }
        let mut terms = Vec::new();
        loop {
            let (c, g, pos) = self.term()?;
            terms.push((if negative { -c } else { c }, g, pos));
            if self.eat_sym('+') {
                negative = false;
            } else if self.eat_sym('-') {
                negative = true;
            } else {
                break;
            }
        }
        Ok(terms)
    }
}

fn split_generator(s: &str) -> Option<Gen> {
    let (anti, digits) = match s.strip_prefix("cw") {
        Some(d) => (true, d),
        None => (false, s.strip_prefix('w')?),
    };
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    let k: usize = digits.parse().ok()?;
    Some(if anti { Gen::Anti(k) } else { Gen::Holo(k) })
}

fn assemble(n: usize, terms: &[(Qi, Vec<Gen>, (usize, usize))]) -> Form {
    let mut f = Form::zero(n);
    for (c, gens, _) in terms {
        if let Some((sign, m)) = canonicalize_monomial(gens, n).expect("indices checked by the parser") {
            f.add_term(m, &(c * &Qi::from_int(sign as i64)));
        }
    }
    f
}

/// Parses a `.lie` source into a model. Structural checks (`d^2 = 0`) are left to
/// [`LieModel::validate`].
pub fn parse_model(text: &str) -> Result<LieModel, DslError> {
    let mut p = Parser { toks: tokenize(text)?, pos: 0, n: 0 };
    p.expect_keyword("model")?;
    let name = match &p.peek().tok {
        Tok::Ident(s) => s.clone(),
        _ => return p.error("a model name"),
    };
    p.bump();
    p.expect_sym('{')?;
    p.expect_keyword("dim")?;
    let dim_tok = p.peek().clone();
    let n = p.small_int("the complex dimension")?;
    if n == 0 || n > MAX_DIM {
        return Err(DslError::SyntaxError {
            line: dim_tok.line,
            col: dim_tok.col,
            expected: format!("a dimension in 1..={MAX_DIM}"),
            found: n.to_string(),
        });
    }
    p.n = n;

    let mut structure: Vec<Option<Form>> = vec![None; n];
    while p.peek().tok != Tok::Sym('}') {
        if p.peek().tok == Tok::Eof {
            return p.error("'}'");
        }
        p.expect_keyword("d")?;
        let lhs = p.peek().clone();
        let g = p.generator()?;
        let k = match g {
            Gen::Holo(k) => k,
            Gen::Anti(_) => {
                return Err(DslError::SyntaxError {
                    line: lhs.line,
                    col: lhs.col,
                    expected: "a holomorphic generator 'w<k>' (conjugate equations are derived)".into(),
                    found: lhs.tok.describe(),
                })
            }
        };
        if structure[k - 1].is_some() {
            return Err(DslError::DuplicateDeclaration { line: lhs.line, col: lhs.col, k });
        }
        p.expect_sym('=')?;
        let terms = p.form()?;
        for (c, gens, (line, col)) in &terms {
            if gens.is_empty() && c.is_zero() {
                continue;
            }
            if gens.len() != 2 {
                return Err(DslError::SyntaxError {
                    line: *line,
                    col: *col,
                    expected: "a 2-form term 'gen^gen' or '0'".into(),
                    found: format!("a term of degree {}", gens.len()),
                });
            }
            if gens.iter().all(|g| matches!(g, Gen::Anti(_))) {
                let term = format!("cw{}^cw{}", gens[0].index(), gens[1].index());
                return Err(DslError::IntegrabilityError { line: *line, col: *col, k, term });
            }
        }
        structure[k - 1] = Some(assemble(n, &terms));
    }
    p.bump();
    if p.peek().tok != Tok::Eof {
        return p.error("end of input");
    }
    let structure = structure
        .into_iter()
        .enumerate()
        .map(|(i, f)| f.ok_or(DslError::MissingDeclaration { k: i + 1 }))
        .collect::<Result<Vec<_>, _>>()?;
    LieModel::new(name, n, structure).map_err(|e| match e {
        ModelError::Integrability { k } => DslError::IntegrabilityError { line: 0, col: 0, k, term: "(0,2)".into() },
        other => DslError::SyntaxError { line: 0, col: 0, expected: "a valid model".into(), found: other.to_string() },
    })
}

/// Parses a single form such as `w1^cw2 - (1/2+i)*w3^cw3`, `1` or `0`, as printed
/// by `Form`'s `Display`.
pub fn parse_form(text: &str, n: usize) -> Result<Form, DslError> {
    let mut p = Parser { toks: tokenize(text)?, pos: 0, n };
    let terms = p.form()?;
    if p.peek().tok != Tok::Eof {
        return p.error("'+', '-' or end of input");
    }
    Ok(assemble(n, &terms))
}

/// Coefficient in grammar form: `2`, `1/2`, `i`, `(1/2+3/4i)`, `(0+2i)`.
fn dsl_coefficient(c: &Qi) -> String {
    let rat = |r: &BigRational| {
        if r.denom().is_one() {
            r.numer().to_string()
        } else {
            format!("{}/{}", r.numer(), r.denom())
        }
    };
    if c.is_real() {
        rat(&c.re)
    } else if *c == Qi::i() {
        "i".into()
    } else {
        let sign = if c.im < BigRational::zero() { '-' } else { '+' };
        let im = if c.im < BigRational::zero() { -c.im.clone() } else { c.im.clone() };
        format!("({}{}{}i)", rat(&c.re), sign, rat(&im))
    }
}

/// Right-hand side text for one structure equation, e.g. `- w1^w2` or
/// `w1^w2 + 2*w1^cw1`.
pub fn format_rhs(f: &Form) -> String {
    if f.is_zero() {
        return "0".into();
    }
    let mut s = String::new();
    for (i, (m, c)) in f.terms().enumerate() {
        let negative = c.is_sign_negative();
        let c = if negative { -c.clone() } else { c.clone() };
        s.push_str(match (i, negative) {
            (0, true) => "- ",
            (0, false) => "",
            (_, true) => " - ",
            (_, false) => " + ",
        });
        if !c.is_one() {
            s.push_str(&dsl_coefficient(&c));
            s.push('*');
        }
        s.push_str(&m.to_string());
    }
    s
}

/// Canonical source text; `parse_model(&print_model(m)) == m`.
pub fn print_model(m: &LieModel) -> String {
    let mut s = String::new();
    writeln!(s, "model {} {{", m.name()).unwrap();
    writeln!(s, "  dim {}", m.dim()).unwrap();
    for k in 1..=m.dim() {
        writeln!(s, "  d w{k} = {}", format_rhs(m.structure(k))).unwrap();
    }
    s.push_str("}\n");
    s
}

/// A monomial parsed from text like `w1^w2^cw3` (sign discarded).
pub fn parse_monomial(text: &str, n: usize) -> Result<Monomial, DslError> {
    let f = parse_form(text, n)?;
    let first = f.terms().next().map(|(m, _)| *m);
    match first {
        Some(m) if f.len() == 1 => Ok(m),
        _ => Err(DslError::SyntaxError { line: 1, col: 1, expected: "a single monomial".into(), found: text.into() }),
    }
}
