//! The problem-description language.
//!
//! ```text
//! ring { p = 101 vars = [x, y] ideal = [x^2, x*y] }
//! module { rank = 2 matrix = [[y, 0], [0, y]] }
//! options { t_range = -1..1 nmax = 12 format = json }
//! ```
//!
//! Whitespace and newlines are interchangeable and `#` starts a comment.
//! Polynomials use integers, variables, `+ - * ^` and parentheses;
//! juxtaposition is not multiplication.

use std::fmt;
use std::sync::Arc;

use brimlab_core::{Budget, GradedRing, ModuleMatrix, Monomial, Poly, PrimeField};

use crate::report::Format;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "line {}, column {}: {}",
            self.line, self.col, self.message
        )
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProblemSpec {
    pub p: u64,
    pub vars: Vec<String>,
    pub ideal: Vec<Poly>,
    pub rank: usize,
    /// Absent when only the ambient rank matters (spread).
    pub matrix: Option<Vec<Vec<Poly>>>,
    pub options: Options,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Options {
    pub t_range: Option<(i64, i64)>,
    pub n_max: Option<usize>,
    pub seed: Option<u64>,
    pub samples: Option<usize>,
    pub budget_pairs: Option<u64>,
    pub budget_degree: Option<u32>,
    pub format: Option<Format>,
    pub degree: Option<u32>,
}

impl Options {
    fn is_empty(&self) -> bool {
        *self == Options::default()
    }
}

impl ProblemSpec {
    pub fn budget(&self) -> Budget {
        let mut b = Budget::default();
        if let Some(v) = self.options.budget_pairs {
            b.max_pairs = v;
        }
        if let Some(v) = self.options.budget_degree {
            b.max_degree = v;
        }
        b
    }

    pub fn field(&self) -> PrimeField {
        PrimeField::new(self.p).expect("checked while parsing")
    }

    pub fn build_ring(&self) -> brimlab_core::Result<Arc<GradedRing>> {
        Ok(Arc::new(GradedRing::with_budget(
            self.p,
            self.vars.clone(),
            self.ideal.clone(),
            self.budget(),
        )?))
    }

    pub fn build_matrix(
        &self,
        ring: &Arc<GradedRing>,
    ) -> brimlab_core::Result<Option<ModuleMatrix>> {
        self.matrix
            .as_ref()
            .map(|rows| ModuleMatrix::new(ring.clone(), rows.clone()))
            .transpose()
    }

    pub fn poly_string(&self, p: &Poly) -> String {
        p.display(&self.vars, &self.field()).to_string()
    }

    /// Canonical text; `parse(&spec.to_text()) == spec`.
    pub fn to_text(&self) -> String {
        let list = |ps: &[Poly]| {
            ps.iter()
                .map(|p| self.poly_string(p))
                .collect::<Vec<_>>()
                .join(", ")
        };
        let mut out = format!(
            "ring {{\n  p = {}\n  vars = [{}]\n",
            self.p,
            self.vars.join(", ")
        );
        if !self.ideal.is_empty() {
            out.push_str(&format!("  ideal = [{}]\n", list(&self.ideal)));
        }
        out.push_str(&format!("}}\nmodule {{\n  rank = {}\n", self.rank));
        if let Some(rows) = &self.matrix {
            let rows: Vec<String> = rows.iter().map(|r| format!("[{}]", list(r))).collect();
            out.push_str(&format!("  matrix = [{}]\n", rows.join(", ")));
        }
        out.push_str("}\n");
        let o = &self.options;
        if !o.is_empty() {
            out.push_str("options {\n");
            if let Some((a, b)) = o.t_range {
                out.push_str(&format!("  t_range = {a}..{b}\n"));
            }
            let mut kv = |k: &str, v: Option<String>| {
                if let Some(v) = v {
                    out.push_str(&format!("  {k} = {v}\n"));
                }
            };
            kv("nmax", o.n_max.map(|v| v.to_string()));
            kv("seed", o.seed.map(|v| v.to_string()));
            kv("samples", o.samples.map(|v| v.to_string()));
            kv("budget_pairs", o.budget_pairs.map(|v| v.to_string()));
            kv("budget_degree", o.budget_degree.map(|v| v.to_string()));
            kv("format", o.format.map(|v| v.to_string()));
            kv("degree", o.degree.map(|v| v.to_string()));
            out.push_str("}\n");
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(String),
    Sym(char),
    DotDot,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "'{s}'"),
            Tok::Int(s) => write!(f, "'{s}'"),
            Tok::Sym(c) => write!(f, "'{c}'"),
            Tok::DotDot => write!(f, "'..'"),
            Tok::Eof => write!(f, "end of input"),
        }
    }
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(src: &str) -> Result<Vec<Spanned>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    let mut out = Vec::new();
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, col);
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        let start = i;
        let tok = if c.is_ascii_digit() {
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            Tok::Int(chars[start..i].iter().collect())
        } else if c.is_alphabetic() || c == '_' {
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            Tok::Ident(chars[start..i].iter().collect())
        } else if c == '.' && chars.get(i + 1) == Some(&'.') {
            i += 2;
            Tok::DotDot
        } else if "{}[](),=+-*^".contains(c) {
            i += 1;
            Tok::Sym(c)
        } else {
            return Err(ParseError {
                line: l0,
                col: c0,
                message: format!("unexpected character '{c}'"),
            });
        };
        col += i - start;
        out.push(Spanned {
            tok,
            line: l0,
            col: c0,
        });
    }
    out.push(Spanned {
        tok: Tok::Eof,
        line,
        col,
    });
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    field: Option<PrimeField>,
    vars: Vec<String>,
}

type PResult<T> = Result<T, ParseError>;

impl Parser {
    fn peek(&self) -> &Spanned {
        &self.toks[self.pos]
    }

    fn next(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn err_at<T>(&self, at: &Spanned, message: String) -> PResult<T> {
        Err(ParseError {
            line: at.line,
            col: at.col,
            message,
        })
    }

    fn expected<T>(&self, what: &str) -> PResult<T> {
        let at = self.peek().clone();
        self.err_at(&at, format!("expected {what}, found {}", at.tok))
    }

    fn eat_sym(&mut self, c: char) -> bool {
        if self.peek().tok == Tok::Sym(c) {
            self.next();
            true
        } else {
            false
        }
    }

    fn expect_sym(&mut self, c: char) -> PResult<()> {
        if self.eat_sym(c) {
            Ok(())
        } else {
            self.expected(&format!("'{c}'"))
        }
    }

    fn expect_keyword(&mut self, kw: &str) -> PResult<()> {
        if self.peek().tok == Tok::Ident(kw.into()) {
            self.next();
            Ok(())
        } else {
            self.expected(&format!("'{kw}'"))
        }
    }

    fn peek_keyword(&self, kw: &str) -> bool {
        self.peek().tok == Tok::Ident(kw.into())
    }

    fn uint(&mut self) -> PResult<u64> {
        let at = self.peek().clone();
        match &at.tok {
            Tok::Int(s) => {
                self.next();
                s.parse::<u64>()
                    .or_else(|_| self.err_at(&at, format!("integer {s} is too large")))
            }
            _ => self.expected("an integer"),
        }
    }

    fn int(&mut self) -> PResult<i64> {
        let neg = self.eat_sym('-');
        let at = self.peek().clone();
        let v = self.uint()?;
        let v = i64::try_from(v).or_else(|_| self.err_at(&at, "integer is too large".into()))?;
        Ok(if neg { -v } else { v })
    }

    fn small<T: TryFrom<u64>>(&mut self, what: &str) -> PResult<T> {
        let at = self.peek().clone();
        let v = self.uint()?;
        T::try_from(v).or_else(|_| self.err_at(&at, format!("{what} {v} is out of range")))
    }

    fn ident(&mut self) -> PResult<String> {
        match self.peek().tok.clone() {
            Tok::Ident(s) => {
                self.next();
                Ok(s)
            }
            _ => self.expected("an identifier"),
        }
    }

    fn key(&mut self, kw: &str) -> PResult<()> {
        self.expect_keyword(kw)?;
        self.expect_sym('=')
    }

    /// `[ item (, item)* ]`, where an empty list is allowed when `allow_empty`.
    fn list<T>(
        &mut self,
        allow_empty: bool,
        mut item: impl FnMut(&mut Self, usize) -> PResult<T>,
    ) -> PResult<Vec<T>> {
        self.expect_sym('[')?;
        let mut out = Vec::new();
        if allow_empty && self.eat_sym(']') {
            return Ok(out);
        }
        loop {
            out.push(item(self, out.len())?);
            if self.eat_sym(',') {
                continue;
            }
            if self.eat_sym(']') {
                return Ok(out);
            }
            return self.expected("']' or ','");
        }
    }

    fn spec(&mut self) -> PResult<ProblemSpec> {
        self.expect_keyword("ring")?;
        self.expect_sym('{')?;
        self.key("p")?;
        let at = self.peek().clone();
        let p = self.uint()?;
        let field = PrimeField::new(p).or_else(|e| self.err_at(&at, e.to_string()))?;
        self.field = Some(field);
        self.key("vars")?;
        let at = self.peek().clone();
        let vars = self.list(false, |s, _| s.ident())?;
        for (i, v) in vars.iter().enumerate() {
            if vars[..i].contains(v) {
                return self.err_at(&at, format!("variable {v} declared twice"));
            }
        }
        if vars.len() > brimlab_core::monomial::MAX_VARS {
            return self.err_at(
                &at,
                format!(
                    "at most {} variables are supported",
                    brimlab_core::monomial::MAX_VARS
                ),
            );
        }
        self.vars = vars.clone();
        let mut ideal = Vec::new();
        if self.peek_keyword("ideal") {
            self.key("ideal")?;
            ideal = self.list(true, |s, k| {
                let at = s.peek().clone();
                let poly = s.poly()?;
                if !poly.is_zero() && poly.homogeneous_degree().flatten().is_none_or(|d| d == 0) {
                    return s.err_at(
                        &at,
                        format!(
                            "ideal generator {} is not homogeneous of positive degree",
                            k + 1
                        ),
                    );
                }
                Ok(poly)
            })?;
        }
        self.expect_sym('}')?;

        self.expect_keyword("module")?;
        self.expect_sym('{')?;
        self.key("rank")?;
        let at = self.peek().clone();
        let rank: usize = self.small("rank")?;
        if rank == 0 {
            return self.err_at(&at, "rank must be positive".into());
        }
        let mut matrix = None;
        if self.peek_keyword("matrix") {
            self.key("matrix")?;
            let at = self.peek().clone();
            let rows = self.list(false, |s, i| {
                s.list(false, |s, j| {
                    let at = s.peek().clone();
                    let poly = s.poly()?;
                    if !poly.is_zero() && poly.homogeneous_degree().flatten().is_none_or(|d| d == 0)
                    {
                        return s.err_at(
                            &at,
                            format!(
                                "entry ({}, {}) is not homogeneous of positive degree",
                                i + 1,
                                j + 1
                            ),
                        );
                    }
                    Ok(poly)
                })
            })?;
            if rows.len() != rank {
                return self.err_at(
                    &at,
                    format!("matrix has {} rows but rank = {rank}", rows.len()),
                );
            }
            if rows.iter().any(|r| r.len() != rows[0].len()) {
                return self.err_at(&at, "matrix rows have different lengths".into());
            }
            if rows[0].len() < rank {
                return self.err_at(&at, format!("matrix needs at least {rank} columns"));
            }
            matrix = Some(rows);
        }
        self.expect_sym('}')?;

        let mut options = Options::default();
        if self.peek_keyword("options") {
            self.next();
            self.expect_sym('{')?;
            while !self.eat_sym('}') {
                let at = self.peek().clone();
                let key = self.ident()?;
                self.expect_sym('=')?;
                match key.as_str() {
                    "t_range" => {
                        let a = self.int()?;
                        if self.peek().tok != Tok::DotDot {
                            return self.expected("'..'");
                        }
                        self.next();
                        let b = self.int()?;
                        if a > b {
                            return self.err_at(&at, format!("empty t range {a}..{b}"));
                        }
                        options.t_range = Some((a, b));
                    }
                    "nmax" => options.n_max = Some(self.small("nmax")?),
                    "seed" => options.seed = Some(self.uint()?),
                    "samples" => options.samples = Some(self.small("samples")?),
                    "budget_pairs" => options.budget_pairs = Some(self.uint()?),
                    "budget_degree" => options.budget_degree = Some(self.small("budget_degree")?),
                    "degree" => options.degree = Some(self.small("degree")?),
                    "format" => {
                        let at = self.peek().clone();
                        let name = self.ident()?;
                        options.format =
                            Some(name.parse().or_else(|e: String| self.err_at(&at, e))?);
                    }
                    other => return self.err_at(&at, format!("unknown option '{other}'")),
                }
            }
        }
        if self.peek().tok != Tok::Eof {
            return self.expected("end of input");
        }
        Ok(ProblemSpec {
            p,
            vars,
            ideal,
            rank,
            matrix,
            options,
        })
    }

    fn field(&self) -> PrimeField {
        self.field.expect("modulus parsed before any polynomial")
    }

    fn poly(&mut self) -> PResult<Poly> {
        let f = self.field();
        let neg = if self.eat_sym('-') {
            true
        } else {
            self.eat_sym('+');
            false
        };
        let mut acc = self.term()?;
        if neg {
            acc = acc.neg(&f);
        }
        loop {
            if self.eat_sym('+') {
                acc = acc.add(&self.term()?, &f);
            } else if self.eat_sym('-') {
                acc = acc.sub(&self.term()?, &f);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> PResult<Poly> {
        let f = self.field();
        let mut acc = self.factor()?;
        while self.eat_sym('*') {
            let rhs = self.factor()?;
            acc = acc.mul(&rhs, &f);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> PResult<Poly> {
        let f = self.field();
        let base = self.atom()?;
        if !self.eat_sym('^') {
            return Ok(base);
        }
        let at = self.peek().clone();
        let e = match &at.tok {
            Tok::Int(s) => {
                self.next();
                s.parse::<u16>()
                    .or_else(|_| self.err_at(&at, format!("exponent overflow: {s}")))?
            }
            _ => return self.expected("a natural exponent"),
        };
        if let [(m, 1)] = base.terms() {
            // a single variable power: check the exponent fits before expanding
            let exps = m.exponents(self.vars.len());
            let scaled: Vec<u32> = exps.iter().map(|&x| x as u32 * e as u32).collect();
            if Monomial::from_exponents(&scaled).is_err() {
                return self.err_at(&at, format!("exponent overflow: {e}"));
            }
        }
        Ok(base.pow(e as u32, &f))
    }

    fn atom(&mut self) -> PResult<Poly> {
        let f = self.field();
        let at = self.peek().clone();
        match &at.tok {
            Tok::Int(s) => {
                self.next();
                let c = s
                    .bytes()
                    .fold(0u64, |acc, d| (acc * 10 + (d - b'0') as u64) % f.modulus());
                Ok(Poly::constant(c as u32))
            }
            Tok::Ident(name) => {
                self.next();
                match self.vars.iter().position(|v| v == name) {
                    Some(i) => Ok(Poly::monomial(1, Monomial::var(i))),
                    None => self.err_at(&at, format!("unknown variable '{name}'")),
                }
            }
            Tok::Sym('(') => {
                self.next();
                let p = self.poly()?;
                self.expect_sym(')')?;
                Ok(p)
            }
            _ => self.expected("a number, variable or '('"),
        }
    }
}

pub fn parse_spec(text: &str) -> Result<ProblemSpec, ParseError> {
    let toks = lex(text)?;
    Parser {
        toks,
        pos: 0,
        field: None,
        vars: Vec::new(),
    }
    .spec()
}
