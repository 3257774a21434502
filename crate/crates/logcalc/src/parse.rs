//! Text syntax for scalars and series; see `docs/grammar.ebnf`.

use logcalc_core::logseries::SeriesError;
use logcalc_core::scalars::ScalarError;
use logcalc_core::{CoeffSpace, CoeffVector, ExactMatrix, ExactScalar, Exponent, LogSeries, Monomial, Var};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("{line}:{col}: syntax error: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("{line}:{col}: lattice violation: {msg}")]
    Lattice { line: usize, col: usize, msg: String },
    #[error("{line}:{col}: {msg}")]
    Math { line: usize, col: usize, msg: String },
}

const RESERVED: [&str; 5] = ["Pi", "i", "e", "lg", "O"];

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(i64),
    Ident(String),
    Sym(char),
    End,
}

struct Lexer<'a> {
    src: &'a str,
    toks: Vec<(Tok, usize)>,
}

impl<'a> Lexer<'a> {
    fn run(src: &'a str) -> Result<Vec<(Tok, usize)>, ParseError> {
        let mut lx = Lexer { src, toks: Vec::new() };
        let bytes = src.as_bytes();
        let mut i = 0;
        while i < bytes.len() {
            let c = bytes[i] as char;
            if c.is_ascii_whitespace() {
                i += 1;
            } else if c.is_ascii_digit() {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n = src[start..i].parse::<i64>().map_err(|_| lx.syntax(start, "integer literal too large"))?;
                lx.toks.push((Tok::Num(n), start));
            } else if c.is_ascii_alphabetic() || c == '_' {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                lx.toks.push((Tok::Ident(src[start..i].to_string()), start));
            } else if "+-*/^()[],".contains(c) {
                lx.toks.push((Tok::Sym(c), i));
                i += 1;
            } else {
                let ch = src[i..].chars().next().unwrap_or(c);
                return Err(lx.syntax(i, &format!("unexpected character '{ch}'")));
            }
        }
        lx.toks.push((Tok::End, src.len()));
        Ok(lx.toks)
    }

    fn syntax(&self, at: usize, msg: &str) -> ParseError {
        let (line, col) = line_col(self.src, at);
        ParseError::Syntax { line, col, msg: msg.to_string() }
    }
}

fn line_col(src: &str, at: usize) -> (usize, usize) {
    let before = &src[..at.min(src.len())];
    let line = before.matches('\n').count() + 1;
    let col = before.rfind('\n').map_or(before.chars().count(), |p| before[p + 1..].chars().count()) + 1;
    (line, col)
}

enum Item {
    Series(LogSeries),
    BigO(Var, i64),
}

struct Parser<'a> {
    src: &'a str,
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

type PResult<T> = Result<T, ParseError>;

impl<'a> Parser<'a> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn at(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn err(&self, at: usize, msg: impl Into<String>) -> ParseError {
        let (line, col) = line_col(self.src, at);
        ParseError::Syntax { line, col, msg: msg.into() }
    }

    fn math(&self, at: usize, e: impl Into<MathErr>) -> ParseError {
        let (line, col) = line_col(self.src, at);
        match e.into() {
            MathErr::Lattice(msg) => ParseError::Lattice { line, col, msg },
            MathErr::Other(msg) => ParseError::Math { line, col, msg },
        }
    }

    fn expect(&mut self, c: char) -> PResult<()> {
        if *self.peek() == Tok::Sym(c) {
            self.bump();
            Ok(())
        } else {
            Err(self.err(self.at(), format!("expected '{c}', found {}", describe(self.peek()))))
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if *self.peek() == Tok::Sym(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    /// Top level: a sum whose summands may include `O(v^N)`.
    fn top(&mut self) -> PResult<LogSeries> {
        let mut acc: Option<LogSeries> = None;
        let mut orders: Vec<(Var, i64)> = Vec::new();
        let mut first = true;
        loop {
            let at = self.at();
            let neg = if self.eat('-') {
                true
            } else {
                if !first && !self.eat('+') {
                    break;
                }
                if first {
                    self.eat('+');
                }
                false
            };
            first = false;
            match self.term(true)? {
                Item::BigO(v, n) => {
                    if neg {
                        return Err(self.err(at, "O(...) cannot be negated"));
                    }
                    orders.push((v, n));
                }
                Item::Series(s) => {
                    let s = if neg { -&s } else { s };
                    acc = Some(match acc {
                        None => s,
                        Some(a) => a.try_add(&s).map_err(|e| self.math(at, e))?,
                    });
                }
            }
        }
        if *self.peek() != Tok::End {
            return Err(self.err(self.at(), format!("unexpected {}", describe(self.peek()))));
        }
        let mut out = acc.unwrap_or_else(|| LogSeries::zero(CoeffSpace::Scalar));
        for (v, n) in orders {
            out = out.truncate(&v, n);
        }
        Ok(out)
    }

    fn sum(&mut self) -> PResult<LogSeries> {
        let mut acc: Option<LogSeries> = None;
        let mut first = true;
        loop {
            let at = self.at();
            let neg = if self.eat('-') {
                true
            } else {
                if !first && !self.eat('+') {
                    break;
                }
                if first {
                    self.eat('+');
                }
                false
            };
            first = false;
            let s = self.series_term()?;
            let s = if neg { -&s } else { s };
            acc = Some(match acc {
                None => s,
                Some(a) => a.try_add(&s).map_err(|e| self.math(at, e))?,
            });
        }
        Ok(acc.expect("at least one term"))
    }

    fn series_term(&mut self) -> PResult<LogSeries> {
        let at = self.at();
        match self.term(false)? {
            Item::Series(s) => Ok(s),
            Item::BigO(..) => Err(self.err(at, "O(...) is only allowed as a top-level summand")),
        }
    }

    fn term(&mut self, allow_o: bool) -> PResult<Item> {
        if allow_o && *self.peek() == Tok::Ident("O".into()) {
            return self.big_o();
        }
        let mut acc = self.power()?;
        loop {
            let at = self.at();
            if self.eat('*') {
                let rhs = self.power()?;
                acc = acc.mul(&rhs).map_err(|e| self.math(at, e))?;
            } else if self.eat('/') {
                let rhs_at = self.at();
                let rhs = self.power()?;
                acc = divide(&acc, &rhs).map_err(|e| self.math(rhs_at, e))?;
            } else {
                break;
            }
        }
        Ok(Item::Series(acc))
    }

    fn big_o(&mut self) -> PResult<Item> {
        self.bump();
        self.expect('(')?;
        let at = self.at();
        let v = match self.bump() {
            Tok::Ident(name) if !RESERVED.contains(&name.as_str()) => Var::new(&name),
            t => return Err(self.err(at, format!("expected a variable, found {}", describe(&t)))),
        };
        let n = if self.eat('^') { self.int_exponent()? } else { 1 };
        self.expect(')')?;
        Ok(Item::BigO(v, n - 1))
    }

    /// `N`, `-N` or `(±N)` after `^`.
    fn int_exponent(&mut self) -> PResult<i64> {
        let at = self.at();
        let paren = self.eat('(');
        let neg = self.eat('-');
        let n = match self.bump() {
            Tok::Num(n) => n,
            t => return Err(self.err(at, format!("expected an integer exponent, found {}", describe(&t)))),
        };
        if paren {
            self.expect(')')?;
        }
        Ok(if neg { -n } else { n })
    }

    fn power(&mut self) -> PResult<LogSeries> {
        if self.eat('-') {
            let s = self.power()?;
            return Ok(-&s);
        }
        if let Tok::Ident(name) = self.peek().clone() {
            if !RESERVED.contains(&name.as_str()) {
                self.bump();
                let v = Var::new(&name);
                let e = if self.eat('^') { self.exponent()? } else { Exponent::int(1) };
                return Ok(LogSeries::power(&v, e, 0));
            }
        }
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let e_at = self.at();
        let e = self.int_exponent()?;
        int_pow(&base, e).map_err(|m| self.math(e_at, m))
    }

    /// Exponent of a variable: `N` or `(expr)` with `expr` in `ℚ + ℚi`.
    fn exponent(&mut self) -> PResult<Exponent> {
        let at = self.at();
        if let Tok::Num(n) = *self.peek() {
            self.bump();
            return Ok(Exponent::int(n));
        }
        if self.eat('-') {
            let n = self.int_exponent()?;
            return Ok(Exponent::int(-n));
        }
        self.expect('(')?;
        let s = self.sum()?;
        self.expect(')')?;
        let c = constant(&s).ok_or_else(|| self.err(at, "exponent must be a constant"))?;
        let (re, im) = c.as_gaussian_rational().ok_or_else(|| self.err(at, format!("exponent {c} is not of the form a + b*i")))?;
        Exponent::new(re, im).map_err(|e| self.math(at, e))
    }

    fn atom(&mut self) -> PResult<LogSeries> {
        let at = self.at();
        match self.bump() {
            Tok::Num(n) => Ok(LogSeries::constant(ExactScalar::int(n))),
            Tok::Sym('(') => {
                let s = self.sum()?;
                self.expect(')')?;
                Ok(s)
            }
            Tok::Sym('[') => self.list(at),
            Tok::Ident(name) => match name.as_str() {
                "Pi" => Ok(LogSeries::constant(ExactScalar::pi())),
                "i" => Ok(LogSeries::constant(ExactScalar::imag_unit())),
                "e" => {
                    self.expect('(')?;
                    let q_at = self.at();
                    let s = self.sum()?;
                    self.expect(')')?;
                    let q = constant(&s).and_then(|c| c.as_rat()).ok_or_else(|| self.err(q_at, "e(q) needs a rational q"))?;
                    let z = ExactScalar::root_of_unity(&q).map_err(|e| self.math(q_at, e))?;
                    Ok(LogSeries::constant(z))
                }
                "lg" => {
                    self.expect('(')?;
                    let v_at = self.at();
                    let v = match self.bump() {
                        Tok::Ident(n) if !RESERVED.contains(&n.as_str()) => Var::new(&n),
                        t => return Err(self.err(v_at, format!("expected a variable, found {}", describe(&t)))),
                    };
                    self.expect(')')?;
                    let k = if self.eat('^') {
                        let k_at = self.at();
                        let k = self.int_exponent()?;
                        u32::try_from(k).map_err(|_| self.err(k_at, "log powers must be nonnegative"))?
                    } else {
                        1
                    };
                    Ok(LogSeries::power(&v, Exponent::zero(), k))
                }
                "O" => Err(self.err(at, "O(...) is only allowed as a top-level summand")),
                _ => unreachable!("variables are handled by the caller"),
            },
            t => Err(self.err(at, format!("unexpected {}", describe(&t)))),
        }
    }

    /// `[s, …]` is a vector; `[[…], …]` a square matrix, row by row.
    fn list(&mut self, at: usize) -> PResult<LogSeries> {
        if *self.peek() == Tok::Sym('[') {
            let mut rows: Vec<Vec<ExactScalar>> = Vec::new();
            loop {
                let row_at = self.at();
                self.expect('[')?;
                rows.push(self.scalars(row_at)?);
                if !self.eat(',') {
                    break;
                }
            }
            self.expect(']')?;
            let n = rows.len();
            if rows.iter().any(|r| r.len() != n) {
                return Err(self.err(at, format!("matrix must be square, found {n} rows of unequal or different length")));
            }
            let m = ExactMatrix::from_fn(n, n, |r, c| rows[r][c].clone());
            return Ok(LogSeries::vector_term(CoeffSpace::Matrix(n), Monomial::one(), CoeffVector::from_matrix(&m)));
        }
        let items = self.scalars(at)?;
        Ok(LogSeries::vector_term(CoeffSpace::Vector(items.len()), Monomial::one(), CoeffVector::from_dense(&items)))
    }

    /// Comma-separated constants up to the closing `]`.
    fn scalars(&mut self, at: usize) -> PResult<Vec<ExactScalar>> {
        let mut out = Vec::new();
        loop {
            let item_at = self.at();
            let s = self.sum()?;
            out.push(constant(&s).ok_or_else(|| self.err(item_at, "vector entries must be constants"))?);
            if !self.eat(',') {
                break;
            }
        }
        self.expect(']').map_err(|_| self.err(at, "unclosed '['"))?;
        Ok(out)
    }
}

enum MathErr {
    Lattice(String),
    Other(String),
}

impl From<ScalarError> for MathErr {
    fn from(e: ScalarError) -> Self {
        match e {
            ScalarError::LatticeViolation(m) => MathErr::Lattice(m),
            e => MathErr::Other(e.to_string()),
        }
    }
}

impl From<SeriesError> for MathErr {
    fn from(e: SeriesError) -> Self {
        match e {
            SeriesError::Scalar(s) => s.into(),
            e => MathErr::Other(e.to_string()),
        }
    }
}

impl From<String> for MathErr {
    fn from(s: String) -> Self {
        MathErr::Other(s)
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Num(n) => format!("number {n}"),
        Tok::Ident(s) => format!("'{s}'"),
        Tok::Sym(c) => format!("'{c}'"),
        Tok::End => "end of input".into(),
    }
}

/// The value of a scalar series with only a constant term.
fn constant(s: &LogSeries) -> Option<ExactScalar> {
    if s.space() != CoeffSpace::Scalar || !s.trunc().is_empty() {
        return None;
    }
    match s.len() {
        0 => Some(ExactScalar::zero()),
        1 => s.terms().next().filter(|(m, _)| m.is_one()).map(|(_, v)| v.get(0)),
        _ => None,
    }
}

/// `c·m` for a single scalar term without logs.
fn single_term(s: &LogSeries) -> Option<(ExactScalar, Monomial)> {
    if s.space() != CoeffSpace::Scalar || s.len() != 1 {
        return None;
    }
    let (m, v) = s.terms().next()?;
    m.factors().iter().all(|f| f.log == 0).then(|| (v.get(0), m.clone()))
}

fn monomial_pow(m: &Monomial, e: i64) -> Monomial {
    let mut out = Monomial::one();
    for f in m.factors() {
        out = out.mul(&Monomial::power(&f.var, f.exp.mul_int(e), 0));
    }
    out
}

fn int_pow(base: &LogSeries, e: i64) -> Result<LogSeries, MathErr> {
    if e >= 0 {
        let e = u32::try_from(e).map_err(|_| MathErr::Other("exponent too large".into()))?;
        return base.pow(e).map_err(MathErr::from);
    }
    let (c, m) = single_term(base).ok_or_else(|| MathErr::Other(format!("negative power of {base}, which is not a monomial")))?;
    let c = c.pow_int(e)?;
    Ok(LogSeries::term(monomial_pow(&m, e), c))
}

fn divide(a: &LogSeries, b: &LogSeries) -> Result<LogSeries, MathErr> {
    let (c, m) = single_term(b).ok_or_else(|| MathErr::Other(format!("division by {b}, which is not a monomial")))?;
    let inv = LogSeries::term(monomial_pow(&m, -1), c.inverse()?);
    a.mul(&inv).map_err(MathErr::from)
}

/// Parse a series; the result is canonical.
pub fn parse_series(text: &str) -> Result<LogSeries, ParseError> {
    let toks = Lexer::run(text)?;
    let mut p = Parser { src: text, toks, pos: 0 };
    if *p.peek() == Tok::End {
        return Err(p.err(0, "empty expression"));
    }
    p.top()
}

/// Parse a constant scalar such as `1/2`, `e(1/12) - 2*Pi^(-1)`.
pub fn parse_scalar(text: &str) -> Result<ExactScalar, ParseError> {
    let s = parse_series(text)?;
    constant(&s).ok_or_else(|| ParseError::Syntax { line: 1, col: 1, msg: format!("'{text}' is not a constant scalar") })
}

/// Parse an exponent `a`, `a/b`, `a+b*i`.
pub fn parse_exponent(text: &str) -> Result<Exponent, ParseError> {
    let c = parse_scalar(text)?;
    let (re, im) = c.as_gaussian_rational().ok_or_else(|| ParseError::Syntax {
        line: 1,
        col: 1,
        msg: format!("'{text}' is not of the form a + b*i"),
    })?;
    Exponent::new(re, im).map_err(|e| ParseError::Lattice { line: 1, col: 1, msg: e.to_string() })
}
