//! The `.gmod` presentation format.
//!
//! ```text
//! # comment
//! ring char 2 vars x(1) y(1) z(4)
//! gens a(0) b(1)
//! rel x*b + y^2*a
//! meta label example
//! ```
//!
//! A file without a `gens` line describes a cyclic module with one
//! generator `g` in degree 0; its relations may be written as bare
//! polynomials.

use std::collections::{BTreeMap, HashSet};
use std::fmt::Write as _;

use omega_kernel::{FreeModule, GradedRing, Limits, Polynomial, PresentedModule, RingRef, Vector};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

fn err<T>(line: usize, column: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        line,
        column,
        message: message.into(),
    })
}

/// A parsed presentation with its names and metadata.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub ring: RingRef,
    pub generators: Vec<(String, i64)>,
    pub relations: Vec<Vector>,
    pub meta: BTreeMap<String, String>,
}

impl Presentation {
    pub fn module(&self) -> PresentedModule {
        let degrees = self.generators.iter().map(|g| g.1).collect();
        PresentedModule::new(&self.ring, degrees, self.relations.clone())
            .expect("relations were checked while parsing")
    }

    pub fn label(&self) -> Option<&str> {
        self.meta.get("label").map(String::as_str)
    }

    /// `meta claim cohomology`: the file claims to present a group
    /// cohomology ring.
    pub fn claims_cohomology(&self) -> bool {
        self.meta.get("claim").is_some_and(|v| v == "cohomology")
    }

    /// Canonical text form; parsing it gives back an equal presentation.
    pub fn to_text(&self) -> String {
        let r = &self.ring;
        let mut out = format!("ring char {} vars", r.characteristic());
        for (name, w) in r.names().iter().zip(r.weights()) {
            write!(out, " {name}({w})").unwrap();
        }
        out.push_str("\ngens");
        for (name, d) in &self.generators {
            write!(out, " {name}({d})").unwrap();
        }
        out.push('\n');
        for v in &self.relations {
            out.push_str("rel ");
            for (k, t) in v.terms().iter().enumerate() {
                if k > 0 {
                    out.push('+');
                }
                if t.coeff != 1 {
                    write!(out, "{}*", t.coeff).unwrap();
                }
                if !t.mono.is_one() {
                    write!(out, "{}*", t.mono.display(r.names())).unwrap();
                }
                out.push_str(&self.generators[t.comp].0);
            }
            out.push('\n');
        }
        for (k, v) in &self.meta {
            writeln!(out, "meta {k} {v}").unwrap();
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(String),
    Sym(char),
}

fn tokenize(text: &str, line: usize, offset: usize) -> Result<Vec<(Tok, usize)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = offset + i + 1;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            out.push((Tok::Int(chars[start..i].iter().collect()), col));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), col));
        } else if "()*+-^".contains(c) {
            out.push((Tok::Sym(c), col));
            i += 1;
        } else {
            return err(line, col, format!("unexpected character `{c}`"));
        }
    }
    Ok(out)
}

/// Cursor over the tokens of one line.
struct Cursor {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    line: usize,
    end: usize,
}

impl Cursor {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }

    fn column(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |t| t.1)
    }

    fn fail<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        err(self.line, self.column(), message)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|t| t.0.clone());
        self.pos += 1;
        t
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            self.fail(format!("expected `{c}`"))
        }
    }

    fn ident(&mut self, what: &str) -> Result<String, ParseError> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            _ => self.fail(format!("expected {what}")),
        }
    }

    fn keyword(&mut self, kw: &str) -> Result<(), ParseError> {
        match self.peek() {
            Some(Tok::Ident(s)) if s == kw => {
                self.pos += 1;
                Ok(())
            }
            _ => self.fail(format!("expected `{kw}`")),
        }
    }

    fn integer<T: std::str::FromStr>(&mut self, what: &str) -> Result<T, ParseError> {
        let col = self.column();
        let negative = self.eat('-');
        match self.next() {
            Some(Tok::Int(s)) => {
                let s = if negative { format!("-{s}") } else { s };
                s.parse()
                    .or_else(|_| err(self.line, col, format!("{what} `{s}` out of range")))
            }
            _ => err(self.line, col, format!("expected {what}")),
        }
    }

    /// `name(value)`
    fn declaration<T: std::str::FromStr>(
        &mut self,
        what: &str,
    ) -> Result<(String, T, usize), ParseError> {
        let col = self.column();
        let name = self.ident("a name")?;
        self.expect('(')?;
        let v = self.integer(what)?;
        self.expect(')')?;
        Ok((name, v, col))
    }

    fn done(&self) -> bool {
        self.pos >= self.toks.len()
    }
}

/// Value of a subexpression: a ring element or a module element.
#[derive(Clone)]
enum Val {
    Poly(Polynomial),
    Elem(Vec<Polynomial>),
}

struct ExprContext<'a> {
    ring: &'a RingRef,
    generators: &'a [(String, i64)],
}

impl ExprContext<'_> {
    fn expr(&self, c: &mut Cursor) -> Result<Val, ParseError> {
        let negate = if c.eat('-') {
            true
        } else {
            c.eat('+');
            false
        };
        let mut acc = self.term(c)?;
        if negate {
            acc = self.neg(acc);
        }
        loop {
            let col = c.column();
            let sub = if c.eat('+') {
                false
            } else if c.eat('-') {
                true
            } else {
                return Ok(acc);
            };
            let mut rhs = self.term(c)?;
            if sub {
                rhs = self.neg(rhs);
            }
            acc = self.add(acc, rhs).or_else(|m| err(c.line, col, m))?;
        }
    }

    fn term(&self, c: &mut Cursor) -> Result<Val, ParseError> {
        let mut acc = self.power(c)?;
        loop {
            let col = c.column();
            if !c.eat('*') {
                return Ok(acc);
            }
            let rhs = self.power(c)?;
            acc = self.mul(acc, rhs).or_else(|m| err(c.line, col, m))?;
        }
    }

    fn power(&self, c: &mut Cursor) -> Result<Val, ParseError> {
        let base = self.atom(c)?;
        let col = c.column();
        if !c.eat('^') {
            return Ok(base);
        }
        let e: u32 = match c.next() {
            Some(Tok::Int(s)) => s
                .parse()
                .or_else(|_| err(c.line, col + 1, format!("exponent `{s}` out of range")))?,
            _ => return err(c.line, col + 1, "expected a nonnegative integer exponent"),
        };
        match base {
            Val::Poly(p) => Ok(Val::Poly(p.pow(e))),
            Val::Elem(_) => err(c.line, col, "generators cannot be raised to a power"),
        }
    }

    fn atom(&self, c: &mut Cursor) -> Result<Val, ParseError> {
        let col = c.column();
        match c.next() {
            Some(Tok::Int(s)) => {
                let p = self.ring.characteristic() as u64;
                let r = s
                    .bytes()
                    .fold(0u64, |acc, d| (acc * 10 + (d - b'0') as u64) % p);
                Ok(Val::Poly(Polynomial::constant(self.ring, r as i64)))
            }
            Some(Tok::Ident(name)) => {
                if let Some(i) = self.ring.var_index(&name) {
                    Ok(Val::Poly(Polynomial::var(self.ring, i)))
                } else if let Some(g) = self.generators.iter().position(|g| g.0 == name) {
                    let mut v = vec![Polynomial::zero(self.ring); self.generators.len()];
                    v[g] = Polynomial::one(self.ring);
                    Ok(Val::Elem(v))
                } else {
                    err(c.line, col, format!("unknown identifier `{name}`"))
                }
            }
            Some(Tok::Sym('(')) => {
                let v = self.expr(c)?;
                c.expect(')')?;
                Ok(v)
            }
            _ => err(c.line, col, "expected a number, a name or `(`"),
        }
    }

    fn neg(&self, v: Val) -> Val {
        match v {
            Val::Poly(p) => Val::Poly(-&p),
            Val::Elem(e) => Val::Elem(e.iter().map(|p| -p).collect()),
        }
    }

    fn add(&self, a: Val, b: Val) -> Result<Val, String> {
        match (a, b) {
            (Val::Poly(a), Val::Poly(b)) => Ok(Val::Poly(&a + &b)),
            (Val::Elem(a), Val::Elem(b)) => {
                Ok(Val::Elem(a.iter().zip(&b).map(|(x, y)| x + y).collect()))
            }
            _ => Err("cannot add a polynomial to a module element".into()),
        }
    }

    fn mul(&self, a: Val, b: Val) -> Result<Val, String> {
        match (a, b) {
            (Val::Poly(a), Val::Poly(b)) => Ok(Val::Poly(&a * &b)),
            (Val::Poly(p), Val::Elem(e)) | (Val::Elem(e), Val::Poly(p)) => {
                Ok(Val::Elem(e.iter().map(|x| &p * x).collect()))
            }
            _ => Err("cannot multiply two generators".into()),
        }
    }
}

pub fn parse(text: &str) -> Result<Presentation, ParseError> {
    parse_with_limits(text, Limits::default())
}

pub fn parse_with_limits(text: &str, limits: Limits) -> Result<Presentation, ParseError> {
    let mut ring: Option<RingRef> = None;
    let mut generators: Option<Vec<(String, i64)>> = None;
    let mut relations: Vec<Vector> = Vec::new();
    let mut meta = BTreeMap::new();
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let content = raw.split('#').next().unwrap();
        let trimmed = content.trim_start();
        if trimmed.trim().is_empty() {
            continue;
        }
        let lead = content.chars().count() - trimmed.chars().count();
        let keyword: String = trimmed.chars().take_while(|c| !c.is_whitespace()).collect();
        let rest_offset = lead + keyword.chars().count();
        let rest: String = trimmed.chars().skip(keyword.chars().count()).collect();

        match keyword.as_str() {
            "ring" => {
                if ring.is_some() {
                    return err(line, lead + 1, "second `ring` line");
                }
                let mut c = cursor(&rest, line, rest_offset)?;
                c.keyword("char")?;
                let pcol = c.column();
                let p: u64 = c.integer("characteristic")?;
                c.keyword("vars")?;
                let mut names = Vec::new();
                let mut weights = Vec::new();
                let mut seen = HashSet::new();
                while !c.done() {
                    let (name, w, col) = c.declaration::<i64>("weight")?;
                    if !seen.insert(name.clone()) {
                        return err(line, col, format!("duplicate variable `{name}`"));
                    }
                    if w < 1 || w > u32::MAX as i64 {
                        return err(
                            line,
                            col,
                            format!("variable `{name}` needs a positive weight"),
                        );
                    }
                    names.push(name);
                    weights.push(w as u32);
                }
                if names.is_empty() {
                    return c.fail("expected at least one variable");
                }
                let r = GradedRing::with_limits(&names, &weights, p, limits)
                    .or_else(|e| err(line, pcol, e.to_string()))?;
                ring = Some(r);
            }
            "gens" => {
                let Some(r) = &ring else {
                    return err(line, lead + 1, "`gens` before `ring`");
                };
                if generators.is_some() {
                    return err(line, lead + 1, "second `gens` line");
                }
                if !relations.is_empty() {
                    return err(line, lead + 1, "`gens` after `rel`");
                }
                let mut c = cursor(&rest, line, rest_offset)?;
                let mut gens: Vec<(String, i64)> = Vec::new();
                while !c.done() {
                    let (name, d, col) = c.declaration::<i64>("degree")?;
                    if gens.iter().any(|g| g.0 == name) || r.var_index(&name).is_some() {
                        return err(line, col, format!("duplicate name `{name}`"));
                    }
                    gens.push((name, d));
                }
                generators = Some(gens);
            }
            "rel" => {
                let Some(r) = &ring else {
                    return err(line, lead + 1, "`rel` before `ring`");
                };
                let gens = generators.get_or_insert_with(|| vec![(default_generator(r), 0)]);
                let mut c = cursor(&rest, line, rest_offset)?;
                if c.done() {
                    return c.fail("empty relation");
                }
                let ctx = ExprContext {
                    ring: r,
                    generators: gens,
                };
                let v = ctx.expr(&mut c)?;
                if !c.done() {
                    return c.fail("unexpected token");
                }
                let polys = match v {
                    Val::Elem(e) => e,
                    Val::Poly(p) if gens.len() == 1 => vec![p],
                    Val::Poly(_) => {
                        return err(
                            line,
                            rest_offset + 1,
                            "a bare polynomial needs exactly one generator",
                        )
                    }
                };
                let f = FreeModule::new(r, gens.iter().map(|g| g.1).collect());
                let v = f.from_polys(&polys);
                if v.is_zero() {
                    continue;
                }
                if !f.is_homogeneous(&v) {
                    return err(line, rest_offset + 1, "relation is not homogeneous");
                }
                relations.push(v);
            }
            "meta" => {
                let body = rest.trim();
                let key: String = body.chars().take_while(|c| !c.is_whitespace()).collect();
                if key.is_empty() {
                    return err(line, rest_offset + 1, "expected a metadata key");
                }
                let value = body[key.len()..].trim().to_string();
                meta.insert(key, value);
            }
            other => return err(line, lead + 1, format!("unknown directive `{other}`")),
        }
    }

    let Some(ring) = ring else {
        return err(last_line.max(1), 1, "missing `ring` line");
    };
    let generators = generators.unwrap_or_else(|| vec![(default_generator(&ring), 0)]);
    Ok(Presentation {
        ring,
        generators,
        relations,
        meta,
    })
}

/// `g`, or `g_` etc. when a variable already has that name.
fn default_generator(r: &RingRef) -> String {
    let mut name = String::from("g");
    while r.var_index(&name).is_some() {
        name.push('_');
    }
    name
}

fn cursor(rest: &str, line: usize, offset: usize) -> Result<Cursor, ParseError> {
    let toks = tokenize(rest, line, offset)?;
    Ok(Cursor {
        toks,
        pos: 0,
        line,
        end: offset + rest.chars().count() + 1,
    })
}
