//! Text syntax for field tags, Witt-class and ring-element expressions, and representations.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor (['*'] factor)*
//! factor := atom ['^' int]
//! atom   := int | '<' scalar (',' scalar)* '>' | generator | '(' expr ')'
//! scalar := ['-'] sterm (('+'|'-') sterm)*     sterm := int ['/' int] ['*' 'sqrt'] | 'sqrt'
//! ```
//!
//! Errors carry the byte offset of the offending token.

use crate::error::{Error, Result};
use crate::euler::{GroupKind, Irrep, NIrrep, RepSum, SL2nIrrep};
use crate::field::{FieldDescriptor, FieldElement};
use crate::rings::{CohRing, GradedElement};
use crate::witt::WittClass;

const MAX_DEPTH: usize = 64;
const MAX_POWER: u32 = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(i64),
    Ident(String),
    Sym(char),
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    offset: usize,
}

fn lex(text: &str) -> Result<Vec<Token>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let n = text[start..i]
                .parse::<i64>()
                .map_err(|_| Error::syntax(start, "integer literal too large"))?;
            out.push(Token { tok: Tok::Int(n), offset: start });
        } else if c.is_ascii_alphabetic() || c == b'_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push(Token { tok: Tok::Ident(text[start..i].to_string()), offset: start });
        } else if b"+-*^<>(),/@".contains(&c) {
            out.push(Token { tok: Tok::Sym(c as char), offset: i });
            i += 1;
        } else {
            let ch = text[i..].chars().next().unwrap_or('?');
            return Err(Error::syntax(i, format!("unexpected character `{ch}`")));
        }
    }
    Ok(out)
}

/// Abstract syntax of a form or ring expression.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParsedExpr {
    Int(i64),
    /// `<c1, ..., cr>`.
    Diagonal(Vec<FieldElement>),
    Generator { name: String, offset: usize },
    Neg(Box<ParsedExpr>),
    Sum(Vec<ParsedExpr>),
    Product(Vec<ParsedExpr>),
    Pow(Box<ParsedExpr>, u32),
}

struct Parser<'a> {
    toks: Vec<Token>,
    pos: usize,
    end: usize,
    field: &'a FieldDescriptor,
    depth: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &str, field: &'a FieldDescriptor) -> Result<Self> {
        if text.trim().is_empty() {
            return Err(Error::syntax(0, "empty input"));
        }
        Ok(Parser { toks: lex(text)?, pos: 0, end: text.len(), field, depth: 0 })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |t| t.offset)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(Error::syntax(self.offset(), format!("expected `{c}`")))
        }
    }

    fn int(&mut self) -> Result<i64> {
        match self.peek() {
            Some(&Tok::Int(n)) => {
                self.pos += 1;
                Ok(n)
            }
            _ => Err(Error::syntax(self.offset(), "expected an integer")),
        }
    }

    fn finish(&self) -> Result<()> {
        if self.pos < self.toks.len() {
            return Err(Error::syntax(self.offset(), "unexpected trailing input"));
        }
        Ok(())
    }

    fn expr(&mut self) -> Result<ParsedExpr> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return Err(Error::syntax(self.offset(), "expression nested too deeply"));
        }
        let mut items = Vec::new();
        let mut negate = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        loop {
            let t = self.term()?;
            items.push(if negate { ParsedExpr::Neg(Box::new(t)) } else { t });
            if self.eat('+') {
                negate = false;
            } else if self.eat('-') {
                negate = true;
            } else {
                break;
            }
        }
        self.depth -= 1;
        Ok(if items.len() == 1 { items.pop().unwrap() } else { ParsedExpr::Sum(items) })
    }

    fn starts_atom(&self) -> bool {
        matches!(self.peek(), Some(Tok::Sym('<' | '(')) | Some(Tok::Ident(_)))
    }

    fn term(&mut self) -> Result<ParsedExpr> {
        let mut factors = vec![self.factor()?];
        // Juxtaposition is multiplication.
        while self.eat('*') || self.starts_atom() {
            factors.push(self.factor()?);
        }
        Ok(if factors.len() == 1 { factors.pop().unwrap() } else { ParsedExpr::Product(factors) })
    }

    fn factor(&mut self) -> Result<ParsedExpr> {
        let atom = self.atom()?;
        if self.eat('^') {
            let at = self.offset();
            let k = self.int()?;
            if k as u64 > MAX_POWER as u64 {
                return Err(Error::syntax(at, format!("exponent above {MAX_POWER}")));
            }
            return Ok(ParsedExpr::Pow(Box::new(atom), k as u32));
        }
        Ok(atom)
    }

    fn atom(&mut self) -> Result<ParsedExpr> {
        let offset = self.offset();
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                Ok(ParsedExpr::Int(n))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                Ok(ParsedExpr::Generator { name, offset })
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Some(Tok::Sym('<')) => {
                self.pos += 1;
                let mut entries = vec![self.scalar()?];
                while self.eat(',') {
                    entries.push(self.scalar()?);
                }
                self.expect('>')?;
                Ok(ParsedExpr::Diagonal(entries))
            }
            _ => Err(Error::syntax(offset, "expected an integer, `<`, `(` or a generator")),
        }
    }

    fn scalar(&mut self) -> Result<FieldElement> {
        let start = self.offset();
        let f = self.field;
        let mut acc = f.zero();
        let mut negate = self.eat('-');
        loop {
            let t = self.scalar_term()?;
            acc = if negate { f.sub(&acc, &t) } else { f.add(&acc, &t) };
            if self.eat('+') {
                negate = false;
            } else if self.eat('-') {
                negate = true;
            } else {
                break;
            }
        }
        if f.is_zero(&acc) {
            return Err(Error::syntax(start, "square class of zero"));
        }
        Ok(acc)
    }

    fn sqrt_token(&mut self) -> Result<FieldElement> {
        let at = self.offset();
        match self.peek() {
            Some(Tok::Ident(s)) if s == "sqrt" => {
                self.pos += 1;
                self.field
                    .sqrt_generator()
                    .ok_or_else(|| Error::syntax(at, format!("`sqrt` is not defined over {}", self.field)))
            }
            _ => Err(Error::syntax(at, "expected `sqrt`")),
        }
    }

    fn scalar_term(&mut self) -> Result<FieldElement> {
        let f = self.field;
        if matches!(self.peek(), Some(Tok::Ident(_))) {
            return self.sqrt_token();
        }
        let at = self.offset();
        let n = self.int()?;
        let mut value = f.from_i64(n);
        if self.eat('/') {
            let d_at = self.offset();
            let d = self.int()?;
            if d == 0 {
                return Err(Error::syntax(d_at, "zero denominator"));
            }
            value = f
                .div(&value, &f.from_i64(d))
                .map_err(|_| Error::syntax(at, format!("denominator not invertible in {f}")))?;
        }
        if self.eat('*') {
            let s = self.sqrt_token()?;
            value = f.mul(&value, &s);
        }
        Ok(value)
    }
}

/// Parses a field tag such as `Q`, `R`, `Fp:7`, `F7`, `Q(sqrt:2)` or `Fp:5(sqrt:-1)`.
pub fn parse_field_tag(text: &str) -> Result<FieldDescriptor> {
    let lead = text.len() - text.trim_start().len();
    let s = text.trim();
    if s.is_empty() {
        return Err(Error::syntax(0, "empty field tag"));
    }
    let (base_str, ext) = match s.find('(') {
        Some(i) => (&s[..i], Some(i)),
        None => (s, None),
    };
    let base = match base_str {
        "Q" => FieldDescriptor::Rationals,
        "R" => FieldDescriptor::Reals,
        _ => {
            let digits = base_str
                .strip_prefix("Fp:")
                .or_else(|| base_str.strip_prefix('F'))
                .ok_or_else(|| Error::syntax(lead, format!("unknown field `{base_str}`")))?;
            let p = digits
                .parse::<u64>()
                .map_err(|_| Error::syntax(lead, format!("bad characteristic `{digits}`")))?;
            FieldDescriptor::finite(p)?
        }
    };
    let Some(open) = ext else {
        return Ok(base);
    };
    let inner = s[open + 1..]
        .strip_suffix(')')
        .ok_or_else(|| Error::syntax(lead + s.len(), "expected `)`"))?;
    let a_text = inner
        .strip_prefix("sqrt:")
        .ok_or_else(|| Error::syntax(lead + open + 1, "expected `sqrt:`"))?;
    let a_offset = lead + open + 1 + "sqrt:".len();
    let a = parse_scalar(a_text, &base).map_err(|e| shift_offset(e, a_offset))?;
    FieldDescriptor::quad_ext(base, a)
}

fn shift_offset(e: Error, by: usize) -> Error {
    match e {
        Error::Syntax { offset, message } => Error::Syntax { offset: offset + by, message },
        other => other,
    }
}

/// Parses a nonzero scalar of `field`.
pub fn parse_scalar(text: &str, field: &FieldDescriptor) -> Result<FieldElement> {
    let mut p = Parser::new(text, field)?;
    let v = p.scalar()?;
    p.finish()?;
    Ok(v)
}

/// Parses an expression into syntax without evaluating generators.
pub fn parse_expr(text: &str, field: &FieldDescriptor) -> Result<ParsedExpr> {
    let mut p = Parser::new(text, field)?;
    let e = p.expr()?;
    p.finish()?;
    Ok(e)
}

trait Algebra {
    type V: Clone;
    fn int(&self, n: i64) -> Result<Self::V>;
    fn diagonal(&self, entries: &[FieldElement]) -> Result<Self::V>;
    fn gen(&self, name: &str, offset: usize) -> Result<Self::V>;
    fn add(&self, a: &Self::V, b: &Self::V) -> Result<Self::V>;
    fn neg(&self, a: &Self::V) -> Result<Self::V>;
    fn mul(&self, a: &Self::V, b: &Self::V) -> Result<Self::V>;
}

fn eval<A: Algebra>(alg: &A, e: &ParsedExpr) -> Result<A::V> {
    match e {
        ParsedExpr::Int(n) => alg.int(*n),
        ParsedExpr::Diagonal(entries) => alg.diagonal(entries),
        ParsedExpr::Generator { name, offset } => alg.gen(name, *offset),
        ParsedExpr::Neg(x) => alg.neg(&eval(alg, x)?),
        ParsedExpr::Sum(xs) => {
            let mut acc = eval(alg, &xs[0])?;
            for x in &xs[1..] {
                acc = alg.add(&acc, &eval(alg, x)?)?;
            }
            Ok(acc)
        }
        ParsedExpr::Product(xs) => {
            let mut acc = eval(alg, &xs[0])?;
            for x in &xs[1..] {
                acc = alg.mul(&acc, &eval(alg, x)?)?;
            }
            Ok(acc)
        }
        ParsedExpr::Pow(x, k) => {
            let base = eval(alg, x)?;
            let mut acc = alg.int(1)?;
            for _ in 0..*k {
                acc = alg.mul(&acc, &base)?;
            }
            Ok(acc)
        }
    }
}

struct WittAlgebra<'a>(&'a FieldDescriptor);

impl Algebra for WittAlgebra<'_> {
    type V = WittClass;

    fn int(&self, n: i64) -> Result<WittClass> {
        Ok(WittClass::integer(n, self.0))
    }

    fn diagonal(&self, entries: &[FieldElement]) -> Result<WittClass> {
        let mut acc = WittClass::zero(self.0);
        for c in entries {
            acc = acc.add(&WittClass::rank_one(self.0, c.clone())?)?;
        }
        Ok(acc)
    }

    fn gen(&self, name: &str, _offset: usize) -> Result<WittClass> {
        Err(Error::UnknownGenerator {
            name: name.to_string(),
            context: format!("W({})", self.0),
        })
    }

    fn add(&self, a: &WittClass, b: &WittClass) -> Result<WittClass> {
        a.add(b)
    }

    fn neg(&self, a: &WittClass) -> Result<WittClass> {
        Ok(a.neg())
    }

    fn mul(&self, a: &WittClass, b: &WittClass) -> Result<WittClass> {
        a.mul(b)
    }
}

/// Elements of a presented ring; in the twisted module, scalars and `x`, `e` live in BN.
struct RingAlgebra<'a> {
    ring: &'a CohRing,
    scalars: CohRing,
}

impl Algebra for RingAlgebra<'_> {
    type V = GradedElement;

    fn int(&self, n: i64) -> Result<GradedElement> {
        Ok(self.scalars.integer(n))
    }

    fn diagonal(&self, entries: &[FieldElement]) -> Result<GradedElement> {
        self.scalars.scalar(&WittAlgebra(self.ring.field()).diagonal(entries)?)
    }

    fn gen(&self, name: &str, _offset: usize) -> Result<GradedElement> {
        self.ring.gen(name)
    }

    fn add(&self, a: &GradedElement, b: &GradedElement) -> Result<GradedElement> {
        a.add(b)
    }

    fn neg(&self, a: &GradedElement) -> Result<GradedElement> {
        Ok(a.neg())
    }

    fn mul(&self, a: &GradedElement, b: &GradedElement) -> Result<GradedElement> {
        a.mul(b)
    }
}

/// Parses a Witt-class expression such as `3*<2> - 2` or `<1,1,-1>`.
pub fn parse_form(text: &str, field: &FieldDescriptor) -> Result<WittClass> {
    eval(&WittAlgebra(field), &parse_expr(text, field)?)
}

/// Parses an element of `ring`, e.g. `x*e + 2*e^2` in BN.
pub fn parse_ring(text: &str, ring: &CohRing) -> Result<GradedElement> {
    let scalars = if ring.is_module() { CohRing::bn(ring.field())? } else { ring.clone() };
    let v = eval(&RingAlgebra { ring, scalars }, &parse_expr(text, ring.field())?)?;
    if ring.is_module() {
        if v.is_zero() {
            return Ok(ring.zero());
        }
        if !v.ring().is_module() {
            return Err(Error::BadParameters("expected a multiple of eT".into()));
        }
    }
    Ok(v)
}

struct RepParser {
    toks: Vec<Token>,
    pos: usize,
    end: usize,
    group: GroupKind,
}

impl RepParser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |t| t.offset)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(Error::syntax(self.offset(), format!("expected `{c}`")))
        }
    }

    fn int(&mut self) -> Result<i64> {
        match self.peek() {
            Some(&Tok::Int(n)) => {
                self.pos += 1;
                Ok(n)
            }
            _ => Err(Error::syntax(self.offset(), "expected an integer")),
        }
    }

    fn small(&mut self, what: &str) -> Result<u32> {
        let at = self.offset();
        let n = self.int()?;
        u32::try_from(n)
            .ok()
            .filter(|&k| k <= 1024)
            .ok_or_else(|| Error::syntax(at, format!("{what} out of range")))
    }

    fn n(&self, at: usize) -> Result<u32> {
        match self.group {
            GroupKind::SL2n(n) => Ok(n),
            GroupKind::N => Err(Error::syntax(at, "SL2 representation in an N context")),
        }
    }

    fn factor_index(&mut self, n: u32) -> Result<usize> {
        self.expect('@')?;
        let at = self.offset();
        let i = self.small("factor index")? as usize;
        if i == 0 || i > n as usize {
            return Err(Error::syntax(at, format!("factor index {i} outside 1..={n}")));
        }
        Ok(i)
    }

    /// One tensor factor: an exponent vector contribution for SL2^n, or an N irrep.
    fn rfactor(&mut self) -> Result<Irrep> {
        let at = self.offset();
        let name = match self.peek() {
            Some(Tok::Ident(s)) => s.clone(),
            Some(Tok::Int(1)) if self.group != GroupKind::N => {
                self.pos += 1;
                let n = self.n(at)?;
                return Ok(Irrep::SL2n(SL2nIrrep::from_exponents(vec![0; n as usize])?));
            }
            _ => return Err(Error::syntax(at, "expected a representation")),
        };
        self.pos += 1;
        match name.as_str() {
            "F" => {
                let n = self.n(at)?;
                let i = self.factor_index(n)?;
                Ok(Irrep::SL2n(SL2nIrrep::sym(1, i, n)?))
            }
            "Sym" => {
                let n = self.n(at)?;
                self.expect('(')?;
                let mut ms = vec![self.small("exponent")?];
                while self.eat(',') {
                    ms.push(self.small("exponent")?);
                }
                self.expect(')')?;
                if self.peek() == Some(&Tok::Sym('@')) {
                    if ms.len() != 1 {
                        return Err(Error::syntax(self.offset(), "`@` needs a single exponent"));
                    }
                    let i = self.factor_index(n)?;
                    return Ok(Irrep::SL2n(SL2nIrrep::sym(ms[0], i, n)?));
                }
                if ms.len() != n as usize {
                    return Err(Error::syntax(at, format!("expected {n} exponents")));
                }
                Ok(Irrep::SL2n(SL2nIrrep::from_exponents(ms)?))
            }
            "rho" | "rho0" if self.group != GroupKind::N => {
                Err(Error::syntax(at, "N representation in an SL2 context"))
            }
            "rho" => {
                self.expect('(')?;
                let m_at = self.offset();
                let m = self.int()?;
                self.expect(')')?;
                if m > 1024 {
                    return Err(Error::syntax(m_at, "weight out of range"));
                }
                NIrrep::rho(m).map(Irrep::N).map_err(|_| Error::syntax(m_at, "rho needs m >= 1"))
            }
            "rho0" => Ok(Irrep::N(if self.eat('-') { NIrrep::Rho0Minus } else { NIrrep::Rho0 })),
            _ => Err(Error::syntax(at, format!("unknown representation `{name}`"))),
        }
    }

    fn rterm(&mut self) -> Result<(Irrep, u32)> {
        let mut mult = 1;
        if let Some(&Tok::Int(k)) = self.peek() {
            // A leading integer is a multiplicity unless it is the trivial rep `1` on its own.
            let next = self.toks.get(self.pos + 1).map(|t| &t.tok);
            let is_mult = matches!(next, Some(Tok::Sym('*')) | Some(Tok::Ident(_)));
            if is_mult {
                let at = self.offset();
                self.pos += 1;
                self.eat('*');
                mult = u32::try_from(k)
                    .ok()
                    .filter(|&m| (1..=1024).contains(&m))
                    .ok_or_else(|| Error::syntax(at, "multiplicity out of range"))?;
            }
        }
        let mut irrep = self.rfactor()?;
        while self.eat('*') {
            let f_at = self.offset();
            let next = self.rfactor()?;
            irrep = tensor(irrep, next).map_err(|m| Error::syntax(f_at, m))?;
        }
        Ok((irrep, mult))
    }
}

fn tensor(a: Irrep, b: Irrep) -> std::result::Result<Irrep, String> {
    match (a, b) {
        (Irrep::SL2n(x), Irrep::SL2n(y)) => {
            let overlap = x.exponents().iter().zip(y.exponents()).any(|(p, q)| *p > 0 && *q > 0);
            if overlap {
                return Err("tensor factors must act on different copies of SL2".into());
            }
            let ex: Vec<u32> = x.exponents().iter().zip(y.exponents()).map(|(p, q)| p + q).collect();
            let nz: Vec<usize> = (0..ex.len()).filter(|&i| ex[i] > 0).collect();
            let lead_first = x.exponents().iter().position(|&m| m > 0);
            match (nz.as_slice(), lead_first) {
                ([i, j], Some(l)) if ex[*i] == 1 && ex[*j] == 1 => {
                    let other = if l == *i { *j } else { *i };
                    SL2nIrrep::tensor_pair(l + 1, other + 1, ex.len() as u32)
                        .map(Irrep::SL2n)
                        .map_err(|e| e.to_string())
                }
                _ => SL2nIrrep::from_exponents(ex).map(Irrep::SL2n).map_err(|e| e.to_string()),
            }
        }
        _ => Err("tensor products of N representations are not supported".into()),
    }
}

/// Parses a representation such as `F@1*F@2 + 2*Sym(3)@1` or `rho(3) + rho0-`.
pub fn parse_rep(text: &str, group: GroupKind) -> Result<RepSum> {
    if text.trim().is_empty() {
        return Err(Error::syntax(0, "empty representation"));
    }
    let mut p = RepParser { toks: lex(text)?, pos: 0, end: text.len(), group };
    if p.toks.len() == 1 && p.peek() == Some(&Tok::Int(0)) {
        return Ok(RepSum::zero(group));
    }
    let mut summands = vec![p.rterm()?];
    while p.eat('+') {
        summands.push(p.rterm()?);
    }
    if p.pos < p.toks.len() {
        return Err(Error::syntax(p.offset(), "unexpected trailing input"));
    }
    RepSum::new(group, summands)
}
