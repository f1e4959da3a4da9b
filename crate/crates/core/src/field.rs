//! Supported coefficient fields and exact arithmetic on their elements.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith;
use crate::error::{Error, Result};

/// A field of characteristic different from two.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldDescriptor {
    Rationals,
    /// The reals, with exact rationals standing in for elements.
    Reals,
    FinitePrime(u64),
    QuadExt(Box<QuadExtField>),
}

/// `base(sqrt(a))` with `a` a non-square of the base.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuadExtField {
    pub base: FieldDescriptor,
    pub a: FieldElement,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldElement {
    Rational(BigRational),
    Residue(u64),
    /// `u + v*sqrt(a)` over the base field.
    Pair(Box<FieldElement>, Box<FieldElement>),
}

impl FieldElement {
    pub fn rational(n: i64, d: i64) -> Self {
        FieldElement::Rational(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn integer(n: i64) -> Self {
        FieldElement::rational(n, 1)
    }

    pub fn pair(u: FieldElement, v: FieldElement) -> Self {
        FieldElement::Pair(Box::new(u), Box::new(v))
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            FieldElement::Rational(q) => Some(q),
            _ => None,
        }
    }

    pub fn as_pair(&self) -> Option<(&FieldElement, &FieldElement)> {
        match self {
            FieldElement::Pair(u, v) => Some((u, v)),
            _ => None,
        }
    }
}

impl FieldDescriptor {
    pub fn finite(p: u64) -> Result<Self> {
        if !arith::is_odd_prime(p) {
            return Err(Error::UnsupportedField(format!("{p} is not an odd prime")));
        }
        Ok(FieldDescriptor::FinitePrime(p))
    }

    /// Builds `base(sqrt(a))`, checking that `a` is a non-square and the base is not itself an extension.
    pub fn quad_ext(base: FieldDescriptor, a: FieldElement) -> Result<Self> {
        if matches!(base, FieldDescriptor::QuadExt(_)) {
            return Err(Error::UnsupportedField(
                "quadratic extensions may not be nested".into(),
            ));
        }
        let a = base.canonical_element(a)?;
        if base.is_zero(&a) {
            return Err(Error::ZeroInput);
        }
        if base.is_square(&a)? {
            return Err(Error::UnsupportedField(format!(
                "{a} is a square in {base}"
            )));
        }
        Ok(FieldDescriptor::QuadExt(Box::new(QuadExtField { base, a })))
    }

    pub fn as_quad_ext(&self) -> Option<&QuadExtField> {
        match self {
            FieldDescriptor::QuadExt(q) => Some(q),
            _ => None,
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldDescriptor::Rationals | FieldDescriptor::Reals => 0,
            FieldDescriptor::FinitePrime(p) => *p,
            FieldDescriptor::QuadExt(q) => q.base.characteristic(),
        }
    }

    /// Whether the field admits an ordering.
    pub fn is_formally_real(&self) -> bool {
        match self {
            FieldDescriptor::Rationals | FieldDescriptor::Reals => true,
            FieldDescriptor::FinitePrime(_) => false,
            FieldDescriptor::QuadExt(q) => match &q.base {
                FieldDescriptor::FinitePrime(_) => false,
                _ => q.a.as_rational().is_some_and(|a| a.is_positive()),
            },
        }
    }

    /// Reduces an element into the canonical storage form for this field.
    pub fn canonical_element(&self, x: FieldElement) -> Result<FieldElement> {
        match (self, x) {
            (FieldDescriptor::Rationals | FieldDescriptor::Reals, FieldElement::Rational(q)) => {
                Ok(FieldElement::Rational(q))
            }
            (FieldDescriptor::FinitePrime(p), FieldElement::Residue(r)) => {
                Ok(FieldElement::Residue(r % p))
            }
            (FieldDescriptor::FinitePrime(p), FieldElement::Rational(q)) => {
                Ok(FieldElement::Residue(arith::reduce_rational_mod(&q, *p)?))
            }
            (FieldDescriptor::QuadExt(q), FieldElement::Pair(u, v)) => Ok(FieldElement::pair(
                q.base.canonical_element(*u)?,
                q.base.canonical_element(*v)?,
            )),
            (FieldDescriptor::QuadExt(q), x) => {
                let zero = q.base.zero();
                Ok(FieldElement::pair(q.base.canonical_element(x)?, zero))
            }
            (field, x) => Err(Error::InconsistentField(format!(
                "{x} is not an element of {field}"
            ))),
        }
    }

    pub fn zero(&self) -> FieldElement {
        self.from_i64(0)
    }

    pub fn one(&self) -> FieldElement {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> FieldElement {
        match self {
            FieldDescriptor::Rationals | FieldDescriptor::Reals => FieldElement::integer(n),
            FieldDescriptor::FinitePrime(p) => FieldElement::Residue(arith::reduce_mod(n, *p)),
            FieldDescriptor::QuadExt(q) => FieldElement::pair(q.base.from_i64(n), q.base.zero()),
        }
    }

    /// The generator `sqrt(a)` of a quadratic extension.
    pub fn sqrt_generator(&self) -> Option<FieldElement> {
        let q = self.as_quad_ext()?;
        Some(FieldElement::pair(q.base.zero(), q.base.one()))
    }

    pub fn is_zero(&self, x: &FieldElement) -> bool {
        match x {
            FieldElement::Rational(q) => q.is_zero(),
            FieldElement::Residue(r) => *r == 0,
            FieldElement::Pair(u, v) => {
                let base = &self.as_quad_ext().expect("pair outside extension").base;
                base.is_zero(u) && base.is_zero(v)
            }
        }
    }

    pub fn add(&self, x: &FieldElement, y: &FieldElement) -> FieldElement {
        match (self, x, y) {
            (_, FieldElement::Rational(a), FieldElement::Rational(b)) => {
                FieldElement::Rational(a + b)
            }
            (FieldDescriptor::FinitePrime(p), FieldElement::Residue(a), FieldElement::Residue(b)) => {
                FieldElement::Residue((a + b) % p)
            }
            (FieldDescriptor::QuadExt(q), FieldElement::Pair(u1, v1), FieldElement::Pair(u2, v2)) => {
                FieldElement::pair(q.base.add(u1, u2), q.base.add(v1, v2))
            }
            _ => panic!("field element does not match {self}"),
        }
    }

    pub fn neg(&self, x: &FieldElement) -> FieldElement {
        match (self, x) {
            (_, FieldElement::Rational(a)) => FieldElement::Rational(-a),
            (FieldDescriptor::FinitePrime(p), FieldElement::Residue(a)) => {
                FieldElement::Residue((p - a) % p)
            }
            (FieldDescriptor::QuadExt(q), FieldElement::Pair(u, v)) => {
                FieldElement::pair(q.base.neg(u), q.base.neg(v))
            }
            _ => panic!("field element does not match {self}"),
        }
    }

    pub fn sub(&self, x: &FieldElement, y: &FieldElement) -> FieldElement {
        self.add(x, &self.neg(y))
    }

    pub fn mul(&self, x: &FieldElement, y: &FieldElement) -> FieldElement {
        match (self, x, y) {
            (_, FieldElement::Rational(a), FieldElement::Rational(b)) => {
                FieldElement::Rational(a * b)
            }
            (FieldDescriptor::FinitePrime(p), FieldElement::Residue(a), FieldElement::Residue(b)) => {
                FieldElement::Residue(((*a as u128 * *b as u128) % *p as u128) as u64)
            }
            (FieldDescriptor::QuadExt(q), FieldElement::Pair(u1, v1), FieldElement::Pair(u2, v2)) => {
                let b = &q.base;
                let u = b.add(&b.mul(u1, u2), &b.mul(&q.a, &b.mul(v1, v2)));
                let v = b.add(&b.mul(u1, v2), &b.mul(v1, u2));
                FieldElement::pair(u, v)
            }
            _ => panic!("field element does not match {self}"),
        }
    }

    pub fn square(&self, x: &FieldElement) -> FieldElement {
        self.mul(x, x)
    }

    /// Galois conjugate `u - v*sqrt(a)`; the identity on base fields.
    pub fn conjugate(&self, x: &FieldElement) -> FieldElement {
        match (self, x) {
            (FieldDescriptor::QuadExt(q), FieldElement::Pair(u, v)) => {
                FieldElement::pair((**u).clone(), q.base.neg(v))
            }
            _ => x.clone(),
        }
    }

    /// Norm to the base field of an extension element.
    pub fn norm(&self, x: &FieldElement) -> FieldElement {
        let q = self.as_quad_ext().expect("norm outside extension");
        let (u, v) = x.as_pair().expect("pair");
        let b = &q.base;
        b.sub(&b.square(u), &b.mul(&q.a, &b.square(v)))
    }

    pub fn inv(&self, x: &FieldElement) -> Result<FieldElement> {
        if self.is_zero(x) {
            return Err(Error::ZeroInput);
        }
        Ok(match (self, x) {
            (_, FieldElement::Rational(a)) => FieldElement::Rational(a.recip()),
            (FieldDescriptor::FinitePrime(p), FieldElement::Residue(a)) => {
                FieldElement::Residue(arith::mod_inv(*a, *p))
            }
            (FieldDescriptor::QuadExt(q), FieldElement::Pair(..)) => {
                let n_inv = q.base.inv(&self.norm(x))?;
                let c = self.conjugate(x);
                let (u, v) = c.as_pair().unwrap();
                FieldElement::pair(q.base.mul(u, &n_inv), q.base.mul(v, &n_inv))
            }
            _ => panic!("field element does not match {self}"),
        })
    }

    pub fn div(&self, x: &FieldElement, y: &FieldElement) -> Result<FieldElement> {
        Ok(self.mul(x, &self.inv(y)?))
    }

    /// Whether a nonzero element is a square.
    pub fn is_square(&self, x: &FieldElement) -> Result<bool> {
        if self.is_zero(x) {
            return Err(Error::ZeroInput);
        }
        Ok(self.sqrt(x)?.is_some() || self.is_square_without_root(x))
    }

    fn is_square_without_root(&self, x: &FieldElement) -> bool {
        match (self, x) {
            (FieldDescriptor::Reals, FieldElement::Rational(q)) => q.is_positive(),
            (FieldDescriptor::FinitePrime(p), FieldElement::Residue(r)) => {
                arith::legendre(*r as i64, *p) == 1
            }
            (FieldDescriptor::QuadExt(q), FieldElement::Pair(..)) => match &q.base {
                // Every element of C is a square.
                FieldDescriptor::Reals => true,
                FieldDescriptor::FinitePrime(p) => {
                    // In F_{p^2}, x is a square iff its norm is a square in F_p.
                    match self.norm(x) {
                        FieldElement::Residue(n) => arith::legendre(n as i64, *p) == 1,
                        _ => false,
                    }
                }
                _ => false,
            },
            _ => false,
        }
    }

    /// An exact square root, when one exists and can be written down (not attempted over R, C or F_q).
    pub fn sqrt(&self, x: &FieldElement) -> Result<Option<FieldElement>> {
        match (self, x) {
            (FieldDescriptor::Rationals, FieldElement::Rational(q)) => {
                Ok(arith::rational_sqrt(q).map(FieldElement::Rational))
            }
            (FieldDescriptor::QuadExt(qf), FieldElement::Pair(u, v))
                if qf.base == FieldDescriptor::Rationals =>
            {
                let u = u.as_rational().unwrap();
                let v = v.as_rational().unwrap();
                let a = qf.a.as_rational().unwrap();
                rational_ext_sqrt(u, v, a).map(|o| {
                    o.map(|(p, q)| {
                        FieldElement::pair(FieldElement::Rational(p), FieldElement::Rational(q))
                    })
                })
            }
            _ => Ok(None),
        }
    }

    /// Signs of `x` under the real embeddings of a formally real field.
    pub fn real_signs(&self, x: &FieldElement) -> Vec<Ordering> {
        match (self, x) {
            (FieldDescriptor::Rationals | FieldDescriptor::Reals, FieldElement::Rational(q)) => {
                vec![q.cmp(&BigRational::zero())]
            }
            (FieldDescriptor::QuadExt(qf), FieldElement::Pair(u, v)) if self.is_formally_real() => {
                let u = u.as_rational().unwrap();
                let v = v.as_rational().unwrap();
                let a = qf.a.as_rational().unwrap();
                vec![sign_of_surd(u, v, a), sign_of_surd(u, &-v, a)]
            }
            _ => Vec::new(),
        }
    }

    /// Iterates over all nonzero elements of a finite field.
    pub fn finite_units(&self) -> Option<Vec<FieldElement>> {
        match self {
            FieldDescriptor::FinitePrime(p) => Some((1..*p).map(FieldElement::Residue).collect()),
            FieldDescriptor::QuadExt(q) => {
                let FieldDescriptor::FinitePrime(p) = q.base else {
                    return None;
                };
                let mut out = Vec::new();
                for u in 0..p {
                    for v in 0..p {
                        if u != 0 || v != 0 {
                            out.push(FieldElement::pair(
                                FieldElement::Residue(u),
                                FieldElement::Residue(v),
                            ));
                        }
                    }
                }
                Some(out)
            }
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.finite_units().is_some()
    }

    /// Order of a finite field.
    pub fn order(&self) -> Option<u64> {
        match self {
            FieldDescriptor::FinitePrime(p) => Some(*p),
            FieldDescriptor::QuadExt(q) => match q.base {
                FieldDescriptor::FinitePrime(p) => Some(p * p),
                _ => None,
            },
            _ => None,
        }
    }
}

/// Sign of `u + v*sqrt(a)` for rationals with `a > 0`.
fn sign_of_surd(u: &BigRational, v: &BigRational, a: &BigRational) -> Ordering {
    let zero = BigRational::zero();
    let su = u.cmp(&zero);
    let sv = v.cmp(&zero);
    if sv == Ordering::Equal {
        return su;
    }
    if su == Ordering::Equal || su == sv {
        return sv;
    }
    // Opposite signs: compare u^2 with a v^2.
    match (u * u).cmp(&(a * v * v)) {
        Ordering::Greater => su,
        Ordering::Less => sv,
        Ordering::Equal => Ordering::Equal,
    }
}

/// Square root of `u + v*sqrt(a)` in Q(sqrt(a)), if it exists.
fn rational_ext_sqrt(
    u: &BigRational,
    v: &BigRational,
    a: &BigRational,
) -> Result<Option<(BigRational, BigRational)>> {
    let zero = BigRational::zero();
    if v.is_zero() {
        if let Some(r) = arith::rational_sqrt(u) {
            return Ok(Some((r, zero)));
        }
        return Ok(arith::rational_sqrt(&(u / a)).map(|r| (zero, r)));
    }
    // (p + q sqrt a)^2 = p^2 + a q^2 + 2pq sqrt a, and the norm is a rational square.
    let norm = u * u - a * v * v;
    let Some(n) = arith::rational_sqrt(&norm) else {
        return Ok(None);
    };
    let two = BigRational::from_integer(BigInt::from(2));
    for cand in [(u + &n) / &two, (u - &n) / &two] {
        if cand.is_zero() {
            continue;
        }
        if let Some(p) = arith::rational_sqrt(&cand) {
            let q = v / (&two * &p);
            if &p * &p + a * &q * &q == *u {
                return Ok(Some((p, q)));
            }
        }
    }
    Ok(None)
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldDescriptor::Rationals => write!(f, "Q"),
            FieldDescriptor::Reals => write!(f, "R"),
            FieldDescriptor::FinitePrime(p) => write!(f, "Fp:{p}"),
            FieldDescriptor::QuadExt(q) => write!(f, "{}(sqrt:{})", q.base, q.a),
        }
    }
}

fn fmt_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElement::Rational(q) => write!(f, "{}", fmt_rational(q)),
            FieldElement::Residue(r) => write!(f, "{r}"),
            FieldElement::Pair(u, v) => {
                let u_zero = matches!(&**u, FieldElement::Rational(q) if q.is_zero())
                    || matches!(&**u, FieldElement::Residue(0));
                let v_str = v.to_string();
                let v_zero = v_str == "0";
                let v_neg = v_str.starts_with('-');
                let v_abs = v_str.trim_start_matches('-');
                let v_term = if v_abs == "1" {
                    "sqrt".to_string()
                } else {
                    format!("{v_abs}*sqrt")
                };
                match (u_zero, v_zero) {
                    (_, true) => write!(f, "{u}"),
                    (true, false) => write!(f, "{}{v_term}", if v_neg { "-" } else { "" }),
                    (false, false) => write!(f, "{u}{}{v_term}", if v_neg { "-" } else { "+" }),
                }
            }
        }
    }
}
