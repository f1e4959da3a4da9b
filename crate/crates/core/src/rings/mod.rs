//! Normal-form arithmetic in the presented graded W(k)-algebras H*(BSL2^n), H*(BN), H*(BN^n),
//! the cohomology of a twisted point, and the twisted module H*(BN, W(gamma)).

pub mod coset;
pub mod localized;

use std::cmp::Reverse;
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::FieldDescriptor;
use crate::quad_ext::QuadExtContext;
use crate::witt::{check_same_field, WittClass};

pub use localized::LocalizedElement;

/// Which presented ring (or module) an element lives in.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PresentationId {
    /// `W(k)[e1, ..., en]`.
    Bsl2n(u32),
    /// `W(k)[x, e]/((1+x)e, x^2-1)`.
    Bn,
    /// Tensor product of n copies of the BN presentation.
    Bnn(u32),
    /// `W(k)[e, x, y]/(x-<a>, y^2-2(<1>-<a>), I_a y, I_a e)`.
    TwistedPoint(QuadExtContext),
    /// `H*(BN, W(gamma))`, free over `W(k)[e]` on `e(T)`, with `x e(T) = -e(T)`.
    BnTwistedModule,
}

impl fmt::Display for PresentationId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PresentationId::Bsl2n(n) => write!(f, "BSL2n({n})"),
            PresentationId::Bn => write!(f, "BN"),
            PresentationId::Bnn(n) => write!(f, "BNn({n})"),
            PresentationId::TwistedPoint(ctx) => write!(f, "TwistedPoint({ctx})"),
            PresentationId::BnTwistedModule => write!(f, "BNTwistedModule"),
        }
    }
}

/// A presentation over a concrete coefficient field.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CohRing {
    presentation: PresentationId,
    field: FieldDescriptor,
}

/// Exponent vector in the presentation's generator layout.
pub type Monomial = Vec<u32>;

/// Unnormalized polynomial: coefficient times a word of (generator, exponent) factors.
#[derive(Clone, Debug, Default)]
pub struct RawPoly {
    pub terms: Vec<(WittClass, Vec<(String, u32)>)>,
}

impl CohRing {
    pub fn new(presentation: PresentationId, field: FieldDescriptor) -> Result<Self> {
        match &presentation {
            PresentationId::Bsl2n(0) | PresentationId::Bnn(0) => {
                return Err(Error::BadParameters("n must be at least 1".into()))
            }
            PresentationId::TwistedPoint(ctx) => check_same_field(ctx.base(), &field)?,
            _ => {}
        }
        if !WittClass::has_decidable_equality(&field) {
            return Err(Error::UnsupportedField(format!(
                "{field}: ring coefficients need a Witt ring with decidable equality"
            )));
        }
        Ok(CohRing { presentation, field })
    }

    pub fn bsl2n(n: u32, field: &FieldDescriptor) -> Result<Self> {
        Self::new(PresentationId::Bsl2n(n), field.clone())
    }

    pub fn bn(field: &FieldDescriptor) -> Result<Self> {
        Self::new(PresentationId::Bn, field.clone())
    }

    pub fn twisted(ctx: &QuadExtContext) -> Result<Self> {
        Self::new(PresentationId::TwistedPoint(ctx.clone()), ctx.base().clone())
    }

    pub fn presentation(&self) -> &PresentationId {
        &self.presentation
    }

    pub fn field(&self) -> &FieldDescriptor {
        &self.field
    }

    pub fn twisted_context(&self) -> Option<&QuadExtContext> {
        match &self.presentation {
            PresentationId::TwistedPoint(ctx) => Some(ctx),
            _ => None,
        }
    }

    pub fn is_module(&self) -> bool {
        self.presentation == PresentationId::BnTwistedModule
    }

    /// Display names of the generators, in exponent-vector order.
    pub fn generator_names(&self) -> Vec<String> {
        match &self.presentation {
            PresentationId::Bsl2n(1) => vec!["e".into()],
            PresentationId::Bsl2n(n) => (1..=*n).map(|i| format!("e{i}")).collect(),
            PresentationId::Bn | PresentationId::Bnn(1) => vec!["x".into(), "e".into()],
            PresentationId::Bnn(n) => (1..=*n)
                .map(|i| format!("x{i}"))
                .chain((1..=*n).map(|i| format!("e{i}")))
                .collect(),
            PresentationId::TwistedPoint(_) => vec!["y".into(), "e".into()],
            PresentationId::BnTwistedModule => vec!["e".into(), "eT".into()],
        }
    }

    pub fn arity(&self) -> usize {
        self.generator_names().len()
    }

    /// Cohomological degree of a monomial.
    pub fn degree_of(&self, m: &[u32]) -> u32 {
        match &self.presentation {
            PresentationId::Bsl2n(_) => 2 * m.iter().sum::<u32>(),
            PresentationId::Bn | PresentationId::TwistedPoint(_) => 2 * m[1],
            PresentationId::Bnn(n) => 2 * m[*n as usize..].iter().sum::<u32>(),
            PresentationId::BnTwistedModule => 2 * (m[0] + m[1]),
        }
    }

    pub fn zero(&self) -> GradedElement {
        GradedElement { ring: self.clone(), terms: BTreeMap::new() }
    }

    fn unit_monomial(&self) -> Monomial {
        vec![0; self.arity()]
    }

    pub fn scalar(&self, c: &WittClass) -> Result<GradedElement> {
        check_same_field(c.field(), &self.field)?;
        if self.is_module() {
            return Err(Error::Unsupported("scalars are not elements of the twisted module".into()));
        }
        self.from_terms(vec![(self.unit_monomial(), c.clone())])
    }

    pub fn one(&self) -> GradedElement {
        self.integer(1)
    }

    pub fn integer(&self, n: i64) -> GradedElement {
        self.scalar(&WittClass::integer(n, &self.field)).unwrap_or_else(|_| self.zero())
    }

    /// The element with a single term.
    pub fn monomial(&self, m: Monomial, c: WittClass) -> Result<GradedElement> {
        if m.len() != self.arity() {
            return Err(Error::BadParameters(format!("monomial {m:?} for {}", self.presentation)));
        }
        check_same_field(c.field(), &self.field)?;
        self.from_terms(vec![(m, c)])
    }

    /// The generator called `name`. In the twisted point `x` is the scalar `<a>`; in the
    /// twisted module `x` and `e` are elements of BN acting on the module.
    pub fn gen(&self, name: &str) -> Result<GradedElement> {
        let unknown = || Error::UnknownGenerator {
            name: name.to_string(),
            context: self.presentation.to_string(),
        };
        let names = self.generator_names();
        let pos = names.iter().position(|g| g == name).or({
            // Single-factor presentations also accept the indexed spelling.
            match (&self.presentation, name) {
                (PresentationId::Bsl2n(1), "e1") => Some(0),
                (PresentationId::Bnn(1), "x1") => Some(0),
                (PresentationId::Bnn(1), "e1") => Some(1),
                _ => None,
            }
        });
        match (&self.presentation, name) {
            (PresentationId::TwistedPoint(ctx), "x") => return self.scalar(&ctx.a_form()),
            (PresentationId::BnTwistedModule, "x" | "e") => return CohRing::bn(&self.field)?.gen(name),
            (PresentationId::BnTwistedModule, "eT") => {
                return self.from_terms(vec![(vec![0, 1], WittClass::one(&self.field))])
            }
            _ => {}
        }
        let pos = pos.ok_or_else(unknown)?;
        let mut m = self.unit_monomial();
        m[pos] = 1;
        self.from_terms(vec![(m, WittClass::one(&self.field))])
    }

    /// Whether a coefficient on `m` is only defined modulo I_a.
    fn coset_slot(&self, m: &[u32]) -> bool {
        matches!(self.presentation, PresentationId::TwistedPoint(_)) && (m[0] > 0 || m[1] > 0)
    }

    fn reduce_coeff(&self, m: &[u32], c: WittClass) -> WittClass {
        match &self.presentation {
            PresentationId::TwistedPoint(ctx) if self.coset_slot(m) => coset::canonical_coset(ctx, &c),
            _ => c,
        }
    }

    /// Rewrites a monomial to normal form, returning the scalar factor produced by the relations.
    fn normal_monomial(&self, mut m: Monomial) -> Result<(WittClass, Monomial)> {
        let mut factor = WittClass::one(&self.field);
        match &self.presentation {
            PresentationId::Bsl2n(_) => {}
            PresentationId::Bn => reduce_bn_factor(&mut m, 0, 1, &mut factor),
            PresentationId::Bnn(n) => {
                let n = *n as usize;
                for i in 0..n {
                    reduce_bn_factor(&mut m, i, n + i, &mut factor);
                }
            }
            PresentationId::TwistedPoint(ctx) => {
                // y^2 = 2(<1> - <a>)
                let pairs = m[0] / 2;
                m[0] %= 2;
                if pairs > 0 {
                    let y2 = ctx.one_minus_a().scale_int(2)?;
                    for _ in 0..pairs {
                        factor = factor.mul(&y2)?;
                    }
                }
            }
            PresentationId::BnTwistedModule => {}
        }
        Ok((factor, m))
    }

    /// Collects terms, rewriting monomials and canonicalizing coefficients.
    pub fn from_terms(&self, terms: Vec<(Monomial, WittClass)>) -> Result<GradedElement> {
        let mut acc: BTreeMap<Monomial, WittClass> = BTreeMap::new();
        for (m, c) in terms {
            let (factor, m) = self.normal_monomial(m)?;
            let c = if factor == WittClass::one(&self.field) { c } else { c.mul(&factor)? };
            let entry = acc.entry(m).or_insert_with(|| WittClass::zero(&self.field));
            *entry = entry.add(&c)?;
        }
        let terms = acc
            .into_iter()
            .map(|(m, c)| {
                let c = self.reduce_coeff(&m, c);
                (m, c)
            })
            .filter(|(_, c)| !c.is_canonical_zero())
            .collect();
        Ok(GradedElement { ring: self.clone(), terms })
    }

    /// Normalizes a formal polynomial in the generators.
    pub fn normalize(&self, raw: &RawPoly) -> Result<GradedElement> {
        let mut acc = self.zero();
        for (c, word) in &raw.terms {
            let mut t = if self.is_module() {
                CohRing::bn(&self.field)?.scalar(c)?
            } else {
                self.scalar(c)?
            };
            for (name, k) in word {
                let g = self.gen(name)?;
                for _ in 0..*k {
                    t = t.mul(&g)?;
                }
            }
            if self.is_module() && !t.ring.is_module() && !t.is_zero() {
                return Err(Error::BadParameters(format!(
                    "term is not a multiple of eT in {}",
                    self.presentation
                )));
            }
            acc = acc.add(&t)?;
        }
        Ok(acc)
    }
}

/// In a BN factor with x at `xi` and e at `ei`: x^2 = 1 and x e = -e.
fn reduce_bn_factor(m: &mut [u32], xi: usize, ei: usize, factor: &mut WittClass) {
    m[xi] %= 2;
    if m[xi] == 1 && m[ei] > 0 {
        m[xi] = 0;
        *factor = factor.neg();
    }
}

/// A normal-form element of a presented ring or module.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GradedElement {
    ring: CohRing,
    terms: BTreeMap<Monomial, WittClass>,
}

impl GradedElement {
    pub fn ring(&self) -> &CohRing {
        &self.ring
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, WittClass> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &[u32]) -> WittClass {
        self.terms
            .get(m)
            .cloned()
            .unwrap_or_else(|| WittClass::zero(self.ring.field()))
    }

    fn check_ring(&self, other: &Self) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::PresentationMismatch(
                format!("{} over {}", self.ring.presentation, self.ring.field),
                format!("{} over {}", other.ring.presentation, other.ring.field),
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.is_zero() && self.ring.field == other.ring.field && self.ring.is_module() != other.ring.is_module() {
            // The zero of BN and the zero of the module are identified when summing.
            return Ok(other.clone());
        }
        if other.is_zero() && self.ring.field == other.ring.field && self.ring.is_module() != other.ring.is_module() {
            return Ok(self.clone());
        }
        self.check_ring(other)?;
        let terms = self
            .terms
            .iter()
            .chain(other.terms.iter())
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        self.ring.from_terms(terms)
    }

    pub fn neg(&self) -> Self {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect();
        self.ring.from_terms(terms).expect("negating a normal form merges no terms")
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &WittClass) -> Result<Self> {
        check_same_field(c.field(), self.ring.field())?;
        let terms = self
            .terms
            .iter()
            .map(|(m, d)| Ok((m.clone(), d.mul(c)?)))
            .collect::<Result<_>>()?;
        self.ring.from_terms(terms)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        match (self.ring.is_module(), other.ring.is_module()) {
            (true, true) => {
                return Err(Error::Unsupported(
                    "products of twisted classes e(T)*e(T) are not part of the presentation".into(),
                ))
            }
            (false, true) => return other.act(self),
            (true, false) => return self.act(other),
            (false, false) => {}
        }
        self.check_ring(other)?;
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let m: Monomial = m1.iter().zip(m2).map(|(a, b)| a + b).collect();
                terms.push((m, c1.mul(c2)?));
            }
        }
        self.ring.from_terms(terms)
    }

    /// Action of a BN element on a twisted-module element: x acts by -1 on e(T).
    fn act(&self, b: &GradedElement) -> Result<Self> {
        if b.ring.presentation != PresentationId::Bn || b.ring.field != self.ring.field {
            return Err(Error::PresentationMismatch(
                b.ring.presentation.to_string(),
                "BN acting on BNTwistedModule".into(),
            ));
        }
        let mut terms = Vec::new();
        for (mb, cb) in &b.terms {
            let c = if mb[0] == 1 { cb.neg() } else { cb.clone() };
            for (mm, cm) in &self.terms {
                terms.push((vec![mm[0] + mb[1], mm[1]], c.mul(cm)?));
            }
        }
        self.ring.from_terms(terms)
    }

    pub fn pow(&self, k: u32) -> Result<Self> {
        let mut acc = self.ring.one();
        for _ in 0..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// The degree when the element is nonzero and homogeneous.
    pub fn degree(&self) -> Option<u32> {
        let mut degrees = self.terms.keys().map(|m| self.ring.degree_of(m));
        let d = degrees.next()?;
        degrees.all(|e| e == d).then_some(d)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.degree().is_some()
    }

    /// The degree-zero constant when the element is a scalar multiple of 1.
    pub fn as_scalar(&self) -> Option<WittClass> {
        let unit = self.ring.unit_monomial();
        match self.terms.len() {
            0 => Some(WittClass::zero(self.ring.field())),
            1 if !self.ring.is_module() => self.terms.get(&unit).cloned(),
            _ => None,
        }
    }

    /// Ordered terms for printing: by degree, then by exponent vector descending.
    pub fn ordered_terms(&self) -> Vec<(&Monomial, &WittClass)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by_key(|(m, _)| (self.ring.degree_of(m), Reverse((*m).clone())));
        v
    }

    /// Pulls a BN element back to a twisted point: e stays e and x becomes `<a>`.
    pub fn pullback_to_twisted(&self, ctx: &QuadExtContext) -> Result<Self> {
        if self.ring.presentation != PresentationId::Bn {
            return Err(Error::PresentationMismatch(self.ring.presentation.to_string(), "BN".into()));
        }
        let target = CohRing::twisted(ctx)?;
        let a = ctx.a_form();
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let c = if m[0] == 1 { c.mul(&a)? } else { c.clone() };
                Ok((vec![0, m[1]], c))
            })
            .collect::<Result<_>>()?;
        target.from_terms(terms)
    }

    /// Reads a twisted-point element without `y` terms as a BN element `sum c_m e^m`.
    pub fn lift_twisted_to_bn(&self) -> Result<Self> {
        if self.ring.twisted_context().is_none() {
            return Err(Error::PresentationMismatch(self.ring.presentation.to_string(), "TwistedPoint".into()));
        }
        let bn = CohRing::bn(self.ring.field())?;
        let mut terms = Vec::new();
        for (m, c) in &self.terms {
            if m[0] != 0 {
                return Err(Error::Unsupported("elements involving y have no preimage in BN".into()));
            }
            terms.push((vec![0, m[1]], c.clone()));
        }
        bn.from_terms(terms)
    }
}

/// `prod_i e_i * prod_{i > j} (e_i - e_j)` in `W(k)[e1, ..., en]`.
pub fn e_star(n: u32, field: &FieldDescriptor) -> Result<GradedElement> {
    let ring = CohRing::bsl2n(n, field)?;
    let e: Vec<GradedElement> = (0..n as usize)
        .map(|i| {
            let mut m = vec![0; n as usize];
            m[i] = 1;
            ring.monomial(m, WittClass::one(field))
        })
        .collect::<Result<_>>()?;
    let mut acc = ring.one();
    for ei in &e {
        acc = acc.mul(ei)?;
    }
    for i in 0..n as usize {
        for j in 0..i {
            acc = acc.mul(&e[i].sub(&e[j])?)?;
        }
    }
    Ok(acc)
}

/// Exterior product of classes on the factors of a product of classifying spaces.
pub fn kunneth(xs: &[GradedElement]) -> Result<GradedElement> {
    let first = xs
        .first()
        .ok_or_else(|| Error::BadParameters("empty Kunneth product".into()))?;
    let field = first.ring.field().clone();
    for x in xs {
        check_same_field(x.ring.field(), &field)?;
    }
    let factor_count = |p: &PresentationId| -> Option<(bool, u32)> {
        match p {
            PresentationId::Bsl2n(n) => Some((false, *n)),
            PresentationId::Bn => Some((true, 1)),
            PresentationId::Bnn(n) => Some((true, *n)),
            _ => None,
        }
    };
    let mut kinds = Vec::new();
    for x in xs {
        let k = factor_count(&x.ring.presentation).ok_or_else(|| {
            Error::PresentationMismatch(x.ring.presentation.to_string(), "BSL2n, BN or BNn".into())
        })?;
        kinds.push(k);
    }
    let is_n = kinds[0].0;
    if kinds.iter().any(|k| k.0 != is_n) {
        return Err(Error::PresentationMismatch(
            "BSL2n factors".into(),
            "BN factors".into(),
        ));
    }
    let total: u32 = kinds.iter().map(|k| k.1).sum();
    let target = if is_n {
        CohRing::new(PresentationId::Bnn(total), field.clone())?
    } else {
        CohRing::bsl2n(total, &field)?
    };
    let mut acc = target.one();
    let mut offset = 0usize;
    for (x, (_, n)) in xs.iter().zip(&kinds) {
        let n = *n as usize;
        let mut terms = Vec::new();
        for (m, c) in &x.terms {
            let mut big = vec![0; target.arity()];
            if is_n {
                for i in 0..n {
                    big[offset + i] = m[i];
                    big[total as usize + offset + i] = m[n + i];
                }
            } else {
                big[offset..offset + n].copy_from_slice(m);
            }
            terms.push((big, c.clone()));
        }
        acc = acc.mul(&target.from_terms(terms)?)?;
        offset += n;
    }
    Ok(acc)
}

/// Orbit types of the torus-fixed part for N-localization.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OrbitType {
    A,
    B,
    CPlus,
    CMinus,
}

/// The integer M with `M e` inverted: lcm of 1 (type a), m (types b, c+) and 2m (type c-).
pub fn n_loc_multiplier(orbits: &[(i64, OrbitType)]) -> Result<u64> {
    let mut acc: u64 = 1;
    for &(m, t) in orbits {
        if m < 1 {
            return Err(Error::NonPositiveExponent);
        }
        let m = m as u64;
        let k = match t {
            OrbitType::A => 1,
            OrbitType::B | OrbitType::CPlus => m,
            OrbitType::CMinus => 2 * m,
        };
        acc = crate::arith::lcm(acc, k);
    }
    Ok(acc)
}

fn format_monomial(names: &[String], m: &[u32]) -> String {
    let parts: Vec<String> = names
        .iter()
        .zip(m)
        .filter(|(_, &k)| k > 0)
        .map(|(g, &k)| if k == 1 { g.clone() } else { format!("{g}^{k}") })
        .collect();
    parts.join("*")
}

impl fmt::Display for GradedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let names = self.ring.generator_names();
        let mut out = String::new();
        for (i, (m, c)) in self.ordered_terms().into_iter().enumerate() {
            let mono = format_monomial(&names, m);
            let (negative, body) = match c.as_integer() {
                Some(k) => {
                    let abs = k.unsigned_abs();
                    let body = match (abs, mono.is_empty()) {
                        (_, true) => abs.to_string(),
                        (1, false) => mono,
                        (_, false) => format!("{abs}*{mono}"),
                    };
                    (k < 0, body)
                }
                None => {
                    let body = if mono.is_empty() { format!("({c})") } else { format!("({c})*{mono}") };
                    (false, body)
                }
            };
            match (i, negative) {
                (0, true) => out.push_str(&format!("-{body}")),
                (0, false) => out.push_str(&body),
                (_, true) => out.push_str(&format!(" - {body}")),
                (_, false) => out.push_str(&format!(" + {body}")),
            }
        }
        write!(f, "{out}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldElement;

    fn q() -> FieldDescriptor {
        FieldDescriptor::Rationals
    }

    #[test]
    fn bn_relations() {
        let r = CohRing::bn(&q()).unwrap();
        let x = r.gen("x").unwrap();
        let e = r.gen("e").unwrap();
        assert!(r.one().add(&x).unwrap().mul(&e).unwrap().is_zero());
        assert_eq!(x.mul(&x).unwrap(), r.one());
        assert_eq!(x.mul(&e).unwrap(), e.neg());
    }

    #[test]
    fn twisted_relations() {
        let ctx = QuadExtContext::new(q(), FieldElement::integer(2)).unwrap();
        let r = CohRing::twisted(&ctx).unwrap();
        let y = r.gen("y").unwrap();
        let e = r.gen("e").unwrap();
        let y2 = y.mul(&y).unwrap();
        assert_eq!(y2, r.scalar(&ctx.one_minus_a().scale_int(2).unwrap()).unwrap());
        assert_eq!(y2.mul(&e).unwrap(), e.scale(&WittClass::integer(4, &q())).unwrap());
        let ia = r.scalar(&ctx.trace_of_one()).unwrap();
        assert!(ia.mul(&e).unwrap().is_zero());
        assert!(ia.mul(&y).unwrap().is_zero());
    }

    #[test]
    fn e_star_small() {
        let e1 = e_star(1, &q()).unwrap();
        assert_eq!(e1.to_string(), "e");
        let e2 = e_star(2, &q()).unwrap();
        assert_eq!(e2.degree(), Some(2 * 2 + 2));
        assert_eq!(e2.to_string(), "-e1^2*e2 + e1*e2^2");
        assert_eq!(e_star(3, &q()).unwrap().degree(), Some(12));
    }

    #[test]
    fn kunneth_products() {
        let r1 = CohRing::bsl2n(1, &q()).unwrap();
        let e = r1.gen("e").unwrap();
        let k = kunneth(&[e.clone(), e.clone()]).unwrap();
        assert_eq!(k.to_string(), "e1*e2");
        let bn = CohRing::bn(&q()).unwrap();
        let x = bn.gen("x").unwrap();
        let kx = kunneth(&[x.clone(), x.clone()]).unwrap();
        assert_eq!(kx.to_string(), "x1*x2");
        assert_eq!(kx.mul(&kx).unwrap(), kunneth(&[bn.one(), bn.one()]).unwrap());
        let z = r1.gen("e").unwrap().pow(3).unwrap();
        assert_eq!(kunneth(&[r1.one(), z]).unwrap().to_string(), "e2^3");
    }

    #[test]
    fn multipliers() {
        assert_eq!(n_loc_multiplier(&[(5, OrbitType::A)]).unwrap(), 1);
        assert_eq!(n_loc_multiplier(&[(4, OrbitType::B)]).unwrap(), 4);
        assert_eq!(n_loc_multiplier(&[(3, OrbitType::CMinus), (4, OrbitType::B)]).unwrap(), 12);
        assert_eq!(n_loc_multiplier(&[(0, OrbitType::B)]), Err(Error::NonPositiveExponent));
    }

    #[test]
    fn twisted_module() {
        let m = CohRing::new(PresentationId::BnTwistedModule, q()).unwrap();
        let et = m.gen("eT").unwrap();
        let x = m.gen("x").unwrap();
        assert_eq!(x.mul(&et).unwrap(), et.neg());
        assert!(matches!(et.mul(&et), Err(Error::Unsupported(_))));
    }
}
