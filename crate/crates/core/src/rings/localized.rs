//! Localizations of the presented rings at finitely many homogeneous classes.
//!
//! An element is `numerator / prod_i g_i^{k_i}`. For a twisted point the inverted classes are
//! kept as BN elements so that pushforwards can use the projection formula; they act on the
//! twisted ring through the pullback `x -> <a>`.

use std::fmt;

use super::{coset, CohRing, GradedElement, Monomial, PresentationId};
use crate::error::{Error, Result};
use crate::witt::WittClass;

/// Largest number of extra factors of the inverted product tried when comparing fractions.
const MAX_SHIFT: usize = 4;
/// Step budget for exact long division.
const DIVISION_STEPS: usize = 100_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LocalizedElement {
    ring: CohRing,
    inverted: Vec<GradedElement>,
    numerator: GradedElement,
    denominator: Vec<u32>,
}

/// The ring in which the inverted classes of `ring` live.
fn inverted_ring(ring: &CohRing) -> Result<CohRing> {
    match ring.presentation() {
        PresentationId::TwistedPoint(_) => CohRing::bn(ring.field()),
        _ => Ok(ring.clone()),
    }
}

fn check_inverted(ring: &CohRing, inverted: &[GradedElement]) -> Result<()> {
    let home = inverted_ring(ring)?;
    for g in inverted {
        if g.ring() != &home {
            return Err(Error::PresentationMismatch(
                g.ring().presentation().to_string(),
                home.presentation().to_string(),
            ));
        }
        match g.degree() {
            Some(d) if d > 0 => {}
            _ => return Err(Error::NonHomogeneousDenominator(g.to_string())),
        }
    }
    Ok(())
}

fn substitute_x_minus_one(el: &GradedElement, xi: usize) -> Result<GradedElement> {
    let terms = el
        .terms()
        .iter()
        .map(|(m, c)| {
            if m[xi] == 1 {
                let mut m = m.clone();
                m[xi] = 0;
                (m, c.neg())
            } else {
                (m.clone(), c.clone())
            }
        })
        .collect();
    el.ring().from_terms(terms)
}

/// Applies the relations that hold once the inverted classes are units.
fn simplify(ring: &CohRing, inverted: &[GradedElement], el: &GradedElement) -> Result<GradedElement> {
    if inverted.is_empty() {
        return Ok(el.clone());
    }
    match ring.presentation() {
        PresentationId::Bsl2n(_) | PresentationId::BnTwistedModule => Ok(el.clone()),
        // Every positive-degree class of BN is a multiple of e, so (1+x)e = 0 forces x = -1.
        PresentationId::Bn => substitute_x_minus_one(el, 0),
        PresentationId::Bnn(n) => {
            let n = *n as usize;
            let mut out = el.clone();
            for i in 0..n {
                let kills = inverted
                    .iter()
                    .any(|g| g.terms().keys().all(|m| m[n + i] > 0));
                if kills {
                    out = substitute_x_minus_one(&out, i)?;
                }
            }
            Ok(out)
        }
        // I_a e = 0, so I_a dies once e (a factor of every inverted class) is a unit.
        PresentationId::TwistedPoint(ctx) => {
            let terms = el
                .terms()
                .iter()
                .map(|(m, c)| (m.clone(), coset::canonical_coset(ctx, c)))
                .collect();
            ring.from_terms(terms)
        }
    }
}

impl LocalizedElement {
    /// `numerator / prod g_i^{denominator_i}`.
    pub fn new(
        inverted: Vec<GradedElement>,
        numerator: GradedElement,
        denominator: Vec<u32>,
    ) -> Result<Self> {
        let ring = numerator.ring().clone();
        if ring.is_module() {
            return Err(Error::Unsupported("localization of the twisted module".into()));
        }
        check_inverted(&ring, &inverted)?;
        if denominator.len() != inverted.len() {
            return Err(Error::BadParameters(format!(
                "{} denominator exponents for {} inverted classes",
                denominator.len(),
                inverted.len()
            )));
        }
        let inverted: Vec<GradedElement> =
            inverted.iter().map(|g| simplify(g.ring(), &inverted, g)).collect::<Result<_>>()?;
        let numerator = simplify(&ring, &inverted, &numerator)?;
        Ok(LocalizedElement { ring, inverted, numerator, denominator })
    }

    /// The image of `x` in the localization at `s`.
    pub fn localize(x: &GradedElement, s: &GradedElement) -> Result<Self> {
        Self::new(vec![s.clone()], x.clone(), vec![0])
    }

    /// `1 / s`.
    pub fn inverse_of(s: &GradedElement, ring: &CohRing) -> Result<Self> {
        Self::new(vec![s.clone()], ring.one(), vec![1])
    }

    pub fn ring(&self) -> &CohRing {
        &self.ring
    }

    pub fn inverted(&self) -> &[GradedElement] {
        &self.inverted
    }

    pub fn numerator(&self) -> &GradedElement {
        &self.numerator
    }

    pub fn denominator(&self) -> &[u32] {
        &self.denominator
    }

    /// Inverted classes as elements of the numerator's ring.
    fn acting_inverted(&self) -> Result<Vec<GradedElement>> {
        match self.ring.twisted_context() {
            Some(ctx) => self
                .inverted
                .iter()
                .map(|g| simplify(&self.ring, &self.inverted, &g.pullback_to_twisted(ctx)?))
                .collect(),
            None => Ok(self.inverted.clone()),
        }
    }

    fn power_product(&self, exps: &[u32]) -> Result<GradedElement> {
        let gens = self.acting_inverted()?;
        let mut acc = self.ring.one();
        for (g, &k) in gens.iter().zip(exps) {
            acc = acc.mul(&g.pow(k)?)?;
        }
        simplify(&self.ring, &self.inverted, &acc)
    }

    /// Rewrites `self` over a larger list of inverted classes.
    fn over(&self, inverted: &[GradedElement]) -> Result<Self> {
        let mut denominator = vec![0; inverted.len()];
        for (g, &k) in self.inverted.iter().zip(&self.denominator) {
            let pos = inverted
                .iter()
                .position(|h| h == g)
                .ok_or_else(|| Error::BadParameters(format!("{g} is not inverted")))?;
            denominator[pos] += k;
        }
        Self::new(inverted.to_vec(), self.numerator.clone(), denominator)
    }

    fn common(&self, other: &Self) -> Result<(Self, Self)> {
        if self.ring != other.ring {
            return Err(Error::PresentationMismatch(
                self.ring.presentation().to_string(),
                other.ring.presentation().to_string(),
            ));
        }
        if self.inverted == other.inverted {
            return Ok((self.clone(), other.clone()));
        }
        let mut all = self.inverted.clone();
        for g in &other.inverted {
            if !all.contains(g) {
                all.push(g.clone());
            }
        }
        Ok((self.over(&all)?, other.over(&all)?))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let (a, b) = self.common(other)?;
        let top: Vec<u32> = a.denominator.iter().zip(&b.denominator).map(|(x, y)| *x.max(y)).collect();
        let shift = |v: &Self| -> Result<GradedElement> {
            let exps: Vec<u32> = top.iter().zip(&v.denominator).map(|(t, d)| t - d).collect();
            v.numerator.mul(&v.power_product(&exps)?)
        };
        let numerator = shift(&a)?.add(&shift(&b)?)?;
        Self::new(a.inverted, numerator, top)
    }

    pub fn neg(&self) -> Self {
        LocalizedElement { numerator: self.numerator.neg(), ..self.clone() }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        let (a, b) = self.common(other)?;
        let denominator = a.denominator.iter().zip(&b.denominator).map(|(x, y)| x + y).collect();
        Self::new(a.inverted, a.numerator.mul(&b.numerator)?, denominator)
    }

    /// Degree of the fraction when the numerator is homogeneous and nonzero.
    pub fn degree(&self) -> Option<i64> {
        let top = self.numerator.degree()? as i64;
        let bottom: i64 = self
            .inverted
            .iter()
            .zip(&self.denominator)
            .map(|(g, &k)| g.degree().unwrap_or(0) as i64 * k as i64)
            .sum();
        Some(top - bottom)
    }

    /// Equality in the localization: `(a t - b s) u = 0` for a bounded power `u` of the
    /// product of inverted classes.
    pub fn loc_eq(&self, other: &Self) -> Result<bool> {
        let (a, b) = self.common(other)?;
        let lhs = a.numerator.mul(&b.power_product(&b.denominator)?)?;
        let rhs = b.numerator.mul(&a.power_product(&a.denominator)?)?;
        let mut diff = simplify(&a.ring, &a.inverted, &lhs.sub(&rhs)?)?;
        let all_once = a.power_product(&vec![1; a.inverted.len()])?;
        for _ in 0..=MAX_SHIFT {
            if diff.is_zero() {
                return Ok(true);
            }
            diff = simplify(&a.ring, &a.inverted, &diff.mul(&all_once)?)?;
        }
        Ok(false)
    }

    pub fn is_zero(&self) -> Result<bool> {
        let zero = Self::new(self.inverted.clone(), self.ring.zero(), vec![0; self.inverted.len()])?;
        self.loc_eq(&zero)
    }

    /// The fraction as an element of the unlocalized ring, when the denominator divides the
    /// numerator exactly; the result has the localizing relations already applied.
    pub fn try_clear(&self) -> Result<Option<GradedElement>> {
        let gens = self.acting_inverted()?;
        let mut current = self.numerator.clone();
        for (g, &k) in gens.iter().zip(&self.denominator) {
            for _ in 0..k {
                match exact_quotient(&current, g, |e| simplify(&self.ring, &self.inverted, e))? {
                    Some(q) => current = q,
                    None => return Ok(None),
                }
            }
        }
        Ok(Some(current))
    }
}

/// Some `d` with `d * lead = c`, when one is found.
fn coeff_quotient(c: &WittClass, lead: &WittClass) -> Option<WittClass> {
    let field = lead.field();
    if lead.mul(lead).ok()? == WittClass::one(field) {
        return c.mul(lead).ok();
    }
    if let (Some(a), Some(b)) = (c.as_integer(), lead.as_integer()) {
        if b != 0 && a % b == 0 {
            return Some(WittClass::integer(a / b, field));
        }
    }
    WittClass::enumerate_finite(field)?
        .into_iter()
        .find(|d| d.mul(lead).ok().as_ref() == Some(c))
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

/// Lex long division by a single class; `None` when there is a remainder.
fn exact_quotient(
    f: &GradedElement,
    g: &GradedElement,
    simplify: impl Fn(&GradedElement) -> Result<GradedElement>,
) -> Result<Option<GradedElement>> {
    let ring = f.ring();
    let (lead_m, lead_c) = match g.terms().iter().next_back() {
        Some((m, c)) => (m.clone(), c.clone()),
        None => return Err(Error::BadParameters("division by zero class".into())),
    };
    let mut rest = simplify(f)?;
    let mut quotient = ring.zero();
    for _ in 0..DIVISION_STEPS {
        let Some((m, c)) = rest.terms().iter().next_back() else {
            // Rewriting can move leading terms, so the quotient is confirmed by multiplying back.
            let back = simplify(&quotient.mul(g)?)?;
            return Ok((back == simplify(f)?).then_some(quotient));
        };
        if !divides(&lead_m, m) {
            return Ok(None);
        }
        let shift: Monomial = m.iter().zip(&lead_m).map(|(a, b)| a - b).collect();
        let Some(d) = coeff_quotient(c, &lead_c) else {
            return Ok(None);
        };
        let t = ring.monomial(shift, d)?;
        quotient = quotient.add(&t)?;
        rest = simplify(&rest.sub(&t.mul(g)?)?)?;
    }
    Ok(None)
}

impl fmt::Display for LocalizedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .inverted
            .iter()
            .zip(&self.denominator)
            .filter(|(_, &k)| k > 0)
            .map(|(g, &k)| if k == 1 { format!("({g})") } else { format!("({g})^{k}") })
            .collect();
        if parts.is_empty() {
            return write!(f, "{}", self.numerator);
        }
        write!(f, "({})/{}", self.numerator, parts.join("*"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{FieldDescriptor, FieldElement};
    use crate::quad_ext::QuadExtContext;

    fn q() -> FieldDescriptor {
        FieldDescriptor::Rationals
    }

    #[test]
    fn x_becomes_minus_one() {
        let r = CohRing::bn(&q()).unwrap();
        let x = r.gen("x").unwrap();
        let e = r.gen("e").unwrap();
        let lx = LocalizedElement::localize(&x, &e).unwrap();
        let minus_one = LocalizedElement::localize(&r.integer(-1), &e).unwrap();
        assert!(lx.loc_eq(&minus_one).unwrap());
        let s = LocalizedElement::localize(&r.one().add(&x).unwrap(), &e).unwrap();
        assert!(s.is_zero().unwrap());
    }

    #[test]
    fn inverse_of_generator() {
        let r = CohRing::bsl2n(2, &q()).unwrap();
        let s = super::super::e_star(2, &q()).unwrap();
        let ls = LocalizedElement::localize(&s, &s).unwrap();
        let inv = LocalizedElement::inverse_of(&s, &r).unwrap();
        let prod = ls.mul(&inv).unwrap();
        assert_eq!(prod.try_clear().unwrap(), Some(r.one()));
    }

    #[test]
    fn sums_over_common_denominators() {
        let r = CohRing::bsl2n(2, &q()).unwrap();
        let e1 = r.gen("e1").unwrap();
        let e2 = r.gen("e2").unwrap();
        let a = LocalizedElement::new(vec![e1.clone(), e2.clone()], e2.clone(), vec![1, 1]).unwrap();
        let b = LocalizedElement::new(vec![e1.clone()], r.one(), vec![1]).unwrap();
        assert!(a.loc_eq(&b).unwrap());
        let d = e1.sub(&e2).unwrap();
        // 1/(e1-e2) - 1/(e1-e2) cleared is 0; e1/(e1-e2) - e2/(e1-e2) is 1.
        let u = LocalizedElement::new(vec![d.clone()], e1.clone(), vec![1]).unwrap();
        let v = LocalizedElement::new(vec![d.clone()], e2.clone(), vec![1]).unwrap();
        assert_eq!(u.sub(&v).unwrap().try_clear().unwrap(), Some(r.one()));
        assert_eq!(LocalizedElement::new(vec![d], e1, vec![1]).unwrap().try_clear().unwrap(), None);
    }

    #[test]
    fn twisted_ia_dies() {
        let ctx = QuadExtContext::new(q(), FieldElement::integer(3)).unwrap();
        let r = CohRing::twisted(&ctx).unwrap();
        let e_bn = CohRing::bn(&q()).unwrap().gen("e").unwrap();
        let c = r.scalar(&ctx.trace_of_one()).unwrap();
        assert!(!c.is_zero());
        let l = LocalizedElement::new(vec![e_bn], c, vec![0]).unwrap();
        assert!(l.is_zero().unwrap());
    }

    #[test]
    fn twisted_y_squared_survives() {
        // Over Q(i), y^2 = 2(1 - <-1>) = 4 and 4(1 - <-1>) = 8 is nonzero, so 4 is not in I_a.
        let ctx = QuadExtContext::new(q(), FieldElement::integer(-1)).unwrap();
        let r = CohRing::twisted(&ctx).unwrap();
        let e_bn = CohRing::bn(&q()).unwrap().gen("e").unwrap();
        let y = r.gen("y").unwrap();
        let y2 = LocalizedElement::new(vec![e_bn], y.mul(&y).unwrap(), vec![0]).unwrap();
        assert!(!y2.is_zero().unwrap());
    }

    #[test]
    fn rejects_degree_zero_denominator() {
        let r = CohRing::bn(&q()).unwrap();
        let x = r.gen("x").unwrap();
        assert!(matches!(
            LocalizedElement::localize(&x, &x),
            Err(Error::NonHomogeneousDenominator(_))
        ));
    }
}
