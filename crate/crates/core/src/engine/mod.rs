//! Fixed-point data and the Bott residue sum.

pub mod builders;
pub mod problem;

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::euler::{
    euler_rep, euler_ring, generic_euler, Determinacy, GroupKind, Irrep, NIrrep, RepSum,
};
use crate::field::FieldDescriptor;
use crate::quad_ext::QuadExtContext;
use crate::rings::{e_star, CohRing, GradedElement, LocalizedElement};
use crate::witt::{check_same_field, WittClass};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupDescriptor {
    pub kind: GroupKind,
    pub field: FieldDescriptor,
}

impl GroupDescriptor {
    pub fn new(kind: GroupKind, field: FieldDescriptor) -> Result<Self> {
        if kind == GroupKind::SL2n(0) {
            return Err(Error::BadParameters("n must be at least 1".into()));
        }
        Ok(GroupDescriptor { kind, field })
    }

    /// The ring of the classifying space.
    pub fn ring(&self) -> Result<CohRing> {
        euler_ring(self.kind, &self.field)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ResidueKind {
    RationalPoint,
    /// `Spec k(sqrt a)` with the Galois action.
    TwistedPoint(QuadExtContext),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RestrictedClass {
    /// The Euler class of a representation.
    Rep(RepSum),
    /// An explicit element of the component's ring.
    Literal(GradedElement),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedComponent {
    pub id: String,
    pub residue: ResidueKind,
    pub normal: RepSum,
    pub restricted: RestrictedClass,
    /// Character twisting the coefficients; carried through as metadata.
    pub twist: Option<NIrrep>,
}

impl FixedComponent {
    /// An isolated rational fixed point whose restricted class is the Euler class of its normal bundle.
    pub fn self_intersection(id: impl Into<String>, normal: RepSum) -> Self {
        FixedComponent {
            id: id.into(),
            residue: ResidueKind::RationalPoint,
            restricted: RestrictedClass::Rep(normal.clone()),
            normal,
            twist: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalizationProblem {
    pub group: GroupDescriptor,
    pub components: Vec<FixedComponent>,
    /// The integer M of the inverted class `M e` for N; ignored for SL2^n.
    pub multiplier: Option<u64>,
}

#[derive(Clone, Debug)]
pub struct ResidueResult {
    pub value: LocalizedElement,
    pub cleared: Option<GradedElement>,
    pub degree_zero: Option<WittClass>,
    pub determinacy: Determinacy,
    pub notes: Vec<String>,
}

impl fmt::Display for ResidueResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "localized: {}", self.value)?;
        if let Some(c) = &self.cleared {
            writeln!(f, "cleared: {c}")?;
        }
        if let Some(d) = &self.degree_zero {
            writeln!(f, "degree_zero: {d}")?;
        }
        if self.determinacy != Determinacy::Exact {
            writeln!(f, "determinacy: {}", self.determinacy)?;
        }
        for n in &self.notes {
            writeln!(f, "note: {n}")?;
        }
        Ok(())
    }
}

/// Default M for N problems: lcm of the weights of the rank-2 summands of all normal bundles.
fn default_multiplier(p: &LocalizationProblem) -> u64 {
    let mut m = 1;
    for c in &p.components {
        for (irrep, _) in c.normal.summands() {
            if let Irrep::N(NIrrep::Rho(k)) = irrep {
                m = crate::arith::lcm(m, *k as u64);
            }
        }
    }
    m
}

impl LocalizationProblem {
    pub fn multiplier(&self) -> Result<u64> {
        match self.multiplier {
            Some(0) => Err(Error::BadParameters("M must be nonzero".into())),
            Some(m) => Ok(m),
            None => Ok(default_multiplier(self)),
        }
    }

    /// The class inverted on the base: `e_*` for SL2^n and `M e` for N.
    pub fn localizing_element(&self) -> Result<GradedElement> {
        let field = &self.group.field;
        match self.group.kind {
            GroupKind::SL2n(n) => e_star(n, field),
            GroupKind::N => {
                let bn = CohRing::bn(field)?;
                let m = i64::try_from(self.multiplier()?)
                    .map_err(|_| Error::Overflow("multiplier".into()))?;
                bn.monomial(vec![0, 1], WittClass::integer(m, field))
            }
        }
    }
}

fn component_ring(c: &FixedComponent, g: &GroupDescriptor) -> Result<CohRing> {
    match &c.residue {
        ResidueKind::RationalPoint => g.ring(),
        ResidueKind::TwistedPoint(ctx) => {
            if g.kind != GroupKind::N {
                return Err(Error::UnsupportedResidueField(format!(
                    "twisted point {} for {}",
                    ctx.ext(),
                    g.kind
                )));
            }
            if ctx.base() != &g.field {
                return Err(Error::InconsistentField(format!(
                    "component {} over {} in a problem over {}",
                    c.id,
                    ctx.base(),
                    g.field
                )));
            }
            CohRing::twisted(ctx)
        }
    }
}

fn ensure_group(rep: &RepSum, g: &GroupDescriptor, c: &FixedComponent) -> Result<()> {
    if rep.group() != g.kind {
        return Err(Error::BadParameters(format!(
            "component {}: representation of {} in a problem for {}",
            c.id,
            rep.group(),
            g.kind
        )));
    }
    Ok(())
}

/// Residue of one component together with the signs it leaves undetermined.
fn residue_with_signs(
    c: &FixedComponent,
    g: &GroupDescriptor,
    localizing: &GradedElement,
) -> Result<(LocalizedElement, BTreeSet<u32>)> {
    ensure_group(&c.normal, g, c)?;
    let ring = component_ring(c, g)?;
    let field = &g.field;
    if generic_euler(&c.normal, field)?.is_zero() {
        return Err(Error::NonInvertibleNormalEuler(format!(
            "component {}: e({}) vanishes",
            c.id, c.normal
        )));
    }
    let normal = euler_rep(&c.normal, field)?;
    let normal_value = normal.value.clone().ok_or_else(|| {
        Error::UnsupportedIrrep(format!(
            "component {}: e({}) is only known through its square",
            c.id, c.normal
        ))
    })?;
    if g.kind == GroupKind::N {
        check_n_invertible(&normal_value, localizing, c)?;
    }

    let mut inverted = vec![localizing.clone()];
    let mut denominator = vec![0];
    if normal_value.degree().is_some_and(|d| d > 0) {
        if &normal_value == localizing {
            denominator[0] = 1;
        } else {
            inverted.push(normal_value.clone());
            denominator.push(1);
        }
    }

    let (numerator, signs) = match &c.restricted {
        RestrictedClass::Rep(rep) if *rep == c.normal => {
            // Self-intersection of an isolated fixed point.
            return Ok((
                LocalizedElement::new(vec![localizing.clone()], ring.one(), vec![0])?,
                BTreeSet::new(),
            ));
        }
        RestrictedClass::Rep(rep) => {
            ensure_group(rep, g, c)?;
            let e = euler_rep(rep, field)?;
            let value = e.value.ok_or_else(|| {
                Error::UnsupportedIrrep(format!("component {}: e({rep}) is only known through its square", c.id))
            })?;
            let signs: BTreeSet<u32> = e
                .unresolved_signs
                .symmetric_difference(&normal.unresolved_signs)
                .copied()
                .collect();
            (value, signs)
        }
        RestrictedClass::Literal(x) => (x.clone(), normal.unresolved_signs.clone()),
    };
    let numerator = match (&c.residue, numerator.ring() == &ring) {
        (_, true) => numerator,
        (ResidueKind::TwistedPoint(ctx), false) => numerator.pullback_to_twisted(ctx)?,
        (ResidueKind::RationalPoint, false) => {
            return Err(Error::PresentationMismatch(
                numerator.ring().presentation().to_string(),
                ring.presentation().to_string(),
            ))
        }
    };
    Ok((LocalizedElement::new(inverted, numerator, denominator)?, signs))
}

/// `m e` with m a zero divisor of W(k) only becomes a unit when m divides M.
fn check_n_invertible(
    normal: &GradedElement,
    localizing: &GradedElement,
    c: &FixedComponent,
) -> Result<()> {
    let field = normal.ring().field();
    let big_m = localizing.terms().values().next().and_then(WittClass::as_integer).unwrap_or(1);
    for coeff in normal.terms().values() {
        let Some(k) = coeff.as_integer() else { continue };
        if k != 0 && WittClass::is_zero_divisor_int(k, field)? && big_m % k != 0 {
            return Err(Error::NonInvertibleNormalEuler(format!(
                "component {}: coefficient {k} of e({}) is a zero divisor not inverted by M = {big_m}",
                c.id, c.normal
            )));
        }
    }
    Ok(())
}

/// `e(restricted) / e(normal)` over the component's coefficient ring.
pub fn component_residue(
    c: &FixedComponent,
    problem: &LocalizationProblem,
) -> Result<LocalizedElement> {
    Ok(residue_with_signs(c, &problem.group, &problem.localizing_element()?)?.0)
}

/// `pi_*` from a twisted point to BN on plain elements: `c e^m -> c (<2> + <2a> x) e^m`, `y -> 0`.
pub fn push_twisted_element(ctx: &QuadExtContext, x: &GradedElement) -> Result<GradedElement> {
    if x.ring().twisted_context() != Some(ctx) {
        return Err(Error::PresentationMismatch(
            x.ring().presentation().to_string(),
            format!("TwistedPoint({ctx})"),
        ));
    }
    let field = ctx.base();
    let bn = CohRing::bn(field)?;
    let two = WittClass::from_integers(field, &[2])?;
    let two_a = ctx.base_class(&field.mul(&field.from_i64(2), ctx.a()));
    let mut terms = Vec::new();
    for (m, c) in x.terms() {
        if m[0] > 0 {
            continue;
        }
        terms.push((vec![0, m[1]], c.mul(&two)?));
        terms.push((vec![1, m[1]], c.mul(&two_a)?));
    }
    bn.from_terms(terms)
}

/// Pushes a component residue to the base ring.
pub fn push_to_base(x: &LocalizedElement, residue: &ResidueKind) -> Result<LocalizedElement> {
    match residue {
        ResidueKind::RationalPoint => {
            if x.ring().twisted_context().is_some() {
                return Err(Error::UnsupportedResidueField(
                    "element over a twisted point pushed as a rational point".into(),
                ));
            }
            Ok(x.clone())
        }
        ResidueKind::TwistedPoint(ctx) => {
            let pushed = push_twisted_element(ctx, x.numerator())?;
            LocalizedElement::new(x.inverted().to_vec(), pushed, x.denominator().to_vec())
        }
    }
}

/// Sum over components of the pushed-forward residues, with denominators cleared when possible.
pub fn bott_residue(p: &LocalizationProblem) -> Result<ResidueResult> {
    let base = p.group.ring()?;
    let localizing = p.localizing_element()?;
    for c in &p.components {
        if let ResidueKind::TwistedPoint(ctx) = &c.residue {
            check_same_field(ctx.base(), &p.group.field)
                .map_err(|_| Error::InconsistentField(format!("component {}", c.id)))?;
        }
    }
    let mut total = LocalizedElement::new(vec![localizing.clone()], base.zero(), vec![0])?;
    let mut signs = BTreeSet::new();
    for c in &p.components {
        let (r, s) = residue_with_signs(c, &p.group, &localizing)?;
        let pushed = push_to_base(&r, &c.residue)?;
        // A residue that is already polynomial keeps the common denominator small.
        let pushed = match pushed.try_clear()? {
            Some(x) => LocalizedElement::new(vec![localizing.clone()], x, vec![0])?,
            None => pushed,
        };
        total = total.add(&pushed)?;
        signs.extend(s);
    }
    let cleared = total.try_clear()?;
    let degree_zero = cleared.as_ref().and_then(GradedElement::as_scalar);

    let mut notes = Vec::new();
    let field = &p.group.field;
    if p.group.kind == GroupKind::N {
        let m = p.multiplier()?;
        if m % 2 == 0 && !field.is_formally_real() {
            notes.push(format!(
                "M = {m} is even and {field} is not formally real: M may be nilpotent in W({field}), \
                 in which case the localization is zero"
            ));
        }
    }
    if matches!(p.group.kind, GroupKind::SL2n(_)) && field.characteristic() > 0 {
        notes.push(format!("base field {field} has positive characteristic"));
    }
    if p.components.iter().any(|c| c.twist.is_some()) {
        notes.push("twists are recorded but do not change the residues".into());
    }
    let determinacy = if signs.is_empty() { Determinacy::Exact } else { Determinacy::UpToSign };
    Ok(ResidueResult { value: total, cleared, degree_zero, determinacy, notes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::euler::SL2nIrrep;
    use crate::field::FieldElement;

    fn q() -> FieldDescriptor {
        FieldDescriptor::Rationals
    }

    fn n_rep(items: &[(NIrrep, u32)]) -> RepSum {
        RepSum::new(GroupKind::N, items.iter().map(|(r, k)| (Irrep::N(*r), *k)).collect()).unwrap()
    }

    #[test]
    fn n_component_quotient() {
        let g = GroupDescriptor::new(GroupKind::N, q()).unwrap();
        let c = FixedComponent {
            id: "p".into(),
            residue: ResidueKind::RationalPoint,
            normal: n_rep(&[(NIrrep::Rho(1), 1)]),
            restricted: RestrictedClass::Rep(n_rep(&[(NIrrep::Rho(1), 2)])),
            twist: None,
        };
        let p = LocalizationProblem { group: g, components: vec![c.clone()], multiplier: None };
        let r = component_residue(&c, &p).unwrap();
        let bn = CohRing::bn(&q()).unwrap();
        assert_eq!(r.try_clear().unwrap(), Some(bn.gen("e").unwrap()));
        let res = bott_residue(&p).unwrap();
        assert_eq!(res.determinacy, Determinacy::UpToSign);
    }

    #[test]
    fn twisted_pushforward() {
        let ctx = QuadExtContext::new(q(), FieldElement::integer(3)).unwrap();
        let t = CohRing::twisted(&ctx).unwrap();
        let pushed = push_twisted_element(&ctx, &t.one()).unwrap();
        let bn = CohRing::bn(&q()).unwrap();
        assert_eq!(pushed, crate::parse::parse_ring("<2> + <6>*x", &bn).unwrap());
        assert!(push_twisted_element(&ctx, &t.gen("y").unwrap()).unwrap().is_zero());
        let e = push_twisted_element(&ctx, &t.gen("e").unwrap()).unwrap();
        let expect = WittClass::from_integers(&q(), &[2, -6]).unwrap();
        assert_eq!(e, CohRing::bn(&q()).unwrap().monomial(vec![0, 1], expect).unwrap());
    }

    #[test]
    fn empty_locus_is_zero() {
        let g = GroupDescriptor::new(GroupKind::SL2n(2), q()).unwrap();
        let p = LocalizationProblem { group: g, components: vec![], multiplier: None };
        let r = bott_residue(&p).unwrap();
        assert!(r.degree_zero.unwrap().is_canonical_zero());
    }

    #[test]
    fn vanishing_normal_is_rejected() {
        let g = GroupDescriptor::new(GroupKind::SL2n(1), q()).unwrap();
        let triv = SL2nIrrep::from_exponents(vec![0]).unwrap();
        let normal = RepSum::new(GroupKind::SL2n(1), vec![(Irrep::SL2n(triv), 1)]).unwrap();
        let p = LocalizationProblem {
            group: g,
            components: vec![FixedComponent::self_intersection("p", normal)],
            multiplier: None,
        };
        assert!(matches!(bott_residue(&p), Err(Error::NonInvertibleNormalEuler(_))));
    }
}
