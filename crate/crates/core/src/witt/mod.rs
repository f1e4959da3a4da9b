//! Quadratic forms and canonical Witt classes over the supported fields.

pub mod finite;
pub mod quad_rational;
pub mod rational;

use std::fmt;

use num_traits::Signed;

use crate::arith;
use crate::error::{Error, Result};
use crate::field::{FieldDescriptor, FieldElement};
use finite::FiniteWitt;
use rational::RationalWitt;

/// A diagonal form with nonzero entries.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadraticForm {
    field: FieldDescriptor,
    entries: Vec<FieldElement>,
}

impl QuadraticForm {
    pub fn new(field: FieldDescriptor, entries: Vec<FieldElement>) -> Result<Self> {
        let entries = entries
            .into_iter()
            .map(|e| field.canonical_element(e))
            .collect::<Result<Vec<_>>>()?;
        if let Some(z) = entries.iter().find(|e| field.is_zero(e)) {
            return Err(Error::DegenerateForm(format!("zero entry {z}")));
        }
        Ok(QuadraticForm { field, entries })
    }

    pub fn from_integers(field: FieldDescriptor, entries: &[i64]) -> Result<Self> {
        let entries = entries.iter().map(|&c| field.from_i64(c)).collect();
        Self::new(field, entries)
    }

    pub fn zero(field: FieldDescriptor) -> Self {
        QuadraticForm { field, entries: Vec::new() }
    }

    pub fn field(&self) -> &FieldDescriptor {
        &self.field
    }

    pub fn entries(&self) -> &[FieldElement] {
        &self.entries
    }

    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    pub fn orthogonal_sum(&self, other: &Self) -> Result<Self> {
        check_same_field(&self.field, &other.field)?;
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        Ok(QuadraticForm { field: self.field.clone(), entries })
    }

    pub fn tensor(&self, other: &Self) -> Result<Self> {
        check_same_field(&self.field, &other.field)?;
        let mut entries = Vec::with_capacity(self.rank() * other.rank());
        for a in &self.entries {
            for b in &other.entries {
                entries.push(self.field.mul(a, b));
            }
        }
        Ok(QuadraticForm { field: self.field.clone(), entries })
    }

    pub fn scale(&self, c: &FieldElement) -> Result<Self> {
        let entries = self.entries.iter().map(|e| self.field.mul(e, c)).collect();
        Self::new(self.field.clone(), entries)
    }

    /// Signed discriminant `(-1)^(r(r-1)/2) * det`.
    pub fn signed_discriminant(&self) -> FieldElement {
        let r = self.rank();
        let det = self
            .entries
            .iter()
            .fold(self.field.one(), |acc, e| self.field.mul(&acc, e));
        if (r * r.saturating_sub(1) / 2) % 2 == 1 {
            self.field.neg(&det)
        } else {
            det
        }
    }
}

pub(crate) fn check_same_field(a: &FieldDescriptor, b: &FieldDescriptor) -> Result<()> {
    if a != b {
        return Err(Error::FieldMismatch(a.to_string(), b.to_string()));
    }
    Ok(())
}

/// Diagonalizes a symmetric nondegenerate Gram matrix by symmetric elimination.
pub fn diagonalize(gram: &[Vec<FieldElement>], field: &FieldDescriptor) -> Result<QuadraticForm> {
    let n = gram.len();
    let mut m: Vec<Vec<FieldElement>> = Vec::with_capacity(n);
    for row in gram {
        if row.len() != n {
            return Err(Error::DegenerateForm("Gram matrix is not square".into()));
        }
        m.push(
            row.iter()
                .map(|x| field.canonical_element(x.clone()))
                .collect::<Result<Vec<_>>>()?,
        );
    }
    for i in 0..n {
        for j in 0..i {
            if m[i][j] != m[j][i] {
                return Err(Error::NonSymmetric);
            }
        }
    }
    let mut diag = Vec::with_capacity(n);
    for k in 0..n {
        if field.is_zero(&m[k][k]) {
            if let Some(i) = (k + 1..n).find(|&i| !field.is_zero(&m[i][i])) {
                m.swap(k, i);
                for row in m.iter_mut() {
                    row.swap(k, i);
                }
            } else if let Some(j) = (k + 1..n).find(|&j| !field.is_zero(&m[k][j])) {
                // Replace basis vector b_k by b_k + b_j; the new diagonal entry is 2 m[k][j] != 0.
                for c in 0..n {
                    let v = field.add(&m[k][c], &m[j][c]);
                    m[k][c] = v;
                }
                for r in 0..n {
                    let v = field.add(&m[r][k], &m[r][j]);
                    m[r][k] = v;
                }
            } else {
                return Err(Error::DegenerateForm("Gram matrix is singular".into()));
            }
        }
        let pivot = m[k][k].clone();
        if field.is_zero(&pivot) {
            return Err(Error::DegenerateForm("Gram matrix is singular".into()));
        }
        let inv = field.inv(&pivot)?;
        for i in k + 1..n {
            let factor = field.mul(&m[i][k], &inv);
            if field.is_zero(&factor) {
                continue;
            }
            for j in k..n {
                let v = field.sub(&m[i][j], &field.mul(&factor, &m[k][j]));
                m[i][j] = v;
            }
            for r in k..n {
                let v = field.sub(&m[r][i], &field.mul(&factor, &m[r][k]));
                m[r][i] = v;
            }
        }
        diag.push(pivot);
    }
    QuadraticForm::new(field.clone(), diag)
}

/// The trace form `(x, y) -> Tr(c x y)` of `c` in a quadratic extension, on the basis `{1, sqrt(a)}`.
pub fn trace_form(ext: &FieldDescriptor, c: &FieldElement) -> Result<QuadraticForm> {
    let q = ext
        .as_quad_ext()
        .ok_or_else(|| Error::UnsupportedField(format!("{ext} is not a quadratic extension")))?;
    let b = &q.base;
    let (u, v) = c.as_pair().ok_or(Error::NonCanonicalInput)?;
    let two = b.from_i64(2);
    let g00 = b.mul(&two, u);
    let g01 = b.mul(&two, &b.mul(v, &q.a));
    let g11 = b.mul(&two, &b.mul(u, &q.a));
    diagonalize(&[vec![g00, g01.clone()], vec![g01, g11]], b)
}

/// Field-specific canonical data of a Witt class.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Invariants {
    Real { signature: i64 },
    Finite(FiniteWitt),
    Rational(RationalWitt),
    /// W(C) = Z/2.
    Complex { odd_rank: bool },
    /// Reduced diagonal representative over Q(sqrt(a)).
    QuadRational(Vec<FieldElement>),
}

/// An element of W(k) in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WittClass {
    field: FieldDescriptor,
    inv: Invariants,
}

enum Kind {
    Real,
    Finite,
    Rational,
    Complex,
    QuadRational,
}

fn kind(field: &FieldDescriptor) -> Kind {
    match field {
        FieldDescriptor::Rationals => Kind::Rational,
        FieldDescriptor::Reals => Kind::Real,
        FieldDescriptor::FinitePrime(_) => Kind::Finite,
        FieldDescriptor::QuadExt(q) => match q.base {
            FieldDescriptor::Rationals => Kind::QuadRational,
            FieldDescriptor::Reals => Kind::Complex,
            FieldDescriptor::FinitePrime(_) => Kind::Finite,
            FieldDescriptor::QuadExt(_) => unreachable!("nesting rejected at construction"),
        },
    }
}

impl WittClass {
    pub fn zero(field: &FieldDescriptor) -> Self {
        let inv = match kind(field) {
            Kind::Real => Invariants::Real { signature: 0 },
            Kind::Finite => Invariants::Finite(FiniteWitt::ZERO),
            Kind::Rational => Invariants::Rational(RationalWitt::default()),
            Kind::Complex => Invariants::Complex { odd_rank: false },
            Kind::QuadRational => Invariants::QuadRational(Vec::new()),
        };
        WittClass { field: field.clone(), inv }
    }

    pub fn one(field: &FieldDescriptor) -> Self {
        Self::integer(1, field)
    }

    /// Canonical class of a diagonal form.
    pub fn from_form(form: &QuadraticForm) -> Result<Self> {
        let field = form.field();
        let inv = match kind(field) {
            Kind::Real => Invariants::Real {
                signature: form
                    .entries()
                    .iter()
                    .map(|e| if e.as_rational().unwrap().is_positive() { 1 } else { -1 })
                    .sum(),
            },
            Kind::Finite => {
                let m1 = finite::minus_one_is_square(field);
                let mut acc = FiniteWitt::ZERO;
                for e in form.entries() {
                    acc = acc.add(FiniteWitt::rank_one(field.is_square(e)?), m1);
                }
                Invariants::Finite(acc)
            }
            Kind::Rational => {
                let mut acc = RationalWitt::default();
                for e in form.entries() {
                    let c = arith::rational_square_class(e.as_rational().unwrap())?;
                    acc = acc.add(&RationalWitt::rank_one(c));
                }
                Invariants::Rational(acc)
            }
            Kind::Complex => Invariants::Complex { odd_rank: form.rank() % 2 == 1 },
            Kind::QuadRational => {
                Invariants::QuadRational(quad_rational::reduce(field, form.entries())?)
            }
        };
        Ok(WittClass { field: field.clone(), inv })
    }

    /// Class of the rank-one form `<c>`.
    pub fn rank_one(field: &FieldDescriptor, c: FieldElement) -> Result<Self> {
        Self::from_form(&QuadraticForm::new(field.clone(), vec![c])?)
    }

    pub fn from_integers(field: &FieldDescriptor, entries: &[i64]) -> Result<Self> {
        Self::from_form(&QuadraticForm::from_integers(field.clone(), entries)?)
    }

    /// `n * <1>`.
    pub fn integer(n: i64, field: &FieldDescriptor) -> Self {
        let inv = match kind(field) {
            Kind::Real => Invariants::Real { signature: n },
            Kind::Rational => Invariants::Rational(RationalWitt::integer(n)),
            Kind::Complex => Invariants::Complex { odd_rank: n % 2 != 0 },
            Kind::Finite => {
                let m1 = finite::minus_one_is_square(field);
                let mut acc = FiniteWitt::ZERO;
                // <1> has additive order dividing 4.
                for _ in 0..n.rem_euclid(4) {
                    acc = acc.add(FiniteWitt::ONE, m1);
                }
                Invariants::Finite(acc)
            }
            Kind::QuadRational => {
                // Double and add, so that the form never has more than a few entries.
                let one = vec![field.from_i64(n.signum())];
                let mut unit = quad_rational::reduce(field, &one).expect("units are nonzero");
                let mut acc: Vec<FieldElement> = Vec::new();
                let mut k = n.unsigned_abs();
                while k > 0 {
                    if k & 1 == 1 {
                        acc.extend(unit.iter().cloned());
                        acc = quad_rational::reduce(field, &acc).expect("units are nonzero");
                    }
                    let doubled: Vec<FieldElement> = unit.iter().chain(unit.iter()).cloned().collect();
                    unit = quad_rational::reduce(field, &doubled).expect("units are nonzero");
                    k >>= 1;
                }
                Invariants::QuadRational(acc)
            }
        };
        WittClass { field: field.clone(), inv }
    }

    pub fn field(&self) -> &FieldDescriptor {
        &self.field
    }

    pub fn invariants(&self) -> &Invariants {
        &self.inv
    }

    /// Whether the canonical data is that of the zero class. Exact for every field except
    /// Q(sqrt(a)), where it only detects the empty reduced representative.
    pub fn is_canonical_zero(&self) -> bool {
        match &self.inv {
            Invariants::Real { signature } => *signature == 0,
            Invariants::Finite(f) => f.is_zero(),
            Invariants::Rational(r) => r.is_zero(),
            Invariants::Complex { odd_rank } => !odd_rank,
            Invariants::QuadRational(v) => v.is_empty(),
        }
    }

    /// Whether equality in this Witt ring is decided by comparing canonical data.
    pub fn has_decidable_equality(field: &FieldDescriptor) -> bool {
        !matches!(kind(field), Kind::QuadRational)
    }

    /// Decides whether the class is zero. Over Q(sqrt(a)) this may return `Undecided`.
    pub fn is_zero(&self) -> Result<bool> {
        match &self.inv {
            Invariants::QuadRational(entries) => quad_rational::decide_zero(&self.field, entries),
            _ => Ok(self.is_canonical_zero()),
        }
    }

    /// Decides equality of classes, including the conservative Q(sqrt(a)) case.
    pub fn witt_eq(&self, other: &Self) -> Result<bool> {
        check_same_field(&self.field, &other.field)?;
        if self == other {
            return Ok(true);
        }
        self.sub(other)?.is_zero()
    }

    /// A diagonal representative: canonical for every field except Q(sqrt(a)), where the
    /// stored reduced representative is returned.
    pub fn representative(&self) -> QuadraticForm {
        let entries = self
            .grouped_representative()
            .into_iter()
            .flat_map(|(c, k)| std::iter::repeat_n(c, k as usize))
            .collect();
        QuadraticForm { field: self.field.clone(), entries }
    }

    /// The representative as runs of equal entries, without expanding long runs.
    pub fn grouped_representative(&self) -> Vec<(FieldElement, u64)> {
        let field = &self.field;
        match &self.inv {
            Invariants::Real { signature: 0 } => Vec::new(),
            Invariants::Real { signature } => {
                vec![(field.from_i64(signature.signum()), signature.unsigned_abs())]
            }
            Invariants::Rational(r) => r
                .representative_grouped()
                .into_iter()
                .map(|(c, k)| (field.from_i64(c), k))
                .collect(),
            Invariants::Finite(f) => group_runs(f.representative(field)),
            Invariants::Complex { odd_rank } => {
                if *odd_rank {
                    vec![(field.one(), 1)]
                } else {
                    Vec::new()
                }
            }
            Invariants::QuadRational(v) => group_runs(v.clone()),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        check_same_field(&self.field, &other.field)?;
        let inv = match (&self.inv, &other.inv) {
            (Invariants::Real { signature: a }, Invariants::Real { signature: b }) => {
                Invariants::Real { signature: checked_signature(a.checked_add(*b))? }
            }
            (Invariants::Finite(a), Invariants::Finite(b)) => {
                Invariants::Finite(a.add(*b, finite::minus_one_is_square(&self.field)))
            }
            (Invariants::Rational(a), Invariants::Rational(b)) => Invariants::Rational(a.checked_add(b)?),
            (Invariants::Complex { odd_rank: a }, Invariants::Complex { odd_rank: b }) => {
                Invariants::Complex { odd_rank: a != b }
            }
            (Invariants::QuadRational(a), Invariants::QuadRational(b)) => {
                let mut entries = a.clone();
                entries.extend(b.iter().cloned());
                Invariants::QuadRational(quad_rational::reduce(&self.field, &entries)?)
            }
            _ => unreachable!("same field implies same invariant kind"),
        };
        Ok(WittClass { field: self.field.clone(), inv })
    }

    pub fn neg(&self) -> Self {
        match &self.inv {
            Invariants::Real { signature } => {
                return WittClass { field: self.field.clone(), inv: Invariants::Real { signature: -signature } }
            }
            Invariants::Rational(r) => {
                return WittClass { field: self.field.clone(), inv: Invariants::Rational(r.neg()) }
            }
            _ => {}
        }
        let minus_one = self.field.from_i64(-1);
        let form = self.representative().scale(&minus_one).expect("units stay nonzero");
        Self::from_form(&form).expect("negation of a canonical form")
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        check_same_field(&self.field, &other.field)?;
        match (&self.inv, &other.inv) {
            (Invariants::Rational(a), Invariants::Rational(b)) => {
                let inv = rational::product_invariants(&a.representative_grouped(), &b.representative_grouped())?;
                return Ok(WittClass { field: self.field.clone(), inv: Invariants::Rational(inv) });
            }
            (Invariants::Real { signature: a }, Invariants::Real { signature: b }) => {
                let signature = checked_signature(a.checked_mul(*b))?;
                return Ok(WittClass { field: self.field.clone(), inv: Invariants::Real { signature } });
            }
            _ => {}
        }
        Self::from_form(&self.representative().tensor(&other.representative())?)
    }

    pub fn scale_int(&self, n: i64) -> Result<Self> {
        self.mul(&Self::integer(n, &self.field))
    }

    /// Multiplication by the nonzero integer `n` has a nontrivial kernel on W(field).
    pub fn is_zero_divisor_int(n: i64, field: &FieldDescriptor) -> Result<bool> {
        if n == 0 {
            return Err(Error::ZeroInput);
        }
        if n % 2 != 0 {
            return Ok(false);
        }
        // Torsion in W(k) is 2-primary; it vanishes only for W(R) = Z.
        Ok(!matches!(field, FieldDescriptor::Reals))
    }

    /// Whether some power of the class is zero.
    pub fn is_nilpotent(&self) -> Result<bool> {
        Ok(match &self.inv {
            Invariants::Real { signature } => *signature == 0,
            Invariants::Rational(r) => r.signature == 0,
            Invariants::Finite(f) => !f.odd_rank,
            Invariants::Complex { odd_rank } => !odd_rank,
            Invariants::QuadRational(entries) => {
                // The nilradical is the kernel of all signatures; without orderings it is
                // the fundamental ideal.
                entries.len() % 2 == 0
                    && quad_rational::signatures(&self.field, entries).iter().all(|&s| s == 0)
            }
        })
    }

    /// Whether the class is a unit of W(k). Rank-one classes are units; for decidable
    /// fields these are exactly the classes with a rank-one canonical representative.
    pub fn is_unit(&self) -> bool {
        match &self.inv {
            Invariants::Real { signature } => signature.abs() == 1,
            Invariants::Complex { odd_rank } => *odd_rank,
            Invariants::Finite(f) => f.odd_rank,
            _ => self.representative().rank() == 1,
        }
    }

    /// All elements of W(k) for a finite field k, zero first.
    pub fn enumerate_finite(field: &FieldDescriptor) -> Option<Vec<WittClass>> {
        if !matches!(kind(field), Kind::Finite) {
            return None;
        }
        Some(
            FiniteWitt::all()
                .into_iter()
                .map(|f| WittClass { field: field.clone(), inv: Invariants::Finite(f) })
                .collect(),
        )
    }

    /// Small integers standing for the class when it is `n * <1>`.
    pub fn as_integer(&self) -> Option<i64> {
        match &self.inv {
            Invariants::Real { signature } => Some(*signature),
            Invariants::Rational(r) if r.residues.is_empty() && !r.dyadic => Some(r.signature),
            _ => {
                let one = self.field.one();
                let mut rank: i64 = 0;
                for (c, k) in self.grouped_representative() {
                    if c != one {
                        return None;
                    }
                    rank = rank.checked_add(i64::try_from(k).ok()?)?;
                }
                Some(rank)
            }
        }
    }
}

impl fmt::Display for WittClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let runs = self.grouped_representative();
        if runs.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = runs
            .iter()
            .map(|(c, k)| if *k == 1 { format!("<{c}>") } else { format!("{k}<{c}>") })
            .collect();
        write!(f, "{}", parts.join("+"))
    }
}

fn group_runs(entries: Vec<FieldElement>) -> Vec<(FieldElement, u64)> {
    let mut runs: Vec<(FieldElement, u64)> = Vec::new();
    for c in entries {
        match runs.last_mut() {
            Some((d, k)) if *d == c => *k += 1,
            _ => runs.push((c, 1)),
        }
    }
    runs
}

/// Signatures stay in `-i64::MAX..=i64::MAX` so negation cannot overflow.
pub(crate) fn checked_signature(s: Option<i64>) -> Result<i64> {
    s.filter(|&s| s != i64::MIN).ok_or_else(|| Error::Overflow("signature".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldDescriptor {
        FieldDescriptor::Rationals
    }

    #[test]
    fn diagonalize_examples() {
        let i = |n| FieldElement::integer(n);
        let id = diagonalize(&[vec![i(1), i(0)], vec![i(0), i(1)]], &q()).unwrap();
        assert_eq!(id.entries(), &[i(1), i(1)]);
        let hyp = diagonalize(&[vec![i(0), i(1)], vec![i(1), i(0)]], &q()).unwrap();
        assert!(WittClass::from_form(&hyp).unwrap().is_canonical_zero());
        let tr = diagonalize(&[vec![i(2), i(0)], vec![i(0), i(6)]], &q()).unwrap();
        assert_eq!(tr.entries(), &[i(2), i(6)]);
        assert_eq!(
            diagonalize(&[vec![i(1), i(2)], vec![i(3), i(1)]], &q()),
            Err(Error::NonSymmetric)
        );
        assert!(matches!(
            diagonalize(&[vec![i(1), i(1)], vec![i(1), i(1)]], &q()),
            Err(Error::DegenerateForm(_))
        ));
    }

    #[test]
    fn basic_classes() {
        let f3 = FieldDescriptor::finite(3).unwrap();
        assert!(WittClass::from_integers(&q(), &[1, -1]).unwrap().is_canonical_zero());
        assert!(WittClass::from_integers(&f3, &[1, 1, 1, 1]).unwrap().is_canonical_zero());
        let two = WittClass::from_integers(&f3, &[1, 1]).unwrap();
        assert!(!two.is_canonical_zero());
        assert_eq!(two.to_string(), "2<1>");
        assert!(WittClass::integer(4, &f3).is_canonical_zero());
        let r = WittClass::from_integers(&FieldDescriptor::Reals, &[1, 1]).unwrap();
        assert_eq!(r, WittClass::integer(2, &FieldDescriptor::Reals));
        let t = WittClass::from_integers(&q(), &[2, 2]).unwrap();
        let two_sq = WittClass::from_integers(&q(), &[2]).unwrap();
        assert_eq!(two_sq.mul(&two_sq).unwrap(), WittClass::one(&q()));
        // <2,2> = <1,1> since 2 is a sum of two squares.
        assert_eq!(t.to_string(), "2<1>");
        assert_eq!(WittClass::from_integers(&q(), &[2, 6]).unwrap().to_string(), "<2>+<6>");
    }

    #[test]
    fn zero_divisors() {
        let f3 = FieldDescriptor::finite(3).unwrap();
        assert!(!WittClass::is_zero_divisor_int(3, &q()).unwrap());
        assert!(!WittClass::is_zero_divisor_int(2, &FieldDescriptor::Reals).unwrap());
        assert!(WittClass::is_zero_divisor_int(2, &f3).unwrap());
        assert_eq!(WittClass::is_zero_divisor_int(0, &q()), Err(Error::ZeroInput));
    }
}
