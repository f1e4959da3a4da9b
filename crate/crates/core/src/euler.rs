//! Euler classes of representations of SL2^n and of N, valued in H*(BSL2^n) and H*(BN).

use std::collections::BTreeSet;
use std::fmt;

use crate::arith;
use crate::error::{Error, Result};
use crate::field::FieldDescriptor;
use crate::rings::{CohRing, GradedElement};
use crate::witt::WittClass;

/// Which group the representation is of.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupKind {
    SL2n(u32),
    N,
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupKind::SL2n(n) => write!(f, "SL2^{n}"),
            GroupKind::N => write!(f, "N"),
        }
    }
}

/// `Sym^{m_1}(F_1) (x) ... (x) Sym^{m_n}(F_n)`.
///
/// `lead` records which factor was written first; it only matters for `F_i (x) F_j`,
/// whose Euler class `e_i^2 - e_j^2` changes sign with the order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SL2nIrrep {
    exponents: Vec<u32>,
    lead: usize,
}

impl SL2nIrrep {
    pub fn from_exponents(exponents: Vec<u32>) -> Result<Self> {
        if exponents.is_empty() {
            return Err(Error::BadParameters("SL2^n irrep needs n >= 1".into()));
        }
        let lead = exponents.iter().position(|&m| m > 0).unwrap_or(0);
        Ok(SL2nIrrep { exponents, lead })
    }

    /// `Sym^m(F_i)` on factor `i` (1-based) of SL2^n.
    pub fn sym(m: u32, i: usize, n: u32) -> Result<Self> {
        if i == 0 || i > n as usize {
            return Err(Error::BadParameters(format!("factor {i} outside 1..={n}")));
        }
        let mut exponents = vec![0; n as usize];
        exponents[i - 1] = m;
        Self::from_exponents(exponents)
    }

    /// `F_i (x) F_j`, ordered.
    pub fn tensor_pair(i: usize, j: usize, n: u32) -> Result<Self> {
        if i == j || i == 0 || j == 0 || i.max(j) > n as usize {
            return Err(Error::BadParameters(format!("tensor pair ({i},{j}) for n = {n}")));
        }
        let mut exponents = vec![0; n as usize];
        exponents[i - 1] = 1;
        exponents[j - 1] = 1;
        Ok(SL2nIrrep { exponents, lead: i - 1 })
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn n(&self) -> u32 {
        self.exponents.len() as u32
    }

    pub fn rank(&self) -> u64 {
        self.exponents.iter().map(|&m| m as u64 + 1).product()
    }

    fn nonzero(&self) -> Vec<usize> {
        (0..self.exponents.len()).filter(|&i| self.exponents[i] > 0).collect()
    }
}

impl fmt::Display for SL2nIrrep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let nz = self.nonzero();
        match nz.as_slice() {
            [] => write!(f, "1"),
            [i] if self.exponents[*i] == 1 => write!(f, "F@{}", i + 1),
            [i] => write!(f, "Sym({})@{}", self.exponents[*i], i + 1),
            [i, j] if self.exponents[*i] == 1 && self.exponents[*j] == 1 => {
                let (a, b) = if self.lead == *i { (*i, *j) } else { (*j, *i) };
                write!(f, "F@{}*F@{}", a + 1, b + 1)
            }
            _ => {
                let parts: Vec<String> = self.exponents.iter().map(u32::to_string).collect();
                write!(f, "Sym({})", parts.join(","))
            }
        }
    }
}

/// Irreducible representations of N used here.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NIrrep {
    /// Rank 2, torus weights `m` and `-m`.
    Rho(u32),
    Rho0,
    Rho0Minus,
}

impl NIrrep {
    pub fn rho(m: i64) -> Result<Self> {
        if m < 1 {
            return Err(Error::NonPositiveExponent);
        }
        let m = u32::try_from(m).map_err(|_| Error::Overflow(format!("rho({m})")))?;
        Ok(NIrrep::Rho(m))
    }

    pub fn rank(&self) -> u64 {
        match self {
            NIrrep::Rho(_) => 2,
            NIrrep::Rho0 | NIrrep::Rho0Minus => 1,
        }
    }
}

impl fmt::Display for NIrrep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NIrrep::Rho(m) => write!(f, "rho({m})"),
            NIrrep::Rho0 => write!(f, "rho0"),
            NIrrep::Rho0Minus => write!(f, "rho0-"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Irrep {
    SL2n(SL2nIrrep),
    N(NIrrep),
}

impl Irrep {
    pub fn rank(&self) -> u64 {
        match self {
            Irrep::SL2n(r) => r.rank(),
            Irrep::N(r) => r.rank(),
        }
    }
}

impl fmt::Display for Irrep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Irrep::SL2n(r) => r.fmt(f),
            Irrep::N(r) => r.fmt(f),
        }
    }
}

/// A direct sum of irreducibles with positive multiplicities.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RepSum {
    group: GroupKind,
    summands: Vec<(Irrep, u32)>,
}

impl RepSum {
    pub fn new(group: GroupKind, summands: Vec<(Irrep, u32)>) -> Result<Self> {
        for (irrep, mult) in &summands {
            if *mult == 0 {
                return Err(Error::BadParameters(format!("multiplicity 0 for {irrep}")));
            }
            let fits = match (group, irrep) {
                (GroupKind::SL2n(n), Irrep::SL2n(r)) => r.n() == n,
                (GroupKind::N, Irrep::N(_)) => true,
                _ => false,
            };
            if !fits {
                return Err(Error::BadParameters(format!("{irrep} is not a representation of {group}")));
            }
        }
        Ok(RepSum { group, summands })
    }

    pub fn zero(group: GroupKind) -> Self {
        RepSum { group, summands: Vec::new() }
    }

    pub fn group(&self) -> GroupKind {
        self.group
    }

    pub fn summands(&self) -> &[(Irrep, u32)] {
        &self.summands
    }

    pub fn rank(&self) -> u64 {
        self.summands.iter().map(|(r, k)| r.rank() * *k as u64).sum()
    }

    pub fn concat(&self, other: &Self) -> Result<Self> {
        if self.group != other.group {
            return Err(Error::BadParameters(format!("{} vs {}", self.group, other.group)));
        }
        let mut summands = self.summands.clone();
        summands.extend(other.summands.iter().cloned());
        Ok(RepSum { group: self.group, summands })
    }
}

impl fmt::Display for RepSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.summands.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .summands
            .iter()
            .map(|(r, k)| if *k == 1 { r.to_string() } else { format!("{k}*{r}") })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// How much of an Euler class is known.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Determinacy {
    Exact,
    UpToSign,
    SquareOnly,
}

impl fmt::Display for Determinacy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Determinacy::Exact => "exact",
            Determinacy::UpToSign => "up_to_sign",
            Determinacy::SquareOnly => "square_only",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EulerClassValue {
    /// Absent when only the square is known.
    pub value: Option<GradedElement>,
    pub determinacy: Determinacy,
    pub known_square: GradedElement,
    /// The `m` for which an odd number of factors `e(rho(m))` of unknown sign occur.
    pub unresolved_signs: BTreeSet<u32>,
}

impl EulerClassValue {
    fn exact(value: GradedElement) -> Result<Self> {
        let known_square = value.mul(&value)?;
        Ok(EulerClassValue {
            value: Some(value),
            determinacy: Determinacy::Exact,
            known_square,
            unresolved_signs: BTreeSet::new(),
        })
    }

    fn mul(&self, other: &Self) -> Result<Self> {
        let value = match (&self.value, &other.value) {
            (Some(a), Some(b)) => Some(a.mul(b)?),
            _ => None,
        };
        let unresolved_signs: BTreeSet<u32> = self
            .unresolved_signs
            .symmetric_difference(&other.unresolved_signs)
            .copied()
            .collect();
        let determinacy = if value.is_none() {
            Determinacy::SquareOnly
        } else if unresolved_signs.is_empty() {
            Determinacy::Exact
        } else {
            Determinacy::UpToSign
        };
        Ok(EulerClassValue {
            value,
            determinacy,
            known_square: self.known_square.mul(&other.known_square)?,
            unresolved_signs,
        })
    }
}

/// The ring holding Euler classes of `group` over `field`.
pub fn euler_ring(group: GroupKind, field: &FieldDescriptor) -> Result<CohRing> {
    match group {
        GroupKind::SL2n(n) => CohRing::bsl2n(n, field),
        GroupKind::N => CohRing::bn(field),
    }
}

fn e_power(ring: &CohRing, i: usize, k: u32, coeff: i64) -> Result<GradedElement> {
    let mut m = vec![0; ring.arity()];
    m[i] = k;
    ring.monomial(m, WittClass::integer(coeff, ring.field()))
}

pub fn euler_sl2n_irrep(irrep: &SL2nIrrep, field: &FieldDescriptor) -> Result<EulerClassValue> {
    let ring = CohRing::bsl2n(irrep.n(), field)?;
    let m = irrep.exponents();
    if m.iter().all(|k| k % 2 == 0) {
        return EulerClassValue::exact(ring.zero());
    }
    match *irrep.nonzero().as_slice() {
        [i] => {
            let k = m[i];
            EulerClassValue::exact(e_power(&ring, i, k + 1, arith::double_factorial(k)?)?)
        }
        [i, j] if m[i] == 1 && m[j] == 1 => {
            let (a, b) = if irrep.lead == i { (i, j) } else { (j, i) };
            EulerClassValue::exact(e_power(&ring, a, 2, 1)?.sub(&e_power(&ring, b, 2, 1)?)?)
        }
        _ => Err(Error::UnsupportedIrrep(format!("no closed Euler class formula for {irrep}"))),
    }
}

pub fn euler_n_irrep(irrep: NIrrep, field: &FieldDescriptor) -> Result<EulerClassValue> {
    let ring = CohRing::bn(field)?;
    match irrep {
        NIrrep::Rho0 | NIrrep::Rho0Minus => EulerClassValue::exact(ring.zero()),
        NIrrep::Rho(m) => {
            let m = m as i64;
            let square = m.checked_mul(m).ok_or_else(|| Error::Overflow(format!("rho({m}) squared")))?;
            let known_square = e_power(&ring, 1, 2, square)?;
            if m % 2 == 1 {
                Ok(EulerClassValue {
                    value: Some(e_power(&ring, 1, 1, m)?),
                    determinacy: Determinacy::UpToSign,
                    known_square,
                    unresolved_signs: BTreeSet::from([m as u32]),
                })
            } else {
                Ok(EulerClassValue {
                    value: None,
                    determinacy: Determinacy::SquareOnly,
                    known_square,
                    unresolved_signs: BTreeSet::new(),
                })
            }
        }
    }
}

pub fn euler_irrep(irrep: &Irrep, field: &FieldDescriptor) -> Result<EulerClassValue> {
    match irrep {
        Irrep::SL2n(r) => euler_sl2n_irrep(r, field),
        Irrep::N(r) => euler_n_irrep(*r, field),
    }
}

/// Whitney product over the summands.
pub fn euler_rep(rep: &RepSum, field: &FieldDescriptor) -> Result<EulerClassValue> {
    let ring = euler_ring(rep.group(), field)?;
    let mut acc = EulerClassValue::exact(ring.one())?;
    for (irrep, k) in rep.summands() {
        let e = euler_irrep(irrep, field)?;
        for _ in 0..*k {
            acc = acc.mul(&e)?;
        }
    }
    Ok(acc)
}

/// The square of the Euler class, which does not depend on sign choices.
pub fn generic_euler(rep: &RepSum, field: &FieldDescriptor) -> Result<GradedElement> {
    if rep.rank() % 2 == 1 {
        return Ok(euler_ring(rep.group(), field)?.zero());
    }
    Ok(euler_rep(rep, field)?.known_square)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldDescriptor {
        FieldDescriptor::Rationals
    }

    #[test]
    fn sym_classes() {
        let v = euler_sl2n_irrep(&SL2nIrrep::sym(3, 1, 1).unwrap(), &q()).unwrap();
        assert_eq!(v.value.unwrap().to_string(), "3*e^4");
        let v = euler_sl2n_irrep(&SL2nIrrep::sym(2, 1, 1).unwrap(), &q()).unwrap();
        assert!(v.value.unwrap().is_zero());
        let v = euler_sl2n_irrep(&SL2nIrrep::tensor_pair(1, 2, 2).unwrap(), &q()).unwrap();
        assert_eq!(v.value.unwrap().to_string(), "e1^2 - e2^2");
        let unsupported = SL2nIrrep::from_exponents(vec![1, 2]).unwrap();
        assert!(matches!(euler_sl2n_irrep(&unsupported, &q()), Err(Error::UnsupportedIrrep(_))));
    }

    #[test]
    fn n_classes() {
        let v = euler_n_irrep(NIrrep::Rho(1), &q()).unwrap();
        assert_eq!(v.determinacy, Determinacy::UpToSign);
        assert_eq!(v.known_square.to_string(), "e^2");
        let v = euler_n_irrep(NIrrep::Rho(2), &q()).unwrap();
        assert_eq!(v.determinacy, Determinacy::SquareOnly);
        assert_eq!(v.known_square.to_string(), "4*e^2");
        assert!(euler_n_irrep(NIrrep::Rho0, &q()).unwrap().value.unwrap().is_zero());
    }

    #[test]
    fn doubled_signs_cancel() {
        let rep = RepSum::new(GroupKind::N, vec![(Irrep::N(NIrrep::Rho(1)), 2)]).unwrap();
        let v = euler_rep(&rep, &q()).unwrap();
        assert_eq!(v.determinacy, Determinacy::Exact);
        assert_eq!(v.value.unwrap().to_string(), "e^2");
        assert_eq!(v.known_square.to_string(), "e^4");
    }

    #[test]
    fn generic_classes() {
        let rho3 = RepSum::new(GroupKind::N, vec![(Irrep::N(NIrrep::Rho(3)), 1)]).unwrap();
        assert_eq!(generic_euler(&rho3, &q()).unwrap().to_string(), "9*e^2");
        let rho0 = RepSum::new(GroupKind::N, vec![(Irrep::N(NIrrep::Rho0), 1)]).unwrap();
        assert!(generic_euler(&rho0, &q()).unwrap().is_zero());
    }
}
