//! Base change, Scharlau transfer and the ideal I_a for a quadratic extension k(sqrt(a))/k.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use crate::arith;
use crate::error::{Error, Result};
use crate::field::{FieldDescriptor, FieldElement};
use crate::witt::{check_same_field, trace_form, Invariants, WittClass};

/// A quadratic extension together with the chosen generator `sqrt(a)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuadExtContext {
    base: FieldDescriptor,
    a: FieldElement,
    ext: FieldDescriptor,
}

impl QuadExtContext {
    pub fn new(base: FieldDescriptor, a: FieldElement) -> Result<Self> {
        let ext = FieldDescriptor::quad_ext(base.clone(), a)?;
        let a = ext.as_quad_ext().unwrap().a.clone();
        Ok(QuadExtContext { base, a, ext })
    }

    pub fn from_ext(ext: &FieldDescriptor) -> Result<Self> {
        let q = ext
            .as_quad_ext()
            .ok_or_else(|| Error::UnsupportedField(format!("{ext} is not a quadratic extension")))?;
        Ok(QuadExtContext { base: q.base.clone(), a: q.a.clone(), ext: ext.clone() })
    }

    pub fn base(&self) -> &FieldDescriptor {
        &self.base
    }

    pub fn a(&self) -> &FieldElement {
        &self.a
    }

    pub fn ext(&self) -> &FieldDescriptor {
        &self.ext
    }

    /// `<c>` over the base.
    pub fn base_class(&self, c: &FieldElement) -> WittClass {
        WittClass::rank_one(&self.base, c.clone()).expect("nonzero scalar")
    }

    /// `<a>` over the base.
    pub fn a_form(&self) -> WittClass {
        self.base_class(&self.a)
    }

    /// `<1> - <a>` over the base.
    pub fn one_minus_a(&self) -> WittClass {
        WittClass::one(&self.base).sub(&self.a_form()).unwrap()
    }

    /// `<2> + <2a>`, the transfer of `<1>`.
    pub fn trace_of_one(&self) -> WittClass {
        let two = self.base.from_i64(2);
        let two_a = self.base.mul(&two, &self.a);
        self.base_class(&two).add(&self.base_class(&two_a)).unwrap()
    }

    /// `<sqrt(a)>` over the extension.
    pub fn sqrt_form(&self) -> WittClass {
        WittClass::rank_one(&self.ext, self.ext.sqrt_generator().unwrap()).unwrap()
    }

    /// The ring map W(k) -> W(k(sqrt(a))).
    pub fn base_change(&self, x: &WittClass) -> Result<WittClass> {
        check_same_field(x.field(), &self.base)?;
        let mut acc = WittClass::zero(&self.ext);
        for (c, k) in x.grouped_representative() {
            let k = i64::try_from(k).map_err(|_| Error::Overflow(format!("{k}<{c}>")))?;
            let image = WittClass::rank_one(&self.ext, FieldElement::pair(c, self.base.zero()))?;
            acc = acc.add(&image.scale_int(k)?)?;
        }
        Ok(acc)
    }

    /// Scharlau transfer along the trace, computed entrywise on the stored diagonal representative.
    pub fn transfer(&self, x: &WittClass) -> Result<WittClass> {
        check_same_field(x.field(), &self.ext)?;
        let mut acc = WittClass::zero(&self.base);
        for c in x.representative().entries() {
            acc = acc.add(&WittClass::from_form(&trace_form(&self.ext, c)?)?)?;
        }
        Ok(acc)
    }

    /// `x -> Tr(<sqrt(a)> x)`.
    pub fn scaled_transfer(&self, x: &WittClass) -> Result<WittClass> {
        check_same_field(x.field(), &self.ext)?;
        self.transfer(&self.sqrt_form().mul(x)?)
    }

    /// Membership in I_a, the kernel of multiplication by `<1> - <a>`.
    pub fn in_ia(&self, x: &WittClass) -> Result<bool> {
        check_same_field(x.field(), &self.base)?;
        x.mul(&self.one_minus_a())?.is_zero()
    }

    /// Finds `y` with `y (<1> - <a>) = x`, or reports `Undecided` when the bounded search fails.
    pub fn certify_multiple(&self, x: &WittClass) -> Result<WittClass> {
        check_same_field(x.field(), &self.base)?;
        let g = self.one_minus_a();
        if let Some(all) = WittClass::enumerate_finite(&self.base) {
            for y in all {
                if y.mul(&g)? == *x {
                    return Ok(y);
                }
            }
            return Err(self.uncertified(x));
        }
        match x.invariants() {
            Invariants::Real { signature } => {
                // a < 0 here, so <1> - <a> has signature 2.
                if signature % 2 == 0 {
                    Ok(WittClass::integer(signature / 2, &self.base))
                } else {
                    Err(self.uncertified(x))
                }
            }
            Invariants::Rational(_) => self.certify_rational(x),
            _ => Err(Error::UnsupportedField(self.base.to_string())),
        }
    }

    fn uncertified(&self, x: &WittClass) -> Error {
        Error::Undecided(format!("no multiplier of <1>-<{}> found for {x}", self.a))
    }

    /// Beam search over sums of `<c> (<1> - <a>)` with `c` from a bounded set of square classes.
    fn certify_rational(&self, x: &WittClass) -> Result<WittClass> {
        if x.is_canonical_zero() {
            return Ok(x.clone());
        }
        let a = arith::rational_square_class(self.a.as_rational().unwrap())?;
        let rep: Vec<i64> = x
            .representative()
            .entries()
            .iter()
            .map(|c| arith::rational_square_class(c.as_rational().unwrap()))
            .collect::<Result<_>>()?;
        let mut seeds: BTreeSet<i64> = [1, 2, a, arith::mul_square_classes(2, a)?].into();
        for &d in &rep {
            for m in [1, 2, a, arith::mul_square_classes(2, a)?] {
                seeds.insert(arith::mul_square_classes(d, m)?);
            }
            for &e in &rep {
                seeds.insert(arith::mul_square_classes(d, e)?);
            }
        }
        let mut classes: BTreeSet<i64> = BTreeSet::new();
        for c in seeds {
            classes.insert(c);
            classes.insert(-c);
        }
        let field = &self.base;
        let g = self.one_minus_a();
        let steps: Vec<(WittClass, WittClass)> = classes
            .into_iter()
            .map(|c| {
                let y = WittClass::from_integers(field, &[c])?;
                let gy = y.mul(&g)?;
                Ok((y, gy))
            })
            .collect::<Result<_>>()?;

        const BEAM: usize = 64;
        let depth = (x.grouped_representative().iter().map(|(_, k)| *k).sum::<u64>() + 4).min(64) as usize;
        // Residual x - y(1-<a>) keyed to its multiplier y.
        let mut frontier: BTreeMap<WittClass, WittClass> = BTreeMap::new();
        frontier.insert(x.clone(), WittClass::zero(field));
        let mut seen: BTreeSet<WittClass> = BTreeSet::new();
        for _ in 0..depth {
            let mut next: Vec<(usize, WittClass, WittClass)> = Vec::new();
            for (residual, y) in &frontier {
                for (c, gc) in &steps {
                    let r = residual.sub(gc)?;
                    let y2 = y.add(c)?;
                    if r.is_canonical_zero() {
                        return Ok(y2);
                    }
                    if seen.insert(r.clone()) {
                        next.push((r.representative().rank(), r, y2));
                    }
                }
            }
            next.sort_by(|p, q| p.0.cmp(&q.0).then_with(|| p.1.cmp(&q.1)));
            frontier = next.into_iter().take(BEAM).map(|(_, r, y)| (r, y)).collect();
            if frontier.is_empty() {
                break;
            }
        }
        Err(self.uncertified(x))
    }

    /// Checks the exactness relations of the triangle
    /// W(k) -> W(k(sqrt a)) -> W(k) -> W(k) on the given samples.
    pub fn lam_exactness_check(&self, samples: &[WittClass]) -> LamReport {
        let mut report = LamReport::new(self);
        for x in samples {
            if x.field() == &self.base {
                self.check_base_sample(x, &mut report);
            } else if x.field() == &self.ext {
                self.check_ext_sample(x, &mut report);
            } else {
                report.push("field", x, Err(Error::FieldMismatch(x.field().to_string(), self.base.to_string())));
            }
        }
        report
    }

    fn check_base_sample(&self, x: &WittClass, report: &mut LamReport) {
        let iota = self.base_change(x);
        let composite = iota.clone().and_then(|i| self.scaled_transfer(&i)).and_then(|t| t.is_zero());
        report.push("scaled_transfer(base_change(x)) = 0", x, composite);

        let kernel = iota.clone().and_then(|i| i.is_zero()).and_then(|zero| {
            if zero {
                let y = self.certify_multiple(x)?;
                Ok(y.mul(&self.one_minus_a())? == *x)
            } else {
                Ok(true)
            }
        });
        report.push("base_change(x) = 0 implies x in (1-<a>)W(k)", x, kernel);

        let multiple = x
            .mul(&self.one_minus_a())
            .and_then(|m| self.base_change(&m))
            .and_then(|i| i.is_zero());
        report.push("base_change((1-<a>) x) = 0", x, multiple);

        let trace = iota.and_then(|i| self.transfer(&i)).and_then(|t| self.in_ia(&t));
        report.push("transfer(base_change(x)) in I_a", x, trace);
    }

    fn check_ext_sample(&self, z: &WittClass, report: &mut LamReport) {
        let tr = self.transfer(z).and_then(|t| self.in_ia(&t));
        report.push("transfer(z) in I_a", z, tr);
        let st = self.scaled_transfer(z).and_then(|t| self.in_ia(&t));
        report.push("(1-<a>) scaled_transfer(z) = 0", z, st);
    }

    /// Exhaustive exactness at all three points of the triangle, for finite base fields.
    pub fn lam_exhaustive(&self) -> Result<LamReport> {
        let base_all = WittClass::enumerate_finite(&self.base)
            .ok_or_else(|| Error::UnsupportedField(format!("{} is not finite", self.base)))?;
        let ext_all = WittClass::enumerate_finite(&self.ext)
            .ok_or_else(|| Error::UnsupportedField(format!("{} is not finite", self.ext)))?;
        let g = self.one_minus_a();
        let mut report = self.lam_exactness_check(&base_all);
        let more = self.lam_exactness_check(&ext_all);
        report.checks.extend(more.checks);

        let ker_iota: BTreeSet<WittClass> = base_all
            .iter()
            .filter(|x| self.base_change(x).map(|i| i.is_canonical_zero()).unwrap_or(false))
            .cloned()
            .collect();
        let im_mult: BTreeSet<WittClass> =
            base_all.iter().map(|y| y.mul(&g)).collect::<Result<_>>()?;
        report.push_bool("ker base_change = image of (1-<a>)", "all", ker_iota == im_mult);

        let ker_st: BTreeSet<WittClass> = ext_all
            .iter()
            .filter(|z| self.scaled_transfer(z).map(|t| t.is_canonical_zero()).unwrap_or(false))
            .cloned()
            .collect();
        let im_iota: BTreeSet<WittClass> =
            base_all.iter().map(|x| self.base_change(x)).collect::<Result<_>>()?;
        report.push_bool("ker scaled_transfer = image of base_change", "all", ker_st == im_iota);

        let ker_mult: BTreeSet<WittClass> = base_all
            .iter()
            .filter(|x| x.mul(&g).map(|p| p.is_canonical_zero()).unwrap_or(false))
            .cloned()
            .collect();
        let im_st: BTreeSet<WittClass> =
            ext_all.iter().map(|z| self.scaled_transfer(z)).collect::<Result<_>>()?;
        report.push_bool("ker (1-<a>) = image of scaled_transfer", "all", ker_mult == im_st);
        Ok(report)
    }
}

impl fmt::Display for QuadExtContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.ext)
    }
}

/// One verified relation on one sample.
#[derive(Clone, Debug, Serialize)]
pub struct LamCheck {
    pub relation: String,
    pub sample: String,
    pub passed: bool,
    pub detail: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct LamReport {
    pub context: String,
    pub checks: Vec<LamCheck>,
}

impl LamReport {
    fn new(ctx: &QuadExtContext) -> Self {
        LamReport { context: ctx.to_string(), checks: Vec::new() }
    }

    fn push(&mut self, relation: &str, sample: &WittClass, outcome: Result<bool>) {
        let (passed, detail) = match outcome {
            Ok(true) => (true, None),
            Ok(false) => (false, None),
            Err(e) => (false, Some(e.to_string())),
        };
        self.checks.push(LamCheck {
            relation: relation.to_string(),
            sample: sample.to_string(),
            passed,
            detail,
        });
    }

    fn push_bool(&mut self, relation: &str, sample: &str, passed: bool) {
        self.checks.push(LamCheck {
            relation: relation.to_string(),
            sample: sample.to_string(),
            passed,
            detail: None,
        });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn violations(&self) -> Vec<&LamCheck> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }
}
