//! W(Q(sqrt(a))): reduced diagonal representatives and a conservative zero test.
//!
//! Equality is decided exactly when a representative has rational entries (local-global
//! principle over the extension). Otherwise a class is declared nonzero when some
//! invariant (rank parity, discriminant, real signatures, scaled traces) detects it, and
//! `Undecided` is returned when none does.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::arith;
use crate::error::{Error, Result};
use crate::field::{FieldDescriptor, FieldElement};
use crate::witt::{trace_form, WittClass};

fn parts(x: &FieldElement) -> (&BigRational, &BigRational) {
    let (u, v) = x.as_pair().expect("extension element");
    (u.as_rational().unwrap(), v.as_rational().unwrap())
}

fn rat_pair(u: BigRational, v: BigRational) -> FieldElement {
    FieldElement::pair(FieldElement::Rational(u), FieldElement::Rational(v))
}

fn int_pair(u: i64, v: i64) -> FieldElement {
    rat_pair(arith::rational_from_i64(u), arith::rational_from_i64(v))
}

/// Squarefree integer in the square class of `a`.
pub fn a_class(field: &FieldDescriptor) -> Result<i64> {
    let q = field.as_quad_ext().expect("extension");
    arith::rational_square_class(q.a.as_rational().expect("rational a"))
}

fn square_free_cofactor(g: &BigInt) -> Result<BigInt> {
    let g = g
        .to_u64()
        .ok_or_else(|| Error::Overflow(format!("entry content {g} too large")))?;
    let mut s: u64 = 1;
    for (p, e) in arith::factorize(g) {
        s *= p.pow((e / 2) as u32);
    }
    Ok(BigInt::from(s))
}

/// Scales `u + v sqrt(a)` by a rational square so that `u, v` are coprime-up-to-squarefree integers.
fn primitive(u: &BigRational, v: &BigRational) -> Result<(BigInt, BigInt)> {
    let d = u.denom().lcm(v.denom());
    let d2 = &d * &d;
    let uu = (u * BigRational::from_integer(d2.clone())).to_integer();
    let vv = (v * BigRational::from_integer(d2)).to_integer();
    let g = uu.gcd(&vv);
    let s = square_free_cofactor(&g)?;
    let s2 = &s * &s;
    Ok((uu / &s2, vv / &s2))
}

fn entry_key(x: &FieldElement) -> (BigInt, BigInt, bool, bool) {
    let (u, v) = parts(x);
    (
        u.numer().abs() + v.numer().abs(),
        u.numer().abs(),
        u.is_negative(),
        v.is_negative(),
    )
}

/// Normalizes the square class of a nonzero element.
pub fn normalize_entry(field: &FieldDescriptor, x: &FieldElement) -> Result<FieldElement> {
    if field.is_square(x)? {
        return Ok(field.one());
    }
    let a = a_class(field)?;
    let (u, v) = parts(x);
    if v.is_zero() {
        let c = arith::rational_square_class(u)?;
        let alt = arith::mul_square_classes(c, a)?;
        let best = [c, alt]
            .into_iter()
            .min_by_key(|&c| (c.unsigned_abs(), c < 0))
            .unwrap();
        return Ok(int_pair(best, 0));
    }
    let ax = field.mul(&field.from_i64(a), x);
    let mut candidates = Vec::new();
    for y in [x, &ax] {
        let (u, v) = parts(y);
        let (uu, vv) = primitive(u, v)?;
        candidates.push(rat_pair(BigRational::from_integer(uu), BigRational::from_integer(vv)));
    }
    candidates.sort_by(|p, q| entry_key(p).cmp(&entry_key(q)).then(p.cmp(q)));
    Ok(candidates.swap_remove(0))
}

/// Normalizes entries, cancels hyperbolic pairs and sorts.
pub fn reduce(field: &FieldDescriptor, entries: &[FieldElement]) -> Result<Vec<FieldElement>> {
    let mut items = entries
        .iter()
        .map(|e| normalize_entry(field, e))
        .collect::<Result<Vec<_>>>()?;
    items.sort_by(|p, q| entry_key(p).cmp(&entry_key(q)).then(p.cmp(q)));
    let mut out: Vec<FieldElement> = Vec::with_capacity(items.len());
    'next: for x in items {
        for i in 0..out.len() {
            // <c> + <d> is hyperbolic iff -cd is a square.
            let minus_cd = field.neg(&field.mul(&out[i], &x));
            if field.is_square(&minus_cd)? {
                out.remove(i);
                continue 'next;
            }
        }
        out.push(x);
    }
    Ok(out)
}

/// Signatures under the two real embeddings (empty when a < 0).
pub fn signatures(field: &FieldDescriptor, entries: &[FieldElement]) -> Vec<i64> {
    if !field.is_formally_real() {
        return Vec::new();
    }
    let mut sig = vec![0i64, 0];
    for e in entries {
        for (k, s) in field.real_signs(e).into_iter().enumerate() {
            sig[k] += match s {
                Ordering::Greater => 1,
                Ordering::Less => -1,
                Ordering::Equal => 0,
            };
        }
    }
    sig
}

fn signed_disc(field: &FieldDescriptor, entries: &[FieldElement]) -> FieldElement {
    let r = entries.len();
    let det = entries.iter().fold(field.one(), |acc, e| field.mul(&acc, e));
    if (r * r.saturating_sub(1) / 2) % 2 == 1 {
        field.neg(&det)
    } else {
        det
    }
}

/// Whether the base change of the diagonal rational form `entries` (squarefree integers)
/// to Q(sqrt(a)) is hyperbolic, by the local-global principle over the extension.
pub fn rational_form_vanishes_over(a: i64, entries: &[i64]) -> Result<bool> {
    let r = entries.len();
    if r % 2 == 1 {
        return Ok(false);
    }
    let m = r / 2;
    let mut d: i64 = if m % 2 == 1 { -1 } else { 1 };
    for &c in entries {
        d = arith::mul_square_classes(d, c)?;
    }
    if d != 1 && d != a {
        return Ok(false);
    }
    if a > 0 && entries.iter().map(|c| c.signum()).sum::<i64>() != 0 {
        return Ok(false);
    }
    // At non-split places the local symbols of rational entries are all trivial; at split
    // places the completion is Q_p and the Hasse invariant must match the hyperbolic one.
    let mut primes: Vec<u64> = vec![2];
    for &c in entries {
        primes.extend(arith::prime_divisors(c));
    }
    primes.sort_unstable();
    primes.dedup();
    let hyperbolic_pairs = m * m.saturating_sub(1) / 2;
    for p in primes {
        if !arith::is_local_square(a, p) {
            continue;
        }
        let mut s = 1;
        for i in 0..r {
            for j in i + 1..r {
                s *= arith::hilbert_symbol(entries[i], entries[j], p);
            }
        }
        let target = if hyperbolic_pairs % 2 == 1 { arith::hilbert_symbol(-1, -1, p) } else { 1 };
        if s != target {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Scaling elements tried when looking for a nonvanishing transfer.
fn probe_scalars(field: &FieldDescriptor) -> Vec<FieldElement> {
    vec![
        field.one(),
        int_pair(0, 1),
        int_pair(1, 1),
        int_pair(1, -1),
        int_pair(2, 1),
        int_pair(1, 2),
    ]
}

pub fn decide_zero(field: &FieldDescriptor, entries: &[FieldElement]) -> Result<bool> {
    if entries.is_empty() {
        return Ok(true);
    }
    if entries.len() % 2 == 1 {
        return Ok(false);
    }
    if !field.is_square(&signed_disc(field, entries))? {
        return Ok(false);
    }
    if signatures(field, entries).iter().any(|&s| s != 0) {
        return Ok(false);
    }
    let a = a_class(field)?;
    if entries.iter().all(|e| parts(e).1.is_zero()) {
        let ints = entries
            .iter()
            .map(|e| arith::rational_square_class(parts(e).0))
            .collect::<Result<Vec<_>>>()?;
        return rational_form_vanishes_over(a, &ints);
    }
    // A hyperbolic form has hyperbolic transfers for every scaling.
    let base = &field.as_quad_ext().unwrap().base;
    for lambda in probe_scalars(field) {
        let mut acc = WittClass::zero(base);
        for e in entries {
            let c = field.mul(&lambda, e);
            acc = acc.add(&WittClass::from_form(&trace_form(field, &c)?)?)?;
        }
        if !acc.is_canonical_zero() {
            return Ok(false);
        }
    }
    Err(Error::Undecided(format!(
        "Witt class of a {}-dimensional form over {field}",
        entries.len()
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(a: i64) -> FieldDescriptor {
        FieldDescriptor::quad_ext(FieldDescriptor::Rationals, FieldElement::integer(a)).unwrap()
    }

    #[test]
    fn a_becomes_a_square() {
        let f = k(2);
        let c = WittClass::from_integers(&f, &[1, -2]).unwrap();
        assert!(c.is_canonical_zero());
        assert_eq!(WittClass::from_integers(&f, &[2]).unwrap(), WittClass::one(&f));
    }

    #[test]
    fn local_global_over_extension() {
        // <1,1> over Q(i) is hyperbolic since -1 is a square.
        assert!(rational_form_vanishes_over(-1, &[1, 1]).unwrap());
        // <1,1,1,1> over Q(sqrt 2) has positive signatures.
        assert!(!rational_form_vanishes_over(2, &[1, 1, 1, 1]).unwrap());
        // <1,-3> over Q(sqrt 3) is hyperbolic.
        assert!(rational_form_vanishes_over(3, &[1, -3]).unwrap());
        // <1,1,3,3> over Q(sqrt -1) is <1,1> + <3,3> = 0 + 0.
        assert!(rational_form_vanishes_over(-1, &[1, 1, 3, 3]).unwrap());
        // <1,-3> over Q(i): disc 3 is not a square there.
        assert!(!rational_form_vanishes_over(-1, &[1, -3]).unwrap());
        // <1,1,1,1> over Q(sqrt -7): -1 is a sum of two squares locally everywhere except
        // where the quaternions (-1,-1) ramify, 2 and infinity; 2 splits in Q(sqrt -7).
        assert!(!rational_form_vanishes_over(-7, &[1, 1, 1, 1]).unwrap());
        // Over Q(sqrt -3), 2 is inert and <1,1,1,1> vanishes.
        assert!(rational_form_vanishes_over(-3, &[1, 1, 1, 1]).unwrap());
    }

    #[test]
    fn irrational_entries() {
        let f = k(2);
        let s = f.sqrt_generator().unwrap();
        let x = WittClass::rank_one(&f, s.clone()).unwrap();
        assert!(!x.is_zero().unwrap());
        let y = WittClass::rank_one(&f, f.neg(&s)).unwrap();
        assert!(x.add(&y).unwrap().is_zero().unwrap());
        // <3+2 sqrt 2> is a square class.
        let sq = WittClass::rank_one(&f, int_pair(3, 2)).unwrap();
        assert_eq!(sq, WittClass::one(&f));
    }
}
