//! W(Q) through signature, second residues at odd primes and the dyadic residue.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::arith;
use crate::error::{Error, Result};
use crate::witt::finite::FiniteWitt;

/// Invariant bundle of a class in W(Q). Together these determine the class.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct RationalWitt {
    pub signature: i64,
    /// Second residue classes in W(F_p) at odd primes; zero classes are omitted.
    pub residues: BTreeMap<u64, FiniteWitt>,
    /// Residue in W(F_2) = Z/2: parity of the number of entries with odd 2-adic valuation.
    pub dyadic: bool,
}

impl RationalWitt {
    pub fn is_zero(&self) -> bool {
        self.signature == 0 && self.residues.is_empty() && !self.dyadic
    }

    pub fn integer(n: i64) -> Self {
        RationalWitt { signature: n, ..Default::default() }
    }

    /// Invariants of `<c>` for a squarefree integer `c`.
    pub fn rank_one(c: i64) -> Self {
        debug_assert!(c != 0);
        let mut residues = BTreeMap::new();
        for p in arith::prime_divisors(c) {
            if p == 2 {
                continue;
            }
            let unit = c / p as i64;
            residues.insert(p, FiniteWitt::rank_one(arith::legendre(unit, p) == 1));
        }
        RationalWitt { signature: c.signum(), residues, dyadic: c % 2 == 0 }
    }

    pub fn from_entries(entries: &[i64]) -> Self {
        entries
            .iter()
            .fold(RationalWitt::default(), |acc, &c| acc.add(&RationalWitt::rank_one(c)))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut residues = self.residues.clone();
        for (&p, &r) in &other.residues {
            let sum = residues
                .get(&p)
                .copied()
                .unwrap_or(FiniteWitt::ZERO)
                .add(r, p % 4 == 1);
            if sum.is_zero() {
                residues.remove(&p);
            } else {
                residues.insert(p, sum);
            }
        }
        RationalWitt {
            signature: self.signature + other.signature,
            residues,
            dyadic: self.dyadic != other.dyadic,
        }
    }

    pub fn neg(&self) -> Self {
        let rep: Vec<(i64, u64)> = self.representative_grouped().into_iter().map(|(c, k)| (-c, k)).collect();
        Self::from_grouped(&rep).expect("negation keeps the signature magnitude")
    }

    /// Canonical diagonal representative as squarefree integers, built from the invariants
    /// alone: residue blocks for odd primes from the largest down, then a dyadic entry,
    /// then units fixing the signature. Runs of equal entries are returned with their length.
    pub fn representative_grouped(&self) -> Vec<(i64, u64)> {
        let mut entries: Vec<(i64, u64)> = Vec::new();
        let mut current = RationalWitt::default();
        loop {
            let remaining = self.add(&current.neg_shallow());
            let Some((&p, &r)) = remaining.residues.iter().next_back() else {
                break;
            };
            let s = arith::least_nonresidue(p) as i64;
            let pi = p as i64;
            let block: Vec<i64> = match (r.odd_rank, r.disc_square) {
                (true, true) => vec![pi],
                (true, false) => vec![pi * s],
                (false, false) => vec![pi, -pi * s],
                (false, true) => unreachable!("zero residues are not stored"),
            };
            for c in block {
                let c = arith::squarefree_part(c);
                current = current.add(&RationalWitt::rank_one(c));
                entries.push((c, 1));
            }
        }
        let remaining = self.add(&current.neg_shallow());
        if remaining.dyadic {
            let c = if remaining.signature >= 1 { 2 } else { -2 };
            current = current.add(&RationalWitt::rank_one(c));
            entries.push((c, 1));
        }
        let gap = self.signature - current.signature;
        if gap != 0 {
            entries.push((gap.signum(), gap.unsigned_abs()));
        }
        entries.sort_by_key(|&(c, _)| (c.unsigned_abs(), c < 0));
        let mut merged: Vec<(i64, u64)> = Vec::new();
        for (c, k) in entries {
            match merged.last_mut() {
                Some((d, n)) if *d == c => *n += k,
                _ => merged.push((c, k)),
            }
        }
        merged
    }

    pub fn representative(&self) -> Vec<i64> {
        self.representative_grouped()
            .into_iter()
            .flat_map(|(c, k)| std::iter::repeat_n(c, k as usize))
            .collect()
    }

    /// Invariants of `k <c>` for a squarefree integer `c`.
    pub fn rank_one_times(c: i64, k: u64) -> Result<Self> {
        let one = RationalWitt::rank_one(c);
        let signature = super::checked_signature(i64::try_from(k).ok().and_then(|k| k.checked_mul(one.signature)))
            .map_err(|_| Error::Overflow(format!("{k}<{c}>")))?;
        let mut residues = BTreeMap::new();
        for (&p, &r) in &one.residues {
            // W(F_p) is 2-torsion or 4-torsion, so only k mod 4 matters.
            let mut acc = FiniteWitt::ZERO;
            for _ in 0..k % 4 {
                acc = acc.add(r, p % 4 == 1);
            }
            if !acc.is_zero() {
                residues.insert(p, acc);
            }
        }
        Ok(RationalWitt { signature, residues, dyadic: one.dyadic && k % 2 == 1 })
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        super::checked_signature(self.signature.checked_add(other.signature))?;
        Ok(self.add(other))
    }

    pub fn from_grouped(entries: &[(i64, u64)]) -> Result<Self> {
        entries.iter().try_fold(RationalWitt::default(), |acc, &(c, k)| {
            acc.checked_add(&RationalWitt::rank_one_times(c, k)?)
        })
    }

    /// Additive inverse computed directly on invariants (used while building representatives).
    fn neg_shallow(&self) -> Self {
        let residues = self
            .residues
            .iter()
            .map(|(&p, &r)| {
                // In W(F_p), -x = <-1> x: rank parity kept; for odd rank the disc is scaled by -1.
                let flip = r.odd_rank && p % 4 == 3;
                (p, FiniteWitt { odd_rank: r.odd_rank, disc_square: r.disc_square != flip })
            })
            .collect();
        RationalWitt { signature: -self.signature, residues, dyadic: self.dyadic }
    }
}

/// Multiplies two grouped squarefree representatives and returns the invariants of the product.
pub fn product_invariants(x: &[(i64, u64)], y: &[(i64, u64)]) -> Result<RationalWitt> {
    let mut acc = RationalWitt::default();
    for &(a, k) in x {
        for &(b, l) in y {
            let count = k.checked_mul(l).ok_or_else(|| Error::Overflow("product rank".into()))?;
            acc = acc.checked_add(&RationalWitt::rank_one_times(arith::mul_square_classes(a, b)?, count)?)?;
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hyperbolic_pairs_vanish() {
        for c in [1, -1, 2, 3, -6, 7, 15, -30] {
            assert!(RationalWitt::from_entries(&[c, -c]).is_zero(), "{c}");
        }
    }

    #[test]
    fn representative_round_trips() {
        for entries in [
            vec![2, 6],
            vec![1, 1, 1],
            vec![3],
            vec![-3, 5, 7],
            vec![2, -5, 11, 13],
            vec![6, 10, 15],
            vec![-1, -1, 2],
        ] {
            let inv = RationalWitt::from_entries(&entries);
            let rep = inv.representative();
            assert_eq!(RationalWitt::from_entries(&rep), inv, "{entries:?} -> {rep:?}");
            assert_eq!(inv.add(&inv.neg_shallow()), RationalWitt::default());
        }
        assert_eq!(RationalWitt::from_entries(&[2, 6]).representative(), vec![2, 6]);
    }
}
