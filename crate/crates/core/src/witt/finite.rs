//! Witt rings of finite fields of odd order, classified by rank parity and signed discriminant.

use serde::Serialize;

use crate::field::{FieldDescriptor, FieldElement};

/// Class in W(F_q): rank mod 2 and whether the signed discriminant is a square.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct FiniteWitt {
    pub odd_rank: bool,
    pub disc_square: bool,
}

impl FiniteWitt {
    pub const ZERO: FiniteWitt = FiniteWitt { odd_rank: false, disc_square: true };
    pub const ONE: FiniteWitt = FiniteWitt { odd_rank: true, disc_square: true };

    pub fn is_zero(self) -> bool {
        self == Self::ZERO
    }

    pub fn rank_one(entry_is_square: bool) -> Self {
        FiniteWitt { odd_rank: true, disc_square: entry_is_square }
    }

    /// Sum, where `minus_one_square` records whether -1 is a square in the field.
    pub fn add(self, other: Self, minus_one_square: bool) -> Self {
        let mut disc_square = self.disc_square == other.disc_square;
        if self.odd_rank && other.odd_rank && !minus_one_square {
            disc_square = !disc_square;
        }
        FiniteWitt { odd_rank: self.odd_rank != other.odd_rank, disc_square }
    }

    /// All four classes, zero first.
    pub fn all() -> [FiniteWitt; 4] {
        [
            Self::ZERO,
            Self::ONE,
            FiniteWitt { odd_rank: true, disc_square: false },
            FiniteWitt { odd_rank: false, disc_square: false },
        ]
    }

    /// Shortest diagonal representative, in terms of the designated non-square `s`:
    /// `0`, `<1>`, `<s>` or `<1, -s>`.
    pub fn representative(self, field: &FieldDescriptor) -> Vec<FieldElement> {
        let s = designated_nonsquare(field);
        match (self.odd_rank, self.disc_square) {
            (false, true) => Vec::new(),
            (true, true) => vec![field.one()],
            (true, false) => vec![s],
            (false, false) => vec![field.one(), field.neg(&s)],
        }
    }
}

/// The non-square used in canonical entries: least positive non-residue mod p, or the
/// first `u + sqrt` (u = 0, 1, ...) that is a non-square in F_{p^2}.
pub fn designated_nonsquare(field: &FieldDescriptor) -> FieldElement {
    match field {
        FieldDescriptor::FinitePrime(p) => FieldElement::Residue(crate::arith::least_nonresidue(*p)),
        FieldDescriptor::QuadExt(q) => {
            let FieldDescriptor::FinitePrime(p) = q.base else {
                panic!("not a finite field: {field}");
            };
            (0..p)
                .map(|u| FieldElement::pair(FieldElement::Residue(u), FieldElement::Residue(1)))
                .find(|x| !field.is_square(x).unwrap())
                .expect("F_{p^2} has non-squares of the form u + sqrt")
        }
        _ => panic!("not a finite field: {field}"),
    }
}

pub fn minus_one_is_square(field: &FieldDescriptor) -> bool {
    field.order().expect("finite field") % 4 == 1
}
