//! Integer and rational helpers: square classes, residue symbols, Hilbert symbols.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_prime::nt_funcs::{factorize64, is_prime64};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub fn is_odd_prime(p: u64) -> bool {
    p > 2 && is_prime64(p)
}

/// Prime factorization of `n > 0` as (prime, exponent) pairs in increasing order.
pub fn factorize(n: u64) -> Vec<(u64, usize)> {
    if n <= 1 {
        return Vec::new();
    }
    factorize64(n).into_iter().collect()
}

/// The squarefree integer with the same square class as `n != 0` (sign kept).
pub fn squarefree_part(n: i64) -> i64 {
    assert!(n != 0, "square class of zero");
    let core: u64 = factorize(n.unsigned_abs())
        .into_iter()
        .filter(|&(_, e)| e % 2 == 1)
        .map(|(p, _)| p)
        .product();
    let core = core as i64;
    if n < 0 {
        -core
    } else {
        core
    }
}

/// Square class of the product of two squarefree integers.
pub fn mul_square_classes(a: i64, b: i64) -> Result<i64> {
    let g = a.unsigned_abs().gcd(&b.unsigned_abs()) as i64;
    (a / g)
        .checked_mul(b / g)
        .ok_or_else(|| Error::Overflow(format!("square class {a}*{b}")))
}

fn bigint_to_i64(n: &BigInt) -> Result<i64> {
    n.to_i64()
        .ok_or_else(|| Error::Overflow(format!("{n} does not fit in 64 bits")))
}

/// Squarefree integer representing the square class of a nonzero rational.
pub fn rational_square_class(q: &BigRational) -> Result<i64> {
    if q.is_zero() {
        return Err(Error::ZeroInput);
    }
    let num = squarefree_part(bigint_to_i64(q.numer())?);
    let den = squarefree_part(bigint_to_i64(q.denom())?);
    mul_square_classes(num, den)
}

/// Exact integer square root, if `n` is a perfect square.
pub fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// Square root of a rational, if it is the square of a rational.
pub fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    let n = exact_sqrt(q.numer())?;
    let d = exact_sqrt(q.denom())?;
    Some(BigRational::new(n, d))
}

pub fn mod_pow(base: u64, mut exp: u64, m: u64) -> u64 {
    let m128 = m as u128;
    let mut b = (base % m) as u128;
    let mut acc: u128 = 1 % m128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m128;
        }
        b = b * b % m128;
        exp >>= 1;
    }
    acc as u64
}

pub fn mod_inv(a: u64, p: u64) -> u64 {
    mod_pow(a, p - 2, p)
}

/// Reduces a signed integer into `0..p`.
pub fn reduce_mod(a: i64, p: u64) -> u64 {
    (a as i128).rem_euclid(p as i128) as u64
}

/// Reduces a rational with denominator prime to `p`.
pub fn reduce_rational_mod(q: &BigRational, p: u64) -> Result<u64> {
    let pb = BigInt::from(p);
    let n = q.numer().mod_floor(&pb).to_u64().unwrap();
    let d = q.denom().mod_floor(&pb).to_u64().unwrap();
    if d == 0 {
        return Err(Error::BadParameters(format!("denominator divisible by {p}")));
    }
    Ok(n * mod_inv(d, p) % p)
}

/// Legendre symbol (a/p) for odd prime p: 0, 1 or -1.
pub fn legendre(a: i64, p: u64) -> i32 {
    let r = reduce_mod(a, p);
    if r == 0 {
        return 0;
    }
    if mod_pow(r, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    }
}

/// Least positive quadratic non-residue modulo an odd prime.
pub fn least_nonresidue(p: u64) -> u64 {
    (2..p).find(|&c| legendre(c as i64, p) == -1).expect("odd prime has a non-residue")
}

/// p-adic valuation of a nonzero integer.
pub fn valuation(n: i64, p: u64) -> u32 {
    let mut n = n.unsigned_abs();
    let mut v = 0;
    while n.is_multiple_of(p) {
        n /= p;
        v += 1;
    }
    v
}

/// Whether the nonzero integer `a` is a square in the p-adic field (p = 0 is the real place).
pub fn is_local_square(a: i64, p: u64) -> bool {
    if p == 0 {
        return a > 0;
    }
    let v = valuation(a, p);
    if v % 2 == 1 {
        return false;
    }
    let u = a / (p as i64).pow(v);
    if p == 2 {
        u.rem_euclid(8) == 1
    } else {
        legendre(u, p) == 1
    }
}

/// Hilbert symbol (a, b)_p for nonzero integers; p = 0 is the real place.
pub fn hilbert_symbol(a: i64, b: i64, p: u64) -> i32 {
    if p == 0 {
        return if a < 0 && b < 0 { -1 } else { 1 };
    }
    let alpha = valuation(a, p);
    let beta = valuation(b, p);
    let pi = p as i64;
    let u = a / pi.pow(alpha);
    let v = b / pi.pow(beta);
    if p == 2 {
        let eps = |x: i64| ((x.rem_euclid(8) - 1) / 2) % 2;
        let omega = |x: i64| {
            let r = x.rem_euclid(8);
            ((r * r - 1) / 8) % 2
        };
        let e = eps(u) * eps(v) + alpha as i64 * omega(v) + beta as i64 * omega(u);
        if e % 2 == 0 {
            1
        } else {
            -1
        }
    } else {
        let mut s = 1;
        if (alpha * beta) % 2 == 1 && (p - 1) / 2 % 2 == 1 {
            s = -s;
        }
        if beta % 2 == 1 {
            s *= legendre(u, p);
        }
        if alpha % 2 == 1 {
            s *= legendre(v, p);
        }
        s
    }
}

/// Prime divisors of the nonzero integer `n`.
pub fn prime_divisors(n: i64) -> Vec<u64> {
    factorize(n.unsigned_abs()).into_iter().map(|(p, _)| p).collect()
}

pub fn bigint_sign(n: &BigInt) -> i32 {
    match n.sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

pub fn rational_from_i64(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn double_factorial(m: u32) -> Result<i64> {
    let mut acc: i64 = 1;
    let mut k = m as i64;
    while k > 1 {
        acc = acc
            .checked_mul(k)
            .ok_or_else(|| Error::Overflow(format!("{m}!!")))?;
        k -= 2;
    }
    Ok(acc)
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

pub fn is_one(q: &BigRational) -> bool {
    q.is_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn squarefree_parts() {
        assert_eq!(squarefree_part(12), 3);
        assert_eq!(squarefree_part(-8), -2);
        assert_eq!(squarefree_part(1), 1);
        assert_eq!(mul_square_classes(-3, -3).unwrap(), 1);
        assert_eq!(mul_square_classes(6, 10).unwrap(), 15);
    }

    #[test]
    fn rational_classes() {
        let q = BigRational::new(BigInt::from(3), BigInt::from(8));
        assert_eq!(rational_square_class(&q).unwrap(), 6);
    }

    #[test]
    fn hilbert_symbols_match_definition_by_search() {
        // (a, b)_p = 1 iff a x^2 + b y^2 = z^2 has a nontrivial p-adic solution; for
        // odd p with small entries a search modulo p^3 is conclusive enough to cross-check.
        fn solvable_mod(a: i64, b: i64, p: u64) -> bool {
            let m = (p * p * p) as i64;
            for x in 0..m {
                for y in 0..m {
                    for z in 0..m {
                        let primitive = x % p as i64 != 0 || y % p as i64 != 0 || z % p as i64 != 0;
                        if primitive && (a * x * x + b * y * y - z * z).rem_euclid(m) == 0 {
                            return true;
                        }
                    }
                }
            }
            false
        }
        for &p in &[3u64] {
            for a in [-3i64, -1, 1, 2, 3, 6, -6] {
                for b in [-3i64, -1, 1, 2, 3, 5] {
                    let h = hilbert_symbol(a, b, p);
                    assert_eq!(h == 1, solvable_mod(a, b, p), "({a},{b})_{p}");
                }
            }
        }
        assert_eq!(hilbert_symbol(-1, -1, 2), -1);
        assert_eq!(hilbert_symbol(2, 3, 2), -1);
        assert_eq!(hilbert_symbol(2, 7, 2), 1);
        assert_eq!(hilbert_symbol(-1, -1, 0), -1);
    }

    #[test]
    fn residues() {
        assert_eq!(least_nonresidue(3), 2);
        assert_eq!(least_nonresidue(7), 3);
        assert_eq!(least_nonresidue(11), 2);
        assert_eq!(double_factorial(9).unwrap(), 945);
        assert!(is_local_square(17, 2));
        assert!(!is_local_square(3, 2));
        assert!(is_local_square(2, 7));
    }
}
