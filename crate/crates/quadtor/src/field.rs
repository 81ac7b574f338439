//! The coefficient-field abstraction used by the polynomial and curve code.
//!
//! Operations take the field by reference so that a single generic
//! implementation of polynomial arithmetic, the Weierstrass group law and
//! Cantor's algorithm serves `Q`, `Q(sqrt(d))` and small finite fields alike.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact rational number.
pub type Rat = BigRational;

/// Convenience constructors for rationals.
pub fn rat_i(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat(n: i64, d: i64) -> Rat {
    assert!(d != 0);
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// A field together with its element type. `zero`/`one` need the context
/// because some fields (quadratic, finite) carry runtime data.
pub trait Field {
    type Elem: Clone + PartialEq + std::fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn from_i64(&self, n: i64) -> Self::Elem;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }
    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }
    fn square(&self, a: &Self::Elem) -> Self::Elem {
        self.mul(a, a)
    }
}

/// The rational field `Q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = Rat;

    fn zero(&self) -> Rat {
        Rat::zero()
    }
    fn one(&self) -> Rat {
        Rat::one()
    }
    fn add(&self, a: &Rat, b: &Rat) -> Rat {
        a + b
    }
    fn neg(&self, a: &Rat) -> Rat {
        -a
    }
    fn mul(&self, a: &Rat, b: &Rat) -> Rat {
        a * b
    }
    fn inv(&self, a: &Rat) -> Option<Rat> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn from_i64(&self, n: i64) -> Rat {
        rat_i(n)
    }
    fn is_zero(&self, a: &Rat) -> bool {
        a.is_zero()
    }
}

/// Fields where exact square roots are decidable; used by the
/// hyperelliptic machinery to classify even-degree models and build the
/// expansion of `y` at infinity.
pub trait SqrtField: Field {
    fn sqrt_elem(&self, a: &Self::Elem) -> Option<Self::Elem>;
}

impl SqrtField for Rationals {
    fn sqrt_elem(&self, a: &Rat) -> Option<Rat> {
        rat_sqrt(a)
    }
}

/// Exact square root of a rational, if one exists. Returns the nonnegative
/// root.
pub fn rat_sqrt(x: &Rat) -> Option<Rat> {
    if x.is_negative() {
        return None;
    }
    let n = int_sqrt_exact(x.numer())?;
    let d = int_sqrt_exact(x.denom())?;
    Some(Rat::new(n, d))
}

/// Exact integer square root: `Some(s)` with `s*s == n` when `n` is a
/// perfect square, else `None`.
pub fn int_sqrt_exact(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let s = n.sqrt();
    if &s * &s == *n {
        Some(s)
    } else {
        None
    }
}

/// Squarefree test by trial division; fine for the |d| < 10^12 range this
/// crate works in.
pub fn is_squarefree(n: i64) -> bool {
    if n == 0 {
        return false;
    }
    let mut m = n.unsigned_abs();
    let mut p = 2u64;
    while p * p <= m {
        if m % p == 0 {
            m /= p;
            if m % p == 0 {
                return false;
            }
        }
        p += 1;
    }
    true
}

/// The squarefree part of a nonzero integer: `n = squarefree * square`.
pub fn squarefree_part(n: &BigInt) -> BigInt {
    assert!(!n.is_zero());
    let mut m = n.abs();
    let sign = if n.is_negative() { -1 } else { 1 };
    let mut free = BigInt::from(sign);
    let mut p = BigInt::from(2);
    while &p * &p <= m {
        let mut e = 0u32;
        while (&m % &p).is_zero() {
            m /= &p;
            e += 1;
        }
        if e % 2 == 1 {
            free *= &p;
        }
        p += 1;
    }
    free * m
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_square_roots() {
        assert_eq!(rat_sqrt(&rat(9, 4)), Some(rat(3, 2)));
        assert_eq!(rat_sqrt(&rat(2, 1)), None);
        assert_eq!(rat_sqrt(&rat(-1, 1)), None);
        assert_eq!(rat_sqrt(&rat(0, 1)), Some(rat_i(0)));
    }

    #[test]
    fn squarefree_detection() {
        assert!(is_squarefree(17));
        assert!(is_squarefree(65));
        assert!(!is_squarefree(12));
        assert!(!is_squarefree(0));
        assert_eq!(squarefree_part(&BigInt::from(5100)), BigInt::from(51));
        assert_eq!(squarefree_part(&BigInt::from(-8)), BigInt::from(-2));
    }
}
