//! Exact arithmetic in the real quadratic field `K = Q(sqrt(d))` and its
//! reductions at rational primes.
//!
//! Elements are stored as `a + b*sqrt(d)` with arbitrary-precision rational
//! coordinates kept in lowest terms (this is what `BigRational` guarantees),
//! so equality is structural. `sqrt(d)` always denotes the positive real
//! root; `conj` is the nontrivial Galois automorphism `a + b*sqrt(d) ->
//! a - b*sqrt(d)`.
//!
//! Only the field `Q(sqrt(d))` is modeled, not its ring of integers: every
//! point coordinate this crate manipulates is expressible as `a + b*sqrt(d)`
//! with rational `a`, `b`, so no `(1+sqrt(d))/2` integral basis handling is
//! needed.

use crate::field::{is_squarefree, rat_sqrt, Field, Rat};
use crate::gf::Gf;
use crate::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;

/// The real quadratic field `Q(sqrt(d))` for a squarefree integer `d > 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct QuadField {
    d: i64,
}

impl QuadField {
    pub fn new(d: i64) -> Result<Self> {
        if d <= 1 || !is_squarefree(d) {
            return Err(Error::BadRadicand(d));
        }
        Ok(QuadField { d })
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn elem(&self, a: Rat, b: Rat) -> QuadElem {
        QuadElem { a, b, d: self.d }
    }

    pub fn from_rat(&self, a: Rat) -> QuadElem {
        self.elem(a, Rat::zero())
    }

    pub fn from_i64(&self, n: i64) -> QuadElem {
        self.from_rat(crate::field::rat_i(n))
    }

    /// The element `sqrt(d)`.
    pub fn sqrt_d(&self) -> QuadElem {
        self.elem(Rat::zero(), Rat::one())
    }

    /// Square root inside `K`, if one exists.
    ///
    /// Solves `(p + q*sqrt(d))^2 = u + v*sqrt(d)` exactly: for `v = 0` test
    /// `u` and `u/d` for rational squares; otherwise substitute
    /// `q = v/(2p)`, which forces `p^2 = (u ± w)/2` with `w^2 = u^2 - v^2 d`,
    /// and test those for rational squares. The returned root has
    /// nonnegative `a`-component, and nonnegative `b` when `a = 0`.
    pub fn sqrt_in_k(&self, x: &QuadElem) -> Option<QuadElem> {
        self.check(x);
        let u = &x.a;
        let v = &x.b;
        if v.is_zero() {
            if u.is_zero() {
                return Some(self.from_rat(Rat::zero()));
            }
            if let Some(r) = rat_sqrt(u) {
                return Some(self.from_rat(r));
            }
            // u = (q*sqrt(d))^2 = q^2 d
            let ud = u / Rat::from_integer(BigInt::from(self.d));
            if let Some(q) = rat_sqrt(&ud) {
                return Some(self.elem(Rat::zero(), q));
            }
            return None;
        }
        // norm(x) = u^2 - v^2 d must be a rational square w^2
        let d_rat = Rat::from_integer(BigInt::from(self.d));
        let norm = u * u - v * v * &d_rat;
        let w = rat_sqrt(&norm)?;
        for sign in [1i64, -1] {
            let p2 = (u + Rat::from_integer(BigInt::from(sign)) * &w)
                / Rat::from_integer(BigInt::from(2));
            if p2.is_negative() || p2.is_zero() {
                continue;
            }
            if let Some(p) = rat_sqrt(&p2) {
                // p > 0, so the a-component of the root is positive
                let q = v / (Rat::from_integer(BigInt::from(2)) * &p);
                let s = self.elem(p, q);
                debug_assert_eq!(&s * &s, *x);
                return Some(s);
            }
        }
        None
    }

    fn check(&self, x: &QuadElem) {
        assert_eq!(self.d, x.d, "element of Q(sqrt({})) used in Q(sqrt({}))", x.d, self.d);
    }

    /// The splitting behavior of an odd prime `p` (or `p = 2`) in `K`, with
    /// the residue field and the image of `sqrt(d)`. See [`ResidueMap`].
    pub fn residue_map(&self, p: u64) -> Result<ResidueMap> {
        ResidueMap::new(self, p)
    }
}

impl crate::field::SqrtField for QuadField {
    fn sqrt_elem(&self, a: &QuadElem) -> Option<QuadElem> {
        self.sqrt_in_k(a)
    }
}

impl Field for QuadField {
    type Elem = QuadElem;

    fn zero(&self) -> QuadElem {
        self.from_rat(Rat::zero())
    }
    fn one(&self) -> QuadElem {
        self.from_rat(Rat::one())
    }
    fn add(&self, a: &QuadElem, b: &QuadElem) -> QuadElem {
        a + b
    }
    fn neg(&self, a: &QuadElem) -> QuadElem {
        -a
    }
    fn mul(&self, a: &QuadElem, b: &QuadElem) -> QuadElem {
        a * b
    }
    fn inv(&self, a: &QuadElem) -> Option<QuadElem> {
        a.try_inv().ok()
    }
    fn from_i64(&self, n: i64) -> QuadElem {
        QuadField::from_i64(self, n)
    }
    fn is_zero(&self, a: &QuadElem) -> bool {
        a.is_zero()
    }
}

/// An element `a + b*sqrt(d)` of `Q(sqrt(d))`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadElem {
    a: Rat,
    b: Rat,
    d: i64,
}

impl QuadElem {
    pub fn a(&self) -> &Rat {
        &self.a
    }
    pub fn b(&self) -> &Rat {
        &self.b
    }
    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn as_rat(&self) -> Option<&Rat> {
        if self.b.is_zero() {
            Some(&self.a)
        } else {
            None
        }
    }

    /// Galois conjugate `a - b*sqrt(d)`.
    pub fn conj(&self) -> QuadElem {
        QuadElem { a: self.a.clone(), b: -&self.b, d: self.d }
    }

    /// `x * conj(x) = a^2 - b^2 d`, a rational.
    pub fn norm(&self) -> Rat {
        &self.a * &self.a - &self.b * &self.b * Rat::from_integer(BigInt::from(self.d))
    }

    /// `x + conj(x) = 2a`.
    pub fn trace(&self) -> Rat {
        &self.a + &self.a
    }

    pub fn try_inv(&self) -> Result<QuadElem> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.norm();
        Ok(QuadElem { a: &self.a / &n, b: -&self.b / &n, d: self.d })
    }

    pub fn try_div(&self, rhs: &QuadElem) -> Result<QuadElem> {
        assert_eq!(self.d, rhs.d, "mixed quadratic fields");
        Ok(self * &rhs.try_inv()?)
    }
}

impl fmt::Debug for QuadElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for QuadElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        if self.a.is_zero() {
            return write!(f, "{}*sqrt({})", self.b, self.d);
        }
        if self.b.is_negative() {
            write!(f, "{} - {}*sqrt({})", self.a, -&self.b, self.d)
        } else {
            write!(f, "{} + {}*sqrt({})", self.a, self.b, self.d)
        }
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl std::ops::$trait for &QuadElem {
            type Output = QuadElem;
            fn $method(self, rhs: &QuadElem) -> QuadElem {
                assert_eq!(self.d, rhs.d, "mixed quadratic fields");
                QuadElem::$method(self, rhs)
            }
        }
        impl std::ops::$trait for QuadElem {
            type Output = QuadElem;
            fn $method(self, rhs: QuadElem) -> QuadElem {
                (&self).$method(&rhs)
            }
        }
    };
}

impl QuadElem {
    fn add(&self, rhs: &QuadElem) -> QuadElem {
        QuadElem { a: &self.a + &rhs.a, b: &self.b + &rhs.b, d: self.d }
    }
    fn sub(&self, rhs: &QuadElem) -> QuadElem {
        QuadElem { a: &self.a - &rhs.a, b: &self.b - &rhs.b, d: self.d }
    }
    fn mul(&self, rhs: &QuadElem) -> QuadElem {
        let d_rat = Rat::from_integer(BigInt::from(self.d));
        QuadElem {
            a: &self.a * &rhs.a + &self.b * &rhs.b * &d_rat,
            b: &self.a * &rhs.b + &self.b * &rhs.a,
            d: self.d,
        }
    }
    fn div(&self, rhs: &QuadElem) -> QuadElem {
        self.try_div(rhs).expect("division by zero")
    }
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl std::ops::Neg for &QuadElem {
    type Output = QuadElem;
    fn neg(self) -> QuadElem {
        QuadElem { a: -&self.a, b: -&self.b, d: self.d }
    }
}
impl std::ops::Neg for QuadElem {
    type Output = QuadElem;
    fn neg(self) -> QuadElem {
        -&self
    }
}

/// How a rational prime behaves in `Q(sqrt(d))`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Splitting {
    Split,
    Inert,
    Ramified,
}

/// Reduction of `K` at a prime `p` of good behavior: a ring homomorphism
/// from the elements with `p`-integral coordinates onto the residue field
/// `F_p` (split/ramified) or `F_{p^2}` (inert).
///
/// `p = 2` is supported only for `d = 1 mod 8`, where 2 splits and
/// `sqrt(d) -> 1`; other behavior at 2 is excluded from reduction-based
/// bounds anyway.
#[derive(Clone, Debug)]
pub struct ResidueMap {
    pub p: u64,
    pub splitting: Splitting,
    /// Residue field: `F_p` for split/ramified, `F_{p^2}` for inert.
    pub gf: Gf,
    /// Image of `sqrt(d)` in the residue field.
    pub sqrt_d_image: u64,
}

impl ResidueMap {
    fn new(field: &QuadField, p: u64) -> Result<ResidueMap> {
        let d = field.d();
        if p == 2 {
            if d % 8 == 1 {
                return Ok(ResidueMap {
                    p,
                    splitting: Splitting::Split,
                    gf: Gf::prime(2),
                    sqrt_d_image: 1,
                });
            }
            return Err(Error::BadReductionPrime(2));
        }
        let dm = (d.rem_euclid(p as i64)) as u64;
        if dm == 0 {
            return Ok(ResidueMap {
                p,
                splitting: Splitting::Ramified,
                gf: Gf::prime(p),
                sqrt_d_image: 0,
            });
        }
        let gfp = Gf::prime(p);
        if let Some(t) = gfp.sqrt(dm) {
            Ok(ResidueMap { p, splitting: Splitting::Split, gf: gfp, sqrt_d_image: t })
        } else {
            // F_{p^2} built as F_p[t]/(t^2 - d), so sqrt(d) maps to t itself
            let gf2 = Gf::quadratic_ext(p, dm);
            let t = gf2.encode(&[0, 1]);
            Ok(ResidueMap { p, splitting: Splitting::Inert, gf: gf2, sqrt_d_image: t })
        }
    }

    /// Reduce a rational with denominator prime to `p`.
    pub fn reduce_rat(&self, x: &Rat) -> Result<u64> {
        let p = BigInt::from(self.p);
        let den = x.denom().mod_floor_big(&p);
        if den.is_zero() {
            return Err(Error::BadReductionInput { p: self.p });
        }
        let num = x.numer().mod_floor_big(&p);
        let num_u = num.to_u64().unwrap();
        let den_u = den.to_u64().unwrap();
        let base = Gf::prime(self.p);
        let r = base.mul(num_u, base.inv(den_u).unwrap());
        Ok(self.gf.embed_base(r))
    }

    /// Reduce an element of `K` with `p`-integral coordinates.
    pub fn reduce(&self, x: &QuadElem) -> Result<u64> {
        let a = self.reduce_rat(&x.a)?;
        let b = self.reduce_rat(&x.b)?;
        Ok(self.gf.add(a, self.gf.mul(b, self.sqrt_d_image)))
    }
}

trait ModFloorBig {
    fn mod_floor_big(&self, m: &BigInt) -> BigInt;
}
impl ModFloorBig for BigInt {
    fn mod_floor_big(&self, m: &BigInt) -> BigInt {
        let r = self % m;
        if r.is_negative() {
            r + m
        } else {
            r
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{rat, rat_i};

    fn k17() -> QuadField {
        QuadField::new(17).unwrap()
    }

    #[test]
    fn construction_rejects_bad_radicands() {
        assert!(QuadField::new(0).is_err());
        assert!(QuadField::new(1).is_err());
        assert!(QuadField::new(12).is_err());
        assert!(QuadField::new(-7).is_err());
        assert!(QuadField::new(17).is_ok());
    }

    #[test]
    fn identity_and_defining_relation() {
        let k = k17();
        let one = k.one();
        let x = k.elem(rat(3, 5), rat(-2, 7));
        assert_eq!(&one * &x, x);
        let s = k.sqrt_d();
        assert_eq!(&s * &s, k.from_i64(17));
    }

    #[test]
    fn norm_of_paper_coordinate() {
        // (1 - sqrt(17))/8 has norm (1 - 17)/64 = -1/4
        let k = k17();
        let x = k.elem(rat(1, 8), rat(-1, 8));
        assert_eq!((&x * &x.conj()).as_rat().unwrap(), &rat(-1, 4));
        assert_eq!(x.norm(), rat(-1, 4));
    }

    #[test]
    fn division_by_zero_is_an_error() {
        let k = k17();
        assert!(k.one().try_div(&k.zero()).is_err());
        let x = k.elem(rat_i(2), rat(1, 3));
        assert_eq!(x.try_div(&x).unwrap(), k.one());
    }

    #[test]
    fn sqrt_in_k_examples() {
        let k = k17();
        // 17/64 = (sqrt(17)/8)^2
        let x = k.from_rat(rat(17, 64));
        let s = k.sqrt_in_k(&x).unwrap();
        assert_eq!(s, k.elem(rat_i(0), rat(1, 8)));
        // zero
        assert_eq!(k.sqrt_in_k(&k.zero()).unwrap(), k.zero());
        // -1 has no square root in a real field
        assert!(k.sqrt_in_k(&k.from_i64(-1)).is_none());
        // a genuinely irrational square: (3 + sqrt(17))^2 = 26 + 6 sqrt(17)
        let y = k.elem(rat_i(26), rat_i(6));
        let s = k.sqrt_in_k(&y).unwrap();
        assert_eq!(s, k.elem(rat_i(3), rat_i(1)));
        // 21 + 12 sqrt(3) = (3 + 2 sqrt(3))^2 in Q(sqrt(3))
        let k3 = QuadField::new(3).unwrap();
        let z = k3.elem(rat_i(21), rat_i(12));
        assert_eq!(k3.sqrt_in_k(&z).unwrap(), k3.elem(rat_i(3), rat_i(2)));
        // nonnegative-a tie break
        let w = k.from_i64(4);
        assert_eq!(k.sqrt_in_k(&w).unwrap(), k.from_i64(2));
    }

    #[test]
    fn residue_map_split_inert_ramified() {
        let k = k17();
        // 2 splits since 17 = 1 mod 8, sqrt(17) -> 1, so 1 + sqrt(17) -> 0
        let r2 = k.residue_map(2).unwrap();
        assert_eq!(r2.splitting, Splitting::Split);
        let x = k.elem(rat_i(1), rat_i(1));
        assert_eq!(r2.reduce(&x).unwrap(), 0);
        // 17 = 2 mod 3 is a nonresidue, so 3 is inert; image t satisfies t^2 = 2
        let r3 = k.residue_map(3).unwrap();
        assert_eq!(r3.splitting, Splitting::Inert);
        let t = r3.reduce(&k.sqrt_d()).unwrap();
        assert_eq!(r3.gf.mul(t, t), r3.gf.embed_base(2));
        // 17 itself ramifies
        let r17 = k.residue_map(17).unwrap();
        assert_eq!(r17.splitting, Splitting::Ramified);
        // rational elements reduce componentwise
        let r7 = k.residue_map(7).unwrap();
        assert_eq!(r7.reduce(&k.from_i64(5)).unwrap(), 5);
        // denominator divisible by p is rejected
        assert!(r3.reduce(&k.from_rat(rat(1, 3))).is_err());
    }

    #[test]
    fn residue_map_is_multiplicative() {
        let k = k17();
        for p in [2u64, 3, 5, 7, 13, 19] {
            let r = k.residue_map(p).unwrap();
            let x = k.elem(rat_i(3), rat_i(2));
            let y = k.elem(rat_i(-1), rat_i(4));
            let lhs = r.reduce(&(&x * &y)).unwrap();
            let rhs = r.gf.mul(r.reduce(&x).unwrap(), r.reduce(&y).unwrap());
            assert_eq!(lhs, rhs, "p = {p}");
        }
    }
}
