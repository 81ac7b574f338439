//! Dense univariate polynomials over any [`Field`], coefficients in
//! ascending degree order with no trailing zeros.
//!
//! Everything here is generic; the coefficient field is passed explicitly so
//! the same code runs over `Q`, `Q(sqrt(d))` and `F_q`.

use crate::field::{Field, Rat, Rationals};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly<T> {
    /// Ascending coefficients; empty means the zero polynomial.
    pub coeffs: Vec<T>,
}

impl<T: Clone + PartialEq + std::fmt::Debug> Poly<T> {
    pub fn from_coeffs<F: Field<Elem = T>>(fld: &F, mut coeffs: Vec<T>) -> Poly<T> {
        while coeffs.last().map_or(false, |c| fld.is_zero(c)) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Poly<T> {
        Poly { coeffs: vec![] }
    }

    pub fn constant<F: Field<Elem = T>>(fld: &F, c: T) -> Poly<T> {
        Poly::from_coeffs(fld, vec![c])
    }

    pub fn one<F: Field<Elem = T>>(fld: &F) -> Poly<T> {
        Poly::constant(fld, fld.one())
    }

    pub fn x<F: Field<Elem = T>>(fld: &F) -> Poly<T> {
        Poly { coeffs: vec![fld.zero(), fld.one()] }
    }

    /// `c * x^k`.
    pub fn monomial<F: Field<Elem = T>>(fld: &F, c: T, k: usize) -> Poly<T> {
        if fld.is_zero(&c) {
            return Poly::zero();
        }
        let mut coeffs = vec![fld.zero(); k + 1];
        coeffs[k] = c;
        Poly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with `deg 0 = None`.
    pub fn deg(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    /// Degree as an integer with `deg 0 = -1`; convenient in bookkeeping.
    pub fn degi(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn lc(&self) -> &T {
        self.coeffs.last().expect("leading coefficient of zero polynomial")
    }

    pub fn coeff<F: Field<Elem = T>>(&self, fld: &F, k: usize) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(|| fld.zero())
    }

    pub fn is_monic<F: Field<Elem = T>>(&self, fld: &F) -> bool {
        !self.is_zero() && *self.lc() == fld.one()
    }

    pub fn add<F: Field<Elem = T>>(&self, fld: &F, rhs: &Poly<T>) -> Poly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i);
            let b = rhs.coeffs.get(i);
            out.push(match (a, b) {
                (Some(a), Some(b)) => fld.add(a, b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        Poly::from_coeffs(fld, out)
    }

    pub fn neg<F: Field<Elem = T>>(&self, fld: &F) -> Poly<T> {
        Poly { coeffs: self.coeffs.iter().map(|c| fld.neg(c)).collect() }
    }

    pub fn sub<F: Field<Elem = T>>(&self, fld: &F, rhs: &Poly<T>) -> Poly<T> {
        self.add(fld, &rhs.neg(fld))
    }

    pub fn mul<F: Field<Elem = T>>(&self, fld: &F, rhs: &Poly<T>) -> Poly<T> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![fld.zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if fld.is_zero(a) {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = fld.add(&out[i + j], &fld.mul(a, b));
            }
        }
        Poly::from_coeffs(fld, out)
    }

    pub fn scale<F: Field<Elem = T>>(&self, fld: &F, c: &T) -> Poly<T> {
        Poly::from_coeffs(fld, self.coeffs.iter().map(|a| fld.mul(a, c)).collect())
    }

    pub fn pow<F: Field<Elem = T>>(&self, fld: &F, mut e: u64) -> Poly<T> {
        let mut base = self.clone();
        let mut acc = Poly::one(fld);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(fld, &base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(fld, &base);
            }
        }
        acc
    }

    /// Euclidean division; the divisor's leading coefficient must be
    /// invertible (always true over a field for nonzero divisors).
    pub fn divrem<F: Field<Elem = T>>(&self, fld: &F, rhs: &Poly<T>) -> (Poly<T>, Poly<T>) {
        assert!(!rhs.is_zero(), "division by zero polynomial");
        let dlc = fld.inv(rhs.lc()).expect("non-invertible leading coefficient");
        let mut rem = self.coeffs.clone();
        let dr = rhs.coeffs.len() - 1;
        if rem.len() <= dr {
            return (Poly::zero(), self.clone());
        }
        let mut quo = vec![fld.zero(); rem.len() - dr];
        for i in (dr..rem.len()).rev() {
            if fld.is_zero(&rem[i]) {
                continue;
            }
            let q = fld.mul(&rem[i], &dlc);
            quo[i - dr] = q.clone();
            for (j, b) in rhs.coeffs.iter().enumerate() {
                let t = fld.mul(&q, b);
                rem[i - dr + j] = fld.sub(&rem[i - dr + j], &t);
            }
        }
        (Poly::from_coeffs(fld, quo), Poly::from_coeffs(fld, rem))
    }

    pub fn rem<F: Field<Elem = T>>(&self, fld: &F, rhs: &Poly<T>) -> Poly<T> {
        self.divrem(fld, rhs).1
    }

    /// Exact division, panicking if the remainder is nonzero.
    pub fn exact_div<F: Field<Elem = T>>(&self, fld: &F, rhs: &Poly<T>) -> Poly<T> {
        let (q, r) = self.divrem(fld, rhs);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn divides<F: Field<Elem = T>>(&self, fld: &F, target: &Poly<T>) -> bool {
        target.rem(fld, self).is_zero()
    }

    pub fn monic<F: Field<Elem = T>>(&self, fld: &F) -> Poly<T> {
        if self.is_zero() {
            return Poly::zero();
        }
        let inv = fld.inv(self.lc()).unwrap();
        self.scale(fld, &inv)
    }

    /// Monic gcd.
    pub fn gcd<F: Field<Elem = T>>(&self, fld: &F, rhs: &Poly<T>) -> Poly<T> {
        let mut a = self.clone();
        let mut b = rhs.clone();
        while !b.is_zero() {
            let r = a.rem(fld, &b);
            a = b;
            b = r;
        }
        a.monic(fld)
    }

    /// Extended gcd: returns monic `g = gcd(a, b)` and `(s, t)` with
    /// `s*a + t*b = g`.
    pub fn ext_gcd<F: Field<Elem = T>>(&self, fld: &F, rhs: &Poly<T>) -> (Poly<T>, Poly<T>, Poly<T>) {
        let mut r0 = self.clone();
        let mut r1 = rhs.clone();
        let mut s0 = Poly::one(fld);
        let mut s1 = Poly::zero();
        let mut t0 = Poly::zero();
        let mut t1 = Poly::one(fld);
        while !r1.is_zero() {
            let (q, r2) = r0.divrem(fld, &r1);
            r0 = std::mem::replace(&mut r1, r2);
            let s2 = s0.sub(fld, &q.mul(fld, &s1));
            s0 = std::mem::replace(&mut s1, s2);
            let t2 = t0.sub(fld, &q.mul(fld, &t1));
            t0 = std::mem::replace(&mut t1, t2);
        }
        if r0.is_zero() {
            return (Poly::zero(), s0, t0);
        }
        let c = fld.inv(r0.lc()).unwrap();
        (r0.scale(fld, &c), s0.scale(fld, &c), t0.scale(fld, &c))
    }

    pub fn derivative<F: Field<Elem = T>>(&self, fld: &F) -> Poly<T> {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        let mut out = Vec::with_capacity(self.coeffs.len() - 1);
        for (i, c) in self.coeffs.iter().enumerate().skip(1) {
            out.push(fld.mul(c, &fld.from_i64(i as i64)));
        }
        Poly::from_coeffs(fld, out)
    }

    /// Squarefree part `self / gcd(self, self')` (characteristic-0 or
    /// large-characteristic use only).
    pub fn squarefree_part<F: Field<Elem = T>>(&self, fld: &F) -> Poly<T> {
        let g = self.gcd(fld, &self.derivative(fld));
        self.exact_div(fld, &g).monic(fld)
    }

    pub fn is_squarefree<F: Field<Elem = T>>(&self, fld: &F) -> bool {
        self.gcd(fld, &self.derivative(fld)).deg() == Some(0)
    }

    pub fn eval<F: Field<Elem = T>>(&self, fld: &F, x: &T) -> T {
        let mut acc = fld.zero();
        for c in self.coeffs.iter().rev() {
            acc = fld.add(&fld.mul(&acc, x), c);
        }
        acc
    }

    /// Map coefficients into another field.
    pub fn map<U, F2, M>(&self, fld2: &F2, m: M) -> Poly<U>
    where
        U: Clone + PartialEq + std::fmt::Debug,
        F2: Field<Elem = U>,
        M: Fn(&T) -> U,
    {
        Poly::from_coeffs(fld2, self.coeffs.iter().map(|c| m(c)).collect())
    }

    /// Fallible coefficient map (used for reductions mod p).
    pub fn try_map<U, F2, M>(&self, fld2: &F2, m: M) -> Result<Poly<U>>
    where
        U: Clone + PartialEq + std::fmt::Debug,
        F2: Field<Elem = U>,
        M: Fn(&T) -> Result<U>,
    {
        let coeffs: Result<Vec<U>> = self.coeffs.iter().map(|c| m(c)).collect();
        Ok(Poly::from_coeffs(fld2, coeffs?))
    }
}

impl<T: Clone + PartialEq + std::fmt::Debug> std::fmt::Debug for Poly<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "({c:?})")?,
                1 => write!(f, "({c:?})*x")?,
                _ => write!(f, "({c:?})*x^{i}")?,
            }
        }
        Ok(())
    }
}

impl Poly<Rat> {
    /// Strip content: the primitive integer-coefficient associate.
    pub fn primitive_part(&self) -> Poly<Rat> {
        if self.is_zero() {
            return Poly::zero();
        }
        let (_, ints) = primitive_integer_coeffs(self);
        Poly { coeffs: ints.into_iter().map(Rat::from_integer).collect() }
    }

    /// Monic gcd over `Q` with content stripping after every remainder
    /// step. The generic Euclidean gcd is fine over finite fields, but
    /// over `Q` its coefficients explode for the degree-100+ division
    /// polynomials; keeping remainders primitive tames the growth.
    pub fn gcd_rat(&self, rhs: &Poly<Rat>) -> Poly<Rat> {
        let qq = Rationals;
        let mut a = self.primitive_part();
        let mut b = rhs.primitive_part();
        while !b.is_zero() {
            let r = a.rem(&qq, &b).primitive_part();
            a = b;
            b = r;
        }
        a.monic(&qq)
    }

    /// Squarefree part over `Q` via the content-stripped gcd.
    pub fn squarefree_part_rat(&self) -> Poly<Rat> {
        let qq = Rationals;
        let g = self.gcd_rat(&self.derivative(&qq));
        self.exact_div(&qq, &g).monic(&qq)
    }
}

/// Rational polynomials as `(content, primitive integer coefficients)`.
/// The integer coefficients share no common factor and the leading one is
/// positive.
pub fn primitive_integer_coeffs(f: &Poly<Rat>) -> (Rat, Vec<BigInt>) {
    assert!(!f.is_zero());
    let mut den = BigInt::one();
    for c in &f.coeffs {
        den = num_integer::lcm(den, c.denom().clone());
    }
    let mut ints: Vec<BigInt> = f
        .coeffs
        .iter()
        .map(|c| c.numer() * (&den / c.denom()))
        .collect();
    let mut g = BigInt::zero();
    for c in &ints {
        g = num_integer::gcd(g, c.clone());
    }
    if ints.last().unwrap().is_negative() {
        g = -g;
    }
    for c in ints.iter_mut() {
        *c /= &g;
    }
    (Rat::new(g, den), ints)
}

/// Parse a univariate rational polynomial like `x^2+2x-1`, `-3/2*x^3 + x`,
/// or `7`. Whitespace is ignored; `*` between coefficient and `x` is
/// optional.
pub fn parse_rat_poly(s: &str) -> Result<Poly<Rat>> {
    let qq = Rationals;
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(Error::PolyParse("empty input".into()));
    }
    let mut terms: Vec<(Rat, usize)> = Vec::new();
    let bytes = compact.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let mut sign = BigInt::one();
        while i < bytes.len() && (bytes[i] == b'+' || bytes[i] == b'-') {
            if bytes[i] == b'-' {
                sign = -sign;
            }
            i += 1;
        }
        if i >= bytes.len() {
            return Err(Error::PolyParse(format!("dangling sign in {s:?}")));
        }
        // coefficient (optional)
        let start = i;
        while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == b'/') {
            i += 1;
        }
        let coef_str = &compact[start..i];
        let mut coef: Rat = if coef_str.is_empty() {
            Rat::one()
        } else if let Some((n, d)) = coef_str.split_once('/') {
            let n: BigInt = n.parse().map_err(|_| Error::PolyParse(format!("bad number {coef_str:?}")))?;
            let d: BigInt = d.parse().map_err(|_| Error::PolyParse(format!("bad number {coef_str:?}")))?;
            if d.is_zero() {
                return Err(Error::PolyParse("zero denominator".into()));
            }
            Rat::new(n, d)
        } else {
            let n: BigInt = coef_str.parse().map_err(|_| Error::PolyParse(format!("bad number {coef_str:?}")))?;
            Rat::from_integer(n)
        };
        coef *= Rat::from_integer(sign);
        // optional "*", then optional x power
        if i < bytes.len() && bytes[i] == b'*' {
            i += 1;
        }
        let mut power = 0usize;
        if i < bytes.len() && (bytes[i] == b'x' || bytes[i] == b'X') {
            i += 1;
            power = 1;
            if i < bytes.len() && bytes[i] == b'^' {
                i += 1;
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                power = compact[start..i]
                    .parse()
                    .map_err(|_| Error::PolyParse(format!("bad exponent in {s:?}")))?;
            }
        } else if coef_str.is_empty() {
            return Err(Error::PolyParse(format!("expected term at byte {i} of {s:?}")));
        }
        terms.push((coef, power));
    }
    let maxdeg = terms.iter().map(|t| t.1).max().unwrap_or(0);
    let mut coeffs = vec![Rat::zero(); maxdeg + 1];
    for (c, p) in terms {
        coeffs[p] += c;
    }
    Ok(Poly::from_coeffs(&qq, coeffs))
}

/// Render a rational polynomial in the same syntax `parse_rat_poly` accepts.
pub fn format_rat_poly(f: &Poly<Rat>) -> String {
    if f.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, c) in f.coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let mag = c.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let show_coef = !mag.is_one() || i == 0;
        if show_coef {
            out.push_str(&mag.to_string());
        }
        match i {
            0 => {}
            1 => {
                if show_coef {
                    out.push('*');
                }
                out.push('x');
            }
            _ => {
                if show_coef {
                    out.push('*');
                }
                out.push_str(&format!("x^{i}"));
            }
        }
    }
    out
}

/// Build a rational polynomial from integer coefficients, ascending.
pub fn zpoly(coeffs: &[i64]) -> Poly<Rat> {
    let qq = Rationals;
    Poly::from_coeffs(&qq, coeffs.iter().map(|&c| crate::field::rat_i(c)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rat_i;

    #[test]
    fn divrem_roundtrip() {
        let qq = Rationals;
        let f = zpoly(&[1, -4, 0, 2, 1]);
        let g = zpoly(&[3, 1]);
        let (q, r) = f.divrem(&qq, &g);
        assert_eq!(q.mul(&qq, &g).add(&qq, &r), f);
        assert!(r.degi() < g.degi());
    }

    #[test]
    fn gcd_and_squarefree() {
        let qq = Rationals;
        let f = zpoly(&[-1, 0, 1]); // (x-1)(x+1)
        let g = zpoly(&[1, 1]); // x+1
        let sq = f.mul(&qq, &g); // (x-1)(x+1)^2
        assert_eq!(sq.gcd(&qq, &sq.derivative(&qq)), g.monic(&qq));
        assert_eq!(sq.squarefree_part(&qq), f.monic(&qq));
        assert!(f.is_squarefree(&qq));
        assert!(!sq.is_squarefree(&qq));
    }

    #[test]
    fn parse_and_format() {
        let f = parse_rat_poly("x^2+2x+1").unwrap();
        assert_eq!(f, zpoly(&[1, 2, 1]));
        let g = parse_rat_poly("-x^3 - 2").unwrap();
        assert_eq!(g, zpoly(&[-2, 0, 0, -1]));
        let h = parse_rat_poly("3/2*x - 1/2").unwrap();
        assert_eq!(h.coeffs, vec![crate::field::rat(-1, 2), crate::field::rat(3, 2)]);
        assert_eq!(parse_rat_poly(&format_rat_poly(&g)).unwrap(), g);
        assert_eq!(format_rat_poly(&zpoly(&[0, 2])), "2*x");
        assert!(parse_rat_poly("x^").is_err());
        assert!(parse_rat_poly("").is_err());
    }

    #[test]
    fn primitive_parts() {
        let qq = Rationals;
        let f = Poly::from_coeffs(
            &qq,
            vec![crate::field::rat(1, 2), crate::field::rat(3, 4)],
        );
        let (content, ints) = primitive_integer_coeffs(&f);
        assert_eq!(ints, vec![BigInt::from(2), BigInt::from(3)]);
        assert_eq!(content, crate::field::rat(1, 4));
        let back: Vec<Rat> = ints
            .iter()
            .map(|c| Rat::from_integer(c.clone()) * &content)
            .collect();
        assert_eq!(Poly::from_coeffs(&qq, back), f);
        let _ = rat_i(0);
    }
}
