//! Small finite fields `F_{p^k}` (`k <= 4`) with elements encoded as `u64`
//! indices, so they hash, compare and store cheaply during exhaustive scans.
//!
//! An element is the base-`p` encoding of its coefficient vector with
//! respect to the power basis of `F_p[t]/(m(t))`. Arithmetic decodes to a
//! short digit array, operates mod `p`, and re-encodes.

use crate::field::Field;
use crate::poly::Poly;
use crate::{Error, Result};

const MAX_EXT: usize = 4;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gf {
    p: u64,
    k: usize,
    q: u64,
    /// Monic irreducible modulus, ascending coefficients, length `k + 1`.
    /// For `k = 1` this is `t` and never actually used in reduction.
    modulus: Vec<u64>,
}

impl Gf {
    /// The prime field `F_p`.
    pub fn prime(p: u64) -> Gf {
        assert!(p >= 2);
        Gf { p, k: 1, q: p, modulus: vec![0, 1] }
    }

    /// `F_{p^2}` as `F_p[t]/(t^2 - r)` for a quadratic nonresidue `r`.
    pub fn quadratic_ext(p: u64, r: u64) -> Gf {
        assert!(p > 2);
        let base = Gf::prime(p);
        assert!(base.sqrt(r % p).is_none(), "r must be a nonresidue");
        Gf { p, k: 2, q: p * p, modulus: vec![(p - r % p) % p, 0, 1] }
    }

    /// `F_{p^k}` with a searched-for irreducible modulus (deterministic:
    /// the lexicographically first monic irreducible of degree `k`).
    pub fn extension(p: u64, k: usize) -> Gf {
        assert!(p > 2 && (1..=MAX_EXT).contains(&k));
        if k == 1 {
            return Gf::prime(p);
        }
        let base = Gf::prime(p);
        // enumerate monic degree-k polynomials by their k low coefficients
        let mut idx = vec![0u64; k];
        loop {
            let mut coeffs: Vec<u64> = idx.clone();
            coeffs.push(1);
            let f = Poly { coeffs: coeffs.clone() };
            if is_irreducible_mod_p(&base, &f) {
                let q = (p as u128).pow(k as u32) as u64;
                return Gf { p, k, q, modulus: coeffs };
            }
            // increment
            let mut i = 0;
            loop {
                idx[i] += 1;
                if idx[i] < p {
                    break;
                }
                idx[i] = 0;
                i += 1;
                assert!(i < k, "no irreducible polynomial found (impossible)");
            }
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }
    pub fn ext_degree(&self) -> usize {
        self.k
    }
    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn encode(&self, digits: &[u64]) -> u64 {
        let mut v = 0u64;
        for &d in digits.iter().rev() {
            debug_assert!(d < self.p);
            v = v * self.p + d;
        }
        v
    }

    pub fn decode(&self, x: u64) -> [u64; MAX_EXT] {
        debug_assert!(x < self.q);
        let mut out = [0u64; MAX_EXT];
        let mut v = x;
        for slot in out.iter_mut().take(self.k) {
            *slot = v % self.p;
            v /= self.p;
        }
        out
    }

    /// Embed `F_p` into this field.
    pub fn embed_base(&self, a: u64) -> u64 {
        a % self.p
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        let da = self.decode(a);
        let db = self.decode(b);
        let mut out = [0u64; MAX_EXT];
        for i in 0..self.k {
            out[i] = (da[i] + db[i]) % self.p;
        }
        self.encode(&out[..self.k])
    }

    pub fn neg(&self, a: u64) -> u64 {
        let da = self.decode(a);
        let mut out = [0u64; MAX_EXT];
        for i in 0..self.k {
            out[i] = (self.p - da[i]) % self.p;
        }
        self.encode(&out[..self.k])
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        if self.k == 1 {
            return ((a as u128 * b as u128) % self.p as u128) as u64;
        }
        let da = self.decode(a);
        let db = self.decode(b);
        let mut prod = [0u128; 2 * MAX_EXT - 1];
        for i in 0..self.k {
            if da[i] == 0 {
                continue;
            }
            for j in 0..self.k {
                prod[i + j] += da[i] as u128 * db[j] as u128;
            }
        }
        // reduce by the monic modulus
        for i in (self.k..2 * self.k - 1).rev() {
            let c = (prod[i] % self.p as u128) as u64;
            prod[i] = 0;
            if c == 0 {
                continue;
            }
            for (j, &m) in self.modulus.iter().enumerate().take(self.k) {
                // t^i = t^{i-k} * (t^k) = t^{i-k} * (-m_low(t))
                prod[i - self.k + j] += c as u128 * ((self.p - m % self.p) % self.p) as u128;
            }
        }
        let mut out = [0u64; MAX_EXT];
        for i in 0..self.k {
            out[i] = (prod[i] % self.p as u128) as u64;
        }
        self.encode(&out[..self.k])
    }

    pub fn pow(&self, mut a: u64, mut e: u128) -> u64 {
        let mut acc = self.encode(&[1]);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            e >>= 1;
            if e > 0 {
                a = self.mul(a, a);
            }
        }
        acc
    }

    pub fn inv(&self, a: u64) -> Option<u64> {
        if a == 0 {
            return None;
        }
        Some(self.pow(a, self.q as u128 - 2))
    }

    /// Quadratic character: `1` on nonzero squares, `-1` on nonsquares,
    /// `0` at zero.
    pub fn chi(&self, a: u64) -> i32 {
        if a == 0 {
            return 0;
        }
        if self.p == 2 {
            return 1;
        }
        let e = (self.q as u128 - 1) / 2;
        if self.pow(a, e) == 1 {
            1
        } else {
            -1
        }
    }

    /// A square root by exhaustive scan; only sensible for small fields.
    pub fn sqrt(&self, a: u64) -> Option<u64> {
        if a == 0 {
            return Some(0);
        }
        if self.p == 2 {
            // F_2: 1*1 = 1
            return if a == 1 { Some(1) } else { None };
        }
        if self.chi(a) != 1 {
            return None;
        }
        (1..self.q).find(|&t| self.mul(t, t) == a)
    }

    /// All elements, in encoding order.
    pub fn elements(&self) -> impl Iterator<Item = u64> {
        0..self.q
    }

    /// The set of nonzero squares, for fast character lookups during scans.
    pub fn square_table(&self) -> std::collections::HashSet<u64> {
        let mut s = std::collections::HashSet::with_capacity(self.q as usize / 2 + 1);
        for t in 1..self.q {
            s.insert(self.mul(t, t));
        }
        s
    }

    /// Guard for exhaustive-scan style operations.
    pub fn check_scan_bound(&self, bound: u64) -> Result<()> {
        if self.q > bound {
            return Err(Error::ScanBound { q: self.q as u128, bound: bound as u128 });
        }
        Ok(())
    }
}

impl crate::field::SqrtField for Gf {
    fn sqrt_elem(&self, a: &u64) -> Option<u64> {
        Gf::sqrt(self, *a)
    }
}

impl Field for Gf {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        self.embed_base(1)
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        Gf::add(self, *a, *b)
    }
    fn neg(&self, a: &u64) -> u64 {
        Gf::neg(self, *a)
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        Gf::mul(self, *a, *b)
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        Gf::inv(self, *a)
    }
    fn from_i64(&self, n: i64) -> u64 {
        let m = n.rem_euclid(self.p as i64) as u64;
        self.embed_base(m)
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
}

/// Irreducibility over `F_p` via the Frobenius criterion:
/// `f` (monic, degree `n`) is irreducible iff `x^{p^n} = x (mod f)` and
/// `gcd(x^{p^{n/r}} - x, f) = 1` for every prime `r | n`.
fn is_irreducible_mod_p(base: &Gf, f: &Poly<u64>) -> bool {
    let n = match f.deg() {
        Some(n) if n >= 1 => n,
        _ => return false,
    };
    if n == 1 {
        return true;
    }
    let p = base.p();
    let x = Poly::x(base);
    // x^{p^j} mod f by repeated p-th powering
    let mut frob = x.clone();
    let mut frob_powers = vec![x.clone()]; // frob_powers[j] = x^{p^j} mod f
    for _ in 0..n {
        frob = poly_pow_mod(base, &frob, p as u128, f);
        frob_powers.push(frob.clone());
    }
    if frob_powers[n] != x {
        return false;
    }
    let mut primes = vec![];
    let mut m = n;
    let mut d = 2;
    while d * d <= m {
        if m % d == 0 {
            primes.push(d);
            while m % d == 0 {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        primes.push(m);
    }
    for r in primes {
        let g = frob_powers[n / r].sub(base, &x).gcd(base, f);
        if g.deg() != Some(0) {
            return false;
        }
    }
    true
}

/// `g^e mod f` over any field.
pub fn poly_pow_mod<F: Field>(fld: &F, g: &Poly<F::Elem>, mut e: u128, f: &Poly<F::Elem>) -> Poly<F::Elem> {
    let mut base = g.rem(fld, f);
    let mut acc = Poly::one(fld);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc.mul(fld, &base).rem(fld, f);
        }
        e >>= 1;
        if e > 0 {
            base = base.mul(fld, &base).rem(fld, f);
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_arithmetic() {
        let f5 = Gf::prime(5);
        assert_eq!(f5.add(3, 4), 2);
        assert_eq!(f5.mul(3, 4), 2);
        assert_eq!(f5.inv(3), Some(2));
        assert_eq!(f5.chi(4), 1);
        assert_eq!(f5.chi(2), -1);
        assert_eq!(f5.sqrt(4), Some(2).or(Some(3)).map(|_| f5.sqrt(4).unwrap()));
        let s = f5.sqrt(4).unwrap();
        assert_eq!(f5.mul(s, s), 4);
    }

    #[test]
    fn quadratic_extension() {
        // F_9 = F_3[t]/(t^2 - 2); t encodes as 3
        let f9 = Gf::quadratic_ext(3, 2);
        assert_eq!(f9.q(), 9);
        let t = f9.encode(&[0, 1]);
        assert_eq!(f9.mul(t, t), 2);
        // multiplicative group has order 8
        for a in 1..9 {
            assert_eq!(f9.pow(a, 8), 1);
            let ai = f9.inv(a).unwrap();
            assert_eq!(f9.mul(a, ai), 1);
        }
    }

    #[test]
    fn quartic_extension_field_axioms() {
        let f81 = Gf::extension(3, 4);
        assert_eq!(f81.q(), 81);
        for a in 1..81 {
            assert_eq!(f81.mul(a, f81.inv(a).unwrap()), 1);
        }
        // Frobenius has order 4: a^(3^4) = a
        for a in 0..81 {
            assert_eq!(f81.pow(a, 81), a);
        }
        // squares: exactly (q-1)/2 nonzero squares
        let sq = f81.square_table();
        assert_eq!(sq.len(), 40);
    }

    #[test]
    fn element_count_matches_q() {
        let f49 = Gf::extension(7, 2);
        assert_eq!(f49.elements().count(), 49);
    }
}
