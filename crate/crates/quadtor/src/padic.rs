//! Hensel–Newton lifting of simple roots modulo prime powers, in `Z/p^k`
//! and in small unramified extensions, plus rational reconstruction.
//!
//! This is the workhorse behind exact root finding over `Q` and
//! `Q(sqrt(d))`: roots are located modulo a well-chosen prime, lifted to
//! high precision, reconstructed as rationals, and then verified exactly,
//! so no approximation ever leaks into results.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// `x mod m` normalized to `[0, m)`.
pub fn mod_pos(x: &BigInt, m: &BigInt) -> BigInt {
    let r = x % m;
    if r.is_negative() {
        r + m
    } else {
        r
    }
}

/// Symmetric (balanced) representative in `(-m/2, m/2]`.
pub fn mod_balanced(x: &BigInt, m: &BigInt) -> BigInt {
    let r = mod_pos(x, m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

fn eval_mod(f: &[BigInt], x: &BigInt, m: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    for c in f.iter().rev() {
        acc = mod_pos(&(&acc * x + c), m);
    }
    acc
}

fn deriv(f: &[BigInt]) -> Vec<BigInt> {
    f.iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigInt::from(i))
        .collect()
}

/// Modular inverse via extended Euclid; `None` if not coprime.
pub fn inv_mod(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let (mut r0, mut r1) = (m.clone(), mod_pos(a, m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while !r1.is_zero() {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        r0 = std::mem::replace(&mut r1, r2);
        let t2 = &t0 - &q * &t1;
        t0 = std::mem::replace(&mut t1, t2);
    }
    if r0.is_one() {
        Some(mod_pos(&t0, m))
    } else {
        None
    }
}

/// Lift a simple root `r0` of `f mod p` to a root of `f mod p^(2^ceil)` at
/// least as large as `target`. Returns `(root, modulus)`.
///
/// Precondition: `f(r0) = 0 (mod p)` and `f'(r0) != 0 (mod p)`.
pub fn lift_root(f: &[BigInt], r0: u64, p: u64, target: &BigInt) -> (BigInt, BigInt) {
    let fp = deriv(f);
    let p_big = BigInt::from(p);
    let mut modulus = p_big.clone();
    let mut r = BigInt::from(r0);
    debug_assert!(eval_mod(f, &r, &modulus).is_zero());
    let mut z = inv_mod(&eval_mod(&fp, &r, &modulus), &modulus)
        .expect("root is not simple mod p");
    while modulus < *target {
        modulus = &modulus * &modulus;
        // Newton step for the root, then for the cached inverse derivative
        let fr = eval_mod(f, &r, &modulus);
        r = mod_pos(&(&r - &fr * &z), &modulus);
        let fpr = eval_mod(&fp, &r, &modulus);
        z = mod_pos(&(&z * (BigInt::from(2) - &fpr * &z)), &modulus);
    }
    debug_assert!(eval_mod(f, &r, &modulus).is_zero());
    (r, modulus)
}

/// Rational reconstruction: the unique `n/w = r (mod m)` with
/// `|n| <= num_bound`, `0 < w <= den_bound`, `gcd(w, m) = 1`, provided
/// `2 * num_bound * den_bound < m`. Returns `None` when no such fraction
/// exists.
pub fn rational_reconstruct(
    r: &BigInt,
    m: &BigInt,
    num_bound: &BigInt,
    den_bound: &BigInt,
) -> Option<(BigInt, BigInt)> {
    let (mut r0, mut r1) = (m.clone(), mod_pos(r, m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > *num_bound {
        if r1.is_zero() {
            return None;
        }
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        r0 = std::mem::replace(&mut r1, r2);
        let t2 = &t0 - &q * &t1;
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > *den_bound {
        return None;
    }
    let (mut num, mut den) = (r1, t1);
    if den.is_negative() {
        num = -num;
        den = -den;
    }
    let g = num_integer::gcd(num.clone(), den.clone());
    if !g.is_one() {
        // not in lowest terms means the congruence has a spurious factor
        num /= &g;
        den /= &g;
    }
    if !num_integer::gcd(den.clone(), m.clone()).is_one() {
        return None;
    }
    Some((num, den))
}

/// The unramified extension ring `R = Z[y] / (p^k, mu(y))` for a monic
/// `mu` irreducible mod `p`. Elements are coefficient vectors of length
/// `deg mu` with entries in `[0, p^k)`.
pub struct UnramifiedCtx {
    pub p: BigInt,
    pub modulus: BigInt,
    /// Monic integral lift of the residue-field modulus, ascending.
    pub mu: Vec<BigInt>,
    pub m: usize,
}

pub type ExtElem = Vec<BigInt>;

impl UnramifiedCtx {
    pub fn new(p: u64, mu: Vec<BigInt>, target: &BigInt) -> UnramifiedCtx {
        let m = mu.len() - 1;
        assert!(mu[m].is_one());
        let p_big = BigInt::from(p);
        let mut modulus = p_big.clone();
        while modulus < *target {
            modulus = &modulus * &modulus;
        }
        UnramifiedCtx { p: p_big, modulus, mu, m }
    }

    pub fn zero(&self) -> ExtElem {
        vec![BigInt::zero(); self.m]
    }

    pub fn from_int(&self, n: &BigInt) -> ExtElem {
        let mut e = self.zero();
        e[0] = mod_pos(n, &self.modulus);
        e
    }

    /// The class of `y`.
    pub fn gen(&self) -> ExtElem {
        let mut e = self.zero();
        if self.m > 1 {
            e[1] = BigInt::one();
        } else {
            // degree-1 mu: y = -mu[0]
            e[0] = mod_pos(&(-&self.mu[0]), &self.modulus);
        }
        e
    }

    pub fn add(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        (0..self.m)
            .map(|i| mod_pos(&(&a[i] + &b[i]), &self.modulus))
            .collect()
    }

    pub fn sub(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        (0..self.m)
            .map(|i| mod_pos(&(&a[i] - &b[i]), &self.modulus))
            .collect()
    }

    pub fn mul(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        let mut prod = vec![BigInt::zero(); 2 * self.m - 1];
        for i in 0..self.m {
            if a[i].is_zero() {
                continue;
            }
            for j in 0..self.m {
                let t = &a[i] * &b[j];
                prod[i + j] = mod_pos(&(&prod[i + j] + t), &self.modulus);
            }
        }
        // reduce by monic mu
        for i in (self.m..prod.len()).rev() {
            if prod[i].is_zero() {
                continue;
            }
            let c = prod[i].clone();
            prod[i] = BigInt::zero();
            for j in 0..self.m {
                let t = &c * &self.mu[j];
                prod[i - self.m + j] = mod_pos(&(&prod[i - self.m + j] - t), &self.modulus);
            }
        }
        prod.truncate(self.m);
        prod
    }

    pub fn is_zero_mod_p(&self, a: &ExtElem) -> bool {
        a.iter().all(|c| mod_pos(c, &self.p).is_zero())
    }

    /// Inverse of a unit (nonzero residue), by lifting the residue-field
    /// inverse with `z -> z(2 - az)`.
    pub fn inv(&self, a: &ExtElem) -> Option<ExtElem> {
        if self.is_zero_mod_p(a) {
            return None;
        }
        // inverse in F_{p^m} by brute Euclid on polynomials mod p
        let mut z = self.residue_inv(a)?;
        let mut prec = self.p.clone();
        while prec < self.modulus {
            prec = &prec * &prec;
            let az = self.mul(a, &z);
            let mut two_minus = self.zero();
            two_minus[0] = BigInt::from(2);
            let two_minus = self.sub(&two_minus, &az);
            z = self.mul(&z, &two_minus);
        }
        Some(z)
    }

    fn residue_inv(&self, a: &ExtElem) -> Option<ExtElem> {
        // extended Euclid in F_p[y] between mu and a
        let p = &self.p;
        let reduce = |v: &[BigInt]| -> Vec<BigInt> {
            let mut out: Vec<BigInt> = v.iter().map(|c| mod_pos(c, p)).collect();
            while out.last().map_or(false, |c| c.is_zero()) {
                out.pop();
            }
            out
        };
        let mut r0 = reduce(&self.mu);
        let mut r1 = reduce(a);
        let mut t0: Vec<BigInt> = vec![];
        let mut t1 = vec![BigInt::one()];
        while !r1.is_empty() {
            // divide r0 by r1 mod p
            let mut rem = r0.clone();
            let mut q = vec![BigInt::zero(); rem.len().saturating_sub(r1.len() - 1).max(1)];
            let lead_inv = inv_mod(r1.last().unwrap(), p)?;
            while rem.len() >= r1.len() && !rem.is_empty() {
                let shift = rem.len() - r1.len();
                let c = mod_pos(&(rem.last().unwrap() * &lead_inv), p);
                if q.len() <= shift {
                    q.resize(shift + 1, BigInt::zero());
                }
                q[shift] = c.clone();
                for (i, rc) in r1.iter().enumerate() {
                    let t = &c * rc;
                    rem[shift + i] = mod_pos(&(&rem[shift + i] - t), p);
                }
                while rem.last().map_or(false, |c| c.is_zero()) {
                    rem.pop();
                }
            }
            let t2 = poly_sub_mul_mod(&t0, &q, &t1, p);
            r0 = std::mem::replace(&mut r1, rem);
            t0 = std::mem::replace(&mut t1, t2);
        }
        if r0.len() != 1 {
            return None;
        }
        let c = inv_mod(&r0[0], p)?;
        let mut out = self.zero();
        for (i, v) in t0.iter().enumerate() {
            if i < self.m {
                out[i] = mod_pos(&(v * &c), p);
            }
        }
        Some(out)
    }

    pub fn eval_poly(&self, f: &[BigInt], x: &ExtElem) -> ExtElem {
        let mut acc = self.zero();
        for c in f.iter().rev() {
            acc = self.mul(&acc, x);
            acc[0] = mod_pos(&(&acc[0] + c), &self.modulus);
        }
        acc
    }

    /// Newton-lift the root `y` of `f` (simple mod p) to full precision.
    pub fn lift_gen_root(&self, f: &[BigInt]) -> Option<ExtElem> {
        let fp: Vec<BigInt> = deriv(f);
        let mut r = self.gen();
        if !self.is_zero_mod_p(&self.eval_poly(f, &r)) {
            return None;
        }
        let mut z = self.inv(&self.eval_poly(&fp, &r))?;
        let mut prec = self.p.clone();
        while prec < self.modulus {
            prec = &prec * &prec;
            let fr = self.eval_poly(f, &r);
            r = self.sub(&r, &self.mul(&fr, &z));
            let fpr = self.eval_poly(&fp, &r);
            let az = self.mul(&fpr, &z);
            let mut two = self.zero();
            two[0] = BigInt::from(2);
            z = self.mul(&z, &self.sub(&two, &az));
        }
        if self.eval_poly(f, &r).iter().all(|c| c.is_zero()) {
            Some(r)
        } else {
            None
        }
    }

    /// Characteristic polynomial of multiplication by `r` on `R` as a free
    /// `Z/p^k` module (degree `m <= 3`), ascending coefficients, monic.
    pub fn charpoly(&self, r: &ExtElem) -> Vec<BigInt> {
        let m = self.m;
        let md = &self.modulus;
        // columns: r * y^j
        let mut cols: Vec<ExtElem> = Vec::with_capacity(m);
        let mut basis = self.from_int(&BigInt::one());
        for _ in 0..m {
            cols.push(self.mul(r, &basis));
            basis = self.mul(&basis, &self.gen());
        }
        let a = |i: usize, j: usize| cols[j][i].clone();
        match m {
            1 => vec![mod_pos(&-a(0, 0), md), BigInt::one()],
            2 => {
                let tr = mod_pos(&(a(0, 0) + a(1, 1)), md);
                let det = mod_pos(&(a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0)), md);
                vec![det, mod_pos(&-tr, md), BigInt::one()]
            }
            3 => {
                let tr = mod_pos(&(a(0, 0) + a(1, 1) + a(2, 2)), md);
                let c2 = mod_pos(
                    &(a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0) + a(0, 0) * a(2, 2)
                        - a(0, 2) * a(2, 0)
                        + a(1, 1) * a(2, 2)
                        - a(1, 2) * a(2, 1)),
                    md,
                );
                let det = mod_pos(
                    &(a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1))
                        - a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0))
                        + a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0))),
                    md,
                );
                vec![mod_pos(&-det, md), c2, mod_pos(&-tr, md), BigInt::one()]
            }
            _ => panic!("charpoly only implemented for m <= 3"),
        }
    }
}

fn poly_sub_mul_mod(a: &[BigInt], q: &[BigInt], b: &[BigInt], p: &BigInt) -> Vec<BigInt> {
    // a - q*b, coefficients mod p
    let mut out = vec![BigInt::zero(); a.len().max(q.len() + b.len())];
    for (i, c) in a.iter().enumerate() {
        out[i] = c.clone();
    }
    for (i, qc) in q.iter().enumerate() {
        if qc.is_zero() {
            continue;
        }
        for (j, bc) in b.iter().enumerate() {
            let t = qc * bc;
            out[i + j] = mod_pos(&(&out[i + j] - t), p);
        }
    }
    for c in out.iter_mut() {
        *c = mod_pos(c, p);
    }
    while out.last().map_or(false, |c| c.is_zero()) {
        out.pop();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn lift_and_reconstruct_rational_root() {
        // f = 6x^2 - x - 2 has roots 2/3 and -1/2
        let f = vec![big(-2), big(-1), big(6)];
        let target = big(10_000_000);
        // mod 5: 6x^2 - x - 2 = x^2 - x + 3; roots: x=4 (16-4+3=15=0 mod 5), x=2 (4-2+3=5=0)
        let (r, m) = lift_root(&f, 4, 5, &target);
        let (num, den) = rational_reconstruct(&r, &m, &big(100), &big(100)).unwrap();
        assert!(
            (num == big(2) && den == big(3)) || (num == big(-1) && den == big(2)),
            "got {num}/{den}"
        );
        let (r2, m2) = lift_root(&f, 2, 5, &target);
        let (num2, den2) = rational_reconstruct(&r2, &m2, &big(100), &big(100)).unwrap();
        assert_ne!((num, den), (num2, den2));
    }

    #[test]
    fn sqrt_17_lifts_mod_powers_of_13() {
        // 17 = 2 mod 13 is a QR (6^2 = 36 = 10, 8^2 = 64 = 12, ... try: 17 mod 13 = 4, sqrt = 2)
        let f = vec![big(-17), big(0), big(1)];
        let (r, m) = lift_root(&f, 2, 13, &(big(1) << 64));
        assert!((&r * &r - big(17)) % &m == BigInt::zero());
    }

    #[test]
    fn extension_ring_inverse_and_charpoly() {
        // R = Z[y]/(7^k, y^2 + 1); y is sqrt(-1)
        let mu = vec![big(1), big(0), big(1)];
        let ctx = UnramifiedCtx::new(7, mu, &big(1_000_000_000));
        let y = ctx.gen();
        let y2 = ctx.mul(&y, &y);
        assert_eq!(y2[0], &ctx.modulus - 1u32);
        assert!(y2[1].is_zero());
        let inv = ctx.inv(&y).unwrap();
        let prod = ctx.mul(&y, &inv);
        assert_eq!(prod[0], BigInt::one());
        assert!(prod[1].is_zero());
        // charpoly of y is y^2 + 1 itself
        let cp = ctx.charpoly(&y);
        assert_eq!(cp, vec![big(1), big(0), big(1)]);
    }

    #[test]
    fn lift_root_in_extension() {
        // g = x^2 - 2: irreducible mod 5; lift y in Z[y]/(5^k, y^2 - 2)
        let mu = vec![big(-2), big(0), big(1)];
        let ctx = UnramifiedCtx::new(5, mu, &(big(1) << 40));
        let g = vec![big(-2), big(0), big(1)];
        let r = ctx.lift_gen_root(&g).unwrap();
        let r2 = ctx.mul(&r, &r);
        assert_eq!(r2[0], big(2));
        assert!(r2[1].is_zero());
        let cp = ctx.charpoly(&r);
        // charpoly = x^2 - 2 mod 5^k
        assert_eq!(cp[2], BigInt::one());
        assert!(cp[1].is_zero());
        assert_eq!(mod_balanced(&cp[0], &ctx.modulus), big(-2));
    }

    #[test]
    fn balanced_representatives() {
        assert_eq!(mod_balanced(&big(7), &big(10)), big(-3));
        assert_eq!(mod_balanced(&big(5), &big(10)), big(5));
        assert_eq!(mod_balanced(&big(-13), &big(10)), big(-3));
    }
}
