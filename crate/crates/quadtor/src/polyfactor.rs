//! Root finding and factorization for the polynomials the pipeline meets:
//! arbitrary-degree root extraction in `Q` and `Q(sqrt(d))` (division
//! polynomials get large), and full factorization over `Q` and `K` for
//! degree at most 6 (curve and cusp polynomials).
//!
//! The strategy throughout: locate roots or factors modulo a well-chosen
//! prime, Hensel–Newton lift, reconstruct exact rational data, and verify by
//! exact division. The lifting precision is driven by explicit coefficient
//! bounds (a factor of `f` of degree `k` has coefficients bounded by
//! `2^k * |f|_2`, Mignotte-style, times the leading coefficient for
//! denominators), so the search is exhaustive, not heuristic.

use crate::field::{rat_sqrt, Field, Rat, Rationals};
use crate::gf::Gf;
use crate::padic::{lift_root, mod_balanced, rational_reconstruct, UnramifiedCtx};
use crate::poly::{primitive_integer_coeffs, Poly};
use crate::qfield::{QuadElem, QuadField};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

const QQ: Rationals = Rationals;

/// Factorization over `Q`: `constant * prod factors[i]^mult[i]` with monic
/// irreducible factors, sorted by (degree, coefficients).
#[derive(Clone, Debug, PartialEq)]
pub struct FactorListQ {
    pub constant: Rat,
    pub factors: Vec<(Poly<Rat>, usize)>,
}

/// Factorization over `K = Q(sqrt(d))`, same conventions.
#[derive(Clone, Debug, PartialEq)]
pub struct FactorListK {
    pub constant: QuadElem,
    pub factors: Vec<(Poly<QuadElem>, usize)>,
}

impl FactorListQ {
    pub fn product(&self) -> Poly<Rat> {
        let mut acc = Poly::constant(&QQ, self.constant.clone());
        for (f, m) in &self.factors {
            acc = acc.mul(&QQ, &f.pow(&QQ, *m as u64));
        }
        acc
    }
}

impl FactorListK {
    pub fn product(&self, k: &QuadField) -> Poly<QuadElem> {
        let mut acc = Poly::constant(k, self.constant.clone());
        for (f, m) in &self.factors {
            acc = acc.mul(k, &f.pow(k, *m as u64));
        }
        acc
    }
}

/// `ceil(sqrt(sum a_i^2))` for integer coefficients.
fn l2_norm_ceil(coeffs: &[BigInt]) -> BigInt {
    let s: BigInt = coeffs.iter().map(|c| c * c).sum();
    let r = s.sqrt();
    if &r * &r == s {
        r
    } else {
        r + 1
    }
}

/// Mignotte-style bound on the coefficients of a monic factor of degree
/// `k` of the primitive polynomial with the given coefficients, as
/// rationals with denominator dividing the leading coefficient:
/// numerators bounded by `2^k * |f|_2 * |lc|`, denominators by `|lc|`.
fn factor_coeff_bounds(ints: &[BigInt], k: usize) -> (BigInt, BigInt) {
    let lc = ints.last().unwrap().abs();
    let nb = (BigInt::one() << k) * l2_norm_ceil(ints) * &lc + 1;
    (nb, lc)
}

fn reduce_int_poly(ints: &[BigInt], gfp: &Gf) -> Poly<u64> {
    let p = BigInt::from(gfp.p());
    let coeffs: Vec<u64> = ints
        .iter()
        .map(|c| {
            use num_traits::ToPrimitive;
            crate::padic::mod_pos(c, &p).to_u64().unwrap()
        })
        .collect();
    Poly::from_coeffs(gfp, coeffs)
}

/// Smallest odd prime at which the squarefree integer polynomial keeps its
/// degree and stays squarefree (and optionally where `d` is a nonzero
/// square).
fn good_prime(ints: &[BigInt], split_in: Option<i64>, skip: usize) -> u64 {
    good_prime_bounded(ints, split_in, skip, usize::MAX).unwrap()
}

/// Like [`good_prime`] but giving up after scanning `tries` primes; a
/// polynomial that is squarefree over `Q` passes at all but finitely many
/// primes, so a miss after many tries signals a repeated factor.
fn good_prime_bounded(
    ints: &[BigInt],
    split_in: Option<i64>,
    skip: usize,
    tries: usize,
) -> Option<u64> {
    let mut found = 0usize;
    let mut p = 3u64;
    let mut tried = 0usize;
    loop {
        if is_prime_u64(p) {
            tried += 1;
            if tried > tries {
                return None;
            }
            if check_prime(ints, split_in, p) {
                if found == skip {
                    return Some(p);
                }
                found += 1;
            }
        }
        p += 2;
    }
}

fn check_prime(ints: &[BigInt], split_in: Option<i64>, p: u64) -> bool {
    let lc = ints.last().unwrap();
    if (lc % BigInt::from(p)).is_zero() {
        return false;
    }
    if let Some(d) = split_in {
        let dm = d.rem_euclid(p as i64) as u64;
        if dm == 0 {
            return false;
        }
        let gfp = Gf::prime(p);
        if gfp.chi(dm) != 1 {
            return false;
        }
    }
    let gfp = Gf::prime(p);
    let fbar = reduce_int_poly(ints, &gfp);
    if fbar.degi() as usize != ints.len() - 1 {
        return false;
    }
    fbar.is_squarefree(&gfp)
}

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// All roots of `f mod p` by scanning, distinct values only.
fn roots_mod_p_scan(gfp: &Gf, f: &Poly<u64>) -> Vec<u64> {
    gfp.elements()
        .filter(|x| gfp.is_zero(&f.eval(gfp, x)))
        .collect()
}

/// Rational roots of a nonzero rational polynomial, with multiplicities.
pub fn rational_roots(f: &Poly<Rat>) -> Result<Vec<(Rat, usize)>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.deg() == Some(0) {
        return Ok(vec![]);
    }
    let mut out: Vec<(Rat, usize)> = Vec::new();
    // strip powers of x
    let mut work = f.clone();
    let mut zero_mult = 0usize;
    while work.coeffs[0].is_zero() {
        work = Poly::from_coeffs(&QQ, work.coeffs[1..].to_vec());
        zero_mult += 1;
    }
    if zero_mult > 0 {
        out.push((Rat::zero(), zero_mult));
    }
    if work.deg().unwrap_or(0) == 0 {
        return Ok(out);
    }
    // try the polynomial as-is first: squarefree over Q passes the mod-p
    // squarefree screen quickly, and the expensive rational gcd is only
    // needed when there genuinely are repeated factors
    let (_, mut ints) = primitive_integer_coeffs(&work);
    let mut p = good_prime_bounded(&ints, None, 0, 40);
    if p.is_none() {
        let g = work.squarefree_part_rat();
        let (_, gi) = primitive_integer_coeffs(&g);
        ints = gi;
        p = Some(good_prime(&ints, None, 0));
    }
    if ints.len() == 2 {
        // linear: the root is immediate
        let r = -Rat::new(ints[0].clone(), ints[1].clone());
        out.push((r.clone(), multiplicity(&work, &linear(&r))));
        out.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        return Ok(out);
    }
    let p = p.unwrap();
    let gfp = Gf::prime(p);
    let gbar = reduce_int_poly(&ints, &gfp);
    let modp_roots = roots_mod_p_scan(&gfp, &gbar);
    if modp_roots.is_empty() {
        out.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        return Ok(out);
    }
    let (nb, db) = factor_coeff_bounds(&ints, 1);
    let target = BigInt::from(2) * &nb * &db + 1;
    for r0 in modp_roots {
        let (r, m) = lift_root(&ints, r0, p, &target);
        if let Some((num, den)) = rational_reconstruct(&r, &m, &nb, &db) {
            let cand = Rat::new(num, den);
            if f.eval(&QQ, &cand).is_zero() && !out.iter().any(|(x, _)| *x == cand) {
                let mult = multiplicity(&work, &linear(&cand));
                out.push((cand, mult));
            }
        }
    }
    out.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    Ok(out)
}

fn linear(r: &Rat) -> Poly<Rat> {
    Poly::from_coeffs(&QQ, vec![-r.clone(), Rat::one()])
}

fn multiplicity(f: &Poly<Rat>, g: &Poly<Rat>) -> usize {
    let mut count = 0;
    let mut work = f.clone();
    loop {
        let (q, r) = work.divrem(&QQ, g);
        if !r.is_zero() {
            return count;
        }
        count += 1;
        work = q;
        if work.is_zero() || work.deg() < g.deg() {
            return count;
        }
    }
}

/// Monic quadratic factors of `f` over `Q` whose discriminant lies in
/// `d * (Q^x)^2`, i.e. whose roots generate `Q(sqrt(d))`. Works for any
/// degree; this is how division-polynomial roots in `K` are located.
///
/// Implementation: at a prime `p` split in `Q(sqrt(d))`, the two conjugate
/// roots of such a factor reduce to distinct simple roots of `f mod p`;
/// lift every mod-`p` root, and for every pair reconstruct the candidate
/// trace and norm, then verify by exact division.
pub fn quadratic_factors_in_d(f: &Poly<Rat>, d: i64) -> Result<Vec<(Poly<Rat>, usize)>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.degi() < 2 {
        return Ok(vec![]);
    }
    let (_, mut ints) = primitive_integer_coeffs(f);
    let mut p = good_prime_bounded(&ints, Some(d), 0, 40);
    let g = if let Some(_) = p {
        f.monic(&QQ)
    } else {
        let g = f.squarefree_part_rat();
        if g.degi() < 2 {
            return Ok(vec![]);
        }
        let (_, gi) = primitive_integer_coeffs(&g);
        ints = gi;
        p = Some(good_prime(&ints, Some(d), 0));
        g
    };
    let p = p.unwrap();
    let gfp = Gf::prime(p);
    let gbar = reduce_int_poly(&ints, &gfp);
    let modp_roots = roots_mod_p_scan(&gfp, &gbar);
    if modp_roots.len() < 2 {
        return Ok(vec![]);
    }
    let (nb, db) = factor_coeff_bounds(&ints, 2);
    let target = BigInt::from(2) * &nb * &db + 1;
    let lifted: Vec<BigInt> = modp_roots
        .iter()
        .map(|&r0| lift_root(&ints, r0, p, &target).0)
        .collect();
    let modulus = {
        // same target in every call, so recompute the actual modulus
        let mut m = BigInt::from(p);
        while m < target {
            m = &m * &m;
        }
        m
    };
    let d_big = BigInt::from(d);
    let mut out: Vec<(Poly<Rat>, usize)> = Vec::new();
    for i in 0..lifted.len() {
        for j in (i + 1)..lifted.len() {
            let s_mod = crate::padic::mod_pos(&(&lifted[i] + &lifted[j]), &modulus);
            let t_mod = crate::padic::mod_pos(&(&lifted[i] * &lifted[j]), &modulus);
            let s = match rational_reconstruct(&s_mod, &modulus, &nb, &db) {
                Some((n, w)) => -Rat::new(n, w),
                None => continue,
            };
            let t = match rational_reconstruct(&t_mod, &modulus, &nb, &db) {
                Some((n, w)) => Rat::new(n, w),
                None => continue,
            };
            let cand = Poly::from_coeffs(&QQ, vec![t, s.clone(), Rat::one()]);
            let disc = &s * &s - Rat::from_integer(BigInt::from(4)) * &cand.coeffs[0];
            let ratio = &disc / Rat::from_integer(d_big.clone());
            if ratio.is_positive()
                && rat_sqrt(&ratio).is_some()
                && cand.divides(&QQ, &g)
                && !out.iter().any(|(q, _)| *q == cand)
            {
                let mult = multiplicity(f, &cand);
                out.push((cand, mult));
            }
        }
    }
    out.sort_by(|a, b| a.0.coeffs[0].partial_cmp(&b.0.coeffs[0]).unwrap()
        .then(a.0.coeffs[1].partial_cmp(&b.0.coeffs[1]).unwrap()));
    Ok(out)
}

/// The roots of a rational polynomial lying in `K = Q(sqrt(d))`, with
/// multiplicities. Rational roots come from the rational-root machinery;
/// genuinely quadratic roots from the quadratic factors with discriminant
/// in `d * (Q^x)^2`. Irreducible factors of higher degree cannot
/// contribute roots of degree at most 2.
pub fn roots_in_k(f: &Poly<Rat>, k: &QuadField) -> Result<Vec<(QuadElem, usize)>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut out: Vec<(QuadElem, usize)> = Vec::new();
    for (r, m) in rational_roots(f)? {
        out.push((k.from_rat(r), m));
    }
    for (q, m) in quadratic_factors_in_d(f, k.d())? {
        let s = &q.coeffs[1];
        let t = &q.coeffs[0];
        let disc = s * s - Rat::from_integer(BigInt::from(4)) * t;
        let w = rat_sqrt(&(&disc / Rat::from_integer(BigInt::from(k.d())))).unwrap();
        let half = crate::field::rat(1, 2);
        let a = -s * &half;
        let b = &w * &half;
        out.push((k.elem(a.clone(), b.clone()), m));
        out.push((k.elem(a, -b), m));
    }
    Ok(out)
}

/// Roots of `f` over `F_q` with multiplicity, by exhaustive scan.
/// `q` must be within the scan bound (10^6 by default).
pub fn roots_mod_q(gf: &Gf, f: &Poly<u64>) -> Result<Vec<u64>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    gf.check_scan_bound(1_000_000)?;
    let mut out = Vec::new();
    for x in gf.elements() {
        if gf.is_zero(&f.eval(gf, &x)) {
            // multiplicity by repeated division
            let lin = Poly::from_coeffs(gf, vec![gf.neg(x), gf.one()]);
            let mut work = f.clone();
            loop {
                let (q, r) = work.divrem(gf, &lin);
                if !r.is_zero() {
                    break;
                }
                out.push(x);
                work = q;
                if work.is_zero() {
                    break;
                }
            }
        }
    }
    Ok(out)
}

/// Complete monic irreducible factorization of `fbar` over `F_p` by
/// scanning for divisors of each degree; intended for degree at most 8
/// and small `p`.
fn factor_mod_p(gfp: &Gf, fbar: &Poly<u64>) -> Vec<Poly<u64>> {
    let mut rest = fbar.monic(gfp);
    let mut out = Vec::new();
    // linear factors
    for r in roots_mod_p_scan(gfp, &rest) {
        let lin = Poly::from_coeffs(gfp, vec![gfp.neg(r), gfp.one()]);
        while lin.divides(gfp, &rest) {
            out.push(lin.clone());
            rest = rest.exact_div(gfp, &lin);
        }
    }
    // quadratic factors
    if rest.degi() >= 2 {
        let p = gfp.p();
        'outer: loop {
            for b in 0..p {
                for c in 0..p {
                    let q = Poly::from_coeffs(gfp, vec![c, b, gfp.one()]);
                    if q.divides(gfp, &rest) && roots_mod_p_scan(gfp, &q).is_empty() {
                        out.push(q.clone());
                        rest = rest.exact_div(gfp, &q);
                        if rest.degi() >= 2 {
                            continue 'outer;
                        }
                    }
                }
            }
            break;
        }
    }
    // a remaining degree-6 part may be a product of two irreducible cubics
    if rest.degi() == 6 {
        let p = gfp.p();
        'cubic: for b in 0..p {
            for c in 0..p {
                for e in 0..p {
                    let q = Poly::from_coeffs(gfp, vec![e, c, b, gfp.one()]);
                    if q.divides(gfp, &rest) {
                        out.push(q.clone());
                        rest = rest.exact_div(gfp, &q);
                        break 'cubic;
                    }
                }
            }
        }
    }
    if rest.degi() >= 1 {
        out.push(rest);
    }
    out.sort_by_key(|f| (f.degi(), f.coeffs.clone()));
    out
}

/// Irreducible factorization over `Q` for degree at most 6.
///
/// Rational roots first; then monic quadratic and cubic factors found by
/// matching degree-2/3 divisor patterns of `f` modulo several primes,
/// combining them by CRT up to the Mignotte bound, and verifying each
/// candidate by exact division. What remains is irreducible.
pub fn factor_over_q(f: &Poly<Rat>) -> Result<FactorListQ> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    assert!(f.degi() <= 6, "factor_over_q is specified for degree <= 6");
    let mut constant = f.lc().clone();
    let mut factors: Vec<(Poly<Rat>, usize)> = Vec::new();
    let monic = f.monic(&QQ);

    // peel linear factors
    let mut rest = monic.clone();
    for (r, m) in rational_roots(&monic)? {
        let lin = linear(&r);
        factors.push((lin.clone(), m));
        for _ in 0..m {
            rest = rest.exact_div(&QQ, &lin);
        }
    }
    // peel quadratic then cubic factors off the (squarefree-per-factor) rest
    for degree in [2usize, 3] {
        loop {
            if rest.degi() < 2 * degree as i64 && rest.degi() != degree as i64 {
                break;
            }
            if rest.degi() == degree as i64 {
                break; // remaining factor of exactly this degree is irreducible iff no smaller factors; handled below
            }
            match find_monic_factor(&rest, degree)? {
                Some(g) => {
                    let m = multiplicity(&rest, &g);
                    factors.push((g.clone(), m));
                    for _ in 0..m {
                        rest = rest.exact_div(&QQ, &g);
                    }
                }
                None => break,
            }
        }
    }
    if rest.degi() >= 1 {
        factors.push((rest.clone(), 1));
        rest = Poly::one(&QQ);
    }
    let _ = rest;
    constant = constant * Rat::one();
    factors.sort_by_key(|(g, _)| (g.degi(), format!("{g:?}")));
    let fl = FactorListQ { constant, factors };
    debug_assert_eq!(fl.product(), *f, "factorization must reconstruct the input");
    Ok(fl)
}

/// Find one monic factor of exact degree `k` (2 or 3) of a monic rational
/// polynomial with no rational roots, or return `None`.
fn find_monic_factor(f: &Poly<Rat>, k: usize) -> Result<Option<Poly<Rat>>> {
    if f.degi() < k as i64 {
        return Ok(None);
    }
    let work = f.squarefree_part_rat();
    if work.degi() < k as i64 {
        return Ok(None);
    }
    let (_, ints) = primitive_integer_coeffs(&work);
    let (nb, db) = factor_coeff_bounds(&ints, k);
    let needed = BigInt::from(2) * &nb * &db + 1;
    // collect divisor lists modulo enough primes
    let mut primes: Vec<u64> = Vec::new();
    let mut modulus = BigInt::one();
    let mut skip = 0;
    while modulus < needed {
        let p = good_prime(&ints, None, skip);
        skip += 1;
        primes.push(p);
        modulus *= BigInt::from(p);
    }
    let mut divisor_lists: Vec<Vec<Poly<u64>>> = Vec::new();
    for &p in &primes {
        let gfp = Gf::prime(p);
        let fbar = reduce_int_poly(&ints, &gfp);
        let irred = factor_mod_p(&gfp, &fbar);
        let mut divisors: Vec<Poly<u64>> = Vec::new();
        // all subset products with total degree k
        let n = irred.len();
        for mask in 1u32..(1 << n) {
            let degsum: i64 = (0..n)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| irred[i].degi())
                .sum();
            if degsum == k as i64 {
                let mut prod = Poly::one(&gfp);
                for (i, g) in irred.iter().enumerate() {
                    if mask >> i & 1 == 1 {
                        prod = prod.mul(&gfp, g);
                    }
                }
                if !divisors.contains(&prod) {
                    divisors.push(prod);
                }
            }
        }
        if divisors.is_empty() {
            return Ok(None); // no degree-k divisor pattern mod p => none over Q
        }
        divisor_lists.push(divisors);
    }
    // CRT-combine one divisor choice per prime
    let mut indices = vec![0usize; primes.len()];
    loop {
        let mut coeffs_rat: Option<Vec<Rat>> = Some(Vec::new());
        for ci in 0..k {
            // CRT the ci-th coefficient across primes
            let mut x = BigInt::zero();
            let mut m = BigInt::one();
            for (pi, &p) in primes.iter().enumerate() {
                let c = divisor_lists[pi][indices[pi]].coeff(&Gf::prime(p), ci);
                let p_big = BigInt::from(p);
                // x' = x mod m, c mod p
                let (g, inv) = (m.clone(), crate::padic::inv_mod(&m, &p_big));
                let inv = inv.expect("moduli coprime");
                let diff = crate::padic::mod_pos(&(BigInt::from(c) - &x), &p_big);
                x += g * crate::padic::mod_pos(&(diff * inv), &p_big);
                m *= p_big;
            }
            let bal = mod_balanced(&x, &m);
            // candidate rational coefficient with denominator dividing lc
            match rational_reconstruct(&crate::padic::mod_pos(&bal, &m), &m, &nb, &db) {
                Some((num, den)) => {
                    if let Some(v) = &mut coeffs_rat {
                        v.push(Rat::new(num, den));
                    }
                }
                None => {
                    coeffs_rat = None;
                    break;
                }
            }
        }
        if let Some(mut v) = coeffs_rat {
            v.push(Rat::one());
            let cand = Poly::from_coeffs(&QQ, v);
            if cand.degi() == k as i64 && cand.divides(&QQ, f) {
                return Ok(Some(cand));
            }
        }
        // advance indices
        let mut pos = 0;
        loop {
            if pos == indices.len() {
                return Ok(None);
            }
            indices[pos] += 1;
            if indices[pos] < divisor_lists[pos].len() {
                break;
            }
            indices[pos] = 0;
            pos += 1;
        }
    }
}

/// Factorization over `K = Q(sqrt(d))` for degree at most 6: factor over
/// `Q`, then refine each irreducible-over-`Q` factor over `K`.
///
/// Degree 1 stays; degree 2 splits iff its discriminant is `d` times a
/// square; odd degrees 3 and 5 stay irreducible over a quadratic
/// extension; degree 4 and 6 can only split into a pair of conjugate
/// halves, detected by the resolvent-style solves below.
pub fn factor_over_k(f: &Poly<Rat>, k: &QuadField) -> Result<FactorListK> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let overq = factor_over_q(f)?;
    let mut factors: Vec<(Poly<QuadElem>, usize)> = Vec::new();
    let embed = |g: &Poly<Rat>| -> Poly<QuadElem> { g.map(k, |c| k.from_rat(c.clone())) };
    for (g, m) in &overq.factors {
        match g.degi() {
            1 | 3 | 5 => factors.push((embed(g), *m)),
            2 => {
                let s = &g.coeffs[1];
                let t = &g.coeffs[0];
                let disc = s * s - Rat::from_integer(BigInt::from(4)) * t;
                let ratio = &disc / Rat::from_integer(BigInt::from(k.d()));
                if let Some(w) = rat_sqrt(&ratio) {
                    let half = crate::field::rat(1, 2);
                    let a = -s * &half;
                    let b = &w * &half;
                    let r1 = k.elem(a.clone(), b.clone());
                    let r2 = k.elem(a, -b);
                    for r in [r1, r2] {
                        factors.push((
                            Poly::from_coeffs(k, vec![k.neg(&r), k.one()]),
                            *m,
                        ));
                    }
                } else {
                    factors.push((embed(g), *m));
                }
            }
            4 => match quartic_conjugate_split(g, k) {
                Some((h1, h2)) => {
                    factors.push((h1, *m));
                    factors.push((h2, *m));
                }
                None => factors.push((embed(g), *m)),
            },
            6 => match sextic_conjugate_split(g, k)? {
                Some((h1, h2)) => {
                    factors.push((h1, *m));
                    factors.push((h2, *m));
                }
                None => factors.push((embed(g), *m)),
            },
            _ => factors.push((embed(g), *m)),
        }
    }
    factors.sort_by_key(|(g, _)| (g.degi(), format!("{g:?}")));
    let fl = FactorListK { constant: k.from_rat(overq.constant), factors };
    debug_assert_eq!(fl.product(k), f.map(k, |c| k.from_rat(c.clone())));
    Ok(fl)
}

fn conj_poly(g: &Poly<QuadElem>, k: &QuadField) -> Poly<QuadElem> {
    g.map(k, |c| c.conj())
}

/// Split a monic quartic, irreducible over `Q`, into conjugate quadratics
/// over `K` when possible. Writing the halves as
/// `x^2 + (u0 + u1 sqrt(d)) x + (v0 + v1 sqrt(d))`, matching coefficients
/// either forces `u1 = 0` (then everything is linear algebra plus one
/// square test) or leads to a cubic in `u1^2` whose rational square roots
/// are tried; every candidate is verified by exact multiplication.
fn quartic_conjugate_split(
    g: &Poly<Rat>,
    k: &QuadField,
) -> Option<(Poly<QuadElem>, Poly<QuadElem>)> {
    debug_assert_eq!(g.degi(), 4);
    debug_assert!(g.is_monic(&QQ));
    let d_rat = Rat::from_integer(BigInt::from(k.d()));
    let c3 = g.coeff(&QQ, 3);
    let c2 = g.coeff(&QQ, 2);
    let c1 = g.coeff(&QQ, 1);
    let c0 = g.coeff(&QQ, 0);
    let half = crate::field::rat(1, 2);
    let two = crate::field::rat_i(2);
    let u0 = &c3 * &half;

    let build = |u1: Rat, v0: Rat, v1: Rat| -> Option<(Poly<QuadElem>, Poly<QuadElem>)> {
        let u = k.elem(u0.clone(), u1);
        let v = k.elem(v0, v1);
        let h = Poly::from_coeffs(k, vec![v, u, k.one()]);
        let hc = conj_poly(&h, k);
        let prod = h.mul(k, &hc);
        let target = g.map(k, |c| k.from_rat(c.clone()));
        if prod == target {
            Some((h, hc))
        } else {
            None
        }
    };

    // u1 = 0 branch
    {
        let v0 = (&c2 - &u0 * &u0) * &half;
        if c1 == &two * &u0 * &v0 {
            let v1sq = (&v0 * &v0 - &c0) / &d_rat;
            if let Some(v1) = rat_sqrt(&v1sq) {
                if !v1.is_zero() {
                    if let Some(res) = build(Rat::zero(), v0.clone(), v1) {
                        return Some(res);
                    }
                }
            }
        }
    }
    // u1 != 0 branch: cubic in T = u1^2
    let alpha = (&c2 - &u0 * &u0) * &half;
    let beta = &d_rat * &half;
    let e = &two * &u0 * &alpha - &c1;
    // 4dT(alpha + beta T)^2 - (e + 2 u0 beta T)^2 - 4 d c0 T = 0
    let four_d = Rat::from_integer(BigInt::from(4)) * &d_rat;
    let t3 = &four_d * &beta * &beta;
    let t2 = &four_d * &two * &alpha * &beta
        - Rat::from_integer(BigInt::from(4)) * &u0 * &u0 * &beta * &beta;
    let t1 = &four_d * &alpha * &alpha
        - Rat::from_integer(BigInt::from(4)) * &u0 * &beta * &e
        - &four_d * &c0;
    let t0 = -(&e * &e);
    let cubic = Poly::from_coeffs(&QQ, vec![t0, t1, t2, t3]);
    if cubic.is_zero() {
        return None;
    }
    if let Ok(roots) = rational_roots(&cubic) {
        for (t, _) in roots {
            if !t.is_positive() {
                continue;
            }
            if let Some(u1) = rat_sqrt(&t) {
                let v0 = &alpha + &beta * &t;
                let v1 = (&two * &u0 * &v0 - &c1) / (&two * &u1 * &d_rat);
                if let Some(res) = build(u1, v0, v1) {
                    return Some(res);
                }
            }
        }
    }
    None
}

/// Split a monic sextic, irreducible over `Q`, into conjugate cubics over
/// `K` when possible.
///
/// At a prime split in `K`, a conjugate-cubic factorization reduces to a
/// complementary pair of cubic factors over `Z_p`. The mod-`p` irreducible
/// factors are lifted to `Z/p^t` (root lift in the unramified extension,
/// then the characteristic polynomial of that root), complementary
/// degree-3 subproducts are paired, and the half-sum / half-difference of
/// each pair reconstructs the rational and `sqrt(d)` parts of the cubic.
/// Exact verification `g = h0^2 - d h1^2` closes the loop.
fn sextic_conjugate_split(
    g: &Poly<Rat>,
    k: &QuadField,
) -> Result<Option<(Poly<QuadElem>, Poly<QuadElem>)>> {
    debug_assert_eq!(g.degi(), 6);
    let (_, ints) = primitive_integer_coeffs(g);
    // coefficients of a monic cubic factor over K are algebraic integers
    // up to denominator 2; bound their embeddings Mignotte-style
    let (nb, _) = factor_coeff_bounds(&ints, 3);
    let two_big = BigInt::from(2);
    let target = BigInt::from(8) * &nb * &nb + 1;
    let p = good_prime(&ints, Some(k.d()), 0);
    let gfp = Gf::prime(p);
    let gbar = reduce_int_poly(&ints, &gfp);
    let irred = factor_mod_p(&gfp, &gbar);
    // a conjugate-cubic split refines the p-adic factorization into two
    // cubics, so every irreducible factor mod p must have degree <= 3
    if irred.iter().any(|f| f.degi() > 3) {
        return Ok(None);
    }
    // lift each irreducible mod-p factor to a p-adic factor via charpoly
    let mut lifted: Vec<(i64, Vec<BigInt>)> = Vec::new();
    let mut modulus = BigInt::zero();
    for fac in &irred {
        let m = fac.degi();
        let mu: Vec<BigInt> = fac.coeffs.iter().map(|&c| BigInt::from(c)).collect();
        let ctx = UnramifiedCtx::new(p, mu, &target);
        modulus = ctx.modulus.clone();
        let root = match ctx.lift_gen_root(&ints) {
            Some(r) => r,
            None => return Ok(None), // should not happen at a good prime
        };
        lifted.push((m, ctx.charpoly(&root)));
    }
    // tau = sqrt(d) mod p^t
    let dm = k.d().rem_euclid(p as i64) as u64;
    let t0 = gfp.sqrt(dm).expect("p was chosen split");
    let (tau, tau_mod) = lift_root(&[BigInt::from(-k.d()), BigInt::zero(), BigInt::one()], t0, p, &target);
    debug_assert_eq!(tau_mod, modulus);
    let inv_2tau = match crate::padic::inv_mod(&(&two_big * &tau), &modulus) {
        Some(v) => v,
        None => return Ok(None),
    };
    let n = lifted.len();
    let mulmod = |a: &Vec<BigInt>, b: &Vec<BigInt>| -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] = crate::padic::mod_pos(&(&out[i + j] + x * y), &modulus);
            }
        }
        out
    };
    for mask in 1u32..(1 << n) {
        let degsum: i64 = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| lifted[i].0).sum();
        if degsum != 3 {
            continue;
        }
        // avoid double counting: insist the complement mask is larger
        let comp = (!mask) & ((1 << n) - 1);
        if comp < mask {
            continue;
        }
        let prod_for = |m: u32| -> Vec<BigInt> {
            let mut acc = vec![BigInt::one()];
            for i in 0..n {
                if m >> i & 1 == 1 {
                    acc = mulmod(&acc, &lifted[i].1);
                }
            }
            acc
        };
        let g1 = prod_for(mask);
        let g2 = prod_for(comp);
        // h0 = (g1+g2)/2, h1 = (g1-g2)/(2 tau), coefficientwise
        let inv2 = crate::padic::inv_mod(&two_big, &modulus).unwrap();
        let mut h0 = Vec::with_capacity(4);
        let mut h1 = Vec::with_capacity(4);
        let mut ok = true;
        for i in 0..4 {
            let a = crate::padic::mod_pos(&(&g1[i] + &g2[i]), &modulus);
            let b = crate::padic::mod_pos(&(&g1[i] - &g2[i]), &modulus);
            let h0i = crate::padic::mod_pos(&(a * &inv2), &modulus);
            let h1i = crate::padic::mod_pos(&(b * &inv_2tau), &modulus);
            let den2 = BigInt::from(2);
            match (
                rational_reconstruct(&h0i, &modulus, &(&nb * 2), &den2),
                rational_reconstruct(&h1i, &modulus, &(&nb * 2), &den2),
            ) {
                (Some((n0, d0)), Some((n1, d1))) => {
                    h0.push(Rat::new(n0, d0));
                    h1.push(Rat::new(n1, d1));
                }
                _ => {
                    ok = false;
                    break;
                }
            }
        }
        if !ok {
            continue;
        }
        let h0p = Poly::from_coeffs(&QQ, h0);
        let h1p = Poly::from_coeffs(&QQ, h1);
        // verify g = h0^2 - d h1^2 over Q
        let d_rat = Rat::from_integer(BigInt::from(k.d()));
        let lhs = h0p
            .mul(&QQ, &h0p)
            .sub(&QQ, &h1p.mul(&QQ, &h1p).scale(&QQ, &d_rat));
        if lhs == *g && !h1p.is_zero() {
            let mut coeffs = Vec::with_capacity(4);
            for i in 0..4 {
                coeffs.push(k.elem(h0p.coeff(&QQ, i), h1p.coeff(&QQ, i)));
            }
            let h = Poly::from_coeffs(k, coeffs);
            let hc = conj_poly(&h, k);
            return Ok(Some((h, hc)));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{rat, rat_i};
    use crate::poly::zpoly;

    fn k17() -> QuadField {
        QuadField::new(17).unwrap()
    }

    #[test]
    fn rational_roots_basic() {
        // 6x^3 - x^2 - 2x = x(2x+1)(3x-2)
        let f = zpoly(&[0, -2, -1, 6]);
        let roots = rational_roots(&f).unwrap();
        let vals: Vec<Rat> = roots.iter().map(|(r, _)| r.clone()).collect();
        assert!(vals.contains(&rat_i(0)));
        assert!(vals.contains(&rat(-1, 2)));
        assert!(vals.contains(&rat(2, 3)));
        assert_eq!(roots.len(), 3);
        // multiplicity
        let g = zpoly(&[1, 2, 1]); // (x+1)^2
        let roots = rational_roots(&g).unwrap();
        assert_eq!(roots, vec![(rat_i(-1), 2)]);
        assert!(rational_roots(&Poly::zero()).is_err());
    }

    #[test]
    fn roots_in_k_cusp_polynomials() {
        let k = k17();
        // x(x+1)(x^4+3x^3+4x^2+2x+1)(x^4-7x^3-6x^2+2x+1): K-roots are 0, -1
        let q1 = zpoly(&[1, 2, 4, 3, 1]);
        let q2 = zpoly(&[1, 2, -6, -7, 1]);
        let f = zpoly(&[0, 1]).mul(&QQ, &zpoly(&[1, 1])).mul(&QQ, &q1).mul(&QQ, &q2);
        let roots = roots_in_k(&f, &k).unwrap();
        let mut xs: Vec<QuadElem> = roots.iter().map(|(r, _)| r.clone()).collect();
        xs.sort_by_key(|x| format!("{x}"));
        assert_eq!(xs, vec![k.from_i64(-1), k.from_i64(0)]);

        // x^2 - 17 has both square roots
        let g = zpoly(&[-17, 0, 1]);
        let roots = roots_in_k(&g, &k).unwrap();
        assert_eq!(roots.len(), 2);
        assert!(roots.iter().any(|(r, _)| *r == k.sqrt_d()));
        assert!(roots.iter().any(|(r, _)| *r == -k.sqrt_d()));

        // irreducible cubic has no roots in a quadratic field
        let h = zpoly(&[1, 1, -4, 1]);
        assert!(roots_in_k(&h, &k).unwrap().is_empty());
    }

    #[test]
    fn roots_in_k_with_irrational_pair() {
        let k = k17();
        // minimal polynomial of (1 - sqrt(17))/8: x^2 - x/4 - 1/4... compute:
        // a = 1/8, b = -1/8: trace 1/4, norm (1-17)/64 = -1/4
        let f = Poly::from_coeffs(&QQ, vec![rat(-1, 4), rat(-1, 4), rat_i(1)]);
        let roots = roots_in_k(&f, &k).unwrap();
        assert_eq!(roots.len(), 2);
        assert!(roots.iter().any(|(r, _)| *r == k.elem(rat(1, 8), rat(-1, 8))));
    }

    #[test]
    fn high_degree_roots_in_k() {
        let k = k17();
        // (x^2 - 17) * (x^2+x+1) * (x^8 + 3x + 9) -- only the sqrt(17) pair lies in K
        let f = zpoly(&[-17, 0, 1])
            .mul(&QQ, &zpoly(&[1, 1, 1]))
            .mul(&QQ, &zpoly(&[9, 3, 0, 0, 0, 0, 0, 0, 1]));
        let roots = roots_in_k(&f, &k).unwrap();
        assert_eq!(roots.len(), 2);
    }

    #[test]
    fn factor_over_q_x1_16_curve() {
        // x(x^2+1)(x^2+2x-1) expands to x^5+2x^4+2x^2-x
        let f = zpoly(&[0, -1, 2, 0, 2, 1]);
        let fl = factor_over_q(&f).unwrap();
        assert_eq!(fl.product(), f);
        let degrees: Vec<i64> = fl.factors.iter().map(|(g, _)| g.degi()).collect();
        assert_eq!(degrees, vec![1, 2, 2]);
    }

    #[test]
    fn factor_over_k_with_splitting_quadratic() {
        let k = k17();
        let f = zpoly(&[-17, 0, 1]);
        let fl = factor_over_k(&f, &k).unwrap();
        assert_eq!(fl.factors.len(), 2);
        assert!(fl.factors.iter().all(|(g, _)| g.degi() == 1));
    }

    #[test]
    fn factor_over_k_keeps_nonsplitting_quadratics() {
        let k = k17();
        // x(x^2+1)(x^2+2x-1): discs -4 and 8 are not 17 * square
        let f = zpoly(&[0, -1, 2, 0, 2, 1]);
        let fl = factor_over_k(&f, &k).unwrap();
        let degrees: Vec<i64> = fl.factors.iter().map(|(g, _)| g.degi()).collect();
        assert_eq!(degrees, vec![1, 2, 2]);
    }

    #[test]
    fn x1_18_sextic_has_no_linear_factors_over_k() {
        let k = k17();
        let f = zpoly(&[1, 4, 10, 10, 5, 2, 1]);
        let fl = factor_over_k(&f, &k).unwrap();
        assert!(fl.factors.iter().all(|(g, _)| g.degi() > 1));
        assert!(roots_in_k(&f, &k).unwrap().is_empty());
    }

    #[test]
    fn quartic_conjugate_split_works() {
        let k = k17();
        // (x^2 + sqrt(17) x + 1)(x^2 - sqrt(17) x + 1) = x^4 + (2-17)x^2 + 1
        let f = zpoly(&[1, 0, -15, 0, 1]);
        let fl = factor_over_k(&f, &k).unwrap();
        assert_eq!(fl.factors.len(), 2);
        assert!(fl.factors.iter().all(|(g, _)| g.degi() == 2));
        // x^4 - 17 = (x^2 - sqrt17)(x^2 + sqrt17)
        let g = zpoly(&[-17, 0, 0, 0, 1]);
        let fl = factor_over_k(&g, &k).unwrap();
        assert_eq!(fl.factors.len(), 2);
        // a quartic staying irreducible: x^4 + x + 1
        let h = zpoly(&[1, 1, 0, 0, 1]);
        let fl = factor_over_k(&h, &k).unwrap();
        assert_eq!(fl.factors.len(), 1);
        assert_eq!(fl.factors[0].0.degi(), 4);
    }

    #[test]
    fn sextic_conjugate_split_works() {
        let k = k17();
        // (x^3 + sqrt(17) x + 1)(x^3 - sqrt(17) x + 1) = x^6 - 17 x^2 + 2x^3 + 1
        // expand: x^6 + 2x^3 + 1 - 17x^2
        let f = zpoly(&[1, 0, -17, 2, 0, 0, 1]);
        let fl = factor_over_k(&f, &k).unwrap();
        assert_eq!(fl.factors.len(), 2);
        assert!(fl.factors.iter().all(|(g, _)| g.degi() == 3));
        assert_eq!(fl.product(&k), f.map(&k, |c| k.from_rat(c.clone())));
    }

    #[test]
    fn roots_mod_q_examples() {
        let f5 = Gf::prime(5);
        let f = Poly::from_coeffs(&f5, vec![1, 0, 1]); // x^2 + 1
        let mut roots = roots_mod_q(&f5, &f).unwrap();
        roots.sort();
        assert_eq!(roots, vec![2, 3]);
        let f3 = Gf::prime(3);
        let g = Poly::from_coeffs(&f3, vec![1, 0, 1]);
        assert!(roots_mod_q(&f3, &g).unwrap().is_empty());
        // x(x^2+1)(x^2+2x-1) over F_3: x^2+2x-1 = x^2+2x+2, disc = 4-8 = -4 = 2 nonresidue
        let h = Poly::from_coeffs(&f3, vec![0, 2, 0, 0, 2, 1]);
        assert_eq!(roots_mod_q(&f3, &h).unwrap(), vec![0]);
    }

    #[test]
    fn factor_list_reconstructs_with_multiplicity() {
        let f = zpoly(&[1, 2, 1]).mul(&QQ, &zpoly(&[3, 1])).scale(&QQ, &rat(5, 7));
        let fl = factor_over_q(&f).unwrap();
        assert_eq!(fl.product(), f);
        assert_eq!(fl.constant, rat(5, 7));
    }
}
