//! Elliptic curves in long Weierstrass form over `Q`, `Q(sqrt(d))` and
//! small finite fields: chord-tangent group law, quadratic twists, exact
//! torsion over a real quadratic field, point orders, and bounded-height
//! point search.
//!
//! Torsion over `K` is computed in two exact stages: a multiplicative bound
//! from point counts at several places of good reduction (torsion injects
//! into the reduction at odd good places), then, for each prime power
//! within the bound, the full set of `K`-rational points of that order from
//! the roots of the division polynomial together with a square-root test
//! for the `y`-coordinate. The prime-power caps come from the classified
//! list of torsion subgroups over quadratic fields (2-part at most 16,
//! 3-part at most 9, and 5, 7, 11, 13 at most once), so the stage-two work
//! stays at desk scale even when the counting bound overshoots.

use crate::field::{is_squarefree, Field, Rat, Rationals};
use crate::poly::Poly;
use crate::polyfactor::{is_prime_u64, roots_in_k};
use crate::qfield::{QuadElem, QuadField, Splitting};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

const QQ: Rationals = Rationals;

/// `[a1, a2, a3, a4, a6]` long Weierstrass coefficients over `F`.
#[derive(Clone, Debug, PartialEq)]
pub struct EllipticCurve<F: Field> {
    pub fld: F,
    pub a1: F::Elem,
    pub a2: F::Elem,
    pub a3: F::Elem,
    pub a4: F::Elem,
    pub a6: F::Elem,
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Point<T> {
    Infinity,
    Affine(T, T),
}

impl<T: std::fmt::Display> std::fmt::Debug for Point<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Point::Infinity => write!(f, "O"),
            Point::Affine(x, y) => write!(f, "({x}, {y})"),
        }
    }
}

/// Public point type over `Q(sqrt(d))`.
pub type ECPointK = Point<QuadElem>;
pub type EllipticCurveK = EllipticCurve<QuadField>;
pub type EllipticCurveQ = EllipticCurve<Rationals>;

/// Torsion subgroup `Z/m + Z/n` with `m | n`, with generators of exact
/// orders `m` and `n` and the full point list.
#[derive(Clone, Debug)]
pub struct TorsionDesc {
    pub m: u64,
    pub n: u64,
    pub generators: Vec<ECPointK>,
    pub points: Vec<ECPointK>,
}

impl TorsionDesc {
    pub fn order(&self) -> u64 {
        self.m * self.n
    }
    pub fn exponent(&self) -> u64 {
        self.n
    }
}

impl<F: Field> EllipticCurve<F> {
    pub fn new(
        fld: F,
        a1: F::Elem,
        a2: F::Elem,
        a3: F::Elem,
        a4: F::Elem,
        a6: F::Elem,
    ) -> Result<Self> {
        let e = EllipticCurve { fld, a1, a2, a3, a4, a6 };
        if e.fld.is_zero(&e.discriminant()) {
            return Err(Error::SingularCurve);
        }
        Ok(e)
    }

    pub fn b_invariants(&self) -> (F::Elem, F::Elem, F::Elem, F::Elem) {
        let f = &self.fld;
        let four = f.from_i64(4);
        let two = f.from_i64(2);
        let b2 = f.add(&f.square(&self.a1), &f.mul(&four, &self.a2));
        let b4 = f.add(&f.mul(&two, &self.a4), &f.mul(&self.a1, &self.a3));
        let b6 = f.add(&f.square(&self.a3), &f.mul(&four, &self.a6));
        let b8 = f
            .div(&f.sub(&f.mul(&b2, &b6), &f.square(&b4)), &four)
            .expect("char != 2");
        (b2, b4, b6, b8)
    }

    pub fn discriminant(&self) -> F::Elem {
        let f = &self.fld;
        let (b2, b4, b6, b8) = self.b_invariants();
        // -b2^2 b8 - 8 b4^3 - 27 b6^2 + 9 b2 b4 b6
        let t1 = f.neg(&f.mul(&f.square(&b2), &b8));
        let t2 = f.mul(&f.from_i64(-8), &f.mul(&b4, &f.square(&b4)));
        let t3 = f.mul(&f.from_i64(-27), &f.square(&b6));
        let t4 = f.mul(&f.from_i64(9), &f.mul(&b2, &f.mul(&b4, &b6)));
        f.add(&f.add(&t1, &t2), &f.add(&t3, &t4))
    }

    pub fn j_invariant(&self) -> F::Elem {
        let f = &self.fld;
        let (b2, b4, _, _) = self.b_invariants();
        let c4 = f.sub(&f.square(&b2), &f.mul(&f.from_i64(24), &b4));
        f.div(&f.mul(&c4, &f.square(&c4)), &self.discriminant())
            .expect("nonsingular")
    }

    /// `F(x) = 4x^3 + b2 x^2 + 2 b4 x + b6`; its roots are the 2-torsion
    /// `x`-coordinates and it is the square of the even-index carrier in
    /// the division-polynomial recurrence.
    pub fn two_torsion_poly(&self) -> Poly<F::Elem> {
        let f = &self.fld;
        let (b2, b4, b6, _) = self.b_invariants();
        Poly::from_coeffs(f, vec![b6, f.mul(&f.from_i64(2), &b4), b2, f.from_i64(4)])
    }

    pub fn on_curve(&self, p: &Point<F::Elem>) -> bool {
        let f = &self.fld;
        match p {
            Point::Infinity => true,
            Point::Affine(x, y) => {
                // y^2 + a1 x y + a3 y = x^3 + a2 x^2 + a4 x + a6
                let lhs = f.add(
                    &f.square(y),
                    &f.add(&f.mul(&self.a1, &f.mul(x, y)), &f.mul(&self.a3, y)),
                );
                let x2 = f.square(x);
                let rhs = f.add(
                    &f.add(&f.mul(&x2, x), &f.mul(&self.a2, &x2)),
                    &f.add(&f.mul(&self.a4, x), &self.a6),
                );
                lhs == rhs
            }
        }
    }

    pub fn neg_point(&self, p: &Point<F::Elem>) -> Point<F::Elem> {
        let f = &self.fld;
        match p {
            Point::Infinity => Point::Infinity,
            Point::Affine(x, y) => {
                let ny = f.neg(&f.add(y, &f.add(&f.mul(&self.a1, x), &self.a3)));
                Point::Affine(x.clone(), ny)
            }
        }
    }

    /// Chord-tangent addition.
    pub fn add_points(&self, p: &Point<F::Elem>, q: &Point<F::Elem>) -> Point<F::Elem> {
        debug_assert!(self.on_curve(p), "P not on curve");
        debug_assert!(self.on_curve(q), "Q not on curve");
        let f = &self.fld;
        let (x1, y1) = match p {
            Point::Infinity => return q.clone(),
            Point::Affine(x, y) => (x, y),
        };
        let (x2, y2) = match q {
            Point::Infinity => return p.clone(),
            Point::Affine(x, y) => (x, y),
        };
        let (lambda, nu) = if x1 != x2 {
            let dx = f.sub(x2, x1);
            let lambda = f.div(&f.sub(y2, y1), &dx).unwrap();
            let nu = f.div(&f.sub(&f.mul(y1, x2), &f.mul(y2, x1)), &dx).unwrap();
            (lambda, nu)
        } else {
            // same x: either inverses or a doubling
            let neg = self.neg_point(p);
            if *q == neg {
                return Point::Infinity;
            }
            let denom = f.add(
                &f.mul(&f.from_i64(2), y1),
                &f.add(&f.mul(&self.a1, x1), &self.a3),
            );
            let x1sq = f.square(x1);
            let lam_num = f.add(
                &f.add(
                    &f.mul(&f.from_i64(3), &x1sq),
                    &f.mul(&f.from_i64(2), &f.mul(&self.a2, x1)),
                ),
                &f.sub(&self.a4, &f.mul(&self.a1, y1)),
            );
            let nu_num = f.add(
                &f.add(&f.neg(&f.mul(&x1sq, x1)), &f.mul(&self.a4, x1)),
                &f.sub(&f.mul(&f.from_i64(2), &self.a6), &f.mul(&self.a3, y1)),
            );
            (
                f.div(&lam_num, &denom).unwrap(),
                f.div(&nu_num, &denom).unwrap(),
            )
        };
        let x3 = f.sub(
            &f.add(&f.square(&lambda), &f.mul(&self.a1, &lambda)),
            &f.add(&self.a2, &f.add(x1, x2)),
        );
        let y3 = f.neg(&f.add(
            &f.mul(&f.add(&lambda, &self.a1), &x3),
            &f.add(&nu, &self.a3),
        ));
        Point::Affine(x3, y3)
    }

    /// `n * P` by double-and-add; `0 * P = O`, negative `n` negates.
    pub fn mul_point(&self, n: i64, p: &Point<F::Elem>) -> Point<F::Elem> {
        let (mut k, base) = if n < 0 {
            ((-n) as u64, self.neg_point(p))
        } else {
            (n as u64, p.clone())
        };
        let mut acc = Point::Infinity;
        let mut cur = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add_points(&acc, &cur);
            }
            k >>= 1;
            if k > 0 {
                cur = self.add_points(&cur, &cur);
            }
        }
        acc
    }

    /// Exact order of `P` if at most `bound`, else `None` ("exceeds bound").
    pub fn point_order(&self, p: &Point<F::Elem>, bound: u64) -> Option<u64> {
        assert!(bound >= 1);
        assert!(self.on_curve(p), "off-curve input");
        let mut acc = p.clone();
        for k in 1..=bound {
            if acc == Point::Infinity {
                return Some(k);
            }
            acc = self.add_points(&acc, p);
        }
        None
    }

    fn division_table(&self, upto: usize) -> Vec<Poly<F::Elem>> {
        let f = &self.fld;
        let (b2, b4, b6, b8) = self.b_invariants();
        let fpoly = self.two_torsion_poly();
        let three = f.from_i64(3);
        let mut p: Vec<Poly<F::Elem>> = Vec::with_capacity(upto.max(5) + 3);
        p.push(Poly::zero()); // P_0
        p.push(Poly::one(f)); // P_1
        p.push(Poly::one(f)); // P_2 (psi_2 is the carrier W itself)
        // psi_3 = 3x^4 + b2 x^3 + 3 b4 x^2 + 3 b6 x + b8
        p.push(Poly::from_coeffs(
            f,
            vec![
                b8.clone(),
                f.mul(&b6, &three),
                f.mul(&b4, &three),
                b2.clone(),
                three.clone(),
            ],
        ));
        // psi_4 / W = 2x^6 + b2 x^5 + 5 b4 x^4 + 10 b6 x^3 + 10 b8 x^2
        //             + (b2 b8 - b4 b6) x + (b4 b8 - b6^2)
        p.push(Poly::from_coeffs(
            f,
            vec![
                f.sub(&f.mul(&b4, &b8), &f.square(&b6)),
                f.sub(&f.mul(&b2, &b8), &f.mul(&b4, &b6)),
                f.mul(&b8, &f.from_i64(10)),
                f.mul(&b6, &f.from_i64(10)),
                f.mul(&b4, &f.from_i64(5)),
                b2.clone(),
                f.from_i64(2),
            ],
        ));
        let fsq = fpoly.mul(f, &fpoly);
        for n in 5..=upto.max(4) {
            let m = n / 2;
            let next = if n % 2 == 1 {
                let t1 = p[m + 2].mul(f, &p[m].pow(f, 3));
                let t2 = p[m - 1].mul(f, &p[m + 1].pow(f, 3));
                // W^4 = F^2 lands on whichever term pairs even indices
                if m % 2 == 0 {
                    t1.mul(f, &fsq).sub(f, &t2)
                } else {
                    t1.sub(f, &t2.mul(f, &fsq))
                }
            } else {
                let t1 = p[m + 2].mul(f, &p[m - 1].pow(f, 2));
                let t2 = p[m - 2].mul(f, &p[m + 1].pow(f, 2));
                p[m].mul(f, &t1.sub(f, &t2))
            };
            p.push(next);
        }
        p
    }

    /// `x`-coordinate polynomial of the nontrivial `n`-torsion: roots over
    /// the algebraic closure are exactly the `x`-coordinates of points with
    /// `nP = O`, `P != O`.
    pub fn torsion_x_poly(&self, n: u64) -> Poly<F::Elem> {
        assert!(n >= 2);
        let table = self.division_table(n as usize);
        if n % 2 == 1 {
            table[n as usize].clone()
        } else {
            self.two_torsion_poly().mul(&self.fld, &table[n as usize])
        }
    }

    /// Squarefree polynomial whose roots are the `x`-coordinates of points
    /// of exact order `l^e`: the quotient of consecutive division
    /// polynomials. Keeping the levels separate avoids ever factoring the
    /// huge full division polynomial.
    pub fn primitive_torsion_x_poly(&self, l: u64, e: u32) -> Poly<F::Elem> {
        assert!(e >= 1);
        let f = &self.fld;
        if e == 1 {
            return if l == 2 {
                self.two_torsion_poly()
            } else {
                self.torsion_x_poly(l)
            };
        }
        let n = l.pow(e) as usize;
        let table = self.division_table(n);
        // P_{l^e} / P_{l^(e-1)}: the two-torsion carrier cancels for l = 2
        table[n].exact_div(f, &table[l.pow(e - 1) as usize])
    }
}

impl EllipticCurve<Rationals> {
    pub fn from_i64(coeffs: [i64; 5]) -> Result<Self> {
        let f = Rationals;
        EllipticCurve::new(
            f,
            f.from_i64(coeffs[0]),
            f.from_i64(coeffs[1]),
            f.from_i64(coeffs[2]),
            f.from_i64(coeffs[3]),
            f.from_i64(coeffs[4]),
        )
    }

    pub fn coeffs(&self) -> [Rat; 5] {
        [
            self.a1.clone(),
            self.a2.clone(),
            self.a3.clone(),
            self.a4.clone(),
            self.a6.clone(),
        ]
    }

    /// View the same curve over `K` (coefficients embedded).
    pub fn base_change(&self, k: &QuadField) -> EllipticCurveK {
        EllipticCurve {
            fld: *k,
            a1: k.from_rat(self.a1.clone()),
            a2: k.from_rat(self.a2.clone()),
            a3: k.from_rat(self.a3.clone()),
            a4: k.from_rat(self.a4.clone()),
            a6: k.from_rat(self.a6.clone()),
        }
    }

    /// Complete the square: the isomorphic model with `a1 = a3 = 0`.
    pub fn short_form(&self) -> EllipticCurve<Rationals> {
        let (b2, b4, b6, _) = self.b_invariants();
        EllipticCurve {
            fld: QQ,
            a1: Rat::zero(),
            a2: b2 / crate::field::rat_i(4),
            a3: Rat::zero(),
            a4: b4 / crate::field::rat_i(2),
            a6: b6 / crate::field::rat_i(4),
        }
    }

    /// Quadratic twist by a squarefree integer `d != 0, 1`: on the
    /// completed-square model `y^2 = x^3 + a x^2 + b x + c` the twist is
    /// `y^2 = x^3 + a d x^2 + b d^2 x + c d^3`, isomorphic to the original
    /// exactly over `Q(sqrt(d))`.
    pub fn quadratic_twist(&self, d: i64) -> Result<EllipticCurve<Rationals>> {
        if d == 0 || d == 1 || !is_squarefree(d) {
            return Err(Error::BadRadicand(d));
        }
        let s = self.short_form();
        let d1 = crate::field::rat_i(d);
        let d2 = &d1 * &d1;
        let d3 = &d2 * &d1;
        EllipticCurve::new(QQ, Rat::zero(), s.a2 * d1, Rat::zero(), s.a4 * d2, s.a6 * d3)
    }
}

impl EllipticCurve<QuadField> {
    pub fn k(&self) -> QuadField {
        self.fld
    }

    /// True when every coefficient is rational (the usual pipeline case:
    /// a curve over `Q` viewed over `K`).
    pub fn is_rational_model(&self) -> bool {
        [&self.a1, &self.a2, &self.a3, &self.a4, &self.a6]
            .iter()
            .all(|c| c.is_rational())
    }

    pub fn rational_model(&self) -> Option<EllipticCurve<Rationals>> {
        if !self.is_rational_model() {
            return None;
        }
        Some(EllipticCurve {
            fld: QQ,
            a1: self.a1.as_rat().unwrap().clone(),
            a2: self.a2.as_rat().unwrap().clone(),
            a3: self.a3.as_rat().unwrap().clone(),
            a4: self.a4.as_rat().unwrap().clone(),
            a6: self.a6.as_rat().unwrap().clone(),
        })
    }

    /// Points over `K` above a given `x`: complete the square and test
    /// `F(x)` for a square root in `K`.
    pub fn lift_x(&self, x: &QuadElem) -> Vec<ECPointK> {
        let k = &self.fld;
        let h = k.add(&k.mul(&self.a1, x), &self.a3);
        let fx = self.two_torsion_poly().eval(k, x);
        match k.sqrt_in_k(&fx) {
            None => vec![],
            Some(s) => {
                let half = k.from_rat(crate::field::rat(1, 2));
                let y1 = k.mul(&k.sub(&s, &h), &half);
                if s.is_zero() {
                    vec![Point::Affine(x.clone(), y1)]
                } else {
                    let y2 = k.mul(&k.sub(&k.neg(&s), &h), &half);
                    vec![Point::Affine(x.clone(), y1), Point::Affine(x.clone(), y2)]
                }
            }
        }
    }

    /// All affine points with `x = (u + v sqrt(d))/w`, `|u|, |v|, w <=
    /// height`, in increasing `max(|u|,|v|,w)` then lexicographic
    /// `(u, v, w)` order. Every returned point satisfies the curve
    /// equation exactly.
    pub fn point_search(&self, height: u32) -> Vec<ECPointK> {
        assert!(height >= 1);
        let k = &self.fld;
        let mut out = Vec::new();
        let h = height as i64;
        for level in 1..=h {
            for u in -level..=level {
                for v in -level..=level {
                    for w in 1..=level {
                        if u.abs().max(v.abs()).max(w) != level {
                            continue;
                        }
                        if gcd3(u.unsigned_abs(), v.unsigned_abs(), w.unsigned_abs()) != 1 {
                            continue;
                        }
                        let x = k.elem(crate::field::rat(u, w), crate::field::rat(v, w));
                        out.extend(self.lift_x(&x));
                    }
                }
            }
        }
        out
    }

    /// The full torsion subgroup of `E(K)`.
    pub fn torsion_over_k(&self) -> TorsionDesc {
        let bound = self.torsion_bound(5);
        // prime-power caps valid for any elliptic curve over a quadratic
        // field (the 26 possible groups bound each primary part)
        let caps: [(u64, u32); 6] = [(2, 4), (3, 2), (5, 1), (7, 1), (11, 1), (13, 1)];
        let mut points: Vec<ECPointK> = vec![Point::Infinity];
        for (ell, cap) in caps {
            let mut e = 0u32;
            let mut b = bound.clone();
            while (&b % BigInt::from(ell)).is_zero() {
                e += 1;
                b /= BigInt::from(ell);
            }
            let e = e.min(cap);
            // climb one level at a time; a point of exact order l^(j+1)
            // doubles to one of exact order l^j, so an empty level ends
            // the climb
            for level in 1..=e {
                let new_points = self.exact_order_points(ell, level);
                if new_points.is_empty() {
                    break;
                }
                for p in new_points {
                    if !points.contains(&p) {
                        points.push(p);
                    }
                }
            }
        }
        // close under addition (|T| <= 24, so this is immediate)
        loop {
            let mut added = false;
            let snapshot = points.clone();
            for p in &snapshot {
                for q in &snapshot {
                    let s = self.add_points(p, q);
                    if !points.contains(&s) {
                        points.push(s);
                        added = true;
                    }
                }
            }
            if !added {
                break;
            }
        }
        let order = points.len() as u64;
        // structure Z/m + Z/n with m | n; over a real quadratic field the
        // Weil pairing forces m <= 2
        let mut best: (u64, ECPointK) = (1, Point::Infinity);
        for p in &points {
            let o = self.point_order(p, order).expect("order divides group order");
            if o > best.0 {
                best = (o, p.clone());
            }
        }
        let n = best.0;
        let m = order / n;
        let mut generators = vec![];
        if m > 1 {
            debug_assert_eq!(m, 2);
            let g1 = best.1.clone();
            let mut cyclic = vec![];
            let mut acc = Point::Infinity;
            for _ in 0..n {
                acc = self.add_points(&acc, &g1);
                cyclic.push(acc.clone());
            }
            let h = points
                .iter()
                .find(|p| self.point_order(p, 2) == Some(2) && !cyclic.contains(*p))
                .expect("structure says a second generator exists")
                .clone();
            generators.push(h);
        }
        generators.push(best.1);
        sort_points(&mut points);
        TorsionDesc { m, n, generators, points }
    }

    /// All points of exact order `l^e`, from the primitive division
    /// polynomial: rational-model roots directly, otherwise via the
    /// conjugate product, which has rational coefficients.
    fn exact_order_points(&self, l: u64, e: u32) -> Vec<ECPointK> {
        let k = self.fld;
        let xs: Vec<QuadElem> = if let Some(eq) = self.rational_model() {
            let xpoly = eq.primitive_torsion_x_poly(l, e);
            roots_in_k(&xpoly, &k)
                .expect("nonzero division polynomial")
                .into_iter()
                .map(|(x, _)| x)
                .collect()
        } else {
            let xpoly = self.primitive_torsion_x_poly(l, e);
            let conj = xpoly.map(&k, |c| c.conj());
            let norm = xpoly.mul(&k, &conj).map(&QQ, |c| {
                debug_assert!(c.is_rational());
                c.as_rat().unwrap().clone()
            });
            roots_in_k(&norm, &k)
                .expect("nonzero norm polynomial")
                .into_iter()
                .map(|(x, _)| x)
                .filter(|x| xpoly.eval(&k, x).is_zero())
                .collect()
        };
        let mut out = Vec::new();
        for x in xs {
            out.extend(self.lift_x(&x));
        }
        out
    }

    /// Multiplicative torsion bound: gcd of `#E(F_q)` over `places` good
    /// places (odd primes not dividing `2 d disc`; `q = p` at split primes
    /// and `p^2` at inert ones).
    pub fn torsion_bound(&self, places: usize) -> BigInt {
        let k = self.fld;
        let bad = self.bad_prime_product();
        let mut gcd_acc = BigInt::zero();
        let mut used = 0;
        let mut p = 3u64;
        while used < places {
            if is_prime_u64(p) && !(&bad % BigInt::from(p)).is_zero() {
                if let Ok(rm) = k.residue_map(p) {
                    if rm.splitting != Splitting::Ramified {
                        if let Some(count) = self.count_at(&rm) {
                            gcd_acc = num_integer::gcd(gcd_acc, count);
                            used += 1;
                        }
                    }
                }
            }
            p += 2;
        }
        gcd_acc
    }

    fn bad_prime_product(&self) -> BigInt {
        let mut bad = BigInt::from(2 * self.fld.d());
        let disc = self.discriminant();
        let dn = disc.norm();
        bad *= dn.numer().abs();
        bad *= dn.denom().abs();
        for c in [&self.a1, &self.a2, &self.a3, &self.a4, &self.a6] {
            bad *= c.a().denom().abs();
            bad *= c.b().denom().abs();
        }
        bad
    }

    /// `#E(F_q)` at a place of good reduction; `None` if a coefficient
    /// fails to reduce or the reduction is singular.
    fn count_at(&self, rm: &crate::qfield::ResidueMap) -> Option<BigInt> {
        let gf = &rm.gf;
        let fpoly = self.two_torsion_poly();
        let fbar = fpoly.try_map(gf, |c| rm.reduce(c)).ok()?;
        if fbar.degi() != 3 || !fbar.is_squarefree(gf) {
            return None;
        }
        let mut count: u64 = 1; // infinity
        for x in gf.elements() {
            let v = fbar.eval(gf, &x);
            count += (1 + gf.chi(v)) as u64;
        }
        Some(BigInt::from(count))
    }
}

fn gcd3(a: u64, b: u64, c: u64) -> u64 {
    num_integer::gcd(num_integer::gcd(a, b), c)
}

fn sort_points(points: &mut [ECPointK]) {
    points.sort_by_key(|p| match p {
        Point::Infinity => String::new(),
        Point::Affine(x, y) => format!("({x},{y})"),
    });
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{rat, rat_i};

    fn k17() -> QuadField {
        QuadField::new(17).unwrap()
    }

    /// y^2 - y = x^3 - x^2
    fn x1_11() -> EllipticCurveQ {
        EllipticCurve::from_i64([0, -1, -1, 0, 0]).unwrap()
    }
    /// y^2 + xy + y = x^3 + x^2
    fn x1_15() -> EllipticCurveQ {
        EllipticCurve::from_i64([1, 1, 1, 0, 0]).unwrap()
    }

    #[test]
    fn constructor_rejects_singular() {
        assert!(EllipticCurve::from_i64([0, 0, 0, 0, 0]).is_err());
        assert!(EllipticCurve::from_i64([0, 0, 0, -3, 2]).is_err()); // y^2 = (x-1)^2(x+2)
    }

    #[test]
    fn known_generator_is_on_x1_11() {
        let k = k17();
        let e = x1_11().base_change(&k);
        let p = Point::Affine(k.elem(rat(1, 8), rat(-1, 8)), k.elem(rat(7, 16), rat(1, 16)));
        assert!(e.on_curve(&p));
        assert!(e.on_curve(&Point::Infinity));
    }

    #[test]
    fn known_point_on_x1_14() {
        let k = k17();
        let e = EllipticCurve::from_i64([1, 0, 1, -1, 0]).unwrap().base_change(&k);
        let p = Point::Affine(k.elem(rat(3, 2), rat(1, 2)), k.elem(rat_i(-5), rat_i(-1)));
        assert!(e.on_curve(&p));
    }

    #[test]
    fn group_law_identity_inverse() {
        let k = k17();
        let e = x1_15().base_change(&k);
        let p = Point::Affine(k.from_i64(0), k.from_i64(0));
        assert!(e.on_curve(&p));
        assert_eq!(e.add_points(&p, &Point::Infinity), p);
        let np = e.neg_point(&p);
        assert_eq!(e.add_points(&p, &np), Point::Infinity);
        // (0,0) has order 4 on this model
        assert_eq!(e.point_order(&p, 24), Some(4));
    }

    #[test]
    fn group_law_associativity_sample() {
        let e = x1_11();
        let pts = [
            Point::Affine(rat_i(0), rat_i(0)),
            Point::Affine(rat_i(0), rat_i(1)),
            Point::Affine(rat_i(1), rat_i(0)),
            Point::Affine(rat_i(1), rat_i(1)),
            Point::Infinity,
        ];
        for p in &pts {
            assert!(e.on_curve(p));
            for q in &pts {
                for r in &pts {
                    let lhs = e.add_points(&e.add_points(p, q), r);
                    let rhs = e.add_points(p, &e.add_points(q, r));
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn twist_and_j_invariant() {
        let e = EllipticCurve::from_i64([0, 1, 0, -1, 0]).unwrap(); // y^2 = x^3 + x^2 - x
        let t = e.quadratic_twist(17).unwrap();
        assert_eq!(t.a2, rat_i(17));
        assert_eq!(t.a4, rat_i(-289));
        assert_eq!(t.a6, rat_i(0));
        assert_eq!(e.j_invariant(), t.j_invariant());
        let tt = t.quadratic_twist(17).unwrap();
        assert_eq!(e.j_invariant(), tt.j_invariant());
        // twist map (x,y) -> (x/d, y/(d sqrt d)) carries twist points onto E over K
        let k = k17();
        let ek = e.base_change(&k);
        let tk = t.base_change(&k);
        let pts = tk.point_search(4);
        assert!(!pts.is_empty());
        let d = k.from_i64(17);
        let dsqrt = k.mul(&d, &k.sqrt_d());
        for p in pts {
            if let Point::Affine(x, y) = p {
                let q = Point::Affine(k.div(&x, &d).unwrap(), k.div(&y, &dsqrt).unwrap());
                assert!(ek.on_curve(&q));
            }
        }
        assert!(e.quadratic_twist(12).is_err());
    }

    #[test]
    fn division_polynomial_small_cases() {
        // y^2 = x^3 + 1: 2-torsion at x = -1; 3-torsion x-poly 3x^4 + 12x
        let e = EllipticCurve::from_i64([0, 0, 0, 0, 1]).unwrap();
        assert_eq!(e.two_torsion_poly(), crate::poly::zpoly(&[4, 0, 0, 4]));
        assert_eq!(e.torsion_x_poly(3), crate::poly::zpoly(&[0, 12, 0, 0, 3]));
    }

    #[test]
    fn torsion_of_unit_cubic_over_sqrt2() {
        // y^2 = x^3 + 1 keeps its rational Z/6 over Q(sqrt(2))
        let k = QuadField::new(2).unwrap();
        let e = EllipticCurve::from_i64([0, 0, 0, 0, 1]).unwrap().base_change(&k);
        let t = e.torsion_over_k();
        assert_eq!((t.m, t.n), (1, 6));
        assert_eq!(t.points.len(), 6);
        assert!(t.points.contains(&Point::Affine(k.from_i64(2), k.from_i64(3))));
    }

    #[test]
    fn torsion_x1_15_over_sqrt17_is_z4() {
        let k = k17();
        let e = x1_15().base_change(&k);
        let t = e.torsion_over_k();
        assert_eq!((t.m, t.n), (1, 4));
        let expected = [
            Point::Infinity,
            Point::Affine(k.from_i64(0), k.from_i64(0)),
            Point::Affine(k.from_i64(0), k.from_i64(-1)),
            Point::Affine(k.from_i64(-1), k.from_i64(0)),
        ];
        for p in &expected {
            assert!(t.points.contains(p));
        }
        assert_eq!(t.points.len(), 4);
    }

    #[test]
    fn torsion_x1_11_over_sqrt17_is_z5() {
        let k = k17();
        let e = x1_11().base_change(&k);
        let t = e.torsion_over_k();
        assert_eq!((t.m, t.n), (1, 5));
    }

    #[test]
    fn point_search_finds_paper_generators() {
        let k = k17();
        // y^2 = x^3 + x^2 - x has (sqrt(17) + 4, 3 sqrt(17) + 12)
        let e = EllipticCurve::from_i64([0, 1, 0, -1, 0]).unwrap().base_change(&k);
        let pts = e.point_search(4);
        let target = Point::Affine(k.elem(rat_i(4), rat_i(1)), k.elem(rat_i(12), rat_i(3)));
        assert!(pts.contains(&target));
        for p in &pts {
            assert!(e.on_curve(p));
        }
        // y^2 = x^3 - x^2 + x has ((9 - sqrt(17))/2, (19 - 3 sqrt(17))/2)
        let e2 = EllipticCurve::from_i64([0, -1, 0, 1, 0]).unwrap().base_change(&k);
        let pts2 = e2.point_search(9);
        let target2 =
            Point::Affine(k.elem(rat(9, 2), rat(-1, 2)), k.elem(rat(19, 2), rat(-3, 2)));
        assert!(pts2.contains(&target2));
    }

    #[test]
    fn infinite_order_certificate_for_x1_11_generator() {
        let k = k17();
        let e = x1_11().base_change(&k);
        let p = Point::Affine(k.elem(rat(1, 8), rat(-1, 8)), k.elem(rat(7, 16), rat(1, 16)));
        assert_eq!(e.point_order(&p, 24), None);
    }

    #[test]
    fn reduction_of_torsion_is_homomorphic() {
        let k = k17();
        let e = x1_15().base_change(&k);
        let t = e.torsion_over_k();
        let rm = k.residue_map(13).unwrap();
        let gf = rm.gf.clone();
        let ebar = EllipticCurve::new(
            gf.clone(),
            rm.reduce(&e.a1).unwrap(),
            rm.reduce(&e.a2).unwrap(),
            rm.reduce(&e.a3).unwrap(),
            rm.reduce(&e.a4).unwrap(),
            rm.reduce(&e.a6).unwrap(),
        )
        .unwrap();
        let red = |p: &ECPointK| -> Point<u64> {
            match p {
                Point::Infinity => Point::Infinity,
                Point::Affine(x, y) => Point::Affine(rm.reduce(x).unwrap(), rm.reduce(y).unwrap()),
            }
        };
        for p in &t.points {
            for q in &t.points {
                let lhs = red(&e.add_points(p, q));
                let rhs = ebar.add_points(&red(p), &red(q));
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn torsion_bound_divisible_by_torsion_order() {
        let k = k17();
        for coeffs in [[0i64, -1, -1, 0, 0], [1, 1, 1, 0, 0], [0, 1, 0, -1, 0]] {
            let e = EllipticCurve::from_i64(coeffs).unwrap().base_change(&k);
            let t = e.torsion_over_k();
            let b = e.torsion_bound(5);
            assert!(
                (&b % BigInt::from(t.order())).is_zero(),
                "bound {b} not divisible by torsion order {}",
                t.order()
            );
        }
    }
}
