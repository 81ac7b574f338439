use quadtor::ellcurve::EllipticCurve;
use quadtor::qfield::QuadField;
use std::time::Instant;
fn main() {
    let k = QuadField::new(17).unwrap();
    for coeffs in [[0i64, -1, -1, 0, 0], [1, 1, 1, 0, 0], [0, 1, 0, -1, 0]] {
        let e = EllipticCurve::from_i64(coeffs).unwrap().base_change(&k);
        let t0 = Instant::now();
        let b = e.torsion_bound(5);
        println!("{coeffs:?}: bound = {b} in {:?}", t0.elapsed());
        let t0 = Instant::now();
        let t = e.torsion_over_k();
        println!("  torsion ({}, {}) in {:?}", t.m, t.n, t0.elapsed());
    }
}
