//! Seeded random configurations.
//!
//! All streams come from PCG-XSH-RR 64/32 (`rand_pcg::Pcg32`), keyed by a
//! user seed and a per-purpose stream id, so a fixed seed reproduces every
//! configuration independently of evaluation order.

use rand::Rng;
use rand_pcg::Pcg32;

use crate::error::Result;
use crate::horocycle::{Horocycle, TangencyData};
use crate::plane::{BoundaryPoint, Isometry, Point, UnitTangent};
use crate::scalar::Real;

pub fn rng(seed: u64, stream: u64) -> Pcg32 {
    Pcg32::new(seed, stream)
}

pub fn random_point<S: Real>(rng: &mut Pcg32) -> Result<Point<S>> {
    let x = rng.gen_range(-2.0..2.0);
    let y = rng.gen_range(-1.5f64..1.5).exp();
    Point::from_f64(x, y)
}

pub fn random_tangent<S: Real>(rng: &mut Pcg32) -> Result<UnitTangent<S>> {
    let base = random_point(rng)?;
    let angle = rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI);
    UnitTangent::from_direction(base, &S::from_f64(angle))
}

/// Random isometry with entries of moderate size.
pub fn random_isometry<S: Real>(rng: &mut Pcg32) -> Result<Isometry<S>> {
    loop {
        let a: f64 = rng.gen_range(-2.0..2.0);
        let b: f64 = rng.gen_range(-2.0..2.0);
        let c: f64 = rng.gen_range(-2.0..2.0);
        let d: f64 = rng.gen_range(-2.0..2.0);
        let det = a * d - b * c;
        if det > 0.2 {
            return Isometry::from_f64(a, b, c, d);
        }
    }
}

/// `(u, v)` with `v` on the stable horocycle of `u`, at arc length in
/// `[-3, 3]`.
pub fn random_stable_pair<S: Real>(rng: &mut Pcg32) -> Result<(UnitTangent<S>, UnitTangent<S>)> {
    let u = random_tangent::<S>(rng)?;
    let s = rng.gen_range(-3.0..3.0);
    let base = Horocycle::slide(u.forward(), u.base(), &S::from_f64(s))?;
    let v = UnitTangent::new(base, u.forward().clone());
    Ok((u, v))
}

/// `(u, v)` with `v(+∞) = u(+∞)`: a stable partner flowed by a time in `[-2, 2]`.
pub fn random_weak_stable_pair<S: Real>(rng: &mut Pcg32) -> Result<(UnitTangent<S>, UnitTangent<S>)> {
    let (u, v) = random_stable_pair::<S>(rng)?;
    let r = rng.gen_range(-2.0..2.0);
    Ok((u, v.flow(&S::from_f64(r))?))
}

/// A vector tangent to a random oriented pair: tangency time in `[0, 3]` on
/// either side of the geodesic, translation length log-uniform in
/// `[1e-3, 1]`.
pub fn random_tangency<S: Real>(rng: &mut Pcg32) -> Result<TangencyData<S>> {
    let u = random_tangent::<S>(rng)?;
    let t0 = rng.gen_range(0.0..3.0f64);
    let side = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
    let ell = rng.gen_range((1e-3f64).ln()..0.0).exp();
    let xi = u
        .frame()?
        .apply_boundary(&BoundaryPoint::Finite(S::from_f64(side * t0.exp())));
    TangencyData::construct(u, &xi, &S::from_f64(ell))
}
