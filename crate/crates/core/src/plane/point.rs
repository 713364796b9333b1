use crate::error::{GeometryError, Result};
use crate::scalar::Real;

/// A point `x + iy` of the upper half-plane.
#[derive(Clone, Debug, PartialEq)]
pub struct Point<S> {
    x: S,
    y: S,
}

impl<S: Real> Point<S> {
    pub fn new(x: S, y: S) -> Result<Self> {
        if !x.is_finite() || !y.is_finite() {
            return Err(GeometryError::NonFinite("point"));
        }
        if y <= S::zero() {
            return Err(GeometryError::NotInUpperHalfPlane(y.to_f64()));
        }
        Ok(Point { x, y })
    }

    /// Skips validation; callers guarantee `y > 0` up to rounding.
    pub(crate) fn raw(x: S, y: S) -> Self {
        Point { x, y }
    }

    pub fn i() -> Self {
        Point {
            x: S::zero(),
            y: S::one(),
        }
    }

    /// The point `i * height`.
    pub fn on_axis(height: S) -> Result<Self> {
        Point::new(S::zero(), height)
    }

    pub fn from_f64(x: f64, y: f64) -> Result<Self> {
        Point::new(S::from_f64(x), S::from_f64(y))
    }

    pub fn x(&self) -> &S {
        &self.x
    }

    pub fn y(&self) -> &S {
        &self.y
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.x.to_f64(), self.y.to_f64())
    }

    pub fn validate(self) -> Result<Self> {
        Point::new(self.x, self.y)
    }
}

/// A point of `R ∪ {∞}`.
#[derive(Clone, Debug, PartialEq)]
pub enum BoundaryPoint<S> {
    Finite(S),
    Infinity,
}

impl<S: Real> BoundaryPoint<S> {
    pub fn finite(x: S) -> Result<Self> {
        if !x.is_finite() {
            return Err(GeometryError::NonFinite("boundary point"));
        }
        Ok(BoundaryPoint::Finite(x))
    }

    pub fn from_f64(x: f64) -> Result<Self> {
        Self::finite(S::from_f64(x))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, BoundaryPoint::Infinity)
    }

    pub fn as_finite(&self) -> Option<&S> {
        match self {
            BoundaryPoint::Finite(x) => Some(x),
            BoundaryPoint::Infinity => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            BoundaryPoint::Finite(x) => x.to_f64(),
            BoundaryPoint::Infinity => f64::INFINITY,
        }
    }

    /// Position on the circle chart `x ↦ 2 atan x`, with `∞ ↦ π`.
    pub fn chart_angle(&self) -> S {
        match self {
            BoundaryPoint::Finite(x) => x.atan() * S::from_f64(2.0),
            BoundaryPoint::Infinity => S::pi(),
        }
    }

    /// Angular gap between two boundary points in the circle chart.
    pub fn chart_gap(&self, other: &Self) -> S {
        let two_pi = S::pi() * S::from_f64(2.0);
        let raw = (self.chart_angle() - other.chart_angle()).abs();
        let wrapped = two_pi - &raw;
        raw.min_of(wrapped)
    }

    /// Equality up to `tol` in the circle chart.
    pub fn approx_eq(&self, other: &Self, tol: &S) -> bool {
        match (self, other) {
            (BoundaryPoint::Infinity, BoundaryPoint::Infinity) => true,
            _ => self.chart_gap(other) <= *tol,
        }
    }
}

fn hypot<S: Real>(a: &S, b: &S) -> S {
    let (a, b) = (a.abs(), b.abs());
    let m = a.clone().max_of(b.clone());
    if m.is_zero() {
        return S::zero();
    }
    let ra = a / &m;
    let rb = b / &m;
    m * (ra.square() + rb.square()).sqrt()
}

/// Hyperbolic distance, via the half-angle form of
/// `cosh d = 1 + |p - q|^2 / (2 p.y q.y)` to keep short distances accurate.
pub fn hyp_distance<S: Real>(p: &Point<S>, q: &Point<S>) -> S {
    let dx = p.x.clone() - &q.x;
    let dy = p.y.clone() - &q.y;
    let chord = hypot(&dx, &dy);
    let half = chord / (p.y.sqrt() * q.y.sqrt() * S::from_f64(2.0));
    half.asinh() * S::from_f64(2.0)
}

/// Busemann cocycle `B_ξ(x, y)`.
///
/// At `∞` it is `log y.y - log x.y`; at finite `ξ` the map `z ↦ 1/(ξ - z)`
/// carries `ξ` to `∞` and the same expression is evaluated on the images.
pub fn busemann<S: Real>(xi: &BoundaryPoint<S>, x: &Point<S>, y: &Point<S>) -> S {
    match xi {
        BoundaryPoint::Infinity => (y.y.clone() / &x.y).ln(),
        BoundaryPoint::Finite(c) => {
            let sq = |z: &Point<S>| (c.clone() - &z.x).square() + z.y.square();
            let hy = y.y.clone() / sq(y);
            let hx = x.y.clone() / sq(x);
            (hy / hx).ln()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: f64, y: f64) -> Point<f64> {
        Point::from_f64(x, y).unwrap()
    }

    #[test]
    fn rejects_lower_half_plane_and_nan() {
        assert!(Point::<f64>::from_f64(0.0, 0.0).is_err());
        assert!(Point::<f64>::from_f64(0.0, -1.0).is_err());
        assert!(Point::<f64>::from_f64(f64::NAN, 1.0).is_err());
        assert!(BoundaryPoint::<f64>::from_f64(f64::INFINITY).is_err());
    }

    #[test]
    fn distance_examples() {
        assert_eq!(hyp_distance(&p(0.0, 1.0), &p(0.0, 1.0)), 0.0);
        // ∫_1^2 dy/y by the trapezoid rule on a fine grid
        let n = 200_000;
        let h = 1.0 / n as f64;
        let mut integral = 0.0;
        for k in 0..n {
            let y0 = 1.0 + k as f64 * h;
            integral += 0.5 * h * (1.0 / y0 + 1.0 / (y0 + h));
        }
        assert!((hyp_distance(&p(0.0, 1.0), &p(0.0, 2.0)) - integral).abs() < 1e-9);
        assert!((hyp_distance(&p(0.0, 1.0), &p(1.0, 1.0)) - 1.5f64.acosh()).abs() < 1e-14);
    }

    #[test]
    fn busemann_at_infinity_matches_limit() {
        // d(x, c(t)) - d(y, c(t)) with c(t) = i e^t at t = 30
        let c = p(0.0, 30f64.exp());
        let x = p(0.0, 2.0);
        let y = p(0.0, 1.0);
        let limit = hyp_distance(&x, &c) - hyp_distance(&y, &c);
        assert!((busemann(&BoundaryPoint::Infinity, &x, &y) - limit).abs() < 1e-9);
        assert!((busemann(&BoundaryPoint::Infinity, &x, &y) + 2f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn busemann_finite_matches_limit() {
        let xi = 0.7;
        let x = p(-0.3, 0.8);
        let y = p(1.4, 2.1);
        // geodesic ray from i toward xi: semicircle through i ending at xi
        let t = 18.0f64;
        let c = (xi * xi - 1.0) / (2.0 * xi);
        let r = (xi - c).abs();
        // point on the semicircle at hyperbolic distance t from i, toward xi
        let target = bisect_toward(c, r, xi, t);
        let limit = hyp_distance(&x, &target) - hyp_distance(&y, &target);
        let b = busemann(&BoundaryPoint::Finite(xi), &x, &y);
        assert!((b - limit).abs() < 1e-6, "{b} vs {limit}");
    }

    fn bisect_toward(c: f64, r: f64, xi: f64, t: f64) -> Point<f64> {
        let start = p(0.0, 1.0);
        let ang_i = (1.0f64).atan2(0.0 - c);
        let ang_xi = if xi > c { 0.0 } else { std::f64::consts::PI };
        let (mut lo, mut hi) = (0.0f64, 1.0f64);
        let at = |s: f64| {
            let a = ang_i + (ang_xi - ang_i) * s;
            p(c + r * a.cos(), r * a.sin())
        };
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if hyp_distance(&start, &at(mid)) < t {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        at(0.5 * (lo + hi))
    }

    #[test]
    fn chart_gap_wraps_through_infinity() {
        let big = BoundaryPoint::<f64>::from_f64(1e12).unwrap();
        let gap = big.chart_gap(&BoundaryPoint::Infinity);
        assert!(gap < 1e-11);
        let neg = BoundaryPoint::<f64>::from_f64(-1e12).unwrap();
        assert!(neg.chart_gap(&big) < 1e-11);
    }
}
