use crate::error::{GeometryError, Result};
use crate::plane::isometry::Isometry;
use crate::plane::point::{hyp_distance, BoundaryPoint, Point};
use crate::scalar::Real;

/// A unit tangent vector of the hyperbolic plane, stored as its basepoint and
/// the forward endpoint of the geodesic it generates.
#[derive(Clone, Debug, PartialEq)]
pub struct UnitTangent<S> {
    base: Point<S>,
    forward: BoundaryPoint<S>,
}

impl<S: Real> UnitTangent<S> {
    pub fn new(base: Point<S>, forward: BoundaryPoint<S>) -> Self {
        UnitTangent { base, forward }
    }

    /// The vertical vector at `i` pointing to `∞`.
    pub fn vertical() -> Self {
        UnitTangent::new(Point::i(), BoundaryPoint::Infinity)
    }

    /// Vector at `base` whose Euclidean direction makes angle `angle` with the
    /// positive real axis.
    pub fn from_direction(base: Point<S>, angle: &S) -> Result<Self> {
        // endpoint x + y (1 + sin θ)/cos θ, written as x + y tan(θ/2 + π/4)
        let half = angle.clone() / S::from_f64(2.0) + S::pi() / S::from_f64(4.0);
        let slope = half.tan();
        if !slope.is_finite() || slope.abs() * S::epsilon() * S::from_f64(64.0) > S::one() {
            return Ok(UnitTangent::new(base, BoundaryPoint::Infinity));
        }
        let fwd = base.x().clone() + base.y().clone() * slope;
        Ok(UnitTangent::new(base, BoundaryPoint::finite(fwd)?))
    }

    pub fn base(&self) -> &Point<S> {
        &self.base
    }

    pub fn forward(&self) -> &BoundaryPoint<S> {
        &self.forward
    }

    /// The endpoint of the reversed ray.
    pub fn backward(&self) -> BoundaryPoint<S> {
        let (x, y) = (self.base.x(), self.base.y());
        match &self.forward {
            BoundaryPoint::Infinity => BoundaryPoint::Finite(x.clone()),
            BoundaryPoint::Finite(f) => {
                if f == x {
                    return BoundaryPoint::Infinity;
                }
                // center c of the semicircle: |c - f| = |c - base|
                let num = x.square() + y.square() - f.square();
                let c = num / ((x.clone() - f) * S::from_f64(2.0));
                BoundaryPoint::Finite(c * S::from_f64(2.0) - f)
            }
        }
    }

    /// The isometry `g` with `g(0) = u(-∞)`, `g(∞) = u(+∞)`, `g(i) = u(0)`.
    pub fn frame(&self) -> Result<Isometry<S>> {
        let (m0, height) = self.frame_parts()?;
        Ok(m0.compose(&Isometry::dilation(&height)?))
    }

    fn frame_parts(&self) -> Result<(Isometry<S>, S)> {
        let m0 = Isometry::sending_zero_infinity(&self.backward(), &self.forward)?;
        let w = m0.inverse().apply(&self.base);
        Ok((m0, w.y().clone()))
    }

    /// Geodesic flow `g_t`.
    pub fn flow(&self, t: &S) -> Result<Self> {
        if t.is_zero() {
            return Ok(self.clone());
        }
        Ok(UnitTangent::new(self.at(t)?, self.forward.clone()))
    }

    /// Basepoint of `g_t u`.
    pub fn at(&self, t: &S) -> Result<Point<S>> {
        if t.is_zero() {
            return Ok(self.base.clone());
        }
        let (m0, height) = self.frame_parts()?;
        let h = height * t.exp();
        let p = m0.apply(&Point::on_axis(h)?);
        p.validate().map_err(|_| GeometryError::NonFinite("geodesic flow"))
    }

    /// Euclidean velocity at the basepoint (hyperbolic unit speed).
    pub fn velocity(&self) -> Result<(S, S)> {
        let g = self.frame()?;
        // g'(i) * i with g'(z) = 1/(cz + d)^2
        let (c, d) = (g.c(), g.d());
        let re = c.clone() * d * S::from_f64(2.0);
        let im = d.square() - c.square();
        let norm = (d.square() + c.square()).square();
        Ok((re / &norm, im / norm))
    }

    pub fn transform(&self, g: &Isometry<S>) -> Self {
        UnitTangent::new(g.apply(&self.base), g.apply_boundary(&self.forward))
    }

    pub fn to_f64(&self) -> ((f64, f64), f64) {
        (self.base.to_f64(), self.forward.to_f64())
    }
}

/// `d(u(0), v(0)) + d(u(1), v(1))`.
pub fn d1<S: Real>(u: &UnitTangent<S>, v: &UnitTangent<S>) -> Result<S> {
    let one = S::one();
    let d0 = hyp_distance(u.base(), v.base());
    let d_one = hyp_distance(&u.at(&one)?, &v.at(&one)?);
    Ok(d0 + d_one)
}
