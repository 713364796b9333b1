use std::ops::Mul;

use crate::error::{GeometryError, Result};
use crate::plane::point::{BoundaryPoint, Point};
use crate::scalar::{Real, Tolerances};

/// Orientation-preserving isometry `z ↦ (az + b)/(cz + d)` with `ad - bc = 1`.
///
/// Matrices are compared projectively: `M` and `-M` are the same isometry.
#[derive(Clone, Debug)]
pub struct Isometry<S> {
    a: S,
    b: S,
    c: S,
    d: S,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IsometryKind {
    Identity,
    Parabolic,
    Hyperbolic,
    Elliptic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Classification {
    pub kind: IsometryKind,
    /// Set when the trace sits within `tol_trace` of 2 but visibly off it.
    pub low_confidence: bool,
}

impl<S: Real> Isometry<S> {
    /// Builds the isometry and rescales the matrix to determinant 1.
    pub fn new(a: S, b: S, c: S, d: S) -> Result<Self> {
        for v in [&a, &b, &c, &d] {
            if !v.is_finite() {
                return Err(GeometryError::NonFinite("matrix entry"));
            }
        }
        let det = a.clone() * &d - b.clone() * &c;
        if det <= S::zero() {
            return Err(GeometryError::DegenerateDeterminant(det.to_f64()));
        }
        let s = det.sqrt();
        Ok(Isometry {
            a: a / &s,
            b: b / &s,
            c: c / &s,
            d: d / &s,
        })
    }

    pub(crate) fn raw(a: S, b: S, c: S, d: S) -> Self {
        Isometry { a, b, c, d }
    }

    pub fn from_f64(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        Self::new(S::from_f64(a), S::from_f64(b), S::from_f64(c), S::from_f64(d))
    }

    pub fn identity() -> Self {
        Isometry::raw(S::one(), S::zero(), S::zero(), S::one())
    }

    /// `z ↦ z + shift`.
    pub fn translation(shift: S) -> Self {
        Isometry::raw(S::one(), shift, S::zero(), S::one())
    }

    /// `z ↦ factor * z`, `factor > 0`.
    pub fn dilation(factor: &S) -> Result<Self> {
        if *factor <= S::zero() || !factor.is_finite() {
            return Err(GeometryError::InvalidParameter(format!(
                "dilation factor {}",
                factor.to_f64()
            )));
        }
        let r = factor.sqrt();
        Ok(Isometry::raw(r.clone(), S::zero(), S::zero(), S::one() / r))
    }

    /// An isometry sending `0` to `to_zero_image` and `∞` to `to_infinity_image`.
    pub fn sending_zero_infinity(zero_image: &BoundaryPoint<S>, infinity_image: &BoundaryPoint<S>) -> Result<Self> {
        use BoundaryPoint::*;
        match (zero_image, infinity_image) {
            (Infinity, Infinity) => Err(GeometryError::EndpointCoincidence),
            (Finite(a), Infinity) => Ok(Isometry::translation(a.clone())),
            (Infinity, Finite(b)) => Ok(Isometry::raw(b.clone(), -S::one(), S::one(), S::zero())),
            (Finite(a), Finite(b)) => {
                if a == b {
                    return Err(GeometryError::EndpointCoincidence);
                }
                if b > a {
                    Isometry::new(b.clone(), a.clone(), S::one(), S::one())
                } else {
                    Isometry::new(b.clone(), -a.clone(), S::one(), -S::one())
                }
            }
        }
    }

    /// An isometry `g` with `g(ξ) = ∞`: the identity at `∞`, else
    /// `z ↦ 1/(ξ - z)`.
    pub fn sending_to_infinity(xi: &BoundaryPoint<S>) -> Self {
        match xi {
            BoundaryPoint::Infinity => Isometry::identity(),
            BoundaryPoint::Finite(x) => Isometry::raw(S::zero(), S::one(), -S::one(), x.clone()),
        }
    }

    /// The inverse of [`Isometry::sending_to_infinity`]: `[[ξ, -1], [1, 0]]`.
    pub fn from_infinity(xi: &BoundaryPoint<S>) -> Self {
        match xi {
            BoundaryPoint::Infinity => Isometry::identity(),
            BoundaryPoint::Finite(x) => Isometry::raw(x.clone(), -S::one(), S::one(), S::zero()),
        }
    }

    pub fn a(&self) -> &S {
        &self.a
    }
    pub fn b(&self) -> &S {
        &self.b
    }
    pub fn c(&self) -> &S {
        &self.c
    }
    pub fn d(&self) -> &S {
        &self.d
    }

    pub fn to_f64(&self) -> [f64; 4] {
        [self.a.to_f64(), self.b.to_f64(), self.c.to_f64(), self.d.to_f64()]
    }

    pub fn det(&self) -> S {
        self.a.clone() * &self.d - self.b.clone() * &self.c
    }

    /// `|det - 1|`; grows when products are formed without renormalizing.
    pub fn det_drift(&self) -> S {
        (self.det() - S::one()).abs()
    }

    pub fn trace(&self) -> S {
        self.a.clone() + &self.d
    }

    pub fn max_entry(&self) -> S {
        self.a
            .abs()
            .max_of(self.b.abs())
            .max_of(self.c.abs())
            .max_of(self.d.abs())
    }

    /// `self ∘ other`. No renormalization, so determinant drift stays visible.
    pub fn compose(&self, other: &Self) -> Self {
        let (a, b, c, d) = (&self.a, &self.b, &self.c, &self.d);
        let (e, f, g, h) = (&other.a, &other.b, &other.c, &other.d);
        Isometry {
            a: a.clone() * e + b.clone() * g,
            b: a.clone() * f + b.clone() * h,
            c: c.clone() * e + d.clone() * g,
            d: c.clone() * f + d.clone() * h,
        }
    }

    pub fn inverse(&self) -> Self {
        Isometry {
            a: self.d.clone(),
            b: -self.b.clone(),
            c: -self.c.clone(),
            d: self.a.clone(),
        }
    }

    pub fn renormalized(&self) -> Result<Self> {
        Isometry::new(self.a.clone(), self.b.clone(), self.c.clone(), self.d.clone())
    }

    /// `self^(-1) ∘ h ∘ self`.
    pub fn conjugate(&self, h: &Self) -> Self {
        self.inverse().compose(h).compose(self)
    }

    pub fn apply(&self, z: &Point<S>) -> Point<S> {
        let (x, y) = (z.x(), z.y());
        let den_re = self.c.clone() * x + &self.d;
        let den_im = self.c.clone() * y;
        let norm = den_re.square() + den_im.square();
        let num_re = self.a.clone() * x + &self.b;
        let re = (num_re * &den_re + self.a.clone() * &self.c * &y.square()) / &norm;
        let im = y.clone() / norm;
        Point::raw(re, im)
    }

    pub fn apply_boundary(&self, xi: &BoundaryPoint<S>) -> BoundaryPoint<S> {
        match xi {
            BoundaryPoint::Infinity => {
                if self.c.is_zero() {
                    BoundaryPoint::Infinity
                } else {
                    BoundaryPoint::Finite(self.a.clone() / &self.c)
                }
            }
            BoundaryPoint::Finite(x) => {
                let den = self.c.clone() * x + &self.d;
                if den.is_zero() {
                    BoundaryPoint::Infinity
                } else {
                    BoundaryPoint::Finite((self.a.clone() * x + &self.b) / den)
                }
            }
        }
    }

    /// Copy with the sign chosen so the entry of largest magnitude is positive.
    fn sign_normalized(&self) -> Self {
        let entries = [&self.a, &self.b, &self.c, &self.d];
        let mut best = entries[0];
        for e in entries.iter().skip(1) {
            if e.abs() > best.abs() {
                best = e;
            }
        }
        if *best < S::zero() {
            self.negated()
        } else {
            self.clone()
        }
    }

    fn negated(&self) -> Self {
        Isometry {
            a: -self.a.clone(),
            b: -self.b.clone(),
            c: -self.c.clone(),
            d: -self.d.clone(),
        }
    }

    /// Projective equality: entries agree within `tol * max(1, |entries|)`
    /// after fixing the sign of the largest entry.
    pub fn projective_eq(&self, other: &Self, tol: f64) -> bool {
        let p = self.sign_normalized();
        let q = other.sign_normalized();
        let scale = S::one().max_of(p.max_entry()).max_of(q.max_entry());
        let bound = scale * S::from_f64(tol);
        [(&p.a, &q.a), (&p.b, &q.b), (&p.c, &q.c), (&p.d, &q.d)]
            .iter()
            .all(|(u, v)| ((*u).clone() - *v).abs() <= bound)
    }

    pub fn classify(&self, tol: &Tolerances) -> Classification {
        if self.projective_eq(&Isometry::identity(), tol.det) {
            return Classification {
                kind: IsometryKind::Identity,
                low_confidence: false,
            };
        }
        let gap = self.trace().abs() - S::from_f64(2.0);
        let gap_abs = gap.abs();
        if gap_abs <= S::from_f64(tol.trace) {
            Classification {
                kind: IsometryKind::Parabolic,
                low_confidence: gap_abs > S::from_f64(tol.det) * self.max_entry().max_of(S::one()),
            }
        } else if gap > S::zero() {
            Classification {
                kind: IsometryKind::Hyperbolic,
                low_confidence: false,
            }
        } else {
            Classification {
                kind: IsometryKind::Elliptic,
                low_confidence: false,
            }
        }
    }

    /// Copy with positive trace.
    fn with_positive_trace(&self) -> Self {
        if self.trace() < S::zero() {
            self.negated()
        } else {
            self.clone()
        }
    }

    /// Fixed point of a parabolic isometry.
    pub fn parabolic_fixed_point(&self, tol: &Tolerances) -> Result<BoundaryPoint<S>> {
        if self.classify(tol).kind != IsometryKind::Parabolic {
            return Err(GeometryError::NotParabolic);
        }
        let m = self.with_positive_trace();
        if m.c.abs() <= S::from_f64(tol.det) * m.max_entry() {
            Ok(BoundaryPoint::Infinity)
        } else {
            BoundaryPoint::finite((m.a.clone() - &m.d) / (m.c.clone() * S::from_f64(2.0)))
        }
    }

    /// Largest entry of `P - I` for the positive-trace representative.
    pub fn parabolic_spread(&self) -> S {
        let m = self.with_positive_trace();
        let one = S::one();
        [m.a.clone() - &one, m.b.clone(), m.c.clone(), m.d.clone() - &one]
            .iter()
            .map(|v| v.abs())
            .fold(S::zero(), |acc, v| acc.max_of(v))
    }

    /// Velocity at `z` of the one-parameter parabolic group through `self`.
    ///
    /// For a parabolic `P = I + N` (trace +2, `N² = 0`) the flow is `I + sN`,
    /// whose velocity field is `n12 + (n11 - n22) z - n21 z²`.
    pub fn parabolic_velocity(&self, z: &Point<S>) -> (S, S) {
        let m = self.with_positive_trace();
        let n11 = m.a.clone() - S::one();
        let n22 = m.d.clone() - S::one();
        let (x, y) = (z.x(), z.y());
        let diff = n11 - &n22;
        let z2_re = x.square() - y.square();
        let z2_im = x.clone() * y * S::from_f64(2.0);
        let re = m.b.clone() + diff.clone() * x - m.c.clone() * &z2_re;
        let im = diff * y - m.c.clone() * &z2_im;
        (re, im)
    }
}

impl<'a, S: Real> Mul<&'a Isometry<S>> for &'a Isometry<S> {
    type Output = Isometry<S>;

    fn mul(self, rhs: &'a Isometry<S>) -> Isometry<S> {
        self.compose(rhs)
    }
}
