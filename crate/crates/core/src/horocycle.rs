use rayon::prelude::*;

use crate::error::{GeometryError, Result};
use crate::plane::{busemann, d1, hyp_distance, BoundaryPoint, Isometry, IsometryKind, Point, UnitTangent};
use crate::scalar::{Real, Tolerances};

/// Validation tolerance for levels and fixed points.
pub const GEOMETRY_TOL: f64 = 1e-9;

/// The horocycle `{z : B_center(z, i) = -level}`.
#[derive(Clone, Debug, PartialEq)]
pub struct Horocycle<S> {
    center: BoundaryPoint<S>,
    level: S,
}

/// Euclidean description of a horocycle.
#[derive(Clone, Debug, PartialEq)]
pub enum EuclideanHorocycle<S> {
    /// Horizontal line `Im z = height`.
    Line { height: S },
    /// Circle tangent to the real axis at `foot` with the given diameter.
    Circle { foot: S, diameter: S },
}

impl<S: Real> Horocycle<S> {
    pub fn new(center: BoundaryPoint<S>, level: S) -> Result<Self> {
        if !level.is_finite() {
            return Err(GeometryError::NonFinite("horocycle level"));
        }
        Ok(Horocycle { center, level })
    }

    /// The horocycle centered at `center` passing through `z`.
    pub fn through(center: BoundaryPoint<S>, z: &Point<S>) -> Result<Self> {
        let level = level_of(&center, z);
        Horocycle::new(center, level)
    }

    pub fn center(&self) -> &BoundaryPoint<S> {
        &self.center
    }

    pub fn level(&self) -> &S {
        &self.level
    }

    /// `-B_center(z, i)`: equals the level on the horocycle and exceeds it
    /// inside the horoball.
    pub fn level_at(&self, z: &Point<S>) -> S {
        level_of(&self.center, z)
    }

    pub fn residual(&self, z: &Point<S>) -> S {
        self.level_at(z) - &self.level
    }

    /// Strictly inside the open horoball.
    pub fn encloses(&self, z: &Point<S>) -> bool {
        self.level_at(z) > self.level
    }

    pub fn euclidean(&self) -> EuclideanHorocycle<S> {
        match &self.center {
            BoundaryPoint::Infinity => EuclideanHorocycle::Line {
                height: self.level.exp(),
            },
            BoundaryPoint::Finite(xi) => EuclideanHorocycle::Circle {
                foot: xi.clone(),
                diameter: (S::one() + xi.square()) * (-self.level.clone()).exp(),
            },
        }
    }

    pub fn from_euclidean(e: &EuclideanHorocycle<S>) -> Result<Self> {
        match e {
            EuclideanHorocycle::Line { height } => {
                Horocycle::through(BoundaryPoint::Infinity, &Point::on_axis(height.clone())?)
            }
            EuclideanHorocycle::Circle { foot, diameter } => Horocycle::through(
                BoundaryPoint::finite(foot.clone())?,
                &Point::new(foot.clone(), diameter.clone())?,
            ),
        }
    }

    /// The point of the horocycle farthest from its center in the Euclidean
    /// picture (the top of the circle, or `i e^level`).
    pub fn apex(&self) -> Point<S> {
        match self.euclidean() {
            EuclideanHorocycle::Line { height } => Point::raw(S::zero(), height),
            EuclideanHorocycle::Circle { foot, diameter } => Point::raw(foot, diameter),
        }
    }

    pub fn transform(&self, g: &Isometry<S>) -> Result<Self> {
        Horocycle::through(g.apply_boundary(&self.center), &g.apply(&self.apex()))
    }

    /// Chart in which the horocycle is the horizontal line `Im z = height`.
    fn upper_chart(&self) -> (Isometry<S>, S) {
        let to_inf = Isometry::sending_to_infinity(&self.center);
        let h = to_inf.apply(&self.apex()).y().clone();
        (to_inf, h)
    }

    /// The point at signed arc length `s` from `z` along the horocycle
    /// through `z` with the same center.
    pub fn slide(center: &BoundaryPoint<S>, z: &Point<S>, s: &S) -> Result<Point<S>> {
        let to_inf = Isometry::sending_to_infinity(center);
        let w = to_inf.apply(z);
        let moved = Point::new(w.x().clone() + s.clone() * w.y(), w.y().clone())?;
        to_inf.inverse().apply(&moved).validate()
    }
}

fn level_of<S: Real>(center: &BoundaryPoint<S>, z: &Point<S>) -> S {
    -busemann(center, z, &Point::i())
}

/// A horocycle together with a parabolic isometry preserving it.
#[derive(Clone, Debug)]
pub struct OrientedPair<S> {
    horocycle: Horocycle<S>,
    parabolic: Isometry<S>,
}

impl<S: Real> OrientedPair<S> {
    pub fn new(horocycle: Horocycle<S>, parabolic: Isometry<S>) -> Result<Self> {
        let tol = Tolerances::of::<S>();
        let class = parabolic.classify(&tol);
        if class.kind != IsometryKind::Parabolic {
            return Err(GeometryError::NotParabolic);
        }
        let fixed = parabolic.parabolic_fixed_point(&tol)?;
        // the fixed point of I + N is only known to about eps / |N|
        let spread = parabolic.parabolic_spread();
        let conditioning = S::epsilon() * S::from_f64(64.0) / spread;
        let center_tol = S::from_f64(GEOMETRY_TOL).max_of(conditioning);
        if !fixed.approx_eq(horocycle.center(), &center_tol) {
            return Err(GeometryError::CenterMismatch);
        }
        let z = horocycle.apex();
        let drift = horocycle.residual(&parabolic.apply(&z));
        if drift.abs() > S::from_f64(GEOMETRY_TOL) {
            return Err(GeometryError::LevelNotPreserved(drift.to_f64()));
        }
        Ok(OrientedPair { horocycle, parabolic })
    }

    pub fn horocycle(&self) -> &Horocycle<S> {
        &self.horocycle
    }

    pub fn parabolic(&self) -> &Isometry<S> {
        &self.parabolic
    }

    pub fn transform(&self, g: &Isometry<S>) -> Result<Self> {
        let p = g.compose(&self.parabolic).compose(&g.inverse());
        OrientedPair::new(self.horocycle.transform(g)?, p)
    }
}

/// Translation length `ℓ(H, p)`: with the center moved to `∞`, `p` becomes
/// `z ↦ z + λ` and the horocycle the line at height `h`, so `ℓ = |λ| / h`.
pub fn translation_length<S: Real>(pair: &OrientedPair<S>) -> S {
    let (chart, h) = pair.horocycle.upper_chart();
    let q = chart.compose(&pair.parabolic).compose(&chart.inverse());
    let half_trace = (q.a().clone() + q.d()) / S::from_f64(2.0);
    let lambda = q.b().clone() / half_trace;
    lambda.abs() / h
}

/// Time at which the geodesic of `u` is tangent to the horocycle centered at
/// `xi`, and the tangency point.
fn tangency_parts<S: Real>(u: &UnitTangent<S>, xi: &BoundaryPoint<S>) -> Result<(S, Point<S>)> {
    let g = u.frame()?;
    let x0 = match g.inverse().apply_boundary(xi) {
        BoundaryPoint::Infinity => return Err(GeometryError::EndpointCoincidence),
        BoundaryPoint::Finite(x) => x,
    };
    if x0.is_zero() {
        return Err(GeometryError::EndpointCoincidence);
    }
    let r = x0.abs();
    let q = g.apply(&Point::on_axis(r.clone())?);
    Ok((r.ln(), q))
}

/// The unique horocycle centered at `xi` tangent to the geodesic of `u`.
///
/// In the frame of `u` the geodesic is the imaginary axis and `xi` some
/// `x₀ ≠ 0`; the tangent horocycle is the circle of radius `|x₀|` centered at
/// `(x₀, |x₀|)`, touching the axis at `i|x₀|`.
pub fn tangent_horocycle<S: Real>(u: &UnitTangent<S>, xi: &BoundaryPoint<S>) -> Result<Horocycle<S>> {
    let (_, q) = tangency_parts(u, xi)?;
    Horocycle::through(xi.clone(), &q)
}

/// A parabolic fixing `fixed_point`, preserving `horocycle`, with
/// translation length `length`, oriented so that `u` is tangent to the
/// resulting pair.
pub fn make_parabolic<S: Real>(
    fixed_point: &BoundaryPoint<S>,
    horocycle: &Horocycle<S>,
    length: &S,
    u: &UnitTangent<S>,
) -> Result<Isometry<S>> {
    if !horocycle.center().approx_eq(fixed_point, &S::from_f64(GEOMETRY_TOL)) {
        return Err(GeometryError::CenterMismatch);
    }
    if !(*length > S::zero()) || !length.is_finite() {
        return Err(GeometryError::InvalidParameter(format!(
            "translation length {}",
            length.to_f64()
        )));
    }
    let (_, q) = tangency_parts(u, fixed_point)?;
    let gap = horocycle.residual(&q);
    if gap.abs() > S::from_f64(GEOMETRY_TOL) {
        return Err(GeometryError::NotTangent(gap.to_f64()));
    }
    let (chart, h) = horocycle.upper_chart();
    let back = chart.inverse();
    let p = back.compose(&Isometry::translation(length.clone() * h)).compose(&chart);
    if orientation(u, &p, &q)? > S::zero() {
        Ok(p)
    } else {
        Ok(p.inverse())
    }
}

/// Euclidean dot product of the geodesic velocity at `q` with the velocity of
/// the parabolic flow through `p`.
fn orientation<S: Real>(u: &UnitTangent<S>, p: &Isometry<S>, q: &Point<S>) -> Result<S> {
    let at_q = UnitTangent::new(q.clone(), u.forward().clone());
    let (vx, vy) = at_q.velocity()?;
    let (px, py) = p.parabolic_velocity(q);
    Ok(vx * px + vy * py)
}

/// A vector tangent to an oriented pair, with its tangency time and point.
#[derive(Clone, Debug)]
pub struct TangencyData<S> {
    vector: UnitTangent<S>,
    pair: OrientedPair<S>,
    tangent_time: S,
    tangent_point: Point<S>,
}

impl<S: Real> TangencyData<S> {
    /// Checks that the forward ray of `vector` touches the horocycle and that
    /// the orientation is positive.
    pub fn new(vector: UnitTangent<S>, pair: OrientedPair<S>) -> Result<Self> {
        let (t0, q) = tangency_parts(&vector, pair.horocycle.center())?;
        let gap = pair.horocycle.residual(&q);
        if gap.abs() > S::from_f64(GEOMETRY_TOL) {
            return Err(GeometryError::NotTangent(gap.to_f64()));
        }
        if t0 < -S::from_f64(GEOMETRY_TOL) {
            return Err(GeometryError::TangencyBehindBase(t0.to_f64()));
        }
        if !(orientation(&vector, &pair.parabolic, &q)? > S::zero()) {
            return Err(GeometryError::WrongOrientation);
        }
        Ok(TangencyData {
            vector,
            pair,
            tangent_time: t0,
            tangent_point: q,
        })
    }

    /// Builds the tangent horocycle at `xi` and the parabolic of the given
    /// translation length in one step.
    pub fn construct(vector: UnitTangent<S>, xi: &BoundaryPoint<S>, length: &S) -> Result<Self> {
        let h = tangent_horocycle(&vector, xi)?;
        let p = make_parabolic(xi, &h, length, &vector)?;
        TangencyData::new(vector, OrientedPair::new(h, p)?)
    }

    pub fn vector(&self) -> &UnitTangent<S> {
        &self.vector
    }

    pub fn pair(&self) -> &OrientedPair<S> {
        &self.pair
    }

    pub fn tangent_time(&self) -> &S {
        &self.tangent_time
    }

    pub fn tangent_point(&self) -> &Point<S> {
        &self.tangent_point
    }
}

/// Same basepoint, forward endpoint pushed by the parabolic.
pub fn wind<S: Real>(td: &TangencyData<S>) -> UnitTangent<S> {
    UnitTangent::new(
        td.vector.base().clone(),
        td.pair.parabolic.apply_boundary(td.vector.forward()),
    )
}

/// `B_{u(+∞)}(p⁻¹ u(0), u(0))`.
pub fn winding_time<S: Real>(td: &TangencyData<S>) -> S {
    let u = &td.vector;
    let back = td.pair.parabolic.inverse().apply(u.base());
    busemann(u.forward(), &back, u.base())
}

/// Which term attains the minimum in the Key Proposition.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Branch {
    Identity,
    Parabolic,
}

/// Range of `t` relative to the tangency time `t₁`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProofCase {
    /// `t ≤ t₁ - 1`
    Before,
    /// `t ≥ t₁`
    After,
    /// `t₁ - 1 < t < t₁`
    Transition,
}

impl ProofCase {
    pub fn of(t: f64, t1: f64) -> Self {
        if t <= t1 - 1.0 {
            ProofCase::Before
        } else if t >= t1 {
            ProofCase::After
        } else {
            ProofCase::Transition
        }
    }

    /// Multiple of `ℓ` bounding the unshifted distance in this range.
    pub fn bound_factor(self) -> f64 {
        match self {
            ProofCase::Before => 6.0,
            ProofCase::After => 8.0,
            ProofCase::Transition => 10.0,
        }
    }
}

#[derive(Clone, Debug)]
pub struct KeyPropSample {
    pub t: f64,
    /// `d1(g_{t+τ} v, g_t u)`
    pub shifted_identity: f64,
    /// `d1(g_{t+τ} v, p g_t u)`
    pub shifted_parabolic: f64,
    pub branch: Branch,
    /// `d1(g_t v, g_t u)`
    pub unshifted_identity: f64,
    /// `d1(g_t v, p g_t u)`
    pub unshifted_parabolic: f64,
    /// `d(v(t), u(t))`
    pub base_identity: f64,
    /// `d(v(t), p u(t))`
    pub base_parabolic: f64,
    pub case: ProofCase,
}

impl KeyPropSample {
    pub fn min(&self) -> f64 {
        self.shifted_identity.min(self.shifted_parabolic)
    }

    /// The distance the proof bounds in this sample's case.
    pub fn case_distance(&self) -> f64 {
        match self.case {
            ProofCase::After => self.unshifted_parabolic,
            _ => self.unshifted_identity,
        }
    }
}

/// Quantities from the normalized picture: `H` centered at `∞`, `u(0) = i`,
/// `p(z) = z + λ`. `u` and `Wind(u)` run along half-circles with radii `R`,
/// `R'` and centers `c`, `c'`; `q`, `q'` are their tops.
#[derive(Clone, Debug)]
pub struct NormalizedEstimates {
    pub lambda: f64,
    pub radius: f64,
    pub radius_wound: f64,
    pub center: f64,
    pub center_wound: f64,
    /// `λ e^{-b}` with `e^b = R`
    pub ell_from_radius: f64,
    /// `d(q, q')`
    pub apex_distance: f64,
    pub t1: f64,
    pub t1_wound: f64,
}

impl NormalizedEstimates {
    pub fn radius_gap_ok(&self) -> bool {
        let gap = 2.0 * self.radius_wound - 2.0 * self.radius;
        gap >= -GEOMETRY_TOL && gap < self.lambda
    }

    pub fn center_gap_ok(&self) -> bool {
        let gap = self.center_wound - self.center;
        gap >= -GEOMETRY_TOL && gap < self.lambda
    }

    pub fn apex_ok(&self, ell: f64) -> bool {
        self.apex_distance <= 1.5 * ell + GEOMETRY_TOL && (self.t1 - self.t1_wound).abs() <= 1.5 * ell + GEOMETRY_TOL
    }
}

#[derive(Clone, Debug)]
pub struct KeyPropReport {
    pub ell: f64,
    pub tau: f64,
    pub t1: f64,
    pub samples: Vec<KeyPropSample>,
    pub estimates: NormalizedEstimates,
}

impl KeyPropReport {
    pub fn max_min(&self) -> f64 {
        self.samples.iter().map(KeyPropSample::min).fold(0.0, f64::max)
    }

    /// Largest `distance / ℓ` among samples in `case`, if any.
    pub fn max_case_ratio(&self, case: ProofCase) -> Option<f64> {
        self.samples
            .iter()
            .filter(|s| s.case == case)
            .map(|s| s.case_distance() / self.ell)
            .reduce(f64::max)
    }

    /// Largest `d(v(t), u(t)) / ℓ` over `0 ≤ t ≤ t₁`.
    pub fn max_base_identity_ratio(&self) -> Option<f64> {
        self.samples
            .iter()
            .filter(|s| s.t <= self.t1)
            .map(|s| s.base_identity / self.ell)
            .reduce(f64::max)
    }

    /// Largest `d(v(t), p u(t)) / ℓ` over `t ≥ t₁`.
    pub fn max_base_parabolic_ratio(&self) -> Option<f64> {
        self.samples
            .iter()
            .filter(|s| s.t >= self.t1)
            .map(|s| s.base_parabolic / self.ell)
            .reduce(f64::max)
    }

    /// Every bound of the statement and of its proof, with additive `slack`.
    pub fn all_bounds_hold(&self, slack: f64) -> bool {
        let ell = self.ell;
        let cases = [ProofCase::Before, ProofCase::After, ProofCase::Transition]
            .iter()
            .all(|&c| {
                self.max_case_ratio(c)
                    .is_none_or(|r| r * ell <= c.bound_factor() * ell + slack)
            });
        self.max_min() <= 12.0 * ell + slack
            && cases
            && self
                .max_base_identity_ratio()
                .is_none_or(|r| r * ell <= 3.0 * ell + slack)
            && self
                .max_base_parabolic_ratio()
                .is_none_or(|r| r * ell <= 4.0 * ell + slack)
            && self.tau.abs() <= ell + slack
            && self.estimates.radius_gap_ok()
            && self.estimates.center_gap_ok()
            && self.estimates.apex_ok(ell)
    }
}

/// The isometry moving `H` to center `∞` and `u(0)` to `i`.
fn normalizing_map<S: Real>(td: &TangencyData<S>) -> Result<Isometry<S>> {
    let to_inf = Isometry::sending_to_infinity(td.pair.horocycle.center());
    let z = to_inf.apply(td.vector.base());
    let affine = Isometry::new(S::one(), -z.x().clone(), S::zero(), z.y().clone())?;
    Ok(affine.compose(&to_inf))
}

pub fn normalized_estimates<S: Real>(td: &TangencyData<S>) -> Result<NormalizedEstimates> {
    let n = normalizing_map(td)?;
    let p = n.compose(&td.pair.parabolic).compose(&n.inverse());
    let lambda = p.b().clone() / ((p.a().clone() + p.d()) / S::from_f64(2.0));
    let f = match n.apply_boundary(td.vector.forward()) {
        BoundaryPoint::Finite(f) => f,
        BoundaryPoint::Infinity => return Err(GeometryError::EndpointCoincidence),
    };
    // reflect x ↦ -x when p translates to the left; distances are unchanged
    let (lambda, f) = if lambda < S::zero() { (-lambda, -f) } else { (lambda, f) };
    if !(lambda > S::zero()) || !(f > S::zero()) {
        return Err(GeometryError::WrongOrientation);
    }
    let two = S::from_f64(2.0);
    let semicircle = |f: &S| {
        let r = (f.square() + S::one()) / (f.clone() * &two);
        let c = (f.square() - S::one()) / (f.clone() * &two);
        (r, c)
    };
    let (r, c) = semicircle(&f);
    let fw = f + &lambda;
    let (rw, cw) = semicircle(&fw);
    let q = Point::new(c.clone(), r.clone())?;
    let qw = Point::new(cw.clone(), rw.clone())?;
    let i = Point::i();
    // signed distance from i along each ray to the apex
    let signed = |c: &S, q: &Point<S>| {
        let d = hyp_distance(&i, q);
        if *c < S::zero() {
            -d
        } else {
            d
        }
    };
    Ok(NormalizedEstimates {
        lambda: lambda.to_f64(),
        radius: r.to_f64(),
        radius_wound: rw.to_f64(),
        center: c.to_f64(),
        center_wound: cw.to_f64(),
        ell_from_radius: (lambda / &r).to_f64(),
        apex_distance: hyp_distance(&q, &qw).to_f64(),
        t1: signed(&c, &q).to_f64(),
        t1_wound: signed(&cw, &qw).to_f64(),
    })
}

/// Evaluates both branches of the Key Proposition and the intermediate
/// distances of its proof at each `t` of `grid`.
pub fn key_proposition_check<S: Real>(td: &TangencyData<S>, grid: &[f64]) -> Result<KeyPropReport> {
    let ell = translation_length(&td.pair);
    let tau = winding_time(td);
    let v = wind(td);
    let u = &td.vector;
    let p = &td.pair.parabolic;
    let t1 = td.tangent_time.to_f64();
    let samples = grid
        .par_iter()
        .map(|&t| {
            let ts = S::from_f64(t);
            let gu = u.flow(&ts)?;
            let pgu = gu.transform(p);
            let gv = v.flow(&ts)?;
            let gv_shift = v.flow(&(ts + &tau))?;
            let shifted_identity = d1(&gv_shift, &gu)?.to_f64();
            let shifted_parabolic = d1(&gv_shift, &pgu)?.to_f64();
            Ok(KeyPropSample {
                t,
                shifted_identity,
                shifted_parabolic,
                branch: if shifted_identity <= shifted_parabolic {
                    Branch::Identity
                } else {
                    Branch::Parabolic
                },
                unshifted_identity: d1(&gv, &gu)?.to_f64(),
                unshifted_parabolic: d1(&gv, &pgu)?.to_f64(),
                base_identity: hyp_distance(gv.base(), gu.base()).to_f64(),
                base_parabolic: hyp_distance(gv.base(), pgu.base()).to_f64(),
                case: ProofCase::of(t, t1),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(KeyPropReport {
        ell: ell.to_f64(),
        tau: tau.to_f64(),
        t1,
        samples,
        estimates: normalized_estimates(td)?,
    })
}

/// `n` evenly spaced points on `[lo, hi]`, endpoints included.
pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..n).map(|k| lo + (hi - lo) * k as f64 / (n - 1) as f64).collect(),
    }
}

/// Doubles the grid on `[0, t_max]` until the maximum of the minimum branch
/// changes by less than `1e-6`, up to `max_doublings` times.
pub fn key_proposition_dense<S: Real>(
    td: &TangencyData<S>,
    t_max: f64,
    initial: usize,
    max_doublings: usize,
) -> Result<(KeyPropReport, usize)> {
    let mut n = initial.max(2);
    let mut report = key_proposition_check(td, &linspace(0.0, t_max, n))?;
    for _ in 0..max_doublings {
        let finer_n = 2 * n - 1;
        let finer = key_proposition_check(td, &linspace(0.0, t_max, finer_n))?;
        let change = (finer.max_min() - report.max_min()).abs();
        report = finer;
        n = finer_n;
        if change < 1e-6 {
            break;
        }
    }
    Ok((report, n))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: f64, y: f64) -> Point<f64> {
        Point::from_f64(x, y).unwrap()
    }

    #[test]
    fn euclidean_round_trip() {
        for (c, s) in [(BoundaryPoint::Infinity, 0.7), (BoundaryPoint::Finite(-1.3), -0.4)] {
            let h = Horocycle::new(c, s).unwrap();
            let back = Horocycle::from_euclidean(&h.euclidean()).unwrap();
            assert!((back.level() - s).abs() < 1e-12);
            assert!(h.residual(&h.apex()).abs() < 1e-12);
        }
    }

    #[test]
    fn translation_length_examples() {
        let line = Horocycle::through(BoundaryPoint::Infinity, &p(0.0, 1.0)).unwrap();
        let pair = OrientedPair::new(line, Isometry::translation(1.0)).unwrap();
        assert!((translation_length(&pair) - 1.0).abs() < 1e-15);
        let line = Horocycle::through(BoundaryPoint::Infinity, &p(0.0, 2.0)).unwrap();
        let pair = OrientedPair::new(line, Isometry::translation(1.0)).unwrap();
        assert!((translation_length(&pair) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn pair_rejects_mismatched_center() {
        let circle = Horocycle::through(BoundaryPoint::Finite(1.0), &p(1.0, 1.0)).unwrap();
        assert_eq!(
            OrientedPair::new(circle, Isometry::translation(1.0)).unwrap_err(),
            GeometryError::CenterMismatch
        );
    }

    #[test]
    fn tangent_horocycle_normalized_examples() {
        let up = UnitTangent::<f64>::vertical();
        let h = tangent_horocycle(&up, &BoundaryPoint::Finite(1.0)).unwrap();
        match h.euclidean() {
            EuclideanHorocycle::Circle { foot, diameter } => {
                assert!((foot - 1.0).abs() < 1e-15);
                assert!((diameter - 2.0).abs() < 1e-12);
            }
            _ => panic!("expected a circle"),
        }
        let e = std::f64::consts::E;
        let (t0, q) = tangency_parts(&up, &BoundaryPoint::Finite(e)).unwrap();
        assert!((t0 - 1.0).abs() < 1e-12);
        assert!((q.y() - e).abs() < 1e-12 && q.x().abs() < 1e-12);
        assert_eq!(
            tangent_horocycle(&up, &BoundaryPoint::Finite(0.0)).unwrap_err(),
            GeometryError::EndpointCoincidence
        );
    }

    #[test]
    fn make_parabolic_at_infinity_moves_right() {
        // vector at i heading right, tangent to the line Im z = 1 at i
        let base_dir = UnitTangent::from_direction(p(0.0, 1.0), &0.0).unwrap();
        assert!((base_dir.forward().to_f64() - 1.0).abs() < 1e-12);
        let line = Horocycle::through(BoundaryPoint::Infinity, &p(0.0, 1.0)).unwrap();
        let par = make_parabolic(&BoundaryPoint::Infinity, &line, &1.0, &base_dir).unwrap();
        assert!(par.projective_eq(&Isometry::translation(1.0), 1e-12));
        let reversed = UnitTangent::from_direction(p(0.0, 1.0), &std::f64::consts::PI).unwrap();
        let inv = make_parabolic(&BoundaryPoint::Infinity, &line, &1.0, &reversed).unwrap();
        assert!(inv.projective_eq(&Isometry::translation(-1.0), 1e-12));
    }

    #[test]
    fn wind_normalized_example() {
        let u = UnitTangent::new(p(0.0, 1.0), BoundaryPoint::Finite(3.0));
        let td = TangencyData::construct(u, &BoundaryPoint::Infinity, &0.2).unwrap();
        let lambda = normalized_estimates(&td).unwrap().lambda;
        let w = wind(&td);
        assert_eq!(w.base(), td.vector().base());
        assert!((w.forward().to_f64() - (3.0 + lambda)).abs() < 1e-12);
        assert!((lambda / normalized_estimates(&td).unwrap().radius - 0.2).abs() < 1e-12);
    }

    #[test]
    fn behind_the_base_is_rejected() {
        let u = UnitTangent::<f64>::vertical();
        let r = TangencyData::construct(u, &BoundaryPoint::Finite(0.5), &0.1);
        assert!(matches!(r, Err(GeometryError::TangencyBehindBase(_))));
    }

    #[test]
    fn slide_stays_on_horocycle() {
        let c = BoundaryPoint::Finite(0.4);
        let z = p(-0.2, 0.9);
        let h = Horocycle::through(c.clone(), &z).unwrap();
        let moved = Horocycle::slide(&c, &z, &0.8).unwrap();
        assert!(h.residual(&moved).abs() < 1e-12);
        let chord = 2.0 * (hyp_distance(&z, &moved) / 2.0).sinh();
        assert!((chord - 0.8).abs() < 1e-12);
    }
}
