use rayon::prelude::*;

use crate::error::{GeometryError, Result};
use crate::horocycle::{
    make_parabolic, tangent_horocycle, translation_length, wind, winding_time, OrientedPair, TangencyData,
};
use crate::plane::{hyp_distance, BoundaryPoint, FuchsianWordBall, Isometry, Point, UnitTangent};
use crate::scalar::{Real, Tolerances};

/// `ln(3 + 2√2)`: consecutive tangent circles centered at `(e^t, e^t)` are
/// disjoint exactly when their times differ by more than this.
pub fn disjoint_spacing() -> f64 {
    (3.0 + 2.0 * std::f64::consts::SQRT_2).ln()
}

/// Parameters of a synthetic pair sequence in normalized position:
/// `ũ = (i, ∞)`, tangency times `t_n = n·spacing`, fixed points `x_n = e^{t_n}`,
/// lengths `ℓ_n = margin·ε / (12·4ⁿ)`.
#[derive(Clone, Debug, PartialEq)]
pub struct PairSequenceSpec {
    pub epsilon: f64,
    pub depth: usize,
    pub spacing: f64,
    pub margin: f64,
}

/// Longest sequence the builder accepts.
pub const MAX_DEPTH: usize = 64;

impl PairSequenceSpec {
    pub fn new(epsilon: f64, depth: usize, spacing: f64, margin: f64) -> Result<Self> {
        let spec = PairSequenceSpec {
            epsilon,
            depth,
            spacing,
            margin,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |what: &str| Err(GeometryError::InvalidParameter(what.to_string()));
        if !(self.epsilon > 0.0) || !self.epsilon.is_finite() {
            return bad("epsilon must be positive");
        }
        if !(self.margin > 0.0 && self.margin < 1.0) {
            return bad("margin must lie in (0, 1)");
        }
        if !(self.spacing > disjoint_spacing()) || !self.spacing.is_finite() {
            return bad("spacing must exceed ln(3 + 2√2) for disjoint horoballs");
        }
        if self.depth > MAX_DEPTH {
            return bad("depth too large");
        }
        Ok(())
    }

    pub fn tangent_time<S: Real>(&self, n: usize) -> S {
        S::from_f64(self.spacing) * S::from_usize(n)
    }

    pub fn fixed_point<S: Real>(&self, n: usize) -> S {
        self.tangent_time::<S>(n).exp()
    }

    pub fn length<S: Real>(&self, n: usize) -> S {
        let four_n = S::from_f64(4.0).powi(n as i32);
        S::from_f64(self.margin) * S::from_f64(self.epsilon) / (S::from_f64(12.0) * four_n)
    }

    /// The strict bound `ε / (12·4ⁿ)` the lengths must stay under.
    pub fn length_ceiling(&self, n: usize) -> f64 {
        self.epsilon / (12.0 * 4f64.powi(n as i32))
    }
}

/// One pair of the synthetic sequence.
#[derive(Clone, Debug)]
pub struct SyntheticPair<S> {
    pub index: usize,
    pub time: S,
    pub fixed_point: S,
    pub length: S,
    pub pair: OrientedPair<S>,
}

/// The letter `p_n` alone, without validating it as a pair. Used for tails
/// whose lengths fall below the classification tolerance.
pub fn synthetic_letter<S: Real>(spec: &PairSequenceSpec, n: usize) -> Result<Isometry<S>> {
    let base = UnitTangent::vertical();
    let xi = BoundaryPoint::finite(spec.fixed_point::<S>(n))?;
    let h = tangent_horocycle(&base, &xi)?;
    make_parabolic(&xi, &h, &spec.length::<S>(n), &base)
}

pub fn synthetic_pair<S: Real>(spec: &PairSequenceSpec, n: usize) -> Result<SyntheticPair<S>> {
    let base = UnitTangent::vertical();
    let x = spec.fixed_point::<S>(n);
    let xi = BoundaryPoint::finite(x.clone())?;
    let length = spec.length::<S>(n);
    let td = TangencyData::construct(base, &xi, &length)?;
    Ok(SyntheticPair {
        index: n,
        time: td.tangent_time().clone(),
        fixed_point: x,
        length,
        pair: td.pair().clone(),
    })
}

#[derive(Clone, Debug)]
pub struct PairSequence<S> {
    pub spec: PairSequenceSpec,
    pub base: UnitTangent<S>,
    pub pairs: Vec<SyntheticPair<S>>,
}

/// Pairs `0..=depth`.
pub fn build_pair_sequence<S: Real>(spec: &PairSequenceSpec) -> Result<PairSequence<S>> {
    spec.validate()?;
    let pairs = (0..=spec.depth)
        .map(|n| synthetic_pair(spec, n))
        .collect::<Result<Vec<_>>>()?;
    Ok(PairSequence {
        spec: spec.clone(),
        base: UnitTangent::vertical(),
        pairs,
    })
}

impl<S: Real> PairSequence<S> {
    /// Circles centered at `(x, x)` with radius `x` are disjoint iff the
    /// distance between centers `√2 (X - x)` is at least `X + x`.
    pub fn horoballs_disjoint(&self) -> bool {
        let root2 = S::from_f64(2.0).sqrt();
        self.pairs.windows(2).all(|w| {
            let (r, big) = (&w[0].fixed_point, &w[1].fixed_point);
            (big.clone() - r) * &root2 > big.clone() + r
        })
    }

    pub fn lengths(&self) -> Vec<S> {
        self.pairs.iter().map(|p| p.length.clone()).collect()
    }
}

/// Per-step data of the iterated winding, for `n → n+1`.
#[derive(Clone, Debug)]
pub struct WindingStep<S> {
    /// `β_n⁻¹ i`
    pub pulled_base: Point<S>,
    /// `β_n⁻¹ i` has real part in `(0, x_{n+1})` and lies outside the open
    /// horoball of `H_{n+1}`.
    pub in_region: bool,
    /// `ℓ(H'_{n+1}, α_{n+1})`
    pub shrunk_length: S,
    /// Winding time of `β_n⁻¹ v_n` around `(H'_{n+1}, α_{n+1})`.
    pub tau: S,
    /// `|τ - (r_{n+1} - r_n)|`
    pub tau_residual: S,
    /// `d(β_n Wind(β_n⁻¹ v_n)(0), i)`
    pub wind_residual: S,
    /// `level(H'_{n+1}) - level(H_{n+1})`, nonnegative exactly when the
    /// shrunk length does not exceed `ℓ_{n+1}`.
    pub level_gap: S,
}

#[derive(Clone, Debug)]
pub struct WindingSequence<S> {
    pub spec: PairSequenceSpec,
    /// Indices `k_n` of the letters in the underlying pair sequence.
    pub indices: Vec<usize>,
    pub fixed_points: Vec<S>,
    pub lengths: Vec<S>,
    pub letters: Vec<Isometry<S>>,
    pub products: Vec<Isometry<S>>,
    pub vectors: Vec<UnitTangent<S>>,
    pub times: Vec<S>,
    pub steps: Vec<WindingStep<S>>,
    /// `|B_∞(g_{r_n}(β_n⁻¹ v_n)(0), i)|`
    pub stable_residuals: Vec<S>,
    pub limit_forward: BoundaryPoint<S>,
    pub limit_time: S,
    pub w_alpha: UnitTangent<S>,
}

impl<S: Real> WindingSequence<S> {
    pub fn depth(&self) -> usize {
        self.letters.len() - 1
    }

    pub fn shrunk_lengths(&self) -> Vec<S> {
        self.steps.iter().map(|s| s.shrunk_length.clone()).collect()
    }
}

pub fn iterate_winding<S: Real>(ps: &PairSequence<S>) -> Result<WindingSequence<S>> {
    wind_pairs(&ps.spec, ps.pairs.clone())
}

/// Iterated winding along the subsequence `α_n = p_{k_n}`.
pub fn iterate_winding_indices<S: Real>(spec: &PairSequenceSpec, indices: &[usize]) -> Result<WindingSequence<S>> {
    spec.validate()?;
    if indices.is_empty() || indices.windows(2).any(|w| w[0] >= w[1]) {
        return Err(GeometryError::InvalidParameter(
            "subsequence indices must be strictly increasing and nonempty".into(),
        ));
    }
    let pairs = indices
        .iter()
        .map(|&k| synthetic_pair(spec, k))
        .collect::<Result<Vec<_>>>()?;
    wind_pairs(spec, pairs)
}

fn pull_height<S: Real>(beta: &Isometry<S>) -> Point<S> {
    beta.inverse().apply(&Point::i())
}

fn check_precision<S: Real>(m: &Isometry<S>, depth: usize) -> Result<()> {
    let tol = Tolerances::of::<S>();
    let scale = m.max_entry().square().max_of(S::one());
    let drift = m.det_drift();
    if !drift.is_finite() || drift > S::from_f64(tol.det) * scale {
        return Err(GeometryError::PrecisionExhausted {
            depth,
            drift: drift.to_f64(),
        });
    }
    Ok(())
}

fn wind_pairs<S: Real>(spec: &PairSequenceSpec, pairs: Vec<SyntheticPair<S>>) -> Result<WindingSequence<S>> {
    let u = UnitTangent::<S>::vertical();
    let letters: Vec<Isometry<S>> = pairs.iter().map(|p| p.pair.parabolic().clone()).collect();
    let first = TangencyData::new(u.clone(), pairs[0].pair.clone())?;
    let v0 = wind(&first);
    let mut products = vec![letters[0].clone()];
    let mut vectors = vec![UnitTangent::new(
        Point::i(),
        letters[0].apply_boundary(&BoundaryPoint::Infinity),
    )];
    let mut times = vec![-pull_height(&products[0]).y().ln()];
    let mut steps = Vec::new();
    if !vectors[0].forward().approx_eq(v0.forward(), &S::from_f64(1e-9)) {
        return Err(GeometryError::Invariant("first winding endpoint".into()));
    }
    check_precision(&products[0], 0)?;

    for n in 0..pairs.len() - 1 {
        let beta = products[n].clone();
        let next = &pairs[n + 1];
        let pulled_base = pull_height(&beta);
        let pulled = UnitTangent::new(pulled_base.clone(), BoundaryPoint::Infinity);
        let in_region = *pulled_base.x() > S::zero()
            && *pulled_base.x() < next.fixed_point
            && !next.pair.horocycle().encloses(&pulled_base);
        let xi = BoundaryPoint::finite(next.fixed_point.clone())?;
        let shrunk_h = tangent_horocycle(&pulled, &xi)?;
        let level_gap = shrunk_h.level().clone() - next.pair.horocycle().level();
        let shrunk_pair = OrientedPair::new(shrunk_h, next.pair.parabolic().clone())?;
        let td = TangencyData::new(pulled, shrunk_pair)?;
        let shrunk_length = translation_length(td.pair());
        let tau = winding_time(&td);
        let wound = wind(&td).transform(&beta);
        let wind_residual = hyp_distance(wound.base(), &Point::i());

        let product = beta.compose(&letters[n + 1]);
        check_precision(&product, n + 1)?;
        let r_next = -pull_height(&product).y().ln();
        let tau_residual = (tau.clone() - (r_next.clone() - &times[n])).abs();
        vectors.push(UnitTangent::new(
            Point::i(),
            product.apply_boundary(&BoundaryPoint::Infinity),
        ));
        products.push(product);
        times.push(r_next);
        steps.push(WindingStep {
            pulled_base,
            in_region,
            shrunk_length,
            tau,
            tau_residual,
            wind_residual,
            level_gap,
        });
    }

    let stable_residuals = products
        .iter()
        .zip(&times)
        .map(|(beta, r)| {
            let pulled = UnitTangent::new(pull_height(beta), BoundaryPoint::Infinity);
            let moved = pulled.flow(r)?;
            Ok(moved.base().y().ln().abs())
        })
        .collect::<Result<Vec<_>>>()?;

    let depth = letters.len() - 1;
    let limit_forward = vectors[depth].forward().clone();
    let limit_time = times[depth].clone();
    let w_alpha = UnitTangent::new(Point::i(), limit_forward.clone()).flow(&limit_time)?;
    Ok(WindingSequence {
        spec: spec.clone(),
        indices: pairs.iter().map(|p| p.index).collect(),
        fixed_points: pairs.iter().map(|p| p.fixed_point.clone()).collect(),
        lengths: pairs.iter().map(|p| p.length.clone()).collect(),
        letters,
        products,
        vectors,
        times,
        steps,
        stable_residuals,
        limit_forward,
        limit_time,
        w_alpha,
    })
}

/// `α_0 α_1 ⋯ α_M (∞)`, evaluated from the inside out.
pub fn xi_of_sequence<S: Real>(letters: &[Isometry<S>]) -> BoundaryPoint<S> {
    letters
        .iter()
        .rev()
        .fold(BoundaryPoint::Infinity, |acc, a| a.apply_boundary(&acc))
}

/// For `n ≥ 1`: `(α_{n-1})⁻¹ ⋯ (α_0)⁻¹ ξ` paired with `x_n`; the first entry
/// pairs `ξ` itself with `x_0`. Each left value should exceed its right value.
pub fn nested_separation<S: Real>(
    letters: &[Isometry<S>],
    fixed_points: &[S],
    xi: &BoundaryPoint<S>,
) -> Vec<(BoundaryPoint<S>, S)> {
    let mut out = Vec::with_capacity(letters.len());
    let mut cur = xi.clone();
    for (n, x) in fixed_points.iter().enumerate() {
        if n > 0 {
            cur = letters[n - 1].inverse().apply_boundary(&cur);
        }
        out.push((cur.clone(), x.clone()));
    }
    out
}

/// Whether a boundary point lies strictly to the right of `x`.
pub fn exceeds<S: Real>(b: &BoundaryPoint<S>, x: &S) -> bool {
    match b {
        BoundaryPoint::Infinity => true,
        BoundaryPoint::Finite(v) => v > x,
    }
}

/// The limits `v_α(+∞) = ξ(α)` and `r_α`, from the letters of `ws` followed by
/// the synthetic tail of its spec.
#[derive(Clone, Debug)]
pub struct LimitEstimate<S> {
    pub forward: BoundaryPoint<S>,
    pub time: S,
    pub letters_used: usize,
    /// Size of the last change of `β_M(∞)` and of `r_M`.
    pub last_forward_step: S,
    pub last_time_step: S,
    pub w: UnitTangent<S>,
}

/// Tail letters beyond the sequence, at most.
pub const TAIL_CAP: usize = 200;

pub fn limit_estimate<S: Real>(ws: &WindingSequence<S>) -> Result<LimitEstimate<S>> {
    let mut letters = ws.letters.clone();
    let first_tail = *ws.indices.last().expect("nonempty") + 1;
    let tiny = S::epsilon() * S::from_f64(16.0);
    let mut prev_xi = xi_of_sequence(&letters);
    let mut z = ws.letters.iter().fold(Point::i(), |acc, a| a.inverse().apply(&acc));
    let mut prev_r = -z.y().ln();
    let mut last_forward_step = S::zero();
    let mut last_time_step = S::zero();
    for index in first_tail..first_tail + TAIL_CAP {
        let letter = synthetic_letter::<S>(&ws.spec, index)?;
        z = letter.inverse().apply(&z);
        letters.push(letter);
        let xi = xi_of_sequence(&letters);
        let r = -z.y().ln();
        let scale = S::one().max_of(prev_xi.as_finite().map(|v| v.abs()).unwrap_or_else(S::one));
        last_forward_step = match (&xi, &prev_xi) {
            (BoundaryPoint::Finite(a), BoundaryPoint::Finite(b)) => (a.clone() - b).abs() / scale,
            _ => S::one(),
        };
        last_time_step = (r.clone() - &prev_r).abs();
        prev_xi = xi;
        prev_r = r;
        if last_forward_step <= tiny && last_time_step <= tiny {
            break;
        }
    }
    let w = UnitTangent::new(Point::i(), prev_xi.clone()).flow(&prev_r)?;
    Ok(LimitEstimate {
        forward: prev_xi,
        time: prev_r,
        letters_used: letters.len(),
        last_forward_step,
        last_time_step,
        w,
    })
}

/// The word ball over the letters of `ws`.
pub fn word_ball_for<S: Real>(ws: &WindingSequence<S>, max_word_length: usize) -> Result<FuchsianWordBall<S>> {
    FuchsianWordBall::new(ws.letters.clone(), max_word_length)
}

/// `D_n = max_{k ≤ n} d(β_k⁻¹ g_{r_k} v_k (0), i)`. That basepoint is
/// `Re(β_k⁻¹ i) + i`, so `sinh(D/2) = |Re(β_k⁻¹ i)| / 2`.
pub fn spread<S: Real>(ws: &WindingSequence<S>) -> Vec<S> {
    let mut best = S::zero();
    ws.products
        .iter()
        .map(|beta| {
            let x = pull_height(beta).x().abs();
            let d = (x / S::from_f64(2.0)).asinh() * S::from_f64(2.0);
            best = best.clone().max_of(d);
            best.clone()
        })
        .collect()
}

/// `T_0 = ε/9`, `T_l = max(ln(sinh(D_{l-1}/2)·2^{l+2}/ε), ε/9)`.
pub fn settle_times<S: Real>(ws: &WindingSequence<S>, l_max: usize) -> Vec<f64> {
    let eps = ws.spec.epsilon;
    let d = spread(ws);
    (0..=l_max)
        .map(|l| {
            if l == 0 {
                return eps / 9.0;
            }
            let dl = &d[(l - 1).min(d.len() - 1)];
            let s = (dl.clone() / S::from_f64(2.0)).sinh() * S::from_f64(2f64.powi(l as i32 + 2) / eps);
            let t = if s > S::zero() {
                s.ln().to_f64()
            } else {
                f64::NEG_INFINITY
            };
            t.max(eps / 9.0)
        })
        .collect()
}

/// Offsets added to `T_l`: `0` then `samples - 1` log-spaced values on
/// `[1e-2, 1e2]`.
pub fn pm_offsets(samples: usize) -> Vec<f64> {
    let mut out = vec![0.0];
    let k = samples.saturating_sub(1);
    for j in 0..k {
        let frac = if k == 1 { 0.0 } else { j as f64 / (k - 1) as f64 };
        out.push(10f64.powf(-2.0 + 4.0 * frac));
    }
    out
}

#[derive(Clone, Debug)]
pub struct PmCell {
    pub n: usize,
    pub l: usize,
    pub settle_time: f64,
    pub bound: f64,
    pub samples: Vec<(f64, f64)>,
}

impl PmCell {
    pub fn max_observed(&self) -> f64 {
        self.samples.iter().map(|s| s.1).fold(0.0, f64::max)
    }

    pub fn passed(&self) -> bool {
        self.samples.iter().all(|s| s.1 < self.bound)
    }
}

#[derive(Clone, Debug)]
pub struct PmReport {
    pub spreads: Vec<f64>,
    pub settle_times: Vec<f64>,
    pub cells: Vec<PmCell>,
}

impl PmReport {
    pub fn passed(&self) -> bool {
        self.cells.iter().all(PmCell::passed)
    }
}

/// Checks `d1(g_{t+r_n} v_n, g_t u) < (Σ_{k≤n} 2^{-k})·ε/2^l` in the quotient
/// at `samples` times `t ≥ T_l`, for `n, l ≤ l_max`.
pub fn verify_pm<S: Real>(
    ws: &WindingSequence<S>,
    l_max: usize,
    samples: usize,
    ball: &FuchsianWordBall<S>,
) -> Result<PmReport> {
    let eps = ws.spec.epsilon;
    let settle = settle_times(ws, l_max);
    let offsets = pm_offsets(samples);
    let u = UnitTangent::<S>::vertical();
    let n_max = l_max.min(ws.depth());
    let mut cells = Vec::new();
    for n in 0..=n_max {
        let partial: f64 = (0..=n).map(|k| 0.5f64.powi(k as i32)).sum();
        for (l, &tl) in settle.iter().enumerate() {
            let bound = partial * eps / 2f64.powi(l as i32);
            let values = offsets
                .par_iter()
                .map(|off| {
                    let t = tl + off;
                    let ts = S::from_f64(t);
                    let a = ws.vectors[n].flow(&(ts.clone() + &ws.times[n]))?;
                    let b = u.flow(&ts)?;
                    Ok((t, ball.d1_quotient(&a, &b)?.value.to_f64()))
                })
                .collect::<Result<Vec<_>>>()?;
            cells.push(PmCell {
                n,
                l,
                settle_time: tl,
                bound,
                samples: values,
            });
        }
    }
    Ok(PmReport {
        spreads: spread(ws).iter().map(Real::to_f64).collect(),
        settle_times: settle,
        cells,
    })
}

#[derive(Clone, Debug)]
pub struct TailCheck {
    pub l: usize,
    pub settle_time: f64,
    pub bound: f64,
    /// Largest value at grid points `t ≥ T_l`; `None` if `T_l` lies beyond
    /// the grid.
    pub observed: Option<f64>,
}

#[derive(Clone, Debug)]
pub struct Cor1Report {
    pub epsilon: f64,
    pub samples: Vec<(f64, f64)>,
    pub tails: Vec<TailCheck>,
}

impl Cor1Report {
    pub fn sup(&self) -> f64 {
        self.samples.iter().map(|s| s.1).fold(0.0, f64::max)
    }

    pub fn bound(&self) -> f64 {
        3.0 * self.epsilon
    }

    pub fn passed(&self) -> bool {
        self.sup() <= self.bound() && self.tails.iter().all(|c| c.observed.is_none_or(|o| o <= c.bound))
    }
}

/// `sup_t d1(g_t w, g_t u)` in the quotient over `grid` points on `[0, t_max]`,
/// plus the tail bounds `ε / 2^{l-1}` after each `T_l`.
pub fn verify_cor1<S: Real>(
    ws: &WindingSequence<S>,
    w: &UnitTangent<S>,
    t_max: f64,
    grid: usize,
    ball: &FuchsianWordBall<S>,
) -> Result<Cor1Report> {
    let u = UnitTangent::<S>::vertical();
    let times = crate::horocycle::linspace(0.0, t_max, grid);
    let samples = times
        .par_iter()
        .map(|&t| {
            let ts = S::from_f64(t);
            let value = ball.d1_quotient(&w.flow(&ts)?, &u.flow(&ts)?)?.value.to_f64();
            Ok((t, value))
        })
        .collect::<Result<Vec<_>>>()?;
    let eps = ws.spec.epsilon;
    let tails = settle_times(ws, ws.depth() + 1)
        .into_iter()
        .enumerate()
        .map(|(l, tl)| TailCheck {
            l,
            settle_time: tl,
            bound: eps / 2f64.powi(l as i32 - 1),
            observed: samples.iter().filter(|s| s.0 >= tl).map(|s| s.1).reduce(f64::max),
        })
        .collect();
    Ok(Cor1Report {
        epsilon: eps,
        samples,
        tails,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::BigFloat;

    type B = BigFloat<256>;

    fn spec(depth: usize) -> PairSequenceSpec {
        PairSequenceSpec::new(0.1, depth, 2.0, 0.9).unwrap()
    }

    #[test]
    fn lengths_follow_the_geometric_rule() {
        let s = spec(3);
        let expected = [0.9 * 0.1 / 12.0, 0.9 * 0.1 / 48.0, 0.9 * 0.1 / 192.0];
        for (n, e) in expected.iter().enumerate() {
            assert!((s.length::<f64>(n) - e).abs() < 1e-18);
            assert!(s.length::<f64>(n) < s.length_ceiling(n));
        }
    }

    #[test]
    fn spec_rejects_bad_parameters() {
        assert!(PairSequenceSpec::new(0.1, 3, 1.7, 0.9).is_err());
        assert!(PairSequenceSpec::new(0.0, 3, 2.0, 0.9).is_err());
        assert!(PairSequenceSpec::new(0.1, 3, 2.0, 1.0).is_err());
        assert!(PairSequenceSpec::new(0.1, 3, 2.0, 0.0).is_err());
    }

    #[test]
    fn letters_match_closed_form() {
        // conjugating z + μ by [[x, -1], [1, 0]] gives [[1 - xμ, x²μ], [-μ, 1 + xμ]],
        // with μ = -ℓ/(2x) for the circle of radius x at x
        let s = spec(3);
        for n in 0..=3 {
            let sp = synthetic_pair::<f64>(&s, n).unwrap();
            let (x, l) = (sp.fixed_point, sp.length);
            let mu = -l / (2.0 * x);
            let closed = Isometry::from_f64(1.0 - x * mu, x * x * mu, -mu, 1.0 + x * mu).unwrap();
            assert!(sp.pair.parabolic().projective_eq(&closed, 1e-9));
            assert!((sp.time - n as f64 * 2.0).abs() < 1e-12);
        }
    }

    #[test]
    fn depth_zero_is_a_single_pair() {
        let ps = build_pair_sequence::<f64>(&spec(0)).unwrap();
        assert_eq!(ps.pairs.len(), 1);
        assert!(ps.pairs[0].time.abs() < 1e-15);
        assert!(ps.horoballs_disjoint());
    }

    #[test]
    fn sequence_invariants_at_high_precision() {
        let ps = build_pair_sequence::<B>(&spec(6)).unwrap();
        let ws = iterate_winding(&ps).unwrap();
        let mut prev = f64::INFINITY;
        for (n, v) in ws.vectors.iter().enumerate() {
            let f = v.forward().to_f64();
            assert!(f > 0.0 && f < prev, "β_{n}(∞) = {f}");
            prev = f;
        }
        for (n, step) in ws.steps.iter().enumerate() {
            let inc = (ws.times[n + 1].clone() - &ws.times[n]).abs();
            assert!(inc <= ws.lengths[n + 1], "step {n}");
            assert!(step.shrunk_length <= ws.lengths[n + 1]);
            assert!(step.in_region);
            assert!(step.tau_residual.to_f64() < 1e-30);
            assert!(step.wind_residual.to_f64() < 1e-30);
        }
        for r in &ws.stable_residuals {
            assert!(r.to_f64() < 1e-30);
        }
    }

    #[test]
    fn xi_exceeds_first_fixed_point() {
        let ws = iterate_winding(&build_pair_sequence::<B>(&spec(4)).unwrap()).unwrap();
        let lim = limit_estimate(&ws).unwrap();
        for (lhs, x) in nested_separation(&ws.letters, &ws.fixed_points, &lim.forward) {
            assert!(exceeds(&lhs, &x));
        }
        // bracketed by consecutive products
        let xi = lim.forward.to_f64();
        assert!(xi <= ws.limit_forward.to_f64());
        assert!(lim.last_forward_step.to_f64() < 1e-60);
    }

    #[test]
    fn pm_offsets_shape() {
        let o = pm_offsets(20);
        assert_eq!(o.len(), 20);
        assert_eq!(o[0], 0.0);
        assert!((o[1] - 1e-2).abs() < 1e-15 && (o[19] - 1e2).abs() < 1e-9);
    }
}
