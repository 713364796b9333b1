use rand::Rng;
use rayon::prelude::*;

use crate::error::{GeometryError, Result};
use crate::horocycle::linspace;
use crate::plane::{busemann, d1, BoundaryChart, BoundaryPoint, Isometry, Point, UnitTangent};
use crate::sampling;
use crate::scalar::Real;
use crate::walpha::{build_pair_sequence, iterate_winding, limit_estimate, word_ball_for, PairSequenceSpec};

/// The vector on the stable horocycle of `w` whose backward endpoint is
/// `u(-∞)`.
pub fn local_product<S: Real>(w: &UnitTangent<S>, u: &UnitTangent<S>) -> Result<UnitTangent<S>> {
    let back = u.backward();
    let fwd = w.forward();
    if back.approx_eq(fwd, &S::zero()) {
        return Err(GeometryError::EndpointCoincidence);
    }
    let g = Isometry::sending_zero_infinity(&back, fwd)?;
    let h = g.inverse().apply(w.base()).y().clone();
    let base = g.apply(&Point::on_axis(h)?).validate()?;
    Ok(UnitTangent::new(base, fwd.clone()))
}

/// Outcome of the empirical modulus search.
#[derive(Clone, Debug, PartialEq)]
pub struct ProductModulus {
    pub epsilon: f64,
    /// No tested value passed; `epsilon` is the smallest one tried.
    pub exhausted: bool,
    /// Largest `d1(w, [w,u])` and `d1(u, [w,u])` seen at the returned value.
    pub worst_forward: f64,
    pub worst_backward: f64,
}

/// Tested values `2^{-j/2}` for `j` in `0..SCHEDULE_LEN`.
pub const SCHEDULE_LEN: usize = 60;

/// Largest `ε` on the schedule such that every sampled pair with
/// `d1(u, w) < ε` has `d1(w, [w,u]) < δ` and `d1(u, [w,u]) < δ`.
///
/// By isometry invariance `u = (i, ∞)`. The samples for each schedule entry
/// depend only on `(seed, j)`, so the result is monotone in `δ`.
pub fn product_modulus(delta: f64, samples: usize, seed: u64) -> Result<ProductModulus> {
    if !(delta > 0.0) || !delta.is_finite() {
        return Err(GeometryError::InvalidParameter("delta must be positive".into()));
    }
    let u = UnitTangent::<f64>::vertical();
    let mut last = None;
    for j in 0..SCHEDULE_LEN {
        let eps = 0.5f64.powf(j as f64 / 2.0);
        let mut rng = sampling::rng(seed, 0x5eed_0000 + j as u64);
        let mut worst = (0.0f64, 0.0f64);
        let mut taken = 0;
        while taken < samples {
            let w = perturb(&u, eps, &mut rng)?;
            if d1(&u, &w)? >= eps {
                continue;
            }
            taken += 1;
            let y = local_product(&w, &u)?;
            worst.0 = worst.0.max(d1(&w, &y)?);
            worst.1 = worst.1.max(d1(&u, &y)?);
        }
        let result = ProductModulus {
            epsilon: eps,
            exhausted: false,
            worst_forward: worst.0,
            worst_backward: worst.1,
        };
        if worst.0 < delta && worst.1 < delta {
            return Ok(result);
        }
        last = Some(result);
    }
    let mut out = last.expect("schedule is nonempty");
    out.exhausted = true;
    Ok(out)
}

/// Moves the basepoint of `u` by at most `eps/4` and turns the direction by
/// at most `eps/4`.
fn perturb(u: &UnitTangent<f64>, eps: f64, rng: &mut rand_pcg::Pcg32) -> Result<UnitTangent<f64>> {
    let rho = rng.gen_range(0.0..=eps / 4.0);
    let heading = rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI);
    let dir = UnitTangent::from_direction(u.base().clone(), &heading)?;
    let base = dir.at(&rho)?;
    let turn = rng.gen_range(-eps / 4.0..=eps / 4.0);
    UnitTangent::from_direction(base, &(std::f64::consts::FRAC_PI_2 + turn))
}

#[derive(Clone, Debug)]
pub struct WitnessConfig {
    pub delta: f64,
    pub depth: usize,
    /// `None` picks the smallest spacing whose shadowing horizon covers
    /// `t_max` (see [`auto_spacing`]).
    pub spacing: Option<f64>,
    pub margin: f64,
    pub t_max: f64,
    /// Points on each half-line `[-t_max, 0]` and `[0, t_max]`.
    pub grid: usize,
    pub word_ball: usize,
    pub modulus_samples: usize,
    pub seed: u64,
}

impl WitnessConfig {
    pub fn new(delta: f64) -> Self {
        WitnessConfig {
            delta,
            depth: 4,
            spacing: None,
            margin: 0.9,
            t_max: 25.0,
            grid: 500,
            word_ball: 6,
            modulus_samples: 200,
            seed: 7,
        }
    }
}

/// Boundary-chart separation below which the witness endpoint is treated as
/// lying in the enumerated orbit.
pub const SEPARATION_TOL: f64 = 1e-12;

/// The spacing used when none is given: the smallest multiple of `0.25`, at
/// least `2`, with `t_{N+1} + ln(δ / ℓ_{N+1}) ≥ t_max + 2`. Letters beyond
/// the word ball then move the witness by less than `δ` before `t_max`.
pub fn auto_spacing(delta: f64, epsilon: f64, depth: usize, margin: f64, t_max: f64) -> f64 {
    let next = depth + 1;
    let ell = margin * epsilon / (12.0 * 4f64.powi(next as i32));
    let need = (t_max + 2.0 - (delta / ell).ln()) / next as f64;
    let s = (need * 4.0).ceil() / 4.0;
    s.max(2.0)
}

#[derive(Clone, Debug)]
pub struct WitnessReport {
    pub delta: f64,
    pub epsilon_product: f64,
    pub modulus_exhausted: bool,
    pub epsilon_used: f64,
    pub spacing: f64,
    pub depth: usize,
    pub ball_size: usize,
    pub word_ball: usize,
    pub u: ((f64, f64), f64),
    pub w: ((f64, f64), f64),
    pub y: ((f64, f64), f64),
    pub t_range: (f64, f64),
    pub grid_size: usize,
    /// `d1(w̃, ũ)` for the chosen lift.
    pub lift_distance: f64,
    /// `|B_{w(+∞)}(y(0), w(0))|`
    pub busemann_residual: f64,
    pub sup_d1: f64,
    /// `max_{t ≥ 0} d1(g_t w, g_t y)`
    pub forward_half: f64,
    /// `max_{t ≤ 0} d1(g_t u, g_t y)`
    pub backward_half: f64,
    /// `max_{t ≥ 0} d1(g_t u, g_t w)` in the quotient.
    pub forward_shadow: f64,
    /// Largest excess of `d1(g_t u, g_t y)` over the triangle sum, and the
    /// largest triangle sum, at forward grid points.
    pub triangle_excess: f64,
    pub triangle_sum: f64,
    /// `min_γ |y(+∞) − γ ∞|` on the real line.
    pub orbit_separation: f64,
    /// The same minimum measured in the circle chart.
    pub orbit_separation_circle: f64,
    pub tail_letters: usize,
    pub passed: bool,
}

pub fn build_witness<S: Real>(cfg: &WitnessConfig) -> Result<WitnessReport> {
    if !(cfg.delta > 0.0) || !(cfg.t_max > 0.0) || cfg.grid < 2 || cfg.word_ball == 0 {
        return Err(GeometryError::InvalidParameter("witness configuration".into()));
    }
    let modulus = product_modulus(cfg.delta, cfg.modulus_samples, cfg.seed)?;
    let eps = modulus.epsilon.min(0.99 * cfg.delta) / 3.0;
    let spacing = cfg
        .spacing
        .unwrap_or_else(|| auto_spacing(cfg.delta, eps, cfg.depth, cfg.margin, cfg.t_max));
    let spec = PairSequenceSpec::new(eps, cfg.depth, spacing, cfg.margin)?;
    let ws = iterate_winding(&build_pair_sequence::<S>(&spec)?)?;
    let limit = limit_estimate(&ws)?;
    let ball = word_ball_for(&ws, cfg.word_ball)?;

    let u = UnitTangent::<S>::vertical();
    // Keep the constructed lift when it is already close to `u`; re-lifting
    // through a long near-identity word moves the ball off the orbit.
    let direct = d1(&limit.w, &u)?;
    let (w, lift_distance) = if direct.to_f64() < modulus.epsilon {
        (limit.w.clone(), direct.to_f64())
    } else {
        let lift = ball.d1_quotient(&limit.w, &u)?;
        (
            limit.w.transform(&ball.element(lift.element).inverse()),
            lift.value.to_f64(),
        )
    };
    let y = local_product(&w, &u)?;
    let busemann_residual = busemann(w.forward(), y.base(), w.base()).abs().to_f64();

    let backward = linspace(-cfg.t_max, 0.0, cfg.grid);
    let forward = linspace(0.0, cfg.t_max, cfg.grid);
    struct Sample {
        uy: f64,
        wy: f64,
        uw: f64,
        cover_uy: f64,
    }
    let eval = |t: f64, forward: bool| -> Result<Sample> {
        let ts = S::from_f64(t);
        let gu = u.flow(&ts)?;
        let gy = y.flow(&ts)?;
        let uy = ball.d1_quotient(&gu, &gy)?.value.to_f64();
        if forward {
            let gw = w.flow(&ts)?;
            Ok(Sample {
                uy,
                wy: d1(&gw, &gy)?.to_f64(),
                uw: ball.d1_quotient(&gu, &gw)?.value.to_f64(),
                cover_uy: 0.0,
            })
        } else {
            Ok(Sample {
                uy,
                wy: 0.0,
                uw: 0.0,
                cover_uy: d1(&gu, &gy)?.to_f64(),
            })
        }
    };
    let back_samples = backward
        .par_iter()
        .map(|&t| eval(t, false))
        .collect::<Result<Vec<_>>>()?;
    let fwd_samples = forward.par_iter().map(|&t| eval(t, true)).collect::<Result<Vec<_>>>()?;

    let max = |it: &mut dyn Iterator<Item = f64>| it.fold(0.0, f64::max);
    let sup_d1 = max(&mut back_samples.iter().chain(&fwd_samples).map(|s| s.uy));
    let forward_half = max(&mut fwd_samples.iter().map(|s| s.wy));
    let backward_half = max(&mut back_samples.iter().map(|s| s.cover_uy));
    let forward_shadow = max(&mut fwd_samples.iter().map(|s| s.uw));
    let triangle_excess = fwd_samples
        .iter()
        .map(|s| s.uy - (s.uw + s.wy))
        .fold(f64::NEG_INFINITY, f64::max);
    let triangle_sum = max(&mut fwd_samples.iter().map(|s| s.uw + s.wy));

    let orbit_separation = ball
        .min_orbit_gap(y.forward(), &BoundaryPoint::Infinity, BoundaryChart::Affine)
        .value
        .to_f64();
    let orbit_separation_circle = ball
        .min_orbit_gap(y.forward(), &BoundaryPoint::Infinity, BoundaryChart::Circle)
        .value
        .to_f64();
    let passed = sup_d1 < 2.0 * cfg.delta && orbit_separation > SEPARATION_TOL;
    Ok(WitnessReport {
        delta: cfg.delta,
        epsilon_product: modulus.epsilon,
        modulus_exhausted: modulus.exhausted,
        epsilon_used: eps,
        spacing,
        depth: cfg.depth,
        ball_size: ball.len(),
        word_ball: cfg.word_ball,
        u: u.to_f64(),
        w: w.to_f64(),
        y: y.to_f64(),
        t_range: (-cfg.t_max, cfg.t_max),
        grid_size: 2 * cfg.grid - 1,
        lift_distance,
        busemann_residual,
        sup_d1,
        forward_half,
        backward_half,
        forward_shadow,
        triangle_excess,
        triangle_sum,
        orbit_separation,
        orbit_separation_circle,
        tail_letters: limit.letters_used - ws.letters.len(),
        passed,
    })
}
