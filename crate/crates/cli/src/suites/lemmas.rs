//! The flow lemmas on stable and weak-stable pairs, and the winding-time bound.

use horoflow::horocycle::{linspace, translation_length, winding_time};
use horoflow::sampling::{random_stable_pair, random_tangency, random_weak_stable_pair, rng};
use horoflow::{hyp_distance, Isometry, Real, Result};

use super::max_of;
use crate::report::{Check, SuiteOutput};

pub const STABLE_PAIRS: usize = 200;
pub const WEAK_STABLE_PAIRS: usize = 200;
pub const TANGENCIES: usize = 1000;

pub const DECREASING_SLACK: f64 = 1e-9;
pub const HORO_TOL: f64 = 1e-8;
pub const WIND_SLACK: f64 = 1e-9;

const STREAM_DECREASING: u64 = 1;
const STREAM_HORO: u64 = 2;
const STREAM_WIND: u64 = 3;

/// Largest step up of `t ↦ d(v(t), u(t))` over `grid` points on `[-5, 5]`,
/// across seeded weak-stable pairs.
pub fn decreasing_excess<S: Real>(seed: u64, pairs: usize, grid: usize) -> Result<f64> {
    let mut r = rng(seed, STREAM_DECREASING);
    let times = linspace(-5.0, 5.0, grid);
    let mut worst = f64::NEG_INFINITY;
    for _ in 0..pairs {
        let (u, v) = random_weak_stable_pair::<S>(&mut r)?;
        let d = times
            .iter()
            .map(|&t| {
                let ts = S::from_f64(t);
                Ok(hyp_distance(u.flow(&ts)?.base(), v.flow(&ts)?.base()).to_f64())
            })
            .collect::<Result<Vec<_>>>()?;
        worst = worst.max(max_of(d.windows(2).map(|w| w[1] - w[0])));
    }
    Ok(worst)
}

/// Largest `|sinh(d(t)/2) e^t / sinh(d(0)/2) - 1|` over `grid` points on
/// `[0, 10]`, across seeded stable pairs.
///
/// With `upper_chart` set, each pair is first moved so that its common
/// forward endpoint is `∞`. Near a finite endpoint both basepoints approach
/// the real axis and their Euclidean gap shrinks like `e^{-2t}`, which binary64
/// coordinates cannot resolve past `t ≈ 8`.
pub fn distance_horo_error<S: Real>(seed: u64, pairs: usize, grid: usize, upper_chart: bool) -> Result<f64> {
    let mut r = rng(seed, STREAM_HORO);
    let times = linspace(0.0, 10.0, grid);
    let half = S::from_f64(0.5);
    let mut worst = 0.0f64;
    for _ in 0..pairs {
        let (mut u, mut v) = random_stable_pair::<S>(&mut r)?;
        if upper_chart {
            let g = Isometry::sending_to_infinity(u.forward());
            u = u.transform(&g);
            v = v.transform(&g);
        }
        let s0 = (hyp_distance(u.base(), v.base()) * &half).sinh();
        for &t in &times {
            let ts = S::from_f64(t);
            let st = (hyp_distance(u.flow(&ts)?.base(), v.flow(&ts)?.base()) * &half).sinh();
            let ratio = st * &ts.exp() / &s0 - S::one();
            worst = worst.max(ratio.abs().to_f64());
        }
    }
    Ok(worst)
}

/// Largest `|τ| - ℓ` across seeded tangency configurations.
pub fn bound_wind_excess<S: Real>(seed: u64, configs: usize) -> Result<f64> {
    let mut r = rng(seed, STREAM_WIND);
    let mut worst = f64::NEG_INFINITY;
    for _ in 0..configs {
        let td = random_tangency::<S>(&mut r)?;
        let excess = winding_time(&td).abs() - &translation_length(td.pair());
        worst = worst.max(excess.to_f64());
    }
    Ok(worst)
}

pub fn run<S: Real>(seed: u64, grid: usize) -> Result<SuiteOutput> {
    let mut out = SuiteOutput::default();
    out.push(Check::at_most(
        "decreasing: max increase of d(v(t), u(t)) on [-5, 5]",
        "decreasing",
        DECREASING_SLACK,
        decreasing_excess::<S>(seed, WEAK_STABLE_PAIRS, grid)?,
    ));
    out.push(Check::below(
        "distance_horo: max relative drift of sinh(d(t)/2) e^t on [0, 10]",
        "distance_horo",
        HORO_TOL,
        distance_horo_error::<S>(seed, STABLE_PAIRS, grid, true)?,
    ));
    out.record(
        "distanceHoroDriftRawCoordinates",
        distance_horo_error::<S>(seed, STABLE_PAIRS, grid, false)?,
    );
    out.note("distance_horo is measured after moving the common forward endpoint to infinity");
    out.push(Check::at_most(
        "bound_wind: max |tau| - ell",
        "bound_wind",
        WIND_SLACK,
        bound_wind_excess::<S>(seed, TANGENCIES)?,
    ));
    out.record("stablePairs", STABLE_PAIRS);
    out.record("weakStablePairs", WEAK_STABLE_PAIRS);
    out.record("tangencies", TANGENCIES);
    Ok(out)
}
