//! Seeded batches for the Key Proposition and the estimates of its proof.

use horoflow::horocycle::{key_proposition_check, key_proposition_dense, linspace, KeyPropReport, ProofCase};
use horoflow::sampling::{random_tangency, rng};
use horoflow::{Real, Result};

use crate::report::{Check, SuiteOutput};

pub const CONFIGS: usize = 100;
pub const SLACK: f64 = 1e-9;
/// Doublings allowed by the dense mode.
pub const MAX_DOUBLINGS: usize = 6;

const STREAM_KEY_PROP: u64 = 4;

/// Worst `distance - factor·ℓ` per bound, over a batch of reports.
#[derive(Clone, Debug, Default)]
pub struct BatchExcess {
    pub twelve: f64,
    pub before: f64,
    pub after: f64,
    pub transition: f64,
    pub base_identity: f64,
    pub base_parabolic: f64,
    pub largest_ratio: f64,
    pub radius_gap_failures: usize,
    pub center_gap_failures: usize,
    pub apex_failures: usize,
    pub ell_formula_error: f64,
    pub grid_points: usize,
}

impl BatchExcess {
    fn absorb(&mut self, r: &KeyPropReport) {
        let ell = r.ell;
        let excess = |ratio: Option<f64>, k: f64| ratio.map_or(f64::NEG_INFINITY, |q| q * ell - k * ell);
        self.twelve = self.twelve.max(r.max_min() - 12.0 * ell);
        self.largest_ratio = self.largest_ratio.max(r.max_min() / ell);
        self.before = self.before.max(excess(r.max_case_ratio(ProofCase::Before), 6.0));
        self.after = self.after.max(excess(r.max_case_ratio(ProofCase::After), 8.0));
        self.transition = self
            .transition
            .max(excess(r.max_case_ratio(ProofCase::Transition), 10.0));
        self.base_identity = self.base_identity.max(excess(r.max_base_identity_ratio(), 3.0));
        self.base_parabolic = self.base_parabolic.max(excess(r.max_base_parabolic_ratio(), 4.0));
        self.radius_gap_failures += usize::from(!r.estimates.radius_gap_ok());
        self.center_gap_failures += usize::from(!r.estimates.center_gap_ok());
        self.apex_failures += usize::from(!r.estimates.apex_ok(ell));
        self.ell_formula_error = self
            .ell_formula_error
            .max((r.estimates.ell_from_radius - ell).abs() / ell);
        self.grid_points = self.grid_points.max(r.samples.len());
    }
}

pub fn batch<S: Real>(seed: u64, configs: usize, t_max: f64, grid: usize, dense: bool) -> Result<BatchExcess> {
    let mut r = rng(seed, STREAM_KEY_PROP);
    let times = linspace(0.0, t_max, grid);
    let mut acc = BatchExcess {
        twelve: f64::NEG_INFINITY,
        before: f64::NEG_INFINITY,
        after: f64::NEG_INFINITY,
        transition: f64::NEG_INFINITY,
        base_identity: f64::NEG_INFINITY,
        base_parabolic: f64::NEG_INFINITY,
        ..Default::default()
    };
    for _ in 0..configs {
        let td = random_tangency::<S>(&mut r)?;
        let report = if dense {
            key_proposition_dense(&td, t_max, grid, MAX_DOUBLINGS)?.0
        } else {
            key_proposition_check(&td, &times)?
        };
        acc.absorb(&report);
    }
    Ok(acc)
}

pub fn run<S: Real>(seed: u64, t_max: f64, grid: usize, dense: bool) -> Result<SuiteOutput> {
    let b = batch::<S>(seed, CONFIGS, t_max, grid, dense)?;
    let mut out = SuiteOutput::default();
    out.push(Check::at_most(
        "key_prop: min branch - 12 ell",
        "key_prop",
        SLACK,
        b.twelve,
    ));
    out.push(Check::at_most(
        "key_prop case t <= t1 - 1: d1(g_t v, g_t u) - 6 ell",
        "key_prop",
        SLACK,
        b.before,
    ));
    out.push(Check::at_most(
        "key_prop case t >= t1: d1(g_t v, p g_t u) - 8 ell",
        "key_prop",
        SLACK,
        b.after,
    ));
    out.push(Check::at_most(
        "key_prop case t1 - 1 < t < t1: d1(g_t v, g_t u) - 10 ell",
        "key_prop",
        SLACK,
        b.transition,
    ));
    out.push(Check::at_most(
        "key_prop basepoints 0 <= t <= t1: d(v(t), u(t)) - 3 ell",
        "key_prop",
        SLACK,
        b.base_identity,
    ));
    out.push(Check::at_most(
        "key_prop basepoints t >= t1: d(v(t), p u(t)) - 4 ell",
        "key_prop",
        SLACK,
        b.base_parabolic,
    ));
    out.push(Check::none_of(
        "key_prop radii: 0 <= 2R' - 2R < lambda",
        "key_prop",
        b.radius_gap_failures,
    ));
    out.push(Check::none_of(
        "key_prop centers: 0 <= c' - c < lambda",
        "key_prop",
        b.center_gap_failures,
    ));
    out.push(Check::none_of(
        "key_prop apexes: d(q, q') <= 1.5 ell",
        "key_prop",
        b.apex_failures,
    ));
    out.push(Check::at_most(
        "key_prop: relative error of ell = lambda e^-b",
        "key_prop",
        SLACK,
        b.ell_formula_error,
    ));
    out.record("configs", CONFIGS);
    out.record("gridPoints", b.grid_points);
    out.record("largestRatioToEll", b.largest_ratio);
    out.note(
        "The transition case bound is written with l(gamma); it is checked with the translation length of the pair.",
    );
    out.note("Case bounds apply to the unshifted distances d1(g_t v, g_t u) and d1(g_t v, p g_t u).");
    Ok(out)
}
