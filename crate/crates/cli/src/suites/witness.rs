//! The end-to-end non-expansiveness witness.

use horoflow::witness::{build_witness, WitnessConfig, WitnessReport, SEPARATION_TOL};
use horoflow::{Real, Result};

use super::residual_tol;
use crate::config::RunConfig;
use crate::report::{Check, SuiteOutput};

/// Largest violation of `d1(g_t u, g_t y) ≤ d1(g_t u, g_t w) + d1(g_t w, g_t y)`
/// tolerated from rounding.
pub const TRIANGLE_SLACK: f64 = 1e-12;
pub const BUSEMANN_TOL: f64 = 1e-20;

pub fn witness_config(cfg: &RunConfig) -> WitnessConfig {
    WitnessConfig {
        depth: cfg.depth,
        spacing: cfg.spacing,
        margin: cfg.margin,
        t_max: cfg.t_max,
        grid: cfg.grid,
        word_ball: cfg.word_ball,
        seed: cfg.seed,
        ..WitnessConfig::new(cfg.delta)
    }
}

pub fn checks(r: &WitnessReport, bits: u32) -> SuiteOutput {
    let mut out = SuiteOutput::default();
    let delta = r.delta;
    out.push(Check::below(
        "thm1: sup of d1(g_t u, g_t y) in the quotient over the grid",
        "thm1",
        2.0 * delta,
        r.sup_d1,
    ));
    out.push(Check::above(
        "thm1: min |y(+inf) - gamma inf| over the word ball",
        "thm1",
        SEPARATION_TOL,
        r.orbit_separation,
    ));
    out.push(Check::below(
        "thm1: |B_{w(+inf)}(y(0), w(0))|",
        "thm1",
        BUSEMANN_TOL.max(residual_tol(bits)),
        r.busemann_residual,
    ));
    out.push(Check::below(
        "distancelp: max d1(g_t w, g_t y) for t >= 0",
        "distancelp",
        delta,
        r.forward_half,
    ));
    out.push(Check::below(
        "distancelp: max d1(g_t u, g_t y) for t <= 0",
        "distancelp",
        delta,
        r.backward_half,
    ));
    out.push(Check::at_most(
        "thm1: triangle excess d1(u, y) - d1(u, w) - d1(w, y) for t >= 0",
        "thm1",
        TRIANGLE_SLACK,
        r.triangle_excess,
    ));
    out.push(Check::below(
        "thm1: max d1(g_t u, g_t w) + d1(g_t w, g_t y) against eps + delta",
        "thm1",
        r.epsilon_product + delta,
        r.triangle_sum,
    ));
    out.push(Check::at_most(
        "cor1: sup of d1(g_t w, g_t u) in the quotient for t >= 0",
        "cor1",
        3.0 * r.epsilon_used,
        r.forward_shadow,
    ));
    out.push(Check::below(
        "distancelp: d1(w, u) of the chosen lift against eps",
        "distancelp",
        r.epsilon_product,
        r.lift_distance,
    ));
    out.push(Check::none_of(
        "cont_localprod: product modulus schedule exhausted",
        "cont_localprod",
        usize::from(r.modulus_exhausted),
    ));

    out.record("epsilonProduct", r.epsilon_product);
    out.record("epsilonUsed", r.epsilon_used);
    out.record("spacing", r.spacing);
    out.record("depth", r.depth);
    out.record("wordBall", r.word_ball);
    out.record("ballSize", r.ball_size);
    out.record("u", r.u);
    out.record("w", r.w);
    out.record("y", r.y);
    out.record("tRange", r.t_range);
    out.record("gridSize", r.grid_size);
    out.record("supD1", r.sup_d1);
    out.record("orbitSeparation", r.orbit_separation);
    out.record("orbitSeparationCircleChart", r.orbit_separation_circle);
    out.record("tailLetters", r.tail_letters);
    out.record("passed", r.passed);

    out.note("reparametrization phi is the identity");
    out.note(format!(
        "orbit separation is certified only within word ball radius {} ({} elements)",
        r.word_ball, r.ball_size
    ));
    out.note("the product modulus is an empirical estimate from seeded samples, not a certificate");
    out.note("forward and backward half-line maxima extend past the grid by the monotonicity lemma");
    out
}

pub fn run<S: Real>(cfg: &RunConfig) -> Result<SuiteOutput> {
    let report = build_witness::<S>(&witness_config(cfg))?;
    Ok(checks(&report, S::BITS))
}
