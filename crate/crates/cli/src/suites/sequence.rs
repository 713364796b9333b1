//! Construction checks for a winding sequence, the `P_m` table, `cor1`, and
//! endpoint separation for several subsequences.

use horoflow::horocycle::GEOMETRY_TOL;
use horoflow::walpha::{
    build_pair_sequence, iterate_winding, iterate_winding_indices, nested_separation, synthetic_letter, verify_cor1,
    verify_pm, word_ball_for, PairSequenceSpec, WindingSequence, TAIL_CAP,
};
use horoflow::witness::SEPARATION_TOL;
use horoflow::{BoundaryChart, BoundaryPoint, FuchsianWordBall, Isometry, Real, Result};

use super::{max_of, min_of, residual_tol};
use crate::report::{Check, SuiteOutput};

pub const L_MAX: usize = 4;
pub const PM_SAMPLES: usize = 20;

/// Index patterns `k_n = offset + stride·n` used for endpoint separation.
pub const PATTERNS: [(usize, usize); 4] = [(0, 1), (0, 2), (1, 2), (0, 3)];

fn finite<S: Real>(b: &BoundaryPoint<S>) -> f64 {
    match b {
        BoundaryPoint::Finite(x) => x.to_f64(),
        BoundaryPoint::Infinity => f64::INFINITY,
    }
}

/// `max |r_{n+1} - r_n| / ℓ_{n+1}` and the same against the shrunk lengths.
fn increment_ratios<S: Real>(ws: &WindingSequence<S>) -> (f64, f64) {
    let steps = ws.times.windows(2).map(|w| (w[1].clone() - &w[0]).abs());
    let mut vs_length = f64::NEG_INFINITY;
    let mut vs_shrunk = f64::NEG_INFINITY;
    for (n, dr) in steps.enumerate() {
        vs_length = vs_length.max((dr.clone() / &ws.lengths[n + 1]).to_f64());
        vs_shrunk = vs_shrunk.max((dr / &ws.steps[n].shrunk_length).to_f64());
    }
    (vs_length, vs_shrunk)
}

fn shrink_ratio<S: Real>(ws: &WindingSequence<S>) -> f64 {
    max_of(
        ws.steps
            .iter()
            .enumerate()
            .map(|(n, s)| (s.shrunk_length.clone() / &ws.lengths[n + 1]).to_f64()),
    )
}

/// Builds the sequence for `spec` and checks everything that does not need
/// the word ball.
pub fn construction<S: Real>(spec: &PairSequenceSpec) -> Result<(SuiteOutput, WindingSequence<S>)> {
    let ps = build_pair_sequence::<S>(spec)?;
    let ws = iterate_winding(&ps)?;
    let tol = residual_tol(S::BITS);
    let eps = spec.epsilon;
    let mut out = SuiteOutput::default();

    if ps.pairs.len() > 1 {
        let ratio = min_of(
            ps.pairs
                .windows(2)
                .map(|w| (w[1].fixed_point.clone() / &w[0].fixed_point).to_f64()),
        );
        out.push(Check::above(
            "cusprecurrent: min x_{n+1} / x_n against 3 + 2 sqrt 2",
            "cusprecurrent",
            3.0 + 2.0 * std::f64::consts::SQRT_2,
            ratio,
        ));
    }
    out.push(Check::none_of(
        "cusprecurrent: overlapping horoballs",
        "cusprecurrent",
        usize::from(!ps.horoballs_disjoint()),
    ));
    out.push(Check::at_most(
        "cusprecurrent: max |tangency time - n spacing|",
        "cusprecurrent",
        GEOMETRY_TOL,
        max_of(
            ps.pairs
                .iter()
                .map(|p| (p.time.clone() - &spec.tangent_time::<S>(p.index)).abs().to_f64()),
        ),
    ));
    out.push(Check::below(
        "cusprecurrent: max ell_n / (eps / (12 4^n))",
        "cusprecurrent",
        1.0,
        max_of(
            ps.pairs
                .iter()
                .map(|p| p.length.to_f64() / spec.length_ceiling(p.index)),
        ),
    ));

    let total: S = ws.lengths.iter().fold(S::zero(), |acc, l| acc + l);
    if ws.depth() > 0 {
        let (vs_length, vs_shrunk) = increment_ratios(&ws);
        out.push(Check::at_most(
            "convergence_winding_time: max |r_{n+1} - r_n| / ell_{n+1}",
            "convergence_winding_time",
            1.0,
            vs_length,
        ));
        out.push(Check::at_most(
            "convergence_winding_time: max |r_{n+1} - r_n| / ell(H'_{n+1}, alpha_{n+1})",
            "convergence_winding_time",
            1.0,
            vs_shrunk,
        ));
        let mut cauchy = f64::NEG_INFINITY;
        for n in 0..ws.times.len() {
            let mut partial = S::zero();
            for m in n + 1..ws.times.len() {
                partial = partial + &ws.lengths[m];
                let gap = (ws.times[m].clone() - &ws.times[n]).abs();
                cauchy = cauchy.max((gap / &partial).to_f64());
            }
        }
        out.push(Check::at_most(
            "convergence_winding_time: max |r_m - r_n| / sum_{n<i<=m} ell_i",
            "convergence_winding_time",
            1.0,
            cauchy,
        ));
        out.push(Check::at_most(
            "shrink_horo: max ell(H'_{n+1}, alpha_{n+1}) / ell_{n+1}",
            "shrink_horo",
            1.0,
            shrink_ratio(&ws),
        ));
        out.push(Check::at_most(
            "winding_time_seq: max |tau_n - (r_{n+1} - r_n)|",
            "winding_time_seq",
            tol,
            max_of(ws.steps.iter().map(|s| s.tau_residual.to_f64())),
        ));
        out.push(Check::none_of(
            "lemma_vectors: beta_n^-1 i outside the region R_n",
            "lemma_vectors",
            ws.steps.iter().filter(|s| !s.in_region).count(),
        ));
        out.push(Check::at_most(
            "lemma_vectors: max d(beta_n Wind(beta_n^-1 v_n)(0), i)",
            "lemma_vectors",
            tol,
            max_of(ws.steps.iter().map(|s| s.wind_residual.to_f64())),
        ));
        let ends: Vec<f64> = ws.vectors.iter().map(|v| finite(v.forward())).collect();
        out.push(Check::below(
            "lemma_vectors: max beta_{n+1}(inf) / beta_n(inf)",
            "lemma_vectors",
            1.0,
            max_of(ends.windows(2).map(|w| w[1] / w[0])),
        ));
        out.push(Check::above(
            "lemma_vectors: min beta_n(inf)",
            "lemma_vectors",
            0.0,
            min_of(ends.iter().copied()),
        ));
    }
    out.push(Check::at_most(
        "convergence_winding_time: |r_N| / sum_{i<=N} ell_i",
        "convergence_winding_time",
        1.0,
        (ws.times[ws.depth()].clone().abs() / &total).to_f64(),
    ));
    out.push(Check::at_most(
        "convergence_winding_time: sum_{i<=N} ell_i against eps / 9",
        "convergence_winding_time",
        eps / 9.0,
        total.to_f64(),
    ));
    out.push(Check::at_most(
        "lemma_vectors: max |B_inf(g_{r_n} beta_n^-1 v_n (0), i)|",
        "lemma_vectors",
        tol,
        max_of(ws.stable_residuals.iter().map(Real::to_f64)),
    ));

    out.record("lengths", ws.lengths.iter().map(Real::to_f64).collect::<Vec<_>>());
    out.record(
        "shrunkLengths",
        ws.shrunk_lengths().iter().map(Real::to_f64).collect::<Vec<_>>(),
    );
    out.record("times", ws.times.iter().map(Real::to_f64).collect::<Vec<_>>());
    out.record(
        "forwardEndpoints",
        ws.vectors.iter().map(|v| finite(v.forward())).collect::<Vec<_>>(),
    );
    out.record("wAlpha", ws.w_alpha.to_f64());
    Ok((out, ws))
}

/// `ξ = lim α_0 ⋯ α_M (∞)` along `k_n = offset + stride·n`, stopped once the
/// relative change reaches working precision or after `TAIL_CAP` letters.
pub fn pattern_limit<S: Real>(spec: &PairSequenceSpec, offset: usize, stride: usize) -> Result<BoundaryPoint<S>> {
    let tiny = S::epsilon() * S::from_f64(16.0);
    let mut product = Isometry::<S>::identity();
    let mut prev: Option<S> = None;
    for n in 0..TAIL_CAP {
        product = product.compose(&synthetic_letter::<S>(spec, offset + stride * n)?);
        let xi = product.a().clone() / product.c();
        if let Some(p) = &prev {
            let change = (xi.clone() - p).abs() / &xi.clone().abs().max_of(S::one());
            if change <= tiny {
                return BoundaryPoint::finite(xi);
            }
        }
        prev = Some(xi);
    }
    BoundaryPoint::finite(prev.expect("at least one letter"))
}

pub fn separation<S: Real>(spec: &PairSequenceSpec, ball: &FuchsianWordBall<S>) -> Result<SuiteOutput> {
    let mut out = SuiteOutput::default();
    let len = spec.depth + 1;
    let mut limits = Vec::new();
    for &(offset, stride) in &PATTERNS {
        let label = format!("k_n = {offset} + {stride}n");
        let indices: Vec<usize> = (0..len).map(|n| offset + stride * n).collect();
        let ws = iterate_winding_indices::<S>(spec, &indices)?;
        if ws.depth() > 0 {
            let (vs_length, _) = increment_ratios(&ws);
            out.push(Check::at_most(
                format!("cor2 {label}: max |r_{{n+1}} - r_n| / ell_{{n+1}}"),
                "cor2",
                1.0,
                vs_length,
            ));
            out.push(Check::at_most(
                format!("cor2 {label}: max shrunk length / ell_{{n+1}}"),
                "cor2",
                1.0,
                shrink_ratio(&ws),
            ));
        }
        let xi = pattern_limit::<S>(spec, offset, stride)?;
        let nested = nested_separation(&ws.letters, &ws.fixed_points, &xi);
        let worst = min_of(nested.iter().map(|(b, x)| match b {
            BoundaryPoint::Finite(v) => ((v.clone() - x) / x).to_f64(),
            BoundaryPoint::Infinity => f64::INFINITY,
        }));
        out.push(Check::above(
            format!("cor2 {label}: min relative excess of the pulled-back endpoint over x_n"),
            "cor2",
            0.0,
            worst,
        ));
        limits.push((label, xi));
    }
    let mut gap = f64::INFINITY;
    for a in 0..limits.len() {
        for b in a + 1..limits.len() {
            let g = ball.min_orbit_gap(&limits[a].1, &limits[b].1, BoundaryChart::Affine);
            gap = gap.min(g.value.to_f64());
        }
    }
    out.push(Check::above(
        "cor2: min gap between an endpoint and ball translates of another",
        "cor2",
        SEPARATION_TOL,
        gap,
    ));
    out.record(
        "patternEndpoints",
        limits.iter().map(|(l, x)| (l.clone(), finite(x))).collect::<Vec<_>>(),
    );
    Ok(out)
}

pub fn run<S: Real>(spec: &PairSequenceSpec, t_max: f64, grid: usize, word_ball: usize) -> Result<SuiteOutput> {
    let (mut out, ws) = construction::<S>(spec)?;
    let ball = word_ball_for(&ws, word_ball)?;
    let eps = spec.epsilon;

    let pm = verify_pm(&ws, L_MAX, PM_SAMPLES, &ball)?;
    out.push(Check::at_most(
        "Pm: |T_0 - eps/9|",
        "Pm",
        0.0,
        (pm.settle_times[0] - eps / 9.0).abs(),
    ));
    for cell in &pm.cells {
        out.push(Check::below(
            format!("Pm n={} l={}: max d1 in the quotient for t >= T_l", cell.n, cell.l),
            "Pm",
            cell.bound,
            cell.max_observed(),
        ));
    }

    let cor1 = verify_cor1(&ws, &ws.w_alpha, t_max, grid, &ball)?;
    out.push(Check::at_most(
        "cor1: sup of d1(g_t w, g_t u) in the quotient",
        "cor1",
        cor1.bound(),
        cor1.sup(),
    ));
    for tail in &cor1.tails {
        match tail.observed {
            Some(o) => out.push(Check::at_most(
                format!("cor1 tail l={}: max for t >= T_l", tail.l),
                "cor1",
                tail.bound,
                o,
            )),
            None => out.note(format!(
                "cor1 tail l={} skipped: T_l = {} lies beyond the grid",
                tail.l, tail.settle_time
            )),
        }
    }

    out.extend(separation::<S>(spec, &ball)?);

    out.record("ballSize", ball.len());
    out.record("spreads", &pm.spreads);
    out.record("settleTimes", &pm.settle_times);
    if word_ball < spec.depth + 2 {
        out.note(format!(
            "word ball length {word_ball} is below depth + 2 = {}; quotient distances are looser upper bounds",
            spec.depth + 2
        ));
    }
    out.note(format!(
        "quotient distances are minima over a word ball of length {word_ball} ({} elements), hence upper bounds",
        ball.len()
    ));
    out.note("limits use finite-depth surrogates: w_alpha is built from beta_N(inf) and r_N");
    Ok(out)
}
