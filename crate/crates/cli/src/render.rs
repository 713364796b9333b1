//! Standalone SVG 1.1 figures in Euclidean upper-half-plane coordinates.

use std::fmt::Write as _;

use horoflow::horocycle::{normalized_estimates, wind, TangencyData};
use horoflow::walpha::{build_pair_sequence, iterate_winding, PairSequenceSpec};
use horoflow::{BoundaryPoint, Real, Result, UnitTangent};

use crate::config::Figure;

const WIDTH: f64 = 800.0;
const MAX_HEIGHT: f64 = 600.0;
const PAD: f64 = 20.0;

/// Tangency used by the winding and radii figures: `u = (i, ∞)` against the
/// horocycle at `e^{T0}` with translation length `ELL`.
const T0: f64 = 1.0;
const ELL: f64 = 0.6;

struct Canvas {
    x0: f64,
    y1: f64,
    scale: f64,
    height: f64,
    body: String,
}

impl Canvas {
    /// World window `[x0, x1] × [0, y1]`, equal scale on both axes.
    fn new(x0: f64, x1: f64, y1: f64) -> Self {
        let scale = ((WIDTH - 2.0 * PAD) / (x1 - x0)).min((MAX_HEIGHT - 2.0 * PAD) / y1);
        Canvas {
            x0,
            y1,
            scale,
            height: y1 * scale + 2.0 * PAD,
            body: String::new(),
        }
    }

    fn px(&self, x: f64) -> f64 {
        PAD + (x - self.x0) * self.scale
    }

    fn py(&self, y: f64) -> f64 {
        PAD + (self.y1 - y) * self.scale
    }

    fn line(&mut self, class: &str, (ax, ay): (f64, f64), (bx, by): (f64, f64)) {
        let (ax, ay, bx, by) = (self.px(ax), self.py(ay), self.px(bx), self.py(by));
        let _ = writeln!(
            self.body,
            r#"  <line class="{class}" x1="{ax:.3}" y1="{ay:.3}" x2="{bx:.3}" y2="{by:.3}"/>"#
        );
    }

    fn circle(&mut self, class: &str, (cx, cy): (f64, f64), r: f64) {
        let (cx, cy, r) = (self.px(cx), self.py(cy), r * self.scale);
        let _ = writeln!(
            self.body,
            r#"  <circle class="{class}" cx="{cx:.3}" cy="{cy:.3}" r="{r:.3}"/>"#
        );
    }

    /// Upper half of the circle centered on the real axis.
    fn half_circle(&mut self, class: &str, center: f64, r: f64) {
        let (ax, bx, y) = (self.px(center - r), self.px(center + r), self.py(0.0));
        let rr = r * self.scale;
        let _ = writeln!(
            self.body,
            r#"  <path class="{class}" d="M {ax:.3} {y:.3} A {rr:.3} {rr:.3} 0 0 1 {bx:.3} {y:.3}"/>"#
        );
    }

    fn polyline(&mut self, class: &str, pts: &[(f64, f64)], closed: bool) {
        let mut d = String::new();
        for (k, &(x, y)) in pts.iter().enumerate() {
            let _ = write!(
                d,
                "{} {:.3} {:.3} ",
                if k == 0 { "M" } else { "L" },
                self.px(x),
                self.py(y)
            );
        }
        if closed {
            d.push('Z');
        }
        let _ = writeln!(self.body, r#"  <path class="{class}" d="{}"/>"#, d.trim_end());
    }

    fn point(&mut self, class: &str, p: (f64, f64), label: &str) {
        let (x, y) = (self.px(p.0), self.py(p.1));
        let _ = writeln!(
            self.body,
            r#"  <circle class="{class}" cx="{x:.3}" cy="{y:.3}" r="3"/>"#
        );
        if !label.is_empty() {
            let _ = writeln!(
                self.body,
                r#"  <text x="{:.3}" y="{:.3}">{label}</text>"#,
                x + 5.0,
                y - 5.0
            );
        }
    }

    fn finish(self, title: &str) -> String {
        let mut s = String::new();
        let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH:.0}" height="{:.0}" viewBox="0 0 {WIDTH:.0} {:.0}">"#,
            self.height, self.height
        );
        let _ = writeln!(s, "  <title>{title}</title>");
        s.push_str(STYLE);
        s.push_str(&self.body);
        s.push_str("</svg>\n");
        s
    }
}

const STYLE: &str = r#"  <style>
    line, path, circle { fill: none; stroke-width: 1.2; }
    .axis { stroke: #444; }
    .horocycle { stroke: #1f77b4; }
    .geodesic { stroke: #d62728; }
    .wound { stroke: #2ca02c; }
    .region { fill: #ff7f0e; fill-opacity: 0.25; stroke: #ff7f0e; }
    .marker { fill: #000; stroke: none; }
    text { font-family: sans-serif; font-size: 12px; }
  </style>
"#;

fn finite<S: Real>(b: &BoundaryPoint<S>) -> f64 {
    match b {
        BoundaryPoint::Finite(x) => x.to_f64(),
        BoundaryPoint::Infinity => f64::INFINITY,
    }
}

/// Euclidean `(center, radius)` of the geodesic through `v`, or `None` for a
/// vertical line.
fn geodesic_circle<S: Real>(v: &UnitTangent<S>) -> Option<(f64, f64)> {
    let (a, b) = (finite(&v.backward()), finite(v.forward()));
    if a.is_infinite() || b.is_infinite() {
        None
    } else {
        Some(((a + b) / 2.0, (a - b).abs() / 2.0))
    }
}

fn tangency<S: Real>() -> Result<TangencyData<S>> {
    let u = UnitTangent::<S>::vertical();
    TangencyData::construct(u, &BoundaryPoint::finite(S::from_f64(T0.exp()))?, &S::from_f64(ELL))
}

fn winding<S: Real>() -> Result<String> {
    let td = tangency::<S>()?;
    let v = wind(&td);
    let x0 = T0.exp();
    let (c, r) = geodesic_circle(&v).unwrap_or((0.0, 0.0));
    let left = (c - r).min(-1.0) - 0.5;
    let right = (c + r).max(2.0 * x0) + 0.5;
    let top = (2.0 * x0).max(r) * 1.15;
    let mut cv = Canvas::new(left, right, top);
    cv.line("axis", (left, 0.0), (right, 0.0));
    cv.line("geodesic", (0.0, 0.0), (0.0, top));
    cv.circle("horocycle", (x0, x0), x0);
    cv.half_circle("wound", c, r);
    let q = td.tangent_point().to_f64();
    cv.point("marker", (0.0, 1.0), "u(0)");
    cv.point("marker", q, "tangency");
    let pq = td.pair().parabolic().apply(td.tangent_point()).to_f64();
    cv.point("marker", pq, "p(tangency)");
    Ok(cv.finish("Winding around an oriented pair"))
}

fn radii<S: Real>() -> Result<String> {
    let est = normalized_estimates(&tangency::<S>()?)?;
    let (c, r, cw, rw) = (est.center, est.radius, est.center_wound, est.radius_wound);
    let left = (c - r).min(cw - rw) - 0.3;
    let right = (c + r).max(cw + rw) + 0.3;
    let top = r.max(rw) * 1.3;
    let mut cv = Canvas::new(left, right, top);
    cv.line("axis", (left, 0.0), (right, 0.0));
    cv.line("horocycle", (left, r), (right, r));
    cv.half_circle("geodesic", c, r);
    cv.half_circle("wound", cw, rw);
    cv.point("marker", (0.0, 1.0), "i");
    cv.point("marker", (c, r), "q");
    cv.point("marker", (cw, rw), "q'");
    cv.point("marker", (c, 0.0), "c");
    cv.point("marker", (cw, 0.0), "c'");
    Ok(cv.finish("Radii and centers of the half-circles"))
}

fn sequence_points<S: Real>(spec: &PairSequenceSpec) -> Result<Vec<f64>> {
    let ps = build_pair_sequence::<S>(spec)?;
    Ok(ps.pairs.iter().map(|p| p.fixed_point.to_f64()).collect())
}

fn horocycles<S: Real>(spec: &PairSequenceSpec) -> Result<String> {
    let xs = sequence_points::<S>(spec)?;
    let big = *xs.last().expect("at least one pair");
    let mut cv = Canvas::new(-0.1 * big, 2.1 * big, 2.1 * big);
    cv.line("axis", (-0.1 * big, 0.0), (2.1 * big, 0.0));
    cv.line("geodesic", (0.0, 0.0), (0.0, 2.1 * big));
    for &x in &xs {
        cv.circle("horocycle", (x, x), x);
    }
    for &x in &xs {
        cv.point("marker", (0.0, x), "");
    }
    Ok(cv.finish("Position of the sequence of horocycles"))
}

/// The same picture with both axes in `ln`; circles become sampled curves.
fn horocycles_log<S: Real>(spec: &PairSequenceSpec) -> Result<String> {
    let xs = sequence_points::<S>(spec)?;
    let lo = xs[0].ln() - 3.0;
    let hi = xs.last().expect("at least one pair").ln() + 1.5;
    let mut cv = Canvas::new(lo, hi, hi - lo);
    let shift = |(x, y): (f64, f64)| (x.ln().max(lo), y.ln() - lo);
    cv.line("axis", (lo, 0.0), (hi, 0.0));
    for &x in &xs {
        let pts: Vec<(f64, f64)> = (0..=240)
            .map(|k| {
                let a = std::f64::consts::TAU * k as f64 / 240.0;
                shift((x + x * a.cos(), (x + x * a.sin()).max(x * 1e-6)))
            })
            .collect();
        cv.polyline("horocycle", &pts, true);
        cv.point("marker", (lo, x.ln() - lo), "");
    }
    Ok(cv.finish("Position of the sequence of horocycles, logarithmic axes"))
}

fn region<S: Real>(spec: &PairSequenceSpec) -> Result<String> {
    let ws = iterate_winding(&build_pair_sequence::<S>(spec)?)?;
    let n = if ws.depth() >= 2 { 1 } else { 0 };
    let xs: Vec<f64> = ws.fixed_points.iter().map(Real::to_f64).collect();
    let big = xs[(n + 1).min(xs.len() - 1)];
    let top = 2.6 * big;
    let mut cv = Canvas::new(-0.2 * big, 2.2 * big, top);

    // strip 0 < x < X outside the circle of radius X at (X, X), pinched at iX
    let arc = |from: f64, to: f64| -> Vec<(f64, f64)> {
        (0..=60)
            .map(|k| {
                let a = from + (to - from) * k as f64 / 60.0;
                (big + big * a.cos(), big + big * a.sin())
            })
            .collect()
    };
    use std::f64::consts::{FRAC_PI_2, PI};
    let mut outline = vec![(0.0, 0.0)];
    outline.extend(arc(-FRAC_PI_2, -PI));
    outline.extend(arc(PI, FRAC_PI_2));
    outline.extend([(big, top), (0.0, top), (0.0, big)]);
    if ws.depth() > 0 {
        cv.polyline("region", &outline, true);
    }

    cv.line("axis", (-0.2 * big, 0.0), (2.2 * big, 0.0));
    cv.line("geodesic", (0.0, 0.0), (0.0, top));
    for &x in xs.iter().take(n + 2) {
        cv.circle("horocycle", (x, x), x);
    }
    for (k, step) in ws.steps.iter().take(n + 1).enumerate() {
        let p = step.pulled_base.to_f64();
        // earlier points crowd the origin; only the last one is labelled
        let label = if k == n {
            format!("beta_{k}^-1 i")
        } else {
            String::new()
        };
        cv.point("marker", p, &label);
    }
    Ok(cv.finish(&format!("Region R_{n}")))
}

pub fn render<S: Real>(figure: Figure, spec: &PairSequenceSpec) -> Result<String> {
    match figure {
        Figure::Winding => winding::<S>(),
        Figure::Radii => radii::<S>(),
        Figure::Horocycles => horocycles::<S>(spec),
        Figure::HorocyclesLog => horocycles_log::<S>(spec),
        Figure::Region => region::<S>(spec),
    }
}
