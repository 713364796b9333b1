use std::collections::HashMap;

use crate::error::{GeometryError, Result};
use crate::plane::isometry::Isometry;
use crate::plane::point::{BoundaryPoint, Point};
use crate::plane::tangent::{d1, UnitTangent};
use crate::scalar::{Real, Tolerances};

/// Relative slack for the `f64` screen, covering rounding in the shadows.
const SCREEN_SLACK: f64 = 1e-7;

#[derive(Clone, Copy, Debug)]
struct WordNode {
    parent: u32,
    symbol: u16,
    len: u8,
}

/// All words of length at most `max_word_length` in a generating set and its
/// inverses, deduplicated up to projective equality.
///
/// Elements are stored as a prefix tree over reduced words together with an
/// `f64` copy of each matrix. Full-precision matrices are rebuilt on demand by
/// [`FuchsianWordBall::element`]; the `f64` copies only serve to order and
/// prune candidates, so every value the ball reports is realized by an element
/// evaluated at working precision.
#[derive(Clone, Debug)]
pub struct FuchsianWordBall<S> {
    generators: Vec<Isometry<S>>,
    symbols: Vec<Isometry<S>>,
    max_word_length: usize,
    nodes: Vec<WordNode>,
    shadows: Vec<[f64; 4]>,
}

/// Coordinates on the boundary circle used to measure gaps.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundaryChart {
    /// `x ↦ 2 atan x`, compact, with `∞ ↦ π`.
    Circle,
    /// The real line itself; used around a finite point.
    Affine,
}

/// Minimum over the ball, with the index of the element attaining it.
#[derive(Clone, Debug)]
pub struct BallMinimum<S> {
    pub value: S,
    pub element: usize,
}

impl<S: Real> FuchsianWordBall<S> {
    pub fn new(generators: Vec<Isometry<S>>, max_word_length: usize) -> Result<Self> {
        if generators.len() > (u16::MAX as usize) / 2 {
            return Err(GeometryError::InvalidParameter("too many generators".into()));
        }
        if max_word_length > u8::MAX as usize {
            return Err(GeometryError::InvalidParameter("word length too large".into()));
        }
        let tol = Tolerances::of::<S>();
        let mut symbols = Vec::with_capacity(2 * generators.len());
        for g in &generators {
            symbols.push(g.clone());
            symbols.push(g.inverse());
        }
        let symbol_shadows: Vec<[f64; 4]> = symbols.iter().map(Isometry::to_f64).collect();
        let mut ball = FuchsianWordBall {
            generators,
            symbols,
            max_word_length,
            nodes: vec![WordNode {
                parent: u32::MAX,
                symbol: u16::MAX,
                len: 0,
            }],
            shadows: vec![[1.0, 0.0, 0.0, 1.0]],
        };
        let mut seen: HashMap<[i64; 4], Vec<u32>> = HashMap::new();
        seen.entry(shadow_key(&[1.0, 0.0, 0.0, 1.0])).or_default().push(0);

        let mut frontier: Vec<u32> = vec![0];
        for len in 1..=max_word_length {
            let mut next = Vec::new();
            for &idx in &frontier {
                let node = ball.nodes[idx as usize];
                for (sym, sym_shadow) in symbol_shadows.iter().enumerate() {
                    // skip s s^-1
                    if node.len > 0 && (node.symbol as usize ^ 1) == sym {
                        continue;
                    }
                    let shadow = mul_shadow(&ball.shadows[idx as usize], sym_shadow);
                    let key = shadow_key(&shadow);
                    let new_idx = ball.nodes.len() as u32;
                    ball.nodes.push(WordNode {
                        parent: idx,
                        symbol: sym as u16,
                        len: len as u8,
                    });
                    ball.shadows.push(shadow);
                    let duplicate = match seen.get(&key) {
                        Some(candidates) => {
                            let fresh = ball.element(new_idx as usize);
                            candidates
                                .iter()
                                .any(|&c| ball.element(c as usize).projective_eq(&fresh, tol.det.max(1e-300)))
                        }
                        None => false,
                    };
                    if duplicate {
                        ball.nodes.pop();
                        ball.shadows.pop();
                    } else {
                        seen.entry(key).or_default().push(new_idx);
                        next.push(new_idx);
                    }
                }
            }
            frontier = next;
        }
        Ok(ball)
    }

    pub fn generators(&self) -> &[Isometry<S>] {
        &self.generators
    }

    pub fn max_word_length(&self) -> usize {
        self.max_word_length
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Word of element `idx` as symbol indices; symbol `2k` is generator `k`
    /// and `2k + 1` its inverse.
    pub fn word(&self, idx: usize) -> Vec<usize> {
        let mut word = Vec::new();
        let mut cur = idx;
        while self.nodes[cur].len > 0 {
            word.push(self.nodes[cur].symbol as usize);
            cur = self.nodes[cur].parent as usize;
        }
        word.reverse();
        word
    }

    /// Element `idx` at working precision.
    pub fn element(&self, idx: usize) -> Isometry<S> {
        self.word(idx)
            .into_iter()
            .fold(Isometry::identity(), |acc, s| acc.compose(&self.symbols[s]))
    }

    /// All elements at working precision.
    pub fn elements(&self) -> Vec<Isometry<S>> {
        (0..self.len()).map(|i| self.element(i)).collect()
    }

    /// `min_γ d1(u, γ v)` over the ball: an upper bound for the distance
    /// between the projections of `u` and `v` in the quotient.
    ///
    /// Candidates are screened with `f64` shadows. The base distance alone
    /// bounds `d1` from below, which prunes most of the ball without any
    /// transcendental call; survivors get an `f64` estimate of the full `d1`
    /// and only those near the running minimum are evaluated exactly.
    pub fn d1_quotient(&self, u: &UnitTangent<S>, v: &UnitTangent<S>) -> Result<BallMinimum<S>> {
        let one = S::one();
        let u0 = u.base().to_f64();
        let u1 = u.at(&one)?.to_f64();
        let v0 = v.base().to_f64();
        let v1 = v.at(&one)?.to_f64();
        let estimate = |sh: &[f64; 4]| {
            let e = dist_shadow(u0, apply_shadow(sh, v0)) + dist_shadow(u1, apply_shadow(sh, v1));
            if e.is_finite() {
                e
            } else {
                f64::INFINITY
            }
        };

        let closest = self
            .shadows
            .iter()
            .enumerate()
            .map(|(i, sh)| (i, sinh_half_sq(u0, apply_shadow(sh, v0))))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .map(|(i, _)| i)
            .ok_or_else(|| GeometryError::InvalidParameter("empty word ball".into()))?;
        let mut best = BallMinimum {
            value: d1(u, &v.transform(&self.element(closest)))?,
            element: closest,
        };
        let window = |b: f64| b + SCREEN_SLACK * (1.0 + b);
        let reach = window(best.value.to_f64().max(estimate(&self.shadows[closest])));
        let base_cut = (reach / 2.0).sinh().powi(2);

        let mut candidates: Vec<(f64, usize)> = self
            .shadows
            .iter()
            .enumerate()
            .filter(|(i, sh)| *i != closest && !(sinh_half_sq(u0, apply_shadow(sh, v0)) > base_cut))
            .map(|(i, sh)| (estimate(sh), i))
            .filter(|(e, _)| !(*e > reach))
            .collect();
        candidates.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
        for (e, idx) in candidates {
            if e > window(best.value.to_f64()) {
                break;
            }
            let value = d1(u, &v.transform(&self.element(idx)))?;
            if value < best.value {
                best = BallMinimum { value, element: idx };
            }
        }
        Ok(best)
    }

    /// `min_γ gap(ξ, γ η)` in the given boundary chart.
    pub fn min_orbit_gap(&self, xi: &BoundaryPoint<S>, eta: &BoundaryPoint<S>, chart: BoundaryChart) -> BallMinimum<S> {
        let xi_f = xi.to_f64();
        let chart = match xi {
            BoundaryPoint::Infinity => BoundaryChart::Circle,
            BoundaryPoint::Finite(_) => chart,
        };
        let xi_angle = chart_angle_f64(xi_f);
        let eta_f = eta.to_f64();
        let gaps: Vec<f64> = self
            .shadows
            .iter()
            .map(|sh| {
                let img = apply_boundary_shadow(sh, eta_f);
                let g = match chart {
                    BoundaryChart::Circle => angle_gap(xi_angle, chart_angle_f64(img)),
                    BoundaryChart::Affine => (xi_f - img).abs(),
                };
                if g.is_nan() {
                    0.0
                } else {
                    g
                }
            })
            .collect();
        let smallest = gaps.iter().cloned().fold(f64::INFINITY, f64::min);
        let window = smallest + 1e-6 * (1.0 + xi_f.abs().min(1e300));
        let mut best: Option<BallMinimum<S>> = None;
        for (idx, g) in gaps.iter().enumerate() {
            if *g > window {
                continue;
            }
            let img = self.element(idx).apply_boundary(eta);
            let value = match (chart, xi, &img) {
                (BoundaryChart::Affine, BoundaryPoint::Finite(x), BoundaryPoint::Finite(y)) => (x.clone() - y).abs(),
                (BoundaryChart::Affine, _, _) => S::from_f64(f64::INFINITY),
                (BoundaryChart::Circle, _, _) => xi.chart_gap(&img),
            };
            if best.as_ref().is_none_or(|b| value < b.value) {
                best = Some(BallMinimum { value, element: idx });
            }
        }
        best.unwrap_or(BallMinimum {
            value: S::from_f64(f64::INFINITY),
            element: 0,
        })
    }
}

fn mul_shadow(m: &[f64; 4], n: &[f64; 4]) -> [f64; 4] {
    [
        m[0] * n[0] + m[1] * n[2],
        m[0] * n[1] + m[1] * n[3],
        m[2] * n[0] + m[3] * n[2],
        m[2] * n[1] + m[3] * n[3],
    ]
}

fn shadow_key(m: &[f64; 4]) -> [i64; 4] {
    let mut big = 0usize;
    for k in 1..4 {
        if m[k].abs() > m[big].abs() {
            big = k;
        }
    }
    let scale = if m[big] < 0.0 { -m[big] } else { m[big] };
    let sign = if m[big] < 0.0 { -1.0 } else { 1.0 };
    let mut key = [0i64; 4];
    for k in 0..4 {
        key[k] = (sign * m[k] / scale * 1e7).round() as i64;
    }
    key
}

fn apply_shadow(m: &[f64; 4], (x, y): (f64, f64)) -> (f64, f64) {
    let den_re = m[2] * x + m[3];
    let den_im = m[2] * y;
    let norm = den_re * den_re + den_im * den_im;
    let re = ((m[0] * x + m[1]) * den_re + m[0] * m[2] * y * y) / norm;
    (re, (m[0] * m[3] - m[1] * m[2]) * y / norm)
}

fn apply_boundary_shadow(m: &[f64; 4], x: f64) -> f64 {
    if x.is_infinite() {
        if m[2] == 0.0 {
            f64::INFINITY
        } else {
            m[0] / m[2]
        }
    } else {
        let den = m[2] * x + m[3];
        if den == 0.0 {
            f64::INFINITY
        } else {
            (m[0] * x + m[1]) / den
        }
    }
}

fn sinh_half_sq(p: (f64, f64), q: (f64, f64)) -> f64 {
    let dx = p.0 - q.0;
    let dy = p.1 - q.1;
    (dx * dx + dy * dy) / (4.0 * p.1 * q.1)
}

fn dist_shadow(p: (f64, f64), q: (f64, f64)) -> f64 {
    let chord = (p.0 - q.0).hypot(p.1 - q.1);
    2.0 * (chord / (2.0 * p.1.sqrt() * q.1.sqrt())).asinh()
}

fn chart_angle_f64(x: f64) -> f64 {
    if x.is_infinite() {
        std::f64::consts::PI
    } else {
        2.0 * x.atan()
    }
}

fn angle_gap(a: f64, b: f64) -> f64 {
    let raw = (a - b).abs();
    raw.min(std::f64::consts::TAU - raw)
}

/// Convenience: basepoints `γ z` for every element, at working precision.
pub fn orbit_points<S: Real>(ball: &FuchsianWordBall<S>, z: &Point<S>) -> Vec<Point<S>> {
    (0..ball.len()).map(|i| ball.element(i).apply(z)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gens() -> Vec<Isometry<f64>> {
        vec![
            Isometry::translation(2.0),
            Isometry::from_f64(1.0, 0.0, 2.0, 1.0).unwrap(),
        ]
    }

    #[test]
    fn sizes_of_free_ball() {
        // Sanov subgroup is free: 1 + 4 + 12 + 36 reduced words up to length 3
        let ball = FuchsianWordBall::new(gens(), 3).unwrap();
        assert_eq!(ball.len(), 1 + 4 + 12 + 36);
    }

    #[test]
    fn closed_under_inverse_and_contains_identity() {
        let ball = FuchsianWordBall::new(gens(), 3).unwrap();
        let elems = ball.elements();
        assert!(elems[0].projective_eq(&Isometry::identity(), 1e-12));
        for e in &elems {
            let inv = e.inverse();
            assert!(elems.iter().any(|f| f.projective_eq(&inv, 1e-9)));
        }
    }

    #[test]
    fn deduplicates_commuting_words() {
        // a and b commute: words collapse to a^i b^j
        let a = Isometry::translation(1.0f64);
        let b = Isometry::translation(std::f64::consts::SQRT_2);
        let ball = FuchsianWordBall::new(vec![a, b], 2).unwrap();
        // |i| + |j| <= 2 lattice points
        assert_eq!(ball.len(), 13);
    }

    #[test]
    fn quotient_distance_examples() {
        let ball = FuchsianWordBall::new(gens(), 3).unwrap();
        let u = UnitTangent::new(Point::from_f64(0.3, 0.8).unwrap(), BoundaryPoint::Finite(1.7));
        assert_eq!(ball.d1_quotient(&u, &u).unwrap().value, 0.0);
        let g = ball.element(17);
        let moved = u.transform(&g);
        assert!(ball.d1_quotient(&u, &moved).unwrap().value < 1e-9);
    }

    #[test]
    fn quotient_distance_is_monotone_in_radius() {
        let u = UnitTangent::new(Point::from_f64(0.3, 0.8).unwrap(), BoundaryPoint::Finite(1.7));
        let v = UnitTangent::new(Point::from_f64(5.1, 0.2).unwrap(), BoundaryPoint::Finite(-3.0));
        let mut last = f64::INFINITY;
        for len in 0..=4 {
            let ball = FuchsianWordBall::new(gens(), len).unwrap();
            let q = ball.d1_quotient(&u, &v).unwrap().value;
            let brute = ball
                .elements()
                .iter()
                .map(|g| d1(&u, &v.transform(g)).unwrap())
                .fold(f64::INFINITY, f64::min);
            assert!((q - brute).abs() < 1e-12, "pruned {q} vs brute {brute}");
            assert!(q <= last + 1e-15);
            last = q;
        }
    }

    #[test]
    fn orbit_gap_finds_translates() {
        let ball = FuchsianWordBall::new(gens(), 2).unwrap();
        let target = BoundaryPoint::Finite(4.0);
        assert!(
            ball.min_orbit_gap(&target, &BoundaryPoint::Infinity, BoundaryChart::Circle)
                .value
                > 0.0
        );
        // 2 + 2 = 4 is the image of ∞? no: translations fix ∞; 1/2 = b(∞)
        let half = BoundaryPoint::Finite(0.5);
        assert!(
            ball.min_orbit_gap(&half, &BoundaryPoint::Infinity, BoundaryChart::Affine)
                .value
                < 1e-12
        );
    }
}
