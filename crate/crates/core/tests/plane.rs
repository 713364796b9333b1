use horoflow::{
    busemann, d1, hyp_distance, BoundaryPoint, FuchsianWordBall, Isometry, IsometryKind, Point, Real, Real256,
    Tolerances, UnitTangent,
};
use proptest::prelude::*;

fn pt(x: f64, y: f64) -> Point<f64> {
    Point::from_f64(x, y).unwrap()
}

fn point() -> impl Strategy<Value = Point<f64>> {
    (-3.0..3.0f64, -2.0..2.0f64).prop_map(|(x, ly)| pt(x, ly.exp()))
}

fn isometry() -> impl Strategy<Value = Isometry<f64>> {
    (-2.0..2.0f64, -2.0..2.0f64, -2.0..2.0f64, -2.0..2.0f64)
        .prop_filter("det > 0.2", |(a, b, c, d)| a * d - b * c > 0.2)
        .prop_map(|(a, b, c, d)| Isometry::from_f64(a, b, c, d).unwrap())
}

fn tangent() -> impl Strategy<Value = UnitTangent<f64>> {
    (point(), -3.1..3.1f64).prop_map(|(p, a)| UnitTangent::from_direction(p, &a).unwrap())
}

fn boundary() -> impl Strategy<Value = BoundaryPoint<f64>> {
    prop_oneof![
        1 => Just(BoundaryPoint::Infinity),
        4 => (-4.0..4.0f64).prop_map(BoundaryPoint::Finite),
    ]
}

fn same_vector(u: &UnitTangent<f64>, v: &UnitTangent<f64>, tol: f64) -> bool {
    hyp_distance(u.base(), v.base()) < tol && u.forward().chart_gap(v.forward()) < tol
}

/// Length of the vertical segment from `i·a` to `i·b` by Simpson's rule on
/// `ds = dy / y`.
fn vertical_length(a: f64, b: f64) -> f64 {
    let n = 2000;
    let h = (b - a) / n as f64;
    let f = |y: f64| 1.0 / y;
    let mut s = f(a) + f(b);
    for k in 1..n {
        let w = if k % 2 == 1 { 4.0 } else { 2.0 };
        s += w * f(a + k as f64 * h);
    }
    s * h / 3.0
}

/// `d(x, c) - d(y, c)` with `c` far down the vertical geodesic ending at `xi`.
fn busemann_limit(xi: &BoundaryPoint<f64>, x: &Point<f64>, y: &Point<f64>, t: f64) -> f64 {
    let c = match xi {
        BoundaryPoint::Infinity => pt(0.0, t.exp()),
        BoundaryPoint::Finite(v) => pt(*v, (-t).exp()),
    };
    hyp_distance(x, &c) - hyp_distance(y, &c)
}

#[test]
fn distance_examples() {
    let i = Point::<f64>::i();
    assert_eq!(hyp_distance(&i, &i), 0.0);
    let oracle = vertical_length(1.0, 2.0);
    assert!((hyp_distance(&i, &pt(0.0, 2.0)) - oracle).abs() < 1e-12);
    assert!((hyp_distance(&i, &pt(1.0, 1.0)) - 1.5f64.acosh()).abs() < 1e-12);
}

#[test]
fn distance_at_high_precision_matches_integral() {
    let i = Point::<Real256>::i();
    let two = Point::<Real256>::from_f64(0.0, 2.0).unwrap();
    let d = hyp_distance(&i, &two);
    assert!((d.to_f64() - vertical_length(1.0, 2.0)).abs() < 1e-12);
    assert!((d.to_f64() - std::f64::consts::LN_2).abs() < 1e-15);
}

#[test]
fn action_examples() {
    let id = Isometry::<f64>::identity();
    assert_eq!(id.apply(&Point::i()).to_f64(), (0.0, 1.0));
    let tr = Isometry::<f64>::translation(1.0);
    assert!(tr.apply_boundary(&BoundaryPoint::Infinity).is_infinite());
    let m = Isometry::<f64>::from_f64(3.5, -1.0, 1.0, 0.0).unwrap();
    assert!((m.apply_boundary(&BoundaryPoint::Infinity).to_f64() - 3.5).abs() < 1e-12);
}

#[test]
fn classification_examples() {
    let tol = Tolerances::for_bits(53);
    assert_eq!(
        Isometry::<f64>::translation(1.0).classify(&tol).kind,
        IsometryKind::Parabolic
    );
    let dil = Isometry::<f64>::from_f64(2.0, 0.0, 0.0, 1.0).unwrap();
    assert!((dil.trace() - 3.0 / 2f64.sqrt()).abs() < 1e-12);
    assert_eq!(dil.classify(&tol).kind, IsometryKind::Hyperbolic);
    assert_eq!(Isometry::<f64>::identity().classify(&tol).kind, IsometryKind::Identity);
}

#[test]
fn busemann_examples() {
    let i = Point::<f64>::i();
    let two_i = pt(0.0, 2.0);
    let b = busemann(&BoundaryPoint::Infinity, &two_i, &i);
    assert!((b + std::f64::consts::LN_2).abs() < 1e-12);
    let lim = busemann_limit(&BoundaryPoint::Infinity, &two_i, &i, 30.0);
    assert!((b - lim).abs() < 1e-9);
}

#[test]
fn backward_endpoint_examples() {
    let up = UnitTangent::<f64>::vertical();
    assert_eq!(up.backward().to_f64(), 0.0);
    let arc = UnitTangent::new(Point::<f64>::i(), BoundaryPoint::Finite(1.0));
    assert!((arc.backward().to_f64() + 1.0).abs() < 1e-12);
    let down = UnitTangent::new(pt(0.0, 2.0), BoundaryPoint::Finite(0.0));
    assert!(down.backward().is_infinite());
}

#[test]
fn flow_examples() {
    let up = UnitTangent::<f64>::vertical();
    let moved = up.flow(&1.5).unwrap();
    let (x, y) = moved.base().to_f64();
    assert!(x.abs() < 1e-15 && (y - 1.5f64.exp()).abs() < 1e-12);
    assert!(moved.forward().is_infinite());
    assert_eq!(up.flow(&0.0).unwrap(), up);
}

#[test]
fn reversed_vector_is_two_apart() {
    let up = UnitTangent::<f64>::vertical();
    let down = UnitTangent::new(Point::i(), BoundaryPoint::Finite(0.0));
    let oracle = vertical_length((-1f64).exp(), 1f64.exp());
    assert!((d1(&up, &down).unwrap() - oracle).abs() < 1e-9);
    assert!((oracle - 2.0).abs() < 1e-9);
    assert_eq!(d1(&up, &up).unwrap(), 0.0);
}

#[test]
fn quotient_distance_examples() {
    let gens = vec![
        Isometry::<f64>::from_f64(1.0, 2.0, 0.0, 1.0).unwrap(),
        Isometry::<f64>::from_f64(1.0, 0.0, 2.0, 1.0).unwrap(),
    ];
    let u = UnitTangent::new(pt(0.3, 1.2), BoundaryPoint::Finite(2.0));
    let g = gens[0].compose(&gens[1].inverse());
    let small = FuchsianWordBall::new(gens.clone(), 2).unwrap();
    let big = FuchsianWordBall::new(gens, 3).unwrap();
    assert!(small.d1_quotient(&u, &u).unwrap().value.abs() < 1e-12);
    assert!(small.d1_quotient(&u, &u.transform(&g)).unwrap().value.abs() < 1e-9);

    let far = UnitTangent::new(pt(5.0, 0.2), BoundaryPoint::Finite(-7.0));
    let a = small.d1_quotient(&u, &far).unwrap().value;
    let b = big.d1_quotient(&u, &far).unwrap().value;
    assert!(b <= a + 1e-12);
    assert!(a <= d1(&u, &far).unwrap() + 1e-12);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn distance_is_isometry_invariant(g in isometry(), p in point(), q in point()) {
        let d = hyp_distance(&p, &q);
        let dg = hyp_distance(&g.apply(&p), &g.apply(&q));
        prop_assert!((d - dg).abs() <= 1e-9 * d.max(1.0));
    }

    #[test]
    fn distance_is_a_symmetric_nonnegative(p in point(), q in point()) {
        let d = hyp_distance(&p, &q);
        prop_assert!(d >= 0.0);
        prop_assert_eq!(d, hyp_distance(&q, &p));
    }

    #[test]
    fn busemann_is_equivariant(g in isometry(), xi in boundary(), x in point(), y in point()) {
        let b = busemann(&xi, &x, &y);
        let bg = busemann(&g.apply_boundary(&xi), &g.apply(&x), &g.apply(&y));
        prop_assert!((b - bg).abs() < 1e-9, "{b} vs {bg}");
    }

    #[test]
    fn busemann_is_bounded_by_distance(xi in boundary(), x in point(), y in point()) {
        prop_assert!(busemann(&xi, &x, &y).abs() <= hyp_distance(&x, &y) + 1e-12);
    }

    #[test]
    fn busemann_is_a_cocycle(xi in boundary(), x in point(), y in point(), z in point()) {
        let lhs = busemann(&xi, &x, &z);
        let rhs = busemann(&xi, &x, &y) + busemann(&xi, &y, &z);
        prop_assert!((lhs - rhs).abs() < 1e-10);
        prop_assert_eq!(busemann(&xi, &x, &x), 0.0);
    }

    #[test]
    fn busemann_matches_its_limit(xi in boundary(), x in point(), y in point()) {
        let lim = busemann_limit(&xi, &x, &y, 20.0);
        prop_assert!((busemann(&xi, &x, &y) - lim).abs() < 1e-8);
    }

    #[test]
    fn flow_commutes_with_isometries(g in isometry(), u in tangent(), t in -4.0..4.0f64) {
        let a = u.flow(&t).unwrap().transform(&g);
        let b = u.transform(&g).flow(&t).unwrap();
        prop_assert!(same_vector(&a, &b, 1e-9));
    }

    #[test]
    fn flow_is_a_flow(u in tangent(), s in -3.0..3.0f64, t in -3.0..3.0f64) {
        let a = u.flow(&(s + t)).unwrap();
        let b = u.flow(&t).unwrap().flow(&s).unwrap();
        prop_assert!(same_vector(&a, &b, 1e-9));
        let moved = hyp_distance(u.base(), &u.at(&t).unwrap());
        prop_assert!((moved - t.abs()).abs() < 1e-9);
    }

    #[test]
    fn d1_is_symmetric_and_invariant(g in isometry(), u in tangent(), v in tangent()) {
        let a = d1(&u, &v).unwrap();
        prop_assert!((a - d1(&v, &u).unwrap()).abs() <= 1e-12 * a.max(1.0));
        let b = d1(&u.transform(&g), &v.transform(&g)).unwrap();
        prop_assert!((a - b).abs() <= 1e-8 * a.max(1.0));
    }

    #[test]
    fn backward_differs_from_forward(u in tangent()) {
        let back = u.backward();
        prop_assert!(back.chart_gap(u.forward()) > 1e-9);
        let rev = UnitTangent::new(u.base().clone(), back);
        prop_assert!(rev.backward().chart_gap(u.forward()) < 1e-9);
    }
}
