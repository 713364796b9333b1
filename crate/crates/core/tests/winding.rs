use horoflow::horocycle::{
    key_proposition_check, linspace, make_parabolic, tangent_horocycle, translation_length, wind, winding_time,
    EuclideanHorocycle, Horocycle, OrientedPair, TangencyData,
};
use horoflow::sampling::{random_tangency, rng};
use horoflow::{busemann, hyp_distance, BoundaryPoint, Isometry, Point, UnitTangent};
use proptest::prelude::*;

fn pt(x: f64, y: f64) -> Point<f64> {
    Point::from_f64(x, y).unwrap()
}

fn isometry() -> impl Strategy<Value = Isometry<f64>> {
    (-2.0..2.0f64, -2.0..2.0f64, -2.0..2.0f64, -2.0..2.0f64)
        .prop_filter("det > 0.2", |(a, b, c, d)| a * d - b * c > 0.2)
        .prop_map(|(a, b, c, d)| Isometry::from_f64(a, b, c, d).unwrap())
}

fn tangency(seed: u64) -> TangencyData<f64> {
    random_tangency(&mut rng(seed, 11)).unwrap()
}

/// Horocyclic arc length between `x` and `p x`, from the chord.
fn chord_length(td: &TangencyData<f64>) -> f64 {
    let x = td.tangent_point();
    let px = td.pair().parabolic().apply(x);
    2.0 * (hyp_distance(x, &px) / 2.0).sinh()
}

#[test]
fn translation_length_examples() {
    for (height, expected) in [(1.0, 1.0), (2.0, 0.5)] {
        let line = Horocycle::through(BoundaryPoint::Infinity, &pt(0.0, height)).unwrap();
        let pair = OrientedPair::new(line, Isometry::translation(1.0)).unwrap();
        assert!((translation_length(&pair) - expected).abs() < 1e-15);
    }
}

#[test]
fn tangent_horocycle_at_one() {
    let h = tangent_horocycle(&UnitTangent::vertical(), &BoundaryPoint::Finite(1.0)).unwrap();
    match h.euclidean() {
        EuclideanHorocycle::Circle { foot, diameter } => {
            assert!((foot - 1.0).abs() < 1e-15);
            assert!((diameter - 2.0).abs() < 1e-12);
        }
        other => panic!("expected a circle, got {other:?}"),
    }
    assert!(h.residual(&Point::i()).abs() < 1e-12);
}

#[test]
fn tangent_horocycle_at_e_touches_u_of_one() {
    let e = std::f64::consts::E;
    let td = TangencyData::construct(UnitTangent::vertical(), &BoundaryPoint::Finite(e), &0.1).unwrap();
    assert!((td.tangent_time() - 1.0).abs() < 1e-12);
    let (x, y) = td.tangent_point().to_f64();
    assert!(x.abs() < 1e-12 && (y - e).abs() < 1e-12);
}

#[test]
fn make_parabolic_at_infinity_is_a_translation() {
    let u = UnitTangent::new(Point::i(), BoundaryPoint::Finite(1.0));
    let line = Horocycle::through(BoundaryPoint::Infinity, &Point::i()).unwrap();
    let p = make_parabolic(&BoundaryPoint::Infinity, &line, &1.0, &u).unwrap();
    assert!(p.projective_eq(&Isometry::translation(1.0), 1e-12));
}

#[test]
fn make_parabolic_at_zero_is_a_conjugated_translation() {
    // z ↦ -1/z carries the line Im z = 1 to the circle of diameter 1 at 0
    let m = Isometry::<f64>::from_f64(0.0, -1.0, 1.0, 0.0).unwrap();
    let line = Horocycle::through(BoundaryPoint::Infinity, &Point::i()).unwrap();
    let circle = line.transform(&m).unwrap();
    match circle.euclidean() {
        EuclideanHorocycle::Circle { foot, diameter } => {
            assert!(foot.abs() < 1e-15 && (diameter - 1.0).abs() < 1e-12);
        }
        other => panic!("expected a circle, got {other:?}"),
    }
    let u = UnitTangent::new(Point::i(), BoundaryPoint::Finite(1.0)).transform(&m);
    for ell in [0.05, 0.3, 1.7] {
        let p = make_parabolic(&BoundaryPoint::Finite(0.0), &circle, &ell, &u).unwrap();
        let expected = m.compose(&Isometry::translation(ell)).compose(&m.inverse());
        assert!(p.projective_eq(&expected, 1e-12));
        let pair = OrientedPair::new(circle.clone(), p).unwrap();
        assert!((translation_length(&pair) - ell).abs() < 1e-12);
    }
}

#[test]
fn wind_in_the_normalized_picture() {
    // the geodesic from i to 2 is the circle of radius 5/4 about 3/4
    let u = UnitTangent::new(Point::i(), BoundaryPoint::Finite(2.0));
    let ell = 0.2;
    let td = TangencyData::construct(u.clone(), &BoundaryPoint::Infinity, &ell).unwrap();
    let (qx, qy) = td.tangent_point().to_f64();
    assert!((qx - 0.75).abs() < 1e-12 && (qy - 1.25).abs() < 1e-12);
    let w = wind(&td);
    assert_eq!(w.base(), u.base());
    assert!((w.forward().to_f64() - (2.0 + ell * 1.25)).abs() < 1e-12);
    let back = td.pair().parabolic().inverse().apply_boundary(w.forward());
    assert!((back.to_f64() - 2.0).abs() < 1e-12);
}

#[test]
fn winding_time_matches_the_busemann_limit() {
    let u = UnitTangent::new(Point::i(), BoundaryPoint::Finite(2.0));
    let td = TangencyData::construct(u, &BoundaryPoint::Infinity, &0.4).unwrap();
    let tau = winding_time(&td);
    // descend the vertical geodesic ending at u(+∞) = 2
    let c = pt(2.0, (-30f64).exp());
    let back = td.pair().parabolic().inverse().apply(&Point::i());
    let limit = hyp_distance(&back, &c) - hyp_distance(&Point::i(), &c);
    assert!((tau - limit).abs() < 1e-9, "{tau} vs {limit}");
    assert!(tau.abs() <= 0.4);
}

#[test]
fn winding_time_vanishes_with_the_length() {
    let u = UnitTangent::new(pt(0.2, 0.7), BoundaryPoint::Finite(-1.5));
    let xi = BoundaryPoint::Finite(3.0);
    let mut prev = f64::INFINITY;
    for k in 1..8 {
        let ell = 10f64.powi(-k);
        let td = TangencyData::construct(u.clone(), &xi, &ell).unwrap();
        let tau = winding_time(&td).abs();
        assert!(tau <= ell + 1e-12);
        assert!(tau < prev);
        prev = tau;
    }
}

#[test]
fn reversing_the_vector_inverts_the_parabolic() {
    for seed in 0..20 {
        let td = tangency(seed);
        let at_q = td.vector().flow(td.tangent_time()).unwrap();
        let reversed = UnitTangent::new(at_q.base().clone(), at_q.backward());
        let h = td.pair().horocycle();
        let ell = translation_length(td.pair());
        let p = make_parabolic(h.center(), h, &ell, &at_q).unwrap();
        let q = make_parabolic(h.center(), h, &ell, &reversed).unwrap();
        assert!(p.projective_eq(td.pair().parabolic(), 1e-9));
        assert!(q.projective_eq(&p.inverse(), 1e-9));
    }
}

#[test]
fn key_proposition_on_seeded_configurations() {
    let grid = linspace(0.0, 20.0, 200);
    for seed in 0..25 {
        let td = tangency(seed);
        let rep = key_proposition_check(&td, &grid).unwrap();
        assert!(
            rep.all_bounds_hold(1e-9),
            "seed {seed}: max {} vs ℓ {}",
            rep.max_min(),
            rep.ell
        );
        assert!(rep.estimates.radius_gap_ok() && rep.estimates.center_gap_ok());
        assert!(rep.estimates.apex_ok(rep.ell));
    }
}

#[test]
fn key_proposition_shrinks_with_the_length() {
    let grid = linspace(0.0, 20.0, 200);
    let u = UnitTangent::new(pt(-0.4, 1.3), BoundaryPoint::Finite(2.5));
    let xi = BoundaryPoint::Finite(-4.0);
    let sup = |ell: f64| {
        let td = TangencyData::construct(u.clone(), &xi, &ell).unwrap();
        key_proposition_check(&td, &grid).unwrap().max_min()
    };
    let (a, b, c) = (sup(1e-1), sup(1e-3), sup(1e-5));
    assert!(a <= 1.2 && b <= 1.2e-2 && c <= 1.2e-4);
    assert!(c < b && b < a);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn tangency_time_in_the_normalized_picture(t in 0.0..8.0f64) {
        let xi = BoundaryPoint::Finite(t.exp());
        let h = tangent_horocycle(&UnitTangent::vertical(), &xi).unwrap();
        let td = TangencyData::construct(UnitTangent::vertical(), &xi, &0.1).unwrap();
        prop_assert!((td.tangent_time() - t).abs() < 1e-9);
        prop_assert!(h.residual(&pt(0.0, t.exp())).abs() < 1e-9);
    }

    #[test]
    fn horocycles_round_trip_through_euclidean_data(c in -5.0..5.0f64, s in -3.0..3.0f64, at_inf: bool) {
        let center = if at_inf { BoundaryPoint::Infinity } else { BoundaryPoint::Finite(c) };
        let h = Horocycle::new(center, s).unwrap();
        let back = Horocycle::from_euclidean(&h.euclidean()).unwrap();
        prop_assert!((back.level() - s).abs() <= 1e-9 * s.abs().max(1.0));
    }

    #[test]
    fn pairs_are_consistent(seed in any::<u64>()) {
        let td = tangency(seed);
        let pair = td.pair();
        let h = pair.horocycle();
        let q = td.tangent_point();
        prop_assert!(h.residual(q).abs() < 1e-9);
        prop_assert!(h.residual(&pair.parabolic().apply(q)).abs() < 1e-9);
        let fixed = pair.parabolic().apply_boundary(h.center());
        prop_assert!(fixed.chart_gap(h.center()) < 1e-9);
        // the ray touches the horocycle at one point: every other point is outside
        for s in [-1.0, -0.1, 0.1, 1.0] {
            let z = td.vector().at(&(td.tangent_time() + s)).unwrap();
            prop_assert!(h.level_at(&z) < *h.level());
        }
    }

    #[test]
    fn translation_length_matches_the_chord(seed in any::<u64>(), g in isometry()) {
        let td = tangency(seed);
        let ell = translation_length(td.pair());
        prop_assert!((chord_length(&td) - ell).abs() <= 1e-9 * ell.max(1.0));
        let moved = td.pair().transform(&g).unwrap();
        prop_assert!((translation_length(&moved) - ell).abs() <= 1e-8 * ell.max(1.0));
    }

    #[test]
    fn tangent_horocycle_is_equivariant(seed in any::<u64>(), g in isometry()) {
        let td = tangency(seed);
        let xi = td.pair().horocycle().center().clone();
        let h = tangent_horocycle(&td.vector().transform(&g), &g.apply_boundary(&xi)).unwrap();
        let image = td.pair().horocycle().transform(&g).unwrap();
        prop_assert!(h.residual(&image.apex()).abs() < 1e-8);
    }

    #[test]
    fn winding_time_is_bounded_by_the_length(seed in any::<u64>()) {
        let td = tangency(seed);
        let tau = winding_time(&td);
        let ell = translation_length(td.pair());
        prop_assert!(tau.abs() <= ell + 1e-9, "τ {tau} ℓ {ell}");
        let u = td.vector();
        let direct = busemann(u.forward(), &td.pair().parabolic().inverse().apply(u.base()), u.base());
        prop_assert_eq!(tau, direct);
    }

    #[test]
    fn wind_keeps_the_base(seed in any::<u64>()) {
        let td = tangency(seed);
        let w = wind(&td);
        prop_assert_eq!(w.base(), td.vector().base());
        let back = td.pair().parabolic().inverse().apply_boundary(w.forward());
        prop_assert!(back.chart_gap(td.vector().forward()) < 1e-9);
    }
}
