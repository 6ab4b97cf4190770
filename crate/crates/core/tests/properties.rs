//! Property tests for the coordinate maps, the family and the discriminants.

use nalgebra::Matrix4;
use proptest::prelude::*;
use semitoric_core::geometry::{
    ambient_to_chart, ambient_to_cyl, angle_distance, chart_to_ambient, cyl_to_ambient,
    omega_chart, omega_inverse_chart,
};
use semitoric_core::{
    discriminant, momentum_map, s_to_t, ChartPoint, CylPoint, SWeights, Sign, SystemParams,
};

fn sign() -> impl Strategy<Value = Sign> {
    prop_oneof![Just(Sign::Plus), Just(Sign::Minus)]
}

fn disk() -> impl Strategy<Value = (f64, f64)> {
    (0.0..0.95f64, 0.0..std::f64::consts::TAU).prop_map(|(r2, phi)| {
        let r = r2.sqrt();
        (r * phi.cos(), r * phi.sin())
    })
}

fn chart_point() -> impl Strategy<Value = ChartPoint> {
    (sign(), sign(), disk(), disk())
        .prop_map(|(e1, e2, (x1, y1), (x2, y2))| ChartPoint::new(e1, e2, x1, y1, x2, y2).unwrap())
}

fn params() -> impl Strategy<Value = SystemParams> {
    (
        0.5..1.5f64,
        0.1..2.0f64,
        prop::array::uniform4(-1.0..1.0f64),
    )
        .prop_map(|(r1, d, t)| {
            SystemParams::from_reals(r1, r1 + d, t[0], t[1], t[2], t[3]).unwrap()
        })
}

proptest! {
    #[test]
    fn chart_round_trip(p in chart_point()) {
        let q = chart_to_ambient(&p);
        prop_assert!(q.sphere_residual() <= 1e-12);
        let back = ambient_to_chart(&q).unwrap();
        prop_assert_eq!(back.e1(), p.e1());
        prop_assert_eq!(back.e2(), p.e2());
        for (a, b) in back.coords().iter().zip(p.coords()) {
            prop_assert!((a - b).abs() <= 1e-15);
        }
    }

    #[test]
    fn cylinder_round_trip(t1 in 0.0..std::f64::consts::TAU, z1 in -0.99..0.99f64, t2 in 0.0..std::f64::consts::TAU, z2 in -0.99..0.99f64) {
        let c = CylPoint::new(t1, z1, t2, z2).unwrap();
        let back = ambient_to_cyl(&cyl_to_ambient(&c)).unwrap();
        prop_assert!(angle_distance(back.theta1(), c.theta1()) < 1e-12);
        prop_assert!(angle_distance(back.theta2(), c.theta2()) < 1e-12);
        prop_assert!((back.z1() - z1).abs() < 1e-15 && (back.z2() - z2).abs() < 1e-15);
    }

    #[test]
    fn omega_inverse_inverts(p in chart_point(), r1 in 0.5..1.5f64, d in 0.1..2.0f64) {
        let prod = omega_chart(&p, r1, r1 + d) * omega_inverse_chart(&p, r1, r1 + d);
        prop_assert!((prod - Matrix4::identity()).amax() < 1e-14);
    }

    #[test]
    fn j_is_bounded(p in chart_point(), params in params()) {
        let v = momentum_map(&chart_to_ambient(&p), &params);
        prop_assert!(v.j.abs() < params.j_max());
    }

    #[test]
    fn weights_give_bounded_couplings(s1 in 0.0..=1.0f64, s2 in 0.0..=1.0f64) {
        let t = s_to_t(SWeights::new(s1, s2).unwrap());
        prop_assert!((0.0..=1.0).contains(&t.t1));
        prop_assert!((0.0..=1.0).contains(&t.t2));
        prop_assert!((0.0..=1.0).contains(&t.t3));
        prop_assert!(t.t4.abs() <= 1.0);
    }

    #[test]
    fn discriminants_agree_on_the_diagonal(s in 0.0..=1.0f64, r1 in 0.5..1.5f64, d in 0.1..2.0f64) {
        let p = SystemParams::from_weights(r1, r1 + d, SWeights::new(s, s).unwrap()).unwrap();
        let ns = discriminant(&p, Sign::Plus, Sign::Minus);
        let sn = discriminant(&p, Sign::Minus, Sign::Plus);
        prop_assert!((ns - sn).abs() <= 1e-15 * ns.abs().max(1.0));
    }

    #[test]
    fn coupled_angular_momenta_slice(t in 0.0..=1.0f64, p in chart_point()) {
        // s = (t, 0) gives H = (1 − t)z₁ + t⟨u₁, u₂⟩
        let params = SystemParams::from_weights(1.0, 2.0, SWeights::new(t, 0.0).unwrap()).unwrap();
        let q = chart_to_ambient(&p);
        let [x1, y1, z1, x2, y2, z2] = q.coords();
        let want = (1.0 - t) * z1 + t * (x1 * x2 + y1 * y2 + z1 * z2);
        prop_assert!((momentum_map(&q, &params).h - want).abs() < 1e-15);
    }
}
