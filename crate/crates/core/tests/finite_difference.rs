//! Analytic derivatives against central differences with step 1e-5.

mod common;

use common::*;
use nalgebra::{Matrix4, Vector4};
use rand::Rng;
use semitoric_core::geometry::omega_chart;
use semitoric_core::system::{ham_vector_fields, momentum_map_chart};
use semitoric_core::{a_eval, hessian_operators, ChartPoint, Sign, SystemParams};

fn gradient<F: Fn(&ChartPoint) -> f64>(f: F, p: &ChartPoint) -> Vector4<f64> {
    let x = p.coords();
    Vector4::from_fn(|i, _| {
        let mut plus = x;
        let mut minus = x;
        plus[i] += FD_STEP;
        minus[i] -= FD_STEP;
        let fp = f(&p.with_coords(plus).unwrap());
        let fm = f(&p.with_coords(minus).unwrap());
        (fp - fm) / (2.0 * FD_STEP)
    })
}

// Solves ω(X, ·) = −dh, i.e. Ωᵀ X = −∇h for the chart matrix Ω of ω.
fn fd_hamiltonian_field<F: Fn(&ChartPoint) -> f64>(
    f: F,
    p: &ChartPoint,
    params: &SystemParams,
) -> Vector4<f64> {
    let omega = omega_chart(p, params.r1(), params.r2());
    let grad = gradient(f, p);
    omega.transpose().lu().solve(&(-grad)).unwrap()
}

#[test]
fn hamiltonian_vector_fields_match_finite_differences() {
    let mut rng = rng(11);
    let mut worst: f64 = 0.0;
    for _ in 0..200 {
        let params = random_params(&mut rng);
        let p = random_chart_point(&mut rng, 0.8);
        let (xj, xh) = ham_vector_fields(&p, &params);
        let fj = fd_hamiltonian_field(|q| momentum_map_chart(q, &params).j, &p, &params);
        let fh = fd_hamiltonian_field(|q| momentum_map_chart(q, &params).h, &p, &params);
        worst = worst.max((xj - fj).amax()).max((xh - fh).amax());
    }
    assert!(worst <= 1e-6, "worst deviation {worst:e}");
}

// H(x) − H(0) near a pole, written so that every term is computed with
// relative accuracy: z_i − e_i = −e_i r_i²/(1 + √(1 − r_i²)).
fn h_increment(params: &SystemParams, e1: Sign, e2: Sign, x: [f64; 4]) -> f64 {
    let (s1, s2) = (e1.value(), e2.value());
    let r1 = x[0] * x[0] + x[1] * x[1];
    let r2 = x[2] * x[2] + x[3] * x[3];
    let d1 = -s1 * r1 / (1.0 + (1.0 - r1).sqrt());
    let d2 = -s2 * r2 / (1.0 + (1.0 - r2).sqrt());
    let z2 = s2 + d2;
    params.t1() * d1
        + params.t2() * d2
        + params.t3() * (x[0] * x[2] + x[1] * x[3])
        + params.t4() * (d1 * z2 + s1 * d2)
}

fn fd_hessian(params: &SystemParams, e1: Sign, e2: Sign) -> Matrix4<f64> {
    let h = FD_STEP;
    let f = |x: [f64; 4]| h_increment(params, e1, e2, x);
    Matrix4::from_fn(|i, j| {
        let shifted = |a: f64, b: f64| {
            let mut x = [0.0; 4];
            x[i] += a;
            x[j] += b;
            f(x)
        };
        if i == j {
            (shifted(h, 0.0) - 2.0 * f([0.0; 4]) + shifted(-h, 0.0)) / (h * h)
        } else {
            (shifted(h, h) - shifted(h, -h) - shifted(-h, h) + shifted(-h, -h)) / (4.0 * h * h)
        }
    })
}

#[test]
fn hessian_operators_match_finite_differences() {
    let mut rng = rng(12);
    let mut worst: f64 = 0.0;
    for _ in 0..200 {
        let params = random_params(&mut rng);
        let (e1, e2) = (random_sign(&mut rng), random_sign(&mut rng));
        let pair = hessian_operators(e1, e2, &params);
        let omega = omega_chart(&ChartPoint::origin(e1, e2), params.r1(), params.r2());
        let omega_inv = omega.try_inverse().unwrap();
        let ah = omega_inv * fd_hessian(&params, e1, e2);
        worst = worst.max((pair.ah - ah).amax());

        // d²J at the pole is −e_iR_i on each disk
        let dj = Matrix4::from_diagonal(&Vector4::new(
            -e1.value() * params.r1(),
            -e1.value() * params.r1(),
            -e2.value() * params.r2(),
            -e2.value() * params.r2(),
        ));
        assert!((pair.aj - omega_inv * dj).amax() < 1e-14);
    }
    assert!(worst <= 1e-5, "worst deviation {worst:e}");
}

#[test]
fn a_derivatives_match_finite_differences() {
    let mut rng = rng(13);
    let (r1, r2) = (1.0f64, 2.0f64);
    let mut worst: f64 = 0.0;
    for _ in 0..200 {
        let c = rng.random_range(-2.9..2.9);
        let lo = ((c - r2) / r1).max(-1.0);
        let hi = ((c + r2) / r1).min(1.0);
        let zeta = rng.random_range(lo + 1e-3..hi - 1e-3);
        let h = FD_STEP;
        let v = a_eval(zeta, c, r1, r2);
        let (vp, vm) = (a_eval(zeta + h, c, r1, r2), a_eval(zeta - h, c, r1, r2));
        let da = (vp.a - vm.a) / (2.0 * h);
        let dda = (vp.da - vm.da) / (2.0 * h);
        worst = worst.max((v.da - da).abs()).max((v.dda - dda).abs());
    }
    assert!(worst <= 1e-7, "worst deviation {worst:e}");
}
