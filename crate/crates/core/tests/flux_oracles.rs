//! Flux models and eigensystems against finite-difference Jacobians and
//! brute-force scans.

use adaptive_weno::cases::make_case;
use adaptive_weno::flux::{
    eigensystem, from_characteristic, global_alpha, lf_split, to_characteristic, Axis,
    ConservedState, FluxModel,
};
use adaptive_weno::CaseOverrides;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const EULER1: FluxModel = FluxModel::Euler1d { gamma: 1.4 };
const EULER2: FluxModel = FluxModel::Euler2d { gamma: 1.4 };

fn random_state(model: &FluxModel, rng: &mut impl Rng) -> ConservedState {
    let rho = rng.gen_range(0.2..5.0);
    let p = rng.gen_range(0.2..10.0);
    let mut prim = vec![rho];
    prim.extend((0..model.num_vars() - 2).map(|_| rng.gen_range(-3.0..3.0)));
    prim.push(p);
    model.from_primitive(&prim)
}

/// Central-difference Jacobian of the physical flux.
fn fd_jacobian(model: &FluxModel, u: &[f64], axis: Axis) -> Vec<Vec<f64>> {
    let m = u.len();
    let mut jac = vec![vec![0.0; m]; m];
    for j in 0..m {
        let h = 1e-6 * u[j].abs().max(1.0);
        let (mut up, mut dn) = (u.to_vec(), u.to_vec());
        up[j] += h;
        dn[j] -= h;
        let (fp, fm) = (model.physical_flux(&up, axis).unwrap(), model.physical_flux(&dn, axis).unwrap());
        for i in 0..m {
            jac[i][j] = (fp[i] - fm[i]) / (up[j] - dn[j]);
        }
    }
    jac
}

fn check_eigensystem(model: &FluxModel, u: &[f64], axis: Axis) {
    let es = eigensystem(model, u, u, axis).unwrap();
    let m = es.m;
    let jac = fd_jacobian(model, u, axis);
    for i in 0..m {
        for j in 0..m {
            let rdl: f64 = (0..m).map(|k| es.right[i][k] * es.eigenvalues[k] * es.left[k][j]).sum();
            assert!((rdl - jac[i][j]).abs() < 1e-6, "{u:?} {axis:?} J[{i}][{j}]: {rdl} vs {}", jac[i][j]);
            let lr: f64 = (0..m).map(|k| es.left[i][k] * es.right[k][j]).sum();
            let id = if i == j { 1.0 } else { 0.0 };
            assert!((lr - id).abs() < 1e-12, "L R [{i}][{j}] = {lr}");
        }
    }
    let speeds = model.wave_speeds(u, axis).unwrap();
    for k in 0..m {
        assert!((es.eigenvalues[k] - speeds[k]).abs() < 1e-12);
    }
}

#[test]
fn euler_eigensystems_match_finite_difference_jacobians() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for _ in 0..200 {
        let u = random_state(&EULER1, &mut rng);
        check_eigensystem(&EULER1, &u, Axis::X);
        let u = random_state(&EULER2, &mut rng);
        check_eigensystem(&EULER2, &u, Axis::X);
        check_eigensystem(&EULER2, &u, Axis::Y);
    }
}

#[test]
fn interface_eigensystem_uses_the_mean_state() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..50 {
        let (a, b) = (random_state(&EULER2, &mut rng), random_state(&EULER2, &mut rng));
        let mean: Vec<f64> = a.iter().zip(b.iter()).map(|(x, y)| 0.5 * (x + y)).collect();
        for axis in [Axis::X, Axis::Y] {
            assert_eq!(
                eigensystem(&EULER2, &a, &b, axis).unwrap(),
                eigensystem(&EULER2, &mean, &mean, axis).unwrap()
            );
        }
    }
}

#[test]
fn characteristic_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..500 {
        let (a, b) = (random_state(&EULER2, &mut rng), random_state(&EULER2, &mut rng));
        let axis = if rng.gen_bool(0.5) { Axis::X } else { Axis::Y };
        let es = eigensystem(&EULER2, &a, &b, axis).unwrap();
        let v: Vec<f64> = (0..4).map(|_| rng.gen_range(-10.0..10.0)).collect();
        let back = from_characteristic(&es, &to_characteristic(&es, &v));
        for (x, y) in v.iter().zip(back.iter()) {
            assert!((x - y).abs() < 1e-12 * 10.0, "{v:?} -> {back:?}");
        }
    }
}

#[test]
fn right_eigenvectors_project_to_unit_vectors_at_rest() {
    let u = EULER1.from_primitive(&[1.0, 0.0, 1.0]);
    let es = eigensystem(&EULER1, &u, &u, Axis::X).unwrap();
    let c = 1.4f64.sqrt();
    assert!((es.eigenvalues[0] + c).abs() < 1e-15 && es.eigenvalues[1].abs() < 1e-15);
    for k in 0..3 {
        let column: Vec<f64> = (0..3).map(|i| es.right[i][k]).collect();
        let w = to_characteristic(&es, &column);
        for (i, x) in w.iter().enumerate() {
            let want = if i == k { 1.0 } else { 0.0 };
            assert!((x - want).abs() < 1e-12);
        }
    }
}

#[test]
fn sod_alpha_matches_brute_force_scan() {
    let case = make_case("sod", &CaseOverrides::default()).unwrap();
    let field = case.initial_field();
    let states: Vec<&[f64]> = field.interior().map(|(_, _, u)| u).collect();
    let alpha = global_alpha(&case.model, states.iter().copied(), Axis::X).unwrap();
    let mut brute = [0.0_f64; 3];
    for u in &states {
        let (rho, vel) = (u[0], u[1] / u[0]);
        let p = 0.4 * (u[2] - 0.5 * rho * vel * vel);
        let c = (1.4 * p / rho).sqrt();
        for (b, l) in brute.iter_mut().zip([vel - c, vel, vel + c]) {
            *b = b.max(l.abs());
        }
    }
    for (a, b) in alpha.values().iter().zip(brute) {
        assert!((a - b).abs() <= 1e-14, "{a} vs {b}");
    }
}

#[test]
fn scalar_alphas() {
    let states = [[-1.0], [0.5], [3.0]];
    let it = || states.iter().map(|s| s.as_slice());
    assert_eq!(global_alpha(&FluxModel::Burgers, it(), Axis::X).unwrap().values(), &[3.0]);
    let adv = FluxModel::Advection { speed: -2.0 };
    assert_eq!(global_alpha(&adv, it(), Axis::X).unwrap().values(), &[2.0]);
    assert!(global_alpha(&adv, std::iter::empty(), Axis::X).is_err());
}

#[test]
fn burgers_split_is_monotone() {
    // d f+/du >= 0 and d f-/du <= 0 for alpha >= max |u|, by finite differences
    let alpha = 1.0;
    let h = 1e-6;
    for i in 0..100 {
        let u = -1.0 + 2.0 * (i as f64 + 0.5) / 100.0;
        let split = |v: f64| lf_split(0.5 * v * v, v, alpha);
        let ((pp, mp), (pm, mm)) = (split(u + h), split(u - h));
        assert!((pp - pm) / (2.0 * h) >= -1e-9, "u = {u}");
        assert!((mp - mm) / (2.0 * h) <= 1e-9, "u = {u}");
    }
}

proptest! {
    #[test]
    fn split_parts_sum_to_flux(f in -1e6f64..1e6, q in -1e6f64..1e6, a in 0.0f64..1e3) {
        let (p, m) = lf_split(f, q, a);
        let sum = p + m;
        prop_assert!((sum - f).abs() <= f64::EPSILON * f.abs().max(a * q.abs()), "{sum} vs {f}");
    }

    #[test]
    fn primitive_round_trip(
        rho in 1e-3f64..1e3,
        u in -50.0f64..50.0,
        v in -50.0f64..50.0,
        p in 1e-3f64..1e3,
    ) {
        let prim = [rho, u, v, p];
        let back = EULER2.to_primitive(&EULER2.from_primitive(&prim));
        let scale = [rho, u.abs().max(1.0), v.abs().max(1.0), p];
        for k in 0..4 {
            // pressure comes out of a difference of energies
            let tol = if k == 3 { 1e-13 * (1.0 + rho * (u * u + v * v) / p) } else { 1e-13 };
            prop_assert!((back[k] - prim[k]).abs() <= tol * scale[k], "{prim:?} -> {back:?}");
        }
    }
}
