//! Independent reference computations shared by the integration tests.
#![allow(dead_code)]

use ndarray::Array2;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use ttrl::aprg::{EpisodeRecord, Normalizer};
use ttrl::env::{self, Action, EnvConfig, Goal, RewardParams, ACTION_HIGH, ACTION_LOW};
use ttrl::neuralnet::MlpNet;
use ttrl::physics::{BallState, PhysicsParams, Vec3};

pub type Mat3 = [[f64; 3]; 3];

pub fn mat_vec(m: &Mat3, v: Vec3) -> Vec3 {
    let a = v.to_array();
    Vec3::from_array(std::array::from_fn(|i| (0..3).map(|j| m[i][j] * a[j]).sum()))
}

pub fn mat_t_vec(m: &Mat3, v: Vec3) -> Vec3 {
    let a = v.to_array();
    Vec3::from_array(std::array::from_fn(|i| (0..3).map(|j| m[j][i] * a[j]).sum()))
}

/// A proper rotation `T` with `T n = e_z`; `phi` spins the frame about `n`.
pub fn rotation_to_z(n: Vec3, phi: f64) -> Mat3 {
    let n = n.normalized().expect("non-zero normal");
    let helper = if n.x.abs() < 0.9 { Vec3::X } else { Vec3::Y };
    let a = helper.cross(n).normalized().unwrap();
    let b = n.cross(a);
    let e1 = a * phi.cos() + b * phi.sin();
    let e2 = n.cross(e1);
    [e1.to_array(), e2.to_array(), n.to_array()]
}

/// Racket reflection done in a frame whose z axis is the racket normal:
/// `(T v_b)'_z = 2 (T v_r)_z - (T v_b)_z`, other components unchanged.
pub fn bounce_in_frame(v_ball: Vec3, v_racket: Vec3, t: &Mat3) -> Vec3 {
    let mut b = mat_vec(t, v_ball);
    let r = mat_vec(t, v_racket);
    b.z = 2.0 * r.z - b.z;
    mat_t_vec(t, b)
}

/// Position under gravity alone.
pub fn parabola(p0: Vec3, v0: Vec3, g: f64, t: f64) -> Vec3 {
    p0 + v0 * t - Vec3::new(0.0, 0.0, 0.5 * g * t * t)
}

pub fn random_unit<R: Rng>(rng: &mut R) -> Vec3 {
    loop {
        let v = Vec3::new(
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
        );
        if let Some(u) = v.normalized().filter(|_| v.norm() > 0.1 && v.norm() <= 1.0) {
            return u;
        }
    }
}

/// Plausible in-flight ball state with drag and spin.
pub fn random_flight_state<R: Rng>(rng: &mut R) -> BallState {
    BallState::new(
        Vec3::new(rng.random_range(0.5..2.5), rng.random_range(-0.5..0.5), rng.random_range(0.1..0.5)),
        Vec3::new(rng.random_range(-6.0..6.0), rng.random_range(-1.0..1.0), rng.random_range(-2.0..3.0)),
        Vec3::new(rng.random_range(-50.0..50.0), rng.random_range(-150.0..150.0), rng.random_range(-50.0..50.0)),
    )
}

/// Integrate with fixed steps `dt` up to time `t_end` (must be a multiple).
pub fn integrate_to(state: BallState, dt: f64, t_end: f64, params: &PhysicsParams) -> BallState {
    let steps = (t_end / dt).round() as usize;
    (0..steps).fold(state, |s, _| ttrl::physics::rk4_step(s, dt, params))
}

fn distance9(a: &BallState, b: &BallState) -> f64 {
    (a.position - b.position).norm().hypot((a.velocity - b.velocity).norm())
}

/// Observed convergence order from solutions at steps `4h`, `2h` and `h`.
pub fn self_convergence_order(state: BallState, h: f64, t_end: f64, params: &PhysicsParams) -> f64 {
    let coarse = integrate_to(state, 4.0 * h, t_end, params);
    let mid = integrate_to(state, 2.0 * h, t_end, params);
    let fine = integrate_to(state, h, t_end, params);
    (distance9(&coarse, &mid) / distance9(&mid, &fine)).log2()
}

/// Central difference of a scalar function of a vector, per coordinate.
pub fn central_gradient<F: Fn(&[f64]) -> f64>(f: F, x: &[f64], h: f64) -> Vec<f64> {
    let mut p = x.to_vec();
    (0..x.len())
        .map(|i| {
            let orig = p[i];
            p[i] = orig + h;
            let up = f(&p);
            p[i] = orig - h;
            let down = f(&p);
            p[i] = orig;
            (up - down) / (2.0 * h)
        })
        .collect()
}

/// `|a - b| / max(|a|, |b|, floor)`.
pub fn rel_err(a: f64, b: f64, floor: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(floor)
}

/// Records with real serves, random actions and random but consistent rewards.
pub fn random_records(env: &EnvConfig, n: usize, r: &mut ChaCha8Rng) -> Vec<EpisodeRecord> {
    let [gx, gy] = env.goal_box();
    (0..n)
        .map(|_| {
            let ball = env::sample_serve(r, env).unwrap();
            let goal = Goal::new(r.random_range(gx.lo..=gx.hi), r.random_range(gy.lo..=gy.hi));
            let action = Action::from_array(std::array::from_fn(|i| r.random_range(ACTION_LOW[i]..ACTION_HIGH[i])));
            let reward_params = RewardParams::from_array([
                r.random_range(gx.lo..=gx.hi),
                r.random_range(gy.lo..=gy.hi),
                r.random_range(0.0..0.5),
            ]);
            EpisodeRecord {
                observed_state: ball.to_array(),
                goal,
                action,
                reward_params,
                reward: env::reward_from_params(&reward_params, &goal, env.height_weight),
            }
        })
        .collect()
}

/// Central difference weights: second order `[(offset, weight)]`, divide by `h`.
pub const CENTRAL_3: &[(f64, f64)] = &[(1.0, 0.5), (-1.0, -0.5)];
/// Fourth-order central stencil.
pub const CENTRAL_5: &[(f64, f64)] = &[(2.0, -1.0 / 12.0), (1.0, 8.0 / 12.0), (-1.0, -8.0 / 12.0), (-2.0, 1.0 / 12.0)];

/// Central differences over a network's parameters. Coordinates where any
/// stencil point changes the ReLU pattern reported by `eval` are `None`.
pub fn fd_params<F>(net: &MlpNet, coords: &[usize], h: f64, stencil: &[(f64, f64)], eval: F) -> Vec<Option<f64>>
where
    F: Fn(&MlpNet) -> (f64, Vec<bool>),
{
    let base = net.params_flat();
    let (_, pattern) = eval(net);
    coords
        .iter()
        .map(|&k| {
            let mut sum = 0.0;
            for &(offset, weight) in stencil {
                let mut p = base.clone();
                p[k] = base[k] + offset * h;
                let mut moved = net.clone();
                moved.set_params_flat(&p).unwrap();
                let (loss, pat) = eval(&moved);
                if pat != pattern {
                    return None;
                }
                sum += weight * loss;
            }
            Some(sum / h)
        })
        .collect()
}

pub fn worst_rel(analytic: &[f64], coords: &[usize], numeric: &[Option<f64>], floor: f64) -> (f64, usize) {
    let mut worst: f64 = 0.0;
    let mut checked = 0;
    for (&k, n) in coords.iter().zip(numeric) {
        if let Some(n) = n {
            worst = worst.max(rel_err(analytic[k], *n, floor));
            checked += 1;
        }
    }
    (worst, checked)
}

pub fn state_rows(batch: &[&EpisodeRecord], norm: &Normalizer) -> Array2<f64> {
    Array2::from_shape_fn((batch.len(), 9), |(i, j)| norm.state(&batch[i].observed_state)[j])
}
