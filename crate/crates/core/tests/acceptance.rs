//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails.
//!
//! ```text
//! cargo test --release --test acceptance            # all seven
//! cargo test --release --test acceptance -- 1 3 7   # a subset
//! ```

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::*;
use ndarray::Array2;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use ttrl::aprg::{
    actor_loss_and_grad, critic_loss_and_grad, evaluate_policy, run_training, Actor, AprgConfig, Critic,
    EpisodeRecord, Mode, Normalizer, RewardCritic,
};
use ttrl::env::{self, Action, Goal};
use ttrl::harness::{
    calibrate_noise, compare_modes, evaluate_checkpoint, run_experiment, run_search, summarize_seed, ExperimentConfig,
    NoiseProfile, SearchSpace, SeedPaths,
};
use ttrl::neuralnet::{load_checkpoint, save_checkpoint, Activation, MlpNet};
use ttrl::physics::{racket_bounce, BallState, EventKind, PhysicsParams, RacketPose, Vec3};
use ttrl::Error;

const GRAD_TOL: f64 = 1e-5;
const FD_STEP: f64 = 1e-5;
/// Step of the fourth-order stencil used through the critic.
const WIDE_FD_STEP: f64 = 1e-3;
const FD_FLOOR: f64 = 1e-6;

struct Verdict {
    pass: bool,
    detail: String,
}

impl Verdict {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Self {
            pass,
            detail: detail.into(),
        }
    }
}

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Option<Duration>,
    run: fn(&tempfile::TempDir) -> Result<Verdict, Error>,
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn scratch(dir: &tempfile::TempDir, name: &str) -> std::path::PathBuf {
    dir.path().join(name)
}

// ----------------------------------------------------------------- 1 physics

fn physics(_: &tempfile::TempDir) -> Result<Verdict, Error> {
    let drag = PhysicsParams::default();
    let mut r = rng(101);
    let min_order = (0..10)
        .map(|_| self_convergence_order(random_flight_state(&mut r), 0.005, 0.8, &drag))
        .fold(f64::INFINITY, f64::min);

    let vacuum = PhysicsParams::vacuum();
    let parabola_err = (0..10)
        .map(|_| {
            let s = random_flight_state(&mut r);
            let end = integrate_to(s, 1e-3, 1.0, &vacuum);
            (end.position - parabola(s.position, s.velocity, vacuum.gravity, 1.0)).norm()
        })
        .fold(0.0, f64::max);

    let mut elastic_err: f64 = 0.0;
    let mut rotation_err: f64 = 0.0;
    for case in 0..100 {
        let n = random_unit(&mut r);
        let racket_speed = r.random_range(-2.0..2.0);
        let raw = random_unit(&mut r) * r.random_range(0.5..5.0);
        let tangent = raw - n * raw.dot(n);
        let approach = r.random_range(0.1..10.0);
        let vb = tangent + n * (racket_speed - approach);
        let vr = n * racket_speed;
        let pose = RacketPose {
            normal: n,
            velocity: vr,
            position: Vec3::ZERO,
        };
        let out = racket_bounce(vb, &pose)?;
        let expect = tangent + n * (2.0 * racket_speed - (racket_speed - approach));
        elastic_err = elastic_err.max((out - expect).norm());
        if case < 10 {
            for _ in 0..10 {
                let t = rotation_to_z(n, r.random_range(0.0..std::f64::consts::TAU));
                rotation_err = rotation_err.max((out - bounce_in_frame(vb, vr, &t)).norm());
            }
        }
    }
    let pass = min_order >= 3.9 && parabola_err <= 1e-9 && elastic_err <= 1e-12 && rotation_err <= 1e-9;
    Ok(Verdict::new(
        pass,
        format!(
            "RK4 order min {min_order:.3} (>= 3.9); parabola {parabola_err:.1e} m (<= 1e-9); \
             elastic {elastic_err:.1e} m/s (<= 1e-12); rotation {rotation_err:.1e} (<= 1e-9)"
        ),
    ))
}

// --------------------------------------------------------------- 2 gradients

fn backprop_worst(r: &mut ChaCha8Rng) -> Result<(f64, usize), Error> {
    let (mut worst, mut checked): (f64, usize) = (0.0, 0);
    for probe in 0..24 {
        let act = [Activation::Tanh, Activation::Relu, Activation::Linear][probe % 3];
        let sizes = [r.random_range(1..8), r.random_range(2..12), r.random_range(2..12), r.random_range(1..4)];
        let mut net = MlpNet::new(&sizes, &[act, act, Activation::Tanh], r)?;
        for layer in net.layers_mut() {
            layer.bias.mapv_inplace(|_| r.random_range(-0.5..0.5));
        }
        let x: Vec<f64> = (0..sizes[0]).map(|_| r.random_range(-1.0..1.0)).collect();
        let c: Vec<f64> = (0..sizes[3]).map(|_| r.random_range(0.5..2.0)).collect();
        let loss = |y: &[f64]| c.iter().zip(y).map(|(c, y)| 0.5 * c * y * y).sum::<f64>();

        let (y, tape) = net.forward(&x)?;
        let dy = Array2::from_shape_fn((1, y.len()), |(_, k)| c[k] * y[k]);
        let (gx, grads) = net.backward(&tape, dy.view())?;

        let coords: Vec<usize> = (0..net.param_count()).collect();
        let numeric = fd_params(&net, &coords, FD_STEP, CENTRAL_3, |n| {
            let (y, t) = n.forward(&x).unwrap();
            (loss(&y), t.relu_pattern(n))
        });
        let (w, k) = worst_rel(&grads.to_flat(), &coords, &numeric, FD_FLOOR);
        worst = worst.max(w);
        checked += k;

        let pattern = tape.relu_pattern(&net);
        for i in 0..x.len() {
            let mut xp = x.clone();
            xp[i] += FD_STEP;
            let mut xm = x.clone();
            xm[i] -= FD_STEP;
            let (yp, tp) = net.forward(&xp)?;
            let (ym, tm) = net.forward(&xm)?;
            if tp.relu_pattern(&net) != pattern || tm.relu_pattern(&net) != pattern {
                continue;
            }
            let numeric = (loss(&yp) - loss(&ym)) / (2.0 * FD_STEP);
            worst = worst.max(rel_err(gx[[0, i]], numeric, FD_FLOOR));
            checked += 1;
        }
    }
    Ok((worst, checked))
}

fn critic_worst(r: &mut ChaCha8Rng) -> Result<(f64, usize), Error> {
    let env = env::preset("serve")?;
    let norm = Normalizer::from_env(&env);
    let (mut worst, mut checked): (f64, usize) = (0.0, 0);
    for probe in 0..20 {
        let w = r.random_range(6..20);
        let cfg = AprgConfig {
            mode: if probe % 2 == 0 { Mode::Aprg } else { Mode::ScalarCritic },
            hidden: vec![w, w],
            ..AprgConfig::default()
        };
        let mut critic = Critic::new(&cfg, &env, r)?;
        for layer in critic.net.layers_mut() {
            layer.bias.mapv_inplace(|_| r.random_range(-0.3..0.3));
        }
        let recs = random_records(&env, 6, r);
        let batch: Vec<&EpisodeRecord> = recs.iter().collect();
        let (_, grads) = critic_loss_and_grad(&critic, &batch, &norm)?;
        let states = state_rows(&batch, &norm);
        let actions = Array2::from_shape_fn((batch.len(), 3), |(i, j)| batch[i].action.to_normalized()[j]);
        let coords: Vec<usize> = (0..critic.net.param_count()).collect();
        let numeric = fd_params(&critic.net, &coords, WIDE_FD_STEP, CENTRAL_5, |n| {
            let c = Critic {
                net: n.clone(),
                ..critic.clone()
            };
            let (loss, _) = critic_loss_and_grad(&c, &batch, &norm).unwrap();
            let (_, tape) = c.forward(states.view(), actions.view()).unwrap();
            (loss, tape.relu_pattern(n))
        });
        let (w, k) = worst_rel(&grads.to_flat(), &coords, &numeric, FD_FLOOR);
        worst = worst.max(w);
        checked += k;
    }
    Ok((worst, checked))
}

fn actor_worst(r: &mut ChaCha8Rng) -> Result<(f64, usize), Error> {
    let env = env::preset("serve")?;
    let norm = Normalizer::from_env(&env);
    let (mut worst, mut checked): (f64, usize) = (0.0, 0);
    for probe in 0..20 {
        let w = r.random_range(6..20);
        let cfg = AprgConfig {
            mode: if probe % 2 == 0 { Mode::Aprg } else { Mode::ScalarCritic },
            hidden: vec![w, w],
            ..AprgConfig::default()
        };
        let mut actor = Actor::new(&cfg, r)?;
        let mut critic = Critic::new(&cfg, &env, r)?;
        for layer in actor.net.layers_mut().iter_mut().chain(critic.net.layers_mut()) {
            layer.bias.mapv_inplace(|_| r.random_range(-0.3..0.3));
        }
        let recs = random_records(&env, 6, r);
        let batch: Vec<&EpisodeRecord> = recs.iter().collect();
        let (_, grads) = actor_loss_and_grad(&actor, &critic, &batch, &norm)?;
        let states = state_rows(&batch, &norm);
        let inputs = Array2::from_shape_fn((batch.len(), 11), |(i, j)| {
            Actor::inputs(&norm.state(&batch[i].observed_state), &norm.goal(&batch[i].goal))[j]
        });
        let coords: Vec<usize> = (0..actor.net.param_count()).collect();
        let numeric = fd_params(&actor.net, &coords, WIDE_FD_STEP, CENTRAL_5, |n| {
            let (loss, _) = actor_loss_and_grad(&Actor { net: n.clone() }, &critic, &batch, &norm).unwrap();
            let (a, at) = n.forward_batch(inputs.view()).unwrap();
            let (_, ct) = critic.forward(states.view(), a.view()).unwrap();
            let mut pattern = at.relu_pattern(n);
            pattern.extend(ct.relu_pattern(&critic.net));
            (loss, pattern)
        });
        let (w, k) = worst_rel(&grads.to_flat(), &coords, &numeric, FD_FLOOR);
        worst = worst.max(w);
        checked += k;
    }
    Ok((worst, checked))
}

fn gradients(_: &tempfile::TempDir) -> Result<Verdict, Error> {
    let mut r = rng(202);
    let (b, nb) = backprop_worst(&mut r)?;
    let (c, nc) = critic_worst(&mut r)?;
    let (a, na) = actor_worst(&mut r)?;
    let pass = b <= GRAD_TOL && c <= GRAD_TOL && a <= GRAD_TOL && nb > 0 && nc > 0 && na > 0;
    Ok(Verdict::new(
        pass,
        format!(
            "worst relative error: backprop {b:.1e} ({nb} coords, 24 nets), critic loss {c:.1e} ({nc}, 20), \
             actor through critic {a:.1e} ({na}, 20); limit {GRAD_TOL:.0e}"
        ),
    ))
}

// ------------------------------------------------------- 3 reward ambiguity

fn ambiguity(_: &tempfile::TempDir) -> Result<Verdict, Error> {
    let mut cfg = env::preset("serve")?;
    cfg.serve = cfg.serve.degenerate();
    let mut r = rng(303);
    let ball: BallState = env::sample_serve(&mut r, &cfg)?;
    let probe_goal = cfg.goal_for_episode(0);
    let sweep: Vec<(f64, ttrl::env::RewardParams)> = (0..=2000)
        .map(|i| -20.0 + 0.02 * i as f64)
        .filter_map(|alpha| {
            let out = env::step(&ball, Action::new(alpha, 0.0, 1.0), &probe_goal, &cfg, &mut r).ok()?;
            let landed = out.terminal_event == EventKind::TableBounce
                && out.reward_params.achieved_x > cfg.geometry.net_x;
            landed.then_some((alpha, out.reward_params))
        })
        .collect();
    let best = sweep
        .iter()
        .enumerate()
        .flat_map(|(i, a)| sweep[i + 1..].iter().map(move |b| (a, b)))
        .filter(|(a, b)| (a.1.achieved_x - b.1.achieved_x).abs() < 0.01)
        .max_by(|(a, b), (c, d)| (a.1.height - b.1.height).abs().total_cmp(&(c.1.height - d.1.height).abs()));
    let Some((a, b)) = best else {
        return Ok(Verdict::new(false, format!("no pair within 10 mm among {} landing returns", sweep.len())));
    };
    let (low, high) = if a.1.height < b.1.height { (a, b) } else { (b, a) };
    let dx = (low.1.achieved_x - high.1.achieved_x).abs();
    let dh = high.1.height - low.1.height;
    // goal equidistant from both landings, so only the height term differs
    let mid = Goal::new(
        0.5 * (low.1.achieved_x + high.1.achieved_x),
        0.5 * (low.1.achieved_y + high.1.achieved_y),
    );
    let mut prefers = true;
    for goal in [mid, probe_goal] {
        let rl = env::step(&ball, Action::new(low.0, 0.0, 1.0), &goal, &cfg, &mut r)?.reward;
        let rh = env::step(&ball, Action::new(high.0, 0.0, 1.0), &goal, &cfg, &mut r)?.reward;
        prefers &= rl > rh;
    }
    let pass = dx < 0.01 && dh > 0.1 && prefers && cfg.height_weight == 0.07;
    Ok(Verdict::new(
        pass,
        format!(
            "alpha {:.2} vs {:.2} deg: dx {:.1} mm (< 10), dh {:.3} m (> 0.1); height weight {} prefers lower: {prefers}",
            low.0,
            high.0,
            dx * 1e3,
            dh,
            cfg.height_weight
        ),
    ))
}

// ----------------------------------------------------------------- 4 learning

fn learning(dir: &tempfile::TempDir) -> Result<Verdict, Error> {
    let mut cfg = ExperimentConfig::for_scenario("serve")?;
    cfg.output_dir = scratch(dir, "learning/defaults");
    let noise_free = cfg.env.observation_noise.iter().chain(&cfg.env.execution_noise).all(|s| *s == 0.0);
    let shape_ok = cfg.aprg.total_episodes == 200 && cfg.aprg.warmup_episodes == 30 && cfg.seeds.len() == 5;
    let summary = run_experiment(&cfg)?;
    let per_seed: Vec<f64> = summary.seeds.iter().map(|s| s.last_mean * 1e3).collect();
    let median = ttrl::harness::summary::median(&per_seed);
    let improved = summary.seeds.iter().filter(|s| s.improved == Some(true)).count();

    let mut base = cfg.clone();
    base.output_dir = scratch(dir, "learning/search");
    let space = SearchSpace::default();
    let results = run_search(&space, &base)?;
    let best = &results[0];

    let pass = noise_free && shape_ok && median <= 120.0 && improved >= 4 && space.trials == 50 && best.summary.mm.mean <= 60.0;
    Ok(Verdict::new(
        pass,
        format!(
            "defaults: per-seed last-50 {per_seed:.1?} mm, median {median:.1} mm (<= 120), improved on {improved}/5 (>= 4); \
             best of {} trials {:.1} mm (<= 60, trial {})",
            space.trials, best.summary.mm.mean, best.trial
        ),
    ))
}

// ----------------------------------------------------------------- 5 ablation

fn ablation(dir: &tempfile::TempDir) -> Result<Verdict, Error> {
    let mut cfg = ExperimentConfig::for_scenario("serve")?;
    cfg.seeds = (0..10).collect();
    cfg.output_dir = scratch(dir, "ablation");
    let rows = compare_modes(&cfg, &Mode::ALL)?;
    let mean = |m: Mode| rows.iter().find(|r| r.mode == m).map(|r| r.mean * 1e3).unwrap_or(f64::NAN);
    let (a, p, s) = (mean(Mode::Aprg), mean(Mode::Prg), mean(Mode::ScalarCritic));
    Ok(Verdict::new(
        a <= p && a <= s && p <= s,
        format!("mean last-50 over 10 seeds: aprg {a:.1} mm <= prg {p:.1} mm <= scalar {s:.1} mm"),
    ))
}

// -------------------------------------------------------------------- 6 noise

fn noise(_: &tempfile::TempDir) -> Result<Verdict, Error> {
    let base = env::preset("ballmachine-fixed")?;
    let config = AprgConfig::default();
    let cal = calibrate_noise(&base, &NoiseProfile::default(), config.base_action, 0.12, 400, 1234)?;
    let mut ratios = Vec::new();
    for seed in 0..5 {
        let run = run_training(&cal.env, &config, seed, &mut ())?;
        let s = summarize_seed(seed, &run.log, 50, config.warmup_episodes)?;
        ratios.push(s.last_mean / cal.rms);
    }
    let within = ratios.iter().filter(|r| **r <= 2.5).count();
    let calibrated = (cal.rms - 0.12).abs() < 0.005;
    Ok(Verdict::new(
        calibrated && within >= 3,
        format!(
            "noise scale {:.3} gives {:.1} mm scatter; last-50 / floor per seed {ratios:.2?}, {within}/5 within 2.5x (>= 3)",
            cal.scale,
            cal.rms * 1e3
        ),
    ))
}

// ------------------------------------------------------------ 7 determinism

fn determinism(dir: &tempfile::TempDir) -> Result<Verdict, Error> {
    let mut a = ExperimentConfig::for_scenario("serve")?;
    a.seeds = vec![0, 1];
    a.output_dir = scratch(dir, "determinism/a");
    let mut b = a.clone();
    b.output_dir = scratch(dir, "determinism/b");
    run_experiment(&a)?;
    run_experiment(&b)?;
    let mut identical = true;
    for &seed in &a.seeds {
        let (pa, pb) = (SeedPaths::new(&a.output_dir, seed), SeedPaths::new(&b.output_dir, seed));
        let read = |p: &std::path::Path| std::fs::read(p).map_err(|e| Error::Config(e.to_string()));
        identical &= read(&pa.episodes)? == read(&pb.episodes)?;
    }

    let trained = run_training(&a.env, &a.aprg, 0, &mut ())?;
    let bits = |n: &MlpNet| n.params_flat().iter().map(|v| v.to_bits()).collect::<Vec<_>>();
    let ckpt = scratch(dir, "determinism/actor.ckpt");
    save_checkpoint(&trained.actor.net, &ckpt)?;
    let ccrit = scratch(dir, "determinism/critic.ckpt");
    save_checkpoint(&trained.critic.net, &ccrit)?;
    let exact = bits(&load_checkpoint(&ckpt)?) == bits(&trained.actor.net)
        && bits(&load_checkpoint(&ccrit)?) == bits(&trained.critic.net)
        && load_checkpoint(&ckpt)?.activations() == trained.actor.net.activations();

    let recorded = evaluate_policy(&trained.actor, &a.env, 50, 7)?;
    let replayed = evaluate_checkpoint(&ckpt, &a.env, 50, 7)?;
    let max_diff = recorded
        .iter()
        .zip(&replayed)
        .flat_map(|(r, e)| {
            let x = r.action.to_array();
            [(x[0] - e.alpha).abs(), (x[1] - e.beta).abs(), (x[2] - e.racket_vx).abs()]
        })
        .fold(0.0, f64::max);
    let pass = identical && exact && recorded.len() == replayed.len() && max_diff <= 1e-12;
    Ok(Verdict::new(
        pass,
        format!(
            "episode logs byte-identical: {identical}; checkpoints bit-exact: {exact}; \
             evaluate on reloaded actor max action diff {max_diff:.1e} (<= 1e-12)"
        ),
    ))
}

fn main() -> ExitCode {
    let criteria = [
        Criterion {
            id: 1,
            name: "physics correctness",
            limit: Some(Duration::from_secs(5)),
            run: physics,
        },
        Criterion {
            id: 2,
            name: "gradient integrity",
            limit: Some(Duration::from_secs(30)),
            run: gradients,
        },
        Criterion {
            id: 3,
            name: "reward ambiguity",
            limit: Some(Duration::from_secs(5)),
            run: ambiguity,
        },
        Criterion {
            id: 4,
            name: "learning at desk scale",
            limit: Some(Duration::from_secs(600)),
            run: learning,
        },
        Criterion {
            id: 5,
            name: "ablation ordering",
            limit: Some(Duration::from_secs(900)),
            run: ablation,
        },
        Criterion {
            id: 6,
            name: "noise robustness",
            limit: None,
            run: noise,
        },
        Criterion {
            id: 7,
            name: "determinism and round trip",
            limit: None,
            run: determinism,
        },
    ];
    let selected: Vec<u32> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let dir = tempfile::tempdir().expect("scratch directory");
    let mut failed = 0;
    for c in criteria.iter().filter(|c| selected.is_empty() || selected.contains(&c.id)) {
        let start = Instant::now();
        let verdict = (c.run)(&dir).unwrap_or_else(|e| Verdict::new(false, format!("error: {e}")));
        let took = start.elapsed();
        let in_time = c.limit.is_none_or(|l| took <= l);
        let pass = verdict.pass && in_time;
        failed += usize::from(!pass);
        let limit = c.limit.map(|l| format!(", limit {} s", l.as_secs())).unwrap_or_default();
        println!(
            "criterion {} {}: {}: {} [{:.1} s{limit}]",
            c.id,
            if pass { "PASS" } else { "FAIL" },
            c.name,
            verdict.detail,
            took.as_secs_f64()
        );
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criterion(s) failed");
        ExitCode::FAILURE
    }
}
