use rand::Rng;
use rand_distr::StandardNormal;

use super::{Action, EnvConfig, EnvError, Goal, RewardParams};
use crate::physics::{
    racket_bounce, refine_crossing, simulate_traced, simulate_until_event, table_bounce, BallState,
    EventKind, Flight, RacketPose, Vec3,
};

/// Consecutive invalid serves tolerated before giving up.
pub const MAX_SERVE_TRIES: usize = 100;

/// Result of one episode.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Outcome {
    pub reward_params: RewardParams,
    pub reward: f64,
    pub terminal_event: EventKind,
    /// Action after execution noise, i.e. what the racket actually did.
    pub executed_action: Action,
}

/// Draw a serve and fly it to the hitting plane.
///
/// A serve is valid when it reaches the hitting plane after exactly one
/// bounce on the robot half (one bounce on the server's half is allowed
/// before that) without touching the net or floor.
pub fn sample_serve<R: Rng + ?Sized>(rng: &mut R, config: &EnvConfig) -> Result<BallState, EnvError> {
    for _ in 0..MAX_SERVE_TRIES {
        let launch = draw_launch(rng, config);
        if let Some(at_hit) = fly_serve(launch, config)? {
            return Ok(at_hit);
        }
    }
    Err(EnvError::InfeasibleServe {
        tries: MAX_SERVE_TRIES,
    })
}

fn draw_launch<R: Rng + ?Sized>(rng: &mut R, config: &EnvConfig) -> BallState {
    let d = &config.serve;
    let mut draw3 = |iv: &[super::Interval; 3]| {
        Vec3::from_array(std::array::from_fn(|i| {
            let u: f64 = rng.random();
            iv[i].lo + u * iv[i].width()
        }))
    };
    let position = draw3(&d.position);
    let velocity = draw3(&d.velocity);
    let spin = draw3(&d.spin);
    BallState::new(position, velocity, spin)
}

fn fly_serve(launch: BallState, config: &EnvConfig) -> Result<Option<BallState>, EnvError> {
    let geo = config.geometry.with_hit_plane(config.hit_plane_x);
    let mut state = launch;
    let mut robot_bounces = 0;
    let mut server_bounces = 0;
    // at most two bounces plus the crossing
    for _ in 0..4 {
        let ev = simulate_until_event(state, &geo, &config.physics, config.dt, config.max_flight_time)?;
        let s = ev.state_at_event;
        match ev.kind {
            EventKind::TableBounce if s.position.x < geo.net_x => {
                robot_bounces += 1;
                if robot_bounces > 1 {
                    return Ok(None);
                }
                state = table_bounce(s)?;
            }
            EventKind::TableBounce => {
                server_bounces += 1;
                if server_bounces > 1 || robot_bounces > 0 {
                    return Ok(None);
                }
                state = table_bounce(s)?;
            }
            EventKind::HitPlaneCrossing if robot_bounces == 1 => return Ok(Some(s)),
            _ => return Ok(None),
        }
    }
    Ok(None)
}

/// Racket pose realizing `action` for a ball at the hitting plane.
///
/// The face normal starts at +x and is rotated, about the fixed table axes
/// and in this order, by yaw `beta` about z, by pitch `alpha` about y
/// (positive `alpha` lifts the normal towards +z) and by roll
/// `gamma = -0.1 * v_y` degrees about x. The racket moves along +x only.
pub fn racket_pose_from_action(action: Action, ball: &BallState) -> RacketPose {
    let (alpha, beta) = (action.alpha_deg().to_radians(), action.beta_deg().to_radians());
    let gamma = (-0.1 * ball.velocity.y).to_radians();

    // yaw
    let n = Vec3::new(beta.cos(), beta.sin(), 0.0);
    // pitch, sign chosen so that +alpha raises the normal
    let n = Vec3::new(
        alpha.cos() * n.x - alpha.sin() * n.z,
        n.y,
        alpha.sin() * n.x + alpha.cos() * n.z,
    );
    // roll
    let n = Vec3::new(
        n.x,
        gamma.cos() * n.y - gamma.sin() * n.z,
        gamma.sin() * n.y + gamma.cos() * n.z,
    );

    RacketPose {
        normal: n,
        velocity: Vec3::new(action.racket_vx(), 0.0, 0.0),
        position: ball.position,
    }
}

/// `-|g_d - g_a| - height_weight * h`, Euclidean distance in the table plane.
pub fn reward_from_params(params: &RewardParams, goal: &Goal, height_weight: f64) -> f64 {
    -goal_error(params, goal) - height_weight * params.height
}

/// Planar distance between the achieved and desired landing points, m.
pub fn goal_error(params: &RewardParams, goal: &Goal) -> f64 {
    (goal.x - params.achieved_x).hypot(goal.y - params.achieved_y)
}

/// Add observation noise to the true hitting state.
pub fn observe<R: Rng + ?Sized>(ball_at_hit: &BallState, config: &EnvConfig, rng: &mut R) -> BallState {
    let mut a = ball_at_hit.to_array();
    for (x, std) in a.iter_mut().zip(config.observation_noise) {
        let z: f64 = rng.sample(StandardNormal);
        *x += std * z;
    }
    BallState::from_array(a, ball_at_hit.time)
}

/// Play one episode from the true hitting state.
pub fn step<R: Rng + ?Sized>(
    ball_at_hit: &BallState,
    action: Action,
    goal: &Goal,
    config: &EnvConfig,
    rng: &mut R,
) -> Result<Outcome, EnvError> {
    let mut a = action.to_array();
    for (x, std) in a.iter_mut().zip(config.execution_noise) {
        let z: f64 = rng.sample(StandardNormal);
        *x += std * z;
    }
    let executed = Action::from_array(a);

    let racket = racket_pose_from_action(executed, ball_at_hit);
    let mut after_hit = *ball_at_hit;
    after_hit.velocity = racket_bounce(ball_at_hit.velocity, &racket)?;

    let mut geo = config.geometry;
    geo.hit_plane_x = None;
    let flight = simulate_traced(after_hit, &geo, &config.physics, config.dt, config.max_flight_time)?;

    let reward_params = reward_params_from_flight(&flight, config);
    Ok(Outcome {
        reward_params,
        reward: reward_from_params(&reward_params, goal, config.height_weight),
        terminal_event: flight.event.kind,
        executed_action: executed,
    })
}

fn reward_params_from_flight(flight: &Flight, config: &EnvConfig) -> RewardParams {
    let start = flight.samples[0].position;
    let end = flight.event.state_at_event;
    let (ax, ay) = match flight.event.kind {
        EventKind::TableBounce | EventKind::NetContact => (end.position.x, end.position.y),
        EventKind::FloorContact | EventKind::HitPlaneCrossing => {
            match table_plane_crossing(flight, config) {
                Some(p) if p.x >= start.x => (p.x, p.y),
                _ => (start.x, start.y),
            }
        }
        EventKind::Timeout => (start.x, start.y),
    };
    let height = height_at_x(&flight.samples, 0.5 * (start.x + ax)).max(0.0);
    RewardParams {
        achieved_x: ax,
        achieved_y: ay,
        height,
    }
}

/// Where the flight first passes downward through `z = 0`.
fn table_plane_crossing(flight: &Flight, config: &EnvConfig) -> Option<Vec3> {
    flight.samples.windows(2).find_map(|w| {
        let (s0, s1) = (w[0], w[1]);
        (s0.position.z > 0.0 && s1.position.z <= 0.0).then(|| {
            refine_crossing(s0, s1.time - s0.time, &config.physics, |b| b.position.z).position
        })
    })
}

/// Height where the flight first reaches `x`, interpolated linearly between
/// samples; the last height if it never gets there.
fn height_at_x(samples: &[BallState], x: f64) -> f64 {
    for w in samples.windows(2) {
        let (p0, p1) = (w[0].position, w[1].position);
        if p0.x <= x && x <= p1.x {
            let dx = p1.x - p0.x;
            let t = if dx > 0.0 { (x - p0.x) / dx } else { 0.0 };
            return p0.z + t * (p1.z - p0.z);
        }
    }
    samples.last().map_or(0.0, |s| s.position.z)
}
