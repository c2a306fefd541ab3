use super::{rk4_step, BallState, EventKind, PhysicsError, PhysicsParams, TableGeometry, TrajectoryEvent};

/// Bisection iterations used to locate an event inside one step. With a 1 ms
/// step this pins the crossing time far below 1e-12 s.
const BISECTION_ITERS: usize = 60;

/// A simulated flight segment: the integration samples (starting state
/// first, event state last) and the terminating event.
#[derive(Debug, Clone)]
pub struct Flight {
    pub samples: Vec<BallState>,
    pub event: TrajectoryEvent,
}

/// Integrate from `state` until the first event fires.
pub fn simulate_until_event(
    state: BallState,
    geometry: &TableGeometry,
    params: &PhysicsParams,
    dt: f64,
    max_time: f64,
) -> Result<TrajectoryEvent, PhysicsError> {
    run(state, geometry, params, dt, max_time, |_| {})
}

/// Like [`simulate_until_event`] but keeps every integration sample.
pub fn simulate_traced(
    state: BallState,
    geometry: &TableGeometry,
    params: &PhysicsParams,
    dt: f64,
    max_time: f64,
) -> Result<Flight, PhysicsError> {
    let mut samples = vec![state];
    let event = run(state, geometry, params, dt, max_time, |s| samples.push(*s))?;
    samples.push(event.state_at_event);
    Ok(Flight { samples, event })
}

/// Locate the zero of `g` along one RK4 step of length `h` from `state`.
///
/// `g(state)` and `g(rk4_step(state, h))` must have opposite signs (or the
/// latter be zero). Returns the state on the far side of the root.
pub fn refine_crossing<G>(state: BallState, h: f64, params: &PhysicsParams, g: G) -> BallState
where
    G: Fn(&BallState) -> f64,
{
    let g0 = g(&state);
    let mut lo = 0.0;
    let mut hi = h;
    let mut hi_state = rk4_step(state, h, params);
    for _ in 0..BISECTION_ITERS {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let s = rk4_step(state, mid, params);
        if same_side(g0, g(&s)) {
            lo = mid;
        } else {
            hi = mid;
            hi_state = s;
        }
    }
    hi_state
}

fn same_side(a: f64, b: f64) -> bool {
    (a > 0.0 && b > 0.0) || (a < 0.0 && b < 0.0)
}

fn run<F>(
    state: BallState,
    geometry: &TableGeometry,
    params: &PhysicsParams,
    dt: f64,
    max_time: f64,
    mut on_step: F,
) -> Result<TrajectoryEvent, PhysicsError>
where
    F: FnMut(&BallState),
{
    if !(dt > 0.0 && dt.is_finite()) {
        return Err(PhysicsError::InvalidSetting(format!("dt must be positive, got {dt}")));
    }
    if !(max_time > 0.0) {
        return Err(PhysicsError::InvalidSetting(format!(
            "max_time must be positive, got {max_time}"
        )));
    }
    if !state.is_finite() {
        return Err(PhysicsError::Diverged { time: state.time });
    }

    let t_end = state.time + max_time;
    let mut s = state;
    loop {
        let h = dt.min(t_end - s.time);
        if h <= 0.0 {
            return Ok(TrajectoryEvent {
                kind: EventKind::Timeout,
                state_at_event: s,
            });
        }
        let next = rk4_step(s, h, params);
        if !next.is_finite() {
            return Err(PhysicsError::Diverged { time: next.time });
        }
        if let Some(event) = first_event(&s, &next, h, geometry, params) {
            return Ok(event);
        }
        on_step(&next);
        s = next;
    }
}

/// Earliest event between `s` and `next = rk4_step(s, h)`, if any.
fn first_event(
    s: &BallState,
    next: &BallState,
    h: f64,
    geo: &TableGeometry,
    params: &PhysicsParams,
) -> Option<TrajectoryEvent> {
    let mut best: Option<TrajectoryEvent> = None;
    let mut consider = |kind: EventKind, at: BallState| {
        if best.is_none_or(|b| at.time < b.state_at_event.time) {
            best = Some(TrajectoryEvent {
                kind,
                state_at_event: at,
            });
        }
    };

    // Table surface, from above.
    if s.position.z > 0.0 && next.position.z <= 0.0 {
        let at = refine_crossing(*s, h, params, |b| b.position.z);
        if geo.on_table(at.position.x, at.position.y) {
            consider(EventKind::TableBounce, at);
        }
    }

    // Net plane, either direction.
    let dn0 = s.position.x - geo.net_x;
    let dn1 = next.position.x - geo.net_x;
    if (dn0 < 0.0 && dn1 >= 0.0) || (dn0 > 0.0 && dn1 <= 0.0) {
        let at = refine_crossing(*s, h, params, |b| b.position.x - geo.net_x);
        let z = at.position.z;
        if (0.0..=geo.net_height).contains(&z)
            && at.position.y.abs() <= geo.half_width() + geo.net_overhang
        {
            consider(EventKind::NetContact, at);
        }
    }

    // Hitting plane, incoming balls only.
    if let Some(hp) = geo.hit_plane_x {
        if s.position.x > hp && next.position.x <= hp {
            let at = refine_crossing(*s, h, params, |b| b.position.x - hp);
            consider(EventKind::HitPlaneCrossing, at);
        }
    }

    if s.position.z > geo.floor_z && next.position.z <= geo.floor_z {
        let at = refine_crossing(*s, h, params, |b| b.position.z - geo.floor_z);
        consider(EventKind::FloorContact, at);
    }

    best
}
