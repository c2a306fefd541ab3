use super::{BallState, PhysicsParams, Vec3};

/// Acceleration of the ball in free flight.
pub fn ball_acceleration(velocity: Vec3, spin: Vec3, params: &PhysicsParams) -> Vec3 {
    let drag = velocity * (-params.k_drag * velocity.norm());
    let magnus = spin.cross(velocity) * params.k_magnus;
    drag + magnus - Vec3::new(0.0, 0.0, params.gravity)
}

/// One classical RK4 step of `(position, velocity)`; spin is carried over.
pub fn rk4_step(state: BallState, dt: f64, params: &PhysicsParams) -> BallState {
    let w = state.spin;
    let p0 = state.position;
    let v0 = state.velocity;

    let k1_p = v0;
    let k1_v = ball_acceleration(v0, w, params);

    let v1 = v0 + k1_v * (0.5 * dt);
    let k2_p = v1;
    let k2_v = ball_acceleration(v1, w, params);

    let v2 = v0 + k2_v * (0.5 * dt);
    let k3_p = v2;
    let k3_v = ball_acceleration(v2, w, params);

    let v3 = v0 + k3_v * dt;
    let k4_p = v3;
    let k4_v = ball_acceleration(v3, w, params);

    let sixth = dt / 6.0;
    BallState {
        position: p0 + (k1_p + k2_p * 2.0 + k3_p * 2.0 + k4_p) * sixth,
        velocity: v0 + (k1_v + k2_v * 2.0 + k3_v * 2.0 + k4_v) * sixth,
        spin: w,
        time: state.time + dt,
    }
}
