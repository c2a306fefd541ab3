use super::{BallState, PhysicsError, RacketPose, Vec3};

/// Tolerance on the ball height for a state to count as "on the table".
const SURFACE_TOLERANCE: f64 = 1e-5;

/// Elastic bounce on the table: the vertical velocity flips sign, nothing
/// else changes.
pub fn table_bounce(state: BallState) -> Result<BallState, PhysicsError> {
    if state.velocity.z >= 0.0 {
        return Err(PhysicsError::NotOnTable(format!(
            "ball moving away from the surface (v_z = {})",
            state.velocity.z
        )));
    }
    if state.position.z.abs() > SURFACE_TOLERANCE {
        return Err(PhysicsError::NotOnTable(format!(
            "ball not at the surface (z = {} m)",
            state.position.z
        )));
    }
    let mut out = state;
    out.velocity.z = -state.velocity.z;
    Ok(out)
}

/// Ball velocity after hitting a racket that is much heavier than the ball.
///
/// The component along the racket normal becomes `2 (v_r . n) - (v_b . n)`;
/// tangential components pass through.
pub fn racket_bounce(ball_velocity: Vec3, racket: &RacketPose) -> Result<Vec3, PhysicsError> {
    let n = racket.normal;
    let relative = (ball_velocity - racket.velocity).dot(n);
    if !(relative < 0.0) {
        return Err(PhysicsError::NoContact {
            relative_normal_speed: relative,
        });
    }
    let vb_n = ball_velocity.dot(n);
    let vr_n = racket.velocity.dot(n);
    let new_normal = 2.0 * vr_n - vb_n;
    Ok(ball_velocity + n * (new_normal - vb_n))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pose(normal: Vec3, velocity: Vec3) -> RacketPose {
        RacketPose {
            normal,
            velocity,
            position: Vec3::ZERO,
        }
    }

    #[test]
    fn table_bounce_flips_vz_only() {
        let s = BallState::new(
            Vec3::new(1.0, 0.0, 0.0),
            Vec3::new(2.0, 0.0, -3.0),
            Vec3::new(0.0, 50.0, 0.0),
        );
        let out = table_bounce(s).unwrap();
        assert_eq!(out.velocity, Vec3::new(2.0, 0.0, 3.0));
        assert_eq!(out.spin, s.spin);
        assert_eq!(out.position, s.position);
        assert_eq!(out.velocity.norm(), s.velocity.norm());
    }

    #[test]
    fn table_bounce_rejects_rising_ball() {
        let s = BallState::new(Vec3::ZERO, Vec3::new(1.0, 0.0, 2.0), Vec3::ZERO);
        assert!(matches!(table_bounce(s), Err(PhysicsError::NotOnTable(_))));
    }

    #[test]
    fn table_bounce_rejects_airborne_ball() {
        let s = BallState::new(Vec3::new(1.0, 0.0, 0.2), Vec3::new(1.0, 0.0, -2.0), Vec3::ZERO);
        assert!(table_bounce(s).is_err());
    }

    #[test]
    fn moving_racket_head_on() {
        let v = racket_bounce(Vec3::new(-5.0, 0.0, 0.0), &pose(Vec3::X, Vec3::X)).unwrap();
        assert!((v - Vec3::new(7.0, 0.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn oblique_tangentials_pass_through() {
        let v = racket_bounce(
            Vec3::new(-5.0, 2.0, -1.0),
            &pose(Vec3::X, Vec3::new(0.5, 0.0, 0.0)),
        )
        .unwrap();
        assert!((v - Vec3::new(6.0, 2.0, -1.0)).norm() < 1e-15);
    }

    #[test]
    fn stationary_racket_reflects() {
        let v = racket_bounce(Vec3::new(-3.0, 0.0, 0.0), &pose(Vec3::X, Vec3::ZERO)).unwrap();
        assert_eq!(v, Vec3::new(3.0, 0.0, 0.0));
    }

    #[test]
    fn receding_ball_is_no_contact() {
        let err = racket_bounce(Vec3::new(1.0, 0.0, 0.0), &pose(Vec3::X, Vec3::ZERO)).unwrap_err();
        assert!(matches!(err, PhysicsError::NoContact { .. }));
        // grazing counts as no contact too
        assert!(racket_bounce(Vec3::new(0.0, 1.0, 0.0), &pose(Vec3::X, Vec3::ZERO)).is_err());
    }
}
