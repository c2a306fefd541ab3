//! Ball flight and contact physics.
//!
//! The ball is a point mass under gravity, quadratic air drag and a Magnus
//! lift term,
//!
//! ```text
//! dv/dt = -k_D |v| v + k_M (w x v) - (0, 0, g)
//! ```
//!
//! integrated with classical fourth-order Runge-Kutta. Spin is constant in
//! flight and through contacts. Table and racket contacts are elastic
//! reflections against an infinitely heavy partner.
//!
//! Everything here is a pure function of its arguments.

mod bounce;
mod flight;
mod trajectory;
mod vec3;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use bounce::{racket_bounce, table_bounce};
pub use flight::{ball_acceleration, rk4_step};
pub use trajectory::{refine_crossing, simulate_traced, simulate_until_event, Flight};
pub use vec3::Vec3;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PhysicsError {
    #[error("integration diverged at t = {time} s (non-finite ball state)")]
    Diverged { time: f64 },
    #[error("table bounce precondition violated: {0}")]
    NotOnTable(String),
    #[error("ball is not approaching the racket (relative normal speed {relative_normal_speed} m/s)")]
    NoContact { relative_normal_speed: f64 },
    #[error("invalid simulation setting: {0}")]
    InvalidSetting(String),
}

/// Kinematic state of the ball at one instant.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct BallState {
    /// Table frame, meters.
    pub position: Vec3,
    /// m/s
    pub velocity: Vec3,
    /// rad/s
    pub spin: Vec3,
    /// s
    pub time: f64,
}

impl BallState {
    pub fn new(position: Vec3, velocity: Vec3, spin: Vec3) -> Self {
        Self {
            position,
            velocity,
            spin,
            time: 0.0,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.position.is_finite()
            && self.velocity.is_finite()
            && self.spin.is_finite()
            && self.time.is_finite()
    }

    /// Position, velocity, spin concatenated.
    pub fn to_array(&self) -> [f64; 9] {
        let p = self.position;
        let v = self.velocity;
        let w = self.spin;
        [p.x, p.y, p.z, v.x, v.y, v.z, w.x, w.y, w.z]
    }

    pub fn from_array(a: [f64; 9], time: f64) -> Self {
        Self {
            position: Vec3::new(a[0], a[1], a[2]),
            velocity: Vec3::new(a[3], a[4], a[5]),
            spin: Vec3::new(a[6], a[7], a[8]),
            time,
        }
    }
}

/// Coefficients of the flight model.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PhysicsParams {
    /// Drag coefficient, 1/m.
    pub k_drag: f64,
    /// Magnus coefficient, s (spin in rad/s).
    pub k_magnus: f64,
    /// Magnitude of gravitational acceleration along -z, m/s^2.
    pub gravity: f64,
}

impl Default for PhysicsParams {
    fn default() -> Self {
        Self {
            k_drag: 0.1404,
            k_magnus: 0.0041,
            gravity: 9.81,
        }
    }
}

impl PhysicsParams {
    /// Gravity only.
    pub fn vacuum() -> Self {
        Self {
            k_drag: 0.0,
            k_magnus: 0.0,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<(), PhysicsError> {
        let ok = self.k_drag >= 0.0
            && self.k_magnus >= 0.0
            && self.gravity > 0.0
            && self.k_drag.is_finite()
            && self.k_magnus.is_finite()
            && self.gravity.is_finite();
        if ok {
            Ok(())
        } else {
            Err(PhysicsError::InvalidSetting(format!(
                "physics parameters out of range: {self:?}"
            )))
        }
    }
}

/// Racket state at the moment of contact.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RacketPose {
    /// Unit normal of the racket face.
    pub normal: Vec3,
    pub velocity: Vec3,
    pub position: Vec3,
}

/// Table, net and floor layout plus the optional hitting plane.
///
/// Table surface is `z = 0`, `x` in `[0, length]`, `y` in `[-width/2, width/2]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TableGeometry {
    pub length: f64,
    pub width: f64,
    pub net_x: f64,
    pub net_height: f64,
    /// How far the net extends past each side line.
    pub net_overhang: f64,
    pub floor_z: f64,
    /// Plane `x = hit_plane_x`; fires only for balls travelling towards -x.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hit_plane_x: Option<f64>,
}

impl Default for TableGeometry {
    fn default() -> Self {
        Self {
            length: 2.74,
            width: 1.525,
            net_x: 1.37,
            net_height: 0.1525,
            net_overhang: 0.1525,
            floor_z: -0.76,
            hit_plane_x: None,
        }
    }
}

impl TableGeometry {
    pub fn with_hit_plane(mut self, x: f64) -> Self {
        self.hit_plane_x = Some(x);
        self
    }

    pub fn half_width(&self) -> f64 {
        0.5 * self.width
    }

    /// Whether `(x, y)` lies on the playing surface (edges included).
    pub fn on_table(&self, x: f64, y: f64) -> bool {
        (0.0..=self.length).contains(&x) && y.abs() <= self.half_width()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EventKind {
    TableBounce,
    NetContact,
    HitPlaneCrossing,
    FloorContact,
    Timeout,
}

impl std::fmt::Display for EventKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            EventKind::TableBounce => "table_bounce",
            EventKind::NetContact => "net_contact",
            EventKind::HitPlaneCrossing => "hit_plane_crossing",
            EventKind::FloorContact => "floor_contact",
            EventKind::Timeout => "timeout",
        };
        f.write_str(s)
    }
}

/// First event terminating a simulated flight segment.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajectoryEvent {
    pub kind: EventKind,
    pub state_at_event: BallState,
}
