use serde::{Deserialize, Serialize};

/// Lower corner of the action box: (alpha deg, beta deg, racket v_x m/s).
pub const ACTION_LOW: [f64; 3] = [-20.0, -30.0, 0.0];
/// Upper corner of the action box.
pub const ACTION_HIGH: [f64; 3] = [20.0, 30.0, 2.0];

/// Racket parameters at hitting time.
///
/// Fields are always inside the action box; every constructor clamps.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(from = "RawAction", into = "RawAction")]
pub struct Action {
    alpha_deg: f64,
    beta_deg: f64,
    racket_vx: f64,
}

#[derive(Serialize, Deserialize)]
struct RawAction {
    alpha_deg: f64,
    beta_deg: f64,
    racket_vx: f64,
}

impl From<RawAction> for Action {
    fn from(r: RawAction) -> Self {
        Action::new(r.alpha_deg, r.beta_deg, r.racket_vx)
    }
}

impl From<Action> for RawAction {
    fn from(a: Action) -> Self {
        RawAction {
            alpha_deg: a.alpha_deg,
            beta_deg: a.beta_deg,
            racket_vx: a.racket_vx,
        }
    }
}

impl Action {
    /// Pitch `alpha_deg` (positive tilts the face upward), yaw `beta_deg`,
    /// racket speed along +x. Out-of-range values are clamped.
    pub fn new(alpha_deg: f64, beta_deg: f64, racket_vx: f64) -> Self {
        Self::from_array([alpha_deg, beta_deg, racket_vx])
    }

    pub fn from_array(a: [f64; 3]) -> Self {
        let c = |i: usize| a[i].clamp(ACTION_LOW[i], ACTION_HIGH[i]);
        Self {
            alpha_deg: c(0),
            beta_deg: c(1),
            racket_vx: c(2),
        }
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.alpha_deg, self.beta_deg, self.racket_vx]
    }

    pub fn alpha_deg(self) -> f64 {
        self.alpha_deg
    }

    pub fn beta_deg(self) -> f64 {
        self.beta_deg
    }

    pub fn racket_vx(self) -> f64 {
        self.racket_vx
    }

    /// Map each component affinely onto `[-1, 1]`.
    pub fn to_normalized(self) -> [f64; 3] {
        let a = self.to_array();
        std::array::from_fn(|i| {
            2.0 * (a[i] - ACTION_LOW[i]) / (ACTION_HIGH[i] - ACTION_LOW[i]) - 1.0
        })
    }

    /// Inverse of [`Action::to_normalized`]; inputs outside `[-1, 1]` clamp.
    pub fn from_normalized(n: [f64; 3]) -> Self {
        Self::from_array(std::array::from_fn(|i| {
            ACTION_LOW[i] + 0.5 * (n[i] + 1.0) * (ACTION_HIGH[i] - ACTION_LOW[i])
        }))
    }
}

/// Desired landing point on the table plane, meters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Goal {
    pub x: f64,
    pub y: f64,
}

impl Goal {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }
}

/// The quantities the reward is computed from.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct RewardParams {
    pub achieved_x: f64,
    pub achieved_y: f64,
    /// Ball height above the table halfway along the return, m.
    pub height: f64,
}

impl RewardParams {
    pub fn to_array(self) -> [f64; 3] {
        [self.achieved_x, self.achieved_y, self.height]
    }

    pub fn from_array(a: [f64; 3]) -> Self {
        Self {
            achieved_x: a[0],
            achieved_y: a[1],
            height: a[2],
        }
    }
}

/// Closed interval, serialized as `[lo, hi]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(from = "[f64; 2]", into = "[f64; 2]")]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub const fn new(lo: f64, hi: f64) -> Self {
        Self { lo, hi }
    }

    pub const fn point(v: f64) -> Self {
        Self { lo: v, hi: v }
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn center(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    pub fn contains(&self, v: f64) -> bool {
        self.lo <= v && v <= self.hi
    }

    /// Affine map onto `[-1, 1]`; a degenerate interval maps to 0.
    pub fn normalize(&self, v: f64) -> f64 {
        let w = self.width();
        if w > 0.0 {
            2.0 * (v - self.lo) / w - 1.0
        } else {
            0.0
        }
    }
}

impl From<[f64; 2]> for Interval {
    fn from(a: [f64; 2]) -> Self {
        Interval::new(a[0], a[1])
    }
}

impl From<Interval> for [f64; 2] {
    fn from(i: Interval) -> Self {
        [i.lo, i.hi]
    }
}
