use super::{EnvConfig, EnvError, Goal, Interval};

/// Names accepted by [`preset`].
pub const PRESET_NAMES: [&str; 5] = [
    "serve",
    "i-play",
    "x-play",
    "ballmachine-fixed",
    "ballmachine-oscillating",
];

/// Environment preset for a named exercise.
///
/// - `serve`: the default serve distribution, returned to the middle of the table.
/// - `i-play`: faster, more varied balls along the middle line, deeper goal.
/// - `x-play`: balls spread across the table, two goals alternating left/right.
/// - `ballmachine-fixed`: near-identical balls from a machine.
/// - `ballmachine-oscillating`: a machine sweeping its placement across the robot half.
pub fn preset(name: &str) -> Result<EnvConfig, EnvError> {
    let mut cfg = EnvConfig::default();
    match name {
        "serve" => {}
        "i-play" => {
            cfg.serve.position[1] = Interval::new(-0.3, 0.3);
            cfg.serve.velocity[0] = Interval::new(-5.8, -4.0);
            cfg.serve.velocity[2] = Interval::new(0.8, 2.5);
            cfg.serve.spin[1] = Interval::new(-45.0, 45.0);
            cfg.goals = vec![Goal::new(2.4, 0.0)];
        }
        "x-play" => {
            cfg.serve.position[1] = Interval::new(-0.4, 0.4);
            cfg.serve.velocity[1] = Interval::new(-0.8, 0.8);
            cfg.goals = vec![Goal::new(2.2, -0.3), Goal::new(2.2, 0.3)];
        }
        "ballmachine-fixed" => {
            let s = cfg.serve.degenerate();
            cfg.serve.position = s.position.map(|i| Interval::new(i.lo - 0.01, i.hi + 0.01));
            cfg.serve.velocity = s.velocity.map(|i| Interval::new(i.lo - 0.05, i.hi + 0.05));
            cfg.serve.spin = s.spin.map(|i| Interval::new(i.lo - 1.0, i.hi + 1.0));
            cfg.goals = vec![Goal::new(2.4, 0.0)];
        }
        "ballmachine-oscillating" => {
            cfg.serve.position[1] = Interval::new(-0.5, 0.5);
            cfg.serve.velocity[1] = Interval::new(-0.6, 0.6);
            cfg.goals = vec![Goal::new(2.4, 0.0)];
        }
        other => return Err(EnvError::UnknownScenario(other.to_string())),
    }
    Ok(cfg)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_presets_validate() {
        for name in PRESET_NAMES {
            preset(name).unwrap().validate().unwrap();
        }
    }

    #[test]
    fn unknown_name_is_error() {
        assert!(matches!(preset("v-shape"), Err(EnvError::UnknownScenario(_))));
    }
}
