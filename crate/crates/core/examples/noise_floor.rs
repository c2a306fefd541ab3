//! Calibrate sensing and actuation noise on the ball-machine scenario so a
//! fixed action scatters its landing points by about 120 mm RMS, then train
//! under that noise and compare the result with the floor.
//!
//! ```text
//! cargo run --release --example noise_floor -- [seeds]
//! ```

use ttrl::aprg::{run_training, AprgConfig};
use ttrl::env;
use ttrl::harness::{calibrate_noise, summarize_seed, NoiseProfile};

fn main() -> Result<(), ttrl::Error> {
    let seeds: u64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(3);
    let base = env::preset("ballmachine-fixed")?;
    let config = AprgConfig::default();
    let cal = calibrate_noise(&base, &NoiseProfile::default(), config.base_action, 0.12, 400, 1234)?;
    println!("noise scale {:.3}: fixed-action scatter {:.1} mm", cal.scale, cal.rms * 1e3);
    println!("  observation std {:?}", cal.env.observation_noise);
    println!("  execution std   {:?}", cal.env.execution_noise);

    for seed in 0..seeds {
        let clean = run_training(&base, &config, seed, &mut ())?;
        let noisy = run_training(&cal.env, &config, seed, &mut ())?;
        let c = summarize_seed(seed, &clean.log, 50, config.warmup_episodes)?;
        let n = summarize_seed(seed, &noisy.log, 50, config.warmup_episodes)?;
        println!(
            "seed {seed}: noise-free {:6.1} mm, noisy {:6.1} mm ({:.2}x floor)",
            c.last_mean * 1e3,
            n.last_mean * 1e3,
            n.last_mean / cal.rms
        );
    }
    Ok(())
}
