//! Train an agent on the default serve scenario and report how close the
//! returns land to the goal.
//!
//! ```text
//! cargo run --release --example train_serve -- [seed] [mode]
//! ```

use std::time::Instant;

use ttrl::aprg::{run_training, AprgConfig, Mode};
use ttrl::env;

fn main() -> Result<(), ttrl::Error> {
    let mut args = std::env::args().skip(1);
    let seed: u64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(0);
    let mode: Mode = match args.next() {
        Some(m) => m.parse()?,
        None => Mode::Aprg,
    };
    let env_cfg = env::preset("serve")?;
    let config = AprgConfig {
        mode,
        ..AprgConfig::default()
    };

    let start = Instant::now();
    let result = run_training(&env_cfg, &config, seed, &mut ())?;
    let elapsed = start.elapsed();

    let errors: Vec<f64> = result.log.iter().map(|l| l.goal_error).collect();
    let window = |a: usize, b: usize| errors[a..b].iter().sum::<f64>() / (b - a) as f64 * 1000.0;
    let n = errors.len();
    for chunk in (0..n).step_by(25) {
        let end = (chunk + 25).min(n);
        println!("episodes {chunk:>4}..{end:<4} mean error {:>7.1} mm", window(chunk, end));
    }
    println!(
        "mode {mode}, seed {seed}: last-50 mean error {:.1} mm in {:.1} s",
        window(n.saturating_sub(50), n),
        elapsed.as_secs_f64()
    );
    Ok(())
}
