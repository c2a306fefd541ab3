//! Train briefly, save the actor, reload it from disk and evaluate it on
//! fresh noise-free serves.
//!
//! ```text
//! cargo run --release --example checkpoint_evaluate -- [episodes]
//! ```

use ttrl::aprg::{run_training, AprgConfig};
use ttrl::env;
use ttrl::harness::evaluate_checkpoint;
use ttrl::neuralnet::save_checkpoint;

fn main() -> Result<(), ttrl::Error> {
    let episodes: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(20);
    let env_cfg = env::preset("serve")?;
    let config = AprgConfig {
        total_episodes: 100,
        ..AprgConfig::default()
    };
    let result = run_training(&env_cfg, &config, 0, &mut ())?;

    let path = std::env::temp_dir().join("ttrl_actor.ckpt");
    save_checkpoint(&result.actor.net, &path)?;
    let rows = evaluate_checkpoint(&path, &env_cfg, episodes, 11)?;

    for r in &rows {
        println!(
            "{:>3}  goal ({:.2}, {:+.2})  landed ({:.3}, {:+.3})  error {:>6.1} mm  {}",
            r.episode, r.goal_x, r.goal_y, r.achieved_x, r.achieved_y, r.goal_error * 1e3, r.event
        );
    }
    let mean = rows.iter().map(|r| r.goal_error).sum::<f64>() / rows.len() as f64;
    println!("mean error {:.1} mm from {}", mean * 1e3, path.display());
    Ok(())
}
