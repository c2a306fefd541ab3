//! Hit one noise-free serve with a grid of racket actions and print where
//! each return lands.
//!
//! ```text
//! cargo run --release --example racket_return -- [scenario]
//! ```

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use ttrl::env::{self, Action};

fn main() -> Result<(), ttrl::Error> {
    let scenario = std::env::args().nth(1).unwrap_or_else(|| "serve".to_owned());
    let cfg = env::preset(&scenario)?.noiseless();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let ball = env::sample_serve(&mut rng, &cfg)?;
    let goal = cfg.goal_for_episode(0);
    let p = ball.position;
    println!("ball at hit plane: ({:.3}, {:.3}, {:.3}), goal ({:.2}, {:.2})", p.x, p.y, p.z, goal.x, goal.y);
    println!("{:>6} {:>6} {:>5}  {:>7} {:>7} {:>6}  {:>7}  event", "alpha", "beta", "vx", "x", "y", "h", "reward");

    for alpha in [0.0, 10.0, 20.0] {
        for beta in [-10.0, 0.0, 10.0] {
            for vx in [0.5, 1.5] {
                let out = env::step(&ball, Action::new(alpha, beta, vx), &goal, &cfg, &mut rng)?;
                let r = out.reward_params;
                println!(
                    "{alpha:>6.1} {beta:>6.1} {vx:>5.1}  {:>7.3} {:>7.3} {:>6.3}  {:>7.3}  {}",
                    r.achieved_x, r.achieved_y, r.height, out.reward, out.terminal_event
                );
            }
        }
    }
    Ok(())
}
