//! Two very different returns can land on the same spot: a flat drive and
//! a lob. Sweep the racket pitch for one fixed ball, find such a pair and
//! show that the height penalty breaks the tie in favour of the flat one.
//!
//! ```text
//! cargo run --release --example reward_ambiguity
//! ```

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use ttrl::env::{self, Action, Goal};

fn main() -> Result<(), ttrl::Error> {
    let mut cfg = env::preset("serve")?;
    cfg.serve = cfg.serve.degenerate();
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let ball = env::sample_serve(&mut rng, &cfg)?;
    println!("ball at the hitting plane: {:?}", ball.to_array());

    for vx in [0.5, 1.0, 1.5] {
        let mut sweep = Vec::new();
        let mut alpha = -20.0;
        while alpha <= 20.0 {
            let out = env::step(&ball, Action::new(alpha, 0.0, vx), &Goal::new(2.0, 0.0), &cfg, &mut rng)?;
            sweep.push((alpha, out.reward_params, out.terminal_event));
            alpha += 0.1;
        }
        let best = sweep
            .iter()
            .enumerate()
            .flat_map(|(i, a)| sweep[i + 1..].iter().map(move |b| (a, b)))
            .filter(|(a, b)| {
                (a.1.achieved_x - b.1.achieved_x).abs() < 0.01 && a.1.achieved_x > cfg.geometry.net_x
            })
            .max_by(|(a, b), (c, d)| {
                (a.1.height - b.1.height).abs().total_cmp(&(c.1.height - d.1.height).abs())
            });
        match best {
            Some((a, b)) => {
                let (low, high) = if a.1.height < b.1.height { (a, b) } else { (b, a) };
                let goal = Goal::new(
                    0.5 * (low.1.achieved_x + high.1.achieved_x),
                    0.5 * (low.1.achieved_y + high.1.achieved_y),
                );
                let r = |p| env::reward_from_params(p, &goal, cfg.height_weight);
                println!(
                    "vx {vx}: alpha {:6.1} lands x={:.4} h={:.3} R={:.4} | alpha {:6.1} lands x={:.4} h={:.3} R={:.4}",
                    low.0, low.1.achieved_x, low.1.height, r(&low.1),
                    high.0, high.1.achieved_x, high.1.height, r(&high.1),
                );
            }
            None => println!("vx {vx}: no ambiguous pair"),
        }
    }
    Ok(())
}
