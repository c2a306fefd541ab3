//! Sample serves from every scenario preset and print the range of the
//! hit-plane state, component by component.
//!
//! ```text
//! cargo run --release --example serve_envelope -- 1000
//! ```

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use ttrl::env::{self, PRESET_NAMES};

const LABELS: [&str; 9] = ["px", "py", "pz", "vx", "vy", "vz", "wx", "wy", "wz"];

fn main() -> Result<(), ttrl::Error> {
    let n: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(1000);
    for name in PRESET_NAMES {
        let cfg = env::preset(name)?;
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut lo = [f64::INFINITY; 9];
        let mut hi = [f64::NEG_INFINITY; 9];
        for _ in 0..n {
            let s = env::sample_serve(&mut rng, &cfg)?.to_array();
            for i in 0..9 {
                lo[i] = lo[i].min(s[i]);
                hi[i] = hi[i].max(s[i]);
            }
        }
        println!("{name} ({n} serves)");
        for i in 0..9 {
            let inside = cfg.state_box[i].contains(lo[i]) && cfg.state_box[i].contains(hi[i]);
            println!(
                "  {:>2}  [{:>8.3}, {:>8.3}]  box [{:>6.2}, {:>6.2}]{}",
                LABELS[i],
                lo[i],
                hi[i],
                cfg.state_box[i].lo,
                cfg.state_box[i].hi,
                if inside { "" } else { "  outside" }
            );
        }
    }
    Ok(())
}
