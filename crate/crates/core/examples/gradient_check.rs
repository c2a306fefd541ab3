//! Compare backprop against central differences on a freshly initialized
//! critic-shaped network.
//!
//! ```text
//! cargo run --release --example gradient_check -- [seed]
//! ```

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use ttrl::neuralnet::{gradient_check, Activation, MlpNet};

fn main() -> Result<(), ttrl::Error> {
    let seed: u64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(0);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let net = MlpNet::new(
        &[12, 64, 64, 3],
        &[Activation::Relu, Activation::Relu, Activation::Tanh],
        &mut rng,
    )?;
    let target = [0.2, -0.4, 0.1];
    // squared error against a fixed target
    let loss = |y: &[f64]| {
        let d: Vec<f64> = y.iter().zip(target).map(|(a, b)| a - b).collect();
        (d.iter().map(|x| 0.5 * x * x).sum(), d)
    };

    for h in [1e-3, 1e-5, 1e-7] {
        let input: Vec<f64> = (0..12).map(|i| ((i as f64) * 0.7 + seed as f64).sin()).collect();
        let report = gradient_check(&net, &input, loss, h)?;
        println!(
            "h = {h:.0e}: params {:.2e}, inputs {:.2e} ({} checked, {} kinks skipped)",
            report.max_rel_param, report.max_rel_input, report.checked, report.skipped_kinks
        );
    }
    Ok(())
}
