//! Train the three critic variants on the same seeds and print the final
//! goal errors side by side.
//!
//! ```text
//! cargo run --release --example mode_comparison -- [n_seeds]
//! ```

use ttrl::aprg::Mode;
use ttrl::harness::{compare_modes, ExperimentConfig};

fn main() -> Result<(), ttrl::Error> {
    let n: u64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(3);
    let dir = std::env::temp_dir().join("ttrl_mode_comparison");
    let cfg = ExperimentConfig {
        seeds: (0..n).collect(),
        output_dir: dir.clone(),
        ..ExperimentConfig::default()
    };

    let rows = compare_modes(&cfg, &[Mode::Aprg, Mode::Prg, Mode::ScalarCritic])?;
    for row in &rows {
        let per_seed: Vec<String> = row.per_seed.iter().map(|(_, e)| format!("{:.0}", e * 1e3)).collect();
        println!(
            "{:<7} mean {:>6.1} mm  median {:>6.1} mm  seeds [{}]",
            row.mode.as_str(),
            row.mean * 1e3,
            row.median * 1e3,
            per_seed.join(", ")
        );
    }
    println!("logs under {}", dir.display());
    Ok(())
}
