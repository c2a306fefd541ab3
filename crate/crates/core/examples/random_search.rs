//! Random hyperparameter search over the default space, shrunk to a few
//! trials and seeds.
//!
//! ```text
//! cargo run --release --example random_search -- [trials] [seeds_per_trial]
//! ```

use ttrl::harness::{run_search, ExperimentConfig, SearchSpace};

fn main() -> Result<(), ttrl::Error> {
    let mut args = std::env::args().skip(1).map(|s| s.parse::<usize>().ok());
    let trials = args.next().flatten().unwrap_or(4);
    let seeds_per_trial = args.next().flatten().unwrap_or(2);
    let space = SearchSpace {
        trials,
        seeds_per_trial,
        ..SearchSpace::default()
    };
    let base = ExperimentConfig {
        output_dir: std::env::temp_dir().join("ttrl_random_search"),
        ..ExperimentConfig::default()
    };

    let results = run_search(&space, &base)?;
    let mut ranked: Vec<_> = results.iter().collect();
    ranked.sort_by(|a, b| a.summary.mean.total_cmp(&b.summary.mean));
    for r in ranked {
        let params: Vec<String> = r.params.iter().map(|(k, v)| format!("{k}={}", fmt(*v))).collect();
        println!("trial {:>3}  {:>6.1} mm  {}", r.trial, r.summary.mm.mean, params.join(" "));
    }
    println!("ranking written to {}", base.output_dir.join("ranking.csv").display());
    Ok(())
}

fn fmt(v: f64) -> String {
    if v.fract() == 0.0 {
        format!("{v:.0}")
    } else {
        format!("{v:.3e}")
    }
}
