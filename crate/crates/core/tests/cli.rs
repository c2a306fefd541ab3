use std::path::Path;
use std::process::{Command, Output};

use ttrl::harness::{ExperimentConfig, SearchSpace};

fn ttrl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ttrl")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

/// A short experiment config written to `dir/quick.toml`.
fn quick_config(dir: &Path) -> String {
    let path = dir.join("quick.toml");
    std::fs::write(
        &path,
        "seeds = [0]\nsummary_window = 5\nplot_window = 5\n\
         [aprg]\nwarmup_episodes = 10\ntotal_episodes = 14\ntrain_steps = 2\nbatch_size = 4\nhidden = [8, 8]\n",
    )
    .unwrap();
    path.to_str().unwrap().to_owned()
}

#[test]
fn print_config_round_trips() {
    let out = ttrl(&["print-config", "--scenario", "x-play", "--seeds", "3,4", "--mode", "scalar"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let cfg = ExperimentConfig::from_toml_str(&stdout(&out)).unwrap();
    let mut expect = ExperimentConfig::for_scenario("x-play").unwrap();
    expect.seeds = vec![3, 4];
    expect.aprg.mode = ttrl::aprg::Mode::ScalarCritic;
    assert_eq!(cfg, expect);

    let out = ttrl(&["print-config", "--search-space"]);
    assert!(out.status.success());
    assert_eq!(SearchSpace::from_toml_str(&stdout(&out)).unwrap(), SearchSpace::default());
}

#[test]
fn train_then_evaluate() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = quick_config(dir.path());
    let run = dir.path().join("run");
    let out = ttrl(&["train", "--config", &cfg, "--seed", "2", "--out", run.to_str().unwrap(), "--mode", "prg"]);
    assert!(out.status.success(), "{}", stderr(&out));
    for f in ["config.toml", "summary.json", "episodes_seed2.csv", "plot_seed2.csv", "actor_seed2.ckpt", "critic_seed2.ckpt"]
    {
        assert!(run.join(f).is_file(), "{f} missing");
    }
    let saved = ExperimentConfig::load(&run.join("config.toml")).unwrap();
    assert_eq!(saved.aprg.mode, ttrl::aprg::Mode::Prg);
    assert_eq!(saved.seeds, vec![2]);

    let eval = dir.path().join("eval");
    let ckpt = run.join("actor_seed2.ckpt");
    let out = ttrl(&[
        "evaluate",
        "--config",
        &cfg,
        "--checkpoint",
        ckpt.to_str().unwrap(),
        "--episodes",
        "7",
        "--out",
        eval.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = std::fs::read_to_string(eval.join("evaluation.csv")).unwrap();
    assert_eq!(text.lines().count(), 8);
}

#[test]
fn compare_and_search_write_their_tables() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = quick_config(dir.path());
    let cmp = dir.path().join("cmp");
    let out = ttrl(&["compare", "--config", &cfg, "--modes", "aprg,prg", "--out", cmp.to_str().unwrap()]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(cmp.join("comparison.json").is_file());
    assert!(cmp.join("aprg/summary.json").is_file() && cmp.join("prg/summary.json").is_file());

    let space = dir.path().join("space.toml");
    std::fs::write(&space, "[params.critic_lr]\nkind = \"log_uniform\"\nlo = 1e-4\nhi = 1e-2\n").unwrap();
    let search = dir.path().join("search");
    let out = ttrl(&[
        "search",
        "--config",
        &cfg,
        "--space",
        space.to_str().unwrap(),
        "--trials",
        "2",
        "--seeds-per-trial",
        "1",
        "--out",
        search.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let ranking = std::fs::read_to_string(search.join("ranking.csv")).unwrap();
    assert_eq!(ranking.lines().count(), 3);
}

#[test]
fn errors_exit_nonzero() {
    let dir = tempfile::tempdir().unwrap();
    let cases: Vec<Vec<&str>> = vec![
        vec![],
        vec!["train", "--scenario", "tennis"],
        vec!["train", "--config", "/nonexistent/config.toml"],
        vec!["train", "--mode", "greedy"],
        vec!["evaluate", "--checkpoint", "/nonexistent/actor.ckpt"],
        vec!["search", "--trials", "0"],
        vec!["compare", "--modes", "aprg,sac"],
    ];
    for args in cases {
        let mut full = args.clone();
        let out_dir = dir.path().join("unused");
        full.extend(["--out", out_dir.to_str().unwrap()]);
        let args_used = if args.is_empty() { &args } else { &full };
        let out = ttrl(args_used);
        assert!(!out.status.success(), "{args:?} should fail");
        assert!(!stderr(&out).is_empty(), "{args:?} printed no error");
    }
    let out = ttrl(&["train", "--scenario", "tennis"]);
    assert!(stderr(&out).starts_with("error:"), "{}", stderr(&out));
}
