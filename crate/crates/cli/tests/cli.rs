use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use rbandit::{parse_config, Overrides};
use robust_bandits::{AdversarySpec, LearnerSpec};

fn configs_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs")
}

fn rbandit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rbandit")).args(args).output().expect("spawn rbandit")
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

const SMALL: &str = r#"
name = "small"
horizon = 400
master_seed = 5
seed_count = 2
checkpoints = [100, 200]

[instance]
arms = [{ bernoulli = 0.7 }, { bernoulli = 0.5 }, { bernoulli = 0.4 }]

[learner]
kind = "multilayer"

[adversary]
kind = "targeted_optimal"
budget = 30.0
threshold = 0.5
"#;

#[test]
fn shipped_configs_parse() {
    let minimal = parse_config(&configs_dir().join("minimal.toml"), &Overrides::default()).unwrap();
    assert_eq!(minimal.name, "minimal");
    assert_eq!(minimal.learner, LearnerSpec::Multilayer { delta: 0.05 });
    assert_eq!(minimal.adversary, AdversarySpec::Null);
    assert_eq!(minimal.episodes.len(), 10);
    assert_eq!(*minimal.checkpoints.last().unwrap(), 10_000);
    assert!(minimal.checkpoints.contains(&8192));

    let attack = parse_config(&configs_dir().join("prefix-attack.toml"), &Overrides::default()).unwrap();
    assert_eq!(attack.checkpoints, vec![1000, 5000, 20_000]);

    let json = parse_config(&configs_dir().join("targeted.json"), &Overrides::default()).unwrap();
    assert_eq!(json.instance.num_arms(), 3);
    assert_eq!(json.adversary, AdversarySpec::TargetedOptimal { budget: 50.0, threshold: 0.5 });
}

#[test]
fn csv_has_one_row_per_seed_and_checkpoint() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "small.toml", SMALL);
    let out = dir.path().join("out.csv");
    let o = rbandit(&["run", "--config", cfg.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));

    let mut reader = csv::Reader::from_path(&out).unwrap();
    let header: Vec<String> = reader.headers().unwrap().iter().map(String::from).collect();
    assert_eq!(
        header,
        [
            "experiment_id", "seed", "checkpoint_t", "cum_regret", "cum_uncorrupted_regret",
            "cum_pseudo_regret_gap", "corruption_spent", "learner", "adversary",
            "arm_pulls_0", "arm_pulls_1", "arm_pulls_2",
        ]
    );
    let records: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
    assert_eq!(records.len(), 6);
    let keys: Vec<(&str, &str)> = records.iter().map(|r| (&r[1], &r[2])).collect();
    assert_eq!(keys, [("0", "100"), ("0", "200"), ("0", "400"), ("1", "100"), ("1", "200"), ("1", "400")]);
    for r in &records {
        let t: u64 = r[2].parse().unwrap();
        let pulls: u64 = (9..12).map(|i| r[i].parse::<u64>().unwrap()).sum();
        assert_eq!(pulls, t);
        assert!(r[6].parse::<f64>().unwrap() <= 30.0);
        assert_eq!(&r[7], "multilayer");
        assert_eq!(&r[8], "targeted_optimal");
    }
}

#[test]
fn reruns_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "small.toml", SMALL);
    let out = dir.path().join("out.csv");
    let args = |workers: &'static str| {
        vec!["run".to_string(), "--config".into(), cfg.display().to_string(), "--out".into(), out.display().to_string(), "--workers".into(), workers.into()]
    };
    let run = |workers| {
        let a = args(workers);
        let o = rbandit(&a.iter().map(String::as_str).collect::<Vec<_>>());
        assert!(o.status.success());
        std::fs::read(&out).unwrap()
    };
    let first = run("1");
    let second = run("1");
    let parallel = run("3");
    assert_eq!(first, second);
    assert_eq!(first, parallel);

    let o = rbandit(&["run", "--config", cfg.to_str().unwrap(), "--master-seed", "6"]);
    assert!(o.status.success());
    assert_ne!(o.stdout, first);
}

#[test]
fn json_values_match_csv() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "small.toml", SMALL);
    let csv_out = rbandit(&["run", "--config", cfg.to_str().unwrap()]);
    let json_out = rbandit(&["run", "--config", cfg.to_str().unwrap(), "--format", "json"]);
    assert!(csv_out.status.success() && json_out.status.success());

    let mut reader = csv::Reader::from_reader(csv_out.stdout.as_slice());
    let header = reader.headers().unwrap().clone();
    let doc: serde_json::Value = serde_json::from_slice(&json_out.stdout).unwrap();
    let rows = doc["rows"].as_array().unwrap();
    let records: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), records.len());
    for (record, row) in records.iter().zip(rows) {
        for (name, text) in header.iter().zip(record.iter()) {
            let v = &row[name];
            match v {
                serde_json::Value::String(s) => assert_eq!(s, text, "{name}"),
                serde_json::Value::Number(n) => {
                    assert_eq!(n.as_f64().unwrap(), text.parse::<f64>().unwrap(), "{name}")
                }
                other => panic!("unexpected {name}: {other}"),
            }
        }
    }
    let aggregates = doc["aggregates"].as_array().unwrap();
    assert_eq!(aggregates.len(), 3);
    assert!(aggregates[0]["cum_regret"]["p95"].is_number());
}

#[test]
fn config_errors_exit_two_and_name_the_field() {
    let dir = tempfile::tempdir().unwrap();
    let bad_arm = write(dir.path(), "a.toml", &SMALL.replace("0.4 }", "1.3 }"));
    let o = rbandit(&["run", "--config", bad_arm.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("instance.arms[2]"));

    let fast_slow = write(
        dir.path(),
        "b.toml",
        &SMALL.replace("kind = \"multilayer\"", "kind = \"fast_slow\"\ncorruption = 1.0"),
    );
    let o = rbandit(&["run", "--config", fast_slow.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("learner.corruption") && err.contains("C >= 2"), "{err}");

    let unknown = write(dir.path(), "c.toml", &format!("{SMALL}\n[extra]\nx = 1\n"));
    let o = rbandit(&["run", "--config", unknown.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("extra"));

    let o = rbandit(&["run", "--config", bad_arm.to_str().unwrap(), "--delta", "0"]);
    assert_eq!(o.status.code(), Some(2));

    let o = rbandit(&["bench", "no-such-preset"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn io_errors_exit_one() {
    let o = rbandit(&["run", "--config", "/nonexistent/cfg.toml"]);
    assert_eq!(o.status.code(), Some(1));

    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "small.toml", SMALL);
    let out = dir.path().join("missing-dir/out.csv");
    let o = rbandit(&["run", "--config", cfg.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn overrides_change_the_run() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "small.toml", SMALL);
    let o = rbandit(&[
        "run", "--config", cfg.to_str().unwrap(), "--horizon", "150", "--seed-count", "3",
        "--learner", "ucb", "--adversary", "null",
    ]);
    // null takes no budget, so the leftover budget from the file is rejected
    assert_eq!(o.status.code(), Some(2));

    let o = rbandit(&[
        "run", "--config", cfg.to_str().unwrap(), "--horizon", "150", "--seed-count", "3",
        "--learner", "exp3",
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = String::from_utf8(o.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    // checkpoints 100 and 150 (200 is beyond the horizon)
    assert_eq!(lines.len(), 1 + 3 * 2, "{text}");
    assert!(lines[1].contains(",exp3,"));
}

#[test]
fn bench_runs_a_shrunk_preset() {
    let o = rbandit(&["bench", "optimal-survival", "--horizon", "500", "--seed-count", "2", "--format", "json"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let doc: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(doc["experiment_id"], "optimal-survival");
    assert_eq!(doc["horizon"], 500);
    assert!(String::from_utf8_lossy(&o.stderr).contains("2/2 episodes completed"));

    let o = rbandit(&["presets"]);
    assert!(String::from_utf8_lossy(&o.stdout).contains("attack-vs-aae"));
}
