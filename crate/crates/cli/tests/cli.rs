use std::fs;
use std::path::Path;
use std::process::{Command, Output};

const SMALL: &str = "band = \"ka\"\nue_count = 60\nserving_satellites = 2\nK = 30\nhorizon_s = 0.01\n";

fn beamhop(args: &[&str], envs: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_beamhop"));
    for (k, _) in std::env::vars().filter(|(k, _)| k.starts_with("BEAMHOP_")) {
        cmd.env_remove(k);
    }
    cmd.args(args).envs(envs.iter().copied()).output().expect("binary runs")
}

fn write_config(dir: &Path, text: &str) -> String {
    let p = dir.join("exp.toml");
    fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn single_run_writes_results() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), SMALL);
    let out = dir.path().join("out");
    let o = beamhop(&["--config", &cfg, "--out", out.to_str().unwrap(), "--scheduler", "distance_limit"], &[]);
    assert!(o.status.success(), "{}", stderr(&o));
    for f in ["manifest.toml", "summary.json", "seed_1/sinr_cdf.csv", "seed_1/throughput.csv", "seed_1/lifetime_cdf.csv", "seed_1/satisfaction.csv"] {
        assert!(out.join(f).is_file(), "{f} missing");
    }
    let summary: serde_json::Value = serde_json::from_str(&fs::read_to_string(out.join("summary.json")).unwrap()).unwrap();
    assert_eq!(summary["runs"].as_array().unwrap().len(), 1);
    let sat = summary["system_satisfaction"]["distance_limit"].as_f64().unwrap();
    assert!((0.0..=1.0).contains(&sat));
    let csv = fs::read_to_string(out.join("seed_1/sinr_cdf.csv")).unwrap();
    assert_eq!(csv.lines().next().unwrap(), "scheme,i_max,sinr_db,cdf");
    let last: f64 = csv.lines().last().unwrap().rsplit(',').next().unwrap().parse().unwrap();
    assert_eq!(last, 1.0);
}

#[test]
fn three_schemes_share_scene_and_rerun_identically() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), &format!("{SMALL}traffic = \"ftp3\"\narrival_rate = 200\n"));
    let a = dir.path().join("a");
    let o = beamhop(&["--config", &cfg, "--out", a.to_str().unwrap()], &[]);
    assert!(o.status.success(), "{}", stderr(&o));
    let summary: serde_json::Value = serde_json::from_str(&fs::read_to_string(a.join("summary.json")).unwrap()).unwrap();
    let runs = summary["runs"].as_array().unwrap();
    assert_eq!(runs.len(), 3);
    assert!(runs.iter().all(|r| r["scene_hash"] == runs[0]["scene_hash"]));

    let b = dir.path().join("b");
    let manifest = a.join("manifest.toml");
    let o = beamhop(&["--config", manifest.to_str().unwrap(), "--out", b.to_str().unwrap()], &[]);
    assert!(o.status.success(), "{}", stderr(&o));
    for f in ["summary.json", "seed_1/sinr_cdf.csv", "seed_1/throughput.csv", "seed_1/lifetime_cdf.csv", "seed_1/satisfaction.csv"] {
        assert_eq!(fs::read(a.join(f)).unwrap(), fs::read(b.join(f)).unwrap(), "{f} differs");
    }
    // Same output directory: the manifest is reproduced too.
    let o = beamhop(&["--config", manifest.to_str().unwrap()], &[]);
    assert!(o.status.success());
    assert_eq!(fs::read_to_string(&manifest).unwrap(), fs::read_to_string(a.join("manifest.toml")).unwrap());
}

#[test]
fn sweep_and_env_overrides() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), SMALL);
    let out = dir.path().join("sweep");
    let o = beamhop(
        &["--sweep-imax", "10,20,40,100", "--scheduler", "no_limit,round_robin"],
        &[("BEAMHOP_CONFIG", &cfg), ("BEAMHOP_OUT", out.to_str().unwrap()), ("BEAMHOP_SEED", "7,8"), ("BEAMHOP_WORKERS", "1")],
    );
    assert!(o.status.success(), "{}", stderr(&o));
    let summary: serde_json::Value = serde_json::from_str(&fs::read_to_string(out.join("summary.json")).unwrap()).unwrap();
    assert_eq!(summary["runs"].as_array().unwrap().len(), 16);
    assert!(out.join("seed_7").is_dir() && out.join("seed_8").is_dir());
    let manifest = fs::read_to_string(out.join("manifest.toml")).unwrap();
    assert!(manifest.contains("I_max = [10, 20, 40, 100]"), "{manifest}");
    assert!(manifest.contains("seed = [7, 8]"));
}

#[test]
fn config_errors_exit_2_and_name_the_key() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "band = \"ka\"\nD_km = -1\n");
    let o = beamhop(&["--config", &cfg], &[]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("D_km"), "{}", stderr(&o));

    let cfg = write_config(dir.path(), "band = \"ka\"\nbeam_count = 4\n");
    let o = beamhop(&["--config", &cfg], &[]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("beam_count"), "{}", stderr(&o));

    let cfg = write_config(dir.path(), "band = [\n");
    let o = beamhop(&["--config", &cfg], &[]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("malformed"), "{}", stderr(&o));

    let cfg = write_config(dir.path(), SMALL);
    let o = beamhop(&["--config", &cfg, "--scheduler", "fastest"], &[]);
    assert_eq!(o.status.code(), Some(2));
    let o = beamhop(&["--config", &cfg, "--sweep-imax", "0"], &[]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("I_max"));
}

#[test]
fn io_errors_exit_4_with_path() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("nope.toml");
    let o = beamhop(&["--config", missing.to_str().unwrap()], &[]);
    assert_eq!(o.status.code(), Some(4));
    assert!(stderr(&o).contains("nope.toml"));

    let cfg = write_config(dir.path(), SMALL);
    let blocker = dir.path().join("file");
    fs::write(&blocker, "x").unwrap();
    let out = blocker.join("out");
    let o = beamhop(&["--config", &cfg, "--out", out.to_str().unwrap()], &[]);
    assert_eq!(o.status.code(), Some(4), "{}", stderr(&o));
}

#[test]
fn empty_population_writes_headers_only() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "band = \"s\"\nue_count = 0\nhorizon_s = 0.002\n");
    let out = dir.path().join("o");
    let o = beamhop(&["--config", &cfg, "--out", out.to_str().unwrap()], &[]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(fs::read_to_string(out.join("seed_1/satisfaction.csv")).unwrap(), "scheme,i_max,ue_id,satisfaction\n");
    let summary: serde_json::Value = serde_json::from_str(&fs::read_to_string(out.join("summary.json")).unwrap()).unwrap();
    assert!(summary["system_satisfaction"].as_object().unwrap().is_empty());
}
