use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn zoo(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../zoo").join(name)
}

fn elastika(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_elastika")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn scratch(name: &str) -> PathBuf {
    let d = std::env::temp_dir().join(format!("elastika-cli-{}-{name}", std::process::id()));
    let _ = std::fs::remove_dir_all(&d);
    std::fs::create_dir_all(&d).unwrap();
    d
}

#[test]
fn invariants_of_numerical_and_free() {
    let o = elastika(&["invariants", zoo("n23.json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("ρ(H) = 3/2"), "{s}");
    assert!(s.contains("r = 3/2"), "{s}");
    let o = elastika(&["invariants", zoo("free.json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("ρ(H) = 1 "));
}

#[test]
fn malformed_and_missing_files_exit_1() {
    let d = scratch("bad");
    let bad = d.join("bad.json");
    std::fs::write(&bad, "{ \"kind\": \"numerical\", \"gens\": [2, 3], \"extra\": 1 }").unwrap();
    assert_eq!(elastika(&["invariants", bad.to_str().unwrap()]).status.code(), Some(1));
    std::fs::write(&bad, "not json").unwrap();
    assert_eq!(elastika(&["invariants", bad.to_str().unwrap()]).status.code(), Some(1));
    assert_eq!(elastika(&["invariants", d.join("absent.json").to_str().unwrap()]).status.code(), Some(1));
}

#[test]
fn element_lengths_and_non_member() {
    let n23 = zoo("n23.json");
    let o = elastika(&["element", n23.to_str().unwrap(), "12"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("L = {4,5,6}"), "{s}");
    assert!(s.contains("ρ = 3/2"), "{s}");
    let o = elastika(&["element", n23.to_str().unwrap(), "0"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("L = {0}"));
    assert!(stdout(&o).contains("ρ = 1"));
    assert_eq!(elastika(&["element", n23.to_str().unwrap(), "1"]).status.code(), Some(2));
}

#[test]
fn strict_config_and_positive_bounds() {
    let d = scratch("cfg");
    let cfg = d.join("run.json");
    std::fs::write(&cfg, "{ \"bound\": 10, \"colour\": 1 }").unwrap();
    let n23 = zoo("n23.json");
    let o = elastika(&["--config", cfg.to_str().unwrap(), "spectrum", n23.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(elastika(&["spectrum", n23.to_str().unwrap(), "--bound", "0"]).status.code(), Some(2));
    std::fs::write(&cfg, "{ \"bound\": 10 }").unwrap();
    let o = elastika(&["--config", cfg.to_str().unwrap(), "spectrum", n23.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("up to 10"));
}

#[test]
fn verify_examples() {
    let o = elastika(&["verify", "thm3", zoo("sfp2.json").to_str().unwrap(), "--bound", "20"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("PASS\n"));
    let o = elastika(&["verify", "thm1_1", zoo("tblock_z2.json").to_str().unwrap(), "--kmax", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    for (k, rho) in (1..=5).zip(2..=6) {
        assert!(s.contains(&format!("k = {k}: ρ(c_k d_k) = {rho},")), "{s}");
    }
    let o = elastika(&["verify", "lemma3_2", "--random", "1000", "--seed", "7"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("0 failures"));
    let o = elastika(&["verify", "thm2", zoo("desk.json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("r = 1: fully elastic"));
    let o = elastika(&["verify", "prop4_1", zoo("n23.json").to_str().unwrap(), "--denoms", "5"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn incompatible_pairings_exit_2() {
    assert_eq!(elastika(&["verify", "thm1_1", zoo("n23.json").to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(elastika(&["verify", "thm3", zoo("desk.json").to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(elastika(&["verify", "thm2", zoo("sfp2.json").to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(elastika(&["verify", "thm2"]).status.code(), Some(2));
}

#[test]
fn unresolved_limit_points_exit_3() {
    let o = elastika(&["verify", "thm3", zoo("n23.json").to_str().unwrap(), "--bound", "30"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).ends_with("UNRESOLVED\n"));
}

#[test]
fn budget_exhaustion_exits_3() {
    let o = elastika(&["element", zoo("n345.json").to_str().unwrap(), "600", "--budget", "3"]);
    assert_eq!(o.status.code(), Some(3), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn csv_output_is_deterministic() {
    let runs: Vec<PathBuf> = ["a", "b"].iter().map(|n| scratch(&format!("csv-{n}"))).collect();
    for d in &runs {
        let desk = zoo("desk.json");
        for args in [
            vec!["verify", "thm2", desk.to_str().unwrap()],
            vec!["verify", "prop3_8", desk.to_str().unwrap(), "--kmax", "2"],
            vec!["spectrum", desk.to_str().unwrap(), "--bound", "12"],
        ] {
            let mut full = args.clone();
            full.extend(["--out", d.to_str().unwrap()]);
            assert_eq!(elastika(&full).status.code(), Some(0), "{args:?}");
        }
    }
    for name in ["fully_elastic.csv", "nice_pairs.csv", "spectrum.csv", "spectrum_plot.csv"] {
        let a = std::fs::read(runs[0].join(name)).unwrap();
        let b = std::fs::read(runs[1].join(name)).unwrap();
        assert!(!a.is_empty());
        assert_eq!(a, b, "{name}");
    }
    let head = std::fs::read_to_string(runs[0].join("spectrum.csv")).unwrap();
    assert!(head.starts_with("value_num,value_den,witness,min_len,max_len\n"));
}

#[test]
fn oracle_agrees() {
    let o = elastika(&["oracle", zoo("desk.json").to_str().unwrap(), "12,3"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).ends_with("PASS\n"));
}
