use std::path::Path;
use std::process::{Command, Output};

fn datastock(args: &[&str], out: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_datastock"))
        .args(args)
        .args(["--out", out.to_str().unwrap()])
        .output()
        .unwrap()
}

fn files(dir: &Path) -> Vec<String> {
    let mut v: Vec<String> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .collect();
    v.sort();
    v
}

#[test]
fn every_subcommand_writes_its_artifacts() {
    let cases: [(&[&str], &str); 6] = [
        (&["fit-penetration"], "fig_penetration.svg"),
        (&["stock", "--domain", "vision"], "vision_stock.csv"),
        (&["stock", "--domain", "language-high"], "table_hq_stock.csv"),
        (&["project", "--domain", "language-low"], "table_projection_language_low.csv"),
        (&["exhaustion", "--domain", "language-high"], "fig_exhaustion.svg"),
        (&["plot"], "fig_reddit_log.svg"),
    ];
    for (args, expected) in cases {
        let dir = tempfile::tempdir().unwrap();
        let mut full = args.to_vec();
        full.extend(["--trials", "200"]);
        let out = datastock(&full, dir.path());
        assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        let names = files(dir.path());
        assert!(names.contains(&expected.to_string()), "{args:?}: {names:?}");
        assert!(names.contains(&"manifest.json".to_string()));
    }
}

#[test]
fn plot_writes_only_figures() {
    let dir = tempfile::tempdir().unwrap();
    assert!(datastock(&["plot", "--trials", "100"], dir.path()).status.success());
    assert!(files(dir.path()).iter().all(|n| n.ends_with(".svg") || n == "manifest.json"));
}

#[test]
fn reproduce_from_manifest_is_byte_identical() {
    let first = tempfile::tempdir().unwrap();
    let out = datastock(&["reproduce-paper", "--trials", "300", "--seed", "5"], first.path());
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("table_exhaustion"));

    let second = tempfile::tempdir().unwrap();
    let manifest = first.path().join("manifest.json");
    let out = datastock(&["reproduce-paper", "--config", manifest.to_str().unwrap()], second.path());
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let names = files(first.path());
    assert_eq!(names, files(second.path()));
    assert_eq!(names.len(), 30);
    for n in &names {
        if n == "manifest.json" {
            continue;
        }
        assert_eq!(
            std::fs::read(first.path().join(n)).unwrap(),
            std::fs::read(second.path().join(n)).unwrap(),
            "{n}"
        );
    }
}

#[test]
fn bad_config_fails_with_a_message() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.toml");
    std::fs::write(&cfg, "trials = 10\nnot_a_key = 1\n").unwrap();
    let out = datastock(&["stock", "--config", cfg.to_str().unwrap()], &dir.path().join("out"));
    assert!(!out.status.success());
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.starts_with("error:") && err.contains("not_a_key"), "{err}");
    assert!(!dir.path().join("out").exists());
}

#[test]
fn unknown_domain_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let out = datastock(&["stock", "--domain", "audio"], dir.path());
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("audio"));
}
