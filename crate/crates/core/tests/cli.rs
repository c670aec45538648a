use std::process::Command;

fn qduality() -> Command {
    Command::new(env!("CARGO_BIN_EXE_qduality"))
}

#[test]
fn examples_subcommand_passes() {
    let out = qduality().arg("examples").output().unwrap();
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(out.status.success(), "{stdout}");
    assert!(stdout.contains("5 cases, 5 pass, 0 fail"), "{stdout}");
}

#[test]
fn verify_writes_reports() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("run.toml");
    std::fs::write(
        &config,
        "mode = \"confluent\"\nsamples = 6\nseed = 3\n[sweep]\nq = [0.2, 0.5]\n",
    )
    .unwrap();
    let out_path = dir.path().join("out.json");
    let out = qduality()
        .args(["verify", "--config"])
        .arg(&config)
        .arg("--out")
        .arg(&out_path)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
    let report: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    assert_eq!(report["cases"].as_array().unwrap().len(), 6);
    assert_eq!(report["summary"]["n_fail"], 0);
    let lines = std::fs::read_to_string(out_path.with_extension("jsonl")).unwrap();
    assert_eq!(lines.lines().count(), 7);
}

#[test]
fn beta_and_alpha_on_fixed_parameters() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("fixed.toml");
    std::fs::write(
        &config,
        "mode = \"beta\"\n[params]\nq = [0.3, 0.0]\na = [[0.17, 0.0], [0.59, 0.0], [1.13, 0.0]]\n\
         b = [[0.23, 0.0], [0.71, 0.0], [1.37, 0.0]]\nm = [0, 1, 1]\nn = [0, 0, 1]\nt = 1\n",
    )
    .unwrap();
    let out = qduality().args(["beta", "--config"]).arg(&config).output().unwrap();
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(
        out.status.success(),
        "{stdout} {}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(stdout.contains("1.51144952161"), "{stdout}");
    assert_eq!(stdout.lines().count(), 3);

    let out = qduality()
        .args(["alpha", "--k", "0", "--config"])
        .arg(&config)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
    let out = qduality()
        .args(["alpha", "--k", "-1", "--config"])
        .arg(&config)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn config_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("bad.toml");
    std::fs::write(&config, "mode = \"theorem1\"\n[sweep]\nq = [0.5, 1.5]\n").unwrap();
    let out = qduality().args(["verify", "--config"]).arg(&config).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("sweep.q"));
    let out = qduality()
        .args(["verify", "--config", "/nonexistent/run.toml"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn shipped_configs_parse() {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("configs");
    for entry in std::fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        qduality::cli::parse_config(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    }
}
