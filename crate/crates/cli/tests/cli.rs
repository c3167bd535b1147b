use std::process::{Command, Output};

fn magchain(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_magchain"))
        .args(args)
        .output()
        .expect("binary runs")
}

#[test]
fn ring_energy_to_stdout() {
    let out = magchain(&["ring-energy", "--n", "10"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("kind,row,n,index,discrete_energy,"));
    let row = lines.next().unwrap();
    assert!(row.starts_with("ring-energy,point,10,0,-2.27223687455"));
    assert!(row.ends_with(",true"));
}

#[test]
fn sweep_file_output_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for p in [&a, &b] {
        let out = magchain(&["sweep", "--format", "json", "--out", p.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0));
    }
    let bytes = std::fs::read(&a).unwrap();
    assert_eq!(bytes, std::fs::read(&b).unwrap());
    let v: serde_json::Value = serde_json::from_slice(&bytes).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 8);
    assert_eq!(v[7]["row"], "summary");
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    std::fs::write(&cfg, r#"{"kind": "align", "runs": 2, "ns": [12]}"#).unwrap();
    let out = magchain(&["align", "--config", cfg.to_str().unwrap(), "--seed", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(rows.len(), 2);
    assert!(rows[0].starts_with("align,point,12,4,"));
    assert!(rows[1].starts_with("align,point,12,5,"));
}

#[test]
fn failed_check_exits_one() {
    let out = magchain(&["ring-energy", "--n", "10", "--tolerance", "1e-6"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8(out.stdout).unwrap().contains(",false"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(magchain(&["nonsense"]).status.code(), Some(2));
    assert_eq!(magchain(&["modes", "--n", "8"]).status.code(), Some(2));
    assert_eq!(magchain(&["sweep", "--a", "-1"]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    std::fs::write(&cfg, r#"{"kind": "modes"}"#).unwrap();
    assert_eq!(magchain(&["sweep", "--config", cfg.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn help_documents_columns() {
    let out = magchain(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("per_magnet_error"));
    assert!(text.contains("omega_discrete"));
    assert!(text.contains("Exit codes"));
}
