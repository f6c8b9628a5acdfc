use std::path::PathBuf;
use std::process::{Command, Output};

fn evsc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_evsc"))
        .args(args)
        .env_remove("EVSC_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../core/fixtures")
        .join(name)
}

#[test]
fn sextic_counts_csv() {
    let o = evsc(&[
        "compute",
        "--space",
        "1,1,1,1,2|6",
        "--genus",
        "counts",
        "--max-degree",
        "2",
        "--format",
        "csv",
    ]);
    assert!(o.status.success());
    assert_eq!(
        stdout(&o),
        "d,kind,value\n1,n,7884\n1,m,0\n2,n,6028452\n2,m,7884\n"
    );
}

#[test]
fn genus_one_cell_json() {
    let o = evsc(&[
        "compute",
        "--space",
        "1,1,1,2|4",
        "--genus",
        "1",
        "--max-degree",
        "2",
        "--insertions",
        "2=2",
    ]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let gw = v["results"]
        .as_array()
        .unwrap()
        .iter()
        .find(|r| r["kind"] == "gw")
        .unwrap();
    assert_eq!(gw["d"], 2);
    assert_eq!(gw["value"], "4");
}

#[test]
fn malformed_space_exits_2() {
    let o = evsc(&["compute", "--space", "1,1,x"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("cannot parse space"));
}

#[test]
fn unknown_genus_exits_2() {
    assert_eq!(
        evsc(&["compute", "--space", "1,1,1,2|4", "--genus", "2"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn verify_passes_on_stored_table() {
    let path = fixture("ci_22_5_genus1.json");
    let o = evsc(&["verify", "--fixtures", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("0 mismatches"));
}

#[test]
fn verify_flags_perturbed_table() {
    let text = std::fs::read_to_string(fixture("ci_22_5_genus1.json")).unwrap();
    let mut v: serde_json::Value = serde_json::from_str(&text).unwrap();
    v["results"][0]["value"] = "12345".into();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, serde_json::to_string(&v).unwrap()).unwrap();
    let o = evsc(&["verify", "--fixtures", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("MISMATCH"));
}

#[test]
fn verify_missing_fixtures_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("nope");
    assert_eq!(
        evsc(&["verify", "--fixtures", missing.to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        evsc(&["verify", "--fixtures", dir.path().to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn cache_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let o = evsc(&[
        "compute",
        "--space",
        "1,1,1,1,1|2,2",
        "--genus",
        "1",
        "--max-degree",
        "1",
        "--cache-dir",
        d,
    ]);
    assert!(o.status.success());
    let list = stdout(&evsc(&["cache", "--cache-dir", d, "list"]));
    let key = list
        .lines()
        .find(|l| l.starts_with("g1|"))
        .unwrap()
        .split('\t')
        .next()
        .unwrap()
        .to_string();
    let got = evsc(&["cache", "--cache-dir", d, "get", &key]);
    assert_eq!(stdout(&got).trim(), "-2");
    // a second run reads the cached values and agrees
    let again = evsc(&[
        "compute",
        "--space",
        "1,1,1,1,1|2,2",
        "--genus",
        "1",
        "--max-degree",
        "1",
        "--cache-dir",
        d,
    ]);
    assert_eq!(stdout(&again), stdout(&o));
    assert!(evsc(&["cache", "--cache-dir", d, "clear"]).status.success());
    assert_eq!(
        evsc(&["cache", "--cache-dir", d, "get", &key])
            .status
            .code(),
        Some(2)
    );
}
