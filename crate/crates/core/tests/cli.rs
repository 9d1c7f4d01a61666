use std::process::Command;

use weilsum::suite::{run_suite, Format, Grid, Status, SuiteConfig, SuiteReport, SUITES};

fn weilsum(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_weilsum")).args(args).output().expect("run weilsum")
}

#[test]
fn every_default_suite_passes() {
    for s in SUITES {
        let r = run_suite(s, &SuiteConfig::default()).unwrap();
        let bad: Vec<_> = r.failures().map(|r| (&r.check_id, &r.params, &r.got)).collect();
        assert!(bad.is_empty(), "{s}: {bad:?}");
        assert!(!r.rows.is_empty(), "{s} has no rows");
    }
}

#[test]
fn reports_are_reproducible_up_to_timestamp() {
    let dir = std::env::temp_dir().join(format!("weilsum-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let (a, b) = (dir.join("a.json"), dir.join("b.json"));
    for (path, jobs) in [(&a, 1), (&b, 4)] {
        let cfg = SuiteConfig { out: Some(path.clone()), jobs, ..Default::default() };
        run_suite("identities", &cfg).unwrap();
    }
    let read = |p: &std::path::Path| {
        let mut r: SuiteReport = serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap();
        r.generated_at = 0;
        serde_json::to_string(&r).unwrap()
    };
    assert_eq!(read(&a), read(&b));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn reports_pin_field_models() {
    let r = run_suite("su-traces", &SuiteConfig::default()).unwrap();
    let gf9 = r.fields.iter().find(|f| f.p == 3 && f.f == 2).unwrap();
    assert_eq!(gf9.modulus, vec![1, 0, 1]);
    assert_eq!(gf9.generator.len(), 2);
}

#[test]
fn grid_overrides_and_validation() {
    let grid = Grid { p: Some(3), q: Some(3), n: Some(2), m: Some(1), ..Default::default() };
    let r = run_suite("vdgv", &SuiteConfig { grid, ..Default::default() }).unwrap();
    assert!(r.passed());
    assert!(r.rows.iter().all(|r| r.params.starts_with("q=3 n=2 m=1")));
    let bad = Grid { q: Some(6), n: Some(2), m: Some(1), ..Default::default() };
    assert!(run_suite("sp-traces", &SuiteConfig { grid: bad, ..Default::default() }).is_err());
    let partial = Grid { q: Some(3), ..Default::default() };
    assert!(run_suite("su-traces", &SuiteConfig { grid: partial, ..Default::default() }).is_err());
}

#[test]
fn csv_is_a_projection_of_json() {
    let r = run_suite("gauss", &SuiteConfig::default()).unwrap();
    let csv = r.render(Format::Csv).unwrap();
    let mut rd = csv::Reader::from_reader(csv.as_bytes());
    let rows: Vec<csv::StringRecord> = rd.records().map(|x| x.unwrap()).collect();
    assert_eq!(rows.len(), r.rows.len());
    for (c, j) in rows.iter().zip(&r.rows) {
        assert_eq!(&c[0], j.check_id);
        assert_eq!(&c[4], if j.status == Status::Pass { "pass" } else { "fail" });
    }
}

#[test]
fn cli_verify_exit_codes() {
    let ok = weilsum(&["verify", "stickelberger", "--format", "csv"]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&ok.stdout).starts_with("check_id,params,expected,got,status"));
    let unknown = weilsum(&["verify", "nonsense"]);
    assert_eq!(unknown.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&unknown.stderr).contains("unknown suite"));
    let dry = weilsum(&["verify", "all", "--dry-run"]);
    assert_eq!(dry.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&dry.stdout).unwrap();
    assert!(v["rows"].as_array().unwrap().iter().all(|r| r["status"] == "planned"));
}

#[test]
fn cli_grid_file() {
    let path = std::env::temp_dir().join(format!("weilsum-grid-{}.json", std::process::id()));
    std::fs::write(&path, r#"{"q": 5}"#).unwrap();
    let out = weilsum(&["verify", "stickelberger", "--grid", path.to_str().unwrap(), "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.lines().skip(1).all(|l| l.contains("q=5")));
    std::fs::write(&path, r#"{"bogus": 1}"#).unwrap();
    let out = weilsum(&["verify", "stickelberger", "--grid", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    std::fs::remove_file(&path).ok();
}

#[test]
fn cli_subcommands() {
    let out = weilsum(&["gauss", "--p", "3", "--f", "2", "--chi-order", "4"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v["sums"].as_array().unwrap().iter().all(|s| s["abs_square"] == "9"));

    let out = weilsum(&["trace", "--preset", "sp", "--p", "3", "--f", "2", "--n", "2", "--m", "1"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 9);
    assert!(rows.iter().all(|r| r["memberships"]["K"] == true));

    let out = weilsum(&["moments", "--A", "5", "--B", "2", "--p", "3", "--tower", "2"]);
    assert_eq!(String::from_utf8_lossy(&out.stdout), "field_size,empirical_num,empirical_den,predicted\n9,8,9,1\n");

    let out = weilsum(&["weil", "--group", "gu", "--n", "2", "--q", "3"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["order"], 96);
    assert_eq!(v["inner_product"], "4");

    let out = weilsum(&["hyperg", "--q", "2", "--n", "3", "--m", "1", "--context", "su"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["passed"], true);

    let out = weilsum(&["hyperg", "grid"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn catalog_override() {
    let out = Command::new(env!("CARGO_BIN_EXE_weilsum"))
        .args(["weil", "--group", "sp", "--n", "1", "--q", "3"])
        .env("WEILSUM_CATALOG", "/nonexistent/catalog.json")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}
