use std::fs;
use std::process::{Command, Output};

fn bpa(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bpa")).args(args).output().expect("spawn bpa")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn lines(args: &[&str]) -> Vec<String> {
    let out = bpa(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    stdout(&out).lines().map(str::to_owned).collect()
}

#[test]
fn table_plain_matches_golden() {
    let golden = include_str!("golden/table_r_5_8.txt");
    let out = bpa(&["table", "r", "5", "8", "plain"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), golden);
    assert_eq!(stdout(&bpa(&["table", "r", "5", "8", "--format", "plain"])), golden);
}

#[test]
fn table_csv_and_json() {
    assert_eq!(lines(&["table", "r", "0", "0", "csv"]), ["m,0", "0,1"]);
    let out = bpa(&["table", "s", "2", "4", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["kind"], "s");
    let values = v["values"].as_array().unwrap();
    assert_eq!(values.len(), 3);
    for row in values {
        assert_eq!(row[0], "0");
    }
    assert_eq!(values[1][3], "18");
}

#[test]
fn compute_records() {
    let all = lines(&["compute", "r", "2", "2", "all"]);
    assert_eq!(all.len(), 4);
    assert!(all[..3].iter().all(|l| l.starts_with("r(2,2) = 15 ")));
    assert_eq!(all[3], "verdict: OK");
    let s = lines(&["compute", "s", "1", "2", "all"]);
    assert!(s[..3].iter().all(|l| l.starts_with("s(1,2) = 2 ")));
    assert!(lines(&["compute", "r", "0", "0"])[0].starts_with("r(0,0) = 1 "));

    let out = bpa(&["compute", "r", "3", "3", "egf", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["records"][0]["value"], "184");
    assert_eq!(v["records"][0]["method"], "egf");
    assert!(v["records"][0].get("elapsed").is_none());
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(bpa(&["compute", "r", "1", "1", "first-blocks"]).status.code(), Some(2));
    assert_eq!(bpa(&["compute", "q", "1", "1"]).status.code(), Some(2));
    assert_eq!(bpa(&["compute", "r", "1", "1", "magic"]).status.code(), Some(2));
    assert_eq!(bpa(&["enumerate", "pa", "1", "2"]).status.code(), Some(2));
    assert_eq!(bpa(&["series", "convergent", "0"]).status.code(), Some(2));
    assert_eq!(bpa(&["nonsense"]).status.code(), Some(2));
}

#[test]
fn enumerate_lists() {
    assert_eq!(lines(&["enumerate", "bpa", "2", "1"]), ["1||", "|1|", "||1", "total 3"]);
    assert_eq!(lines(&["enumerate", "pa", "2"]), ["1 2", "1,2", "2,1", "total 3"]);
    assert_eq!(lines(&["enumerate", "special", "1", "1"]), ["total 0"]);
    assert_eq!(lines(&["enumerate", "pa", "3", "--limit", "2"]), ["1 2 3", "1 2,3", "total 13"]);
}

#[test]
fn enumerate_guard() {
    let out = bpa(&["enumerate", "bpa", "5", "8"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--force"));
    let limited = lines(&["enumerate", "bpa", "5", "8", "--limit", "1"]);
    assert_eq!(limited, ["1 2 3 4 5 6 7 8|||||", "total 289366860"]);
}

#[test]
fn verify_reports() {
    let out = bpa(&["verify", "5", "8"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).ends_with("status: pass\n"));
    let out = bpa(&["verify", "3", "5", "--oracle", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["status"], "pass");
    let checks = v["checks"].as_array().unwrap();
    assert!(checks.iter().any(|c| c["name"] == "enumeration count s"));
    for c in checks {
        let keys: Vec<_> = c.as_object().unwrap().keys().cloned().collect();
        assert_eq!(keys, ["name", "range", "status"]);
    }
    assert_eq!(bpa(&["verify", "3", "3", "--bijections"]).status.code(), Some(0));
}

#[test]
fn series_outputs() {
    let conv = lines(&["series", "convergent", "8", "--terms", "20"]);
    assert!(conv.iter().any(|l| l.starts_with("value") && l.ends_with("545835.000000000000")), "{conv:?}");
    assert!(conv.iter().any(|l| l == "rounds_to_exact  true"));
    let gross = lines(&["series", "gross", "0"]);
    assert!(gross.iter().any(|l| l.starts_with("value") && l.contains("0.9999")), "{gross:?}");
    let asymp = lines(&["series", "asymp", "20"]);
    assert!(asymp.iter().any(|l| l.starts_with("ratio_exact_to_leading") && l.contains("1.0000000000")));
    let barred = lines(&["series", "gross", "2", "5", "--bits", "128", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&barred.join("\n")).unwrap();
    assert_eq!(v["exact"], "7803");
    assert_eq!(v["rounds_to_exact"], "true");
    let traced = lines(&["series", "convergent", "3", "--terms", "2", "--trace"]);
    assert_eq!(traced.iter().skip_while(|l| *l != "terms:").count(), 4);
}

#[test]
fn bfile_format() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("b.txt");
    let p = path.to_str().unwrap();
    assert!(bpa(&["bfile", "r", "0", "8", p]).status.success());
    let text = fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("0 1\n1 1\n2 3\n"));
    assert!(text.ends_with("8 545835\n"));
    assert!(bpa(&["bfile", "r", "1", "3", p]).status.success());
    assert_eq!(fs::read_to_string(&path).unwrap(), "0 1\n1 2\n2 8\n3 44\n");
    assert!(bpa(&["bfile", "s", "1", "0", p]).status.success());
    assert_eq!(fs::read_to_string(&path).unwrap(), "0 0\n");
    let bad = dir.path().join("missing").join("b.txt");
    let out = bpa(&["bfile", "r", "0", "3", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("missing"));
}

#[test]
fn cache_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("values.cache");
    let c = cache.to_str().unwrap();
    let first = lines(&["compute", "r", "4", "7", "--cache", c]);
    assert!(first[0].starts_with("r(4,7) = 7608305  [recurrence"));
    assert_eq!(fs::read_to_string(&cache).unwrap(), "bpa-cache 1\nr 4 7 7608305\n");
    let second = lines(&["compute", "r", "4", "7", "--cache", c]);
    assert!(second[0].starts_with("r(4,7) = 7608305  [cache"), "{second:?}");
    lines(&["compute", "s", "1", "3", "all", "--cache", c]);
    assert_eq!(fs::read_to_string(&cache).unwrap(), "bpa-cache 1\nr 4 7 7608305\ns 1 3 18\n");

    fs::write(&cache, "bpa-cache 1\nr 4 7 7608306\n").unwrap();
    let out = bpa(&["compute", "r", "4", "7", "--cache", c]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("7608306"));
}

#[test]
fn output_is_deterministic_in_machine_formats() {
    let a = bpa(&["compute", "r", "5", "8", "all", "--format", "json"]);
    let b = bpa(&["compute", "r", "5", "8", "all", "--format", "json"]);
    assert_eq!(a.stdout, b.stdout);
}
