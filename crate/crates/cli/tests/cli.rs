use std::process::{Command, Output};

use clap::Parser;
use lgcy_cli::{render, run, Cli, Format, Report};
use serde_json::Value;

fn lgcy(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lgcy"))
        .args(args)
        .env_remove("LGCY_ORDER")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn analyze_quintic() {
    let out = lgcy(&["analyze", "x1^5+x2^5+x3^5+x4^5+x5^5"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["command"], "analyze");
    assert_eq!(v["d"], "5");
    assert_eq!(v["groupOrder"], "3125");
    assert_eq!(v["centralCharge"], "3");
    let degrees: Vec<&str> = v["sectors"].as_array().unwrap().iter().map(|s| s["degree"].as_str().unwrap()).collect();
    assert_eq!(degrees, ["3", "0", "2", "4", "6"]);
}

#[test]
fn analyze_e7() {
    let v = json(&lgcy(&["analyze", "x^3+x*y^3"]));
    assert_eq!(v["d"], "9");
    assert_eq!(v["charges"], serde_json::json!(["1/3", "2/9"]));
}

#[test]
fn analyze_rejects_non_unique_charges() {
    let out = lgcy(&["analyze", "x*y"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("not uniquely"));
}

#[test]
fn invariants_default_order() {
    let out = lgcy(&["invariants"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["ok"], true);
    let primary: Vec<&str> = v["invariants"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|r| r["kind"] == "primary")
        .map(|r| r["value"].as_str().unwrap())
        .collect();
    assert_eq!(primary.last(), Some(&"1325636544/1220703125"));
    assert_eq!(v["golden"].as_array().unwrap().len(), 20);
    let tau6 = v["inverseMirrorMap"].as_array().unwrap().iter().find(|c| c["exponent"] == 6).unwrap();
    assert_eq!(tau6["value"], "-13/1125000");
}

#[test]
fn invariants_h_max_zero() {
    let out = lgcy(&["invariants", "--h-max", "0", "--format", "csv"]);
    assert_eq!(code(&out), 0);
    assert_eq!(String::from_utf8_lossy(&out.stdout), "n,kind,value\n3,primary,1/5\n4,descendant,1/5\n");
}

#[test]
fn invariants_insufficient_order() {
    let out = lgcy(&["invariants", "--order", "10", "--h-max", "3"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("need series order"));
}

#[test]
fn umatrix_default() {
    let out = lgcy(&["umatrix"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert!(v["symplecticDeviation"].as_f64().unwrap() < 1e-10);
    let rows = v["matrix"]["entries"].as_array().unwrap();
    assert_eq!(rows.len(), 4);
    for (r, row) in rows.iter().enumerate() {
        let row = row.as_array().unwrap();
        assert_eq!(row.len(), 4);
        for (k, e) in row.iter().enumerate() {
            assert_eq!(e["zPower"].as_i64().unwrap(), k as i64 - r as i64);
        }
    }
}

#[test]
fn umatrix_tight_tolerance_fails_check() {
    let out = lgcy(&["umatrix", "--tolerance", "1e-15"]);
    assert_eq!(code(&out), 1);
    assert_eq!(json(&out)["ok"], false);
}

#[test]
fn flag_validation() {
    assert_eq!(code(&lgcy(&["umatrix", "--tolerance", "1e-5"])), 2);
    assert_eq!(code(&lgcy(&["umatrix", "--tolerance", "0"])), 2);
    assert_eq!(code(&lgcy(&["pf-check", "--order", "4"])), 2);
    assert_eq!(code(&lgcy(&["pf-check", "--q-order", "3"])), 2);
    assert_eq!(code(&lgcy(&["untwisted", "--a", "0,0,0", "--h", "1,1,5"])), 2);
}

#[test]
fn order_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_lgcy"))
        .args(["ifunction"])
        .env("LGCY_ORDER", "12")
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["order"], 12);
    assert!(v["entries"].as_array().unwrap().iter().all(|e| e["exponent"].as_u64().unwrap() < 12));
}

#[test]
fn pf_check_passes() {
    let out = lgcy(&["pf-check", "--order", "30", "--format", "pretty"]);
    assert_eq!(code(&out), 0);
    assert!(String::from_utf8_lossy(&out.stdout).contains("all residuals vanish"));
}

#[test]
fn untwisted_and_grr() {
    let v = json(&lgcy(&["untwisted", "--a", "2,1,0,0,0,0", "--h", "1,1,1,1,1,3"]));
    assert_eq!(v["value"], "3");
    let out = lgcy(&["grr", "--theta", "2/5", "--degree", "1", "--format", "csv"]);
    let text = String::from_utf8_lossy(&out.stdout).to_string();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "h,class,marking,theta,coefficient");
    assert_eq!(lines[1], "1,kappa,,,1/300");
    assert_eq!(lines[2], "1,psi,1,,11/300");
    assert_eq!(lines[3], "1,boundary,,0,5/24");
    assert_eq!(code(&lgcy(&["grr", "--theta", "1/3"])), 2);
}

#[test]
fn gw_mirror_instantons() {
    let v = json(&lgcy(&["gw-mirror", "--q-order", "6"]));
    assert_eq!(v["integral"], true);
    let n: Vec<&str> = v["instantonNumbers"].as_array().unwrap().iter().map(|c| c["value"].as_str().unwrap()).collect();
    assert_eq!(&n[..3], ["2875", "609250", "317206375"]);
}

#[test]
fn output_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("u.json");
    let out = lgcy(&["umatrix", "--output", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["command"], "umatrix");
}

#[test]
fn reports_round_trip() {
    let invocations: [&[&str]; 8] = [
        &["lgcy", "analyze", "x^2*y+y^3"],
        &["lgcy", "--order", "12", "ifunction"],
        &["lgcy", "--q-order", "6", "ifunction", "--side", "gw"],
        &["lgcy", "--order", "20", "--q-order", "6", "pf-check"],
        &["lgcy", "--order", "20", "--h-max", "2", "invariants"],
        &["lgcy", "untwisted", "--a", "0,0,0", "--h", "1,1,0"],
        &["lgcy", "grr", "--theta", "2/5,3/5"],
        &["lgcy", "umatrix"],
    ];
    for args in invocations {
        let cli = Cli::try_parse_from(args).unwrap();
        let report = run(&cli.config, &cli.command).unwrap();
        let back: Report = serde_json::from_str(&render(&report, Format::Json)).unwrap();
        assert_eq!(back, report, "{args:?}");
    }
}
