use std::process::{Command, Output};

use serde_json::Value;

fn dstab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dstab")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = dstab(args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn schema() -> Value {
    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/schema/report.schema.json")).unwrap();
    serde_json::from_str(&text).unwrap()
}

fn type_matches(v: &Value, ty: &str) -> bool {
    match ty {
        "object" => v.is_object(),
        "string" => v.is_string(),
        "integer" => v.is_i64() || v.is_u64(),
        "array" => v.is_array(),
        "boolean" => v.is_boolean(),
        "null" => v.is_null(),
        _ => false,
    }
}

fn conforms(report: &Value) {
    let s = schema();
    let obj = report.as_object().expect("object");
    for k in s["required"].as_array().unwrap() {
        assert!(obj.contains_key(k.as_str().unwrap()), "missing {k}");
    }
    let props = s["properties"].as_object().unwrap();
    for (k, v) in obj {
        let p = props.get(k).unwrap_or_else(|| panic!("unexpected key {k}"));
        if let Some(t) = p["type"].as_str() {
            assert!(type_matches(v, t), "{k} is not {t}");
        }
        if let Some(c) = p.get("const") {
            assert_eq!(v, c);
        }
    }
}

fn big_ints_are_safe(v: &Value) {
    match v {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                assert!(i.unsigned_abs() <= 1 << 53, "unsafe integer {i}");
            } else {
                assert!(n.as_u64().is_none_or(|u| u <= 1 << 53), "unsafe integer {n}");
            }
        }
        Value::Array(a) => a.iter().for_each(big_ints_are_safe),
        Value::Object(o) => o.values().for_each(big_ints_are_safe),
        _ => {}
    }
}

#[test]
fn admissible_genus_one() {
    let r = json(&["admissible", "--genus", "1"]);
    conforms(&r);
    assert_eq!(r["outputs"]["pairs"], serde_json::json!([[2, 2], [2, 3], [3, 2], [4, 2]]));
}

#[test]
fn zeta_from_counts() {
    let r = json(&["zeta", "from-counts", "--q", "2", "--g", "1", "--counts", "5", "--ds", "2"]);
    conforms(&r);
    assert_eq!(r["outputs"]["P"], serde_json::json!([1, 2, 2]));
    assert_eq!(r["outputs"]["ds"], Value::Bool(true));
}

#[test]
fn exit_codes() {
    let missing = dstab(&["admissible"]);
    assert_eq!(missing.status.code(), Some(2));
    let bad = dstab(&["admissible", "--genus", "0"]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("--genus"));
    let not_prime_power = dstab(&["carlitz", "phi", "--q", "6", "--M", "t"]);
    assert_eq!(not_prime_power.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&not_prime_power.stderr).contains("--q"));
    let impossible = dstab(&["zeta", "from-counts", "--q", "2", "--g", "1", "--counts", "99"]);
    assert_eq!(impossible.status.code(), Some(1));
    let split = dstab(&["drinfeld", "basechange", "--q", "2", "--n", "2", "--M", "t^2+t+1"]);
    assert_eq!(split.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&split.stderr).contains("(t+a)*(t+(a+1))"));
    assert_eq!(dstab(&["reproduce", "nonsense"]).status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    let args = ["howe", "interpolate", "--q", "3", "--seed", "7"];
    let a = dstab(&args);
    let b = dstab(&args);
    assert_eq!(a.stdout, b.stdout);
    let r: Value = serde_json::from_slice(&a.stdout).unwrap();
    conforms(&r);
    assert_eq!(r["seed"], 7);
    assert!(r.get("timing_ms").is_none());
    let one = dstab(&["enumerate", "--q", "2", "--g", "3", "--jobs", "1"]);
    let two = dstab(&["enumerate", "--q", "2", "--g", "3", "--jobs", "2"]);
    assert_eq!(one.stdout, two.stdout);
}

#[test]
fn large_integers_are_strings() {
    let r = json(&["family", "--name", "suzuki:2", "--m", "1"]);
    conforms(&r);
    big_ints_are_safe(&r);
    let p = r["outputs"]["zeta"]["P"].as_array().unwrap();
    assert!(p.iter().any(|c| c.is_string()));
}

#[test]
fn formats() {
    let csv = dstab(&["zeta", "from-counts", "--q", "2", "--g", "1", "--counts", "5", "--format", "csv"]);
    let text = String::from_utf8(csv.stdout).unwrap();
    assert!(text.starts_with("key,value\n"));
    assert!(text.contains("P,1 2 2\n"));
    let table = dstab(&["carlitz", "phi", "--q", "2", "--M", "t^2", "--format", "table"]);
    assert!(String::from_utf8(table.stdout).unwrap().contains("x^2+t*x+t"));
}

#[test]
fn reproduce_targets() {
    let r = json(&["reproduce", "admissible-g4", "carlitz-ex1", "elephant", "rank3-footnote"]);
    conforms(&r);
    assert_eq!(r["outputs"]["pass"], Value::Bool(true));
    let mismatch = dstab(&["reproduce", "basechange"]);
    assert_eq!(mismatch.status.code(), Some(1));
    let r: Value = serde_json::from_slice(&mismatch.stdout).unwrap();
    let row = &r["outputs"]["results"][0];
    assert_ne!(row["expected"], row["computed"]);
    assert!(row["note"].is_string());
}

#[test]
fn every_subcommand_has_help() {
    for args in [
        vec!["admissible"],
        vec!["zeta", "from-counts"],
        vec!["enumerate"],
        vec!["count"],
        vec!["family"],
        vec!["carlitz", "places"],
        vec!["drinfeld", "rank3-check"],
        vec!["howe", "cubic"],
        vec!["reproduce"],
    ] {
        let mut a = args.clone();
        a.push("--help");
        let out = dstab(&a);
        assert_eq!(out.status.code(), Some(0), "{args:?}");
        assert!(String::from_utf8_lossy(&out.stdout).contains("Usage"));
    }
}
