use std::process::{Command, Output};

use serde_json::Value;

use dynbelyi::poly::Polynomial;
use dynbelyi::reduction::{BicriticalReport, ClassifierResult, PcfObstructionDiagnostic, ReductionReport};
use dynbelyi::heights::HeightReport;

fn dynbelyi(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dynbelyi"))
        .args(args)
        .env_remove("DYNBELYI_PRECISION_BITS")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn gen_text_and_json() {
    let out = dynbelyi(&["gen", "-d", "4", "-k", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "-3z^4 + 4z^3\n");
    let v = json(&dynbelyi(&["gen", "-d", "30", "-k", "12", "--format", "json"]));
    let f = Polynomial::from_json(&v["coefficients"]).unwrap();
    assert_eq!(f.to_string(), v["polynomial"].as_str().unwrap());
    assert_eq!(f, dynbelyi::generate(30, 12).unwrap().into_poly());
}

#[test]
fn verify_and_mirror() {
    assert_eq!(dynbelyi(&["verify", "-d", "18", "-k", "7"]).status.code(), Some(0));
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.txt");
    std::fs::write(&path, "-1144z^18 + 144144z^17 - 459459z^16 + 816816z^15 - 875160z^14 + 565488z^13 - 204204z^12 + 31824z^11\n").unwrap();
    let out = dynbelyi(&["verify", "-k", "7", "--poly", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stdout(&dynbelyi(&["mirror", "-d", "4", "-k", "2"])), "-3z^4 + 4z^3\n");
}

#[test]
fn reports_round_trip_through_their_types() {
    let v = json(&dynbelyi(&["reduce", "-d", "6", "-k", "2", "-p", "2"]));
    let r: ReductionReport = serde_json::from_value(v.clone()).unwrap();
    assert!(r.is_persistent_bad());
    assert_eq!(serde_json::to_value(&r).unwrap(), v);

    let v = json(&dynbelyi(&["classify", "-d", "18", "-p", "3"]));
    assert_eq!(v["possible"], Value::Bool(false));
    let c: ClassifierResult = serde_json::from_value(v.clone()).unwrap();
    assert_eq!(serde_json::to_value(&c).unwrap(), v);

    let v = json(&dynbelyi(&["prop32", "-d", "4", "-p", "3"]));
    let b: BicriticalReport = serde_json::from_value(v.clone()).unwrap();
    assert!(b.shape_ok);
    assert_eq!(serde_json::to_value(&b).unwrap(), v);

    let v = json(&dynbelyi(&["height", "-d", "4", "-k", "2"]));
    let h: HeightReport = serde_json::from_value(v).unwrap();
    assert!((h.height - 6f64.ln() / 4.0).abs() < 1e-14);
}

#[test]
fn witness_degree18_p7() {
    let v = json(&dynbelyi(&["witness", "-d", "18", "-p", "7"]));
    assert_eq!(v["k"], 4);
    assert_eq!(
        v["polynomial"],
        "2380z^18 - 10080z^17 + 16065z^16 - 11424z^15 + 3060z^14"
    );
    assert_eq!(v["report"]["verdict"], "PersistentBadReduction");
    assert_eq!(dynbelyi(&["witness", "-d", "16", "-p", "2"]).status.code(), Some(1));
}

#[test]
fn badprimes_is_a_json_array() {
    let v = json(&dynbelyi(&["badprimes", "-d", "18", "-k", "7"]));
    // C(17, 7) = 19448 = 2^3 * 11 * 13 * 17
    assert_eq!(v, serde_json::json!([2, 11, 13, 17]));
}

#[test]
fn table1_is_byte_stable() {
    let a = dynbelyi(&["table1"]);
    let b = dynbelyi(&["table1"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    assert!(text.contains(" 11  0   18   7   7  -19448z^18 + 144144z^17"));
    assert!(text.contains("erratum p=11 z^18: printed -1144, generated -19448"));
    assert!(text.contains("erratum p=13 z^16: printed -68615, generated -69615"));
    let v = json(&dynbelyi(&["table1", "--format", "json"]));
    assert_eq!(v["rows"].as_array().unwrap().len(), 6);
    assert_eq!(v["errata"].as_array().unwrap().len(), 2);
}

#[test]
fn sweep_heights_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sweep.csv");
    let out = dynbelyi(&["sweep-heights", "--k", "1..3", "--d", "100,20", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = std::fs::read_to_string(&path).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "d,k,height,ratio_binom,ratio_logd,interval_lo,interval_hi,precision_bits");
    let keys: Vec<String> = lines[1..]
        .iter()
        .map(|l| l.split(',').take(2).collect::<Vec<_>>().join(","))
        .collect();
    assert_eq!(keys, ["20,1", "20,2", "20,3", "100,1", "100,2", "100,3"]);
    let k1: f64 = lines[4].split(',').nth(4).unwrap().parse().unwrap();
    assert!((k1 - 1.0).abs() < 1e-12);
}

#[test]
fn diagnose_reads_text_and_json() {
    let dir = tempfile::tempdir().unwrap();
    let text = dir.path().join("f.txt");
    std::fs::write(&text, "z^2 + (1/3)z\n").unwrap();
    let v = json(&dynbelyi(&["diagnose", "-p", "3", "--poly", text.to_str().unwrap()]));
    let d: PcfObstructionDiagnostic = serde_json::from_value(v).unwrap();
    assert!(!d.trivial);
    assert_eq!(d.fixed_at_max, 1);

    let js = dir.path().join("f.json");
    std::fs::write(&js, "[[2, 1, 1], [3, 1, 1]]").unwrap();
    let v = json(&dynbelyi(&["diagnose", "-p", "5", "--poly", js.to_str().unwrap()]));
    assert_eq!(v["trivial"], true);

    std::fs::write(&js, "[[2, 2, 1]]").unwrap();
    assert_eq!(dynbelyi(&["diagnose", "-p", "5", "--poly", js.to_str().unwrap()]).status.code(), Some(1));
}

#[test]
fn usage_errors_exit_one() {
    for args in [
        &["gen", "-d", "4"][..],
        &["gen", "-d", "4", "-k", "3"],
        &["classify", "-d", "18", "-p", "6"],
        &["reduce", "-d", "1", "-k", "1", "-p", "2"],
        &["sweep-heights", "--k", "3..1", "--d", "50"],
        &["nope"],
    ] {
        assert_eq!(dynbelyi(args).status.code(), Some(1), "{args:?}");
    }
    assert_eq!(dynbelyi(&["--version"]).status.code(), Some(0));
}

#[test]
fn precision_env_var_raises_bits() {
    let out = Command::new(env!("CARGO_BIN_EXE_dynbelyi"))
        .args(["height", "-d", "20", "-k", "3"])
        .env("DYNBELYI_PRECISION_BITS", "300")
        .output()
        .unwrap();
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["precision_bits"], 300);
}
