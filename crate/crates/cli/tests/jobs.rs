use std::process::Command;

use num_bigint::BigInt;
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{json, Value};
use torilab_cli::output::*;
use torilab_cli::{canonical, execute, BudgetSpec, JobRequest, JobResult, Status};

fn job(command: &str, input: Value) -> JobRequest {
    JobRequest { command: command.into(), input, budget: BudgetSpec::default() }
}

fn ok(req: &JobRequest) -> Value {
    let r = execute(req);
    assert_eq!(r.status, Status::Ok, "{:?}", r.error);
    r.payload.unwrap()
}

fn sign_job() -> JobRequest {
    job(
        "cohom",
        json!({
            "group": {"cyclic": 2},
            "module": {"action": {"free_rank": 1, "generators": [{"element": 1, "matrix": [[-1]]}]}},
            "degree": 1
        }),
    )
}

fn sha_job() -> JobRequest {
    job("sha", json!({"torus": {"norm_one": [0]}, "datum": {"multiquadratic": [13, 17]}, "bound": 100}))
}

fn round_trip<T: Serialize + DeserializeOwned>(payload: &Value) {
    let typed: T = serde_json::from_value(payload.clone()).expect("payload matches its schema");
    assert_eq!(&serde_json::to_value(&typed).unwrap(), payload);
}

#[test]
fn sign_lattice_h1() {
    let p = ok(&sign_job());
    assert_eq!(p["shape"], json!([2]));
    assert_eq!(p["free_rank"], json!(0));
    round_trip::<CohomOut>(&p);
}

#[test]
fn glz_dim2_has_13_classes() {
    let p = ok(&job("glz subgroups", json!({"dim": 2})));
    assert_eq!(p["class_count"], json!(13));
    assert_eq!(p["undecided"], json!(0));
    round_trip::<GlzOut>(&p);
}

#[test]
fn biquadratic_norm_one_sha() {
    let p = ok(&sha_job());
    assert_eq!(p["shape"], json!([2]));
    assert_eq!(p["stabilized"], json!(true));
    round_trip::<ShaOut>(&p);
}

#[test]
fn sha2_job() {
    let mut req = sha_job();
    req.input["degree"] = json!(2);
    req.input["ell"] = json!(2);
    req.input["bound"] = json!(30);
    let p = ok(&req);
    assert_eq!(p["contained"], json!(true));
    round_trip::<Sha2Out>(&p);
}

#[test]
fn identical_requests_give_identical_bytes() {
    for req in [sign_job(), sha_job(), job("classgroup", json!({"discriminant": -23}))] {
        let a = execute(&req);
        let b = execute(&req);
        assert_eq!(canonical(a.payload.as_ref().unwrap()), canonical(b.payload.as_ref().unwrap()));
        assert_eq!(a.provenance.input_digest, b.provenance.input_digest);
    }
}

#[test]
fn digest_ignores_key_order() {
    let a: JobRequest = serde_json::from_str(r#"{"command":"glz subgroups","input":{"dim":1}}"#).unwrap();
    let b: JobRequest = serde_json::from_str(r#"{"input":{"dim":1},"command":"glz subgroups"}"#).unwrap();
    assert_eq!(execute(&a).provenance.input_digest, execute(&b).provenance.input_digest);
}

#[test]
fn schema_failure_points_at_field() {
    let mut req = sign_job();
    req.input["module"]["action"]["generators"][0]["matrix"] = json!([["x"]]);
    let r = execute(&req);
    assert_eq!(r.status, Status::InvalidInput);
    assert!(r.payload.is_none());
    let e = r.error.unwrap();
    assert_eq!(e.pointer.as_deref(), Some("/input/module/action/generators/0/matrix/0/0"));
}

#[test]
fn semantic_failure_is_invalid_input() {
    let r = execute(&job("cohom", json!({"group": {"cyclic": 4}, "module": {"permutation": [0, 1]}, "degree": 1})));
    assert_eq!(r.status, Status::InvalidInput);
    assert_eq!(r.error.unwrap().kind, "not-subgroup");
    let r = execute(&job("nope", json!({})));
    assert_eq!(r.error.unwrap().pointer.as_deref(), Some("/command"));
}

#[test]
fn budget_failure_reports_the_cap() {
    let mut req = job("cohom", json!({"group": {"cyclic": 6}, "module": {"regular": null}, "degree": 3}));
    req.budget.max_elems = 100;
    let r = execute(&req);
    assert_eq!(r.status, Status::BudgetExceeded);
    let b = r.error.unwrap().budget.unwrap();
    assert_eq!((b.required.as_str(), b.limit.as_str()), ("216", "100"));
}

#[test]
fn zero_budget_rejected() {
    let mut req = sign_job();
    req.budget.max_dim = 0;
    assert_eq!(execute(&req).status, Status::InvalidInput);
}

#[test]
fn large_integers_become_strings() {
    let big = BigInt::from((1u64 << 53) + 1);
    let v =
        serde_json::to_value(ShapeOut { shape: vec![JsonInt(big.clone()), JsonInt(6.into())], free_rank: 0 }).unwrap();
    assert_eq!(v["shape"], json!([big.to_string(), 6]));
    round_trip::<ShapeOut>(&v);
    assert!(serde_json::from_value::<JsonInt>(json!("12")).is_err());
}

#[test]
fn other_commands_round_trip() {
    let curve = json!({"p": 3, "removed": [[1, 0, 1]], "d": 2});
    round_trip::<PicardOut>(&ok(&job("picard", curve.clone())));
    let cs = ok(&job("classset", curve.clone()));
    assert_eq!(cs["shape"], json!([2, 2]));
    round_trip::<ClassSetOut>(&cs);
    let t = ok(&job("condT", curve));
    assert_eq!(t["verified"], json!(true));
    round_trip::<CondTOut>(&t);
    round_trip::<ClassGroupOut>(&ok(&job("classgroup", json!({"discriminant": -4}))));
    round_trip::<ArtinSchreierOut>(&ok(&job("artin-schreier", json!({"p": 3, "max_degree": 3}))));
    let r1 = ok(&job("residue deg1", json!({"p": 3, "n": 2, "element": {"poly": [1, 0, 1]}})));
    assert_eq!(r1["sum_formula_holds"], json!(true));
    round_trip::<Residue1Out>(&r1);
    let r2 = ok(&job(
        "residue deg2",
        json!({"p": 5, "n": 2, "a": {"poly": [0, 1]}, "b": {"factored": {"unit": 2, "factors": []}}}),
    ));
    assert_eq!(r2["unramified"], json!(false));
    round_trip::<Residue2Out>(&r2);
}

#[test]
fn tori_commands() {
    let g = json!({"cyclic": 2});
    let c = ok(&job("tori census", json!({"group": g, "dimension": 2})));
    assert_eq!(c["count"], json!(4));
    round_trip::<CensusOut>(&c);
    let full = ok(&job("tori census", json!({"group": g, "dimension": 2, "inertia": [[0, 1]]})));
    assert_eq!(full["count"], json!(1));
    let cl = ok(&job("tori classify", json!({"group": g, "torus": {"restriction": [0]}})));
    assert!(cl["image_class"].is_number());
    round_trip::<ClassifyOut>(&cl);
    let iso = ok(&job(
        "tori isom",
        json!({"group": g, "left": {"restriction": [0]}, "right": {"product": [{"split": 1}, {"norm_one": [0]}]}}),
    ));
    assert_eq!(iso["verdict"], json!("not-isomorphic"));
    assert!(iso["certificate"].as_str().unwrap().contains("mod 2"));
    round_trip::<IsomOut>(&iso);
}

fn binary(args: &[&str]) -> (i32, JobResult) {
    let out = Command::new(env!("CARGO_BIN_EXE_torilab")).args(args).output().unwrap();
    let stdout = String::from_utf8(out.stdout).unwrap();
    (out.status.code().unwrap(), serde_json::from_str(stdout.trim()).unwrap())
}

#[test]
fn binary_exit_codes() {
    let dir = std::env::temp_dir().join(format!("torilab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let (code, r) = binary(&["classgroup", "-D", "-23"]);
    assert_eq!((code, r.payload.unwrap()["class_number"].clone()), (0, json!(3)));
    let (code, r) = binary(&["classgroup", "-D", "5"]);
    assert_eq!((code, r.status), (2, Status::InvalidInput));
    let input = dir.join("big.json");
    std::fs::write(&input, r#"{"group":{"cyclic":6},"module":{"regular":null},"degree":3}"#).unwrap();
    let (code, r) = binary(&["--budget-elems", "10", "cohom", "--input", input.to_str().unwrap()]);
    assert_eq!((code, r.status), (3, Status::BudgetExceeded));
    let (t, d) = (dir.join("t.json"), dir.join("d.json"));
    std::fs::write(&t, r#"{"norm_one":[0]}"#).unwrap();
    std::fs::write(&d, r#"{"multiquadratic":[-1,2]}"#).unwrap();
    let args = ["sha", "--torus", t.to_str().unwrap(), "--datum", d.to_str().unwrap(), "--bound", "50"];
    let (code, r) = binary(&args);
    assert_eq!((code, r.payload.unwrap()["shape"].clone()), (0, json!([])));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn output_flag_writes_canonical_text() {
    let path = std::env::temp_dir().join(format!("torilab-out-{}.json", std::process::id()));
    let status = Command::new(env!("CARGO_BIN_EXE_torilab"))
        .args(["--output", path.to_str().unwrap(), "glz", "subgroups", "--dim", "1"])
        .status()
        .unwrap();
    assert!(status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    let v: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(text.trim_end(), canonical(&v));
    assert_eq!(v["payload"]["class_count"], json!(2));
    std::fs::remove_file(&path).ok();
}
