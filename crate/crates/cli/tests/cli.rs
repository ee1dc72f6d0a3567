use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn qstab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qstab"))
        .args(args)
        .output()
        .expect("run qstab")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = qstab(&all);
    (
        code(&out),
        serde_json::from_str(&stdout(&out)).expect("json output"),
    )
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("qstab-{}-{name}", std::process::id()));
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn classify_catalog_entries() {
    let (c, v) = json(&["classify", "--catalog", "D5tilde"]);
    assert_eq!(c, 0);
    assert_eq!(v["class"], "Euclidean");
    assert_eq!(v["delta"], serde_json::json!([1, 1, 1, 1, 2, 2]));
    assert_eq!(json(&["classify", "--catalog", "A3"]).1["class"], "Dynkin");
    assert_eq!(json(&["classify", "--catalog", "K3"]).1["class"], "Wild");
}

#[test]
fn check_exit_codes_follow_the_verdict() {
    let all = "V0,V1,V2,V3,V4,V5";
    let (c, v) = json(&[
        "check",
        "--catalog",
        "D5tilde",
        "--weight",
        "3,-1,-2,2,0,-1",
        "--reps",
        all,
    ]);
    assert_eq!(c, 0);
    assert_eq!(v["all_stable"], true);
    assert_eq!(v["primes"], serde_json::json!([5, 7, 11]));

    let (c, v) = json(&[
        "check",
        "--catalog",
        "D5tilde",
        "--weight",
        "1,1,0,0,0,-1",
        "--reps",
        "V0",
    ]);
    assert_eq!(c, 1);
    assert_eq!(v["results"][0]["report"]["verdict"], "unstable");

    let (c, v) = json(&[
        "check",
        "--catalog",
        "K3",
        "--weight",
        "1,-1",
        "--reps",
        "V",
    ]);
    assert_eq!(c, 1);
    assert_eq!(
        v["results"][0]["report"]["destabilizer"],
        serde_json::json!([1, 1])
    );
}

#[test]
fn text_and_json_verdicts_agree() {
    let args = ["check", "--catalog", "D5tilde", "--weight", "1,1,0,0,0,-1"];
    let text = qstab(&args);
    let (c, v) = json(&args);
    assert_eq!(code(&text), c);
    let text = stdout(&text);
    for row in v["results"].as_array().unwrap() {
        let line = format!(
            "{}: {}",
            row["name"].as_str().unwrap(),
            row["report"]["verdict"].as_str().unwrap()
        );
        assert!(text.contains(&line), "{line}");
    }
}

#[test]
fn synthesize_examples() {
    let (c, v) = json(&[
        "synthesize",
        "--catalog",
        "D5tilde",
        "--sequence",
        "example",
    ]);
    assert_eq!(c, 0);
    assert_eq!(
        v["synthesis"]["weight"],
        serde_json::json!([3, -1, -2, 2, 0, -1])
    );
    assert_eq!(v["synthesis"]["route"]["route"], "tube");

    let (c, v) = json(&[
        "synthesize",
        "--catalog",
        "D5tilde",
        "--sequence",
        "example",
        "--mode",
        "bound",
    ]);
    assert_eq!(c, 0);
    assert_eq!(
        v["synthesis"]["weight"],
        serde_json::json!([4, -2, -3, 3, 0, -1])
    );

    let (c, v) = json(&["synthesize", "--catalog", "A3", "--sequence", "sincere"]);
    assert_eq!(c, 0);
    assert!(v["synthesis"]["weight"].is_array());

    let out = qstab(&["synthesize", "--catalog", "K3", "--reps", "W"]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("no common weight found"));

    let out = qstab(&["synthesize", "--catalog", "K3", "--sequence", "example"]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("V is not Schur"));
}

#[test]
fn endcheck_examples() {
    let (c, v) = json(&[
        "endcheck",
        "--catalog",
        "D5tilde",
        "--reps",
        "V0,V1,V2,V3,V4,V5",
    ]);
    assert_eq!((c, v["semisimple"].clone()), (0, Value::Bool(true)));
    assert_eq!(v["dim"], serde_json::json!([4, 4, 4, 4, 9, 8]));

    let (c, v) = json(&["endcheck", "--catalog", "A3", "--reps", "S2:2"]);
    assert_eq!(c, 0);
    assert_eq!(v["end_dim"], 4);

    let (c, v) = json(&["endcheck", "--catalog", "K2", "--reps", "J"]);
    assert_eq!(c, 1);
    assert_eq!(v["radical_dim"], 1);

    let (c, v) = json(&["endcheck", "--catalog", "D5tilde", "--reps", "V1,E1"]);
    assert_eq!(c, 1);
    assert_eq!(v["orthogonal_schur"], false);
}

#[test]
fn hom_and_subreps() {
    let (c, v) = json(&["hom", "--catalog", "A3", "--reps", "S1,S2"]);
    assert_eq!(c, 0);
    assert_eq!(v["hom"], serde_json::json!([0, 0]));
    assert_eq!(v["ext1"], serde_json::json!([1, 0]));

    let (c, v) = json(&["subreps", "--catalog", "K3", "--reps", "W", "--prime", "5"]);
    assert_eq!(c, 0);
    let dims = v["results"][0]["subreps"].as_array().unwrap();
    assert!(dims.contains(&serde_json::json!([1, 1])));
}

#[test]
fn input_and_resource_errors() {
    assert_eq!(code(&qstab(&["classify", "--catalog", "E8"])), 2);
    assert_eq!(
        code(&qstab(&["check", "--catalog", "K3", "--reps", "V"])),
        2
    );
    assert_eq!(
        code(&qstab(&["check", "--catalog", "K3", "--weight", "1,x"])),
        2
    );
    assert_eq!(
        code(&qstab(&[
            "check",
            "--catalog",
            "K3",
            "--weight",
            "1,-1",
            "--reps",
            "Q"
        ])),
        2
    );
    assert_eq!(
        code(&qstab(&[
            "check",
            "--catalog",
            "K3",
            "--weight",
            "1,-1",
            "--prime",
            "6"
        ])),
        3
    );
    assert_eq!(
        code(&qstab(&[
            "check",
            "--catalog",
            "D5tilde",
            "--weight",
            "1,1,0,0,0,-1",
            "--budget",
            "10"
        ])),
        3
    );

    let broken = temp_file(
        "broken.json",
        "{\n  \"quiver\": {\n    \"vertices\": [\"1\",\n}",
    );
    let (c, v) = json(&["classify", "--input", broken.to_str().unwrap()]);
    assert_eq!(c, 2);
    assert!(v["error"].as_str().unwrap().contains("line 4"), "{v}");
}

#[test]
fn user_input_files_are_accepted() {
    let text = r#"{
      "quiver": {"vertices": ["x", "y"], "arrows": [{"id": "f", "tail": "x", "head": "y"}]},
      "representations": {
        "P": {"dim": {"x": 1, "y": 1}, "matrices": {"f": [["2/3"]]}},
        "Sy": {"dim": {"x": 0, "y": 1}}
      },
      "sequences": {"one": ["P"]}
    }"#;
    let path = temp_file("a2.json", text);
    let p = path.to_str().unwrap();
    let (c, v) = json(&["synthesize", "--input", p, "--sequence", "one"]);
    assert_eq!(c, 0, "{v}");
    let (c, _) = json(&["check", "--input", p, "--weight", "1,-1", "--reps", "P"]);
    assert_eq!(c, 0);
    let (c, v) = json(&["hom", "--input", p, "--reps", "Sy,P"]);
    assert_eq!(c, 0);
    assert_eq!(v["hom"], serde_json::json!([1, 0]));
}
