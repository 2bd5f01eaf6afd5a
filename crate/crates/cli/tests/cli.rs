use std::process::Command;

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_cosetposet"))
}

fn report(path: &std::path::Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn reciprocity_report_passes_and_is_written() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let status = bin()
        .args(["verify", "--suite", "reciprocity", "--max-order", "24", "--out"])
        .arg(&out)
        .output()
        .unwrap()
        .status;
    assert!(status.success());
    let r = report(&out);
    assert_eq!(r["overall"], "pass");
    assert_eq!(r["version"], "1");
    let records = r["records"].as_array().unwrap();
    let s3 = records.iter().find(|x| x["subject"] == "S3").unwrap();
    assert_eq!(s3["values"]["chi"], "-8");
    assert_eq!(s3["values"]["p_minus_one"], "8");
    assert_eq!(s3["values"]["polynomial"], "1:1,2:-1,3:-3,6:3");
    for key in ["suite", "subject", "verdict", "values", "witnesses", "millis"] {
        assert!(s3.get(key).is_some(), "{key}");
    }
}

#[test]
fn reports_repeat_apart_from_the_timestamp() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str| {
        let out = dir.path().join(name);
        let status = bin()
            .args([
                "verify",
                "--suite",
                "homology",
                "--suite",
                "identities",
                "--max-order",
                "24",
                "--no-timings",
                "--out",
            ])
            .arg(&out)
            .output()
            .unwrap()
            .status;
        assert!(status.success());
        let mut r = report(&out);
        r.as_object_mut().unwrap().remove("timestamp");
        serde_json::to_string(&r).unwrap()
    };
    assert_eq!(run("a.json"), run("b.json"));
}

#[test]
fn homology_records_every_group_in_catalog_order() {
    let dir = tempfile::tempdir().unwrap();
    let catalog = dir.path().join("groups.txt");
    std::fs::write(
        &catalog,
        "# small\nS3;3;(1,2),(1,2,3);6\nZ4;4;(1,2,3,4);4\nQ8;8;(1,2,3,4)(5,6,7,8),(1,5,3,7)(2,8,4,6);8\n",
    )
    .unwrap();
    let out = dir.path().join("r.json");
    let status = bin()
        .args(["verify", "--suite", "homology", "--catalog"])
        .arg(&catalog)
        .arg("--out")
        .arg(&out)
        .output()
        .unwrap()
        .status;
    assert!(status.success());
    let r = report(&out);
    let subjects: Vec<&str> = r["records"].as_array().unwrap().iter().map(|x| x["subject"].as_str().unwrap()).collect();
    assert_eq!(subjects, ["S3", "Z4", "Q8"]);
    let z4 = &r["records"][1]["values"];
    assert_eq!(z4["betti"], serde_json::json!([0, 1]));
    assert_eq!(z4["relative"][0]["betti"], serde_json::json!([1]));
}

#[test]
fn bad_catalog_line_is_reported() {
    let dir = tempfile::tempdir().unwrap();
    let catalog = dir.path().join("bad.txt");
    std::fs::write(&catalog, "S3;3;(1,2),(1,2,3);6\nZ2;2;(1,2;2\n").unwrap();
    let output = bin().args(["verify", "--catalog"]).arg(&catalog).output().unwrap();
    assert!(!output.status.success());
    let err = String::from_utf8_lossy(&output.stderr);
    assert!(err.contains("line 2"), "{err}");

    std::fs::write(&catalog, "S3;3;(1,2),(1,2,3);7\n").unwrap();
    let output = bin().args(["verify", "--catalog"]).arg(&catalog).output().unwrap();
    assert!(!output.status.success());
    assert!(String::from_utf8_lossy(&output.stderr).contains("S3"));
}

#[test]
fn invalid_configuration_is_rejected() {
    for args in [["--prime", "4"], ["--max-order", "5000"]] {
        let output = bin().arg("verify").args(args).output().unwrap();
        assert!(!output.status.success());
    }
}

#[test]
fn compute_commands() {
    let output = bin().args(["compute", "homology", "--group", "S3"]).output().unwrap();
    assert!(output.status.success());
    let text = String::from_utf8_lossy(&output.stdout);
    assert!(text.contains("f-vector [1, 17, 24]"), "{text}");
    assert!(text.contains("[0, 0, 8]"), "{text}");

    let output =
        bin().args(["compute", "homology", "--group", "(1,2,3),(1,2)", "--normal", "(1,2,3)"]).output().unwrap();
    assert!(String::from_utf8_lossy(&output.stdout).contains("vertices 9"));

    let output = bin().args(["compute", "zeta", "--group", "S3", "--at", "-1,1,2"]).output().unwrap();
    let text = String::from_utf8_lossy(&output.stdout);
    assert!(text.contains("P(-1) = 8") && text.contains("P(1) = 0") && text.contains("P(2) = 1/2"), "{text}");

    let output = bin().args(["compute", "poset", "--group", "Z2xZ2", "--dump"]).output().unwrap();
    let text = String::from_utf8_lossy(&output.stdout);
    assert!(text.contains("cosets 10"), "{text}");
    assert_eq!(text.lines().skip_while(|l| *l != "--").skip(1).count(), 12);

    let output = bin().args(["compute", "poset", "--group", "nonsense"]).output().unwrap();
    assert!(!output.status.success());
}
