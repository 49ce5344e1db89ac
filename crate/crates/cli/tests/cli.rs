//! End-to-end runs of the `maxclass` binary.

use std::process::{Command, Output};

use serde_json::Value;

fn maxclass(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_maxclass"))
        .args(args)
        .env_remove("MAXCLASS_WORKERS")
        .env_remove("MAXCLASS_BUDGET")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// Parses a JSON report and drops the timing field.
fn stable_json(o: &Output) -> Value {
    let mut v: Value = serde_json::from_str(stdout(o).trim()).unwrap();
    v.as_object_mut().unwrap().remove("elapsed_ms");
    v
}

#[test]
fn theta_formula_json() {
    let o = maxclass(&["theta", "--family", "D", "--n", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 1);
    let expected: Value = serde_json::from_str(
        r#"{"schema":"maxclass-units/1","family":"D","n":2,"method":"formula","type1":16,"type2":32,
            "total":48,"involutions":47,"budget_exhausted":false}"#,
    )
    .unwrap();
    assert_eq!(stable_json(&o), expected);
}

#[test]
fn theta_methods_agree_with_check() {
    for method in ["formula", "brute", "structural", "proof"] {
        let o = maxclass(&[
            "theta", "--family", "SD", "--n", "3", "--method", method, "--check",
        ]);
        assert_eq!(o.status.code(), Some(0), "{method}");
        assert_eq!(stable_json(&o)["total"], 1024);
    }
    let o = maxclass(&[
        "theta",
        "--family",
        "Q",
        "--n",
        "4",
        "--method",
        "proof",
        "--order-source",
        "enumerated",
    ]);
    assert_eq!(stable_json(&o)["total"], 458_752);
    assert_eq!(stable_json(&o)["order_source"], "enumerated");
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["theta", "--family", "SD", "--n", "2"][..],
        &["theta", "--family", "X", "--n", "3"],
        &["theta", "--family", "D", "--n", "5", "--method", "brute"],
        &[
            "theta",
            "--family",
            "D",
            "--n",
            "3",
            "--order-source",
            "enumerated",
        ],
        &[
            "census",
            "--n",
            "2",
            "--subgroup",
            "w",
            "--sigma",
            "circledast",
        ],
        &["census", "--n", "3", "--subgroup", "m"],
        &["census", "--n", "3", "--subgroup", "m", "--z", "a^9"],
        &["census", "--n", "5", "--subgroup", "h"],
        &["verify", "--suite", "lemma8", "--n-range", "3..5"],
        &["verify", "--suite", "lemma1", "--n-range", "4..2"],
        &["frobnicate"],
    ] {
        let o = maxclass(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(o.stdout.is_empty(), "{args:?}");
    }
}

#[test]
fn budget_exhaustion_exits_3() {
    let o = maxclass(&[
        "theta", "--family", "D", "--n", "4", "--method", "brute", "--budget", "0.05",
    ]);
    assert_eq!(o.status.code(), Some(3));
    let v = stable_json(&o);
    assert_eq!(v["budget_exhausted"], true);
    assert_eq!(v["total"], Value::Null);
}

#[test]
fn budget_flag_overrides_environment() {
    let run = |args: &[&str]| {
        Command::new(env!("CARGO_BIN_EXE_maxclass"))
            .args([
                "theta",
                "--family",
                "D",
                "--n",
                "4",
                "--method",
                "structural",
            ])
            .args(args)
            .env("MAXCLASS_BUDGET", "0.01")
            .output()
            .unwrap()
    };
    assert_eq!(run(&[]).status.code(), Some(3));
    let o = run(&["--budget", "60"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stable_json(&o)["total"], 589_824);
}

#[test]
fn workers_from_environment_give_the_same_counts() {
    let serial = maxclass(&[
        "theta",
        "--family",
        "D",
        "--n",
        "3",
        "--method",
        "structural",
    ]);
    let parallel = Command::new(env!("CARGO_BIN_EXE_maxclass"))
        .args([
            "theta",
            "--family",
            "D",
            "--n",
            "3",
            "--method",
            "structural",
        ])
        .env("MAXCLASS_WORKERS", "3")
        .output()
        .unwrap();
    assert_eq!(stable_json(&serial), stable_json(&parallel));
    let o = maxclass(&["theta", "--family", "D", "--n", "3", "--workers", "0"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn census_formats() {
    let o = maxclass(&[
        "census",
        "--n",
        "3",
        "--subgroup",
        "vuni",
        "--sigma",
        "star",
        "--format",
        "csv",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("spec,n,order,empty,elapsed_ms"));
    assert!(lines.next().unwrap().starts_with("vuni(star),3,32,false,"));
    let o = maxclass(&["census", "--n", "3", "--subgroup", "h", "--i", "1"]);
    let v = stable_json(&o);
    assert_eq!(
        (v["order"].as_u64(), v["empty"].as_bool()),
        (Some(0), Some(true))
    );
    let o = maxclass(&[
        "census",
        "--n",
        "4",
        "--subgroup",
        "j",
        "--sigma",
        "circledast",
        "--format",
        "text",
    ]);
    assert_eq!(
        stdout(&o).trim_end().rsplit_once(", ").unwrap().0,
        "j(circledast) n=4: order 16"
    );
    let o = maxclass(&["census", "--n", "2", "--subgroup", "m", "--z", "0x0B@n=2"]);
    assert_eq!(stable_json(&o)["spec"], "m(star,1+a+a^3)");
}

#[test]
fn verify_text_lines_and_determinism() {
    let args = [
        "verify",
        "--suite",
        "lemma3",
        "--n-range",
        "4..5",
        "--samples",
        "300",
        "--seed",
        "9",
    ];
    let a = maxclass(&[&args[..], &["--format", "json"]].concat());
    let b = maxclass(&[&args[..], &["--format", "json"]].concat());
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stable_json(&a), stable_json(&b));
    let t = maxclass(&[&args[..], &["--format", "text"]].concat());
    let text = stdout(&t);
    assert!(!text.is_empty());
    assert!(text.lines().all(|l| l.starts_with("PASS ")), "{text}");
}

#[test]
fn every_suite_runs() {
    for suite in [
        "lemma1",
        "lemma3",
        "lemma4",
        "lemma5",
        "lemma6",
        "lemma7",
        "lemma8",
        "lemma10",
        "eq2",
        "eq13",
        "theorem",
        "corollary",
    ] {
        let o = maxclass(&[
            "verify",
            "--suite",
            suite,
            "--samples",
            "200",
            "--format",
            "csv",
        ]);
        assert_eq!(o.status.code(), Some(0), "{suite}: {}", stdout(&o));
        let out = stdout(&o);
        assert!(out.starts_with("suite,check,n,expected,actual,pass\n"));
        assert!(
            out.lines()
                .skip(1)
                .all(|l| l.starts_with(suite) && l.ends_with(",true")),
            "{out}"
        );
    }
}

#[test]
fn verify_examples() {
    let o = maxclass(&[
        "verify",
        "--suite",
        "theorem",
        "--n-range",
        "2..3",
        "--format",
        "text",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("PASS theorem n=2 D brute type1+type2: 16+32"));
    assert!(text.contains("PASS theorem n=3 Q structural type1+type2: 768+0"));
    for args in [
        &["--suite", "lemma1", "--n-range", "2..4"][..],
        &["--suite", "lemma5", "--n-range", "3..4"],
    ] {
        let o = maxclass(&[&["verify"][..], args].concat());
        assert_eq!(o.status.code(), Some(0), "{args:?}");
        assert_eq!(stable_json(&o)["pass"], true);
    }
}

#[test]
fn out_file() {
    let dir = std::env::temp_dir().join(format!("maxclass-out-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("theta.json");
    let o = maxclass(&[
        "theta",
        "--family",
        "Q",
        "--n",
        "3",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["total"], 768);
    let bad = maxclass(&[
        "theta",
        "--family",
        "Q",
        "--n",
        "3",
        "--out",
        dir.join("missing/x.json").to_str().unwrap(),
    ]);
    assert_eq!(bad.status.code(), Some(1));
    std::fs::remove_dir_all(&dir).unwrap();
}
