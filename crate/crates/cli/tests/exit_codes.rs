use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn knotcalc(args: &[&str], table: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_knotcalc"));
    cmd.args(args).env_remove("KNOTCALC_TABLE");
    if let Some(t) = table {
        cmd.env("KNOTCALC_TABLE", t);
    }
    cmd.output().expect("binary runs")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

struct Fixture {
    dir: TempDir,
}

impl Fixture {
    fn new() -> Self {
        let dir = TempDir::new().unwrap();
        let bundled: serde_json::Value =
            serde_json::from_str(include_str!("../../core/data/knots.json")).unwrap();
        let without: Vec<_> = bundled
            .as_array()
            .unwrap()
            .iter()
            .filter(|e| e["name"] != "10_82")
            .cloned()
            .collect();
        std::fs::write(
            dir.path().join("no1082.json"),
            serde_json::to_string(&without).unwrap(),
        )
        .unwrap();
        std::fs::write(
            dir.path().join("bad.json"),
            r#"[{"name": "broken", "seifert_matrix": [[1,0],[0,1]]}]"#,
        )
        .unwrap();
        std::fs::write(dir.path().join("empty.json"), "").unwrap();
        std::fs::write(
            dir.path().join("custom.json"),
            r#"[{"name": "tref", "seifert_matrix": [[-1,1],[0,-1]]}]"#,
        )
        .unwrap();
        let log = knotcalc(&["kirby", "proc1", "--k", "2", "--sign", "-"], None);
        std::fs::write(dir.path().join("log.json"), &log.stdout).unwrap();
        let mut tampered = json(&log);
        let m = &mut tampered["moves"][3]["sign"];
        *m = serde_json::json!(-m.as_i64().unwrap());
        std::fs::write(dir.path().join("tampered.json"), tampered.to_string()).unwrap();
        std::fs::write(dir.path().join("garbage.json"), "{not json").unwrap();
        Self { dir }
    }

    fn path(&self, name: &str) -> String {
        self.dir.path().join(name).display().to_string()
    }
}

#[test]
fn exit_code_matrix() {
    let fx = Fixture::new();
    let svg = fx.path("out.svg");
    let scenarios: Vec<(Vec<String>, Option<String>, i32)> = vec![
        (vec!["eval".into(), "P(13,1,3)".into()], None, 0),
        (vec!["eval".into(), "unknot".into()], None, 0),
        (vec!["eval".into(), "P(2,1,3)".into()], None, 2),
        (vec!["eval".into(), "3_1 # (".into()], None, 2),
        (vec!["eval".into(), "nosuch".into()], None, 3),
        (
            vec!["eval".into(), "tref".into()],
            Some(fx.path("custom.json")),
            0,
        ),
        (
            vec!["eval".into(), "3_1".into()],
            Some(fx.path("bad.json")),
            3,
        ),
        (
            vec!["eval".into(), "3_1".into()],
            Some(fx.path("empty.json")),
            3,
        ),
        (
            vec![
                "bf".into(),
                "--p".into(),
                "55".into(),
                "--q".into(),
                "4".into(),
            ],
            None,
            1,
        ),
        (
            vec![
                "bf".into(),
                "--p".into(),
                "3".into(),
                "--q".into(),
                "1".into(),
            ],
            None,
            0,
        ),
        (
            vec![
                "bf".into(),
                "--p".into(),
                "4".into(),
                "--q".into(),
                "1".into(),
            ],
            None,
            2,
        ),
        (
            vec![
                "kirby".into(),
                "proc1".into(),
                "--k".into(),
                "2".into(),
                "--sign".into(),
                "-".into(),
            ],
            None,
            0,
        ),
        (
            vec![
                "kirby".into(),
                "proc2".into(),
                "--k".into(),
                "2".into(),
                "--sign".into(),
                "+".into(),
            ],
            None,
            0,
        ),
        (
            vec![
                "kirby".into(),
                "proc1".into(),
                "--k".into(),
                "0".into(),
                "--sign".into(),
                "+".into(),
            ],
            None,
            2,
        ),
        (
            vec!["kirby".into(), "replay".into(), fx.path("log.json")],
            None,
            0,
        ),
        (
            vec!["kirby".into(), "replay".into(), fx.path("tampered.json")],
            None,
            3,
        ),
        (
            vec!["kirby".into(), "replay".into(), fx.path("garbage.json")],
            None,
            3,
        ),
        (
            vec!["verify-paper".into(), "--n-max".into(), "5".into()],
            Some(fx.path("no1082.json")),
            3,
        ),
        (
            vec!["plot".into(), "10_32".into(), "-o".into(), svg.clone()],
            None,
            0,
        ),
        (vec!["frobnicate".into()], None, 2),
    ];
    assert_eq!(scenarios.len(), 20);
    for (args, table, code) in &scenarios {
        let argv: Vec<&str> = args.iter().map(String::as_str).collect();
        let out = knotcalc(&argv, table.as_deref().map(Path::new));
        assert_eq!(
            out.status.code(),
            Some(*code),
            "{args:?}: stderr {}",
            String::from_utf8_lossy(&out.stderr)
        );
        if *code != 0 && *code != 1 {
            assert!(!out.stderr.is_empty(), "{args:?} gave no diagnostic");
        }
    }
}

#[test]
fn eval_outputs() {
    let out = knotcalc(&["eval", "P(13,1,3)"], None);
    let v = json(&out);
    assert_eq!(v["determinant"], "55");
    assert_eq!(v["alexander_text"], "14t^-1 - 27 + 14t");

    let v = json(&knotcalc(&["eval", "unknot"], None));
    assert_eq!(v["alexander_text"], "1");
    assert_eq!(v["signature"]["segments"].as_array().unwrap().len(), 1);
    assert_eq!(v["signature"]["segments"][0]["value"], 0);

    let v = json(&knotcalc(&["eval", "10_32 # -10_82"], None));
    let values: Vec<i64> = v["signature"]["segments"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s["value"].as_i64().unwrap())
        .collect();
    assert!(values.iter().any(|x| *x > 0) && values.iter().any(|x| *x < 0));

    let v = json(&knotcalc(&["eval", "TB(13,1,3)"], None));
    assert_eq!(v["signature"]["status"], "unavailable");

    let out = knotcalc(&["eval", "3_1 $"], None);
    assert!(String::from_utf8_lossy(&out.stderr).contains("position 4"));
}

#[test]
fn table_flag_overrides_environment() {
    let fx = Fixture::new();
    let out = Command::new(env!("CARGO_BIN_EXE_knotcalc"))
        .args(["eval", "tref", "--table", &fx.path("custom.json")])
        .env("KNOTCALC_TABLE", fx.path("bad.json"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["determinant"], "3");
}

#[test]
fn verify_paper_names_missing_entry() {
    let fx = Fixture::new();
    let out = knotcalc(&["verify-paper"], Some(Path::new(&fx.path("no1082.json"))));
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("10_82"));
}

#[test]
fn kirby_endpoints() {
    let v = json(&knotcalc(
        &["kirby", "proc1", "--k", "2", "--sign", "-"],
        None,
    ));
    assert_eq!(v["initial"]["framings"][0], "-1/5");
    let mut f: Vec<String> = v["final"]["framings"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_str().unwrap().to_string())
        .collect();
    f.sort();
    assert_eq!(f, ["-1", "1"]);

    let v = json(&knotcalc(
        &["kirby", "proc2", "--k", "2", "--sign", "+"],
        None,
    ));
    let mut f: Vec<String> = v["final"]["framings"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_str().unwrap().to_string())
        .collect();
    f.sort();
    assert_eq!(f, ["-1", "1", "1"]);

    let fx = Fixture::new();
    let out = knotcalc(&["kirby", "replay", &fx.path("tampered.json")], None);
    assert!(String::from_utf8_lossy(&out.stderr).contains("move 3"));
}

#[test]
fn plots() {
    let fx = Fixture::new();
    let path = fx.path("p.svg");
    assert_eq!(
        knotcalc(&["plot", "10_32", "-o", &path], None)
            .status
            .code(),
        Some(0)
    );
    let svg = std::fs::read_to_string(&path).unwrap();
    assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));

    let rows = |expr: &str| -> Vec<(String, String, i64)> {
        let out = knotcalc(&["plot", expr, "--csv"], None);
        String::from_utf8(out.stdout)
            .unwrap()
            .lines()
            .skip(1)
            .map(|l| {
                let f: Vec<&str> = l.split(',').collect();
                (f[0].to_string(), f[1].to_string(), f[2].parse().unwrap())
            })
            .collect()
    };
    let k = rows("10_32");
    assert!(k.len() > 2 && k.iter().any(|r| r.2 > 0));
    let m = rows("-10_32");
    assert_eq!(k.len(), m.len());
    for (a, b) in k.iter().zip(&m) {
        assert_eq!((&a.0, &a.1, a.2), (&b.0, &b.1, -b.2));
    }
    let u = rows("unknot");
    assert!(u.iter().all(|r| r.2 == 0));

    let a = knotcalc(&["plot", "10_32"], None).stdout;
    let b = knotcalc(&["plot", "-10_32"], None).stdout;
    assert_ne!(a, b);
}
