use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn gkt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gkt"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

const F1: &str = r#"{"kind":"free","rank":1}"#;
const Z: &str = r#"{"kind":"abelian","moduli":[0]}"#;

#[test]
fn solve_examples() {
    let d = TempDir::new().unwrap();
    let agp = write(
        &d,
        "agp.json",
        &format!(r#"{{"problem":"agp","spec":{F1},"graph":{{"n":2,"edges":[[0,1,""]],"alpha":0,"omega":1}}}}"#),
    );
    let o = gkt(&["solve", "agp", "--in", s(&agp)]);
    assert_eq!((code(&o), stdout(&o).as_str()), (0, "YES\n"));

    let kp = write(
        &d,
        "kp.json",
        &format!(r#"{{"problem":"kp","spec":{Z},"elements":["x0"],"target":"x0 x0 x0"}}"#),
    );
    let o = gkt(&["solve", "kp", "--in", s(&kp), "--cert"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "YES\n{\"kind\":\"exponents\",\"exponents\":[3]}\n");

    let nested = d.path().join("nested.json");
    let o = gkt(&["gen", "ssp", "nested_amalgam", "--out", s(&nested)]);
    assert_eq!(code(&o), 0);
    let o = gkt(&["solve", "ssp", "--in", s(&nested)]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("nested"));

    // Problem tag mismatch.
    assert_eq!(code(&gkt(&["solve", "ssp", "--in", s(&agp)])), 2);
}

#[test]
fn reduce_examples() {
    let d = TempDir::new().unwrap();
    let ssp = write(
        &d,
        "ssp.json",
        &format!(r#"{{"problem":"ssp","spec":{F1},"elements":["x0"],"target":"x0"}}"#),
    );
    let out = d.path().join("agp.json");
    assert_eq!(code(&gkt(&["reduce", "ssp-to-agp", "--in", s(&ssp), "--out", s(&out)])), 0);
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["graph"]["n"], 3);
    assert_eq!(stdout(&gkt(&["solve", "agp", "--in", s(&out)])), "YES\n");

    let bkp = write(
        &d,
        "bkp.json",
        &format!(r#"{{"problem":"bkp","spec":{Z},"elements":["x0"],"target":"x0 x0","bound":2}}"#),
    );
    let out = d.path().join("ssp2.json");
    assert_eq!(code(&gkt(&["reduce", "bkp-to-ssp", "--in", s(&bkp), "--out", s(&out)])), 0);
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["elements"], serde_json::json!(["x0", "x0"]));

    let bsmp = write(
        &d,
        "bsmp.json",
        r#"{"problem":"bsmp","spec":{"kind":"finite","order":2,"table":[[0,1],[1,0]]},
            "generators":["x1"],"target":"","bound":2}"#,
    );
    let out = d.path().join("fam.json");
    let o = gkt(&["reduce", "bsmp-to-ssp-z", "--in", s(&bsmp), "--out", s(&out)]);
    assert_eq!(code(&o), 0);
    for m in 0..3 {
        let member = d.path().join(format!("fam_m{m}.json"));
        assert_eq!(code(&gkt(&["solve", "ssp", "--in", s(&member)])), if m == 1 { 1 } else { 0 });
    }
    assert!(!d.path().join("fam_m3.json").exists());

    let o = gkt(&["reduce", "ssp-to-agp", "--in", s(&bkp), "--out", s(&out)]);
    assert_eq!(code(&o), 2);
}

#[test]
fn oracle_examples() {
    let d = TempDir::new().unwrap();
    let ssp = write(
        &d,
        "ssp.json",
        &format!(r#"{{"problem":"ssp","spec":{F1},"elements":["x0","x0^-1"],"target":""}}"#),
    );
    assert_eq!(stdout(&gkt(&["oracle", "ssp", "--in", s(&ssp)])), "YES\n");
    let kp = write(
        &d,
        "kp.json",
        &format!(r#"{{"problem":"kp","spec":{Z},"elements":["x0 x0"],"target":"x0 x0 x0"}}"#),
    );
    let o = gkt(&["oracle", "kp", "--in", s(&kp), "--bound", "10"]);
    assert_eq!((code(&o), stdout(&o).as_str()), (1, "NO\n"));

    // 2^30 paths.
    let edges: Vec<String> = (0..30)
        .flat_map(|i| [format!(r#"[{i},{},"x0"]"#, i + 1), format!(r#"[{i},{},"x0"]"#, i + 1)])
        .collect();
    let big = write(
        &d,
        "big.json",
        &format!(
            r#"{{"problem":"agp","spec":{F1},"target":"x0^-1","graph":{{"n":31,"edges":[{}],"alpha":0,"omega":30}}}}"#,
            edges.join(",")
        ),
    );
    assert_eq!(code(&gkt(&["oracle", "agp", "--in", s(&big)])), 3);
    // The polynomial solver has no trouble with it.
    assert_eq!(code(&gkt(&["solve", "agp", "--in", s(&big)])), 1);
}

#[test]
fn gen_is_deterministic_and_planted_certificates_verify() {
    let d = TempDir::new().unwrap();
    let a = d.path().join("a.json");
    let b = d.path().join("b.json");
    gkt(&["gen", "ssp", "free2", "--seed", "1", "--k", "4", "--out", s(&a)]);
    gkt(&["gen", "ssp", "free2", "--seed", "1", "--k", "4", "--out", s(&b)]);
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());

    let kp = d.path().join("kp.json");
    let o = gkt(&["gen", "kp", "zstarz", "--planted", "--k", "2", "--len", "2", "--out", s(&kp)]);
    assert_eq!(code(&o), 0);
    let cert = d.path().join("kp.json.cert.json");
    assert_eq!(code(&gkt(&["verify", "--in", s(&kp), "--cert", s(&cert)])), 0);

    let agp = d.path().join("agp.json");
    gkt(&["gen", "agp", "amalgam_z4z6", "--seed", "7", "--out", s(&agp)]);
    assert!(matches!(code(&gkt(&["solve", "agp", "--in", s(&agp)])), 0 | 1));
}

#[test]
fn verify_exit_codes() {
    let d = TempDir::new().unwrap();
    let ssp = write(
        &d,
        "ssp.json",
        &format!(r#"{{"problem":"ssp","spec":{F1},"elements":["x0","x0^-1"],"target":""}}"#),
    );
    let good = write(&d, "good.json", r#"{"kind":"subset","bits":[1,1]}"#);
    let short = write(&d, "short.json", r#"{"kind":"subset","bits":[1]}"#);
    assert_eq!(code(&gkt(&["verify", "--in", s(&ssp), "--cert", s(&good)])), 0);
    assert_eq!(code(&gkt(&["verify", "--in", s(&ssp), "--cert", s(&short)])), 2);

    let agp = write(
        &d,
        "agp.json",
        &format!(r#"{{"problem":"agp","spec":{F1},"graph":{{"n":2,"edges":[[0,1,"x0"]],"alpha":0,"omega":1}}}}"#),
    );
    let path = write(&d, "path.json", r#"{"kind":"path","edges":[0]}"#);
    assert_eq!(code(&gkt(&["verify", "--in", s(&agp), "--cert", s(&path)])), 1);
}

#[test]
fn planted_corpus_solves_yes_with_verifying_certificates() {
    let d = TempDir::new().unwrap();
    let pairs = [
        ("ssp", "free2"),
        ("ssp", "f2xz"),
        ("bkp", "zmod6"),
        ("bsmp", "z2xz3"),
        ("kp", "zstarz2"),
        ("agp", "amalgam_z4z6"),
        ("agp", "f2starz2"),
        ("rational", "z2starz3"),
    ];
    for (problem, spec) in pairs {
        for seed in 1..=4 {
            let inst = d.path().join(format!("{problem}_{spec}_{seed}.json"));
            let seed = seed.to_string();
            let o = gkt(&[
                "gen", problem, spec, "--seed", &seed, "--planted", "--k", "2", "--len", "2", "--out",
                s(&inst),
            ]);
            assert_eq!(code(&o), 0);
            let o = gkt(&["solve", problem, "--in", s(&inst), "--cert"]);
            assert_eq!(code(&o), 0, "{problem} {spec} {seed}");
            let out = stdout(&o);
            let mut lines = out.lines();
            assert_eq!(lines.next(), Some("YES"));
            let cert = write(&d, "cert.json", lines.next().unwrap());
            assert_eq!(code(&gkt(&["verify", "--in", s(&inst), "--cert", s(&cert)])), 0);
            // Byte-identical on a rerun.
            assert_eq!(stdout(&gkt(&["solve", problem, "--in", s(&inst), "--cert"])), out);
        }
    }
}

#[test]
fn batch_mode_keeps_order() {
    let d = TempDir::new().unwrap();
    let mut files = Vec::new();
    for seed in 0..6 {
        let p = d.path().join(format!("i{seed}.json"));
        let planted = seed % 2 == 0;
        let seed = seed.to_string();
        let mut args = vec!["gen", "ssp", "free2", "--seed", &seed, "--out", s(&p)];
        if planted {
            args.push("--planted");
        }
        gkt(&args);
        files.push(p);
    }
    let mut args = vec!["solve", "ssp", "--jobs", "3"];
    for f in &files {
        args.extend(["--in", s(f)]);
    }
    let batch = stdout(&gkt(&args));
    let single: String = files
        .iter()
        .map(|f| stdout(&gkt(&["solve", "ssp", "--in", s(f)])))
        .collect();
    assert_eq!(batch, single);
}
