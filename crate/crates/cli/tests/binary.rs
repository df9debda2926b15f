use std::fs;
use std::process::Command;

fn wordperm(dir: &std::path::Path, args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_wordperm"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn tmp() -> tempfile::TempDir {
    tempfile::tempdir().unwrap()
}

#[test]
fn fibonacci_tau_equals_length() {
    let d = tmp();
    let (code, out, _) = wordperm(
        d.path(),
        &["tau", "fibonacci", "-n", "2..10", "--horizon", "4096"],
    );
    assert_eq!(code, 0);
    let rows: Vec<(usize, usize)> = out
        .lines()
        .skip(1)
        .map(|l| {
            let f: Vec<&str> = l.split_whitespace().collect();
            (f[0].parse().unwrap(), f[1].parse().unwrap())
        })
        .collect();
    assert_eq!(rows.len(), 9);
    assert!(rows.iter().all(|(n, t)| n == t));
}

#[test]
fn doubled_tm_verify_passes() {
    let d = tmp();
    let (code, out, err) = wordperm(
        d.path(),
        &[
            "verify",
            "doubled-tm",
            "thue-morse",
            "-n",
            "9..20",
            "--horizon",
            "8192",
        ],
    );
    assert_eq!(code, 0, "{out}{err}");
    assert!(out.ends_with("doubled-tm: pass\n"));
}

#[test]
fn failing_suite_exits_one() {
    let d = tmp();
    let (code, out, _) = wordperm(
        d.path(),
        &[
            "verify",
            "sturmian-tau",
            "thue-morse",
            "-n",
            "4..6",
            "--horizon",
            "4096",
        ],
    );
    assert_eq!(code, 1);
    assert!(out.ends_with("sturmian-tau: fail\n"));
}

#[test]
fn usage_errors_exit_two() {
    let d = tmp();
    for args in [
        &["tau", "fibonacci"][..],
        &["tau", "fibonacci", "-n", "5..2"],
        &["perm", "morphic:0->10,1->0", "--at", "0", "--len", "3"],
        &["verify", "nope", "fibonacci"],
        &["rho", "fibonacci", "-n", "3", "--csv", "--json"],
    ] {
        let (code, out, err) = wordperm(d.path(), args);
        assert_eq!(code, 2, "{args:?}");
        assert!(out.is_empty());
        assert!(!err.is_empty());
    }
}

#[test]
fn engine_errors_name_their_inputs() {
    let d = tmp();
    let (code, _, err) = wordperm(
        d.path(),
        &[
            "perm",
            "fibonacci",
            "--at",
            "100",
            "--len",
            "5",
            "--hard-cap",
            "50",
        ],
    );
    assert_eq!(code, 1);
    assert!(
        err.contains("fibonacci") && err.contains("at 100, len 5"),
        "{err}"
    );
}

#[test]
fn help_and_version_exit_zero() {
    let d = tmp();
    assert_eq!(wordperm(d.path(), &["--help"]).0, 0);
    let (code, out, _) = wordperm(d.path(), &["--version"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("wordperm "));
}

#[test]
fn config_file_sets_horizon() {
    let d = tmp();
    fs::write(d.path().join("wordperm.toml"), "horizon = 512\n").unwrap();
    let (code, out, _) = wordperm(d.path(), &["rho", "fibonacci", "-n", "3", "--json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["horizon"], 512);
    let (_, out, _) = wordperm(
        d.path(),
        &["rho", "fibonacci", "-n", "3", "--json", "--horizon", "256"],
    );
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["horizon"], 256);

    fs::write(d.path().join("wordperm.toml"), "horizn = 512\n").unwrap();
    assert_eq!(wordperm(d.path(), &["rho", "fibonacci", "-n", "3"]).0, 2);
}

#[test]
fn reports_are_deterministic() {
    let d = tmp();
    for fmt in ["--csv", "--json"] {
        let args = [
            "verify",
            "delta-oracle",
            "period-doubling",
            "-n",
            "2..20",
            "--samples",
            "200",
            "--horizon",
            "4096",
            fmt,
        ];
        let a = wordperm(d.path(), &args);
        let b = wordperm(d.path(), &args);
        assert_eq!(a.0, 0);
        assert_eq!(a, b);
    }
}

#[test]
fn json_report_shape() {
    let d = tmp();
    let (_, out, _) = wordperm(
        d.path(),
        &[
            "tau",
            "thue-morse",
            "-n",
            "6..9",
            "--split",
            "--json",
            "--horizon",
            "4096",
        ],
    );
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["schema"], "wordperm.report/1");
    assert_eq!(v["command"], "tau");
    assert_eq!(v["word"], "thue-morse");
    let taus: Vec<u64> = v["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["tau"].as_u64().unwrap())
        .collect();
    assert_eq!(taus, [16, 18, 20, 30]);
    let r = &v["rows"][3];
    assert_eq!(
        r["tau_even"].as_u64().unwrap() + r["tau_odd"].as_u64().unwrap(),
        30
    );
}

#[test]
fn csv_header_and_rows() {
    let d = tmp();
    let (_, out, _) = wordperm(
        d.path(),
        &[
            "rho",
            "thue-morse",
            "-n",
            "3..4",
            "--csv",
            "--horizon",
            "4096",
        ],
    );
    let mut lines = out.lines();
    assert_eq!(
        lines.next().unwrap(),
        "word,n,tau,tau_even,tau_odd,rho,formula,match,converged,horizon"
    );
    assert_eq!(lines.next().unwrap(), "thue-morse,3,,,,6,,,true,4096");
    assert_eq!(lines.next().unwrap(), "thue-morse,4,,,,10,,,true,4096");
}

#[test]
fn word_and_classes() {
    let d = tmp();
    let (_, out, _) = wordperm(d.path(), &["word", "double(thue-morse)", "--len", "8"]);
    assert_eq!(out, "00111100\n");
    let (_, out, _) = wordperm(d.path(), &["classes", "fibonacci", "--horizon", "4096"]);
    assert!(
        out.starts_with("k0 = 2, k1 = 1, k = 2\nrecurrence window for length 2: 6\n"),
        "{out}"
    );
}

#[test]
fn thue_morse_pairs_have_types() {
    let d = tmp();
    let (code, out, _) = wordperm(
        d.path(),
        &[
            "pairs",
            "thue-morse",
            "-n",
            "6",
            "--json",
            "--horizon",
            "4096",
        ],
    );
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let pairs = v["pairs"].as_array().unwrap();
    assert!(!pairs.is_empty());
    assert!(pairs.iter().all(|p| p["type"].as_u64().is_some()));
}
