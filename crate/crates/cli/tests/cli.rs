use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn qpchar(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qpchar"))
        .args(args)
        .env_remove("QPCHAR_CACHE")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn cache_files(dir: &Path) -> Vec<std::path::PathBuf> {
    let mut v: Vec<_> = fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .collect();
    v.sort();
    v
}

#[test]
fn char_examples() {
    let o = qpchar(&[
        "char", "standard", "--k0", "1", "--k1", "0", "--order", "6", "--method", "product",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "1 1 1 2 2 3 4\n");

    let o = qpchar(&["char", "verma", "--order", "3"]);
    assert_eq!(stdout(&o), "1 2 4 8\n");

    let o = qpchar(&["char", "standard", "--k0", "0", "--k1", "0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(o.stdout.is_empty());
}

#[test]
fn char_usage_errors() {
    for args in [
        &["char", "standard", "--k0", "1"][..],
        &["char", "verma", "--k0", "1", "--k1", "1"],
        &["char", "verma", "--method", "sum"],
        &[
            "char", "standard", "--k0", "1", "--k1", "0", "--format", "xml",
        ],
        &["char"],
    ] {
        assert_eq!(qpchar(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn char_all_routes_agree() {
    let o = qpchar(&[
        "char", "standard", "--k0", "2", "--k1", "2", "--order", "30", "--method", "all",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 5);
    let series: Vec<&str> = lines[..3]
        .iter()
        .map(|l| l.split_once(' ').unwrap().1.trim())
        .collect();
    assert_eq!(series[0], series[1]);
    assert_eq!(series[0], series[2]);
    assert!(lines[3].starts_with("MATCH"));
}

#[test]
fn char_json_and_csv() {
    let o = qpchar(&["char", "verma", "--order", "3", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["target"], "verma");
    assert_eq!(v["series"]["order"], 3);
    assert_eq!(
        v["series"]["coeffs"],
        serde_json::json!(["1", "2", "4", "8"])
    );

    let o = qpchar(&["char", "verma", "--order", "2", "--format", "csv"]);
    assert_eq!(stdout(&o), "n,coefficient\n0,1\n1,2\n2,4\n");

    let o = qpchar(&[
        "char", "verma", "--order", "1", "--format", "csv", "--method", "all",
    ]);
    assert_eq!(
        stdout(&o),
        "route,n,coefficient\nproduct,0,1\nproduct,1,2\nenumerate,0,1\nenumerate,1,2\n"
    );
}

#[test]
fn large_coefficients_stay_exact() {
    let o = qpchar(&["char", "verma", "--order", "400", "--format", "csv"]);
    let last = stdout(&o).lines().last().unwrap().to_string();
    let digits = last.split(',').nth(1).unwrap();
    assert!(digits.len() > 20, "{last}");
}

#[test]
fn list_examples() {
    let o = qpchar(&["list", "--verma", "--max-exponent", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "0 1\n1 B(-1)\n1 X1(-1)\n2 B(-1)B(-1)\n2 B(-1) X1(-1)\n2 X1(-2)\n2 X2(-2)\ncounts: 1 2 4\n"
    );

    let o = qpchar(&[
        "list",
        "--k0",
        "2",
        "--k1",
        "1",
        "--max-exponent",
        "2",
        "--oracle",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 7);
    assert!(!text.contains("X2"));
    assert!(text.ends_with("counts: 1 2 3\n"));

    let o = qpchar(&["list", "--verma", "--max-exponent", "0"]);
    assert_eq!(stdout(&o), "0 1\ncounts: 1\n");
}

#[test]
fn list_counts_match_char() {
    let o = qpchar(&[
        "list",
        "--k0",
        "3",
        "--k1",
        "1",
        "--max-exponent",
        "9",
        "--format",
        "json",
    ]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let c = qpchar(&[
        "char", "standard", "--k0", "3", "--k1", "1", "--order", "9", "--format", "json",
    ]);
    let c: serde_json::Value = serde_json::from_slice(&c.stdout).unwrap();
    assert_eq!(v["counts"], c["series"]["coeffs"]);
    let total: u64 = v["counts"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_str().unwrap().parse::<u64>().unwrap())
        .sum();
    assert_eq!(v["monomials"].as_array().unwrap().len() as u64, total);
}

#[test]
fn list_limits() {
    let o = qpchar(&["list", "--verma", "--max-exponent", "40"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("--limit"));
    assert_eq!(
        qpchar(&["list", "--max-exponent", "3"]).status.code(),
        Some(2)
    );
    assert_eq!(
        qpchar(&[
            "list",
            "--verma",
            "--k0",
            "1",
            "--k1",
            "1",
            "--max-exponent",
            "3"
        ])
        .status
        .code(),
        Some(2)
    );
}

#[test]
fn verify_examples() {
    let o = qpchar(&[
        "verify", "grr", "--l", "2", "--s", "1", "--r", "2", "--order", "100",
    ]);
    assert_eq!(o.status.code(), Some(0));

    let o = qpchar(&[
        "verify",
        "complement",
        "--k0",
        "2",
        "--k1",
        "1",
        "--order",
        "40",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("dim W_2=1"), "{text}");
    assert!(text.contains("dim W_3=3"), "{text}");

    let o = qpchar(&["verify", "all", "--order", "40"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with(" checks, 0 mismatches\n"));
}

#[test]
fn verify_selectors() {
    for args in [
        &["verify", "grr", "--order", "40"][..],
        &[
            "verify", "module", "--k0", "3", "--k1", "3", "--order", "40", "--oracle",
        ],
        &["verify", "module", "--max-level", "3", "--order", "30"],
        &["verify", "section8", "--l", "3", "--order", "60"],
        &["verify", "liealg", "--window", "5"],
        &["verify", "complement", "--max-level", "4", "--order", "30"],
    ] {
        let o = qpchar(args);
        assert_eq!(
            o.status.code(),
            Some(0),
            "{args:?}: {}",
            String::from_utf8_lossy(&o.stderr)
        );
    }
    for args in [
        &["verify", "grr", "--l", "2"][..],
        &["verify", "grr", "--l", "2", "--s", "0", "--r", "2"],
        &["verify", "section8", "--l", "0"],
        &["verify", "liealg", "--window", "0"],
        &["verify", "liealg", "--k0", "1", "--k1", "1"],
        &["verify", "nothing"],
    ] {
        assert_eq!(qpchar(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn verify_formats() {
    let o = qpchar(&["verify", "section8", "--order", "30", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["checks"], 4);
    assert_eq!(v["mismatches"], 0);
    assert!(v["reports"][0].get("ms").is_none());

    let o = qpchar(&[
        "verify",
        "section8",
        "--order",
        "30",
        "--format",
        "json",
        "--timings",
    ]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v["reports"][0]["ms"].is_number());

    let o = qpchar(&[
        "verify",
        "complement",
        "--k0",
        "2",
        "--k1",
        "1",
        "--order",
        "10",
        "--format",
        "csv",
    ]);
    assert_eq!(
        stdout(&o),
        "label,status,order,first_mismatch,lhs,rhs,note\n\
         \"complement(2,1)\",match,10,,,,\"dim W_2=1, dim W_3=3\"\n"
    );
}

#[test]
fn cache_hits_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let args = [
        "char",
        "standard",
        "--k0",
        "4",
        "--k1",
        "1",
        "--order",
        "80",
        "--cache-dir",
        d,
    ];
    let cold = qpchar(&args);
    assert_eq!(cache_files(dir.path()).len(), 1);
    let warm = qpchar(&args);
    assert_eq!(cold.stdout, warm.stdout);
    let uncached = qpchar(&args[..8]);
    assert_eq!(cold.stdout, uncached.stdout);

    // the environment variable works the same way
    let env_run = Command::new(env!("CARGO_BIN_EXE_qpchar"))
        .args(&args[..8])
        .env("QPCHAR_CACHE", d)
        .output()
        .unwrap();
    assert_eq!(env_run.stdout, cold.stdout);
    assert_eq!(cache_files(dir.path()).len(), 1);
}

#[test]
fn corrupt_cache_entries_are_recomputed() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let args = ["char", "verma", "--order", "20", "--cache-dir", d];
    let cold = qpchar(&args);
    let file = cache_files(dir.path()).pop().unwrap();

    fs::write(&file, "not json").unwrap();
    let o = qpchar(&args);
    assert_eq!(o.stdout, cold.stdout);
    assert!(String::from_utf8_lossy(&o.stderr).contains("corrupt"));

    // well-formed but wrong everywhere past q^0: the oracle recheck of a
    // random coefficient has at least a 20/21 chance to catch it, so
    // repeat until it does
    let mut wrong: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&file).unwrap()).unwrap();
    for c in wrong["coeffs"].as_array_mut().unwrap().iter_mut().skip(1) {
        *c = serde_json::json!("0");
    }
    let mut caught = false;
    for _ in 0..20 {
        fs::write(&file, wrong.to_string()).unwrap();
        let mut with_oracle = args.to_vec();
        with_oracle.push("--oracle");
        let o = qpchar(&with_oracle);
        assert_eq!(o.status.code(), Some(0));
        if String::from_utf8_lossy(&o.stderr).contains("failed the recheck") {
            assert_eq!(o.stdout, cold.stdout);
            caught = true;
            break;
        }
    }
    assert!(caught);
}

#[test]
fn poisoned_route_is_a_mismatch() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let sum = [
        "char",
        "standard",
        "--k0",
        "2",
        "--k1",
        "1",
        "--order",
        "10",
        "--method",
        "sum",
        "--cache-dir",
        d,
    ];
    qpchar(&sum);
    let file = cache_files(dir.path()).pop().unwrap();
    let mut v: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&file).unwrap()).unwrap();
    v["coeffs"][7] = serde_json::json!("999");
    fs::write(&file, v.to_string()).unwrap();

    let mut all = sum.to_vec();
    all[9] = "all";
    let o = qpchar(&all);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("MISMATCH standard(2,1) product=sum (order 10) at q^7: 26 vs 999"));
}
