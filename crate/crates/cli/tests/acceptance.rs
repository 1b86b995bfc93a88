//! End-to-end acceptance for the CLI: the averaged-gamma smoke run and the
//! stdout/exit-code contracts of the other subcommands.

use std::process::Command;
use std::time::Instant;

use ekc_cli::output::parse_csv;

fn ekc() -> Command {
    Command::new(env!("CARGO_BIN_EXE_ekc"))
}

#[test]
fn average_smoke_end_to_end() {
    // `ekc average --d=-1,-3,-7,-20 --Q=50,100 --x=1e6` completes within
    // 10 minutes, every row has LHS <= RHS, pi* matches an independent
    // enumeration, and the CSV is byte-stable across reruns.
    let dir = tempfile::tempdir().unwrap();
    let out1 = dir.path().join("avg1.csv");
    let out2 = dir.path().join("avg2.csv");

    let start = Instant::now();
    let status = ekc()
        .args([
            "average",
            "--d=-1,-3,-7,-20",
            "--Q=50,100",
            "--x=1e6",
            &format!("--out={}", out1.display()),
        ])
        .status()
        .unwrap();
    let elapsed = start.elapsed().as_secs_f64();
    assert!(status.success(), "average run failed");
    assert!(elapsed <= 600.0, "smoke run took {elapsed:.0}s > 10 min");
    println!("PASS average-smoke-runtime: {elapsed:.0}s <= 600s");

    let status2 = ekc()
        .args([
            "average",
            "--d=-1,-3,-7,-20",
            "--Q=50,100",
            "--x=1e6",
            &format!("--out={}", out2.display()),
        ])
        .status()
        .unwrap();
    assert!(status2.success());
    let bytes1 = std::fs::read(&out1).unwrap();
    let bytes2 = std::fs::read(&out2).unwrap();
    assert_eq!(bytes1, bytes2, "CSV not byte-stable across reruns");
    println!(
        "PASS average-smoke-byte-stable: {} bytes identical",
        bytes1.len()
    );

    let content = String::from_utf8(bytes1).unwrap();
    let (comments, header, rows) = parse_csv(&content);
    assert!(comments.iter().any(|c| c == "grh_conditional=true"));
    assert_eq!(
        header,
        vec![
            "d_K",
            "h_K",
            "Q",
            "pi_star",
            "Nq",
            "gamma_est",
            "budget",
            "lhs",
            "rhs",
            "pass"
        ]
    );
    assert!(!rows.is_empty());
    for row in &rows {
        assert_eq!(row[9], "true", "row failed or flagged: {row:?}");
        let lhs: f64 = row[7].parse().unwrap();
        let rhs: f64 = row[8].parse().unwrap();
        assert!(lhs <= rhs, "LHS > RHS in {row:?}");
    }
    println!(
        "PASS average-smoke-rows: {} rows, all LHS <= RHS",
        rows.len()
    );

    // pi* matches the independent class-group-dlog enumeration
    for (d_expect, q) in [
        (-1i64, 50u64),
        (-1, 100),
        (-3, 50),
        (-3, 100),
        (-7, 50),
        (-7, 100),
        (-5, 50),
        (-5, 100),
    ] {
        let ctx = ekc_core::class_group::class_context(d_expect).unwrap();
        let independent = ekc_core::checks::pi_star_via_classes(&ctx, q);
        let d_k = ctx.field.d_k.to_string();
        let row = rows
            .iter()
            .find(|r| r[0] == d_k && r[2] == q.to_string())
            .unwrap_or_else(|| panic!("no row for d_K={d_k}, Q={q}"));
        assert_eq!(
            row[3].parse::<u64>().unwrap(),
            independent,
            "pi* mismatch d_K={d_k} Q={q}"
        );
        // pi_star also equals the number of rows in the cell
        let cell_rows = rows
            .iter()
            .filter(|r| r[0] == d_k && r[2] == q.to_string())
            .count() as u64;
        assert_eq!(cell_rows, independent);
    }
    println!("PASS average-smoke-pi-star: counts match the class-group route");
}

#[test]
fn verify_exit_code_contract() {
    // `ekc verify --d=-1,-3 --x=1e5` exits 0 when all reports pass
    let out = ekc()
        .args(["verify", "--d=-1,-3", "--x=1e5"])
        .output()
        .unwrap();
    assert!(out.status.success(), "verify exited nonzero");
    let text = String::from_utf8(out.stdout).unwrap();
    let (_, header, rows) = parse_csv(&text);
    assert_eq!(header[0], "check");
    assert!(rows.iter().all(|r| r[5] == "true" || r[8] == "true"));
    println!("PASS verify-exit-code: {} check rows", rows.len());
}

#[test]
fn gamma_json_schema_contract() {
    // one JSON object with fields {d_K, Nq, gamma_est, budget}
    let out = ekc()
        .args(["gamma", "--d=-1", "--q-norm=9", "--x=1e6", "--format=json"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let objs = v.as_array().unwrap();
    assert_eq!(objs.len(), 1);
    let obj = objs[0].as_object().unwrap();
    for key in ["d_K", "Nq", "gamma_est", "budget"] {
        assert!(obj.contains_key(key), "missing {key}");
    }
    assert_eq!(obj["d_K"], serde_json::json!(-4));
    assert_eq!(obj["Nq"], serde_json::json!(9));
    assert!(obj["gamma_est"].as_f64().unwrap().is_finite());
    println!("PASS gamma-json-schema");
}

#[test]
fn gamma_csv_deterministic() {
    let run = || {
        ekc()
            .args(["gamma", "--d=-1,-3", "--q-norm=5", "--x=2e4"])
            .output()
            .unwrap()
            .stdout
    };
    assert_eq!(run(), run());
    println!("PASS gamma-deterministic");
}

#[test]
fn config_file_merging() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("ekc.conf");
    std::fs::write(&cfg, "d=-1,-3\nx=50\nformat=csv\n").unwrap();
    // config supplies d and x
    let out = ekc()
        .args(["ideals", &format!("--config={}", cfg.display())])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let (_, _, rows) = parse_csv(&text);
    assert!(rows.iter().any(|r| r[0] == "-4"));
    assert!(rows.iter().any(|r| r[0] == "-3"));
    assert!(rows.iter().all(|r| r[1].parse::<u64>().unwrap() <= 50));
    // flags override the file
    let out = ekc()
        .args([
            "ideals",
            &format!("--config={}", cfg.display()),
            "--d=-2",
            "--x=10",
        ])
        .output()
        .unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    let (_, _, rows) = parse_csv(&text);
    assert!(rows.iter().all(|r| r[0] == "-8"));
    println!("PASS config-file-merging");
}

#[test]
fn flagged_rows_surface_not_crash() {
    // d_K = -20, Q = 14: no prime ideals at all with norm in (7, 14]
    let out = ekc()
        .args(["average", "--d=-20", "--Q=14", "--x=1e6"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1), "flagged run must exit 1");
    let text = String::from_utf8(out.stdout).unwrap();
    let (_, _, rows) = parse_csv(&text);
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0][3], "0");
    assert_eq!(rows[0][9], "flagged");
    assert_eq!(rows[0][7], "", "LHS must be empty on flagged rows");
    println!("PASS flagged-rows");
}
