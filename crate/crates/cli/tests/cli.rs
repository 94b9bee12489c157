use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_susyext"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn csv_rows(text: &str) -> Vec<Vec<String>> {
    text.lines().skip(1).map(|l| l.split(',').map(str::to_string).collect()).collect()
}

#[test]
fn spectrum_extended_type_one() {
    let o = run(&["spectrum", "rm2", "--ext", "--type", "I", "-A", "1", "-B", "2.2", "-m", "1"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.starts_with("nu,analytic_energy,numeric_energy,abs_error\n"));
    let rows = csv_rows(&text);
    assert_eq!(rows.len(), 1);
    let err: f64 = rows[0][3].parse().unwrap();
    assert!(err <= 5e-3);
}

#[test]
fn spectrum_conventional() {
    let o = run(&["spectrum", "rm2", "-A", "4", "-B", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let rows = csv_rows(&stdout(&o));
    let analytic: Vec<f64> = rows.iter().map(|r| r[1].parse().unwrap()).collect();
    assert_eq!(analytic.len(), 2);
    assert!((analytic[0] + 17.0).abs() < 1e-12 && (analytic[1] + 10.7778).abs() < 1e-4);
}

#[test]
fn spectrum_rejects_odd_type_three() {
    let o = run(&["spectrum", "rm2", "--ext", "--type", "III", "-A", "2.5", "-B", "1", "-m", "3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("m must be even"));
    assert!(stdout(&o).is_empty());
}

#[test]
fn spectrum_json_has_meta() {
    let o = run(&["spectrum", "eckart", "-A", "2", "-B", "6", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["meta"]["parameters"]["family"], "eckart");
    assert!(v["meta"]["grid"]["n_points"].as_u64().unwrap() >= 100);
    assert_eq!(v["rows"][0]["nu"], 0);
    assert_eq!(v["report"]["status"], "pass");
}

#[test]
fn spectrum_failure_exits_one() {
    let o = run(&[
        "spectrum", "rm2", "-A", "4", "-B", "4", "--grid-points", "100", "--tolerance", "1e-9",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("FAIL"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["spectrum", "rm2", "-A", "1"]).status.code(), Some(2));
    assert_eq!(run(&["spectrum", "rm2", "-A", "4", "-B", "4", "--type", "I"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "everything"]).status.code(), Some(2));
    let o = run(&["scan", "rm2", "--type", "I", "-m", "2", "--a-range", "3:1", "--b-range", "0:1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("malformed range"));
    let o = run(&["spectrum", "eckart", "-A", "2", "-B", "6", "--x-min", "-1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn sample_potential_at_origin() {
    let o = run(&["sample", "potential", "rm2", "--ext", "--type", "I", "-A", "1", "-B", "3", "-m", "1", "--x", "0"]);
    assert_eq!(o.status.code(), Some(0));
    let rows = csv_rows(&stdout(&o));
    let v: f64 = rows[0][1].parse().unwrap();
    assert!((v + 3.1111).abs() < 1e-4, "{v}");
}

#[test]
fn sample_superpotential_asymptote() {
    let o = run(&[
        "sample", "superpotential", "rm2", "--ext", "--type", "I", "-A", "1", "-B", "2.2", "-m", "1", "--x", "40",
    ]);
    let v: f64 = csv_rows(&stdout(&o))[0][1].parse().unwrap();
    assert!((v - 3.2).abs() < 1e-9);
    let o = run(&["sample", "superpotential", "rm2", "-A", "4", "-B", "4"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn sample_type_three_ground_state_is_one_signed() {
    let o = run(&[
        "sample", "wavefunction", "rm2", "--ext", "--type", "III", "-A", "2.5", "-B", "1", "-m", "2", "--nu", "-3",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("nu,x,value\n"));
    let rows = csv_rows(&text);
    assert_eq!(rows.len(), 201);
    assert!(rows.iter().all(|r| r[0] == "-3" && r[2].parse::<f64>().unwrap() > 0.0));
}

#[test]
fn sample_files_are_bit_identical() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for path in [&a, &b] {
        let o = run(&[
            "sample", "wavefunction", "eckart", "--ext", "--type", "II", "-A", "1.5", "-B", "16", "-m", "2",
            "--output", path.to_str().unwrap(),
        ]);
        assert_eq!(o.status.code(), Some(0));
        assert!(stdout(&o).is_empty());
    }
    let (a, b) = (std::fs::read(a).unwrap(), std::fs::read(b).unwrap());
    assert!(!a.is_empty());
    assert_eq!(a, b);
}

#[test]
fn scan_reproduces_two_state_region() {
    let o = run(&[
        "scan", "rm2", "--type", "I", "-m", "2", "--a-range", "1.05:4", "--b-range", "0.1:24", "--steps", "30",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let rows = csv_rows(&stdout(&o));
    assert_eq!(rows.len(), 31 * 31);
    let mut two = 0;
    for r in rows {
        let (a, b): (f64, f64) = (r[0].parse().unwrap(), r[1].parse().unwrap());
        let count: usize = r[3].parse().unwrap();
        if r[2] == "true" {
            let lo = (a + 1.0) * (a - 1.0);
            let expected = if b.sqrt() > lo.sqrt() && b.sqrt() < a { 2 } else { 1 };
            assert_eq!(count, expected, "A={a} B={b}");
            two += (count == 2) as usize;
        } else {
            assert_eq!(count, 0);
        }
    }
    assert!(two > 0);
}

#[test]
fn scan_all_invalid() {
    let o = run(&["scan", "rm2", "--type", "III", "-m", "2", "--a-range", "0.1:0.9", "--b-range", "-1:-0.5", "--steps", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let rows = csv_rows(&stdout(&o));
    assert_eq!(rows.len(), 25);
    assert!(rows.iter().all(|r| r[2] == "false"));
}

#[test]
fn scan_eckart_counts_bounded() {
    let o = run(&[
        "scan", "eckart", "--type", "I", "-m", "4", "--a-range", "2.1:6", "--b-range", "1:60", "--steps", "25",
        "--format", "json",
    ]);
    let rows: Vec<Value> = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(rows.iter().any(|r| r["valid"] == true));
    assert!(rows.iter().all(|r| r["bound_state_count"].as_u64().unwrap() <= 2));
}

#[test]
fn zeros_command() {
    let o = run(&["zeros", "-n", "3", "--alpha", "-2.5", "--beta", "0.7"]);
    assert_eq!(o.status.code(), Some(0));
    for r in csv_rows(&stdout(&o)) {
        assert_eq!(r[1], r[2]);
        assert_eq!(r[3] == "true", r[1] == "0");
    }
    assert_eq!(run(&["zeros", "-n", "2", "--alpha", "-1", "--beta", "0.5"]).status.code(), Some(2));
}

#[test]
fn verify_zero_rules() {
    let o = run(&["verify", "zero-rules", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let checks = v["sections"][0]["checks"].as_array().unwrap();
    let comparisons = checks.iter().find(|c| c["name"] == "formula vs brute-force comparisons").unwrap();
    assert!(comparisons["measured"].as_f64().unwrap() >= 500.0);
}

#[test]
fn verify_shape_invariance() {
    let o = run(&["verify", "shape-invariance"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.matches("|V_ext + 2 W' - V_ext(partner)|").count(), 3);
    assert!(text.ends_with("status: pass\n"));
}

#[test]
fn verify_all_covers_every_operation() {
    let o = run(&["verify", "all", "--json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let names: Vec<&str> = v["sections"].as_array().unwrap().iter().map(|s| s["name"].as_str().unwrap()).collect();
    assert_eq!(
        names,
        ["zero-rules", "closed-form", "operators", "residuals", "isospectral", "shape-invariance"]
    );
    let ops: Vec<&str> = v["operations"].as_array().unwrap().iter().map(|s| s.as_str().unwrap()).collect();
    let public = [
        "generalized_binomial",
        "jacobi_eval",
        "jacobi_derivative",
        "staircase",
        "is_admissible",
        "count_zeros",
        "is_nodeless",
        "brute_force_zero_count",
        "coordinate_map",
        "potential_value",
        "nu_max",
        "energy_level",
        "wavefunction_value",
        "continuum_threshold",
        "validate",
        "factorization_branches",
        "g_polynomial",
        "rational_part_value",
        "extended_potential_value",
        "closed_form_rational",
        "conventional_partner",
        "extended_energy_levels",
        "superpotential_value",
        "partner_consistency",
        "apply_A_operator",
        "y_polynomial",
        "extended_wavefunction_value",
        "y_ode_residual",
        "deleted_ground_superpotential",
        "enlarged_partner_spec",
        "shape_invariance_check",
        "discretize_hamiltonian",
        "eigen_bound_states",
        "numeric_spectrum",
        "inner_product",
        "node_count",
        "default_grid",
    ];
    let missing: Vec<_> = public.iter().filter(|p| !ops.contains(p)).collect();
    assert!(missing.is_empty(), "not exercised: {missing:?}");
}
