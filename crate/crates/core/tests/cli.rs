use xyswap_core::cli::run_with;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run_with(std::iter::once("xyswap").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn parse_wide(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

#[test]
fn table1_matches_golden() {
    let (code, out, _) = run(&["table1"]);
    assert_eq!(code, 0);
    let golden = parse_wide(include_str!("golden/table1.csv"));
    let got = parse_wide(&out);
    assert_eq!(got.len(), 3);
    assert_eq!(got[0], golden[0]);
    for (g_row, o_row) in golden[1..].iter().zip(&got[1..]) {
        assert_eq!(g_row.len(), o_row.len());
        assert_eq!(g_row[0], o_row[0]);
        for (g, o) in g_row[1..].iter().zip(&o_row[1..]) {
            let g: f64 = g.parse().unwrap();
            let o: f64 = o.parse().unwrap();
            assert!((g - o).abs() <= 1e-4, "{g} vs {o}");
        }
    }
}

#[test]
fn table1_json_is_flat() {
    let (code, out, _) = run(&["table1", "--format", "json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 10);
    assert_eq!(rows[5]["eta"].as_f64(), Some(0.5));
    assert!((rows[5]["t3_over_j"].as_f64().unwrap() - 0.43810).abs() < 1e-4);
}

#[test]
fn output_is_byte_identical_across_runs() {
    for args in [
        &["fidelity", "--gamma", "0.3", "--eta", "0.4", "--T", "0.5"][..],
        &["fig1", "--gammas", "0.6", "--steps", "10"][..],
        &["state", "--T", "0.7", "--gamma", "1", "--format", "csv"][..],
    ] {
        assert_eq!(run(args), run(args));
    }
}

#[test]
fn fig1_long_format() {
    let (code, out, _) = run(&["fig1", "--gammas", "0,0.3,0.6,1", "--eta-max", "2", "--steps", "80"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "gamma,eta,t3_over_j");
    assert_eq!(lines.len(), 1 + 4 * 81);
    // Root of sinh³(1/T) = 2(cosh²(1/T) + cosh(1/T)) is 0.5550804512.
    assert_eq!(lines[1], "0,0,0.555080");
    assert!(lines.contains(&"0.6,0.8,0.000000"));
    assert!(!out.contains('\r'));
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("xyswap-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("swap.csv");
    let (code, out, _) = run(&["swap", "--T", "1", "--eta", "0.5", "--format", "csv", "--out", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().count(), 9);
    let total: f64 = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(1).unwrap().parse::<f64>().unwrap())
        .sum();
    assert!((total - 1.0).abs() < 1e-5);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn fidelity_reports_both_routes() {
    let (code, out, _) = run(&["fidelity", "--gamma", "0.5", "--eta", "1.5", "--T", "0.3", "--mu", "0.2"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let row = &v[0];
    let diff = row["difference"].as_f64().unwrap();
    assert!(diff.abs() < 1e-9);
    assert_eq!(row["mu"].as_f64(), Some(0.2));
}

#[test]
fn invalid_parameters_name_the_flag() {
    let (code, _, err) = run(&["fidelity", "--T", "0.5", "--mu", "1.2"]);
    assert_eq!(code, 1);
    assert!(err.contains("--mu"), "{err}");
    let (code, _, err) = run(&["critical", "--kind", "2", "--gamma", "1.5"]);
    assert_eq!(code, 1);
    assert!(err.contains("--gamma"), "{err}");
    let (code, _, err) = run(&["fig1", "--steps", "0"]);
    assert_eq!(code, 1);
    assert!(err.contains("--steps"), "{err}");
}

#[test]
fn critical_command() {
    let (code, out, _) = run(&["critical", "--kind", "1", "--eta", "2", "--format", "csv", "--precision", "5"]);
    assert_eq!(code, 0);
    let row = out.lines().nth(1).unwrap();
    assert!(row.starts_with("1,0,2,1.13459,"), "{row}");
    // Concurrence is zero at T = 0 above the critical field and revives at
    // finite T, so the scan sees two crossings.
    assert!(row.ends_with(",true,2"), "{row}");
}
