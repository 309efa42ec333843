use std::process::{Command, Output};

use serde_json::Value;

fn conepoly(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_conepoly"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn json(args: &[&str]) -> Value {
    let out = conepoly(args);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_str(&stdout(&out)).unwrap()
}

fn line_value(text: &str, key: &str) -> f64 {
    text.lines()
        .find_map(|l| l.strip_prefix(&format!("{key} = ")))
        .unwrap_or_else(|| panic!("no `{key}` in\n{text}"))
        .parse()
        .unwrap()
}

#[test]
fn signature_json_for_one_positive_direction() {
    let v = json(&["signature", "--kappa", "1/2,1/2,1/2,1/2,1", "--json"]);
    assert_eq!(v["closed"]["P"], 1);
    assert_eq!(v["closed"]["N"], 3);
    assert_eq!(v["recursive"]["P"], 1);
    assert_eq!(v["recursive"]["N"], 3);
    assert_eq!(
        (
            v["numeric"]["P"].as_u64(),
            v["numeric"]["N"].as_u64(),
            v["numeric"]["Z"].as_u64()
        ),
        (Some(1), Some(3), Some(0))
    );
    assert_eq!(v["agree"], true);
    assert_eq!(v["dim"], 4);
}

#[test]
fn signature_json_for_degenerate_pair() {
    let v = json(&["signature", "--kappa", "1,1", "--json"]);
    assert_eq!(v["p"], 0);
    assert_eq!(v["q"], 0);
    assert_eq!(v["epsilon"], 1);
    assert_eq!(v["numeric"]["Z"], 1);
    assert_eq!(v["numeric"]["P"], 0);
    assert_eq!(v["numeric"]["N"], 0);
}

#[test]
fn json_keys_keep_schema_order_and_complex_entries_are_pairs() {
    let out = conepoly(&["signature", "--kappa", "1/2,1/3,5/4", "--json", "--gram"]);
    let text = stdout(&out);
    let keys = [
        "\"kappa_tokens\"",
        "\"n\"",
        "\"dim\"",
        "\"epsilon\"",
        "\"q\"",
        "\"p\"",
        "\"numeric\"",
        "\"recursive\"",
        "\"closed\"",
        "\"agree\"",
        "\"gram\"",
    ];
    let positions: Vec<usize> = keys.iter().map(|k| text.find(k).unwrap()).collect();
    assert!(positions.windows(2).all(|w| w[0] < w[1]));
    let v: Value = serde_json::from_str(&text).unwrap();
    let gram = v["gram"].as_array().unwrap();
    assert_eq!(gram.len(), 2);
    assert!(gram
        .iter()
        .flat_map(|r| r.as_array().unwrap())
        .all(|c| c.as_array().unwrap().len() == 2));
    // 17 significant digits in scientific notation.
    assert!(text.contains("\"tolerance\": 1.0000000000000001e-9"));
}

#[test]
fn gram_command_reports_inertia() {
    let v = json(&["gram", "--kappa", "1/2,1/2,1/2,1/2,1", "--json"]);
    assert_eq!(v["inertia"]["P"], 1);
    assert_eq!(v["inertia"]["N"], 3);
    assert_eq!(v["gram"].as_array().unwrap().len(), 4);
}

#[test]
fn zero_angle_is_a_domain_error() {
    let out = conepoly(&["signature", "--kappa", "0/1,1"]);
    assert_eq!(code(&out), 1);
    assert_eq!(String::from_utf8_lossy(&out.stderr).lines().count(), 1);
}

#[test]
fn usage_errors_exit_one_and_help_exits_zero() {
    assert_eq!(code(&conepoly(&["signature"])), 1);
    assert_eq!(code(&conepoly(&["frobnicate"])), 1);
    assert_eq!(code(&conepoly(&["signature", "--kappa", "1/2,x"])), 1);
    assert_eq!(code(&conepoly(&["--help"])), 0);
}

#[test]
fn sample_basis_vector() {
    let out = conepoly(&["sample", "--kappa", "1/2,1/2", "--coeffs", "1+0i"]);
    let text = stdout(&out);
    assert!(text.contains("z2 = 0.500000000000+0.500000000000i"));
    assert!(text.contains("z3 = 1.000000000000+0.000000000000i"));
    assert!(text.contains("z4 = 0.500000000000-0.500000000000i"));
    assert!((line_value(&text, "square_norm") + 0.5).abs() < 1e-12);
}

#[test]
fn sample_is_deterministic_per_seed() {
    let a = conepoly(&["sample", "--kappa", "1/3,5/4,7/6,1/2", "--seed", "42"]);
    let b = conepoly(&["sample", "--kappa", "1/3,5/4,7/6,1/2", "--seed", "42"]);
    let c = conepoly(&["sample", "--kappa", "1/3,5/4,7/6,1/2", "--seed", "43"]);
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn regular_octagon_and_svg() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("octagon.svg");
    let out = conepoly(&[
        "sample",
        "--kappa",
        "5/4,5/4,5/4,5/4",
        "--coeffs=-1+1i,-2,-1-1i",
        "--svg",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let norm = line_value(&stdout(&out), "square_norm");
    assert!((norm - 2.0 * 2f64.sqrt()).abs() < 1e-9);
    let svg = std::fs::read_to_string(&path).unwrap();
    assert!(svg.contains("<polyline"));
    assert_eq!(svg.matches("<circle").count(), 8);
    assert_eq!(svg.matches(r#"fill="black" stroke"#).count(), 4);
}

#[test]
fn unwritable_svg_path_is_reported() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("missing").join("x.svg");
    let out = conepoly(&[
        "sample",
        "--kappa",
        "1/2,1/2",
        "--svg",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("missing"));
}

#[test]
fn cut_glue_transform() {
    let out = conepoly(&[
        "transform",
        "--kappa",
        "1/2,1",
        "--op",
        "cut-glue",
        "--index",
        "1",
        "--coeffs",
        "1+0i",
    ]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let output = text.split("output:").nth(1).unwrap();
    assert!(output.contains("z2 = 0.000000000000+0.500000000000i"));
    assert!(output.contains("z3 = 0.000000000000+1.000000000000i"));
    assert!(output.contains("z4 = 0.500000000000+0.500000000000i"));
    assert!(text.contains("target_kappa = 1,1/2"));
    assert!((line_value(&text, "input_square_norm") + 0.25).abs() < 1e-12);
    assert!((line_value(&text, "output_square_norm") + 0.25).abs() < 1e-12);
}

#[test]
fn reverse_transform_flips_norm() {
    let out = conepoly(&[
        "transform",
        "--kappa",
        "1/2,1/2",
        "--op",
        "reverse",
        "--coeffs",
        "1",
    ]);
    let text = stdout(&out);
    assert!(text.contains("target_kappa = 3/2,3/2"));
    let before = line_value(&text, "input_square_norm");
    let after = line_value(&text, "output_square_norm");
    assert!((before + 0.5).abs() < 1e-12 && (after - 0.5).abs() < 1e-12);
}

#[test]
fn cut_glue_index_out_of_range() {
    let out = conepoly(&[
        "transform",
        "--kappa",
        "1/2,1/2",
        "--op",
        "cut-glue",
        "--index",
        "5",
        "--coeffs",
        "1",
    ]);
    assert_eq!(code(&out), 1);
}

#[test]
fn verify_passes_and_catches_injected_fault() {
    let ok = conepoly(&["verify", "--trials", "40", "--n-max", "7"]);
    assert_eq!(code(&ok), 0, "{}", stdout(&ok));
    assert_eq!(stdout(&ok).matches("family").count(), 8);

    let one = conepoly(&["verify", "--trials", "1"]);
    assert_eq!(code(&one), 0);
    assert_eq!(stdout(&one).matches("family").count(), 8);

    let bad = conepoly(&["verify", "--trials", "20", "--inject-fault", "negate-q"]);
    assert_eq!(code(&bad), 2);
    assert!(stdout(&bad).contains("minimal"));
}
