//! Behavior tests for the command-line surface: formats, exit codes,
//! determinism, and the environment-variable thread cap.

use std::process::Command;

use twistlab::run_capture;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_twistlab"))
}

#[test]
fn orbits_small_instance() {
    let (code, out, _) = run_capture(&["orbits", "--p", "3", "--d", "5", "--group", "O"]);
    assert_eq!(code, 0);
    let rep: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(rep["orbit_count"], 4);
    assert_eq!(rep["certainty"], "proved");
    assert_eq!(rep["config"]["seed"], 0);
    let sizes: Vec<u64> = rep["block_sizes"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_u64().unwrap())
        .collect();
    assert_eq!(sizes.iter().sum::<u64>(), 243);
}

#[test]
fn orbits_commutator_group() {
    let (code, out, _) = run_capture(&[
        "orbits", "--p", "3", "--d", "5", "--group", "commutator", "--budget", "64",
    ]);
    assert_eq!(code, 0);
    let rep: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(rep["orbit_count"], 4);
    assert_eq!(rep["certainty"], "proved");
}

#[test]
fn orbits_dimension_precondition() {
    let (code, _, err) = run_capture(&["orbits", "--p", "3", "--d", "4", "--group", "commutator"]);
    assert_eq!(code, 2);
    assert!(err.contains("dimension must be at least 5"), "{err}");
}

#[test]
fn curve_analyze_fixed_curve() {
    let (code, out, _) = run_capture(&[
        "curve-analyze", "--field", "5", "--curve", "y^2=x^3+(t)x+(t)",
    ]);
    assert_eq!(code, 0);
    let rep: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(rep["height"], 3);
    assert_eq!(rep["deg_m"], 1);
    assert_eq!(rep["deg_a"], 2);
    assert_eq!(rep["places"].as_array().unwrap().len(), 3);
    assert_eq!(rep["has_multiplicative_away_from_infinity"], true);
    // No --p: the selmer block is absent.
    assert!(rep.get("selmer").is_none());
}

#[test]
fn verify_lemma312_passes() {
    let (code, out, _) = run_capture(&["verify-lemma312", "--p", "17"]);
    assert_eq!(code, 0);
    let rep: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(rep["all_ok"], true);
    assert_eq!(rep["commutator"][0], serde_json::json!([0, 0, 0, 0, 1]));
}

#[test]
fn remark46_certifies() {
    let (code, out, _) = run_capture(&["remark46", "--field", "5"]);
    assert_eq!(code, 0);
    let rep: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(rep["disc_identity_certified"], true);
    assert_eq!(rep["no_finite_multiplicative_certified"], true);
    assert_eq!(rep["own_minimal_twist_certified"], true);
    assert_eq!(rep["pi1"], "3*t+4");
}

#[test]
fn count_fn_examples() {
    let (code, out, _) = run_capture(&["count-fn", "--field", "5", "--n", "1", "--delta", "t"]);
    assert_eq!(code, 0);
    let rep: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(rep["exact"], 16);
    assert_eq!(rep["leading_term"], 25);

    let (code, out, _) = run_capture(&["count-fn", "--field", "5", "--n", "2"]);
    assert_eq!(code, 0);
    let rep: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(rep["exact"], 80);
    assert_eq!(rep["config"]["delta"], "1");
}

#[test]
fn twist_reports_local_deltas() {
    let (code, out, _) = run_capture(&[
        "twist", "--field", "5", "--curve", "y^2=x^3+(t)x+(t)", "--f", "t+1",
    ]);
    assert_eq!(code, 0);
    let rep: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(rep["twister"], "t+1");
    assert_eq!(rep["height"], 9);
    let deltas = rep["local_deltas"].as_array().unwrap();
    // t+1 acquires additive reduction in the twist.
    let at_t1 = deltas.iter().find(|d| d["place"] == "t+1").unwrap();
    assert!(at_t1["before"]["type"] == "good" || at_t1["before"].is_null());
    assert_eq!(at_t1["after"]["type"], "additive");
    assert_eq!(deltas.last().unwrap()["place"], "inf");
}

#[test]
fn family_enumerate_csv() {
    let (code, out, _) = run_capture(&[
        "family-enumerate", "--field", "5", "--curve", "y^2=x^3+(t)x+(t)", "--n", "9",
    ]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.trim().lines().collect();
    assert_eq!(lines[0], "f,degree,a,J,g_degree,height,A,B");
    // 4 constants and 20 linear square-free twisters fit height 9.
    assert_eq!(lines.len(), 1 + 24);
    assert!(lines[1..].iter().any(|l| l.starts_with("1,0,0,,0,3,")));
}

#[test]
fn family_enumerate_classes_mode() {
    let (_, full, _) = run_capture(&[
        "family-enumerate", "--field", "5", "--curve", "y^2=x^3+(t)x+(t)", "--n", "9",
    ]);
    let (code, classes, _) = run_capture(&[
        "family-enumerate", "--field", "5", "--curve", "y^2=x^3+(t)x+(t)", "--n", "9",
        "--classes",
    ]);
    assert_eq!(code, 0);
    // Two square classes out of four leading coefficients: half the rows.
    let full_rows = full.trim().lines().count() - 1;
    let class_rows = classes.trim().lines().count() - 1;
    assert_eq!(class_rows * 2, full_rows);
}

#[test]
fn family_stats_report() {
    let (code, out, _) = run_capture(&[
        "family-stats", "--field", "5", "--curve", "y^2=x^3+(t)x+(t)", "--p", "17", "--n",
        "9",
    ]);
    assert_eq!(code, 0);
    let rep: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(rep["reference_average"], 18);
    assert_eq!(rep["reference_label"], "asymptotic prediction, not computed");
    assert_eq!(rep["family_size"], 24);
    assert_eq!(rep["admissibility"]["admissible"], true);
    assert_eq!(rep["bound_exponent"], 22);
    let histogram = rep["histogram"].as_object().unwrap();
    let total: u64 = histogram.values().map(|v| v.as_u64().unwrap()).sum();
    assert_eq!(total, 24);
}

#[test]
fn family_requires_minimal_twist_base() {
    let (code, _, err) = run_capture(&[
        "family-enumerate", "--field", "5", "--curve", "y^2=x^3+(t^2)x+(t^3)", "--n", "9",
    ]);
    assert_eq!(code, 2);
    assert!(err.contains("least height"), "{err}");
}

#[test]
fn parse_errors_exit_one_with_position() {
    let (code, _, err) = run_capture(&[
        "curve-analyze", "--field", "5", "--curve", "y^2=x^3+(t?)x+(t)",
    ]);
    assert_eq!(code, 1);
    assert!(err.contains("position"), "{err}");

    let (code, _, err) = run_capture(&["curve-analyze", "--field", "zzz", "--curve", "x"]);
    assert_eq!(code, 1);
    assert!(err.contains("invalid characteristic"), "{err}");

    let (code, _, _) = run_capture(&["no-such-command"]);
    assert_eq!(code, 1);
}

#[test]
fn precondition_violations_exit_two() {
    // Characteristic below 5.
    let (code, _, err) = run_capture(&[
        "curve-analyze", "--field", "3", "--curve", "y^2=x^3+(t)x+(t)",
    ]);
    assert_eq!(code, 2);
    assert!(err.contains("characteristic below 5"), "{err}");

    // Singular curve.
    let (code, _, err) = run_capture(&[
        "curve-analyze", "--field", "5", "--curve", "y^2=x^3+(2)x+(2)",
    ]);
    assert_eq!(code, 2);
    assert!(err.contains("singular"), "{err}");

    // Non-square-free twister.
    let (code, _, err) = run_capture(&[
        "twist", "--field", "5", "--curve", "y^2=x^3+(t)x+(t)", "--f", "t^2",
    ]);
    assert_eq!(code, 2);
    assert!(err.contains("square-free"), "{err}");

    // Even p for the orthogonal machinery.
    let (code, _, err) = run_capture(&["orbits", "--p", "2", "--d", "5", "--group", "O"]);
    assert_eq!(code, 2);
    assert!(err.contains("odd prime"), "{err}");
}

#[test]
fn identical_invocations_are_byte_identical() {
    let run = || {
        let out = bin()
            .args([
                "family-stats", "--field", "5", "--curve", "y^2=x^3+(t)x+(t)", "--p", "17",
                "--n", "12", "--seed", "7",
            ])
            .env("TWISTLAB_THREADS", "2")
            .output()
            .expect("binary runs");
        assert!(out.status.success());
        out.stdout
    };
    assert_eq!(run(), run());

    let orbits = || {
        let out = bin()
            .args(["orbits", "--p", "5", "--d", "4", "--group", "O", "--gram", "random", "--seed", "11"])
            .output()
            .expect("binary runs");
        assert!(out.status.success());
        out.stdout
    };
    assert_eq!(orbits(), orbits());
}

#[test]
fn thread_cap_is_validated_and_result_is_thread_independent() {
    let with_threads = |n: &str| {
        let out = bin()
            .args([
                "family-stats", "--field", "5", "--curve", "y^2=x^3+(t)x+(t)", "--p", "17",
                "--n", "12",
            ])
            .env("TWISTLAB_THREADS", n)
            .output()
            .expect("binary runs");
        out
    };
    let one = with_threads("1");
    let four = with_threads("4");
    assert!(one.status.success() && four.status.success());
    let strip = |raw: &[u8]| {
        // Outputs differ only in the reported thread count.
        String::from_utf8(raw.to_vec())
            .unwrap()
            .lines()
            .filter(|l| !l.contains("\"threads\""))
            .collect::<Vec<_>>()
            .join("\n")
    };
    assert_eq!(strip(&one.stdout), strip(&four.stdout));

    let bad = with_threads("zero");
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn extension_field_spec_accepted() {
    let (code, out, _) = run_capture(&["count-fn", "--field", "5^2", "--n", "1"]);
    assert_eq!(code, 0);
    let rep: serde_json::Value = serde_json::from_str(&out).unwrap();
    // (q - 1) * q with q = 25: every linear is square-free and coprime to 1.
    assert_eq!(rep["exact"], 600);
    assert_eq!(rep["leading_term"], 625);
}

#[test]
fn poly_print_parse_round_trip_seeded() {
    // Printer and parser agree on random polynomials, prime and extension
    // coefficients alike.
    use twistlab::parse::parse_poly;
    use twistlab_core::arith::SplitMix64;
    use twistlab_core::gf::make_field;
    use twistlab_core::polyring::Poly;

    let mut rng = SplitMix64::new(99);
    for field in [make_field(5, 1, None).unwrap(), make_field(7, 2, None).unwrap()] {
        for _ in 0..200 {
            let deg = rng.below(6) as usize;
            let coeffs: Vec<_> = (0..=deg)
                .map(|_| field.element_at(rng.below_u128(field.order())))
                .collect();
            let poly = Poly::from_elems(&field, coeffs);
            let printed = format!("{poly}");
            let parsed = parse_poly(&field, &printed).expect("printer output parses");
            assert_eq!(parsed, poly, "round trip failed for {printed}");
        }
    }
}
