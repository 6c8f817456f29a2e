use cremona_cli::report::{RootsDocument, VerifySummary};
use cremona_cli::{run, Outcome, EXIT_INCONCLUSIVE, EXIT_NEGATIVE, EXIT_OK, EXIT_USAGE};

fn cremona(args: &[&str]) -> Outcome {
    run(std::iter::once("cremona").chain(args.iter().copied()))
}

#[test]
fn roots_lists_entries() {
    let out = cremona(&["roots", "--n", "2", "--max-deg", "1"]);
    assert_eq!(out.code, EXIT_OK);
    assert_eq!(out.stdout.lines().count(), 5);
    assert!(out.stdout.contains("i=1 alpha=(0,1) character=(-2,0) mvec=(-2)  x2 d/dx1"));
}

#[test]
fn roots_json_schema() {
    let out = cremona(&["roots", "--n", "3", "--max-deg", "2", "--json"]);
    assert_eq!(out.code, EXIT_OK);
    let value: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    let obj = value.as_object().unwrap();
    assert_eq!(obj.keys().collect::<Vec<_>>(), ["max_deg", "n", "roots"]);
    assert_eq!(obj["n"], 3);
    let roots = obj["roots"].as_array().unwrap();
    assert_eq!(roots.len(), 3 * 6);
    for r in roots {
        let r = r.as_object().unwrap();
        let mut keys: Vec<_> = r.keys().cloned().collect();
        keys.sort();
        assert_eq!(keys, ["alpha", "character", "i", "mvec"]);
        assert_eq!(r["alpha"].as_array().unwrap().len(), 3);
        assert_eq!(r["character"].as_array().unwrap().len(), 3);
        assert_eq!(r["mvec"].as_array().unwrap().len(), 2);
        assert_eq!(r["character"][2], 0);
    }
    let doc: RootsDocument = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(doc.to_json(), out.stdout);
    // byte-stable
    assert_eq!(cremona(&["roots", "--n", "3", "--max-deg", "2", "--json"]), out);
}

#[test]
fn root_check_exit_codes() {
    let out = cremona(&["root-check", "--n", "2", "x1 d/dx1"]);
    assert_eq!(out.code, EXIT_INCONCLUSIVE);
    let out = cremona(&["root-check", "--n", "2", "5*x2^3 d/dx1"]);
    assert_eq!(out.code, EXIT_OK);
    assert!(out.stdout.contains("mvec=(-4)"), "{}", out.stdout);
    let out = cremona(&["root-check", "--n", "2", "d/dx1 + d/dx2"]);
    assert_eq!(out.code, EXIT_NEGATIVE);
    let out = cremona(&["root-check", "--n", "2", "0, 0"]);
    assert_eq!(out.code, EXIT_NEGATIVE);
    let out = cremona(&["root-check", "--n", "2", "x1 d/dx1 - x2 d/dx2", "--cap", "40"]);
    assert_eq!(out.code, EXIT_INCONCLUSIVE);
    assert!(out.stdout.contains("cap 40"));
}

#[test]
fn char_verdicts() {
    let out = cremona(&["char", "--n", "3", "--beta", "0,0,0"]);
    assert_eq!(out.code, EXIT_NEGATIVE);
    assert!(out.stdout.contains("not a root"));
    let out = cremona(&["char", "--n", "3", "--beta", "-1,2,0"]);
    assert_eq!(out.code, EXIT_OK);
    assert!(out.stdout.contains("x2^2 d/dx1"), "{}", out.stdout);
    assert_eq!(cremona(&["char", "--n", "3", "--beta", "1,2"]).code, EXIT_USAGE);
}

#[test]
fn homogeneity_and_degree() {
    let out = cremona(&["homog", "--n", "3", "x2*x3 d/dx1"]);
    assert_eq!(out.code, EXIT_OK);
    assert!(out.stdout.ends_with("homogeneous of degree (-2,0)\n"));
    assert_eq!(cremona(&["degree", "--n", "3", "x2*x3 d/dx1"]).stdout, "(-2,0)\n");
    assert_eq!(cremona(&["degree", "--n", "3", "d/dx1 + d/dx2"]).code, EXIT_NEGATIVE);
    assert_eq!(cremona(&["homog", "--n", "3", "(x1 + x2) d/dx1"]).code, EXIT_NEGATIVE);
    assert_eq!(cremona(&["degree", "--n", "2", "0,0"]).code, EXIT_NEGATIVE);
}

#[test]
fn exp_and_jacobian() {
    let out = cremona(&["exp", "--n", "2", "--t", "1/2", "x2^2 d/dx1"]);
    assert_eq!(out.code, EXIT_OK);
    assert_eq!(out.stdout, "x1 -> 1/2*x2^2 + x1\nx2 -> x2\njacobian determinant: 1\n");
    assert_eq!(cremona(&["exp", "--n", "2", "--t", "1", "x1 d/dx1"]).code, EXIT_INCONCLUSIVE);
    assert_eq!(cremona(&["jac", "--n", "2", "x1 + x2^2, x2"]).code, EXIT_OK);
    let out = cremona(&["jac", "--n", "2", "2*x1, x2"]);
    assert_eq!((out.code, out.stdout.as_str()), (EXIT_NEGATIVE, "2\n"));
}

#[test]
fn ah_subcommands() {
    assert_eq!(cremona(&["ah", "eval", "--n", "3", "--m", "-2,5"]).stdout, "-2\n");
    assert_eq!(cremona(&["ah", "member", "--n", "2", "--r", "1", "--m", "-1"]).code, EXIT_OK);
    assert_eq!(cremona(&["ah", "member", "--n", "2", "--r", "0", "--m", "-1"]).code, EXIT_NEGATIVE);
    assert_eq!(cremona(&["ah", "admissible", "--n", "3", "--i", "3", "--e", "1,1"]).code, EXIT_OK);
    assert_eq!(cremona(&["ah", "admissible", "--n", "3", "--i", "1", "--e", "0,0"]).code, EXIT_NEGATIVE);
    let out = cremona(&["ah", "translate", "--n", "3", "--i", "1", "--e", "-3,0", "--lambda", "2"]);
    assert_eq!(out.stdout, "lambda=2, i=1, e=(-3,0)\n2*x2^2*x3^2 d/dx1\n");
    assert_eq!(cremona(&["ah", "translate", "--n", "2", "--i", "1", "--e", "1"]).code, EXIT_NEGATIVE);
    assert_eq!(cremona(&["ah", "translate", "--n", "2", "--i", "3", "--e", "1"]).code, EXIT_USAGE);
    assert_eq!(cremona(&["ah", "eval", "--n", "3", "--m", "1"]).code, EXIT_USAGE);
}

#[test]
fn usage_errors() {
    assert_eq!(cremona(&["lnd", "--n", "2", "x4"]).code, EXIT_USAGE);
    assert_eq!(cremona(&["lnd", "--n", "9", "x1"]).code, EXIT_USAGE);
    assert_eq!(cremona(&["lnd", "--n", "2", "x1 +"]).code, EXIT_USAGE);
    assert_eq!(cremona(&["bogus"]).code, EXIT_USAGE);
    assert_eq!(cremona(&["roots", "--n", "2", "--max-deg", "13"]).code, EXIT_USAGE);
    assert_eq!(cremona(&["exp", "--n", "2", "--t", "x1", "x2 d/dx1"]).code, EXIT_USAGE);
    let help = cremona(&["--help"]);
    assert_eq!(help.code, EXIT_OK);
    assert!(help.stdout.contains("root-check"));
}

#[test]
fn verify_json_is_stable_across_job_counts() {
    let args = ["verify", "--n", "2", "--max-deg", "3", "--budget", "400", "--seed", "11", "--json"];
    let one = cremona(&[&args[..], &["--jobs", "1"]].concat());
    let two = cremona(&[&args[..], &["--jobs", "2"]].concat());
    assert_eq!(one.code, EXIT_OK);
    assert_eq!(one, two);
    let summary: VerifySummary = serde_json::from_str(&one.stdout).unwrap();
    assert!(summary.pass);
    assert_eq!(summary.tested, 8 + 400);
    let value: serde_json::Value = serde_json::from_str(&one.stdout).unwrap();
    assert_eq!(value.as_object().unwrap().keys().collect::<Vec<_>>(), ["pass", "tested", "violations"]);
}

#[test]
fn verify_text_for_n4_skips_the_oracle() {
    let out = cremona(&["verify", "--n", "4", "--max-deg", "2", "--ebox", "3"]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stdout);
    assert!(out.stdout.contains("oracle: skipped"));
    assert!(out.stdout.ends_with("PASS\n"));
}
