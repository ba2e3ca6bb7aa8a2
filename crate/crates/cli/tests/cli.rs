use std::path::PathBuf;
use std::process::Command;

fn fixture(name: &str) -> String {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name);
    root.to_str().unwrap().to_string()
}

fn slender(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_slender")).args(args).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap().trim_end().to_string(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn ok(args: &[&str]) -> String {
    let (code, out, err) = slender(args);
    assert_eq!(code, 0, "{args:?}: {err}");
    out
}

#[test]
fn documented_invocations() {
    let g1 = fixture("g1.json");
    let free2 = fixture("free2.json");
    assert_eq!(ok(&["gp", "normalize", "--group", &g1, "u v u^-1"]), "v");
    assert_eq!(ok(&["eq", "symbolic", "--j", "1", "--k", "2,2", "--json"]), r#"{"e":[4,0,-2]}"#);
    assert_eq!(
        ok(&["wit", "certify", "--group", &free2, "--g", "u", "--b0", "u w", "--k", "4,6,8,10", "--json"]),
        r#"{"LB":5,"Lb0":2,"Lg":1,"M":3,"b0":"u w","g":"u","j":1,"k":[4,6,8,10],"valid":true}"#
    );
}

#[test]
fn graph_product_arithmetic() {
    let g1 = fixture("g1.json");
    let g = |args: &[&str]| ok(&[&["--group", g1.as_str()], args].concat());
    assert_eq!(g(&["gp", "mul", "u w", "w^-1 v", "u"]), "u^2 v");
    assert_eq!(g(&["gp", "pow", "u w", "-2"]), "w^-1 u^-1 w^-1 u^-1");
    assert_eq!(g(&["gp", "inv", "u^2 w"]), "w^-1 u^-2");
    assert_eq!(g(&["gp", "pivot", "u^2 w u^-1", "--json"]), r#"{"core":"u w","prefix":"u"}"#);
    assert_eq!(g(&["gp", "sigma", "u w v^2 w"]), "u=1 v=2 w=2");
    assert_eq!(g(&["gp", "ball", "--radius", "1", "--json"]), r#"{"elements":["e","u","u^-1","v","v^-1","w","w^-1"],"radius":1,"size":7}"#);
    assert_eq!(g(&["norm", "dudley", "u^3 w^-2"]), "5");
    assert_eq!(g(&["norm", "syllable", "u^3 w^-2 u"]), "3");
    assert_eq!(g(&["norm", "kersigma", "u w u^-1 w^-1", "--json"]), r#"{"norm":4}"#);
}

#[test]
fn strict_pivot_refuses_to_split() {
    let (code, _, err) = slender(&["gp", "pivot", "--strict", "--group", &fixture("g1.json"), "u^2 w u^-1"]);
    assert_eq!(code, 1);
    assert!(err.contains("split"), "{err}");
}

#[test]
fn norm_verify_reports_zero_violations() {
    let out = ok(&["norm", "verify", "--group", &fixture("g1.json"), "--radius", "2", "--nmax", "3"]);
    assert_eq!(out, "samples 33, violations 0");
}

#[test]
fn roots_and_bounds() {
    let free2 = fixture("free2.json");
    assert_eq!(ok(&["roots", "find", "--group", &free2, "u w u w"]), "u w: 2\nu w u w: 1");
    assert_eq!(ok(&["roots", "pbound", "--group", &free2, "u^4", "w"]), "5");
}

#[test]
fn equations_check_and_solve() {
    let g1 = fixture("g1.json");
    assert_eq!(ok(&["eq", "check", "--group", &g1, "--g", "u", "--k", "2,2", "u^7", "u^3", "u"]), "holds");
    let (code, out, _) = slender(&["eq", "check", "--group", &g1, "--g", "u", "--k", "2,2", "u^7", "u^3", "u^2", "--json"]);
    assert_eq!((code, out.as_str()), (1, r#"{"fails_at":1,"holds":false}"#));

    let free2 = fixture("free2.json");
    let (code, out, _) = slender(&["eq", "solve", "--group", &free2, "--g", "u", "--k", "4,6,8,10", "--b0", "u w"]);
    assert_eq!((code, out.as_str()), (1, "no solution within radius 3"));
    let solved = ok(&["eq", "solve", "--group", &free2, "--a", "e,e", "--k", "2,2", "--b0", "e", "--json"]);
    assert_eq!(solved, r#"{"radius":3,"solution":["e","e","e"]}"#);
}

#[test]
fn witness_derivation() {
    let out = ok(&["wit", "derive", "--group", &fixture("free2.json"), "--g", "u", "--terms", "4", "--b0", "u w", "--json"]);
    assert_eq!(out, r#"{"depth_bound":3,"g":"u","j":1,"method":"dudley","p":[4,6,8,10]}"#);
    let out = ok(&["wit", "derive", "--group", &fixture("g1.json"), "--g", "u v^-1", "--method", "graph-product", "--terms", "3"]);
    assert_eq!(out, "method graph-product\nj 1\np 4,12,24");
}

#[test]
fn hawaiian_words() {
    assert_eq!(ok(&["heg", "project", "a0 a3 a1 a3^-1 a1^-1 a2", "--level", "2"]), "a0");
    assert_eq!(ok(&["heg", "split", "a0 a2 a1 a3", "--level", "3", "--at", "1"]), "[a0 | a2 a1]");
    assert_eq!(ok(&["heg", "lazy", "0", "--level", "2"]), "a0 a1^2");
}

#[test]
fn counterexample_group() {
    assert_eq!(ok(&["cx", "mul", "x3^2", "x3^2"]), "z^1 x3^1");
    assert_eq!(ok(&["cx", "pow", "x4", "4"]), "z^1");
    assert_eq!(ok(&["cx", "quotient", "z^5 x2 x3^2"]), "[2:1, 3:2]");
    assert_eq!(ok(&["cx", "demo", "--k", "2,2"]), "b0 = z^1\nb1 = z^0\nb2 = z^-1 x4^2\nholds");
    let (code, _, err) = slender(&["cx", "demo", "--k", "1"]);
    assert_eq!(code, 1, "{err}");
}

#[test]
fn parse_errors_exit_two_and_name_the_token() {
    let g1 = fixture("g1.json");
    for (args, token) in [
        (vec!["gp", "normalize", "--group", &g1, "u q^2"], "q"),
        (vec!["gp", "normalize", "--group", &g1, "u^x"], "u^x"),
        (vec!["cx", "mul", "x2 y7"], "y7"),
        (vec!["heg", "project", "a0 b1", "--level", "3"], "b1"),
    ] {
        let (code, _, err) = slender(&args);
        assert_eq!(code, 2, "{args:?}");
        assert_eq!(err.lines().count(), 1, "{err}");
        assert!(err.contains(&format!("`{token}`")), "{err}");
    }
    assert_eq!(slender(&["gp", "normalize", "u"]).0, 2);
    assert_eq!(slender(&["eq", "symbolic", "--k", "2,x"]).0, 2);
    assert_eq!(slender(&["gp", "normalize", "--group", "/nonexistent.json", "u"]).0, 2);
}

#[test]
fn suite_output_is_reproducible() {
    let first = slender(&["suite", "run", "--only", "5", "--seed", "7", "--json"]);
    let second = slender(&["suite", "run", "--only", "5", "--seed", "7", "--json"]);
    assert_eq!(first.0, 0);
    assert_eq!(first, second);
    assert!(first.1.contains(r#""passed":true"#));
}
