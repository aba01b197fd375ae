use nsqft::hopf::{stabilization_params, SqrtChoice};
use nsqft::rep::Category;
use std::process::{Command, Output};

fn nsqft(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nsqft")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn example(name: &str) -> String {
    format!("{}/../../examples/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn error_lines(o: &Output) -> Vec<String> {
    let err = String::from_utf8(o.stderr.clone()).unwrap();
    let out = stdout(o);
    err.lines().chain(out.lines()).filter(|l| l.starts_with("ERROR ")).map(String::from).collect()
}

#[test]
fn verify_passes_at_three() {
    let o = nsqft(&["verify", "--r", "3"]);
    assert!(o.status.success(), "{}", stdout(&o));
    let text = stdout(&o);
    assert!(text.ends_with("RESULT PASS\n"));
    assert!(!text.contains("FAIL "));
    for suite in ["cyclo", "hopf", "rep", "tangle", "mcg"] {
        assert!(text.lines().any(|l| l.starts_with(suite) && l.ends_with(" 0")), "{suite}");
    }
}

#[test]
fn invariant_of_unknot_with_h() {
    let cat = Category::qsl2(3).unwrap();
    let p = stabilization_params(&cat.hopf, SqrtChoice::Positive).unwrap();
    let t_h = cat.modified_trace(&cat.h_endomorphism().unwrap()).unwrap();
    let want = &p.script_d.inv().unwrap() * &t_h;
    let o = nsqft(&["invariant", &example("unknot_h.surgery"), "--r", "3"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().next().unwrap(), format!("invariant {want}"));
    // 3^{-3/2}, up to the float rendering
    let approx: f64 = text.lines().nth(1).unwrap().split_whitespace().nth(1).unwrap().parse().unwrap();
    assert!((approx - 3f64.powf(-1.5)).abs() < 1e-9);
    let exact = nsqft(&["invariant", &example("unknot_h.surgery"), "--format", "exact"]);
    assert_eq!(stdout(&exact).lines().count(), 1);
    let stabilized = nsqft(&["invariant", &example("unknot_h_stabilized.surgery")]);
    assert_eq!(stdout(&stabilized), text);
}

#[test]
fn sl2z_report() {
    let o = nsqft(&["sl2z", "--r", "3"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("relations: (ST)^3 ∝ S^2 OK, S^4 ∝ id OK\n"));
    assert_eq!(text.matches("MATRIX 27 27").count(), 2);
    assert!(text.contains("S^4 = c id with c = 729"));
}

#[test]
fn mcg_export_shape() {
    let o = nsqft(&["mcg", "--r", "3", "--genus", "1", "--labels", "P1", "--side", "lyu"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.starts_with("REP side=lyu genus=1 labels=[P1] dim=6\n"));
    let gens: Vec<_> = text.lines().filter_map(|l| l.strip_prefix("GENERATOR ")).collect();
    assert_eq!(gens, ["v_1", "S_1", "T_1", "H_1,1"]);
    let o = nsqft(&["mcg", "--side", "rhoX"]);
    assert!(stdout(&o).starts_with("REP side=rhoX genus=1 labels=[] dim=4\n"));
}

#[test]
fn structure_round_trips_through_a_file() {
    let o = nsqft(&["structure", "--r", "3"]);
    assert!(o.status.success());
    let dir = std::env::temp_dir().join(format!("nsqft-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("h.txt");
    std::fs::write(&path, &o.stdout).unwrap();
    let back = nsqft(&["structure", "--input", path.to_str().unwrap()]);
    assert_eq!(back.stdout, o.stdout);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn each_error_path_prints_one_error_line() {
    let bad_tangle = std::env::temp_dir().join(format!("nsqft-bad-{}.surgery", std::process::id()));
    std::fs::write(&bad_tangle, "bottom P1^\nslice x+\n").unwrap();
    let bad = bad_tangle.to_str().unwrap();
    let (link, unknot) = (example("hopf_link_h.surgery"), example("unknot_h.surgery"));
    let cases: Vec<(Vec<&str>, &str)> = vec![
        (vec!["verify", "--r", "4"], "order"),
        (vec!["invariant", "/nonexistent/file.surgery"], "io"),
        (vec!["invariant", bad], "type"),
        (vec!["invariant", &link, "--cap", "10"], "size-cap"),
        (vec!["invariant", &unknot, "--cap", "0"], "invalid"),
        (vec!["mcg", "--labels", "Q7"], "unknown"),
        (vec!["mcg", "--side", "middle"], "invalid"),
        (vec!["frobnicate"], "usage"),
        (vec!["sl2z", "--r", "x"], "usage"),
    ];
    for (args, code) in &cases {
        let o = nsqft(args);
        assert!(!o.status.success(), "{args:?}");
        let errs = error_lines(&o);
        assert_eq!(errs.len(), 1, "{args:?}: {errs:?}");
        assert!(errs[0].starts_with(&format!("ERROR {code} ")), "{args:?}: {}", errs[0]);
    }
    std::fs::remove_file(&bad_tangle).unwrap();
}

#[test]
fn output_is_deterministic() {
    let link = example("hopf_link_h.surgery");
    for args in [&["sl2z"][..], &["mcg", "--genus", "1", "--labels", "P1"][..], &["invariant", &link][..]] {
        let a = nsqft(args);
        let b = nsqft(args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}
