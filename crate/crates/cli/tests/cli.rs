use std::path::PathBuf;
use std::process::{Command, Output};

fn ldpc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ldpc"))
        .args(args)
        .output()
        .expect("the ldpc binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn fixture(name: &str) -> String {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/fixtures").join(name);
    p.to_str().unwrap().to_string()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("ldpc-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn assert_one_line_error(o: &Output, prefix: &str) {
    assert!(!o.status.success());
    let err = stderr(o);
    assert_eq!(err.lines().count(), 1, "{err}");
    assert!(err.starts_with(prefix), "{err}");
}

#[test]
fn gen_is_deterministic() {
    let args = ["gen", "--family", "gallager", "--j", "3", "--k", "6", "--n", "48", "--seed", "7"];
    let a = ldpc(&args);
    let b = ldpc(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).starts_with("48 24\n"));
    let c = ldpc(&["gen", "--family", "gallager", "--j", "3", "--k", "6", "--n", "48", "--seed", "8"]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn gen_every_family() {
    for family in [
        &["--family", "ru"][..],
        &["--family", "qc"],
        &["--family", "qc", "--expansion", "tailbiting"],
        &["--family", "nonbinary", "--j", "2", "--k", "4", "--n", "8", "--m", "2"],
    ] {
        let mut args = vec!["gen"];
        args.extend_from_slice(family);
        let o = ldpc(&args);
        assert!(o.status.success(), "{family:?}: {}", stderr(&o));
        assert!(!o.stdout.is_empty());
    }
    let labels = scratch("labels.txt");
    let o = ldpc(&[
        "gen",
        "--family",
        "nonbinary",
        "--j",
        "2",
        "--k",
        "4",
        "--n",
        "8",
        "--m",
        "3",
        "--labels-out",
        labels.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("24 12\n"));
    assert!(std::fs::metadata(&labels).unwrap().len() > 0);
}

#[test]
fn analyze_reports_xqr48() {
    let o = ldpc(&["analyze", &fixture("xqr48.alist")]);
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.lines().any(|l| l == "d_min=12 A=17296"), "{out}");
    assert!(out.lines().any(|l| l == "d_dual=12"));
    let csv = ldpc(&["analyze", &fixture("xqr48.alist"), "--csv"]);
    assert!(stdout(&csv).starts_with("n,k,d_min,A_dmin,"));
}

#[test]
fn extend_appends_rows() {
    let out = scratch("ext.alist");
    let o = ldpc(&["extend", &fixture("qc48.alist.missing"), "--rpc-rows", "4"]);
    assert_one_line_error(&o, "IO/");
    let qc = scratch("qc.alist");
    assert!(ldpc(&["gen", "--family", "qc", "--out", qc.to_str().unwrap()]).status.success());
    let o = ldpc(&["extend", qc.to_str().unwrap(), "--rpc-rows", "8", "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.starts_with("48 32\n"), "{text}");
}

#[test]
fn spectrum_and_bound() {
    let o = ldpc(&["spectrum", "--j", "2", "--k", "2", "--n", "4", "--kind", "weight"]);
    assert!(stdout(&o).lines().any(|l| l.starts_with("weight,2,") && l.ends_with(",2/3")));
    let spec = scratch("spec.csv");
    let o = ldpc(&["spectrum", "--j", "3", "--k", "6", "--n", "24", "--out", spec.to_str().unwrap()]);
    assert!(o.status.success());
    let o = ldpc(&["bound", spec.to_str().unwrap(), "--eps", "0:0.25:1"]);
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "eps,bound_ml,bound_bp,bound_ml_raw,bound_bp_raw");
    assert_eq!(lines.len(), 6);
    assert!(lines[1].starts_with("0,0e0,0e0,"));
    assert_one_line_error(&ldpc(&["spectrum", "--j", "3", "--k", "5", "--n", "24"]), "DOMAIN/");
    std::fs::write(&spec, "w,s\n1,2\n").unwrap();
    assert_one_line_error(&ldpc(&["bound", spec.to_str().unwrap()]), "PARSE/");
}

#[test]
fn rpc_with_zero_rows_is_bp() {
    let code = fixture("xqr48.alist");
    let common = ["--channel", "bec", "--eps", "0.2,0.3", "--max-frames", "2000", "--seed", "3"];
    let mut bp = vec!["simulate", code.as_str(), "--decoder", "bp"];
    bp.extend_from_slice(&common);
    let mut rpc = vec!["simulate", code.as_str(), "--decoder", "rpc", "--rpc-rows", "0"];
    rpc.extend_from_slice(&common);
    let (a, b) = (stdout(&ldpc(&bp)), stdout(&ldpc(&rpc)));
    let fer = |s: &str| -> Vec<String> { s.lines().skip(1).map(|l| l.split(',').skip(4).collect::<Vec<_>>().join(",")).collect() };
    assert_eq!(fer(&a), fer(&b));
    assert_eq!(a.lines().next().unwrap(), "channel,param,decoder,rpc_rows,frames,frame_errors,fer,ci95,seed");
    assert_eq!(a, stdout(&ldpc(&bp)), "byte-identical reruns");
}

#[test]
fn simulate_awgn_and_plot() {
    let code = fixture("xqr48.alist");
    let o = ldpc(&[
        "simulate", &code, "--channel", "awgn", "--ebno-db", "2,3", "--max-frames", "300", "--target-errors", "20",
        "--plot",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).starts_with("curve,x,y\n"));
    let bad = ldpc(&["simulate", &code, "--channel", "awgn", "--eps", "0.1"]);
    assert_one_line_error(&bad, "PARSE/");
    let bad = ldpc(&["simulate", &code, "--channel", "bec", "--eps", "1.5"]);
    assert_one_line_error(&bad, "DOMAIN/");
}

#[test]
fn malformed_input_and_flags() {
    let junk = scratch("junk.alist");
    std::fs::write(&junk, "not an alist\n").unwrap();
    assert_one_line_error(&ldpc(&["analyze", junk.to_str().unwrap()]), "PARSE/");
    assert_one_line_error(&ldpc(&["gen", "--family", "nope"]), "PARSE/");
    assert_one_line_error(&ldpc(&["frobnicate"]), "PARSE/");
    assert!(ldpc(&["--help"]).status.success());
}
