use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_beauville"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn verify_level_three_holds() {
    let o = run(&["verify", "--k", "3", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["orderG"], 256);
    assert_eq!(v["conditionA"], true);
    assert_eq!(v["conditionB"]["verdict"], true);
    assert_eq!(v["conditionC"], true);
    assert_eq!(v["invariants"]["genus"], 17);
}

#[test]
fn verify_level_four_fails_b_as_expected() {
    let o = run(&["verify", "--k", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("(B) g0 = x2: fails"), "{s}");
    assert!(s.contains("x^4 = y^4: yes"), "{s}");
}

#[test]
fn verify_range_as_csv() {
    let o = run(&["verify", "--k-max", "4", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    let lines: Vec<&str> = s.lines().collect();
    assert!(lines[0].starts_with("k,order_g,order_h,sigma_t,a,b,"));
    assert_eq!(lines.len(), 3);
    assert!(lines[1].starts_with("3,256,128,55,true,true,"));
}

#[test]
fn orders_ratios() {
    let o = run(&["orders", "--k-max", "6", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    let ratios: Vec<&str> = s.lines().skip(1).map(|l| l.rsplit(',').next().unwrap()).collect();
    assert_eq!(ratios[2..], ["8", "8", "4", "8"]);
}

#[test]
fn homcheck_psi_line() {
    let o = run(&["homcheck", "--k", "3", "--psi"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim_end(), "automorphism: yes; ι(u₃)=σ_ψ(u₃): yes; S(u₃) real");
}

#[test]
fn homcheck_pairs_at_level_five() {
    let o = run(&["homcheck", "--k", "5", "--pairs", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let pairs = v["pairs"].as_array().unwrap();
    assert_eq!(pairs.len(), 6);
    assert!(pairs.iter().all(|p| p["extends"] == false));
}

#[test]
fn schemes_match_published_figures() {
    let o = run(&["schemes"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert_eq!(s.matches("matches published figure: yes").count(), 12);
    let o = run(&["schemes", "--pair", "x0,y0", "--regime", "cube", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 1);
    assert_eq!(v[0]["exponent"], 3);
}

#[test]
fn powers_and_sigma() {
    let o = run(&["powers", "--gen", "x", "--k", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("x^(2^2): 3 vanishing diagonals"));
    let o = run(&["sigma", "--k", "3", "--format", "csv"]);
    let s = stdout(&o);
    assert!(s.contains("Σ(T),55"));
    assert_eq!(s.lines().filter(|l| l.contains('∩') && l.ends_with(",1")).count(), 9);
}

#[test]
fn surface_table() {
    let o = run(&["surface", "--k", "3", "--format", "csv"]);
    assert_eq!(
        stdout(&o),
        "k,order_g,order_h,ord_x0,ord_x1,ord_x,nu,genus,euler,chi,k_squared\n3,256,128,4,4,4,64,17,8,2,16\n"
    );
}

#[test]
fn over_budget_is_refused() {
    let o = run(&["verify", "--k", "9", "--budget", "1000"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("budget"));
    let o = run(&["verify"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn output_is_independent_of_threads() {
    let a = run(&["--threads", "1", "verify", "--k-max", "5", "--format", "json"]);
    let b = run(&["--threads", "2", "verify", "--k-max", "5", "--format", "json"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn cache_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let a = run(&["--cache-dir", d, "verify", "--k", "4", "--format", "json"]);
    assert!(std::fs::read_dir(dir.path()).unwrap().count() > 0);
    let b = run(&["--cache-dir", d, "verify", "--k", "4", "--format", "json"]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, run(&["verify", "--k", "4", "--format", "json"]).stdout);
}
