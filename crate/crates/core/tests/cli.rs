use std::process::{Command, Output};

const ZETA: &str = r#"{"frequency":{"kind":"log_n"},"coefficients":{"kind":"ones"}}"#;

fn dirichlet(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dirichlet")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn analyze_frequency_json() {
    let o = dirichlet(&["analyze-frequency", "--freq", r#"{"kind":"n"}"#, "--n-max", "1000", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["l_estimate"]["exact"], 0.0);
    assert_eq!(v["bohr_theorem"]["verdict"], "holds");
    assert_eq!(v["landau_condition"]["verdict"]["verdict"], "holds");
}

#[test]
fn analyze_frequency_bc_fails_with_witness() {
    let o = dirichlet(&[
        "analyze-frequency",
        "--freq",
        r#"{"kind":"log_n_pow","alpha":0.5}"#,
        "--n-max",
        "1000000000000",
        "--l",
        "1",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("BC (l = 1, delta = 0.1): Fails"), "{out}");
    assert!(out.contains("witness:"), "{out}");
}

#[test]
fn abscissa_in_sigma_space() {
    let o = dirichlet(&["abscissas", "--series", ZETA, "--space", "sigma", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.starts_with("x,lognorm_over_x,space_kind,k\n"));
    assert_eq!(out.lines().count(), 65);
    let o = dirichlet(&["abscissas", "--series", ZETA, "--space", "sigma", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let value = v["value"].as_f64().unwrap();
    assert!((value - 1.0).abs() < 0.05, "{value}");
}

#[test]
fn kernels_profile_csv() {
    let o = dirichlet(&["kernels", "--x", "2", "--sigma", "1", "--t", "0", "--t", "-1.5", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("t,K,P,K_hat,P_hat"));
    let row: Vec<f64> = lines.nth(1).unwrap().split(',').map(|c| c.parse().unwrap()).collect();
    assert_eq!(row[0], -1.5);
    assert!((row[3] - 0.25).abs() < 1e-12);
    assert!((row[4] - (-1.5f64).exp()).abs() < 1e-12);
}

#[test]
fn kernel_mass() {
    let o = dirichlet(&["kernels", "--kind", "fejer", "--x", "3", "--mass"]);
    assert_eq!(o.status.code(), Some(0));
    let line = stdout(&o).lines().find(|l| l.contains("total mass")).unwrap().to_string();
    let mass: f64 = line.rsplit(' ').next().unwrap().parse().unwrap();
    assert!((mass - 1.0).abs() < 1e-6, "{line}");
}

#[test]
fn nuclearity_verdicts() {
    let o = dirichlet(&["nuclearity", "--freq", r#"{"kind":"log_n"}"#, "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["verdict"]["verdict"], "fails");
    assert!(v["verdict"]["witness"].is_object());
    let o = dirichlet(&["nuclearity", "--freq", r#"{"kind":"n"}"#, "--format", "csv"]);
    assert!(stdout(&o).starts_with("k,m,partial_sum,half_sum\n"));
}

#[test]
fn koethe_block_and_weighted_norms() {
    let o =
        dirichlet(&["koethe", "--series", ZETA, "--n-max", "4", "--k-max", "2", "--norm", "lp:2", "--horizon", "100"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("axioms: hold on this block"), "{out}");
    assert!(out.contains("weighted norm k = 2"), "{out}");
    let o = dirichlet(&["koethe", "--freq", r#"{"kind":"n"}"#, "--n-max", "3", "--k-max", "1", "--format", "csv"]);
    assert_eq!(stdout(&o).lines().next(), Some("n,k,entry"));
}

#[test]
fn bohr_coefficients_are_recovered() {
    let o = dirichlet(&["bohr-coeff", "--terms", "[[0.0,[1,0]],[1.5,[0,-2]]]", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    for c in v["coefficients"].as_array().unwrap() {
        let err = (c["value"][0].as_f64().unwrap() - c["coefficient"][0].as_f64().unwrap()).abs()
            + (c["value"][1].as_f64().unwrap() - c["coefficient"][1].as_f64().unwrap()).abs();
        assert!(err <= 2.0 * c["error_bound"].as_f64().unwrap() + 1e-15);
    }
}

#[test]
fn random_demo_is_seeded() {
    let a = dirichlet(&["bohr-coeff", "--random", "5", "--seed", "7", "--format", "csv"]);
    let b = dirichlet(&["bohr-coeff", "--random", "5", "--seed", "7", "--format", "csv"]);
    let c = dirichlet(&["bohr-coeff", "--random", "5", "--seed", "8", "--format", "csv"]);
    assert_eq!(stdout(&a), stdout(&b));
    assert_ne!(stdout(&a), stdout(&c));
    assert_eq!(stdout(&a).lines().count(), 6);
}

#[test]
fn translate_round_trips() {
    let o = dirichlet(&["translate", "--series", ZETA, "--sigma", "2", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let json = stdout(&o);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["coefficients"]["shift"], 2.0);
    // translating back by -2 restores the coefficients
    let o = dirichlet(&["translate", "--series", json.trim(), "--sigma", "-2", "--show", "3"]);
    let out = stdout(&o);
    assert!(out.contains("a_3 = 1 +0i"), "{out}");
}

#[test]
fn abschnitt_keeps_smooth_numbers() {
    let o = dirichlet(&["abschnitt", "--series", ZETA, "--n", "2", "--horizon", "20", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let idx: Vec<u64> = v["indices"].as_array().unwrap().iter().map(|x| x.as_u64().unwrap()).collect();
    assert_eq!(idx, vec![1, 2, 3, 4, 6, 8, 9, 12, 16, 18]);
}

#[test]
fn report_and_hardy_demo() {
    let o = dirichlet(&["report", "--freq", r#"{"kind":"log_n"}"#, "--hardy-series", ZETA, "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["invariant_violations"].as_array().unwrap().len(), 0);
    assert_eq!(v["hardy2"]["agrees"], true);
    assert_eq!(dirichlet(&["report", "--freq", r#"{"kind":"log_n"}"#, "--format", "csv"]).status.code(), Some(2));
}

#[test]
fn ladder_subcommand() {
    let o = dirichlet(&[
        "ladder",
        "--series",
        r#"{"frequency":{"kind":"n"},"coefficients":{"kind":"ones"}}"#,
        "--k-max",
        "3",
        "--horizon",
        "500",
        "--format",
        "csv",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    let first: Vec<&str> = out.lines().nth(1).unwrap().split(',').collect();
    let want = 1.0 / (1.0 - (-1.0f64).exp());
    assert!((first[1].parse::<f64>().unwrap() - want).abs() < 1e-10, "{out}");
}

#[test]
fn input_from_file_and_output_to_file() {
    let dir = std::env::temp_dir().join(format!("dirichlet-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let input = dir.join("freq.json");
    let output = dir.join("out.json");
    std::fs::write(&input, r#"{"kind":"log_prime"}"#).unwrap();
    let o = dirichlet(&[
        "report",
        "--freq",
        &format!("@{}", input.display()),
        "--format",
        "json",
        "--output",
        output.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(o.stdout.is_empty());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&output).unwrap()).unwrap();
    assert_eq!(v["report"]["l_exact"], 1.0);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn exit_codes() {
    // missing file is an I/O failure
    let o = dirichlet(&["report", "--freq", "@/nonexistent/freq.json"]);
    assert_eq!(o.status.code(), Some(1));
    // malformed JSON reports its position
    let o = dirichlet(&["report", "--freq", "{\"kind\":"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 1, column"), "{}", stderr(&o));
    // validation errors
    assert_eq!(dirichlet(&["kernels", "--kind", "fejer", "--x", "-1"]).status.code(), Some(2));
    assert_eq!(dirichlet(&["report", "--freq", r#"{"kind":"explicit","values":[1,0.5]}"#]).status.code(), Some(2));
    // usage errors
    assert_eq!(dirichlet(&["nuclearity"]).status.code(), Some(2));
    assert_eq!(dirichlet(&["--help"]).status.code(), Some(0));
    // --strict turns Inconclusive into 3
    let ll = r#"{"kind":"log_log_n"}"#;
    assert_eq!(dirichlet(&["analyze-frequency", "--freq", ll, "--n-max", "1000"]).status.code(), Some(0));
    assert_eq!(dirichlet(&["analyze-frequency", "--freq", ll, "--n-max", "1000", "--strict"]).status.code(), Some(3));
}
