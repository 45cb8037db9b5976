use std::path::PathBuf;
use std::process::{Command, Output};

fn seidel(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_seidel"))
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

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("seidel-cli-{}-{name}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn product_of_a_with_itself() {
    let o = seidel(&["product", "cp1xcp1:2", "a<0,0>", "a<0,0>"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert_eq!(stdout(&o), "[M]<0,1>\n");
}

#[test]
fn product_output_parses_back() {
    let o = seidel(&["product", "f2-as-s2xs2:2", "a + b", "a + b"]);
    let square = stdout(&o).trim().to_string();
    assert_eq!(square, "[M]<0,1> + [M]<1,0>");
    let o = seidel(&["product", "f2-as-s2xs2:2", &square, "pt"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "pt<0,1> + pt<1,0>\n");
}

#[test]
fn order_bound_on_the_cp1_rotation() {
    let o = seidel(&["order-bound", "cp1", "rotation", "--max", "5", "--cutoff", "6"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("first tau power at k = 2"), "{}", stdout(&o));
    let o = seidel(&["--format", "lines", "order-bound", "cp1", "rotation", "--max", "5", "--cutoff", "6"]);
    assert_eq!(stdout(&o), "verdict=first-tau-power\nk=2\ngamma=<1>\n");
}

#[test]
fn order_bound_with_too_small_cutoff_is_a_verification_failure() {
    let o = seidel(&["order-bound", "cp1", "rotation", "--max", "5", "--cutoff", "1"]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("cutoff too small"), "{}", stderr(&o));
}

#[test]
fn invert_outcomes() {
    let o = seidel(&["invert", "f2-as-s2xs2:2", "a + b", "--cutoff", "4.5"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("inverse: a<0,-1> + a<1,-2> + a<2,-3>"), "{}", stdout(&o));
    assert!(stdout(&o).trim_end().ends_with("@E=9/2"));

    let o = seidel(&["--format", "lines", "invert", "cp2", "line", "--cutoff", "3"]);
    assert_eq!(stdout(&o), "outcome=inverse\nresult=pt<-1> @E=3\n");

    let o = seidel(&["--format", "lines", "invert", "cp1", "0 @E=2", "--cutoff", "3"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "outcome=undetermined\nrequested=3\nachieved=2\n");
}

#[test]
fn power_and_tau() {
    let o = seidel(&["--format", "lines", "power", "f2-as-s2xs2:2", "circle-action", "2", "--cutoff", "5"]);
    assert_eq!(stdout(&o), "q=[M]<0,1> + [M]<1,0> @E=5\nmaslov=2\n");
    let o = seidel(&["tau", "cp1xcp1:2", "<1,-2>"]);
    assert_eq!(stdout(&o), "[M]<1,-2>\n");
}

#[test]
fn verify_identity_loop_passes() {
    let o = seidel(&["verify", "identity-loop"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert!(stdout(&o).contains("passed: "));
}

#[test]
fn verify_output_is_deterministic() {
    let a = seidel(&["--seed", "11", "verify", "all"]);
    let b = seidel(&["--seed", "11", "verify", "all"]);
    assert_eq!(code(&a), 0, "{}", stderr(&a));
    assert_eq!(a.stdout, b.stdout);
    let lines = seidel(&["--format", "lines", "verify", "truncation"]);
    assert!(stdout(&lines).lines().all(|l| l.contains('=')));
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["product", "cp1xcp1:2", "c<0,0>", "a"][..],
        &["product", "cp1", "pt<1,2>", "pt"],
        &["invert", "cp1", "[M] + pt", "--cutoff", "3"],
        &["invert", "cp1", "pt", "--cutoff", "x"],
        &["power", "cp1", "rotation", "0", "--cutoff", "3"],
        &["power", "cp1", "spin", "2", "--cutoff", "3"],
        &["check", "cp9"],
        &["verify", "no-such-suite"],
        &["frobnicate"],
    ] {
        let o = seidel(args);
        assert_eq!(code(&o), 2, "{args:?}: {}", stderr(&o));
        assert!(!stderr(&o).is_empty());
    }
}

#[test]
fn check_reports_and_rejects() {
    let o = seidel(&["--format", "lines", "check", "cp1xcp1:2"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(text.contains("q_plus_closed=false\n"), "{text}");
    assert!(text.ends_with("valid=true\n"));

    let dir = scratch("check");
    let exported = stdout(&seidel(&["export", "cp1"]));
    let bad = exported.replace("maslov = 1", "maslov = 3");
    let path = dir.join("bad.toml");
    std::fs::write(&path, bad).unwrap();
    let o = seidel(&["check", path.to_str().unwrap()]);
    assert_eq!(code(&o), 1, "{}", stderr(&o));
    assert!(stderr(&o).contains("rotation"), "{}", stderr(&o));

    std::fs::write(&path, "name = ").unwrap();
    assert_eq!(code(&seidel(&["check", path.to_str().unwrap()])), 2);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn exported_files_are_accepted_as_specs() {
    let dir = scratch("export");
    let path = dir.join("f2.toml");
    std::fs::write(&path, stdout(&seidel(&["export", "f2-as-s2xs2:3"]))).unwrap();
    let p = path.to_str().unwrap();
    let from_file = seidel(&["power", p, "circle-action", "3", "--cutoff", "8"]);
    let builtin = seidel(&["power", "f2-as-s2xs2:3", "circle-action", "3", "--cutoff", "8"]);
    assert_eq!(code(&from_file), 0);
    assert_eq!(from_file.stdout, builtin.stdout);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn info_lists_suites() {
    let o = seidel(&["info"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("ring-axioms"));
}
