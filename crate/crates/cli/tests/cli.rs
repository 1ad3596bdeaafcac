use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cominuscule"))
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

#[test]
fn compute_reports_the_cominuscule_line() {
    for (spec, line) in [
        (
            "B5:oxooo",
            "cominuscule: A1, node 1 crossed, dim 1 \u{2014} projective line P^1",
        ),
        (
            "F4:ooox",
            "cominuscule: B4, node 1 crossed, dim 7 \u{2014} quadric hypersurface Q^7",
        ),
    ] {
        let o = run(&["compute", spec]);
        assert!(o.status.success(), "{spec}: {}", stderr(&o));
        assert!(stdout(&o).lines().any(|l| l == line), "{spec}:\n{}", stdout(&o));
    }
    let o = run(&["compute", "F4:ooox"]);
    assert!(stdout(&o).contains("box size:    7"));
}

#[test]
fn compute_json_is_stable() {
    let a = run(&["compute", "A4:oxxo", "--json"]);
    let b = run(&["compute", "A4:oxxo", "--json"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["subsystem"], "A3:oxo");
    assert_eq!(v["components"][0]["description"], "Grassmannian Gr(2, 4)");
    assert_eq!(v["box_size"], 4);
}

#[test]
fn usage_errors_exit_two() {
    let o = run(&["compute", "B4:oxo"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).starts_with("error:"));
    let o = run(&["compute", "A2xB3:oooxo"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["--allow-point-factors", "compute", "A2xB3:oooxo"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("cominuscule: A1, node 1 crossed"));
}

#[test]
fn hasse_formats() {
    let o = run(&["hasse", "F4:ooox", "--box", "--format", "text"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().filter(|l| l.starts_with("height")).count(), 7);
    assert!(text.contains("edges: 6"));

    let o = run(&["hasse", "A1:x", "--full", "--format", "json"]);
    assert_eq!(stdout(&o).trim(), r#"{"nodes":[{"coeffs":[1],"grade":1}],"edges":[]}"#);

    let o = run(&["hasse", "G2:ox", "--format", "dot"]);
    let dot = stdout(&o);
    assert!(dot.starts_with("digraph"));
    assert_eq!(dot.matches("->").count(), 5);
}

#[test]
fn sweep_exit_codes() {
    let o = run(&["sweep", "--max-rank", "3"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).contains("failed: 0"));
    let o = run(&["sweep", "--max-rank", "2", "--inject-fault"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("F4:ooox"));
}

#[test]
fn table_lists_seven_rows() {
    let o = run(&["table"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 8);
}

#[test]
fn carter_numbering_relabels_e_nodes() {
    let carter = run(&["--numbering", "carter", "compute", "E6:oooxoo"]);
    let bourbaki = run(&["compute", "E6:oxoooo"]);
    assert_eq!(carter.stdout, bourbaki.stdout);
}
