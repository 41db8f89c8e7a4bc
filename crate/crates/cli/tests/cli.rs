use std::io::Write;
use std::process::{Command, Output, Stdio};

fn swcalc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_swcalc")).args(args).output().expect("binary runs")
}

fn swcalc_stdin(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_swcalc"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[track_caller]
fn ok(args: &[&str]) -> String {
    let o = swcalc(args);
    assert_eq!(o.status.code(), Some(0), "stderr: {}", stderr(&o));
    stdout(&o)
}

#[test]
fn documented_examples() {
    assert_eq!(ok(&["swmult", "--chi", "1", "--g", "0", "--d", "7"]), "1\n");
    assert_eq!(ok(&["recover", "--pg", "0", "--gcd", "1", "--d", "5"]), "(3,4)\n");
    assert_eq!(ok(&["recover", "--pg", "0", "--gcd", "1", "--d", "5", "--d2", "1"]), "(2,7)\n");
}

#[test]
fn machine_output_is_key_value() {
    assert_eq!(
        ok(&["--format", "machine", "recover", "--pg", "0", "--gcd", "1", "--d", "5", "--d2", "1"]),
        "p=2 q=7\n"
    );
    assert_eq!(ok(&["swmult", "--chi", "3", "--g", "2", "--d", "4", "--format", "machine"]), "sw_mult=5\n");
    let info = ok(&[
        "--format",
        "machine",
        "surface-info",
        "--pg",
        "1",
        "--q",
        "0",
        "--kmin-sq",
        "0",
        "--torsion",
        "1",
    ]);
    assert_eq!(info, "kodaira=0 chi=2 kx_sq=0 e=24 sigma=-16 b1=0 b2=22 b_plus=3 b_minus=19\n");
}

#[test]
fn machine_output_is_byte_stable() {
    let args =
        ["--format", "machine", "candidates", "--pg", "3", "--q", "0", "--kmin-sq", "2", "--blowups", "3"];
    let first = swcalc(&args);
    let second = swcalc(&args);
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(stdout(&first).lines().count(), 16);
}

#[test]
fn series_method_matches_closed_form() {
    for (chi, g, d) in [("2", "1", "3"), ("0", "3", "5"), ("4", "0", "6")] {
        let closed = ok(&["swmult", "--chi", chi, "--g", g, "--d", d]);
        let series = ok(&["swmult", "--chi", chi, "--g", g, "--d", d, "--method", "series"]);
        assert_eq!(closed, series);
    }
}

#[test]
fn blowup_contract() {
    assert_eq!(
        ok(&["blowup", "--chi", "2", "--g", "1", "--d", "3", "--a", "1"]),
        ok(&["swmult", "--chi", "2", "--g", "1", "--d", "3"])
    );
    assert_eq!(ok(&["blowup", "--chi", "2", "--g", "1", "--d", "3", "--a", "2"]), "0\n");
}

#[test]
fn surface_commands() {
    assert_eq!(ok(&["kodaira", "--pg", "3", "--q", "0", "--kmin-sq", "2"]), "2\n");
    assert_eq!(ok(&["plurigenus", "--pg", "3", "--q", "0", "--kmin-sq", "2", "--n", "3"]), "10\n");
    // K3: e = 24, sigma = -16, so vdim = (L^2 - 0) / 4
    assert_eq!(
        ok(&["vdim", "--pg", "1", "--q", "0", "--kmin-sq", "0", "--torsion", "1", "--det-sq", "-8"]),
        "-2\n"
    );
}

#[test]
fn lattice_commands() {
    let reflect = ok(&["--format", "machine", "reflect", "--gram", "1,0;0,-1", "--v", "3,1", "--s", "0,1"]);
    assert_eq!(reflect, "image=(3,-1) v_dot_s=-1 s_sq=-1 v_characteristic=true image_characteristic=true\n");
    assert_eq!(ok(&["vdim", "--gram", "1,0;0,-1", "--l", "2,-1", "--k", "3,1"]), "-4\n");
}

#[test]
fn divisibility_both_forms() {
    assert_eq!(
        ok(&["--format", "machine", "divisibility", "--p", "3", "--q", "4", "--pg", "0"]),
        "d=5 d2=none\n"
    );
    assert_eq!(
        ok(&["--format", "machine", "divisibility", "--p", "2", "--q", "7", "--pg", "0"]),
        "d=5 d2=1\n"
    );
    assert_eq!(ok(&["divisibility", "--g", "0", "--chi", "1", "--fibers", "2,3"]), "1\n");
}

#[test]
fn documents_from_file_and_stdin() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    write!(f, r#"{{"p_g": 0, "gcd_pq": 1, "d": 5, "d2": 1}}"#).unwrap();
    let path = f.path().to_str().unwrap();
    assert_eq!(ok(&["recover", path]), "(2,7)\n");
    // flags override the document
    assert_eq!(ok(&["recover", path, "--d", "7", "--d2", "3"]), "(2,9)\n");

    let doc = r#"{"gram": [[0,1],[1,0]], "labels": ["f","s"], "v": [2,0], "s": [1,-1]}"#;
    let o = swcalc_stdin(&["--format", "machine", "reflect", "-"], doc);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).starts_with("image=(0,2) "));
}

#[test]
fn domain_errors_exit_one_and_name_the_problem() {
    let o = swcalc(&["recover", "--pg", "0", "--gcd", "1", "--d", "7"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("no exceptional-table row"));

    let o = swcalc(&["reflect", "--gram", "1,0;0,-1", "--v", "1,0", "--s", "1,0"]);
    assert_eq!(o.status.code(), Some(1));

    let o = swcalc(&["vdim", "--gram", "1,0;0,-1", "--l", "0,0", "--k", "2,0"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("characteristic"));

    let o = swcalc(&["plurigenus", "--pg", "1", "--q", "0", "--kmin-sq", "0", "--n", "2"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn malformed_input_exits_two() {
    assert_eq!(swcalc(&["swmult", "--chi", "x", "--g", "0", "--d", "1"]).status.code(), Some(2));
    // missing parameter
    assert_eq!(swcalc(&["swmult", "--chi", "1", "--g", "0"]).status.code(), Some(2));
    assert_eq!(swcalc_stdin(&["swmult", "-"], "not json").status.code(), Some(2));
    assert_eq!(swcalc_stdin(&["swmult", "-"], "[1,2]").status.code(), Some(2));
    assert_eq!(swcalc_stdin(&["swmult", "-"], r#"{"chi": 1.5, "g": 0, "d": 1}"#).status.code(), Some(2));
    assert_eq!(swcalc(&["recover", "/nonexistent/doc.json"]).status.code(), Some(2));
}

#[test]
fn selftest_passes() {
    assert_eq!(ok(&["selftest"]), "PASS: 385 cases, closed form = series\n");
    assert_eq!(
        ok(&["--format", "machine", "selftest"]),
        "grid=chi<=6,g<=4,d<=10 cases=385 mismatches=0 status=PASS\n"
    );
}
