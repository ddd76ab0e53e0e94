use std::f64::consts::{FRAC_PI_2, PI};
use std::process::{Command, Output};

use tripartite_cli::csv_io::read_csv;

fn tripartite(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tripartite"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn levels(text: &str) -> String {
    text.lines()
        .find_map(|l| l.strip_prefix("levels: "))
        .expect("levels line")
        .to_owned()
}

#[test]
fn spectrum_triangular() {
    let out = tripartite(&[
        "spectrum",
        "--g",
        "1",
        "--gtilde",
        "0",
        "--topology",
        "triangular",
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert_eq!(
        levels(&stdout(&out)),
        "-1.000000000000 x4, 0.000000000000 x2, 2.000000000000 x2"
    );
}

#[test]
fn spectrum_linear() {
    let out = tripartite(&["spectrum", "--g", "1", "--topology", "linear"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert_eq!(
        levels(&stdout(&out)),
        "-1.414213562373 x2, 0.000000000000 x4, 1.414213562373 x2"
    );
}

#[test]
fn spectrum_rabi_when_omega_given() {
    let out = tripartite(&["spectrum", "--g", "1", "--omega", "-0.5"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert!(stdout(&out).contains("omega = -0.5"));
}

#[test]
fn spectrum_csv_has_eight_rows() {
    let out = tripartite(&["spectrum", "--g", "1", "--gtilde", "0.1", "--format", "csv"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 9);
    assert!(text.starts_with("index,numeric,analytic,difference\n"));
}

#[test]
fn missing_g_is_usage_error() {
    let out = tripartite(&["spectrum", "--topology", "linear"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("--g"));
}

#[test]
fn malformed_number_is_usage_error() {
    assert_eq!(code(&tripartite(&["spectrum", "--g", "1,5"])), 2);
    assert_eq!(code(&tripartite(&["spectrum", "--g", "nan"])), 2);
}

#[test]
fn scientific_notation_accepted() {
    let out = tripartite(&["spectrum", "--g", "1e0", "--gtilde", "5e-2"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
}

#[test]
fn rabi_spectrum_needs_triangle() {
    let out = tripartite(&[
        "spectrum",
        "--g",
        "1",
        "--omega",
        "0.3",
        "--topology",
        "linear",
    ]);
    assert_eq!(code(&out), 2);
}

#[test]
fn run_ghz_triangular() {
    let out = tripartite(&[
        "run",
        "--protocol",
        "ghz-triangular",
        "--g",
        "1",
        "--gtilde",
        "0.05",
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("fidelity:        1.0000000"));
    assert!(text.contains("t_GHZ = pi / (2|g - g~|)"));
    assert!(text.contains("result:          PASS"));
}

#[test]
fn run_isotropic_singularity() {
    let out = tripartite(&[
        "run",
        "--protocol",
        "ghz-triangular",
        "--g",
        "1",
        "--gtilde",
        "1",
    ]);
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("divergent"));
}

#[test]
fn run_w_generalized_reports_alpha() {
    let out = tripartite(&[
        "run",
        "--protocol",
        "w-generalized",
        "--g",
        "1",
        "--gtilde",
        "1",
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("alpha:           0.523598775598"), "{text}");
    assert!(text.contains("(0.166666666667 pi)"));
}

#[test]
fn run_every_protocol() {
    for (proto, extra) in [
        ("ghz-triangular", vec![]),
        ("ghz-linear", vec![]),
        ("w-rabi", vec!["--gtilde", "0.03"]),
        ("ghz-isotropic", vec![]),
        ("w-generalized", vec!["--gtilde", "0.05"]),
    ] {
        let mut args = vec!["run", "--protocol", proto, "--g", "1"];
        args.extend(extra);
        let out = tripartite(&args);
        assert_eq!(code(&out), 0, "{proto}: {}", stderr(&out));
    }
}

#[test]
fn run_csv_format() {
    let out = tripartite(&["run", "--protocol", "w-rabi", "--g", "1", "--format", "csv"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("protocol,entangling_time,fidelity,phase_arg,predicted_arg,alpha,phase_error")
    );
    assert!(lines.next().unwrap().starts_with("w-rabi,"));
}

#[test]
fn run_ghz_linear_rejects_zz() {
    let out = tripartite(&[
        "run",
        "--protocol",
        "ghz-linear",
        "--g",
        "1",
        "--gtilde",
        "0.05",
    ]);
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("requires g̃=0"));
}

#[test]
fn run_w_rabi_rejects_explicit_omega() {
    let out = tripartite(&["run", "--protocol", "w-rabi", "--g", "1", "--omega", "0.2"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn run_unknown_protocol_is_usage_error() {
    assert_eq!(
        code(&tripartite(&["run", "--protocol", "ghz", "--g", "1"])),
        2
    );
}

fn argmax_t(report: &str) -> f64 {
    let line = report
        .lines()
        .find(|l| l.starts_with("argmax"))
        .expect("argmax line");
    let t = line
        .split("t = ")
        .nth(1)
        .unwrap()
        .split(',')
        .next()
        .unwrap();
    t.parse().unwrap()
}

#[test]
fn sweep_ghz_peak_at_quarter_period() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ghz.csv");
    let out = tripartite(&[
        "sweep",
        "--protocol",
        "ghz-triangular",
        "--g",
        "1",
        "--gtilde",
        "0",
        "--t-min",
        "0",
        "--t-max",
        &PI.to_string(),
        "--steps",
        "181",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let step = PI / 180.0;
    assert!((argmax_t(&stdout(&out)) - FRAC_PI_2).abs() <= step);
    let rows = read_csv(&path).unwrap();
    assert_eq!(rows.len(), 181);
}

#[test]
fn sweep_w_rabi_peak() {
    let out = tripartite(&[
        "sweep",
        "--protocol",
        "w-rabi",
        "--g",
        "1",
        "--t-max",
        &(2.0 * PI).to_string(),
        "--steps",
        "361",
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    // CSV goes to stdout, the report to stderr.
    assert_eq!(stdout(&out).lines().count(), 362);
    let step = 2.0 * PI / 360.0;
    assert!((argmax_t(&stderr(&out)) - PI / 3f64.sqrt()).abs() <= step);
}

#[test]
fn sweep_single_step_is_usage_error() {
    let out = tripartite(&[
        "sweep",
        "--protocol",
        "w-rabi",
        "--g",
        "1",
        "--t-max",
        "1",
        "--steps",
        "1",
    ]);
    assert_eq!(code(&out), 2);
}

#[test]
fn sweep_inverted_bounds_is_usage_error() {
    let out = tripartite(&[
        "sweep",
        "--protocol",
        "w-rabi",
        "--g",
        "1",
        "--t-min",
        "2",
        "--t-max",
        "1",
        "--steps",
        "5",
    ]);
    assert_eq!(code(&out), 2);
}

#[test]
fn sweep_unwritable_destination_fails_with_path() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("missing").join("out.csv");
    let out = tripartite(&[
        "sweep",
        "--protocol",
        "ghz-triangular",
        "--g",
        "1",
        "--t-max",
        "1",
        "--steps",
        "3",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("out.csv"));
}

#[test]
fn sweep_linear_diagnostic() {
    let plain = tripartite(&[
        "sweep",
        "--protocol",
        "ghz-linear",
        "--g",
        "1",
        "--gtilde",
        "0.05",
        "--t-max",
        "3",
        "--steps",
        "4",
    ]);
    assert_eq!(code(&plain), 1);
    let forced = tripartite(&[
        "sweep",
        "--protocol",
        "ghz-linear",
        "--g",
        "1",
        "--gtilde",
        "0.05",
        "--t-max",
        "3",
        "--steps",
        "4",
        "--diagnostic",
    ]);
    assert_eq!(code(&forced), 0, "{}", stderr(&forced));
}

#[test]
fn verify_all() {
    let out = tripartite(&["verify"]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    let text = stdout(&out);
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS")).count(), 13);
    assert!(text.contains("13/13 criteria passed"));
}

#[test]
fn verify_only_spectra() {
    let out = tripartite(&["verify", "--only", "spectra"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS")).count(), 3);
    assert!(text.contains("3/3 criteria passed"));
}

#[test]
fn verify_injected_isotropic_coupling() {
    let out = tripartite(&["verify", "--only", "nogo", "--g", "0.37"]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    assert!(stdout(&out).contains("g=g~=0.37"));
}

#[test]
fn verify_csv() {
    let out = tripartite(&["verify", "--only", "structure", "--format", "csv"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.starts_with("id,group,title,passed,detail\n"));
    assert!(text.contains("12,structure,structural identities,true,"));
}

#[test]
fn verify_unknown_group_is_usage_error() {
    assert_eq!(code(&tripartite(&["verify", "--only", "everything"])), 2);
}

#[test]
fn help_exits_zero() {
    let out = tripartite(&["--help"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("spectrum"));
    assert_eq!(code(&tripartite(&[])), 2);
}
