use std::f64::consts::PI;
use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_osc-decay"));
    c.env_remove("OSC_DECAY_THREADS");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn osc-decay")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// `key=value` lookup in a verdict block.
fn field(block: &str, key: &str) -> String {
    block
        .lines()
        .map(|l| l.trim_start_matches("# "))
        .find_map(|l| l.strip_prefix(&format!("{key}=")))
        .unwrap_or_else(|| panic!("no {key} in\n{block}"))
        .to_string()
}

fn num(block: &str, key: &str) -> f64 {
    field(block, key).parse().unwrap()
}

fn rows(csv: &str) -> Vec<Vec<f64>> {
    csv.lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').map(|v| v.parse().unwrap()).collect())
        .collect()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn ml_examples() {
    let o = run(&["ml", "--alpha", "1", "--beta", "1", "--z", "1+0i"]);
    assert_eq!(code(&o), 0);
    assert_eq!(num(&stdout(&o), "re"), std::f64::consts::E);

    let o = run(&["ml", "--alpha", "0.5", "--beta", "1", "--z", "0+0i"]);
    assert_eq!(num(&stdout(&o), "re"), 1.0);

    let o = run(&["ml", "--alpha", "0.5", "--beta", "1", "--z", "0+1000000i", "--bound-ratio"]);
    assert_eq!(code(&o), 0);
    assert!(num(&stdout(&o), "bound_ratio").is_finite());

    assert_eq!(code(&run(&["ml", "--alpha", "2", "--beta", "1", "--z", "1"])), 2);
    assert_eq!(code(&run(&["ml", "--alpha", "0.5", "--beta", "1", "--z", "1+"])), 2);
}

#[test]
fn newton_examples() {
    let o = run(&["newton", "x^2*y^2"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("\nx^2*y^2,2,2,1,\"vertex (2,2)\",true\n"), "{}", stdout(&o));

    let o = run(&["newton", "x^3+y^3"]);
    assert!(stdout(&o).lines().any(|l| l.ends_with(",3/2,1,0,\"edge [(0,3),(3,0)]\",true")), "{}", stdout(&o));

    let o = run(&["newton", "x"]);
    assert_eq!(code(&o), 3);
    assert!(String::from_utf8_lossy(&o.stderr).contains("normalized"));

    assert_eq!(code(&run(&["newton", "x^"])), 2);

    let o = run(&["newton", "x^2*y^2", "--not-adapted"]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("provisional"));
}

#[test]
fn sweep_example_passes_and_replays() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("sweep.csv");
    let o = run(&["sweep", "--phase", "x^2*y^2", "--alpha", "0.5", "--lambda-min", "4", "--lambda-max", "16384", "-o", path_str(&out)]);
    let block = stdout(&o);
    assert_eq!(code(&o), 0, "{block}");
    assert_eq!(field(&block, "verdict"), "PASS");
    assert_eq!(field(&block, "h"), "2");
    assert_eq!(field(&block, "m"), "1");

    let csv = std::fs::read_to_string(&out).unwrap();
    assert!(csv.starts_with("# osc-decay sweep\n# phase = x^2*y^2\n"));
    assert!(csv.contains("# lambda_points = 12\n"));
    assert_eq!(rows(&csv).len(), 12);

    let r = run(&["report", path_str(&out)]);
    assert_eq!(code(&r), 0);
    let replay = stdout(&r);
    assert_eq!(replay, format!("{block}reproduced=true\n"));
}

#[test]
fn classical_disk_sweep_decays_like_one_over_lambda() {
    let o = run(&[
        "sweep", "--phase", "x^2+y^2", "--alpha", "1", "--beta", "1", "--lambda-min", "100", "--lambda-max", "10000", "--lambda-points", "8",
    ]);
    assert_eq!(code(&o), 0);
    // CSV on stdout, verdict on stderr
    let block = String::from_utf8(o.stderr.clone()).unwrap();
    assert!((num(&block, "fitted_p") - 1.0).abs() <= 0.05, "{block}");
    assert_eq!(field(&block, "branch"), "h=1");
    assert_eq!(rows(&String::from_utf8(o.stdout).unwrap()).len(), 8);
}

#[test]
fn small_lambda_is_a_config_error() {
    let o = run(&["sweep", "--lambda-min", "1"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("lambda_min"));
}

#[test]
fn unnormalized_sweep_is_refused() {
    assert_eq!(code(&run(&["sweep", "--phase", "x + y^2"])), 3);
}

#[test]
fn sublevel_examples() {
    let o = run(&["sublevel", "--phase", "x^2*y^2", "--epsilon-min", "1e-6", "--epsilon-max", "1e-1"]);
    assert_eq!(code(&o), 0);
    let block = String::from_utf8(o.stderr.clone()).unwrap();
    let d = num(&block, "fitted_delta");
    assert!((0.4..=0.6).contains(&d), "{block}");

    let o = run(&["sublevel", "--phase", "x^2+y^2", "--epsilon-min", "1e-4", "--epsilon-max", "0.25", "--epsilon-points", "6"]);
    for r in rows(&stdout(&o)) {
        assert!((r[1] - PI * r[0]).abs() <= 1e-9 * PI * r[0], "{r:?}");
    }

    let o = run(&["sublevel", "--phase", "x^2*y^2", "--epsilon-min", "1e-3", "--epsilon-max", "1e-3", "--epsilon-points", "1"]);
    assert_eq!(code(&o), 0);
    let block = String::from_utf8(o.stderr.clone()).unwrap();
    assert_eq!(field(&block, "fit"), "refused");
    assert_eq!(field(&block, "verdict"), "N/A");
    assert_eq!(rows(&stdout(&o)).len(), 1);
}

#[test]
fn morse_examples() {
    let o = run(&["morse", "--sign", "+", "--lambda-max", "1e4", "--lambda-points", "6"]);
    assert_eq!(code(&o), 0);
    for r in rows(&stdout(&o)) {
        assert!((r[1] - PI / r[0]).abs() <= 1e-9 * PI / r[0], "{r:?}");
    }
    let o = run(&["morse", "--sign", "-", "--lambda-max", "1e4", "--lambda-points", "6"]);
    assert_eq!(code(&o), 0);
    assert_eq!(field(&String::from_utf8(o.stderr.clone()).unwrap(), "verdict"), "PASS");
    assert_eq!(code(&run(&["morse", "--sign", "*"])), 2);
}

#[test]
fn integrate_row_and_kernel_choice() {
    let o = run(&["integrate", "--phase", "x^2+y^2", "--amplitude", "disk:1", "--kernel", "classical", "--lambda", "50", "--rel-tol", "1e-7"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(text.contains("\nlambda,re,im,abs,error_estimate,cells\n"));
    assert!(text.contains("# amplitude_smooth = false\n"));
    let r = &rows(&text)[0];
    // π(e^{iλ}−1)/(iλ)
    let (s, c) = 50f64.sin_cos();
    let (re, im) = (PI * s / 50.0, PI * (1.0 - c) / 50.0);
    assert!(((r[1] - re).powi(2) + (r[2] - im).powi(2)).sqrt() <= 2.0 * r[4].max(1e-15), "{r:?}");
    assert_eq!(code(&run(&["integrate", "--kernel", "bessel"])), 2);
}

#[test]
fn config_file_with_flag_override_is_echoed() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    std::fs::write(&cfg, "# small saddle run\nphase = x^2 - y^2\nepsilon_points = 5\nepsilon_min = 1e-5\n").unwrap();
    let out = dir.path().join("s.csv");
    let o = run(&["sublevel", "--config", path_str(&cfg), "--epsilon-points", "4", "-o", path_str(&out)]);
    assert_eq!(code(&o), 0);
    let csv = std::fs::read_to_string(&out).unwrap();
    assert!(csv.contains("# phase = x^2 - y^2\n"));
    assert!(csv.contains("# epsilon_points = 4\n"));
    assert!(csv.contains("# epsilon_min = 0.00001\n"));
    assert_eq!(rows(&csv).len(), 4);

    std::fs::write(&cfg, "colour = blue\n").unwrap();
    assert_eq!(code(&run(&["sublevel", "--config", path_str(&cfg)])), 2);
}

#[test]
fn output_does_not_depend_on_thread_count() {
    let dir = tempfile::tempdir().unwrap();
    let mut outputs = Vec::new();
    for threads in ["1", "3"] {
        let out = dir.path().join(format!("t{threads}.csv"));
        let o = run(&["--threads", threads, "morse", "--sign", "-", "--lambda-max", "1e3", "--lambda-points", "4", "-o", path_str(&out)]);
        assert_eq!(code(&o), 0);
        outputs.push(std::fs::read(&out).unwrap());
    }
    assert_eq!(outputs[0], outputs[1]);

    let o = bin().env("OSC_DECAY_THREADS", "0").args(["morse"]).output().unwrap();
    assert_eq!(code(&o), 2);
}

#[test]
fn tampered_output_is_not_reproduced() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("e.csv");
    assert_eq!(code(&run(&["sublevel", "--phase", "x^2+y^2", "--epsilon-points", "8", "-o", path_str(&out)])), 0);
    let csv = std::fs::read_to_string(&out).unwrap();
    let mut lines: Vec<String> = csv.lines().map(String::from).collect();
    let i = lines.iter().position(|l| l.starts_with("epsilon,")).unwrap() + 3;
    let mut cells: Vec<String> = lines[i].split(',').map(String::from).collect();
    cells[1] = "1.0000000000000000e0".into();
    lines[i] = cells.join(",");
    std::fs::write(&out, lines.join("\n") + "\n").unwrap();
    let r = run(&["report", path_str(&out)]);
    assert_eq!(code(&r), 1);
    assert!(stdout(&r).ends_with("reproduced=false\n"));

    std::fs::write(&out, "lambda,abs_value\n").unwrap();
    assert_eq!(code(&run(&["report", path_str(&out)])), 2);
}
