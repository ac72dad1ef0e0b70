use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cyclicdec")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn construct_prints_polynomials() {
    let o = run(&["construct", "--code", "BCH(7,4)", "--matrices"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.contains("n 7 k 4"), "{s}");
    assert!(s.contains("h x^4 + x^2 + x + 1"), "{s}");
}

#[test]
fn config_errors_exit_with_two() {
    let o = run(&["construct", "--code", "BCH(63,44)"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["bench", "--decoder", "ff", "--samples", "10"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["bench", "--snr", "4,x"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn train_bench_decode_and_plot_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let p = |name: &str| dir.path().join(name).to_string_lossy().into_owned();
    let (w, loss, csv, svg) = (p("w.json"), p("loss.csv"), p("r.csv"), p("r.svg"));

    let o = run(&[
        "train", "--code", "BCH(15,7)", "--decoder", "cyclic", "--t", "2", "--steps", "5", "--out", &w,
        "--loss-csv", &loss,
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(std::fs::read_to_string(&loss).unwrap().lines().count(), 6);

    let bench = |out: &str| {
        run(&[
            "bench", "--code", "BCH(15,7)", "--decoder", "cyclic", "--t", "2", "--weights", &w, "--snr", "2,3",
            "--samples", "300", "--no-timing", "--out", out, "--svg", &svg,
        ])
    };
    assert!(bench(&csv).status.success());
    let again = p("r2.csv");
    assert!(bench(&again).status.success());
    assert_eq!(std::fs::read(&csv).unwrap(), std::fs::read(&again).unwrap());
    assert!(Path::new(&svg).exists());

    let plotted = p("p.svg");
    assert!(run(&["plot", "--csv", &csv, "--out", &plotted]).status.success());
    assert!(std::fs::read_to_string(&plotted).unwrap().contains("<svg"));

    let input = p("llr.txt");
    std::fs::write(&input, format!("{}\n{}\n", ["5"; 15].join(" "), ["-5"; 15].join(" "))).unwrap();
    let o = run(&["decode", "--code", "BCH(15,7)", "--decoder", "cyclic", "--t", "2", "--weights", &w, "--input", &input]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), format!("{}\n{}\n", "0".repeat(15), "1".repeat(15)));

    // A weight file for a different code is a data error.
    let o = run(&["bench", "--code", "BCH(15,5)", "--decoder", "cyclic", "--t", "2", "--weights", &w, "--samples", "10"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn list_bench_emits_one_row_per_size_and_snr() {
    let o = run(&[
        "list-bench", "--code", "BCH(15,7)", "--t", "3", "--list-sizes", "1,2,4", "--snr", "3", "--samples", "200",
        "--no-timing",
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let s = stdout(&o);
    assert_eq!(s.lines().count(), 4);
    assert!(s.lines().nth(3).unwrap().contains(",4,3.0,"));
}
