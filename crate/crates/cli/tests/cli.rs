use std::path::Path;
use std::process::{Command, Output};

fn framex(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_framex"))
        .args(args)
        .output()
        .expect("spawn framex")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

const HEADER: &str = "function,n,m,gamma,epsilon,eta,error_inf,error_l2,cond_2,cond_inf,flag";

#[test]
fn approximate_prints_one_record() {
    let o = framex(&[
        "approximate", "--function", "runge1", "--gamma", "1.2", "--epsilon", "1e-14", "--n", "20",
        "--eta", "4", "--grid", "4001",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], HEADER);
    assert_eq!(lines.len(), 2);
    let fields: Vec<&str> = lines[1].split(',').collect();
    assert_eq!(&fields[..3], &["runge1", "20", "80"]);
    assert_eq!(fields[10], "ok");
    let err: f64 = fields[6].parse().unwrap();
    assert!(err < 1e-6, "{err}");
}

#[test]
fn sweep_writes_sorted_csv() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("s.csv");
    let o = framex(&[
        "sweep", "--function", "osc(5)", "--gamma", "1.5", "--epsilon", "1e-10", "--eta", "2",
        "--n-range", "4:16:4", "--grid", "2001", "--out", out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let doc = framex::experiments::read_csv(&out).unwrap();
    let ns: Vec<usize> = doc.records.iter().map(|r| r.n).collect();
    assert_eq!(ns, vec![4, 8, 12, 16]);
    assert!(doc.records.iter().all(|r| r.m == 2 * r.n && r.function == "osc(5)"));
}

#[test]
fn identical_invocations_give_identical_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str| {
        let p = dir.path().join(name);
        let o = framex(&[
            "sweep", "--function", "fig2_f3", "--gamma", "2", "--epsilon", "1e-12", "--scaling",
            "paper", "--n-range", "2:6:2", "--grid", "1001", "--noise", "1e-3", "--out",
            p.to_str().unwrap(),
        ]);
        assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
        std::fs::read(p).unwrap()
    };
    assert_eq!(run("a.csv"), run("b.csv"));
}

#[test]
fn condition_of_three_point_interpolation() {
    let o = framex(&["condition", "--gamma", "1", "--epsilon", "0", "--n", "2", "--m", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let cond_inf: f64 = text
        .lines()
        .find_map(|l| l.strip_prefix("cond_inf: "))
        .unwrap()
        .parse()
        .unwrap();
    assert!((cond_inf - 1.25).abs() < 1e-6, "{cond_inf}");
}

#[test]
fn extremal_and_markov_report() {
    let o = framex(&["extremal", "bmn", "--m", "2", "--n", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("bmn: 1.25"), "{}", stdout(&o));

    let o = framex(&[
        "extremal", "cmn", "--m", "6", "--n", "3", "--gamma", "1.5", "--epsilon", "0.1",
        "--restarts", "3",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).starts_with("cmn_lower_bound: "));

    let o = framex(&["markov-check", "--n", "10", "--k", "2", "--delta", "0.5", "--trials", "50"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("markov_violations: 0"));
}

#[test]
fn invalid_arguments_exit_2() {
    let bad: [&[&str]; 5] = [
        &["sweep", "--function", "nope", "--gamma", "1.2", "--epsilon", "1e-14", "--n-range", "1:3:1"],
        &["sweep", "--function", "runge1", "--gamma", "0.5", "--epsilon", "0", "--n-range", "1:3:1"],
        &["sweep", "--function", "runge1", "--gamma", "1.5", "--epsilon", "0", "--n-range", "5:3:1"],
        &["extremal", "bmn", "--m", "40", "--n", "20"],
        &["figure", "fig9", "--out-dir", "x"],
    ];
    for args in bad {
        let o = framex(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn numerical_failure_exits_3() {
    // samples of order 1e308 overflow the fit
    let o = framex(&[
        "approximate", "--function", "runge1", "--gamma", "1.2", "--epsilon", "1e-14", "--n", "5",
        "--grid", "501", "--noise", "1e308",
    ]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).lines().nth(1).unwrap().ends_with(",failed"));
}

#[test]
fn thread_cap_is_validated() {
    let run = |v: &str| {
        Command::new(env!("CARGO_BIN_EXE_framex"))
            .args(["condition", "--gamma", "1.5", "--epsilon", "1e-8", "--n", "4", "--m", "8", "--grid", "500"])
            .env("FRAMEX_THREADS", v)
            .output()
            .unwrap()
    };
    assert_eq!(run("1").status.code(), Some(0));
    assert_eq!(run("0").status.code(), Some(2));
    assert_eq!(run("lots").status.code(), Some(2));
}

#[test]
fn unwritable_output_is_reported() {
    let dir = tempfile::tempdir().unwrap();
    let blocker = dir.path().join("file");
    std::fs::write(&blocker, "x").unwrap();
    let out = blocker.join("sub").join("s.csv");
    let o = framex(&[
        "approximate", "--function", "runge1", "--gamma", "1.2", "--epsilon", "1e-14", "--n", "4",
        "--grid", "501", "--out", out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains(blocker.to_str().unwrap()), "{err}");
    assert!(!Path::new(&out).exists());
}
