use std::process::Command;

fn gpsort(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_gpsort"))
        .args(args)
        .output()
        .unwrap();
    let text =
        String::from_utf8_lossy(&out.stdout).into_owned() + &String::from_utf8_lossy(&out.stderr);
    (out.status.code().unwrap_or(-1), text)
}

#[test]
fn run_writes_a_row() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("run.csv");
    let (code, text) = gpsort(&[
        "run",
        "--n",
        "6",
        "--seed",
        "3",
        "--out",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "{text}");
    assert!(text.contains("hit_optimum=true"), "{text}");
    let body = std::fs::read_to_string(&csv).unwrap();
    assert_eq!(body.lines().count(), 2);
    assert!(body.starts_with("experiment_id,kind,measure,variant,init,n,trial,seed,evaluations"));
}

#[test]
fn campaigns_feed_the_summary() {
    let dir = tempfile::tempdir().unwrap();
    let path = |name: &str| dir.path().join(name).to_str().unwrap().to_string();
    let scale = path("scale.csv");
    let (code, text) = gpsort(&[
        "scale", "--n-list", "4,6,8", "--trials", "5", "--out", &scale,
    ]);
    assert_eq!(code, 0, "{text}");
    assert!(text.contains("log-log slope"));
    assert!(dir.path().join("scale.median.dat").exists());

    let exact = path("exact.csv");
    let (code, text) = gpsort(&[
        "stagnate",
        "--init",
        "w1",
        "--measure",
        "run",
        "--n-list",
        "4,5,6",
        "--out",
        &exact,
    ]);
    assert_eq!(code, 0, "{text}");

    let multi = path("multi.csv");
    let (code, text) = gpsort(&[
        "stagnate",
        "--variant",
        "multi",
        "--init",
        "w2",
        "--measure",
        "ham",
        "--n",
        "6",
        "--trials",
        "4",
        "--budget",
        "20000",
        "--out",
        &multi,
    ]);
    assert_eq!(code, 0, "{text}");

    let (code, text) = gpsort(&["summary", &scale, &exact, &multi, &path("absent.csv")]);
    assert_eq!(code, 0, "{text}");
    assert!(text.contains("solved (15/15 runs)"), "{text}");
    assert!(text.contains("exact stagnation (probability 0"), "{text}");
    assert!(text.contains("statistical stagnation (4/4"), "{text}");
    assert!(text.contains("absent.csv"), "{text}");
}

#[test]
fn mismatched_stagnation_pair_is_an_error() {
    let (code, text) = gpsort(&["stagnate", "--init", "w1", "--measure", "ham", "--n", "5"]);
    assert_eq!(code, 2, "{text}");
}

#[test]
fn verify_and_probe_succeed() {
    let (code, text) = gpsort(&["verify", "--n", "6"]);
    assert_eq!(code, 0, "{text}");
    assert!(!text.contains("[FAIL]"));
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("probe.csv");
    let (code, text) = gpsort(&[
        "probe",
        "--n-list",
        "8,16,32",
        "--out",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "{text}");
    assert!(dir.path().join("probe.deletion-assisted.dat").exists());
}
