use std::path::{Path, PathBuf};
use std::sync::OnceLock;

use logistic_elm::cli::run;
use logistic_elm::TrainedModel;

fn cli(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(
        std::iter::once("logistic-elm").chain(args.iter().copied()),
        &mut out,
        &mut err,
    );
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn ok(args: &[&str]) -> String {
    let (code, out, err) = cli(args);
    assert_eq!(code, 0, "{args:?}: {err}");
    out
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

/// A small dataset shared by the read-only tests.
fn dataset() -> &'static (tempfile::TempDir, PathBuf) {
    static DATA: OnceLock<(tempfile::TempDir, PathBuf)> = OnceLock::new();
    DATA.get_or_init(|| {
        let dir = tempfile::tempdir().unwrap();
        let out = ok(&[
            "gen-synthetic",
            "--out",
            s(dir.path()),
            "--windows-per-class",
            "20",
            "--window-len",
            "512",
        ]);
        assert!(out.contains("11 classes x 20 windows of 512 points"));
        let manifest = dir.path().join("manifest.json");
        (dir, manifest)
    })
}

#[test]
fn train_predict_evaluate_round_trip() {
    let (_, manifest) = dataset();
    let work = tempfile::tempdir().unwrap();
    let model = work.path().join("m.json");
    let trace = work.path().join("trace.json");
    let out = ok(&[
        "train",
        "--manifest",
        s(manifest),
        "--out",
        s(&model),
        "--sfs-out",
        s(&trace),
    ]);
    assert!(out.starts_with("features: "));
    assert!(out.contains("verify accuracy: "));
    assert!(trace.exists());
    let loaded = TrainedModel::load(&model).unwrap();
    assert_eq!(loaded.input_weights().hidden(), 20);

    let signal = manifest.parent().unwrap().join("class_03_IF021.txt");
    let predictions = ok(&[
        "predict",
        "--model",
        s(&model),
        "--signal",
        s(&signal),
        "--window-len",
        "512",
    ]);
    let classes: Vec<usize> = predictions.lines().map(|l| l.parse().unwrap()).collect();
    assert_eq!(classes.len(), 20);
    assert!(
        classes.iter().filter(|&&c| c == 3).count() >= 18,
        "{classes:?}"
    );

    let report = ok(&["evaluate", "--manifest", s(manifest), "--model", s(&model)]);
    assert!(report.contains("test accuracy: "));
    let table = ok(&[
        "evaluate",
        "--manifest",
        s(manifest),
        "--manifest",
        s(manifest),
        "--features",
        "2,6",
    ]);
    assert!(table.lines().count() >= 3);
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let (_, manifest) = dataset();
    let work = tempfile::tempdir().unwrap();
    let model = work.path().join("model.json");
    let csv = work.path().join("f.csv");
    let run_all = || {
        let mut text = String::new();
        for args in [
            vec!["extract", "--manifest", s(manifest), "--out", s(&csv)],
            vec!["train", "--manifest", s(manifest), "--out", s(&model)],
            vec!["sfs", "--manifest", s(manifest)],
            vec!["evaluate", "--manifest", s(manifest)],
            vec![
                "sweep-chaos",
                "--manifest",
                s(manifest),
                "--features",
                "2,6",
                "--z1-values",
                "0.2,0.6",
                "--mu-values",
                "3.9",
            ],
        ] {
            text += &ok(&args);
        }
        (
            text,
            std::fs::read(&model).unwrap(),
            std::fs::read(&csv).unwrap(),
        )
    };
    let first = run_all();
    let second = ok(&["--threads", "1", "sfs", "--manifest", s(manifest)]);
    assert_eq!(first, run_all());
    assert!(first.0.contains(&second));
}

#[test]
fn timestamps_only_when_asked() {
    let (_, manifest) = dataset();
    let plain = ok(&["sfs", "--manifest", s(manifest)]);
    assert!(!plain.contains("generated at"));
    let stamped = ok(&["--timestamps", "sfs", "--manifest", s(manifest)]);
    let (first, rest) = stamped.split_once('\n').unwrap();
    assert!(first.starts_with("# generated at unix time "));
    assert_eq!(rest, plain);
}

#[test]
fn config_overlay_sits_between_defaults_and_flags() {
    let (_, manifest) = dataset();
    let work = tempfile::tempdir().unwrap();
    let overlay = work.path().join("overlay.json");
    std::fs::write(&overlay, r#"{"neurons": 7, "z1": 0.3, "features": "1,2"}"#).unwrap();
    let model = work.path().join("m.json");
    ok(&[
        "--config",
        s(&overlay),
        "train",
        "--manifest",
        s(manifest),
        "--out",
        s(&model),
    ]);
    let m = TrainedModel::load(&model).unwrap();
    assert_eq!(m.input_weights().hidden(), 7);
    assert_eq!(m.feature_ids().len(), 2);
    assert_eq!(m.chaos().z1, 0.3);

    ok(&[
        "--config",
        s(&overlay),
        "train",
        "--manifest",
        s(manifest),
        "--out",
        s(&model),
        "--neurons",
        "9",
    ]);
    let m = TrainedModel::load(&model).unwrap();
    assert_eq!(m.input_weights().hidden(), 9);
    assert_eq!(m.chaos().z1, 0.3);

    std::fs::write(&overlay, r#"{"hidden": 7}"#).unwrap();
    let (code, _, err) = cli(&["--config", s(&overlay), "train", "--manifest", s(manifest)]);
    assert_eq!(code, 2);
    assert_eq!(err.lines().count(), 1);
}

#[test]
fn exit_codes() {
    let (_, manifest) = dataset();
    let work = tempfile::tempdir().unwrap();
    let missing = work.path().join("nope.json");
    for (args, want) in [
        (vec!["train"], 2),
        (vec!["frobnicate"], 2),
        (
            vec!["train", "--manifest", s(manifest), "--neurons", "many"],
            2,
        ),
        (vec!["train", "--manifest", s(manifest), "--mu", "5.0"], 2),
        (
            vec!["train", "--manifest", s(manifest), "--features", "99"],
            2,
        ),
        (vec!["train", "--manifest", s(&missing)], 1),
        (
            vec!["predict", "--model", s(&missing), "--signal", s(manifest)],
            1,
        ),
    ] {
        let (code, out, err) = cli(&args);
        assert_eq!(code, want, "{args:?}: {err}");
        assert!(out.is_empty());
        assert_eq!(err.lines().count(), 1, "{err}");
        assert!(err.starts_with("error: "));
    }
    let bad_signal = work.path().join("bad.txt");
    std::fs::write(&bad_signal, "1.0\nabc\n").unwrap();
    let model = work.path().join("m.json");
    ok(&[
        "train",
        "--manifest",
        s(manifest),
        "--features",
        "2",
        "--out",
        s(&model),
    ]);
    let (code, _, err) = cli(&["predict", "--model", s(&model), "--signal", s(&bad_signal)]);
    assert_eq!(code, 1, "{err}");
}

#[test]
fn bench_and_stability_commands() {
    let (_, manifest) = dataset();
    let work = tempfile::tempdir().unwrap();
    let model = work.path().join("m.json");
    ok(&[
        "train",
        "--manifest",
        s(manifest),
        "--features",
        "2,6,14",
        "--out",
        s(&model),
    ]);
    let json = work.path().join("bench.json");
    let out = ok(&[
        "bench",
        "--model",
        s(&model),
        "--manifest",
        s(manifest),
        "--windows",
        "30",
        "--repetitions",
        "2",
        "--out",
        s(&json),
    ]);
    assert!(out.contains("total"));
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(report["samples"], 30);
    let out = ok(&[
        "stability",
        "--manifest",
        s(manifest),
        "--features",
        "2,6",
        "--trials",
        "5",
    ]);
    assert!(out.contains("logistic") && out.contains("random"));
    let out = ok(&[
        "sweep-neurons",
        "--manifest",
        s(manifest),
        "--features",
        "2,6",
        "--activations",
        "sigmoid",
        "--neuron-range",
        "1-4",
    ]);
    assert!(out.contains("sigmoid"));
}
