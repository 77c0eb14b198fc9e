//! End-to-end runs of the `basic` binary against the fixture manifests.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

fn basic(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_basic"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

/// Copy of the fixture tree that tests may corrupt, with a config pointing
/// back at the shared lexicon and embeddings.
fn scratch() -> tempfile::TempDir {
    let dir = tempfile::tempdir().unwrap();
    for sub in ["graphs", "masks"] {
        fs::create_dir_all(dir.path().join(sub)).unwrap();
        for e in fs::read_dir(fixtures().join(sub)).unwrap() {
            let e = e.unwrap();
            fs::copy(e.path(), dir.path().join(sub).join(e.file_name())).unwrap();
        }
    }
    for f in ["manifest.json", "mixed.json"] {
        fs::copy(fixtures().join(f), dir.path().join(f)).unwrap();
    }
    let core = Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/fixtures");
    let cfg = serde_json::json!({
        "lexicon_path": core.join("lexicon.json"),
        "embeddings_path": core.join("embeddings.txt"),
    });
    fs::write(dir.path().join("config.json"), cfg.to_string()).unwrap();
    dir
}

fn csv_rows(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .map(|l| l.split(',').map(String::from).collect())
        .collect()
}

#[test]
fn validate_fixture_manifest() {
    let o = basic(&[
        "validate",
        "--manifest",
        s(&fixtures().join("manifest.json")),
    ]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
}

#[test]
fn validate_reports_rle_mismatch_once() {
    let dir = scratch();
    let path = dir.path().join("masks/zebra.json");
    let mut v: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    v["granularities"]["S"][1]["rle"][0] = serde_json::json!(1000);
    fs::write(&path, v.to_string()).unwrap();

    let o = basic(&[
        "validate",
        "--manifest",
        s(&dir.path().join("manifest.json")),
    ]);
    assert_eq!(code(&o), 1);
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 1, "{out}");
    assert!(
        lines[0].contains("zebra.json") && lines[0].contains("granularities.S[1]"),
        "{out}"
    );
}

#[test]
fn validate_reports_missing_file() {
    let dir = scratch();
    fs::remove_file(dir.path().join("graphs/beach.json")).unwrap();
    let o = basic(&[
        "validate",
        "--manifest",
        s(&dir.path().join("manifest.json")),
    ]);
    assert_eq!(code(&o), 1);
    let out = stdout(&o);
    assert!(
        out.contains("beach.json") && out.contains("file not found"),
        "{out}"
    );
}

#[test]
fn unreadable_manifest_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let o = basic(&["validate", "--manifest", s(&dir.path().join("nope.json"))]);
    assert_eq!(code(&o), 2);
    fs::write(dir.path().join("bad.json"), "[{").unwrap();
    let out = dir.path().join("out");
    let o = basic(&[
        "evaluate",
        "--manifest",
        s(&dir.path().join("bad.json")),
        "--out",
        s(&out),
    ]);
    assert_eq!(code(&o), 2);
}

#[test]
fn identical_pairs_score_one_hundred() {
    let out = tempfile::tempdir().unwrap();
    let o = basic(&[
        "evaluate",
        "--manifest",
        s(&fixtures().join("manifest.json")),
        "--out",
        s(out.path()),
    ]);
    assert_eq!(code(&o), 0);
    let rows = csv_rows(&fs::read_to_string(out.path().join("report.csv")).unwrap());
    assert_eq!(rows.len(), 4);
    let header = &rows[0];
    for row in &rows[1..] {
        for col in ["basic_h", "basic_l", "basic"] {
            let i = header.iter().position(|h| h == col).unwrap();
            assert_eq!(row[i], "100.00", "{} {col}", row[0]);
        }
    }
    assert_eq!(fs::read_dir(out.path().join("matches")).unwrap().count(), 6);
}

#[test]
fn worker_count_does_not_change_outputs() {
    let manifest = fixtures().join("mixed.json");
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    for (dir, w) in [(&a, "1"), (&b, "8")] {
        let o = basic(&[
            "evaluate",
            "--manifest",
            s(&manifest),
            "--out",
            s(dir.path()),
            "--workers",
            w,
        ]);
        assert_eq!(code(&o), 0);
    }
    for f in [
        "report.csv",
        "pairs.json",
        "summary.json",
        "matches/MethodA-dock_decoded-dock.json",
    ] {
        assert_eq!(
            fs::read(a.path().join(f)).unwrap(),
            fs::read(b.path().join(f)).unwrap(),
            "{f}"
        );
    }
}

#[test]
fn only_sem_leaves_mask_columns_blank() {
    let out = tempfile::tempdir().unwrap();
    let o = basic(&[
        "evaluate",
        "--manifest",
        s(&fixtures().join("mixed.json")),
        "--out",
        s(out.path()),
        "--only",
        "sem",
    ]);
    assert_eq!(code(&o), 0);
    let rows = csv_rows(&fs::read_to_string(out.path().join("report.csv")).unwrap());
    let i = rows[0].iter().position(|h| h == "iou_f").unwrap();
    let h = rows[0].iter().position(|h| h == "basic_h").unwrap();
    for row in &rows[1..] {
        assert_eq!(row[i], "");
        assert_ne!(row[h], "");
    }
}

#[test]
fn failed_pair_is_reported_and_others_scored() {
    let dir = scratch();
    fs::write(dir.path().join("masks/beach.json"), "{").unwrap();
    let out = dir.path().join("out");
    let manifest = dir.path().join("mixed.json");
    let o = basic(&["evaluate", "--manifest", s(&manifest), "--out", s(&out)]);
    assert_eq!(code(&o), 1);
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(
        err.contains("MethodA-beach-beach") && err.contains("MethodB-beach-zebra"),
        "{err}"
    );
    let pairs: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(out.join("pairs.json")).unwrap()).unwrap();
    assert_eq!(pairs.as_array().unwrap().len(), 3);

    let strict_out = dir.path().join("strict");
    let o = basic(&[
        "evaluate",
        "--manifest",
        s(&manifest),
        "--out",
        s(&strict_out),
        "--strict",
    ]);
    assert_eq!(code(&o), 1);
    assert!(!strict_out.join("report.csv").exists());
}

#[test]
fn combine_only_reproduces_published_totals() {
    // method, BASIC-H, BASIC-L as published
    let expected = [
        ("SDRecon", 35.31, 11.81),
        ("BrainDiffuser", 39.71, 16.65),
        ("MindEye", 44.30, 17.03),
        ("DREAM", 46.37, 19.57),
        ("MindEye2", 44.39, 22.16),
        ("MindBridge", 40.16, 15.00),
        ("UMBRAE", 44.06, 17.89),
        ("NeuroPictor", 44.21, 25.88),
        ("NeuroVLA", 47.88, 13.54),
        ("SepBrain", 43.04, 18.84),
        ("UniBrain", 39.89, 13.79),
        ("STTM", 45.88, 22.90),
        ("MindTuner", 44.63, 16.98),
        ("BrainGuard", 45.43, 21.76),
    ];
    let o = basic(&[
        "evaluate",
        "--combine-only",
        s(&fixtures().join("nsd_subscores.csv")),
    ]);
    assert_eq!(code(&o), 0);
    let rows = csv_rows(&stdout(&o));
    let col = |name: &str| rows[0].iter().position(|h| h == name).unwrap();
    let (h, l) = (col("basic_h"), col("basic_l"));
    assert_eq!(rows.len(), expected.len() + 1);
    for ((name, bh, bl), row) in expected.iter().zip(&rows[1..]) {
        assert_eq!(&row[0], name);
        let got_h: f64 = row[h].parse().unwrap();
        let got_l: f64 = row[l].parse().unwrap();
        assert!((got_h - bh).abs() <= 0.03, "{name} basic_h {got_h}");
        assert!((got_l - bl).abs() <= 0.03, "{name} basic_l {got_l}");
    }
}

#[test]
fn sweep_over_tau_sem() {
    let out = tempfile::tempdir().unwrap();
    let o = basic(&[
        "sweep",
        "--manifest",
        s(&fixtures().join("mixed.json")),
        "--out",
        s(out.path()),
        "--grid",
        "tau_sem=0.7,0.8,0.9",
    ]);
    assert_eq!(code(&o), 0);
    let tau = csv_rows(&fs::read_to_string(out.path().join("tau.csv")).unwrap());
    assert_eq!(tau[0], ["tau_sem", "tau", "failures"]);
    assert_eq!(tau.len(), 4);
    for row in &tau[1..] {
        let t: f64 = row[1].parse().unwrap();
        assert!((-1.0..=1.0).contains(&t));
    }
    let sweep = csv_rows(&fs::read_to_string(out.path().join("sweep.csv")).unwrap());
    assert_eq!(sweep.len(), 1 + 3 * 3);
    let blocks: std::collections::BTreeSet<&str> =
        sweep[1..].iter().map(|r| r[0].as_str()).collect();
    assert_eq!(blocks.len(), 3);
}

#[test]
fn empty_grid_is_a_usage_error() {
    let out = tempfile::tempdir().unwrap();
    let manifest = fixtures().join("mixed.json");
    let o = basic(&["sweep", "--manifest", s(&manifest), "--out", s(out.path())]);
    assert_eq!(code(&o), 2);
    let o = basic(&[
        "sweep",
        "--manifest",
        s(&manifest),
        "--out",
        s(out.path()),
        "--grid",
        "tau_sem=",
    ]);
    assert_eq!(code(&o), 2);
}

#[test]
fn attribute_mode_grid_keeps_object_columns() {
    let out = tempfile::tempdir().unwrap();
    let o = basic(&[
        "sweep",
        "--manifest",
        s(&fixtures().join("mixed.json")),
        "--out",
        s(out.path()),
        "--grid",
        "attribute_mode=host-conditioned,unconditioned",
    ]);
    assert_eq!(code(&o), 0);
    let rows = csv_rows(&fs::read_to_string(out.path().join("sweep.csv")).unwrap());
    let header = &rows[0];
    let cols: Vec<usize> = ["obj_p", "obj_r", "obj_f1"]
        .iter()
        .map(|c| header.iter().position(|h| h == c).unwrap())
        .collect();
    let method = header.iter().position(|h| h == "method").unwrap();
    let block = |mode: &str| -> Vec<Vec<String>> {
        rows[1..]
            .iter()
            .filter(|r| r[0] == mode)
            .map(|r| {
                std::iter::once(r[method].clone())
                    .chain(cols.iter().map(|&i| r[i].clone()))
                    .collect()
            })
            .collect()
    };
    let a = block("host-conditioned");
    assert_eq!(a.len(), 3);
    assert_eq!(a, block("unconditioned"));
}
