use std::path::Path;
use std::process::{Command, Output};

use hhl_cli::database::{bundled_db_dir, collection_file_name, MANIFEST};
use hhl_cli::import::verify_manifest;

const M2_200: &str = "5,200,{{-1,0,0,0,0},{0,-1,0,0,0},{0,0,-1,0,0},{0,0,1,1,0},{0,0,0,-1,0},{0,0,0,0,1},{0,0,0,0,-1},{1,1,0,0,-2}},{{0,1,2,3,5},{0,1,2,3,6},{0,1,2,4,5},{0,1,2,4,6},{0,1,3,4,5},{0,1,3,4,6},{0,2,3,5,7},{0,2,3,6,7},{0,2,4,5,7},{0,2,4,6,7},{0,3,4,5,7},{0,3,4,6,7},{1,2,3,5,7},{1,2,3,6,7},{1,2,4,5,7},{1,2,4,6,7},{1,3,4,5,7},{1,3,4,6,7}}";

fn hhl_in(db: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hhl"))
        .args(args)
        .env("HHL_DB_DIR", db)
        .output()
        .expect("running hhl")
}

fn hhl(args: &[&str]) -> Output {
    hhl_in(&bundled_db_dir(), args)
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn exit_codes() {
    assert_eq!(hhl(&["check", "2", "0"]).status.code(), Some(0));
    let failing = (0..18)
        .find(|i| hhl(&["check", "3", &i.to_string()]).status.code() == Some(1))
        .expect("some threefold fails");
    assert_eq!(hhl(&["check", "3", &failing.to_string()]).status.code(), Some(1));
    let missing = hhl(&["check", "2", "99"]);
    assert_eq!(missing.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&missing.stderr).starts_with("error:"));
    assert_eq!(hhl(&["check", "9", "0"]).status.code(), Some(2));
}

#[test]
fn check_report_mentions_everything() {
    let out = stdout(&hhl(&["check", "2", "3"]));
    for needle in [
        "resolution ranks:",
        "collection size:",
        "full: true (by theorem)",
        "verdict: success",
        "hom0 matrix",
    ] {
        assert!(out.contains(needle), "missing {needle:?} in\n{out}");
    }
    let bondal = stdout(&hhl(&["check", "2", "3", "--convention", "bondal", "--json"]));
    let v: serde_json::Value = serde_json::from_str(&bondal).unwrap();
    assert_eq!(v["success"], true);
}

#[test]
fn survey_is_deterministic_across_job_counts() {
    let one = stdout(&hhl(&["survey", "3", "--jobs", "1"]));
    let four = stdout(&hhl(&["survey", "3", "--jobs", "4"]));
    assert_eq!(one, four);
    assert!(one.contains("16/18"), "{one}");
}

#[test]
fn survey_resumes_from_cache() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("results.jsonl");
    let cache_arg = cache.to_str().unwrap();
    let full = stdout(&hhl(&["survey", "3", "--cache", cache_arg, "--json"]));
    let text = std::fs::read_to_string(&cache).unwrap();
    assert_eq!(text.lines().count(), 18);

    // keep a prefix plus half a record, as after an interrupted run
    let lines: Vec<&str> = text.lines().collect();
    let mut cut = lines[..7].join("\n");
    cut.push('\n');
    cut.push_str(&lines[7][..lines[7].len() / 2]);
    std::fs::write(&cache, cut).unwrap();
    let resumed = stdout(&hhl(&["survey", "3", "--cache", cache_arg, "--json"]));
    assert_eq!(resumed, full);
    let text = std::fs::read_to_string(&cache).unwrap();
    assert_eq!(text.lines().filter(|l| l.ends_with('}')).count(), 18);

    // a complete cache means no new records
    let before = std::fs::read_to_string(&cache).unwrap();
    hhl(&["survey", "3", "--cache", cache_arg]);
    assert_eq!(std::fs::read_to_string(&cache).unwrap(), before);
}

#[test]
fn survey_range_and_timeout() {
    let out = stdout(&hhl(&["survey", "4", "--range", "0..10", "--json"]));
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["varieties"], 10);

    let out = hhl(&["survey", "4", "--range", "0..3", "--timeout", "0.000001", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["timeouts"].as_array().unwrap().len(), 3);
    assert!(stdout(&hhl(&["survey", "4", "--range", "0..3", "--timeout", "0.000001"])).contains("lower bound"));
    assert_eq!(hhl(&["survey", "4", "--timeout", "-1"]).status.code(), Some(2));
}

#[test]
fn unimodular_listing() {
    let out = stdout(&hhl(&["unimodular", "3"]));
    assert!(out.contains("unimodular: 16/18"), "{out}");
}

#[test]
fn import_reproduces_the_bundled_files() {
    let dir = tempfile::tempdir().unwrap();
    for dim in 1..=5 {
        let src = bundled_db_dir().join(collection_file_name(dim));
        let out = hhl(&[
            "import",
            src.to_str().unwrap(),
            "--format",
            "canonical",
            "--out-dir",
            dir.path().to_str().unwrap(),
        ]);
        assert!(out.status.success());
        assert_eq!(
            std::fs::read(dir.path().join(collection_file_name(dim))).unwrap(),
            std::fs::read(&src).unwrap()
        );
    }
    assert_eq!(
        std::fs::read(dir.path().join(MANIFEST)).unwrap(),
        std::fs::read(bundled_db_dir().join(MANIFEST)).unwrap()
    );
    assert!(verify_manifest(&bundled_db_dir()).unwrap().is_empty());
}

#[test]
fn import_m2_line_matches_bundled_record() {
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("dump.txt");
    std::fs::write(&src, format!("{M2_200}\n")).unwrap();
    let out = hhl(&[
        "import",
        src.to_str().unwrap(),
        "--format",
        "m2",
        "--out-dir",
        dir.path().to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let ours = std::fs::read_to_string(dir.path().join(collection_file_name(5))).unwrap();
    let bundled = std::fs::read_to_string(bundled_db_dir().join(collection_file_name(5))).unwrap();
    assert!(bundled.lines().any(|l| l == ours.trim_end()));

    // the imported directory serves as a database
    let check = hhl_in(dir.path(), &["check", "5", "200"]);
    assert_eq!(check.status.code(), Some(1));
    assert!(verify_manifest(dir.path()).unwrap().is_empty());
    std::fs::write(dir.path().join(collection_file_name(5)), "tampered\n").unwrap();
    assert_eq!(verify_manifest(dir.path()).unwrap(), vec![collection_file_name(5)]);
}

#[test]
fn truncated_dump_is_a_parse_error() {
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("dump.txt");
    std::fs::write(&src, &M2_200[..M2_200.len() - 20]).unwrap();
    let out = hhl(&[
        "import",
        src.to_str().unwrap(),
        "--format",
        "m2",
        "--out-dir",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 1"), "{err}");
}

#[test]
fn dump_cells_lists_every_cell() {
    let out = stdout(&hhl(&["dump-cells", "2", "0"]));
    assert!(out.starts_with("# variety 2/0: 6 cells, ranks 1 3 2"), "{out}");
    assert_eq!(out.lines().filter(|l| !l.starts_with('#')).count(), 6);
}
