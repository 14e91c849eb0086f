mod common;

use std::fs;

use common::{normalized_catalog, rado, stdout, table_t2, witness_files};
use tempfile::tempdir;

#[test]
fn compute_prints_the_value_and_records_it() {
    let dir = tempdir().unwrap();
    let out = rado(dir.path(), &["compute", "--e0", "1,2,-1", "--e1", "1,2,-1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "11\n");
    let catalog = fs::read_to_string(dir.path().join("rado-catalog.jsonl")).unwrap();
    assert_eq!(catalog.lines().count(), 1);
    assert!(catalog.contains("\"status\":\"exact\""));
    assert!(catalog.contains("\"witness_path\":\"witnesses/"));

    let out = rado(dir.path(), &["compute", "--t", "2", "--q", "4", "--s", "2"]);
    assert_eq!(stdout(&out), "50\n");
}

#[test]
fn compute_exits_3_when_undetermined() {
    let dir = tempdir().unwrap();
    let out = rado(
        dir.path(),
        &[
            "compute",
            "--t",
            "2",
            "--q",
            "4",
            "--s",
            "2",
            "--start-hint",
            "10",
            "--cap",
            "20",
        ],
    );
    assert_eq!(out.status.code(), Some(3));
    assert!(stdout(&out).is_empty());
}

#[test]
fn verify_accepts_a_valid_coloring_and_lists_violations_otherwise() {
    let dir = tempdir().unwrap();
    let good = dir.path().join("good.coloring");
    fs::write(&good, "# rado-coloring v1\nN 4\nBRRB\n").unwrap();
    let good = good.to_str().unwrap();
    let out = rado(
        dir.path(),
        &[
            "verify",
            "--coloring",
            good,
            "--e0",
            "1,1,-1",
            "--e1",
            "1,1,-1",
        ],
    );
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "VALID\n");

    let bad = dir.path().join("bad.coloring");
    fs::write(&bad, "# rado-coloring v1\nN 4\nRRRR\n").unwrap();
    let bad = bad.to_str().unwrap();
    let out = rado(
        dir.path(),
        &[
            "verify",
            "--coloring",
            bad,
            "--e0",
            "1,1,-1",
            "--e1",
            "1,1,-1",
        ],
    );
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout(&out), "1,1,2\n1,2,3\n1,3,4\n2,1,3\n2,2,4\n3,1,4\n");
}

#[test]
fn witness_writes_a_checked_coloring() {
    let dir = tempdir().unwrap();
    let out = rado(
        dir.path(),
        &[
            "witness",
            "--construction",
            "thm21",
            "--t",
            "1",
            "--q",
            "2",
            "--s",
            "1",
        ],
    );
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("# rado-coloring v1\nN 6\n"), "{text}");

    let out = rado(
        dir.path(),
        &[
            "witness",
            "--construction",
            "thm22-corrected",
            "--t",
            "3",
            "--q",
            "6",
            "--s",
            "4",
            "--out",
            "w.coloring",
        ],
    );
    assert_eq!(out.status.code(), Some(0));
    assert!(dir.path().join("w.coloring").exists());
}

#[test]
fn witness_self_check_failure_exits_4() {
    let dir = tempdir().unwrap();
    let out = rado(
        dir.path(),
        &[
            "witness",
            "--construction",
            "thm22",
            "--t",
            "3",
            "--q",
            "6",
            "--s",
            "4",
        ],
    );
    assert_eq!(out.status.code(), Some(4));
    assert!(stdout(&out).is_empty());
    let out = rado(dir.path(), &["witness", "--construction", "remark-t6"]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn bounds_prints_applicable_formulas() {
    let dir = tempdir().unwrap();
    let out = rado(dir.path(), &["bounds", "--t", "1", "--q", "5", "--s", "1"]);
    assert_eq!(stdout(&out), "thm21 13\nthm22 13\nexact_rr1 17\n");
    let out = rado(dir.path(), &["bounds", "--t", "3", "--q", "3"]);
    assert!(stdout(&out).contains("diagonal_exact 111\n"));
    let out = rado(dir.path(), &["bounds", "--a", "2,1", "--b", "1"]);
    assert_eq!(stdout(&out), "exact_multivar_rr1 11\n");
}

#[test]
fn oracle_prints_the_brute_force_value() {
    let dir = tempdir().unwrap();
    let out = rado(dir.path(), &["oracle", "--e0", "1,2,-1", "--e1", "1,1,-1"]);
    assert_eq!(stdout(&out), "7\n");
    let out = rado(
        dir.path(),
        &["oracle", "--e0", "2,3,-1", "--e1", "2,2,-1", "--cap", "12"],
    );
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn usage_errors_exit_2() {
    let dir = tempdir().unwrap();
    for args in [
        &["compute"][..],
        &["compute", "--e0", "1,0,-1", "--e1", "1,1,-1"],
        &["compute", "--t", "0", "--q", "1", "--s", "1"],
        &["witness", "--construction", "thm21", "--t", "1"],
        &["bounds", "--t", "0", "--q", "1"],
        &["oracle", "--e0", "1,1,-1", "--e1", "1,1,-1", "--cap", "99"],
        &["table", "--t-range", "3-2"],
        &["frobnicate"],
    ] {
        assert_eq!(rado(dir.path(), args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn table_is_deterministic_and_resumable() {
    let a = tempdir().unwrap();
    let b = tempdir().unwrap();
    let (out_a, report_a) = table_t2(a.path(), &[]);
    let (out_b, report_b) = table_t2(b.path(), &[]);
    assert_eq!(out_a.status.code(), Some(0));
    assert_eq!(out_b.status.code(), Some(0));
    assert_eq!(report_a, report_b);
    assert_eq!(stdout(&out_a), report_a);
    assert!(report_a.contains("2\t3\t2\t42\t43\t42\ttable-differs,table-bound-differ\n"));
    let catalog_a = normalized_catalog(&a.path().join("cat.jsonl"));
    assert_eq!(catalog_a, normalized_catalog(&b.path().join("cat.jsonl")));
    assert_eq!(catalog_a.len(), 36);
    assert_eq!(witness_files(a.path()), witness_files(b.path()));

    let before = fs::read(a.path().join("cat.jsonl")).unwrap();
    let (out, resumed) = table_t2(a.path(), &["--resume"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(resumed, report_a);
    assert_eq!(fs::read(a.path().join("cat.jsonl")).unwrap(), before);
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert_eq!(stderr.matches("(catalog)").count(), 36);
}

#[test]
fn resume_recomputes_entries_whose_witness_was_tampered() {
    let dir = tempdir().unwrap();
    let (_, report) = table_t2(dir.path(), &["--q-max", "4"]);
    let lines_before = fs::read_to_string(dir.path().join("cat.jsonl"))
        .unwrap()
        .lines()
        .count();
    let name = witness_files(dir.path()).into_keys().next().unwrap();
    let path = dir.path().join("witnesses").join(name);
    let text = fs::read_to_string(&path).unwrap().replacen('B', "R", 3);
    fs::write(&path, text).unwrap();
    let (out, again) = table_t2(dir.path(), &["--q-max", "4", "--resume"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(again, report);
    let lines_after = fs::read_to_string(dir.path().join("cat.jsonl"))
        .unwrap()
        .lines()
        .count();
    assert_eq!(lines_after, lines_before + 1);
}
