use std::path::PathBuf;
use std::process::{Command, Output};

fn slpseq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_slpseq"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn fib5() -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data/fib5.slp")
        .to_string_lossy()
        .into_owned()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn golden_match_and_access() {
    let f = fib5();
    let o = slpseq(&["match", &f, "ab"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "1 2\n4 5\nocc=2\n");
    let o = slpseq(&["match", &f, "ab", "--flavor", "const"]);
    assert_eq!(stdout(&o), "1 2\n4 5\nocc=2\n");
    let o = slpseq(&["match", &f, "ab", "--count-only"]);
    assert_eq!(stdout(&o), "occ=2\n");
    let o = slpseq(&["match", &f, "xyz"]);
    assert_eq!(stdout(&o), "occ=0\n");
    assert_eq!(stdout(&slpseq(&["access", &f, "3"])), "a\n");
    assert_eq!(stdout(&slpseq(&["decompress", &f])), "abaab");
}

#[test]
fn ls_lp_and_stats() {
    let f = fib5();
    assert_eq!(stdout(&slpseq(&["ls", &f, "0", "b"])), "2\n");
    assert_eq!(stdout(&slpseq(&["ls", &f, "2", "b", "--flavor", "const"])), "5\n");
    assert_eq!(stdout(&slpseq(&["ls", &f, "5", "b"])), "none\n");
    assert_eq!(stdout(&slpseq(&["lp", &f, "6", "a"])), "4\n");
    assert_eq!(stdout(&slpseq(&["lp", &f, "1", "a"])), "none\n");
    assert_eq!(stdout(&slpseq(&["stats", &f])), "n=5\nN=5\nsigma=2\nh=4\nlight_max=2\n");
}

#[test]
fn exit_codes() {
    let f = fib5();
    assert_eq!(slpseq(&[]).status.code(), Some(1));
    assert_eq!(slpseq(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(slpseq(&["access", &f, "x"]).status.code(), Some(1));
    assert_eq!(slpseq(&["ls", &f, "1", "ab"]).status.code(), Some(1));
    assert_eq!(slpseq(&["match", &f, ""]).status.code(), Some(1));
    assert_eq!(slpseq(&["access", &f, "0"]).status.code(), Some(3));
    assert_eq!(slpseq(&["access", &f, "6"]).status.code(), Some(3));
    assert_eq!(slpseq(&["ls", &f, "6", "a"]).status.code(), Some(3));
    assert_eq!(slpseq(&["lp", &f, "7", "a"]).status.code(), Some(3));
    let o = slpseq(&["decompress", &f, "--max-len", "4"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("refusing"));

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.slp");
    for text in ["nonsense\n", "SLP 2 0\nALPHA 1 a\nN 1 1\nN 0 0\n"] {
        std::fs::write(&bad, text).unwrap();
        assert_eq!(slpseq(&["stats", bad.to_str().unwrap()]).status.code(), Some(2));
    }
}

#[test]
fn compress_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("in.txt");
    let slp = dir.path().join("out.slp");
    let text = "she sells sea shells by the sea shore\n".repeat(20);
    std::fs::write(&src, &text).unwrap();
    let o = slpseq(&["compress", src.to_str().unwrap(), slp.to_str().unwrap()]);
    assert!(o.status.success());
    assert_eq!(stdout(&slpseq(&["decompress", slp.to_str().unwrap()])), text);

    let raw: Vec<u8> = (0..=255u8).chain(0..=255).collect();
    std::fs::write(&src, &raw).unwrap();
    assert_eq!(slpseq(&["compress", src.to_str().unwrap(), slp.to_str().unwrap()]).status.code(), Some(1));
    let o = slpseq(&["compress", "--bytes", src.to_str().unwrap(), slp.to_str().unwrap()]);
    assert!(o.status.success());
    let o = slpseq(&["decompress", "--bytes", slp.to_str().unwrap()]);
    assert_eq!(o.stdout, raw);
}

#[test]
fn count_only_equals_enumeration() {
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("in.txt");
    let slp = dir.path().join("out.slp");
    std::fs::write(&src, "abracadabra".repeat(50)).unwrap();
    slpseq(&["compress", src.to_str().unwrap(), slp.to_str().unwrap()]);
    let s = slp.to_str().unwrap();
    for pat in ["a", "ab", "rca", "dbr", "aaaa"] {
        let full = stdout(&slpseq(&["match", s, pat]));
        let lines: Vec<&str> = full.lines().collect();
        let count = stdout(&slpseq(&["match", s, pat, "--count-only"]));
        assert_eq!(count.trim(), *lines.last().unwrap());
        assert_eq!(format!("occ={}", lines.len() - 1), count.trim());
    }
}

#[test]
fn selftest_passes() {
    let o = slpseq(&["selftest", "--seed", "3", "--cases", "100"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).starts_with("files=100 "));
}

#[test]
fn bench_csv() {
    let o = slpseq(&["bench", "fibonacci:30", "--queries", "50"]);
    assert!(o.status.success());
    let s = stdout(&o);
    let mut lines = s.lines();
    assert_eq!(lines.next(), Some("recipe,n,N,sigma,flavor,op,p50_ns,p99_ns,engine_queries_per_op"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 8);
    for r in rows {
        assert_eq!(r.split(',').count(), 9);
        assert!(r.starts_with("fibonacci:30,30,832040,2,"));
    }
    assert_eq!(slpseq(&["bench", "fibonacci:1"]).status.code(), Some(1));
}
