use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

const FIB: &str = "\
# fibonacci
morphism 0:
  0 -> 0 1
  1 -> 0
tail repeat 1
hint primitive
";

fn sadic(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sadic")).args(args).output().expect("binary runs")
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("sadic-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    fs::write(&path, contents).unwrap();
    path
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn complexity_csv_is_n_plus_one() {
    let ds = scratch("fib.ds", FIB);
    let csv = ds.with_extension("csv");
    let out = sadic(&["complexity", "--dirseq", ds.to_str().unwrap(), "--max", "30", "--out", csv.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = fs::read_to_string(&csv).unwrap();
    let mut rows = text.lines();
    assert_eq!(rows.next(), Some("n,p,delta"));
    let rows: Vec<Vec<&str>> = rows.map(|r| r.split(',').collect()).collect();
    assert_eq!(rows.len(), 30);
    for (i, r) in rows.iter().enumerate() {
        let n = i + 1;
        assert_eq!(r[0], n.to_string());
        assert_eq!(r[1], (n + 1).to_string());
        assert_eq!(r[2], if n == 30 { "" } else { "1" });
    }
}

#[test]
fn output_is_deterministic() {
    let ds = scratch("fib-det.ds", FIB);
    let ds = ds.to_str().unwrap();
    for args in [
        vec!["language", "--dirseq", ds, "--len", "7"],
        vec!["coding", "special", "--dirseq", ds, "--n", "3"],
        vec!["cover", "--random", "300", "--ell", "2", "--seed", "5", "--list"],
    ] {
        let a = sadic(&args);
        let b = sadic(&args);
        assert_eq!(a.status.code(), Some(0), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn language_and_special_words() {
    let ds = scratch("fib-lang.ds", FIB);
    let ds = ds.to_str().unwrap();
    let out = sadic(&["language", "--dirseq", ds, "--len", "3"]);
    assert_eq!(stdout(&out), "001\n010\n100\n101\n");
    let out = sadic(&["special", "--dirseq", ds, "--len", "3"]);
    assert_eq!(stdout(&out), "010\n");
}

#[test]
fn return_words_to_one() {
    let ds = scratch("fib-ret.ds", FIB);
    let out = sadic(&["coding", "return-words", "--dirseq", ds.to_str().unwrap(), "--cylinder", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("-> 100\n") && text.contains("-> 10\n"), "{text}");
    assert!(!text.contains("FAIL"));
}

#[test]
fn contract_round_trips_through_the_parser() {
    let ds = scratch("fib-con.ds", FIB);
    let out = sadic(&["contract", "--dirseq", ds.to_str().unwrap(), "--blocks", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("0 -> 0 1 0\n") && text.contains("1 -> 0 1\n"), "{text}");
    let again = scratch("fib-con2.ds", &text);
    let out2 = sadic(&["contract", "--dirseq", again.to_str().unwrap(), "--blocks", "1"]);
    assert_eq!(stdout(&out2), text);
}

#[test]
fn recognizability_and_pk_sample() {
    let ds = scratch("fib-rec.ds", FIB);
    let out = sadic(&["recognizability", "--dirseq", ds.to_str().unwrap()]);
    assert_eq!(stdout(&out), "radius 2\n");
    assert_eq!(stdout(&sadic(&["pk-sample", "--n", "8", "--d", "1"])), "64\n");
    assert_eq!(stdout(&sadic(&["pk-sample", "--n", "8", "--d", "2"])), "none\n");
}

#[test]
fn verify_words_passes() {
    let out = sadic(&["verify", "words"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(!stdout(&out).contains("FAIL"));
}

#[test]
fn negative_family_reports_every_lemma_item() {
    let out = sadic(&["negative-family", "--levels", "1", "--kmax", "512"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    for item in ["linear-complexity", "symmetric-lengths/1", "recognizable/1", "gap-factor/0/1"] {
        assert!(text.contains(item), "{item} missing from\n{text}");
    }
    // the recognizability item is red at the prescribed radius
    let strict = sadic(&["negative-family", "--levels", "1", "--kmax", "512", "--verify"]);
    assert_eq!(strict.status.code(), Some(1));
    assert!(stdout(&strict).contains("FAIL recognizable/1"));
}

#[test]
fn input_errors_exit_two() {
    let bad = scratch("bad.ds", "alphabet 0: 0 1\nmorphism 0:\n  0 -> 0 7\n  1 -> 0\n");
    let out = sadic(&["complexity", "--dirseq", bad.to_str().unwrap(), "--max", "3"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line 3"), "{err}");

    assert_eq!(sadic(&["verify", "nonsense"]).status.code(), Some(2));
    assert_eq!(sadic(&["complexity", "--dirseq", "/no/such/file", "--max", "3"]).status.code(), Some(2));
    assert_eq!(sadic(&["frobnicate"]).status.code(), Some(2));
}
