mod common;

use std::path::Path;
use std::process::{Command, Output};

use common::{fixture, TIMESTAMP};
use vf_core::report::from_xml;

fn vf(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vf")).current_dir(dir).args(args).output().unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn path(name: &str) -> String {
    fixture(name).to_string_lossy().into_owned()
}

#[test]
fn clean_corpus_exits_zero() {
    let dir = tempfile::tempdir().unwrap();
    let out = vf(dir.path(), &["--lang", "minicpp", "--timestamp", TIMESTAMP, &path("clean")]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stdout));
    let results = from_xml(&std::fs::read_to_string(dir.path().join("vfresults.xml")).unwrap()).unwrap();
    assert_eq!(results.total_findings(), 0);
    assert_eq!(results.files.len(), 1);
    assert_eq!(results.created, TIMESTAMP);
}

#[test]
fn shall_finding_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let out = vf(dir.path(), &["--lang", "seqdiag", &path("librarytest.sd")]);
    assert_eq!(code(&out), 1);
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("TriggerChecker [SHALL]: 1 findings"), "{stdout}");
    assert!(stdout.contains("NoCallToTestDriverChecker [SHALL]: 1 findings"), "{stdout}");
}

#[test]
fn should_findings_fail_only_when_strict() {
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("t.cpp");
    std::fs::write(&src, "typedef int Count;\n").unwrap();
    let src = src.to_string_lossy().into_owned();
    assert_eq!(code(&vf(dir.path(), &["--lang", "minicpp", &src])), 0);
    assert_eq!(code(&vf(dir.path(), &["--lang", "minicpp", "--strict", &src])), 1);
}

#[test]
fn will_priority_never_fails() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("vf.cfg");
    std::fs::write(&cfg, "[rule TriggerChecker]\npriority = WILL\n[rule NoCallToTestDriverChecker]\npriority = WILL\n")
        .unwrap();
    let out =
        vf(dir.path(), &["--lang", "seqdiag", "--strict", "--config", &cfg.to_string_lossy(), &path("librarytest.sd")]);
    assert_eq!(code(&out), 0);
}

#[test]
fn parse_error_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.cpp");
    std::fs::write(&bad, "class A {\n").unwrap();
    let out = vf(dir.path(), &["--lang", "minicpp", &bad.to_string_lossy(), &path("clean/library.cpp")]);
    assert_eq!(code(&out), 2);
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("bad.cpp:1:9: parse error"), "{stderr}");
    let results = from_xml(&std::fs::read_to_string(dir.path().join("vfresults.xml")).unwrap()).unwrap();
    assert_eq!(results.diagnostics.len(), 1);
}

#[test]
fn missing_input_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let out = vf(dir.path(), &["--lang", "minicpp", "nowhere.cpp"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8(out.stderr).unwrap().contains("nowhere.cpp"));
}

#[test]
fn usage_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad_cfg = dir.path().join("bad.cfg");
    std::fs::write(&bad_cfg, "[rule NoSuchRule]\n").unwrap();
    let cfg = bad_cfg.to_string_lossy().into_owned();
    let lib = path("clean/library.cpp");
    for args in [
        vec!["--lang", "cobol", lib.as_str()],
        vec!["--lang", "minicpp", "--config", cfg.as_str(), lib.as_str()],
        vec!["--lang", "minicpp", "--config", "missing.cfg", lib.as_str()],
        vec!["--lang", "minicpp"],
        vec![lib.as_str()],
    ] {
        let out = vf(dir.path(), &args);
        assert_eq!(code(&out), 2, "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    }
    let out = vf(dir.path(), &["--lang", "minicpp", "--config", &cfg, &lib]);
    assert!(String::from_utf8(out.stderr).unwrap().contains("NoSuchRule"));
}

#[test]
fn list_rules() {
    let dir = tempfile::tempdir().unwrap();
    let out = vf(dir.path(), &["--lang", "minicpp", "--list-rules"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 18);
    assert!(text.contains("InterfaceChecker\tInterface Checker\tSHALL\tLOW\tCloseAPI=true\n"));
    let out = vf(dir.path(), &["--lang", "seqdiag", "--list-rules"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap().lines().count(), 2);
}

#[test]
fn writes_html_and_custom_xml_path() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = path("fig6.cfg");
    let out = vf(
        dir.path(),
        &[
            "--lang",
            "minicpp",
            "--config",
            &cfg,
            "--xml-out",
            "r.xml",
            "--html-out",
            "r.html",
            "--timestamp",
            TIMESTAMP,
            &path("ExampleImpl.cpp"),
        ],
    );
    assert_eq!(code(&out), 1);
    let html = std::fs::read_to_string(dir.path().join("r.html")).unwrap();
    assert!(html.contains("Found 4 errors; created 2009-03-29 14:45"));
    let xml = std::fs::read_to_string(dir.path().join("r.xml")).unwrap();
    assert_eq!(from_xml(&xml).unwrap().total_findings(), 4);
}

#[test]
fn directories_are_scanned_by_extension() {
    let dir = tempfile::tempdir().unwrap();
    let tree = dir.path().join("src");
    std::fs::create_dir_all(tree.join("sub")).unwrap();
    std::fs::write(tree.join("a.cpp"), "int a = 0;\n").unwrap();
    std::fs::write(tree.join("sub/b.ii"), "int b = 0;\n").unwrap();
    std::fs::write(tree.join("notes.txt"), "not c++ {").unwrap();
    let out = vf(dir.path(), &["--lang", "minicpp", "src"]);
    assert_eq!(code(&out), 0);
    let results = from_xml(&std::fs::read_to_string(dir.path().join("vfresults.xml")).unwrap()).unwrap();
    assert_eq!(results.files, vec!["src/a.cpp", "src/sub/b.ii"]);
}

#[test]
fn output_is_reproducible_with_fixed_timestamp() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["--lang", "minicpp", "--timestamp", TIMESTAMP, "--xml-out", "x.xml"];
    let corpus = path("corpus/violations.cpp");
    let mut all = args.to_vec();
    all.push(&corpus);
    vf(dir.path(), &all);
    let first = std::fs::read(dir.path().join("x.xml")).unwrap();
    vf(dir.path(), &all);
    assert_eq!(first, std::fs::read(dir.path().join("x.xml")).unwrap());
}
