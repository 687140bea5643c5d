#![allow(dead_code)]

pub mod gen;

use std::path::PathBuf;

use vf_core::pipeline::Pipeline;
use vf_core::{configs_for, Finding, ValidationResults};

pub const TIMESTAMP: &str = "2009-03-29T14:45:00";

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

pub fn read_fixture(name: &str) -> String {
    std::fs::read_to_string(fixture(name)).unwrap()
}

/// Runs only `rules`, with `props` as (rule, key, value) overrides.
pub fn run_with(lang: &str, rules: &[&str], props: &[(&str, &str, &str)], file: &str, src: &str) -> ValidationResults {
    let registry = vf_core::pipeline::frontend(lang).unwrap().registry();
    let mut configs = configs_for(&registry, rules).unwrap();
    for (rule, key, value) in props {
        let c = configs.iter_mut().find(|c| c.rule_id == *rule).unwrap();
        c.properties.insert(key.to_string(), value.to_string());
    }
    Pipeline::for_language(lang, configs).unwrap().run_sources(&[(file.to_string(), src.to_string())], TIMESTAMP)
}

pub fn findings(lang: &str, rule: &str, src: &str) -> Vec<Finding> {
    findings_with(lang, rule, &[], src)
}

pub fn findings_with(lang: &str, rule: &str, props: &[(&str, &str)], src: &str) -> Vec<Finding> {
    let props: Vec<_> = props.iter().map(|(k, v)| (rule, *k, *v)).collect();
    let file = if lang == "seqdiag" { "t.sd" } else { "t.cpp" };
    let results = run_with(lang, &[rule], &props, file, src);
    assert!(results.diagnostics.is_empty(), "{:?}", results.diagnostics);
    results.findings().cloned().collect()
}

pub fn positions(findings: &[Finding]) -> Vec<(u32, u32)> {
    findings.iter().map(|f| (f.span.row, f.span.col)).collect()
}

/// Wraps statements in a function whose body starts on row 2.
pub fn in_fn(body: &str) -> String {
    format!("void run() {{\n{body}\n}}\n")
}
