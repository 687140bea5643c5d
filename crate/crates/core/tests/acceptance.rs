//! Acceptance criteria, one line each. Exits non-zero when any fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::gen::{random_ast, random_results};
use common::{fixture, in_fn, read_fixture, run_with, TIMESTAMP};
use vf_core::minicpp::parser::parse_source;
use vf_core::pipeline::{frontend, AnalysisRoot, Pipeline};
use vf_core::report::{from_xml, to_xml, SeveritySummary};
use vf_core::rule::Criticality;
use vf_core::symtab::SymbolTable;
use vf_core::visitor::traverse_counted;
use vf_core::{configs_for, load_config, AstNode, Finding};

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, message: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(message())
    }
}

fn rows(findings: &[Finding]) -> Vec<(String, u32, u32, String)> {
    findings.iter().map(|f| (f.rule_id.clone(), f.span.row, f.span.col, f.message.clone())).collect()
}

fn ac1_example_impl() -> Outcome {
    let started = Instant::now();
    let lang = frontend("minicpp").unwrap();
    let configs = load_config(&read_fixture("fig6.cfg"), &lang.registry()).map_err(|e| e.to_string())?;
    let pipeline = Pipeline::new(lang, lang.registry(), configs).map_err(|e| e.to_string())?;
    let results = pipeline.run(&[fixture("ExampleImpl.cpp")], TIMESTAMP);
    let elapsed = started.elapsed();
    let enabled: Vec<&str> = results.reports.iter().map(|r| r.rule.id.as_str()).collect();
    ensure(enabled == ["IdentifierChecker", "InterfaceChecker", "NamingConventionChecker"], || {
        format!("enabled {enabled:?}")
    })?;
    let close_api = results.report("InterfaceChecker").unwrap().properties.get("CloseAPI").cloned();
    ensure(close_api.as_deref() == Some("true"), || format!("CloseAPI = {close_api:?}"))?;
    let found: Vec<Finding> = results.findings().cloned().collect();
    let expected = vec![
        ("IdentifierChecker".to_string(), 15, 7, "Local Variable \"ll\" is named similar to \"ll : int\".".to_string()),
        (
            "IdentifierChecker".into(),
            19,
            7,
            "Local Variable \"arraySize\" is named similar to \"array_Size : BOOL\".".into(),
        ),
        (
            "IdentifierChecker".into(),
            22,
            7,
            "Local Variable \"tempint\" is named similar to instance variable \"tempint : INT\".".into(),
        ),
        (
            "InterfaceChecker".into(),
            10,
            7,
            "Class ExampleImpl has public functions not declared in interfaces: derive : DOUBLE".into(),
        ),
    ];
    ensure(rows(&found) == expected, || format!("findings {:#?}", rows(&found)))?;
    ensure(results.diagnostics.is_empty(), || format!("{:?}", results.diagnostics))?;
    ensure(elapsed < Duration::from_secs(1), || format!("took {elapsed:?}"))
}

fn ac2_library_chart() -> Outcome {
    let started = Instant::now();
    let results = run_with(
        "seqdiag",
        &["TriggerChecker", "NoCallToTestDriverChecker"],
        &[],
        "librarytest.sd",
        &read_fixture("librarytest.sd"),
    );
    let elapsed = started.elapsed();
    let found: Vec<(String, u32)> = results.findings().map(|f| (f.rule_id.clone(), f.span.row)).collect();
    let mut found_sorted = found.clone();
    found_sorted.sort_by_key(|(_, row)| *row);
    ensure(found_sorted == [("TriggerChecker".to_string(), 9), ("NoCallToTestDriverChecker".to_string(), 21)], || {
        format!("findings {found:?}")
    })?;
    ensure(results.diagnostics.is_empty(), || format!("{:?}", results.diagnostics))?;
    ensure(elapsed < Duration::from_secs(1), || format!("took {elapsed:?}"))
}

fn count_nodes(node: &AstNode) -> usize {
    1 + node.children.iter().map(count_nodes).sum::<usize>()
}

fn ac3_single_traversal() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let registry = frontend("minicpp").unwrap().registry();
    let ids: Vec<String> = registry.descriptors().map(|d| d.id.clone()).collect();
    for round in 0..50 {
        let size = if round == 0 {
            50
        } else if round == 1 {
            5000
        } else {
            rng.gen_range(50..=5000)
        };
        let ast = random_ast(&mut rng, size);
        let nodes = count_nodes(&ast);
        let root = AnalysisRoot {
            file: "r.cpp".into(),
            content: String::new(),
            ast: Some(ast),
            symbols: SymbolTable::new(0),
            diagnostics: Vec::new(),
        };
        let k = if round < 19 { round } else { rng.gen_range(0..=ids.len()) };
        let subset: Vec<&str> = ids.choose_multiple(&mut rng, k).map(String::as_str).collect();
        let (_, visits) =
            traverse_counted(&root, &registry, &configs_for(&registry, &subset).unwrap()).map_err(|e| e.to_string())?;
        ensure(visits == nodes && nodes == size, || {
            format!("round {round}: {visits} visits, {nodes} nodes, {k} rules")
        })?;
    }
    Ok(())
}

struct Case {
    rule: &'static str,
    lang: &'static str,
    src: String,
    expected: Vec<(u32, u32)>,
}

fn cpp(rule: &'static str, src: impl Into<String>, expected: &[(u32, u32)]) -> Case {
    Case { rule, lang: "minicpp", src: src.into(), expected: expected.to_vec() }
}

fn sd(rule: &'static str, src: impl Into<String>, expected: &[(u32, u32)]) -> Case {
    Case { rule, lang: "seqdiag", src: src.into(), expected: expected.to_vec() }
}

fn truth_table() -> Vec<Case> {
    let chart = read_fixture("librarytest.sd");
    let quiet_chart = "sequencediagram s {\n  object t:T;\n  object a:A;\n  {\n    t -> a : <<trigger>> go();\n    t <- a : return x;\n  }\n}\n";
    vec![
        cpp("ConstructorChecker", "class A { ~A(); A(); };", &[(1, 17)]),
        cpp("ConstructorChecker", "class A { A(); ~A(); void f(); };", &[]),
        cpp("DestructorChecker", "class A { virtual void f(); ~A(); };", &[(1, 7)]),
        cpp("DestructorChecker", "class A { virtual void f(); virtual ~A(); };", &[]),
        cpp("EnumChecker", "enum E { A = 1, B };", &[(1, 6)]),
        cpp("EnumChecker", "enum E { A, B };", &[]),
        cpp("ExpressionChecker", in_fn("  bool r = a && b || c;"), &[(2, 19)]),
        cpp("ExpressionChecker", in_fn("  bool r = (a && b) || c;"), &[]),
        cpp("ExpressionAssignmentChecker", in_fn("  while ((y = next())) {}"), &[(2, 13)]),
        cpp("ExpressionAssignmentChecker", in_fn("  if (x == 1) {}"), &[]),
        cpp("FlowControlChecker", in_fn("  goto l;\n  l: ;"), &[(2, 3), (3, 3)]),
        cpp("FlowControlChecker", in_fn("  switch (x) { case 1: break; }"), &[]),
        cpp("FunctionChecker", "void Process_Data();", &[(1, 6)]),
        cpp("FunctionChecker", "void run() {\n  f();\n}\n", &[]),
        cpp("IdentifierChecker", "typedef bool BOOL;\nvoid run(BOOL array_Size) {\n  int arraySize = 0;\n}\n", &[(3, 7)]),
        cpp("IdentifierChecker", in_fn("  int alpha = 0;\n  int beta = 0;"), &[]),
        cpp("IfChecker", in_fn("  if (a) x = 1;"), &[(2, 3)]),
        cpp("IfChecker", in_fn("  if (a) { } else if (b) { }"), &[]),
        cpp("InitializedVariableChecker", in_fn("  int x;"), &[(2, 7)]),
        cpp("InitializedVariableChecker", "class A { int x; };", &[]),
        cpp("InterfaceChecker", "class Shape {\npublic:\n  double derive();\n};\n", &[(1, 7)]),
        cpp(
            "InterfaceChecker",
            "class IShape {\npublic:\n  virtual double area() = 0;\n};\nclass Square : public IShape {\npublic:\n  double area();\n};\n",
            &[],
        ),
        cpp("MemoryChecker", "int run() {\n  int* p = new int;\n  return 0;\n}\n", &[(2, 12)]),
        cpp("MemoryChecker", in_fn("  int* p = new int;\n  delete p;"), &[]),
        cpp("NamingConventionChecker", "class my_class {};", &[(1, 7)]),
        cpp("NamingConventionChecker", "class Library {};\nint bookCount = 0;", &[]),
        cpp("NamespaceChecker", "using namespace std;", &[(1, 1)]),
        cpp("NamespaceChecker", "namespace n { class A {}; }\nint main() {\n  return 0;\n}\n", &[]),
        cpp("SingleLetterVariableChecker", in_fn("  int x;"), &[(2, 7)]),
        cpp("SingleLetterVariableChecker", in_fn("  for (int i = 0; i < 3; i++) { }"), &[]),
        cpp("SwitchChecker", in_fn("  switch (x) { case 1: f(); break; default: {} }"), &[(2, 16)]),
        cpp("SwitchChecker", in_fn("  switch (x) { case 1: { f(); break; } default: { } }"), &[]),
        cpp("SymbolOrderChecker", in_fn("  int a = 0;\n  f();\n  int b = 0;"), &[(4, 7)]),
        cpp("SymbolOrderChecker", in_fn("  int a = 0;\n  int b = 0;\n  f();"), &[]),
        cpp("TypeDefChecker", "typedef int Count;", &[(1, 13)]),
        cpp("TypeDefChecker", "typedef int count_t;", &[]),
        sd("TriggerChecker", chart.clone(), &[(9, 10)]),
        sd("TriggerChecker", quiet_chart, &[]),
        sd("NoCallToTestDriverChecker", chart, &[(21, 15)]),
        sd("NoCallToTestDriverChecker", quiet_chart, &[]),
    ]
}

fn ac4_truth_tables() -> Outcome {
    let cases = truth_table();
    let mut covered = std::collections::BTreeSet::new();
    for case in &cases {
        let file = if case.lang == "seqdiag" { "t.sd" } else { "t.cpp" };
        let results = run_with(case.lang, &[case.rule], &[], file, &case.src);
        ensure(results.diagnostics.is_empty(), || format!("{}: {:?}", case.rule, results.diagnostics))?;
        let got: Vec<(u32, u32)> = results.findings().map(|f| (f.span.row, f.span.col)).collect();
        ensure(got == case.expected, || {
            format!("{}: expected {:?}, got {got:?}\n{}", case.rule, case.expected, case.src)
        })?;
        covered.insert((case.rule, case.expected.is_empty()));
    }
    ensure(cases.len() >= 40 && covered.len() == 40, || {
        format!("{} cases, {} rule/polarity pairs", cases.len(), covered.len())
    })
}

fn ac5_composition() -> Outcome {
    let corpus = [
        ("minicpp", "violations.cpp", "corpus/violations.cpp"),
        ("minicpp", "ExampleImpl.cpp", "ExampleImpl.cpp"),
        ("minicpp", "library.cpp", "clean/library.cpp"),
        ("seqdiag", "librarytest.sd", "librarytest.sd"),
        ("seqdiag", "chart.sd", "corpus/chart.sd"),
    ];
    let mut together = Vec::new();
    let mut separate = Vec::new();
    for (lang, file, name) in corpus {
        let src = read_fixture(name);
        let ids: Vec<String> = frontend(lang).unwrap().registry().descriptors().map(|d| d.id.clone()).collect();
        let id_refs: Vec<&str> = ids.iter().map(String::as_str).collect();
        together.extend(run_with(lang, &id_refs, &[], file, &src).findings().cloned());
        for id in &id_refs {
            separate.extend(run_with(lang, &[id], &[], file, &src).findings().cloned());
        }
    }
    together.sort();
    separate.sort();
    ensure(!together.is_empty(), || "corpus produced no findings".into())?;
    ensure(together == separate, || format!("{} combined vs {} separate findings", together.len(), separate.len()))
}

fn ac6_summary() -> Outcome {
    let s = SeveritySummary::from_counts(459, 1575, 3304);
    let got = [Criticality::High, Criticality::Medium, Criticality::Low].map(|c| format!("{}%", s.percent(c)));
    ensure(s.total == 5338 && got == ["8.6%", "29.5%", "61.9%"], || format!("{} total, {got:?}", s.total))
}

fn ac7_xml_round_trip() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x0a11);
    for i in 0..100 {
        let r = random_results(&mut rng, TIMESTAMP);
        let first = to_xml(&r);
        let back = from_xml(&first).map_err(|e| format!("case {i}: {e}"))?;
        ensure(back == r, || format!("case {i} differs after round trip"))?;
        ensure(to_xml(&back) == first && to_xml(&r) == first, || format!("case {i} serializes differently"))?;
    }
    let corpus = [fixture("corpus/violations.cpp"), fixture("ExampleImpl.cpp")];
    let lang = frontend("minicpp").unwrap();
    let pipeline = Pipeline::new(lang, lang.registry(), vf_core::default_configs(&lang.registry())).unwrap();
    let a = to_xml(&pipeline.run(&corpus, TIMESTAMP));
    let b = to_xml(&pipeline.run(&corpus, TIMESTAMP));
    ensure(a == b, || "two runs serialize differently".into())
}

fn ac8_disambiguation() -> Outcome {
    let prelude = "class T {};\ntypedef int I;\nnamespace N { class C {}; typedef int J; }\nint a = 0;\nint b = 0;\n";
    let cases: &[(&str, &str)] = &[
        ("T * x;", "VarDecl"),
        ("a * b;", "ExprStmt"),
        ("b * a;", "ExprStmt"),
        ("I i = 0;", "VarDecl"),
        ("I * p;", "VarDecl"),
        ("T t;", "VarDecl"),
        ("N::C * c;", "VarDecl"),
        ("N::J j = 1;", "VarDecl"),
        ("a = b;", "ExprStmt"),
        ("f(a);", "ExprStmt"),
        ("x * y;", "ExprStmt"),
        ("a < b;", "ExprStmt"),
    ];
    for (stmt, expected) in cases {
        let src = format!("{prelude}void run() {{\n  {stmt}\n}}\n");
        let ast = parse_source("d.cpp", &src).map_err(|d| format!("`{stmt}`: {d}"))?;
        let body = ast.children.last().and_then(|f| f.child_with_role("body")).ok_or("no body")?;
        let kind = body.children.first().map(|n| n.kind.as_str()).unwrap_or("none");
        ensure(kind == *expected, || format!("`{stmt}` parsed as {kind}, expected {expected}"))?;
    }
    let local = "void run() {\n  typedef int K;\n  K * k;\n}\n";
    let ast = parse_source("d.cpp", local).map_err(|d| d.to_string())?;
    let kind = &ast.children[0].child_with_role("body").unwrap().children[1].kind;
    ensure(kind == "VarDecl", || format!("local typedef use parsed as {kind}"))
}

fn ac9_ci_contract() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let bad = dir.path().join("broken.cpp");
    std::fs::write(&bad, "int main( {\n").unwrap();
    let runs = [(fixture("clean"), "minicpp", 0), (fixture("librarytest.sd"), "seqdiag", 1), (bad, "minicpp", 2)];
    for (input, lang, expected) in runs {
        let out = Command::new(env!("CARGO_BIN_EXE_vf"))
            .current_dir(dir.path())
            .args(["--lang", lang, "--timestamp", TIMESTAMP])
            .arg(&input)
            .output()
            .map_err(|e| e.to_string())?;
        let code = out.status.code();
        ensure(code == Some(expected), || format!("{}: exit {code:?}, expected {expected}", input.display()))?;
    }
    Ok(())
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("AC1 ExampleImpl.cpp yields the four expected findings", ac1_example_impl),
        ("AC2 library sequence chart yields findings at rows 9 and 21", ac2_library_chart),
        ("AC3 one visit per node over 50 random trees", ac3_single_traversal),
        ("AC4 per-rule truth tables (40 fixtures)", ac4_truth_tables),
        ("AC5 all-rules run equals union of single-rule runs", ac5_composition),
        ("AC6 severity summary 8.6% / 29.5% / 61.9%", ac6_summary),
        ("AC7 XML round trip over 100 random results", ac7_xml_round_trip),
        ("AC8 declaration/expression disambiguation", ac8_disambiguation),
        ("AC9 CI exit codes 0 / 1 / 2", ac9_ci_contract),
    ];
    std::panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (name, check) in criteria {
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default())
        });
        match outcome {
            Ok(()) => println!("[PASS] {name}"),
            Err(reason) => {
                failed += 1;
                println!("[FAIL] {name}: {reason}");
            }
        }
    }
    println!("{} of 9 criteria passed", 9 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
