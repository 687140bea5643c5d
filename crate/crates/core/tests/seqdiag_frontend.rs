mod common;

use common::read_fixture;
use vf_core::pipeline::{frontend, AnalysisRoot};
use vf_core::symtab::{Binding, SymbolTable};
use vf_core::DiagnosticKind;

fn analyze(src: &str) -> AnalysisRoot {
    AnalysisRoot::analyze(frontend("seqdiag").unwrap(), "c.sd", src)
}

#[test]
fn library_chart_structure() {
    let root = analyze(&read_fixture("librarytest.sd"));
    assert!(root.diagnostics.is_empty(), "{:?}", root.diagnostics);
    let ast = root.ast.as_ref().unwrap();
    assert_eq!(ast.kind, "SequenceDiagram");
    assert_eq!(ast.attr("name"), Some("librarytest"));
    let objects = ast.children.iter().filter(|c| c.is("ObjectDecl")).count();
    assert_eq!(objects, 6);

    let messages: Vec<_> = ast.descendants().filter(|n| n.is("Message")).collect();
    let arrow_lines = read_fixture("librarytest.sd").lines().filter(|l| l.contains("->") || l.contains("<-")).count();
    assert_eq!(messages.len(), arrow_lines);
    assert_eq!(messages.iter().filter(|m| m.attr("direction") == Some("CALL")).count(), 6);
    assert_eq!(messages.iter().filter(|m| m.attr("direction") == Some("RETURN")).count(), 3);

    let nested = ast.descendants().filter(|n| n.is("InteractionBlock")).nth(1).unwrap();
    assert_eq!((nested.span.row, nested.span.end_row), (13, 18));

    let ret = messages.iter().find(|m| m.span.row == 16).unwrap();
    assert_eq!(ret.attr("source"), Some("librarian"));
    assert_eq!(ret.attr("target"), Some("library"));
    assert_eq!(ret.attr("payload"), Some("return book"));
    let triggered = messages.iter().find(|m| m.span.row == 10).unwrap();
    assert_eq!(triggered.attr("stereotype"), Some("trigger"));
}

#[test]
fn library_chart_objects_are_bound() {
    let root = analyze(&read_fixture("librarytest.sd"));
    let names: Vec<&str> = root
        .symbols
        .scope(SymbolTable::GLOBAL)
        .declarations
        .iter()
        .map(|b| match b {
            Binding::Variable(v) => root.symbols.variable(*v).name.as_str(),
            other => panic!("unexpected binding {other:?}"),
        })
        .collect();
    assert_eq!(names, vec!["test", "library", "librarian", "client", "request", "book"]);
    let test = root.symbols.variables().next().unwrap().1;
    assert_eq!(test.declared_type, "LibraryTest");
}

#[test]
fn empty_chart() {
    let root = analyze("sequencediagram s { }\n");
    assert!(root.diagnostics.is_empty());
    assert!(root.ast.unwrap().children.is_empty());
}

#[test]
fn undeclared_object_is_reported_at_its_token() {
    let root = analyze("sequencediagram s {\n  object a:A;\n  {\n    a -> ghost : ping();\n  }\n}\n");
    assert_eq!(root.diagnostics.len(), 1);
    let d = &root.diagnostics[0];
    assert_eq!(d.kind, DiagnosticKind::UndeclaredObject);
    assert_eq!((d.span.row, d.span.col), (4, 10));
    assert!(d.message.contains("ghost"));
}

#[test]
fn syntax_errors_are_fatal() {
    for (src, row, col) in [
        ("sequencediagram s {\n  object a:A\n}\n", 3, 1),
        ("sequencediagram s {\n  object a:A;\n  { a => a : f(); }\n}\n", 3, 7),
        ("sequencediagram {\n}\n", 1, 17),
        ("sequencediagram s {\n  object a:A;\n  { a -> a : <<trigger f(); }\n}\n", 3, 24),
    ] {
        let root = analyze(src);
        assert!(root.ast.is_none(), "{src}");
        let d = &root.diagnostics[0];
        assert!(d.is_fatal());
        assert_eq!((d.span.row, d.span.col), (row, col), "{src}: {d}");
    }
}

#[test]
fn message_arguments_and_bare_return() {
    let src = "sequencediagram s {\n  object a:A;\n  object b:B;\n  {\n    a -> b : <<trigger>> put(x, y);\n    a <- b : return;\n  }\n}\n";
    let root = analyze(src);
    let ast = root.ast.unwrap();
    let msgs: Vec<_> = ast.descendants().filter(|n| n.is("Message")).collect();
    assert_eq!(msgs[0].attr("payload"), Some("put(x, y)"));
    assert_eq!(msgs[1].attr("payload"), Some("return"));
    assert_eq!(msgs[1].attr("direction"), Some("RETURN"));
}
