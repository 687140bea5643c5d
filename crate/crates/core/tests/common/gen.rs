//! Seeded generators for randomized suites.

use rand::seq::SliceRandom;
use rand::Rng;

use vf_core::rule::{Criticality, Priority};
use vf_core::{AstNode, Diagnostic, DiagnosticKind, Finding, RuleInfo, RuleReport, SourceSpan, ValidationResults};

pub const MINICPP_KINDS: &[&str] = &[
    "NamespaceDef",
    "UsingDirective",
    "ClassDef",
    "BaseSpec",
    "AccessSection",
    "EnumDef",
    "Enumerator",
    "TypedefDecl",
    "FunctionDef",
    "Constructor",
    "Destructor",
    "ParamDecl",
    "VarDecl",
    "CompoundStmt",
    "IfStmt",
    "SwitchStmt",
    "CaseClause",
    "DefaultClause",
    "ForStmt",
    "WhileStmt",
    "DoStmt",
    "ReturnStmt",
    "BreakStmt",
    "ContinueStmt",
    "GotoStmt",
    "LabelStmt",
    "ExprStmt",
    "AssignExpr",
    "BinaryExpr",
    "UnaryExpr",
    "CallExpr",
    "MemberExpr",
    "NewExpr",
    "DeleteExpr",
    "ParenExpr",
    "IdentExpr",
    "Literal",
];

const NAMES: &[&str] = &["a", "x", "Count", "my_class", "szName", "tempint", "temp_int", "main", "f"];
const OPS: &[&str] = &["&&", "||", "=", "+", "*", "==", "[]"];
const ROLES: &[&str] = &["cond", "body", "then", "else", "init", "value", "lhs", "rhs", "step", "operand"];

/// A random minicpp-tagged tree of exactly `size` nodes whose shapes need
/// not be valid programs. Every node's span is a distinct point.
pub fn random_ast(rng: &mut impl Rng, size: usize) -> AstNode {
    assert!(size >= 1);
    let mut parents = vec![usize::MAX];
    for i in 1..size {
        // Attaching to a recent node keeps depth modest while allowing chains.
        let lo = i.saturating_sub(64);
        parents.push(rng.gen_range(lo..i));
    }
    let mut nodes: Vec<Option<AstNode>> = (0..size)
        .map(|i| {
            let span = SourceSpan::point("r.cpp", i as u32 + 1, 1);
            if i == 0 {
                return Some(AstNode::new("minicpp", "TranslationUnit", span));
            }
            let kind = MINICPP_KINDS.choose(rng).unwrap();
            let mut node = AstNode::new("minicpp", kind, span);
            if rng.gen_bool(0.7) {
                node.set_attr("name", *NAMES.choose(rng).unwrap());
            }
            if rng.gen_bool(0.4) {
                node.set_attr("op", *OPS.choose(rng).unwrap());
            }
            if rng.gen_bool(0.5) {
                node.set_attr("role", *ROLES.choose(rng).unwrap());
            }
            for flag in ["forward", "virtual", "has_init", "has_body", "array", "pure"] {
                if rng.gen_bool(0.2) {
                    node.set_attr(flag, "true");
                }
            }
            Some(node)
        })
        .collect();
    for i in (1..size).rev() {
        let child = nodes[i].take().unwrap();
        nodes[parents[i]].as_mut().unwrap().children.insert(0, child);
    }
    let mut root = nodes[0].take().unwrap();
    root.assign_ids();
    root
}

fn random_text(rng: &mut impl Rng, max: usize) -> String {
    const ALPHABET: &[char] = &[
        'a', 'b', 'Z', '0', '9', ' ', '_', '.', ':', '&', '<', '>', '"', '\'', '\n', '\t', '\r', '=', 'é', 'ß', '→',
        '日', '/', '\\', '#', ';',
    ];
    let len = rng.gen_range(0..=max);
    (0..len).map(|_| *ALPHABET.choose(rng).unwrap()).collect()
}

fn random_ident(rng: &mut impl Rng) -> String {
    format!("R{}", rng.gen_range(0..10_000u32))
}

/// A well-formed random result set: reports ordered by id, findings sorted,
/// every finding's file listed.
pub fn random_results(rng: &mut impl Rng, created: &str) -> ValidationResults {
    let files: Vec<String> = (0..rng.gen_range(0..5)).map(|i| format!("src/{i}_{}.cpp", random_text(rng, 6))).collect();
    let mut reports = Vec::new();
    let mut ids: Vec<String> = (0..rng.gen_range(0..6)).map(|_| random_ident(rng)).collect();
    ids.sort();
    ids.dedup();
    for id in ids {
        let rule = RuleInfo {
            id: id.clone(),
            title: random_text(rng, 20),
            description: random_text(rng, 40),
            reference: random_text(rng, 10),
            priority: *[Priority::Should, Priority::Shall, Priority::Will].choose(rng).unwrap(),
            criticality: *Criticality::ALL.choose(rng).unwrap(),
        };
        let properties = (0..rng.gen_range(0..3)).map(|_| (random_ident(rng), random_text(rng, 8))).collect();
        let mut findings = Vec::new();
        if !files.is_empty() {
            for _ in 0..rng.gen_range(0..8) {
                findings.push(Finding {
                    rule_id: id.clone(),
                    span: SourceSpan::point(
                        files.choose(rng).unwrap().clone(),
                        rng.gen_range(1..500),
                        rng.gen_range(1..120),
                    ),
                    message: format!("m{}", random_text(rng, 30)),
                });
            }
        }
        let mut report = RuleReport { rule, properties, findings };
        report.sort();
        reports.push(report);
    }
    let mut diagnostics = Vec::new();
    if !files.is_empty() {
        for _ in 0..rng.gen_range(0..3) {
            let kind =
                *[DiagnosticKind::Lex, DiagnosticKind::Parse, DiagnosticKind::Io, DiagnosticKind::UndeclaredObject]
                    .choose(rng)
                    .unwrap();
            let span =
                SourceSpan::point(files.choose(rng).unwrap().clone(), rng.gen_range(1..50), rng.gen_range(1..50));
            diagnostics.push(Diagnostic::new(kind, span, random_text(rng, 20)));
        }
    }
    ValidationResults { created: created.to_string(), reports, files, diagnostics }
}
