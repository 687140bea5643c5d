use std::collections::{BTreeMap, BTreeSet};

use crate::ast::AstNode;
use crate::minicpp::LANG;
use crate::rule::{Criticality, Priority, Rule, RuleContext, RuleDescriptor, RuleEntry};
use crate::rules::unparen;

/// Syntactic, intraprocedural `new`/`delete` pairing.
#[derive(Debug, Default)]
pub struct MemoryChecker;

pub fn entry() -> RuleEntry {
    RuleEntry {
        descriptor: RuleDescriptor::new("MemoryChecker", "Memory checker", Priority::Shall, Criticality::High)
            .description("Validates that allocated memory is freed correctly.")
            .subscribe(LANG, &["FunctionDef", "Constructor", "Destructor"]),
        factory: || Box::new(MemoryChecker),
    }
}

struct Allocation<'a> {
    site: &'a AstNode,
    array: bool,
}

fn ident_name(node: &AstNode) -> Option<&str> {
    let node = unparen(node);
    node.is("IdentExpr").then(|| node.attr_or_empty("name"))
}

fn new_expr(node: &AstNode) -> Option<&AstNode> {
    let node = unparen(node);
    node.is("NewExpr").then_some(node)
}

impl Rule for MemoryChecker {
    fn on_node(&mut self, node: &AstNode, _: &[&AstNode], ctx: &mut RuleContext<'_>) {
        let Some(body) = node.child_with_role("body") else { return };

        let locals: BTreeSet<&str> =
            body.descendants().filter(|n| n.is("VarDecl")).map(|n| n.attr_or_empty("name")).collect();
        let mut allocations: BTreeMap<&str, Vec<Allocation<'_>>> = BTreeMap::new();
        let mut deletes: BTreeMap<&str, Vec<(&AstNode, bool)>> = BTreeMap::new();
        let mut escaped: BTreeSet<&str> = BTreeSet::new();

        for n in body.descendants() {
            match n.kind.as_str() {
                "VarDecl" => {
                    if let Some(site) = n.child_with_role("init").and_then(new_expr) {
                        allocations
                            .entry(n.attr_or_empty("name"))
                            .or_default()
                            .push(Allocation { site, array: site.flag("array") });
                    }
                }
                "AssignExpr" if n.attr_or_empty("op") == "=" => {
                    let (Some(lhs), Some(rhs)) = (n.child_with_role("lhs"), n.child_with_role("rhs")) else {
                        continue;
                    };
                    let target = ident_name(lhs).filter(|t| locals.contains(t));
                    match (target, new_expr(rhs)) {
                        (Some(t), Some(site)) => {
                            allocations.entry(t).or_default().push(Allocation { site, array: site.flag("array") })
                        }
                        (None, _) => {
                            if let Some(src) = ident_name(rhs) {
                                escaped.insert(src);
                            }
                        }
                        _ => {}
                    }
                }
                "ReturnStmt" => {
                    if let Some(name) = n.child_with_role("value").and_then(ident_name) {
                        escaped.insert(name);
                    }
                }
                "DeleteExpr" => {
                    if let Some(name) = n.child_with_role("operand").and_then(ident_name) {
                        deletes.entry(name).or_default().push((n, n.flag("array")));
                    }
                }
                _ => {}
            }
        }

        for (name, allocs) in &allocations {
            let frees = deletes.get(name).map(Vec::as_slice).unwrap_or(&[]);
            if frees.is_empty() {
                if !escaped.contains(name) {
                    ctx.report_at(allocs[0].site, format!("Memory allocated for \"{name}\" is never freed."));
                }
                continue;
            }
            for &(site, array) in frees {
                if allocs.iter().any(|a| a.array != array) {
                    let (allocated, freed) = if array { ("new", "delete[]") } else { ("new[]", "delete") };
                    ctx.report_at(site, format!("\"{name}\" is allocated with {allocated} but freed with {freed}."));
                }
            }
        }
    }
}
