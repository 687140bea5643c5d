use crate::ast::AstNode;
use crate::minicpp::LANG;
use crate::rule::{Criticality, Priority, Rule, RuleContext, RuleDescriptor, RuleEntry};
use crate::symtab::ScopeKind;

const LOGICAL: &[&str] = &["&&", "||"];

/// Unparenthesized mixing of `&&` and `||`.
#[derive(Debug, Default)]
pub struct ExpressionChecker;

pub fn expression_entry() -> RuleEntry {
    RuleEntry {
        descriptor: RuleDescriptor::new(
            "ExpressionChecker",
            "Expression checker",
            Priority::Should,
            Criticality::Medium,
        )
        .description("Checks for logical operators mixed without parentheses.")
        .subscribe(LANG, &["BinaryExpr"]),
        factory: || Box::new(ExpressionChecker),
    }
}

impl Rule for ExpressionChecker {
    fn on_node(&mut self, node: &AstNode, _: &[&AstNode], ctx: &mut RuleContext<'_>) {
        let op = node.attr_or_empty("op");
        if !LOGICAL.contains(&op) {
            return;
        }
        let mixed = node.children.iter().any(|c| {
            let child_op = c.attr_or_empty("op");
            c.is("BinaryExpr") && LOGICAL.contains(&child_op) && child_op != op
        });
        if mixed {
            ctx.report_at(node, format!("Operands of \"{op}\" mix \"&&\" and \"||\" without parentheses."));
        }
    }
}

/// Assignments inside the condition of a selection or iteration statement.
#[derive(Debug, Default)]
pub struct ExpressionAssignmentChecker;

pub fn expression_assignment_entry() -> RuleEntry {
    RuleEntry {
        descriptor: RuleDescriptor::new(
            "ExpressionAssignmentChecker",
            "Assignment in condition checker",
            Priority::Shall,
            Criticality::High,
        )
        .description("Validates that selection statements contain no assignments.")
        .subscribe(LANG, &["IfStmt", "WhileStmt", "DoStmt", "ForStmt", "SwitchStmt"]),
        factory: || Box::new(ExpressionAssignmentChecker),
    }
}

fn statement_keyword(kind: &str) -> &str {
    match kind {
        "IfStmt" => "if",
        "WhileStmt" => "while",
        "DoStmt" => "do",
        "ForStmt" => "for",
        "SwitchStmt" => "switch",
        _ => kind,
    }
}

impl Rule for ExpressionAssignmentChecker {
    fn on_node(&mut self, node: &AstNode, _: &[&AstNode], ctx: &mut RuleContext<'_>) {
        let Some(cond) = node.child_with_role("cond") else { return };
        for assign in cond.descendants().filter(|n| n.is("AssignExpr")) {
            ctx.report_at(
                assign,
                format!(
                    "Assignment \"{}\" in the {} condition.",
                    assign.attr_or_empty("op"),
                    statement_keyword(&node.kind)
                ),
            );
        }
    }
}

/// `goto`, labels, and `break` out of loops.
#[derive(Debug, Default)]
pub struct FlowControlChecker;

pub fn flow_control_entry() -> RuleEntry {
    RuleEntry {
        descriptor: RuleDescriptor::new(
            "FlowControlChecker",
            "Flow control checker",
            Priority::Shall,
            Criticality::Medium,
        )
        .description("Checks for flow control statements (gotos, breaks, labels).")
        .subscribe(LANG, &["GotoStmt", "LabelStmt", "BreakStmt"]),
        factory: || Box::new(FlowControlChecker),
    }
}

impl Rule for FlowControlChecker {
    fn on_node(&mut self, node: &AstNode, ancestors: &[&AstNode], ctx: &mut RuleContext<'_>) {
        match node.kind.as_str() {
            "GotoStmt" => ctx.report_at(node, format!("Use of goto \"{}\".", node.attr_or_empty("label"))),
            "LabelStmt" => ctx.report_at(node, format!("Use of label \"{}\".", node.attr_or_empty("name"))),
            "BreakStmt" => {
                let breakable = ancestors
                    .iter()
                    .rev()
                    .find(|a| matches!(a.kind.as_str(), "WhileStmt" | "DoStmt" | "ForStmt" | "SwitchStmt"));
                if breakable.is_some_and(|a| !a.is("SwitchStmt")) {
                    ctx.report_at(node, "Use of break inside a loop.");
                }
            }
            _ => {}
        }
    }
}

/// Branches of an `if` must be braced; `else if` chains are exempt.
#[derive(Debug, Default)]
pub struct IfChecker;

pub fn if_entry() -> RuleEntry {
    RuleEntry {
        descriptor: RuleDescriptor::new("IfChecker", "If-statement braces checker", Priority::Should, Criticality::Low)
            .description("Checks for braces in if-statements.")
            .subscribe(LANG, &["IfStmt"]),
        factory: || Box::new(IfChecker),
    }
}

impl Rule for IfChecker {
    fn on_node(&mut self, node: &AstNode, _: &[&AstNode], ctx: &mut RuleContext<'_>) {
        if let Some(then) = node.child_with_role("then") {
            if !then.is("CompoundStmt") {
                ctx.report_at(node, "Then-branch of if-statement is not enclosed in braces.");
            }
        }
        if let Some(other) = node.child_with_role("else") {
            if !other.is("CompoundStmt") && !other.is("IfStmt") {
                ctx.report_at(other, "Else-branch of if-statement is not enclosed in braces.");
            }
        }
    }
}

/// Local variables must be initialized where they are declared.
#[derive(Debug, Default)]
pub struct InitializedVariableChecker;

pub fn initialized_variable_entry() -> RuleEntry {
    RuleEntry {
        descriptor: RuleDescriptor::new(
            "InitializedVariableChecker",
            "Variable initialization checker",
            Priority::Shall,
            Criticality::Medium,
        )
        .description("Checks the initialization of local variables.")
        .subscribe(LANG, &["VarDecl"]),
        factory: || Box::new(InitializedVariableChecker),
    }
}

impl Rule for InitializedVariableChecker {
    fn on_node(&mut self, node: &AstNode, _: &[&AstNode], ctx: &mut RuleContext<'_>) {
        let table = ctx.table();
        let scope = table.scope(table.scope_of(node.node_id));
        let local = matches!(scope.kind, ScopeKind::Block | ScopeKind::Function);
        if local && !node.flag("has_init") {
            ctx.report_at(node, format!("Local variable \"{}\" is not initialized.", node.attr_or_empty("name")));
        }
    }
}

/// Case bodies braced, no fallthrough, a default clause present.
#[derive(Debug, Default)]
pub struct SwitchChecker;

pub fn switch_entry() -> RuleEntry {
    RuleEntry {
        descriptor: RuleDescriptor::new(
            "SwitchChecker",
            "Switch-statement checker",
            Priority::Shall,
            Criticality::Medium,
        )
        .description("Checks for braces in switch-case statements.")
        .subscribe(LANG, &["SwitchStmt"]),
        factory: || Box::new(SwitchChecker),
    }
}

fn is_empty_statement(s: &AstNode) -> bool {
    (s.is("CompoundStmt") && s.children.iter().all(is_empty_statement)) || (s.is("ExprStmt") && s.flag("empty"))
}

fn ends_in_jump(s: &AstNode) -> bool {
    match s.kind.as_str() {
        "BreakStmt" | "ReturnStmt" => true,
        "CompoundStmt" => s.children.last().is_some_and(ends_in_jump),
        _ => false,
    }
}

impl Rule for SwitchChecker {
    fn on_node(&mut self, node: &AstNode, _: &[&AstNode], ctx: &mut RuleContext<'_>) {
        let clauses: Vec<&AstNode> =
            node.children.iter().filter(|c| c.is("CaseClause") || c.is("DefaultClause")).collect();
        if !clauses.iter().any(|c| c.is("DefaultClause")) {
            ctx.report_at(node, "Switch statement has no default clause.");
        }
        for (i, clause) in clauses.iter().enumerate() {
            let body: Vec<&AstNode> = clause.children_with_role("body").collect();
            if body.iter().all(|s| is_empty_statement(s)) {
                continue;
            }
            let label = if clause.is("CaseClause") { "Case" } else { "Default" };
            if body.len() != 1 || !body[0].is("CompoundStmt") {
                ctx.report_at(clause, format!("{label} clause is not enclosed in braces."));
            }
            let last = i + 1 == clauses.len();
            if !last && !body.last().is_some_and(|s| ends_in_jump(s)) {
                ctx.report_at(clause, format!("{label} clause falls through."));
            }
        }
    }
}

/// Declarations before the first statement of a block.
#[derive(Debug, Default)]
pub struct SymbolOrderChecker;

pub fn symbol_order_entry() -> RuleEntry {
    RuleEntry {
        descriptor: RuleDescriptor::new(
            "SymbolOrderChecker",
            "Symbol order checker",
            Priority::Should,
            Criticality::Low,
        )
        .description("Validates compact symbol declaration at the beginning of a block.")
        .subscribe(LANG, &["CompoundStmt"]),
        factory: || Box::new(SymbolOrderChecker),
    }
}

impl Rule for SymbolOrderChecker {
    fn on_node(&mut self, node: &AstNode, _: &[&AstNode], ctx: &mut RuleContext<'_>) {
        let mut seen_statement = false;
        for child in &node.children {
            match child.kind.as_str() {
                "VarDecl" if seen_statement => ctx.report_at(
                    child,
                    format!("Variable \"{}\" is declared after the first statement.", child.attr_or_empty("name")),
                ),
                "VarDecl" | "TypedefDecl" | "EnumDef" | "ClassDef" => {}
                _ => seen_statement = true,
            }
        }
    }
}
