use std::collections::BTreeMap;

use regex::Regex;

use crate::ast::AstNode;
use crate::minicpp::LANG;
use crate::rule::{Criticality, Priority, Rule, RuleContext, RuleDescriptor, RuleEntry};
use crate::rules::{is_lower_camel, is_upper_camel};
use crate::symtab::{ScopeKind, SymbolTable, VarId, VariableBinding};

/// Enums are named and initialize either all or none of their enumerators.
#[derive(Debug, Default)]
pub struct EnumChecker;

pub fn enum_entry() -> RuleEntry {
    RuleEntry {
        descriptor: RuleDescriptor::new("EnumChecker", "Enum declaration checker", Priority::Should, Criticality::Low)
            .description("Validates ISO-like enum declarations.")
            .subscribe(LANG, &["EnumDef"]),
        factory: || Box::new(EnumChecker),
    }
}

impl Rule for EnumChecker {
    fn on_node(&mut self, node: &AstNode, _: &[&AstNode], ctx: &mut RuleContext<'_>) {
        let name = node.attr_or_empty("name");
        if name.is_empty() {
            ctx.report_at(node, "Enumeration has no name.");
        }
        let enumerators: Vec<_> = node.children.iter().filter(|c| c.is("Enumerator")).collect();
        let initialized = enumerators.iter().filter(|e| e.flag("has_init")).count();
        if initialized > 0 && initialized < enumerators.len() {
            let label = if name.is_empty() { "<anonymous>" } else { name };
            ctx.report_at(node, format!("Enumeration {label} mixes initialized and uninitialized enumerators."));
        }
    }
}

/// Body length, parameter count and function naming.
#[derive(Debug, Default)]
pub struct FunctionChecker;

pub fn function_entry() -> RuleEntry {
    RuleEntry {
        descriptor: RuleDescriptor::new("FunctionChecker", "Function checker", Priority::Should, Criticality::Low)
            .description("Validates function length, parameter count and naming.")
            .subscribe(LANG, &["FunctionDef", "Constructor", "Destructor"])
            .property("maxLines", "100")
            .property("maxParams", "6"),
        factory: || Box::new(FunctionChecker),
    }
}

impl Rule for FunctionChecker {
    fn on_node(&mut self, node: &AstNode, _: &[&AstNode], ctx: &mut RuleContext<'_>) {
        let name = node.attr_or_empty("name");
        let max_lines = ctx.usize_property("maxLines", 100);
        let max_params = ctx.usize_property("maxParams", 6);
        if let Some(body) = node.child_with_role("body") {
            let lines = body.span.line_count() as usize;
            if lines > max_lines {
                ctx.report_at(node, format!("Function \"{name}\" has {lines} lines (maximum {max_lines})."));
            }
        }
        let params = node.children.iter().filter(|c| c.is("ParamDecl")).count();
        if params > max_params {
            ctx.report_at(node, format!("Function \"{name}\" has {params} parameters (maximum {max_params})."));
        }
        if node.is("FunctionDef") && node.attr("qualifier").is_none() && !is_lower_camel(name) {
            ctx.report_at(node, format!("Function name \"{name}\" is not lowerCamelCase."));
        }
    }
}

/// Names that differ only in case or underscores must not share a scope.
#[derive(Debug, Default)]
pub struct IdentifierChecker;

pub fn identifier_entry() -> RuleEntry {
    RuleEntry {
        descriptor: RuleDescriptor::new(
            "IdentifierChecker",
            "Naming conventions checker",
            Priority::Should,
            Criticality::Low,
        )
        .description("Checks whether identifier naming is unique.")
        .reference("MISRA AV Rule 48")
        .subscribe(LANG, &["TranslationUnit"]),
        factory: || Box::new(IdentifierChecker),
    }
}

fn normalized(name: &str) -> String {
    name.chars().filter(|c| *c != '_').flat_map(char::to_lowercase).collect()
}

fn subject_label(table: &SymbolTable, v: &VariableBinding) -> &'static str {
    if v.is_parameter {
        "Parameter"
    } else if v.is_member {
        "Member Variable"
    } else if table.scope(v.scope).kind == ScopeKind::Global || table.scope(v.scope).kind == ScopeKind::Namespace {
        "Global Variable"
    } else {
        "Local Variable"
    }
}

impl Rule for IdentifierChecker {
    fn on_node(&mut self, _: &AstNode, _: &[&AstNode], _: &mut RuleContext<'_>) {}

    fn on_end_of_unit(&mut self, ctx: &mut RuleContext<'_>) {
        let table = ctx.table();
        let mut groups: BTreeMap<String, Vec<VarId>> = BTreeMap::new();
        for (id, v) in table.variables() {
            if !v.name.is_empty() {
                groups.entry(normalized(&v.name)).or_default().push(id);
            }
        }
        for ids in groups.values() {
            for (i, &a) in ids.iter().enumerate() {
                for &b in &ids[i + 1..] {
                    let (va, vb) = (table.variable(a), table.variable(b));
                    let a_outer = table.is_ancestor_or_self(va.scope, vb.scope);
                    let b_outer = table.is_ancestor_or_self(vb.scope, va.scope);
                    let (inner, other) = match (a_outer, b_outer) {
                        (true, true) => {
                            let key = |v: &VariableBinding| (v.decl_span.row, v.decl_span.col);
                            if key(va) <= key(vb) {
                                (vb, va)
                            } else {
                                (va, vb)
                            }
                        }
                        (true, false) => (vb, va),
                        (false, true) => (va, vb),
                        (false, false) => continue,
                    };
                    let instance = if other.is_member { "instance variable " } else { "" };
                    ctx.report(
                        &inner.decl_span,
                        format!(
                            "{} \"{}\" is named similar to {instance}\"{} : {}\".",
                            subject_label(table, inner),
                            inner.name,
                            other.name,
                            other.declared_type
                        ),
                    );
                }
            }
        }
    }
}

/// UpperCamelCase classes, lowerCamelCase variables and functions, no
/// Hungarian prefixes.
#[derive(Debug, Default)]
pub struct NamingConventionChecker;

pub fn naming_convention_entry() -> RuleEntry {
    RuleEntry {
        descriptor: RuleDescriptor::new(
            "NamingConventionChecker",
            "Naming style checker",
            Priority::Should,
            Criticality::Low,
        )
        .description("Checks naming conventions such as camel case and the absence of Hungarian prefixes.")
        .subscribe(LANG, &["ClassDef", "VarDecl", "FunctionDef"])
        .property("hungarianPrefixes", "sz,psz,lp,dw,p_,i_,b_"),
        factory: || Box::new(NamingConventionChecker),
    }
}

fn hungarian_prefix<'p>(name: &str, prefixes: &'p str) -> Option<&'p str> {
    prefixes.split(',').map(str::trim).filter(|p| !p.is_empty()).find(|p| {
        name.strip_prefix(p).is_some_and(|rest| {
            p.ends_with('_') || rest.starts_with('_') || rest.chars().next().is_some_and(|c| c.is_ascii_uppercase())
        })
    })
}

impl Rule for NamingConventionChecker {
    fn on_node(&mut self, node: &AstNode, _: &[&AstNode], ctx: &mut RuleContext<'_>) {
        let name = node.attr_or_empty("name");
        match node.kind.as_str() {
            "ClassDef" if !node.flag("forward") && !is_upper_camel(name) => {
                ctx.report_at(node, format!("Class name \"{name}\" is not UpperCamelCase."));
            }
            "VarDecl" => {
                if !is_lower_camel(name) {
                    ctx.report_at(node, format!("Variable name \"{name}\" is not lowerCamelCase."));
                }
                let prefixes = ctx.property("hungarianPrefixes").unwrap_or("");
                if let Some(p) = hungarian_prefix(name, prefixes) {
                    ctx.report_at(node, format!("Variable name \"{name}\" uses the Hungarian prefix \"{p}\"."));
                }
            }
            "FunctionDef" if node.attr("qualifier").is_none() && !is_lower_camel(name) => {
                ctx.report_at(node, format!("Function name \"{name}\" is not lowerCamelCase."));
            }
            _ => {}
        }
    }
}

/// No global `using namespace`, no classes or free functions outside a
/// namespace (except `main`).
#[derive(Debug, Default)]
pub struct NamespaceChecker;

pub fn namespace_entry() -> RuleEntry {
    RuleEntry {
        descriptor: RuleDescriptor::new("NamespaceChecker", "Namespace checker", Priority::Should, Criticality::Low)
            .description("Ensures correct namespace usage.")
            .subscribe(LANG, &["TranslationUnit", "UsingDirective"]),
        factory: || Box::new(NamespaceChecker),
    }
}

impl Rule for NamespaceChecker {
    fn on_node(&mut self, node: &AstNode, _: &[&AstNode], ctx: &mut RuleContext<'_>) {
        if node.is("UsingDirective") {
            if node.flag("namespace") && ctx.table().scope_of(node.node_id) == SymbolTable::GLOBAL {
                ctx.report(
                    &node.span,
                    format!("Directive \"using namespace {}\" at global scope.", node.attr_or_empty("name")),
                );
            }
            return;
        }
        for child in &node.children {
            let name = child.attr_or_empty("name");
            match child.kind.as_str() {
                "ClassDef" if !child.flag("forward") => {
                    ctx.report_at(child, format!("Class \"{name}\" is declared in the global namespace."));
                }
                "FunctionDef" if child.attr("qualifier").is_none() && name != "main" => {
                    ctx.report_at(child, format!("Function \"{name}\" is declared in the global namespace."));
                }
                _ => {}
            }
        }
    }
}

/// Variable names of a single character.
#[derive(Debug, Default)]
pub struct SingleLetterVariableChecker;

pub fn single_letter_entry() -> RuleEntry {
    RuleEntry {
        descriptor: RuleDescriptor::new(
            "SingleLetterVariableChecker",
            "Single-letter variable checker",
            Priority::Should,
            Criticality::Low,
        )
        .description("Searches for variable names containing only one letter.")
        .subscribe(LANG, &["VarDecl"])
        .property("allowLoopIndices", "true"),
        factory: || Box::new(SingleLetterVariableChecker),
    }
}

impl Rule for SingleLetterVariableChecker {
    fn on_node(&mut self, node: &AstNode, _: &[&AstNode], ctx: &mut RuleContext<'_>) {
        let name = node.attr_or_empty("name");
        if name.chars().count() != 1 {
            return;
        }
        let table = ctx.table();
        let loop_index = table.variable_of_node(node.node_id).is_some_and(|v| table.variable(v).is_loop_index);
        if loop_index && ctx.bool_property("allowLoopIndices", true) {
            return;
        }
        ctx.report_at(node, format!("Variable \"{name}\" has a single-letter name."));
    }
}

/// Typedef names must match a configurable pattern.
#[derive(Debug, Default)]
pub struct TypeDefChecker {
    pattern: Option<Option<Regex>>,
}

pub fn typedef_entry() -> RuleEntry {
    RuleEntry {
        descriptor: RuleDescriptor::new("TypeDefChecker", "Typedef naming checker", Priority::Should, Criticality::Low)
            .description("Validates the naming of typedefs.")
            .subscribe(LANG, &["TypedefDecl"])
            .property("pattern", "_t$"),
        factory: || Box::<TypeDefChecker>::default(),
    }
}

impl Rule for TypeDefChecker {
    fn on_node(&mut self, node: &AstNode, _: &[&AstNode], ctx: &mut RuleContext<'_>) {
        let source = ctx.property("pattern").unwrap_or("_t$");
        // An invalid pattern disables the rule for the unit.
        let Some(pattern) = self.pattern.get_or_insert_with(|| Regex::new(source).ok()) else { return };
        let name = node.attr_or_empty("name");
        if !pattern.is_match(name) {
            ctx.report_at(node, format!("Typedef \"{name}\" does not match the pattern \"{source}\"."));
        }
    }
}
