use crate::ast::AstNode;
use crate::minicpp::LANG;
use crate::rule::{Criticality, Priority, Rule, RuleContext, RuleDescriptor, RuleEntry};
use crate::symtab::{FunctionBinding, Specifier};

fn class_body(node: &AstNode) -> bool {
    node.is("ClassDef") && !node.flag("forward")
}

/// Member order: constructors, then the destructor, then other functions.
#[derive(Debug, Default)]
pub struct ConstructorChecker;

pub fn constructor_entry() -> RuleEntry {
    RuleEntry {
        descriptor: RuleDescriptor::new(
            "ConstructorChecker",
            "Constructor order checker",
            Priority::Should,
            Criticality::Low,
        )
        .description("Checks that constructors come first, then the destructor, then other member functions.")
        .subscribe(LANG, &["ClassDef"]),
        factory: || Box::new(ConstructorChecker),
    }
}

impl Rule for ConstructorChecker {
    fn on_node(&mut self, node: &AstNode, _: &[&AstNode], ctx: &mut RuleContext<'_>) {
        if !class_body(node) {
            return;
        }
        let class = node.attr_or_empty("name");
        let mut highest = 0;
        for member in &node.children {
            let rank = match member.kind.as_str() {
                "Constructor" => 0,
                "Destructor" => 1,
                "FunctionDef" => 2,
                _ => continue,
            };
            if rank < highest {
                let after = if highest == 1 { "the destructor" } else { "other member functions" };
                ctx.report_at(
                    member,
                    format!("Member \"{}\" of class {class} is declared after {after}.", member.attr_or_empty("name")),
                );
            }
            highest = highest.max(rank);
        }
    }
}

/// Polymorphic or derived classes need a virtual destructor.
#[derive(Debug, Default)]
pub struct DestructorChecker;

pub fn destructor_entry() -> RuleEntry {
    RuleEntry {
        descriptor: RuleDescriptor::new(
            "DestructorChecker",
            "Virtual destructor checker",
            Priority::Shall,
            Criticality::Medium,
        )
        .description("Asserts a virtual destructor in classes with virtual functions or base classes.")
        .subscribe(LANG, &["ClassDef"]),
        factory: || Box::new(DestructorChecker),
    }
}

impl Rule for DestructorChecker {
    fn on_node(&mut self, node: &AstNode, _: &[&AstNode], ctx: &mut RuleContext<'_>) {
        if !class_body(node) {
            return;
        }
        let is_virtual = |m: &AstNode| m.flag("virtual") || m.flag("pure");
        let polymorphic = node
            .children
            .iter()
            .any(|m| m.is("BaseSpec") || (matches!(m.kind.as_str(), "FunctionDef" | "Destructor") && is_virtual(m)));
        let virtual_dtor = node.children.iter().any(|m| m.is("Destructor") && is_virtual(m));
        if polymorphic && !virtual_dtor {
            ctx.report_at(node, format!("Class {} has no virtual destructor.", node.attr_or_empty("name")));
        }
    }
}

/// Every public method must come from a publicly inherited interface.
#[derive(Debug, Default)]
pub struct InterfaceChecker;

pub fn interface_entry() -> RuleEntry {
    RuleEntry {
        descriptor: RuleDescriptor::new("InterfaceChecker", "Interface Checker", Priority::Shall, Criticality::Low)
            .description("Checks for correct interface usage.")
            .subscribe(LANG, &["ClassDef"])
            .property("CloseAPI", "true"),
        factory: || Box::new(InterfaceChecker),
    }
}

impl Rule for InterfaceChecker {
    fn on_node(&mut self, node: &AstNode, _: &[&AstNode], ctx: &mut RuleContext<'_>) {
        if !class_body(node) {
            return;
        }
        let table = ctx.table();
        let Some(class) = table.class_of_node(node.node_id) else { return };
        let close_api = ctx.bool_property("CloseAPI", true);

        let interfaces: Vec<_> = table
            .inherited_classes(class)
            .into_iter()
            .filter(|&base| {
                table.has_only_interface_methods(base)
                    && table.specifier_of_inherited(class, base).is_some_and(|s| s.contains(&Specifier::Public))
            })
            .collect();
        if !close_api && interfaces.is_empty() {
            return;
        }
        let declared: Vec<&FunctionBinding> = interfaces
            .iter()
            .flat_map(|&i| table.all_functions(i))
            .filter(|f| f.has_specifier(Specifier::Public))
            .collect();

        for f in table.all_functions(class) {
            let exempt = f.is_constructor
                || f.is_destructor
                || f.has_specifier(Specifier::Static)
                || f.has_specifier(Specifier::PureVirtual);
            if exempt || !f.has_specifier(Specifier::Public) {
                continue;
            }
            if !declared.iter().any(|d| d.equal_signature(f)) {
                ctx.report_at(
                    node,
                    format!(
                        "Class {} has public functions not declared in interfaces: {}",
                        table.class(class).name,
                        f.print_signature()
                    ),
                );
            }
        }
    }
}
