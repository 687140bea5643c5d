//! Guideline checkers for the C++ subset.

mod classes;
mod memory;
mod naming;
mod statements;

use crate::registry::Registry;
use crate::rule::RuleEntry;

pub use classes::{ConstructorChecker, DestructorChecker, InterfaceChecker};
pub use memory::MemoryChecker;
pub use naming::{
    EnumChecker, FunctionChecker, IdentifierChecker, NamespaceChecker, NamingConventionChecker,
    SingleLetterVariableChecker, TypeDefChecker,
};
pub use statements::{
    ExpressionAssignmentChecker, ExpressionChecker, FlowControlChecker, IfChecker, InitializedVariableChecker,
    SwitchChecker, SymbolOrderChecker,
};

/// All eighteen checkers, sorted by id.
pub fn entries() -> Vec<RuleEntry> {
    vec![
        classes::constructor_entry(),
        classes::destructor_entry(),
        naming::enum_entry(),
        statements::expression_entry(),
        statements::expression_assignment_entry(),
        statements::flow_control_entry(),
        naming::function_entry(),
        naming::identifier_entry(),
        statements::if_entry(),
        statements::initialized_variable_entry(),
        classes::interface_entry(),
        memory::entry(),
        naming::naming_convention_entry(),
        naming::namespace_entry(),
        naming::single_letter_entry(),
        statements::switch_entry(),
        statements::symbol_order_entry(),
        naming::typedef_entry(),
    ]
}

pub fn registry() -> Registry {
    let mut registry = Registry::new();
    registry.register_rules(entries()).expect("built-in rule ids are unique");
    registry
}
