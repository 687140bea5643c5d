//! Guideline checkers for sequence charts.

use crate::ast::AstNode;
use crate::registry::Registry;
use crate::rule::{Criticality, Priority, Rule, RuleContext, RuleDescriptor, RuleEntry};
use crate::seqdiag::LANG;

/// The test driver is the `testDriver` property, or else the first declared
/// object of the chart.
fn test_driver(ctx: &RuleContext<'_>) -> Option<String> {
    match ctx.property("testDriver") {
        Some(name) if !name.is_empty() => Some(name.to_string()),
        _ => ctx
            .unit
            .ast
            .as_ref()?
            .children
            .iter()
            .find(|c| c.is("ObjectDecl"))
            .map(|c| c.attr_or_empty("name").to_string()),
    }
}

fn is_call(node: &AstNode) -> bool {
    node.attr("direction") == Some("CALL")
}

/// Calls issued by the test driver carry `<<trigger>>`.
#[derive(Debug, Default)]
pub struct TriggerChecker {
    driver: Option<Option<String>>,
}

pub fn trigger_entry() -> RuleEntry {
    RuleEntry {
        descriptor: RuleDescriptor::new("TriggerChecker", "Trigger checker", Priority::Shall, Criticality::Medium)
            .description("Checks for the stereotype <<trigger>> on messages sent by the test driver.")
            .subscribe(LANG, &["Message"])
            .property("testDriver", ""),
        factory: || Box::<TriggerChecker>::default(),
    }
}

impl Rule for TriggerChecker {
    fn on_node(&mut self, node: &AstNode, _: &[&AstNode], ctx: &mut RuleContext<'_>) {
        let Some(driver) = self.driver.get_or_insert_with(|| test_driver(ctx)).clone() else { return };
        if is_call(node) && node.attr_or_empty("source") == driver && node.attr_or_empty("stereotype") != "trigger" {
            ctx.report_at(
                node,
                format!(
                    "Message \"{}\" from test driver \"{driver}\" lacks the <<trigger>> stereotype.",
                    node.attr_or_empty("payload")
                ),
            );
        }
    }
}

/// Nothing but returns may flow back to the test driver.
#[derive(Debug, Default)]
pub struct NoCallToTestDriverChecker {
    driver: Option<Option<String>>,
}

pub fn no_call_entry() -> RuleEntry {
    RuleEntry {
        descriptor: RuleDescriptor::new(
            "NoCallToTestDriverChecker",
            "Test driver call checker",
            Priority::Shall,
            Criticality::High,
        )
        .description("Validates that the object under test does not call the test driver itself.")
        .subscribe(LANG, &["Message"])
        .property("testDriver", ""),
        factory: || Box::<NoCallToTestDriverChecker>::default(),
    }
}

impl Rule for NoCallToTestDriverChecker {
    fn on_node(&mut self, node: &AstNode, _: &[&AstNode], ctx: &mut RuleContext<'_>) {
        let Some(driver) = self.driver.get_or_insert_with(|| test_driver(ctx)).clone() else { return };
        if is_call(node) && node.attr_or_empty("target") == driver {
            ctx.report_at(
                node,
                format!(
                    "Object \"{}\" calls the test driver \"{driver}\": {}.",
                    node.attr_or_empty("source"),
                    node.attr_or_empty("payload")
                ),
            );
        }
    }
}

pub fn entries() -> Vec<RuleEntry> {
    vec![no_call_entry(), trigger_entry()]
}

pub fn registry() -> Registry {
    let mut registry = Registry::new();
    registry.register_rules(entries()).expect("built-in rule ids are unique");
    registry
}
