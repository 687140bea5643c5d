//! The generic visitor: one pre-order walk, many listeners.

use std::collections::BTreeMap;

use crate::ast::AstNode;
use crate::config::RuleConfig;
use crate::error::{Result, VfError};
use crate::pipeline::AnalysisRoot;
use crate::registry::Registry;
use crate::results::{RuleInfo, RuleReport};
use crate::rule::{Finding, Rule, RuleContext};

struct ActiveRule<'r> {
    id: &'r str,
    instance: Box<dyn Rule>,
    properties: BTreeMap<String, String>,
    findings: Vec<Finding>,
    info: RuleInfo,
}

/// Walks an AST once and notifies every enabled, subscribed rule at each node.
pub struct DispatchVisitor<'r> {
    registry: &'r Registry,
    active: Vec<ActiveRule<'r>>,
    /// Registry index -> position in `active`.
    slot: Vec<Option<usize>>,
    visits: usize,
}

impl<'r> DispatchVisitor<'r> {
    /// Instantiates one fresh rule per enabled config.
    pub fn new(registry: &'r Registry, configs: &[RuleConfig]) -> Result<Self> {
        let mut slot = vec![None; registry.len()];
        let mut active = Vec::new();
        for config in configs {
            let index =
                registry.index_of(&config.rule_id).ok_or_else(|| VfError::UnknownRuleId(config.rule_id.clone()))?;
            if !config.enabled || slot[index].is_some() {
                continue;
            }
            let entry = &registry.entries()[index];
            let mut properties = entry.descriptor.default_properties.clone();
            properties.extend(config.properties.clone());
            slot[index] = Some(active.len());
            active.push(ActiveRule {
                id: &entry.descriptor.id,
                instance: (entry.factory)(),
                properties,
                findings: Vec::new(),
                info: RuleInfo::from_descriptor(&entry.descriptor, config.priority_override),
            });
        }
        Ok(DispatchVisitor { registry, active, slot, visits: 0 })
    }

    /// Number of nodes visited so far.
    pub fn visits(&self) -> usize {
        self.visits
    }

    pub fn walk(&mut self, root: &AnalysisRoot) {
        let Some(ast) = root.ast.as_ref() else { return };
        // Explicit stack so deep trees cannot overflow the call stack.
        let mut path: Vec<&AstNode> = Vec::new();
        let mut stack: Vec<(&AstNode, usize)> = Vec::new();
        self.visit(ast, &path, root);
        stack.push((ast, 0));
        path.push(ast);
        while let Some(top) = stack.last_mut() {
            let (node, next) = (top.0, top.1);
            if let Some(child) = node.children.get(next) {
                top.1 += 1;
                self.visit(child, &path, root);
                stack.push((child, 0));
                path.push(child);
            } else {
                stack.pop();
                path.pop();
            }
        }
    }

    fn visit(&mut self, node: &AstNode, ancestors: &[&AstNode], root: &AnalysisRoot) {
        self.visits += 1;
        for &index in self.registry.subscribers(&node.language, &node.kind) {
            if let Some(pos) = self.slot[index] {
                let rule = &mut self.active[pos];
                let mut ctx = RuleContext::new(root, rule.id, &rule.properties, &mut rule.findings);
                rule.instance.on_node(node, ancestors, &mut ctx);
            }
        }
    }

    /// Runs end-of-unit hooks and returns sorted per-rule reports.
    pub fn finish(mut self, root: &AnalysisRoot) -> Vec<RuleReport> {
        for rule in &mut self.active {
            let mut ctx = RuleContext::new(root, rule.id, &rule.properties, &mut rule.findings);
            rule.instance.on_end_of_unit(&mut ctx);
        }
        self.into_reports()
    }

    /// Reports as they stand, without running end-of-unit hooks.
    pub fn into_reports(self) -> Vec<RuleReport> {
        let mut reports: Vec<RuleReport> = self
            .active
            .into_iter()
            .map(|r| {
                let mut report = RuleReport { rule: r.info, properties: r.properties, findings: r.findings };
                report.sort();
                report
            })
            .collect();
        reports.sort_by(|a, b| a.rule.id.cmp(&b.rule.id));
        reports
    }
}

/// Zero-finding reports for every enabled rule, as a unit that could not be
/// parsed contributes.
pub fn empty_reports(registry: &Registry, configs: &[RuleConfig]) -> Result<Vec<RuleReport>> {
    Ok(DispatchVisitor::new(registry, configs)?.into_reports())
}

/// Runs every enabled rule over `root` in a single traversal.
pub fn traverse(root: &AnalysisRoot, registry: &Registry, configs: &[RuleConfig]) -> Result<Vec<RuleReport>> {
    Ok(traverse_counted(root, registry, configs)?.0)
}

/// Like [`traverse`], also returning the number of node visits performed.
pub fn traverse_counted(
    root: &AnalysisRoot,
    registry: &Registry,
    configs: &[RuleConfig],
) -> Result<(Vec<RuleReport>, usize)> {
    let mut visitor = DispatchVisitor::new(registry, configs)?;
    visitor.walk(root);
    let visits = visitor.visits();
    Ok((visitor.finish(root), visits))
}
