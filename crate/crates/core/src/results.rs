//! Result hierarchy: findings grouped per rule, rules grouped per run.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::Diagnostic;
use crate::rule::{Criticality, Finding, Priority, RuleDescriptor};

/// The rule metadata a report carries, with the effective priority applied.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleInfo {
    pub id: String,
    pub title: String,
    pub description: String,
    pub reference: String,
    pub priority: Priority,
    pub criticality: Criticality,
}

impl RuleInfo {
    pub fn from_descriptor(d: &RuleDescriptor, priority_override: Option<Priority>) -> Self {
        RuleInfo {
            id: d.id.clone(),
            title: d.title.clone(),
            description: d.description.clone(),
            reference: d.reference.clone(),
            priority: priority_override.unwrap_or(d.priority),
            criticality: d.criticality,
        }
    }
}

/// Findings of one applied rule.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleReport {
    pub rule: RuleInfo,
    pub properties: BTreeMap<String, String>,
    pub findings: Vec<Finding>,
}

impl RuleReport {
    pub fn sort(&mut self) {
        self.findings.sort();
    }
}

/// Everything a run produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationResults {
    pub created: String,
    /// One per enabled rule, ordered by rule id.
    pub reports: Vec<RuleReport>,
    /// Analyzed files, sorted.
    pub files: Vec<String>,
    /// Problems with the inputs themselves, sorted.
    pub diagnostics: Vec<Diagnostic>,
}

impl ValidationResults {
    pub fn empty(created: impl Into<String>) -> Self {
        ValidationResults { created: created.into(), reports: Vec::new(), files: Vec::new(), diagnostics: Vec::new() }
    }

    /// Merges per-unit reports into one result. Reports for the same rule are
    /// concatenated and re-sorted; the outcome does not depend on input order.
    pub fn merge(
        created: impl Into<String>,
        units: impl IntoIterator<Item = (String, Vec<RuleReport>, Vec<Diagnostic>)>,
    ) -> Self {
        let mut by_rule: BTreeMap<String, RuleReport> = BTreeMap::new();
        let mut files = BTreeSet::new();
        let mut diagnostics = Vec::new();
        for (file, reports, diags) in units {
            files.insert(file);
            diagnostics.extend(diags);
            for report in reports {
                match by_rule.get_mut(&report.rule.id) {
                    Some(existing) => existing.findings.extend(report.findings),
                    None => {
                        by_rule.insert(report.rule.id.clone(), report);
                    }
                }
            }
        }
        let mut reports: Vec<RuleReport> = by_rule.into_values().collect();
        reports.iter_mut().for_each(RuleReport::sort);
        diagnostics.sort();
        ValidationResults { created: created.into(), reports, files: files.into_iter().collect(), diagnostics }
    }

    pub fn total_findings(&self) -> usize {
        self.reports.iter().map(|r| r.findings.len()).sum()
    }

    /// Findings per file, including files with none.
    pub fn findings_per_file(&self) -> BTreeMap<&str, usize> {
        let mut counts: BTreeMap<&str, usize> = self.files.iter().map(|f| (f.as_str(), 0)).collect();
        for finding in self.reports.iter().flat_map(|r| &r.findings) {
            *counts.entry(finding.span.file.as_str()).or_default() += 1;
        }
        counts
    }

    pub fn report(&self, rule_id: &str) -> Option<&RuleReport> {
        self.reports.iter().find(|r| r.rule.id == rule_id)
    }

    /// All findings, in report order.
    pub fn findings(&self) -> impl Iterator<Item = &Finding> {
        self.reports.iter().flat_map(|r| r.findings.iter())
    }

    pub fn has_fatal_diagnostics(&self) -> bool {
        self.diagnostics.iter().any(Diagnostic::is_fatal)
    }
}
