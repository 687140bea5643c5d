//! Validation-rule model: descriptors, findings, and the listener trait.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use crate::ast::{AstNode, SourceSpan};
use crate::pipeline::AnalysisRoot;
use crate::symtab::SymbolTable;

/// Obligation class of a guideline.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Priority {
    Should,
    Shall,
    Will,
}

impl Priority {
    pub fn as_str(self) -> &'static str {
        match self {
            Priority::Should => "SHOULD",
            Priority::Shall => "SHALL",
            Priority::Will => "WILL",
        }
    }
}

impl FromStr for Priority {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "SHOULD" => Ok(Priority::Should),
            "SHALL" => Ok(Priority::Shall),
            "WILL" => Ok(Priority::Will),
            other => Err(format!("invalid priority `{other}` (expected SHOULD, SHALL or WILL)")),
        }
    }
}

impl fmt::Display for Priority {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Severity class used for the summary percentages.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Criticality {
    High,
    Medium,
    Low,
}

impl Criticality {
    pub const ALL: [Criticality; 3] = [Criticality::High, Criticality::Medium, Criticality::Low];

    pub fn as_str(self) -> &'static str {
        match self {
            Criticality::High => "HIGH",
            Criticality::Medium => "MEDIUM",
            Criticality::Low => "LOW",
        }
    }
}

impl FromStr for Criticality {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "HIGH" => Ok(Criticality::High),
            "MEDIUM" => Ok(Criticality::Medium),
            "LOW" => Ok(Criticality::Low),
            other => Err(format!("invalid criticality `{other}`")),
        }
    }
}

impl fmt::Display for Criticality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Static identity and metadata of a rule.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleDescriptor {
    pub id: String,
    pub title: String,
    pub description: String,
    pub reference: String,
    pub priority: Priority,
    pub criticality: Criticality,
    /// `(language, node kind)` pairs the rule is notified about.
    pub subscriptions: BTreeSet<(String, String)>,
    pub default_properties: BTreeMap<String, String>,
}

impl RuleDescriptor {
    pub fn new(id: &str, title: &str, priority: Priority, criticality: Criticality) -> Self {
        RuleDescriptor {
            id: id.to_string(),
            title: title.to_string(),
            description: String::new(),
            reference: String::new(),
            priority,
            criticality,
            subscriptions: BTreeSet::new(),
            default_properties: BTreeMap::new(),
        }
    }

    pub fn description(mut self, text: &str) -> Self {
        self.description = text.to_string();
        self
    }

    pub fn reference(mut self, text: &str) -> Self {
        self.reference = text.to_string();
        self
    }

    pub fn subscribe(mut self, language: &str, kinds: &[&str]) -> Self {
        for kind in kinds {
            self.subscriptions.insert((language.to_string(), kind.to_string()));
        }
        self
    }

    pub fn property(mut self, key: &str, default: &str) -> Self {
        self.default_properties.insert(key.to_string(), default.to_string());
        self
    }
}

/// One reported guideline violation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Finding {
    pub rule_id: String,
    pub span: SourceSpan,
    pub message: String,
}

impl Finding {
    /// Total order used everywhere findings are listed: (file, row, col, message).
    pub fn sort_key(&self) -> (&str, u32, u32, &str) {
        (&self.span.file, self.span.row, self.span.col, &self.message)
    }
}

impl PartialOrd for Finding {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Finding {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.sort_key()
            .cmp(&other.sort_key())
            .then_with(|| self.rule_id.cmp(&other.rule_id))
            .then_with(|| self.span.cmp(&other.span))
    }
}

/// What a rule sees while it is notified: the unit, its symbol table, the
/// effective properties, and a sink for findings.
pub struct RuleContext<'a> {
    pub unit: &'a AnalysisRoot,
    pub properties: &'a BTreeMap<String, String>,
    rule_id: &'a str,
    sink: &'a mut Vec<Finding>,
}

impl<'a> RuleContext<'a> {
    pub fn new(
        unit: &'a AnalysisRoot,
        rule_id: &'a str,
        properties: &'a BTreeMap<String, String>,
        sink: &'a mut Vec<Finding>,
    ) -> Self {
        RuleContext { unit, properties, rule_id, sink }
    }

    pub fn table(&self) -> &'a SymbolTable {
        &self.unit.symbols
    }

    pub fn property(&self, key: &str) -> Option<&'a str> {
        self.properties.get(key).map(String::as_str)
    }

    pub fn bool_property(&self, key: &str, default: bool) -> bool {
        match self.property(key) {
            Some(v) if v.eq_ignore_ascii_case("true") => true,
            Some(v) if v.eq_ignore_ascii_case("false") => false,
            _ => default,
        }
    }

    pub fn usize_property(&self, key: &str, default: usize) -> usize {
        self.property(key).and_then(|v| v.trim().parse().ok()).unwrap_or(default)
    }

    /// Records a finding at the start of `span`, in the unit's file.
    pub fn report(&mut self, span: &SourceSpan, message: impl Into<String>) {
        let message = message.into();
        debug_assert!(!message.is_empty());
        let span = SourceSpan::point(self.unit.file.clone(), span.row, span.col);
        self.sink.push(Finding { rule_id: self.rule_id.to_string(), span, message });
    }

    /// Records a finding at a node's anchor token.
    pub fn report_at(&mut self, node: &AstNode, message: impl Into<String>) {
        self.report(&node.anchor_span(), message);
    }
}

/// A validation rule: a listener registered with the dispatching visitor.
///
/// A fresh instance is created for every unit, so per-unit state can live in
/// the struct. Rules must not fail; shapes they do not understand yield no
/// finding.
pub trait Rule: Send {
    /// Called once for every visited node whose `(language, kind)` the rule
    /// subscribed to. `ancestors` runs from the root down to the parent.
    fn on_node(&mut self, node: &AstNode, ancestors: &[&AstNode], ctx: &mut RuleContext<'_>);

    /// Called once after the whole unit has been walked.
    fn on_end_of_unit(&mut self, _ctx: &mut RuleContext<'_>) {}
}

pub type RuleFactory = fn() -> Box<dyn Rule>;

/// Descriptor plus constructor, the unit of registration.
#[derive(Clone)]
pub struct RuleEntry {
    pub descriptor: RuleDescriptor,
    pub factory: RuleFactory,
}

impl fmt::Debug for RuleEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RuleEntry").field("descriptor", &self.descriptor).finish()
    }
}
