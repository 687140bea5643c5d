use std::collections::HashMap;

use crate::error::{Result, VfError};
use crate::rule::{RuleDescriptor, RuleEntry};

/// Registered rules, indexed by id and by `(language, kind)` subscription.
#[derive(Debug, Clone, Default)]
pub struct Registry {
    entries: Vec<RuleEntry>,
    by_id: HashMap<String, usize>,
    subscribers: HashMap<(String, String), Vec<usize>>,
}

impl Registry {
    pub fn new() -> Self {
        Registry::default()
    }

    /// Registers `entries` in order. Either all are registered or, on an id
    /// collision, none are.
    pub fn register_rules(&mut self, entries: impl IntoIterator<Item = RuleEntry>) -> Result<()> {
        let entries: Vec<RuleEntry> = entries.into_iter().collect();
        let mut seen = std::collections::HashSet::new();
        for e in &entries {
            let id = &e.descriptor.id;
            if self.by_id.contains_key(id) || !seen.insert(id.clone()) {
                return Err(VfError::DuplicateRuleId(id.clone()));
            }
        }
        for entry in entries {
            debug_assert!(!entry.descriptor.subscriptions.is_empty());
            let index = self.entries.len();
            self.by_id.insert(entry.descriptor.id.clone(), index);
            for sub in &entry.descriptor.subscriptions {
                self.subscribers.entry(sub.clone()).or_default().push(index);
            }
            self.entries.push(entry);
        }
        Ok(())
    }

    pub fn register(&mut self, entry: RuleEntry) -> Result<()> {
        self.register_rules([entry])
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, id: &str) -> Option<&RuleEntry> {
        self.by_id.get(id).map(|&i| &self.entries[i])
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.by_id.get(id).copied()
    }

    pub fn entries(&self) -> &[RuleEntry] {
        &self.entries
    }

    pub fn descriptors(&self) -> impl Iterator<Item = &RuleDescriptor> {
        self.entries.iter().map(|e| &e.descriptor)
    }

    /// Indices of the rules subscribed to a node kind, in registration order.
    pub fn subscribers(&self, language: &str, kind: &str) -> &[usize] {
        self.subscribers.get(&(language.to_string(), kind.to_string())).map(Vec::as_slice).unwrap_or(&[])
    }
}
