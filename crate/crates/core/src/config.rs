//! Rule configuration file.
//!
//! ```text
//! # comment
//! [rule InterfaceChecker]
//! enabled = true
//! priority = SHALL
//! CloseAPI = true
//! ```
//!
//! `enabled` and `priority` are reserved keys; every other key must be a
//! property the rule declares. Rules without a section keep their defaults.

use std::collections::{BTreeMap, HashSet};

use crate::error::{Result, VfError};
use crate::registry::Registry;
use crate::rule::{Priority, RuleDescriptor};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleConfig {
    pub rule_id: String,
    pub enabled: bool,
    pub priority_override: Option<Priority>,
    /// Defaults merged with configured values.
    pub properties: BTreeMap<String, String>,
}

impl RuleConfig {
    pub fn defaults(descriptor: &RuleDescriptor) -> Self {
        RuleConfig {
            rule_id: descriptor.id.clone(),
            enabled: true,
            priority_override: None,
            properties: descriptor.default_properties.clone(),
        }
    }

    pub fn with_property(mut self, key: &str, value: &str) -> Self {
        self.properties.insert(key.to_string(), value.to_string());
        self
    }
}

/// Every registered rule enabled with its default properties.
pub fn default_configs(registry: &Registry) -> Vec<RuleConfig> {
    registry.descriptors().map(RuleConfig::defaults).collect()
}

/// Defaults for the named rules only.
pub fn configs_for(registry: &Registry, ids: &[&str]) -> Result<Vec<RuleConfig>> {
    ids.iter()
        .map(|id| {
            registry
                .get(id)
                .map(|e| RuleConfig::defaults(&e.descriptor))
                .ok_or_else(|| VfError::UnknownRuleId(id.to_string()))
        })
        .collect()
}

/// Parses a configuration file into one [`RuleConfig`] per registered rule,
/// in registration order.
pub fn load_config(text: &str, registry: &Registry) -> Result<Vec<RuleConfig>> {
    let mut configs = default_configs(registry);
    let mut current: Option<usize> = None;
    let mut seen_sections = HashSet::new();

    for (index, raw) in text.lines().enumerate() {
        let line_no = index + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let syntax = |reason: String| VfError::ConfigSyntax { line: line_no, reason };

        if let Some(header) = line.strip_prefix('[') {
            let inner = header.strip_suffix(']').ok_or_else(|| syntax("section header is missing `]`".into()))?.trim();
            let id = match inner.split_once(char::is_whitespace) {
                Some(("rule", id)) if !id.trim().is_empty() => id.trim(),
                _ => return Err(syntax(format!("unknown section `[{inner}]`"))),
            };
            if id.contains(char::is_whitespace) {
                return Err(syntax(format!("invalid rule id `{id}`")));
            }
            let idx = registry.index_of(id).ok_or_else(|| VfError::UnknownRuleId(id.to_string()))?;
            if !seen_sections.insert(idx) {
                return Err(syntax(format!("duplicate section for rule `{id}`")));
            }
            current = Some(idx);
            continue;
        }

        let (key, value) =
            line.split_once('=').ok_or_else(|| syntax(format!("expected `key = value`, found `{line}`")))?;
        let (key, value) = (key.trim(), value.trim());
        if key.is_empty() {
            return Err(syntax("empty key".into()));
        }
        let idx = current.ok_or_else(|| syntax("entry outside of a `[rule <Id>]` section".into()))?;
        let descriptor = &registry.entries()[idx].descriptor;
        let config = &mut configs[idx];

        match key {
            "enabled" => {
                config.enabled = match value {
                    "true" => true,
                    "false" => false,
                    _ => return Err(syntax(format!("`enabled` must be true or false, found `{value}`"))),
                }
            }
            "priority" => config.priority_override = Some(value.parse().map_err(syntax)?),
            _ if descriptor.default_properties.contains_key(key) => {
                config.properties.insert(key.to_string(), value.to_string());
            }
            _ => return Err(VfError::UnknownProperty { rule: descriptor.id.clone(), key: key.to_string() }),
        }
    }
    Ok(configs)
}
