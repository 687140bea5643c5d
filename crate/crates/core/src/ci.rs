//! Command-line support: exit-code policy and the rule listing.

use crate::error::Result;
use crate::pipeline::frontend;
use crate::results::ValidationResults;
use crate::rule::Priority;

pub const EXIT_CLEAN: i32 = 0;
pub const EXIT_FINDINGS: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

/// 2 when an input could not be analyzed, 1 when a SHALL finding exists (or
/// a SHOULD finding under `strict`), 0 otherwise. WILL findings never fail.
pub fn exit_code(results: &ValidationResults, strict: bool) -> i32 {
    if results.has_fatal_diagnostics() {
        return EXIT_ERROR;
    }
    let failing = results.reports.iter().any(|r| {
        !r.findings.is_empty()
            && match r.rule.priority {
                Priority::Shall => true,
                Priority::Should => strict,
                Priority::Will => false,
            }
    });
    if failing {
        EXIT_FINDINGS
    } else {
        EXIT_CLEAN
    }
}

/// One tab-separated line per built-in rule of `language`: id, title,
/// priority, criticality and default properties (`key=value`, comma-separated).
pub fn list_rules(language: &str) -> Result<String> {
    let registry = frontend(language)?.registry();
    let mut out = String::new();
    for d in registry.descriptors() {
        let props: Vec<String> = d.default_properties.iter().map(|(k, v)| format!("{k}={v}")).collect();
        out.push_str(&format!("{}\t{}\t{}\t{}\t{}\n", d.id, d.title, d.priority, d.criticality, props.join(",")));
    }
    Ok(out)
}
