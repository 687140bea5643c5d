//! Built-in rule catalogs.

pub mod minicpp;
pub mod seqdiag;

use crate::ast::AstNode;
use crate::registry::Registry;

/// `[A-Z][a-zA-Z0-9]*`
pub fn is_upper_camel(name: &str) -> bool {
    let mut chars = name.chars();
    chars.next().is_some_and(|c| c.is_ascii_uppercase()) && chars.all(|c| c.is_ascii_alphanumeric())
}

/// `[a-z][a-zA-Z0-9]*`
pub fn is_lower_camel(name: &str) -> bool {
    let mut chars = name.chars();
    chars.next().is_some_and(|c| c.is_ascii_lowercase()) && chars.all(|c| c.is_ascii_alphanumeric())
}

/// Strips any number of enclosing `ParenExpr` nodes.
pub fn unparen(mut node: &AstNode) -> &AstNode {
    while node.is("ParenExpr") {
        match node.children.first() {
            Some(inner) => node = inner,
            None => break,
        }
    }
    node
}

/// Registry holding every built-in rule of `language`.
pub fn registry_for(language: &str) -> Option<Registry> {
    match language {
        "minicpp" => Some(minicpp::registry()),
        "seqdiag" => Some(seqdiag::registry()),
        _ => None,
    }
}
