//! Language-tagged syntax tree shared by every frontend.

use std::collections::BTreeMap;
use std::fmt;

/// A region of a source file. Rows and columns are 1-based; the end is inclusive.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SourceSpan {
    pub file: String,
    pub row: u32,
    pub col: u32,
    pub end_row: u32,
    pub end_col: u32,
}

impl SourceSpan {
    pub fn new(file: impl Into<String>, row: u32, col: u32, end_row: u32, end_col: u32) -> Self {
        debug_assert!(row >= 1 && col >= 1);
        debug_assert!((end_row, end_col) >= (row, col));
        SourceSpan { file: file.into(), row, col, end_row, end_col }
    }

    /// A single-position span.
    pub fn point(file: impl Into<String>, row: u32, col: u32) -> Self {
        SourceSpan::new(file, row, col, row, col)
    }

    /// Smallest span covering `self` and `other` (both in the same file).
    pub fn join(&self, other: &SourceSpan) -> SourceSpan {
        let (row, col) = (self.row, self.col).min((other.row, other.col));
        let (end_row, end_col) = (self.end_row, self.end_col).max((other.end_row, other.end_col));
        SourceSpan { file: self.file.clone(), row, col, end_row, end_col }
    }

    pub fn contains(&self, other: &SourceSpan) -> bool {
        (self.row, self.col) <= (other.row, other.col) && (other.end_row, other.end_col) <= (self.end_row, self.end_col)
    }

    /// Number of source lines touched by the span.
    pub fn line_count(&self) -> u32 {
        self.end_row - self.row + 1
    }
}

impl fmt::Display for SourceSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.file, self.row, self.col)
    }
}

/// One node of the abstract syntax graph.
///
/// `span` covers the whole construct. `anchor`, when present, is the token a
/// finding about this node should point at: the declared name for
/// declarations, the operator for binary and assignment expressions.
/// Structural positions (condition, then-branch, ...) are tagged with a
/// `role` attribute on the child.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AstNode {
    pub language: String,
    pub kind: String,
    pub span: SourceSpan,
    pub anchor: Option<SourceSpan>,
    pub attributes: BTreeMap<String, String>,
    pub children: Vec<AstNode>,
    pub node_id: usize,
}

impl AstNode {
    pub fn new(language: &str, kind: &str, span: SourceSpan) -> Self {
        AstNode {
            language: language.to_string(),
            kind: kind.to_string(),
            span,
            anchor: None,
            attributes: BTreeMap::new(),
            children: Vec::new(),
            node_id: 0,
        }
    }

    pub fn with_attr(mut self, key: &str, value: impl Into<String>) -> Self {
        self.attributes.insert(key.to_string(), value.into());
        self
    }

    pub fn with_anchor(mut self, anchor: SourceSpan) -> Self {
        self.anchor = Some(anchor);
        self
    }

    pub fn with_child(mut self, child: AstNode) -> Self {
        self.children.push(child);
        self
    }

    pub fn set_attr(&mut self, key: &str, value: impl Into<String>) {
        self.attributes.insert(key.to_string(), value.into());
    }

    pub fn attr(&self, key: &str) -> Option<&str> {
        self.attributes.get(key).map(String::as_str)
    }

    /// Attribute value or the empty string.
    pub fn attr_or_empty(&self, key: &str) -> &str {
        self.attr(key).unwrap_or("")
    }

    pub fn flag(&self, key: &str) -> bool {
        self.attr(key) == Some("true")
    }

    pub fn is(&self, kind: &str) -> bool {
        self.kind == kind
    }

    pub fn role(&self) -> Option<&str> {
        self.attr("role")
    }

    pub fn child_with_role(&self, role: &str) -> Option<&AstNode> {
        self.children.iter().find(|c| c.role() == Some(role))
    }

    pub fn children_with_role<'a>(&'a self, role: &'a str) -> impl Iterator<Item = &'a AstNode> + 'a {
        self.children.iter().filter(move |c| c.role() == Some(role))
    }

    /// The span a finding about this node should carry.
    pub fn anchor_span(&self) -> SourceSpan {
        match &self.anchor {
            Some(a) => a.clone(),
            None => SourceSpan::point(self.span.file.clone(), self.span.row, self.span.col),
        }
    }

    /// Pre-order iterator over this node and all descendants.
    pub fn descendants(&self) -> Descendants<'_> {
        Descendants { stack: vec![self] }
    }

    pub fn node_count(&self) -> usize {
        self.descendants().count()
    }

    /// Renumbers `node_id` in pre-order starting at zero.
    pub fn assign_ids(&mut self) {
        let mut next = 0usize;
        let mut stack: Vec<&mut AstNode> = vec![self];
        while let Some(node) = stack.pop() {
            node.node_id = next;
            next += 1;
            for child in node.children.iter_mut().rev() {
                stack.push(child);
            }
        }
    }

    /// Indented one-line-per-node dump used by golden tests.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        self.dump_into(&mut out, 0);
        out
    }

    fn dump_into(&self, out: &mut String, depth: usize) {
        use fmt::Write;
        let _ = write!(out, "{}{}", "  ".repeat(depth), self.kind);
        let attrs: Vec<String> = self.attributes.iter().map(|(k, v)| format!("{k}={v}")).collect();
        if !attrs.is_empty() {
            let _ = write!(out, "({})", attrs.join(", "));
        }
        let _ = writeln!(out, " @{}:{}", self.span.row, self.span.col);
        for child in &self.children {
            child.dump_into(out, depth + 1);
        }
    }
}

pub struct Descendants<'a> {
    stack: Vec<&'a AstNode>,
}

impl<'a> Iterator for Descendants<'a> {
    type Item = &'a AstNode;

    fn next(&mut self) -> Option<&'a AstNode> {
        let node = self.stack.pop()?;
        self.stack.extend(node.children.iter().rev());
        Some(node)
    }
}
