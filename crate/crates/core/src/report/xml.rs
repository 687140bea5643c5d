//! Canonical XML form of [`ValidationResults`].
//!
//! ```text
//! <vfresults created="..." findings="N">
//!   <file path="..." findings="n"/>*
//!   <diagnostic kind="..." file="..." row="R" col="C" text="..."/>*
//!   <rule id title description reference priority criticality findings>
//!     <property name="..." value="..."/>*
//!     <message file="..." row="R" col="C" text="..."/>*
//!   </rule>*
//! </vfresults>
//! ```
//!
//! `<diagnostic>` elements appear only when a run recorded input problems.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use quick_xml::events::{BytesStart, Event};
use quick_xml::{Reader, XmlVersion};

use crate::ast::SourceSpan;
use crate::error::{Diagnostic, DiagnosticKind, Result, VfError};
use crate::results::{RuleInfo, RuleReport, ValidationResults};
use crate::rule::Finding;

/// Escapes markup characters plus tab, CR and LF, which attribute-value
/// normalization would otherwise turn into spaces.
pub fn escape(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for c in text.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            '\n' => out.push_str("&#10;"),
            '\r' => out.push_str("&#13;"),
            '\t' => out.push_str("&#9;"),
            c => out.push(c),
        }
    }
    out
}

/// Serializes with fixed element and attribute order; equal results give
/// identical bytes.
pub fn to_xml(results: &ValidationResults) -> String {
    let mut out = String::from("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ =
        writeln!(out, "<vfresults created=\"{}\" findings=\"{}\">", escape(&results.created), results.total_findings());
    for (path, count) in results.findings_per_file() {
        let _ = writeln!(out, "  <file path=\"{}\" findings=\"{count}\"/>", escape(path));
    }
    for d in &results.diagnostics {
        let _ = writeln!(
            out,
            "  <diagnostic kind=\"{}\" file=\"{}\" row=\"{}\" col=\"{}\" text=\"{}\"/>",
            d.kind.as_str(),
            escape(&d.span.file),
            d.span.row,
            d.span.col,
            escape(&d.message)
        );
    }
    for report in &results.reports {
        let r = &report.rule;
        let _ = write!(
            out,
            "  <rule id=\"{}\" title=\"{}\" description=\"{}\" reference=\"{}\" priority=\"{}\" criticality=\"{}\" findings=\"{}\"",
            escape(&r.id),
            escape(&r.title),
            escape(&r.description),
            escape(&r.reference),
            r.priority,
            r.criticality,
            report.findings.len()
        );
        if report.properties.is_empty() && report.findings.is_empty() {
            out.push_str("/>\n");
            continue;
        }
        out.push_str(">\n");
        for (name, value) in &report.properties {
            let _ = writeln!(out, "    <property name=\"{}\" value=\"{}\"/>", escape(name), escape(value));
        }
        let mut findings: Vec<&Finding> = report.findings.iter().collect();
        findings.sort();
        for f in findings {
            let _ = writeln!(
                out,
                "    <message file=\"{}\" row=\"{}\" col=\"{}\" text=\"{}\"/>",
                escape(&f.span.file),
                f.span.row,
                f.span.col,
                escape(&f.message)
            );
        }
        out.push_str("  </rule>\n");
    }
    out.push_str("</vfresults>\n");
    out
}

struct Attrs {
    values: HashMap<String, String>,
    position: u64,
    element: String,
}

impl Attrs {
    fn read(e: &BytesStart<'_>, position: u64) -> Result<Self> {
        let element = e.name().as_ref().to_string();
        let mut values = HashMap::new();
        for attr in e.attributes() {
            let attr = attr.map_err(|err| schema(position, err.to_string()))?;
            let key = attr.key.as_ref().to_string();
            let value = attr
                .normalized_value(XmlVersion::Explicit1_0)
                .map_err(|err| schema(position, err.to_string()))?
                .into_owned();
            values.insert(key, value);
        }
        Ok(Attrs { values, position, element })
    }

    fn get(&self, key: &str) -> Result<String> {
        self.values
            .get(key)
            .cloned()
            .ok_or_else(|| schema(self.position, format!("<{}> lacks attribute `{key}`", self.element)))
    }

    fn number<T: std::str::FromStr>(&self, key: &str) -> Result<T> {
        let raw = self.get(key)?;
        raw.parse().map_err(|_| {
            schema(self.position, format!("attribute `{key}` of <{}> is not a number: `{raw}`", self.element))
        })
    }

    fn parsed<T: std::str::FromStr<Err = String>>(&self, key: &str) -> Result<T> {
        self.get(key)?.parse().map_err(|reason| schema(self.position, reason))
    }
}

fn schema(position: u64, reason: impl Into<String>) -> VfError {
    VfError::XmlSchema { position, reason: reason.into() }
}

/// Parses a document produced by [`to_xml`] (or hand-written to the same
/// schema). Declared counts are checked against the content.
pub fn from_xml(text: &str) -> Result<ValidationResults> {
    let mut reader = Reader::from_str(text);
    let mut results: Option<ValidationResults> = None;
    let mut declared_total = 0usize;
    let mut declared_files: BTreeMap<String, usize> = BTreeMap::new();
    let mut current: Option<(RuleReport, usize)> = None;
    let mut closed = false;

    loop {
        let position = reader.buffer_position();
        let event = reader.read_event().map_err(|err| schema(reader.error_position(), err.to_string()))?;
        let (e, empty) = match event {
            Event::Start(e) => (e, false),
            Event::Empty(e) => (e, true),
            Event::End(e) => {
                match e.name().as_ref() {
                    "rule" => {
                        let (report, declared) =
                            current.take().ok_or_else(|| schema(position, "unbalanced </rule>"))?;
                        finish_rule(&mut results, report, declared, position)?;
                    }
                    "vfresults" => closed = true,
                    _ => {}
                }
                continue;
            }
            Event::Eof => break,
            Event::Text(t) if !t.trim().is_empty() => {
                return Err(schema(position, "unexpected text content"));
            }
            _ => continue,
        };
        if closed {
            return Err(schema(position, "content after </vfresults>"));
        }
        let attrs = Attrs::read(&e, position)?;
        match (e.name().as_ref(), results.as_mut()) {
            ("vfresults", None) => {
                declared_total = attrs.number("findings")?;
                results = Some(ValidationResults::empty(attrs.get("created")?));
                if empty {
                    closed = true;
                }
            }
            ("file", Some(r)) if current.is_none() => {
                let path = attrs.get("path")?;
                declared_files.insert(path.clone(), attrs.number("findings")?);
                r.files.push(path);
            }
            ("diagnostic", Some(r)) if current.is_none() => {
                let kind_text = attrs.get("kind")?;
                let kind = DiagnosticKind::parse(&kind_text)
                    .ok_or_else(|| schema(position, format!("unknown diagnostic kind `{kind_text}`")))?;
                let span = SourceSpan::point(attrs.get("file")?, attrs.number("row")?, attrs.number("col")?);
                r.diagnostics.push(Diagnostic::new(kind, span, attrs.get("text")?));
            }
            ("rule", Some(_)) if current.is_none() => {
                let report = RuleReport {
                    rule: RuleInfo {
                        id: attrs.get("id")?,
                        title: attrs.get("title")?,
                        description: attrs.get("description")?,
                        reference: attrs.get("reference")?,
                        priority: attrs.parsed("priority")?,
                        criticality: attrs.parsed("criticality")?,
                    },
                    properties: BTreeMap::new(),
                    findings: Vec::new(),
                };
                let declared = attrs.number("findings")?;
                if empty {
                    finish_rule(&mut results, report, declared, position)?;
                } else {
                    current = Some((report, declared));
                }
            }
            ("property", Some(_)) if current.is_some() => {
                let (report, _) = current.as_mut().expect("checked above");
                report.properties.insert(attrs.get("name")?, attrs.get("value")?);
            }
            ("message", Some(_)) if current.is_some() => {
                let (report, _) = current.as_mut().expect("checked above");
                let row: u32 = attrs.number("row")?;
                let col: u32 = attrs.number("col")?;
                if row == 0 || col == 0 {
                    return Err(schema(position, "row and col are 1-based"));
                }
                report.findings.push(Finding {
                    rule_id: report.rule.id.clone(),
                    span: SourceSpan::point(attrs.get("file")?, row, col),
                    message: attrs.get("text")?,
                });
            }
            (name, _) => {
                return Err(schema(position, format!("unexpected element <{name}>")));
            }
        }
    }

    let end = text.len() as u64;
    let results = results.ok_or_else(|| schema(end, "missing <vfresults> root"))?;
    if !closed || current.is_some() {
        return Err(schema(end, "truncated document"));
    }
    if results.total_findings() != declared_total {
        return Err(schema(end, format!("declared {declared_total} findings, found {}", results.total_findings())));
    }
    let actual = results.findings_per_file();
    for (path, declared) in &declared_files {
        let found = actual.get(path.as_str()).copied().unwrap_or(0);
        if found != *declared {
            return Err(schema(end, format!("file `{path}` declares {declared} findings, found {found}")));
        }
    }
    if let Some(path) = actual.keys().find(|p| !declared_files.contains_key(**p)) {
        return Err(schema(end, format!("finding in undeclared file `{path}`")));
    }
    Ok(results)
}

fn finish_rule(
    results: &mut Option<ValidationResults>,
    report: RuleReport,
    declared: usize,
    position: u64,
) -> Result<()> {
    if report.findings.len() != declared {
        return Err(schema(
            position,
            format!("rule `{}` declares {declared} findings, found {}", report.rule.id, report.findings.len()),
        ));
    }
    results.as_mut().expect("rule inside root").reports.push(report);
    Ok(())
}
