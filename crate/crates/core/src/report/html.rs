//! Self-contained HTML report.

use std::fmt::Write as _;

use chrono::{DateTime, NaiveDateTime};

use crate::report::summary::SeveritySummary;
use crate::results::ValidationResults;
use crate::rule::Criticality;

pub fn escape_html(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for c in text.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&#39;"),
            c => out.push(c),
        }
    }
    out
}

/// `YYYY-MM-DD HH:MM` for ISO-8601 input; anything else is shown as given.
pub fn display_timestamp(created: &str) -> String {
    if let Ok(t) = DateTime::parse_from_rfc3339(created) {
        return t.format("%Y-%m-%d %H:%M").to_string();
    }
    for format in ["%Y-%m-%dT%H:%M:%S%.f", "%Y-%m-%dT%H:%M", "%Y-%m-%d %H:%M:%S", "%Y-%m-%d %H:%M"] {
        if let Ok(t) = NaiveDateTime::parse_from_str(created, format) {
            return t.format("%Y-%m-%d %H:%M").to_string();
        }
    }
    created.to_string()
}

fn anchor(rule_id: &str) -> String {
    let id: String = rule_id.chars().map(|c| if c.is_ascii_alphanumeric() { c } else { '-' }).collect();
    format!("rule-{id}")
}

const STYLE: &str = "body{font-family:sans-serif;margin:2em}table{border-collapse:collapse}\
th,td{border:1px solid #999;padding:2px 8px;text-align:left}th{background:#eee}";

/// Summary page: overview, categories with findings, files, severity table,
/// then one section per rule with findings.
pub fn render_html(results: &ValidationResults, summary: &SeveritySummary) -> String {
    let mut out = String::new();
    let _ = write!(
        out,
        "<!DOCTYPE html>\n<html>\n<head>\n<meta charset=\"utf-8\">\n<title>CGL Report Summary</title>\n<style>{STYLE}</style>\n</head>\n<body>\n"
    );
    out.push_str("<h1 id=\"top\">CGL Report Summary</h1>\n<h2>Overview:</h2>\n");
    let _ = writeln!(
        out,
        "<p>The CGLs (Found {} errors; created {}):</p>",
        results.total_findings(),
        escape_html(&display_timestamp(&results.created))
    );

    out.push_str("<h2>CGL Categories</h2>\n<ul>\n");
    for report in results.reports.iter().filter(|r| !r.findings.is_empty()) {
        let _ = writeln!(
            out,
            "<li><a href=\"#{}\">{} ({} errors)</a></li>",
            anchor(&report.rule.id),
            escape_html(&report.rule.title),
            report.findings.len()
        );
    }
    out.push_str("</ul>\n<h2>Files:</h2>\n<ul>\n");
    for (file, count) in results.findings_per_file() {
        let _ = writeln!(out, "<li>{} ({count} errors)</li>", escape_html(file));
    }
    out.push_str("</ul>\n");

    out.push_str("<h2>Severity:</h2>\n<table>\n<tr><th>Criticality</th><th>Findings</th><th>Share</th></tr>\n");
    for c in Criticality::ALL {
        let _ = writeln!(out, "<tr><td>{c}</td><td>{}</td><td>{}%</td></tr>", summary.count(c), summary.percent(c));
    }
    out.push_str("</table>\n");

    if !results.diagnostics.is_empty() {
        out.push_str("<h2>Input problems:</h2>\n<table>\n<tr><th>Filename</th><th>Kind</th><th>Message</th><th>Row</th><th>Column</th></tr>\n");
        for d in &results.diagnostics {
            let _ = writeln!(
                out,
                "<tr><td>{}</td><td>{}</td><td>{}</td><td>{}</td><td>{}</td></tr>",
                escape_html(&d.span.file),
                d.kind.as_str(),
                escape_html(&d.message),
                d.span.row,
                d.span.col
            );
        }
        out.push_str("</table>\n");
    }

    for report in results.reports.iter().filter(|r| !r.findings.is_empty()) {
        let rule = &report.rule;
        let _ = writeln!(
            out,
            "<div class=\"rule\" id=\"{}\">\n<h2>{} ({} errors):</h2>",
            anchor(&rule.id),
            escape_html(&rule.title),
            report.findings.len()
        );
        if !rule.description.is_empty() {
            let _ = writeln!(out, "<p>{}</p>", escape_html(&rule.description));
        }
        if !rule.reference.is_empty() {
            let _ = writeln!(out, "<p>Reference: {}</p>", escape_html(&rule.reference));
        }
        let _ = writeln!(out, "<p>Priority: {}</p>", rule.priority);
        if !report.properties.is_empty() {
            out.push_str("<p>Configured properties:</p>\n<ul>\n");
            for (k, v) in &report.properties {
                let _ = writeln!(out, "<li>{} : {}</li>", escape_html(k), escape_html(v));
            }
            out.push_str("</ul>\n");
        }
        out.push_str(
            "<h3>Messages:</h3>\n<table>\n<tr><th>Filename</th><th>Message</th><th>Row</th><th>Column</th></tr>\n",
        );
        for f in &report.findings {
            let _ = writeln!(
                out,
                "<tr><td>{}</td><td>{}</td><td>{}</td><td>{}</td></tr>",
                escape_html(&f.span.file),
                escape_html(&f.message),
                f.span.row,
                f.span.col
            );
        }
        out.push_str("</table>\n<p><a href=\"#top\">Back to top</a></p>\n</div>\n");
    }
    out.push_str("</body>\n</html>\n");
    out
}
