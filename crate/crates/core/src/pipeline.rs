//! Workflow pipeline: parse -> build symbols -> traverse, per unit, merged
//! into one [`ValidationResults`].

use std::path::{Path, PathBuf};

use rayon::prelude::*;

use crate::ast::{AstNode, SourceSpan};
use crate::config::RuleConfig;
use crate::error::{Diagnostic, DiagnosticKind, Result, VfError};
use crate::registry::Registry;
use crate::results::{RuleReport, ValidationResults};
use crate::symtab::SymbolTable;
use crate::visitor::{empty_reports, traverse};

/// One parsed source unit with everything derived from it.
#[derive(Debug, Clone)]
pub struct AnalysisRoot {
    pub file: String,
    pub content: String,
    /// Present iff no fatal diagnostic was produced.
    pub ast: Option<AstNode>,
    pub symbols: SymbolTable,
    pub diagnostics: Vec<Diagnostic>,
}

impl AnalysisRoot {
    /// Runs the parse and symbol-table workflows for a unit.
    pub fn analyze(frontend: &dyn Frontend, file: &str, content: &str) -> Self {
        let mut root = AnalysisRoot {
            file: file.to_string(),
            content: content.to_string(),
            ast: None,
            symbols: SymbolTable::new(0),
            diagnostics: Vec::new(),
        };
        match frontend.parse(file, content) {
            Ok(ast) => {
                root.symbols = frontend.build_symbols(&ast);
                root.diagnostics.extend(root.symbols.diagnostics.iter().cloned());
                root.ast = Some(ast);
            }
            Err(diag) => root.diagnostics.push(diag),
        }
        root
    }

    pub fn has_fatal_error(&self) -> bool {
        self.diagnostics.iter().any(Diagnostic::is_fatal)
    }
}

/// Language-specific front half of the pipeline.
pub trait Frontend: Sync {
    fn language(&self) -> &'static str;

    /// File extensions (without dot) scanned for this language.
    fn extensions(&self) -> &'static [&'static str];

    /// Builds the AST; a fatal problem is returned as a diagnostic.
    fn parse(&self, file: &str, content: &str) -> std::result::Result<AstNode, Diagnostic>;

    fn build_symbols(&self, ast: &AstNode) -> SymbolTable;

    /// The language's built-in rule catalog.
    fn registry(&self) -> Registry;
}

pub const LANGUAGES: &[&str] = &["minicpp", "seqdiag"];

pub fn frontend(language: &str) -> Result<&'static dyn Frontend> {
    match language {
        "minicpp" => Ok(&crate::minicpp::MiniCpp),
        "seqdiag" => Ok(&crate::seqdiag::SeqDiag),
        other => Err(VfError::UnknownLanguage(other.to_string())),
    }
}

/// A configured validation run for one language.
pub struct Pipeline {
    frontend: &'static dyn Frontend,
    registry: Registry,
    configs: Vec<RuleConfig>,
}

impl Pipeline {
    pub fn new(frontend: &'static dyn Frontend, registry: Registry, configs: Vec<RuleConfig>) -> Result<Self> {
        for config in &configs {
            if registry.get(&config.rule_id).is_none() {
                return Err(VfError::UnknownRuleId(config.rule_id.clone()));
            }
        }
        Ok(Pipeline { frontend, registry, configs })
    }

    /// Pipeline over the language's built-in rules.
    pub fn for_language(language: &str, configs: Vec<RuleConfig>) -> Result<Self> {
        let frontend = frontend(language)?;
        Pipeline::new(frontend, frontend.registry(), configs)
    }

    pub fn registry(&self) -> &Registry {
        &self.registry
    }

    pub fn frontend(&self) -> &'static dyn Frontend {
        self.frontend
    }

    /// All three stages for one in-memory unit.
    pub fn analyze_source(&self, file: &str, content: &str) -> (Vec<RuleReport>, Vec<Diagnostic>) {
        let root = AnalysisRoot::analyze(self.frontend, file, content);
        let reports = if root.ast.is_some() {
            traverse(&root, &self.registry, &self.configs).expect("configs validated in Pipeline::new")
        } else {
            self.empty_reports()
        };
        (reports, root.diagnostics)
    }

    fn empty_reports(&self) -> Vec<RuleReport> {
        empty_reports(&self.registry, &self.configs).expect("configs validated in Pipeline::new")
    }

    /// Reads and analyzes every file; unreadable or unparseable files are
    /// recorded as diagnostics and do not stop the others.
    pub fn run(&self, files: &[PathBuf], created: &str) -> ValidationResults {
        let units: Vec<(String, Vec<RuleReport>, Vec<Diagnostic>)> = files
            .par_iter()
            .map(|path| {
                let name = path_string(path);
                match std::fs::read_to_string(path) {
                    Ok(content) => {
                        let (reports, diags) = self.analyze_source(&name, &content);
                        (name, reports, diags)
                    }
                    Err(err) => {
                        let diag =
                            Diagnostic::new(DiagnosticKind::Io, SourceSpan::point(name.clone(), 1, 1), err.to_string());
                        (name, self.empty_reports(), vec![diag])
                    }
                }
            })
            .collect();
        let mut results = ValidationResults::merge(created, units);
        if results.reports.is_empty() {
            results.reports = self.empty_reports();
        }
        results
    }

    /// Analyzes in-memory `(file, content)` units.
    pub fn run_sources(&self, sources: &[(String, String)], created: &str) -> ValidationResults {
        let units: Vec<_> = sources
            .par_iter()
            .map(|(file, content)| {
                let (reports, diags) = self.analyze_source(file, content);
                (file.clone(), reports, diags)
            })
            .collect();
        let mut results = ValidationResults::merge(created, units);
        if results.reports.is_empty() {
            results.reports = self.empty_reports();
        }
        results
    }
}

/// Runs the full pipeline over `files` with the language's built-in rules.
pub fn run_pipeline(
    files: &[PathBuf],
    language: &str,
    configs: Vec<RuleConfig>,
    created: &str,
) -> Result<ValidationResults> {
    Ok(Pipeline::for_language(language, configs)?.run(files, created))
}

pub fn path_string(path: &Path) -> String {
    path.to_string_lossy().into_owned()
}

/// Expands directories into the files matching the language's extensions.
/// Explicit file arguments are kept as given. The result is sorted.
pub fn collect_inputs(paths: &[PathBuf], frontend: &dyn Frontend) -> Vec<PathBuf> {
    let mut out = Vec::new();
    for path in paths {
        if path.is_dir() {
            for entry in walkdir::WalkDir::new(path).into_iter().filter_map(|e| e.ok()) {
                let p = entry.path();
                let matches =
                    p.extension().and_then(|e| e.to_str()).is_some_and(|e| frontend.extensions().contains(&e));
                if entry.file_type().is_file() && matches {
                    out.push(p.to_path_buf());
                }
            }
        } else {
            out.push(path.clone());
        }
    }
    out.sort();
    out.dedup();
    out
}
