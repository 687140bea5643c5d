//! Extensible guideline validation: language frontends produce a syntax tree
//! and symbol table, one dispatching visitor notifies every registered rule,
//! and the merged findings are serialized as XML and rendered as HTML.

pub mod ast;
pub mod ci;
pub mod config;
pub mod error;
pub mod minicpp;
pub mod pipeline;
pub mod registry;
pub mod report;
pub mod results;
pub mod rule;
pub mod rules;
pub mod seqdiag;
pub mod symtab;
pub mod visitor;

pub use ast::{AstNode, SourceSpan};
pub use config::{configs_for, default_configs, load_config, RuleConfig};
pub use error::{Diagnostic, DiagnosticKind, Result, VfError};
pub use pipeline::{frontend, run_pipeline, AnalysisRoot, Frontend, Pipeline};
pub use registry::Registry;
pub use results::{RuleInfo, RuleReport, ValidationResults};
pub use rule::{Criticality, Finding, Priority, Rule, RuleContext, RuleDescriptor, RuleEntry};
pub use symtab::SymbolTable;
