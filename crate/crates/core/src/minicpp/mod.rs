//! Frontend for a preprocessed C++ subset.

pub mod lexer;
pub mod parser;
pub mod symbols;

use crate::ast::AstNode;
use crate::error::Diagnostic;
use crate::pipeline::Frontend;
use crate::registry::Registry;
use crate::symtab::SymbolTable;

pub const LANG: &str = "minicpp";

/// Lexer, parser and symbol builder for the C++ subset.
#[derive(Debug, Clone, Copy, Default)]
pub struct MiniCpp;

impl Frontend for MiniCpp {
    fn language(&self) -> &'static str {
        LANG
    }

    fn extensions(&self) -> &'static [&'static str] {
        &["cpp", "ii"]
    }

    fn parse(&self, file: &str, content: &str) -> Result<AstNode, Diagnostic> {
        parser::parse_source(file, content)
    }

    fn build_symbols(&self, ast: &AstNode) -> SymbolTable {
        symbols::build_symbols(ast)
    }

    fn registry(&self) -> Registry {
        crate::rules::minicpp::registry()
    }
}
