//! Frontend for textual sequence charts.
//!
//! ```text
//! chart   := "sequencediagram" IDENT "{" objectDecl* block? "}"
//! object  := "object" IDENT ":" IDENT ";"
//! block   := "{" (message | block)* "}"
//! message := IDENT ("->" | "<-") IDENT ":" ["<<" IDENT ">>"]
//!            (IDENT "(" args? ")" | "return" IDENT?) ";"
//! ```

use std::collections::BTreeSet;

use crate::ast::{AstNode, SourceSpan};
use crate::error::{Diagnostic, DiagnosticKind};
use crate::pipeline::Frontend;
use crate::registry::Registry;
use crate::symtab::{SymbolTable, VariableBinding};

pub const LANG: &str = "seqdiag";

#[derive(Debug, Clone, Copy, Default)]
pub struct SeqDiag;

impl Frontend for SeqDiag {
    fn language(&self) -> &'static str {
        LANG
    }

    fn extensions(&self) -> &'static [&'static str] {
        &["sd"]
    }

    fn parse(&self, file: &str, content: &str) -> Result<AstNode, Diagnostic> {
        parse_seq(file, content)
    }

    fn build_symbols(&self, ast: &AstNode) -> SymbolTable {
        let mut table = SymbolTable::new(ast.node_id);
        for node in ast.descendants() {
            table.set_node_scope(node.node_id, SymbolTable::GLOBAL);
            if node.is("ObjectDecl") {
                table.add_variable(VariableBinding {
                    name: node.attr_or_empty("name").to_string(),
                    declared_type: node.attr_or_empty("type").to_string(),
                    scope: SymbolTable::GLOBAL,
                    has_initializer: true,
                    is_member: false,
                    is_parameter: false,
                    is_loop_index: false,
                    decl_span: node.anchor_span(),
                    node_id: node.node_id,
                });
            }
        }
        table
    }

    fn registry(&self) -> Registry {
        crate::rules::seqdiag::registry()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Tok {
    Ident,
    Literal,
    Punct,
}

#[derive(Debug, Clone)]
struct Token {
    kind: Tok,
    text: String,
    span: SourceSpan,
}

const PUNCTS: &[&str] = &["->", "<-", "<<", ">>", "{", "}", ";", ":", "(", ")", ","];

fn lex(file: &str, text: &str) -> Result<Vec<Token>, Diagnostic> {
    let mut tokens = Vec::new();
    for (line_idx, line) in text.lines().enumerate() {
        let row = line_idx as u32 + 1;
        let chars: Vec<char> = line.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let col = i as u32 + 1;
            if c.is_whitespace() {
                i += 1;
                continue;
            }
            if c == '/' && chars.get(i + 1) == Some(&'/') {
                break;
            }
            let start = i;
            let kind = if c.is_alphanumeric() || c == '_' {
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_' || chars[i] == '.') {
                    i += 1;
                }
                if c.is_ascii_digit() {
                    Tok::Literal
                } else {
                    Tok::Ident
                }
            } else if c == '"' {
                i += 1;
                while i < chars.len() && chars[i] != '"' {
                    i += if chars[i] == '\\' { 2 } else { 1 };
                }
                if i >= chars.len() {
                    return Err(Diagnostic::new(
                        DiagnosticKind::Lex,
                        SourceSpan::point(file, row, col),
                        "unterminated string literal".to_string(),
                    ));
                }
                i += 1;
                Tok::Literal
            } else if let Some(p) =
                PUNCTS.iter().find(|p| p.chars().enumerate().all(|(k, pc)| chars.get(i + k) == Some(&pc)))
            {
                i += p.len();
                Tok::Punct
            } else {
                return Err(Diagnostic::new(
                    DiagnosticKind::Lex,
                    SourceSpan::point(file, row, col),
                    format!("unexpected character `{c}`"),
                ));
            };
            let text: String = chars[start..i.min(chars.len())].iter().collect();
            let end_col = i.min(chars.len()) as u32;
            tokens.push(Token { kind, text, span: SourceSpan::new(file, row, col, row, end_col) });
        }
    }
    Ok(tokens)
}

/// Parses one chart. Messages referring to undeclared objects are fatal.
pub fn parse_seq(file: &str, text: &str) -> Result<AstNode, Diagnostic> {
    let tokens = lex(file, text)?;
    let mut p = SeqParser { file, tokens: &tokens, pos: 0, objects: BTreeSet::new() };
    let mut chart = p.chart()?;
    if p.pos < tokens.len() {
        return Err(p.error("end of input"));
    }
    chart.assign_ids();
    Ok(chart)
}

struct SeqParser<'a> {
    file: &'a str,
    tokens: &'a [Token],
    pos: usize,
    objects: BTreeSet<String>,
}

impl<'a> SeqParser<'a> {
    fn peek(&self) -> Option<&'a Token> {
        self.tokens.get(self.pos)
    }

    fn at(&self, text: &str) -> bool {
        self.peek().is_some_and(|t| t.text == text && t.kind != Tok::Literal)
    }

    fn error(&self, expected: &str) -> Diagnostic {
        match self.peek() {
            Some(t) => Diagnostic::new(
                DiagnosticKind::Parse,
                t.span.clone(),
                format!("expected {expected}, found `{}`", t.text),
            ),
            None => {
                let span = self
                    .tokens
                    .last()
                    .map(|t| SourceSpan::point(self.file, t.span.end_row, t.span.end_col))
                    .unwrap_or_else(|| SourceSpan::point(self.file, 1, 1));
                Diagnostic::new(DiagnosticKind::Parse, span, format!("expected {expected}, found end of input"))
            }
        }
    }

    fn expect(&mut self, text: &str) -> Result<&'a Token, Diagnostic> {
        if self.at(text) {
            self.pos += 1;
            Ok(&self.tokens[self.pos - 1])
        } else {
            Err(self.error(&format!("`{text}`")))
        }
    }

    fn ident(&mut self) -> Result<&'a Token, Diagnostic> {
        match self.peek() {
            Some(t) if t.kind == Tok::Ident => {
                self.pos += 1;
                Ok(t)
            }
            _ => Err(self.error("identifier")),
        }
    }

    fn chart(&mut self) -> Result<AstNode, Diagnostic> {
        let kw = self.expect("sequencediagram")?;
        let name = self.ident()?;
        self.expect("{")?;
        let mut chart = AstNode::new(LANG, "SequenceDiagram", kw.span.clone())
            .with_attr("name", name.text.clone())
            .with_anchor(name.span.clone());
        while self.at("object") {
            let start = self.expect("object")?;
            let obj = self.ident()?;
            self.expect(":")?;
            let ty = self.ident()?;
            let end = self.expect(";")?;
            self.objects.insert(obj.text.clone());
            chart.children.push(
                AstNode::new(LANG, "ObjectDecl", start.span.join(&end.span))
                    .with_attr("name", obj.text.clone())
                    .with_attr("type", ty.text.clone())
                    .with_anchor(obj.span.clone()),
            );
        }
        if self.at("{") {
            chart.children.push(self.block()?);
        }
        let close = self.expect("}")?;
        chart.span = kw.span.join(&close.span);
        Ok(chart)
    }

    fn block(&mut self) -> Result<AstNode, Diagnostic> {
        let open = self.expect("{")?;
        let mut block = AstNode::new(LANG, "InteractionBlock", open.span.clone());
        loop {
            if self.at("}") {
                break;
            }
            if self.at("{") {
                block.children.push(self.block()?);
            } else if self.peek().is_some() {
                block.children.push(self.message()?);
            } else {
                return Err(self.error("`}`"));
            }
        }
        let close = self.expect("}")?;
        block.span = open.span.join(&close.span);
        Ok(block)
    }

    fn message(&mut self) -> Result<AstNode, Diagnostic> {
        let source = self.ident()?;
        let direction = if self.at("->") {
            "CALL"
        } else if self.at("<-") {
            "RETURN"
        } else {
            return Err(self.error("`->` or `<-`"));
        };
        let arrow = &self.tokens[self.pos];
        self.pos += 1;
        let target = self.ident()?;
        self.expect(":")?;
        let mut stereotype = String::new();
        if self.at("<<") {
            self.pos += 1;
            stereotype = self.ident()?.text.clone();
            self.expect(">>")?;
        }
        let payload = if self.at("return") {
            self.pos += 1;
            match self.peek() {
                Some(t) if t.kind != Tok::Punct => {
                    self.pos += 1;
                    format!("return {}", t.text)
                }
                _ => "return".to_string(),
            }
        } else {
            let callee = self.ident()?;
            self.expect("(")?;
            let mut args = Vec::new();
            while !self.at(")") {
                match self.peek() {
                    Some(t) if t.kind != Tok::Punct => {
                        self.pos += 1;
                        args.push(t.text.clone());
                    }
                    _ => return Err(self.error("argument")),
                }
                if !self.at(",") {
                    break;
                }
                self.pos += 1;
            }
            self.expect(")")?;
            format!("{}({})", callee.text, args.join(", "))
        };
        let end = self.expect(";")?;

        for obj in [source, target] {
            if !self.objects.contains(&obj.text) {
                return Err(Diagnostic::new(
                    DiagnosticKind::UndeclaredObject,
                    obj.span.clone(),
                    format!("object `{}` is not declared", obj.text),
                ));
            }
        }
        Ok(AstNode::new(LANG, "Message", source.span.join(&end.span))
            .with_attr("source", source.text.clone())
            .with_attr("target", target.text.clone())
            .with_attr("direction", direction)
            .with_attr("stereotype", stereotype)
            .with_attr("payload", payload)
            .with_anchor(arrow.span.clone()))
    }
}
