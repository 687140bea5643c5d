//! Recursive-descent parser for the C++ subset.
//!
//! Type names are fed into a [`SymbolTable`] as they are declared, and the
//! table is consulted whenever a statement starts with an identifier to decide
//! between a declaration (`T * x;`) and an expression (`a * b;`).

use crate::ast::{AstNode, SourceSpan};
use crate::error::{Diagnostic, DiagnosticKind};
use crate::symtab::{Binding, ClassBinding, ScopeId, ScopeKind, SymbolTable};

use super::lexer::{lex, Token, TokenKind};
use super::LANG;

const BUILTIN_TYPES: &[&str] =
    &["void", "bool", "char", "short", "int", "long", "float", "double", "signed", "unsigned"];
const CV: &[&str] = &["const", "volatile"];
const DECL_SPECIFIERS: &[&str] = &["virtual", "static", "inline", "explicit", "extern", "mutable"];
const ASSIGN_OPS: &[&str] = &["=", "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=", "<<=", ">>="];
const BINARY_LEVELS: &[&[&str]] = &[
    &["||"],
    &["&&"],
    &["|"],
    &["^"],
    &["&"],
    &["==", "!="],
    &["<", ">", "<=", ">="],
    &["<<", ">>"],
    &["+", "-"],
    &["*", "/", "%"],
];

/// Outcome of the statement-level semantic predicate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StmtClass {
    Declaration,
    Expression,
}

/// Decides whether a statement beginning with an identifier (possibly
/// qualified, `A::B`) declares something. It does iff the name resolves to a
/// type or constructor from `scope`.
pub fn disambiguate_stmt(tokens: &[Token], table: &SymbolTable, scope: ScopeId) -> StmtClass {
    let segments = qualified_prefix(tokens);
    if segments.is_empty() {
        return StmtClass::Expression;
    }
    match table.is_qualified_type_name(scope, &segments) {
        Some(_) => StmtClass::Declaration,
        None => StmtClass::Expression,
    }
}

fn qualified_prefix(tokens: &[Token]) -> Vec<&str> {
    let mut segments = Vec::new();
    let mut i = 0;
    while let Some(t) = tokens.get(i).filter(|t| t.kind == TokenKind::Ident) {
        segments.push(t.text.as_str());
        let sep = tokens.get(i + 1).is_some_and(|t| t.is_punct("::"));
        let next_ident = tokens.get(i + 2).is_some_and(|t| t.kind == TokenKind::Ident);
        if sep && next_ident {
            i += 2;
        } else {
            break;
        }
    }
    segments
}

/// Lexes and parses a unit with a fresh type table.
pub fn parse_source(file: &str, text: &str) -> Result<AstNode, Diagnostic> {
    let tokens = lex(file, text)?;
    let mut table = SymbolTable::new(0);
    parse(file, &tokens, &mut table)
}

/// Parses a token stream into a `TranslationUnit`, declaring classes, enums,
/// typedefs and namespaces in `table` as they are encountered.
pub fn parse(file: &str, tokens: &[Token], table: &mut SymbolTable) -> Result<AstNode, Diagnostic> {
    let mut parser = Parser { tokens, pos: 0, file, table, scope: SymbolTable::GLOBAL };
    let mut unit = parser.parse_translation_unit()?;
    unit.assign_ids();
    Ok(unit)
}

#[derive(Clone)]
struct ClassCtx {
    name: String,
    access: &'static str,
}

type PResult<T> = Result<T, Diagnostic>;

struct Parser<'t> {
    tokens: &'t [Token],
    pos: usize,
    file: &'t str,
    table: &'t mut SymbolTable,
    scope: ScopeId,
}

impl<'t> Parser<'t> {
    // ---- token helpers --------------------------------------------------

    fn peek(&self) -> Option<&'t Token> {
        self.tokens.get(self.pos)
    }

    fn peek_at(&self, ahead: usize) -> Option<&'t Token> {
        self.tokens.get(self.pos + ahead)
    }

    fn at_punct(&self, p: &str) -> bool {
        self.peek().is_some_and(|t| t.is_punct(p))
    }

    fn at_keyword(&self, k: &str) -> bool {
        self.peek().is_some_and(|t| t.is_keyword(k))
    }

    fn at_any_keyword(&self, ks: &[&str]) -> bool {
        self.peek().is_some_and(|t| t.kind == TokenKind::Keyword && ks.contains(&t.text.as_str()))
    }

    fn at_ident(&self) -> bool {
        self.peek().is_some_and(|t| t.kind == TokenKind::Ident)
    }

    fn bump(&mut self) -> &'t Token {
        let t = &self.tokens[self.pos];
        self.pos += 1;
        t
    }

    fn eat_punct(&mut self, p: &str) -> bool {
        if self.at_punct(p) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn eat_keyword(&mut self, k: &str) -> bool {
        if self.at_keyword(k) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect_punct(&mut self, p: &str) -> PResult<&'t Token> {
        if self.at_punct(p) {
            Ok(self.bump())
        } else {
            Err(self.error(&format!("`{p}`")))
        }
    }

    fn expect_ident(&mut self) -> PResult<&'t Token> {
        if self.at_ident() {
            Ok(self.bump())
        } else {
            Err(self.error("identifier"))
        }
    }

    fn error(&self, expected: &str) -> Diagnostic {
        match self.peek() {
            Some(t) => Diagnostic::new(
                DiagnosticKind::Parse,
                t.span.clone(),
                format!("expected {expected}, found `{}`", t.text),
            ),
            None => Diagnostic::new(
                DiagnosticKind::Parse,
                self.eof_span(),
                format!("expected {expected}, found end of input"),
            ),
        }
    }

    fn unsupported(&self, what: &str) -> Diagnostic {
        let span = self.peek().map(|t| t.span.clone()).unwrap_or_else(|| self.eof_span());
        Diagnostic::new(DiagnosticKind::Parse, span, format!("{what} is not supported"))
    }

    fn eof_span(&self) -> SourceSpan {
        match self.tokens.last() {
            Some(t) => SourceSpan::point(self.file, t.span.end_row, t.span.end_col),
            None => SourceSpan::point(self.file, 1, 1),
        }
    }

    fn span_from(&self, start: usize) -> SourceSpan {
        let first = &self.tokens[start.min(self.tokens.len() - 1)].span;
        let last_idx = self.pos.saturating_sub(1).max(start).min(self.tokens.len() - 1);
        first.join(&self.tokens[last_idx].span)
    }

    fn node(&self, kind: &str, start: usize) -> AstNode {
        AstNode::new(LANG, kind, self.span_from(start))
    }

    fn with_scope<T>(&mut self, scope: ScopeId, f: impl FnOnce(&mut Self) -> PResult<T>) -> PResult<T> {
        let saved = std::mem::replace(&mut self.scope, scope);
        let result = f(self);
        self.scope = saved;
        result
    }

    fn push_scope(&mut self, kind: ScopeKind, name: Option<String>) -> ScopeId {
        self.table.add_scope(kind, name, self.scope, 0)
    }

    // ---- declarations ---------------------------------------------------

    fn parse_translation_unit(&mut self) -> PResult<AstNode> {
        let mut children = Vec::new();
        while self.peek().is_some() {
            children.extend(self.parse_external_decl(None)?);
        }
        let span = if self.tokens.is_empty() {
            SourceSpan::point(self.file, 1, 1)
        } else {
            self.tokens[0].span.join(&self.tokens[self.tokens.len() - 1].span)
        };
        let mut unit = AstNode::new(LANG, "TranslationUnit", span);
        unit.children = children;
        Ok(unit)
    }

    fn parse_external_decl(&mut self, class: Option<&ClassCtx>) -> PResult<Vec<AstNode>> {
        let Some(tok) = self.peek() else { return Err(self.error("declaration")) };
        if tok.kind == TokenKind::Keyword {
            match tok.text.as_str() {
                "namespace" if class.is_none() => return Ok(vec![self.parse_namespace()?]),
                "using" if class.is_none() => return Ok(vec![self.parse_using()?]),
                "class" | "struct" => return Ok(vec![self.parse_class()?]),
                "enum" => return Ok(vec![self.parse_enum()?]),
                "typedef" => return Ok(vec![self.parse_typedef()?]),
                "template" => return Err(self.unsupported("`template`")),
                "operator" => return Err(self.unsupported("operator overloading")),
                "union" => return Err(self.unsupported("`union`")),
                "friend" => return Err(self.unsupported("`friend`")),
                _ => {}
            }
        }
        if self.eat_punct(";") {
            return Ok(Vec::new());
        }
        self.parse_simple_declaration(class, false)
    }

    fn parse_namespace(&mut self) -> PResult<AstNode> {
        let start = self.pos;
        self.bump();
        let name_tok = if self.at_ident() { Some(self.bump()) } else { None };
        let name = name_tok.map(|t| t.text.clone()).unwrap_or_default();
        self.expect_punct("{")?;
        let existing = self.table.lookup_local(self.scope, &name).find_map(|b| match b {
            Binding::Namespace { scope, .. } => Some(*scope),
            _ => None,
        });
        let scope = match existing {
            Some(s) => s,
            None => {
                let s = self.push_scope(ScopeKind::Namespace, Some(name.clone()));
                self.table.declare(self.scope, Binding::Namespace { name: name.clone(), scope: s });
                s
            }
        };
        let children = self.with_scope(scope, |p| {
            let mut children = Vec::new();
            while !p.at_punct("}") {
                if p.peek().is_none() {
                    return Err(p.error("`}`"));
                }
                children.extend(p.parse_external_decl(None)?);
            }
            Ok(children)
        })?;
        self.expect_punct("}")?;
        self.eat_punct(";");
        let mut node = self.node("NamespaceDef", start).with_attr("name", name);
        if let Some(t) = name_tok {
            node.anchor = Some(t.span.clone());
        }
        node.children = children;
        Ok(node)
    }

    fn parse_using(&mut self) -> PResult<AstNode> {
        let start = self.pos;
        self.bump();
        let is_namespace = self.eat_keyword("namespace");
        let (name, _) = self.parse_qualified_name()?;
        self.expect_punct(";")?;
        Ok(self.node("UsingDirective", start).with_attr("name", name).with_attr("namespace", is_namespace.to_string()))
    }

    fn parse_class(&mut self) -> PResult<AstNode> {
        let start = self.pos;
        let key = self.bump().text.clone();
        let name_tok = self.expect_ident()?;
        let name = name_tok.text.clone();
        let default_access = if key == "struct" { "public" } else { "private" };

        let class_scope = self.push_scope(ScopeKind::Class, Some(name.clone()));
        self.table.add_class(
            self.scope,
            ClassBinding {
                name: name.clone(),
                scope: class_scope,
                declared_in: self.scope,
                bases: Vec::new(),
                functions: Vec::new(),
                data_members: Vec::new(),
                decl_span: name_tok.span.clone(),
                node_id: 0,
            },
        );

        if self.eat_punct(";") {
            return Ok(self
                .node("ClassDef", start)
                .with_attr("name", name)
                .with_attr("key", key)
                .with_attr("forward", "true")
                .with_anchor(name_tok.span.clone()));
        }

        let mut children = Vec::new();
        if self.eat_punct(":") {
            loop {
                children.push(self.parse_base_spec(default_access)?);
                if !self.eat_punct(",") {
                    break;
                }
            }
        }
        self.expect_punct("{")?;
        let ctx = ClassCtx { name: name.clone(), access: default_access };
        let members = self.with_scope(class_scope, |p| p.parse_members(ctx))?;
        children.extend(members);
        self.expect_punct("}")?;
        if !self.at_punct(";") {
            return Err(self.error("`;` after class definition"));
        }
        self.bump();
        let mut node = self
            .node("ClassDef", start)
            .with_attr("name", name)
            .with_attr("key", key)
            .with_anchor(name_tok.span.clone());
        node.children = children;
        Ok(node)
    }

    fn parse_base_spec(&mut self, default_access: &str) -> PResult<AstNode> {
        let start = self.pos;
        let mut is_virtual = self.eat_keyword("virtual");
        let mut access = default_access.to_string();
        if self.at_any_keyword(&["public", "protected", "private"]) {
            access = self.bump().text.clone();
        }
        is_virtual |= self.eat_keyword("virtual");
        let name_start = self.pos;
        let (name, _) = self.parse_qualified_name()?;
        let anchor = self.span_from(name_start);
        let mut node =
            self.node("BaseSpec", start).with_attr("access", access).with_attr("name", name).with_anchor(anchor);
        if is_virtual {
            node.set_attr("virtual", "true");
        }
        Ok(node)
    }

    fn parse_members(&mut self, mut ctx: ClassCtx) -> PResult<Vec<AstNode>> {
        let mut members = Vec::new();
        while !self.at_punct("}") {
            if self.peek().is_none() {
                return Err(self.error("`}`"));
            }
            if self.at_any_keyword(&["public", "protected", "private"])
                && self.peek_at(1).is_some_and(|t| t.is_punct(":"))
            {
                let start = self.pos;
                let access = self.bump();
                self.bump();
                ctx.access = match access.text.as_str() {
                    "public" => "public",
                    "protected" => "protected",
                    _ => "private",
                };
                members.push(self.node("AccessSection", start).with_attr("access", ctx.access));
                continue;
            }
            for mut member in self.parse_external_decl(Some(&ctx))? {
                member.set_attr("access", ctx.access);
                members.push(member);
            }
        }
        Ok(members)
    }

    fn parse_enum(&mut self) -> PResult<AstNode> {
        let start = self.pos;
        let enum_tok = self.bump();
        if self.at_any_keyword(&["class", "struct"]) {
            self.bump();
        }
        let name_tok = if self.at_ident() { Some(self.bump()) } else { None };
        let name = name_tok.map(|t| t.text.clone()).unwrap_or_default();
        if let Some(t) = name_tok {
            self.table.declare(self.scope, Binding::Enum { name: t.text.clone(), node_id: 0 });
        }
        if self.eat_punct(":") {
            self.parse_type_base()?.ok_or_else(|| self.error("enum base type"))?;
        }
        let mut children = Vec::new();
        self.expect_punct("{")?;
        while !self.at_punct("}") {
            let estart = self.pos;
            let etok = self.expect_ident()?;
            let mut enumerator = AstNode::new(LANG, "Enumerator", etok.span.clone())
                .with_attr("name", etok.text.clone())
                .with_anchor(etok.span.clone());
            if self.eat_punct("=") {
                let value = self.parse_conditional()?.with_attr("role", "init");
                enumerator.children.push(value);
                enumerator.set_attr("has_init", "true");
            } else {
                enumerator.set_attr("has_init", "false");
            }
            enumerator.span = self.span_from(estart);
            children.push(enumerator);
            if !self.eat_punct(",") {
                break;
            }
        }
        self.expect_punct("}")?;
        self.expect_punct(";")?;
        let anchor = name_tok.map(|t| t.span.clone()).unwrap_or_else(|| enum_tok.span.clone());
        let mut node = self.node("EnumDef", start).with_attr("name", name).with_anchor(anchor);
        node.children = children;
        Ok(node)
    }

    fn parse_typedef(&mut self) -> PResult<AstNode> {
        let start = self.pos;
        self.bump();
        let base = self.parse_type_base()?.ok_or_else(|| self.error("type"))?;
        let ptr = self.parse_ptr_ops();
        let name_tok = self.expect_ident()?;
        let mut ty = format!("{base}{ptr}");
        while self.eat_punct("[") {
            if !self.at_punct("]") {
                self.parse_expression()?;
            }
            self.expect_punct("]")?;
            ty.push_str("[]");
        }
        self.expect_punct(";")?;
        self.table
            .declare(self.scope, Binding::Typedef { name: name_tok.text.clone(), target: ty.clone(), node_id: 0 });
        Ok(self
            .node("TypedefDecl", start)
            .with_attr("name", name_tok.text.clone())
            .with_attr("type", ty)
            .with_anchor(name_tok.span.clone()))
    }

    /// Base type: cv-qualifiers plus builtin keywords, or a (qualified) name.
    fn parse_type_base(&mut self) -> PResult<Option<String>> {
        let mut words: Vec<String> = Vec::new();
        let mut has_core = false;
        loop {
            if self.at_any_keyword(CV) {
                words.push(self.bump().text.clone());
            } else if self.at_any_keyword(BUILTIN_TYPES) {
                words.push(self.bump().text.clone());
                has_core = true;
            } else if !has_core && self.at_ident() {
                let (name, _) = self.parse_qualified_name()?;
                words.push(name);
                has_core = true;
            } else {
                break;
            }
        }
        Ok(if has_core {
            Some(words.join(" "))
        } else if words.is_empty() {
            None
        } else {
            Some(words.join(" "))
        })
    }

    fn parse_ptr_ops(&mut self) -> String {
        let mut out = String::new();
        loop {
            if self.at_punct("*") || self.at_punct("&") || self.at_punct("&&") {
                out.push_str(&self.bump().text);
            } else if !out.is_empty() && self.at_any_keyword(CV) {
                out.push(' ');
                out.push_str(&self.bump().text);
            } else {
                return out;
            }
        }
    }

    /// `A::B::c` -> ("A::B::c", index of the last segment's token).
    fn parse_qualified_name(&mut self) -> PResult<(String, usize)> {
        let mut name = self.expect_ident()?.text.clone();
        let mut last = self.pos - 1;
        while self.at_punct("::") && self.peek_at(1).is_some_and(|t| t.kind == TokenKind::Ident) {
            self.bump();
            last = self.pos;
            name.push_str("::");
            name.push_str(&self.bump().text);
        }
        Ok((name, last))
    }

    /// Detects `A::A(` (constructor) or `A::~A(` (destructor) definitions.
    fn peek_out_of_class_special(&self) -> Option<(Vec<String>, bool)> {
        let mut i = self.pos;
        let mut segments = Vec::new();
        loop {
            let t = self.tokens.get(i).filter(|t| t.kind == TokenKind::Ident)?;
            segments.push(t.text.clone());
            if !self.tokens.get(i + 1)?.is_punct("::") {
                break;
            }
            let next = self.tokens.get(i + 2)?;
            if next.is_punct("~") {
                let dtor = self.tokens.get(i + 3).filter(|t| t.kind == TokenKind::Ident)?;
                let paren = self.tokens.get(i + 4)?.is_punct("(");
                return (paren && dtor.text == *segments.last()?).then_some((segments, true));
            }
            i += 2;
        }
        let n = segments.len();
        let paren = self.tokens.get(i + 1).is_some_and(|t| t.is_punct("("));
        (n >= 2 && paren && segments[n - 1] == segments[n - 2]).then(|| {
            segments.pop();
            (segments, false)
        })
    }

    fn parse_specifiers(&mut self) -> Vec<String> {
        let mut specs = Vec::new();
        while self.at_any_keyword(DECL_SPECIFIERS) {
            specs.push(self.bump().text.clone());
        }
        specs
    }

    /// Function, constructor, destructor or variable declaration(s).
    fn parse_simple_declaration(&mut self, class: Option<&ClassCtx>, in_block: bool) -> PResult<Vec<AstNode>> {
        let start = self.pos;
        let specs = self.parse_specifiers();

        if let Some(ctx) = class {
            if self.at_punct("~") {
                self.bump();
                let name_tok = self.expect_ident()?;
                let name = format!("~{}", name_tok.text);
                return Ok(vec![self.parse_function_rest(
                    start,
                    "Destructor",
                    name,
                    name_tok,
                    None,
                    String::new(),
                    specs,
                )?]);
            }
            if self.peek().is_some_and(|t| t.kind == TokenKind::Ident && t.text == ctx.name)
                && self.peek_at(1).is_some_and(|t| t.is_punct("("))
            {
                let name_tok = self.bump();
                let name = name_tok.text.clone();
                return Ok(vec![self.parse_function_rest(
                    start,
                    "Constructor",
                    name,
                    name_tok,
                    None,
                    String::new(),
                    specs,
                )?]);
            }
        } else if !in_block {
            if let Some((qualifier, is_dtor)) = self.peek_out_of_class_special() {
                for _ in 0..qualifier.len() {
                    self.bump();
                    self.bump();
                }
                let qualifier = qualifier.join("::");
                if is_dtor {
                    self.bump();
                }
                let name_tok = self.bump();
                let (kind, name) = if is_dtor {
                    ("Destructor", format!("~{}", name_tok.text))
                } else {
                    ("Constructor", name_tok.text.clone())
                };
                return Ok(vec![self.parse_function_rest(
                    start,
                    kind,
                    name,
                    name_tok,
                    Some(qualifier),
                    String::new(),
                    specs,
                )?]);
            }
        }

        let base = self.parse_type_base()?.ok_or_else(|| self.error("declaration"))?;
        let ptr = self.parse_ptr_ops();
        let (qualified, name_idx) = if in_block {
            let t = self.expect_ident()?;
            (t.text.clone(), self.pos - 1)
        } else {
            self.parse_qualified_name()?
        };
        let name_tok = &self.tokens[name_idx];
        let (qualifier, name) = match qualified.rsplit_once("::") {
            Some((q, n)) => (Some(q.to_string()), n.to_string()),
            None => (None, qualified.clone()),
        };

        if self.at_punct("(") && !in_block {
            let ret = format!("{base}{ptr}");
            return Ok(vec![self.parse_function_rest(start, "FunctionDef", name, name_tok, qualifier, ret, specs)?]);
        }
        if qualifier.is_some() {
            return Err(Diagnostic::new(
                DiagnosticKind::Parse,
                name_tok.span.clone(),
                "qualified names are only supported for function definitions".to_string(),
            ));
        }

        let mut decls = Vec::new();
        let mut decl_start = start;
        let mut ty = format!("{base}{ptr}");
        let mut name_tok = name_tok;
        loop {
            let mut var = AstNode::new(LANG, "VarDecl", name_tok.span.clone())
                .with_attr("name", name_tok.text.clone())
                .with_anchor(name_tok.span.clone());
            for s in &specs {
                var.set_attr(s, "true");
            }
            let mut has_init = false;
            while self.eat_punct("[") {
                if !self.at_punct("]") {
                    var.children.push(self.parse_expression()?.with_attr("role", "size"));
                }
                self.expect_punct("]")?;
                var.set_attr("array", "true");
            }
            if self.eat_punct("=") {
                has_init = true;
                if self.at_punct("{") {
                    var.children.push(self.parse_init_list()?.with_attr("role", "init"));
                } else {
                    var.children.push(self.parse_assignment()?.with_attr("role", "init"));
                }
            } else if self.at_punct("(") {
                self.bump();
                has_init = true;
                while !self.at_punct(")") {
                    var.children.push(self.parse_assignment()?.with_attr("role", "init"));
                    if !self.eat_punct(",") {
                        break;
                    }
                }
                self.expect_punct(")")?;
            } else if self.at_punct("{") && in_block {
                has_init = true;
                var.children.push(self.parse_init_list()?.with_attr("role", "init"));
            }
            var.set_attr("type", ty.clone());
            var.set_attr("has_init", has_init.to_string());
            var.span = self.span_from(decl_start);
            decls.push(var);

            if !self.eat_punct(",") {
                break;
            }
            decl_start = self.pos;
            ty = format!("{base}{}", self.parse_ptr_ops());
            name_tok = self.expect_ident()?;
        }
        self.expect_punct(";")?;
        Ok(decls)
    }

    fn parse_init_list(&mut self) -> PResult<AstNode> {
        let start = self.pos;
        self.expect_punct("{")?;
        let mut elements = Vec::new();
        while !self.at_punct("}") {
            let e = if self.at_punct("{") { self.parse_init_list()? } else { self.parse_assignment()? };
            elements.push(e.with_attr("role", "element"));
            if !self.eat_punct(",") {
                break;
            }
        }
        self.expect_punct("}")?;
        let mut node = self.node("Literal", start).with_attr("type", "init_list");
        node.children = elements;
        Ok(node)
    }

    #[allow(clippy::too_many_arguments)]
    fn parse_function_rest(
        &mut self,
        start: usize,
        kind: &str,
        name: String,
        name_tok: &Token,
        qualifier: Option<String>,
        return_type: String,
        specs: Vec<String>,
    ) -> PResult<AstNode> {
        // A destructor's name starts at the `~` just before the identifier.
        let anchor = if kind == "Destructor" {
            self.tokens[self.pos - 2].span.join(&name_tok.span)
        } else {
            name_tok.span.clone()
        };
        let mut node = AstNode::new(LANG, kind, name_tok.span.clone()).with_attr("name", name).with_anchor(anchor);
        if kind == "FunctionDef" {
            node.set_attr("return_type", return_type);
        }
        for s in &specs {
            node.set_attr(s, "true");
        }

        self.expect_punct("(")?;
        if self.at_keyword("void") && self.peek_at(1).is_some_and(|t| t.is_punct(")")) {
            self.bump();
        }
        while !self.at_punct(")") {
            node.children.push(self.parse_param()?);
            if !self.eat_punct(",") {
                break;
            }
        }
        self.expect_punct(")")?;
        if self.eat_keyword("const") {
            node.set_attr("const", "true");
        }
        if self.at_punct("=") {
            self.bump();
            let zero = self.peek().filter(|t| t.kind == TokenKind::IntLit && t.text == "0");
            if zero.is_none() {
                return Err(self.error("`0` for a pure virtual function"));
            }
            self.bump();
            node.set_attr("pure", "true");
        }

        let parent = qualifier
            .as_deref()
            .and_then(|q| self.table.find_class(self.scope, q))
            .map(|c| self.table.class(c).scope)
            .unwrap_or(self.scope);
        if let Some(q) = qualifier {
            node.set_attr("qualifier", q);
        }

        if kind == "Constructor" && self.eat_punct(":") {
            loop {
                let istart = self.pos;
                let member = self.expect_ident()?;
                let callee = AstNode::new(LANG, "IdentExpr", member.span.clone())
                    .with_attr("name", member.text.clone())
                    .with_attr("role", "callee");
                let mut call = AstNode::new(LANG, "CallExpr", member.span.clone()).with_child(callee);
                self.expect_punct("(")?;
                while !self.at_punct(")") {
                    call.children.push(self.parse_assignment()?.with_attr("role", "arg"));
                    if !self.eat_punct(",") {
                        break;
                    }
                }
                self.expect_punct(")")?;
                call.span = self.span_from(istart);
                node.children.push(call.with_attr("role", "init"));
                if !self.eat_punct(",") {
                    break;
                }
            }
        }

        if self.at_punct("{") {
            let fn_scope = self.table.add_scope(ScopeKind::Function, None, parent, 0);
            let body = self.with_scope(fn_scope, |p| p.parse_compound(false))?;
            node.children.push(body.with_attr("role", "body"));
            node.set_attr("has_body", "true");
        } else {
            self.expect_punct(";")?;
            node.set_attr("has_body", "false");
        }
        node.span = self.span_from(start);
        Ok(node)
    }

    fn parse_param(&mut self) -> PResult<AstNode> {
        let start = self.pos;
        let base = self.parse_type_base()?.ok_or_else(|| self.error("parameter type"))?;
        let mut ty = format!("{base}{}", self.parse_ptr_ops());
        let name_tok = if self.at_ident() { Some(self.bump()) } else { None };
        while self.eat_punct("[") {
            if !self.at_punct("]") {
                self.parse_expression()?;
            }
            self.expect_punct("]")?;
            ty.push_str("[]");
        }
        let mut node = AstNode::new(LANG, "ParamDecl", self.tokens[start].span.clone())
            .with_attr("name", name_tok.map(|t| t.text.clone()).unwrap_or_default())
            .with_attr("type", ty);
        if let Some(t) = name_tok {
            node.anchor = Some(t.span.clone());
        }
        if self.eat_punct("=") {
            node.children.push(self.parse_assignment()?.with_attr("role", "default"));
        }
        node.span = self.span_from(start);
        Ok(node)
    }

    // ---- statements -----------------------------------------------------

    fn parse_compound(&mut self, new_scope: bool) -> PResult<AstNode> {
        let start = self.pos;
        self.expect_punct("{")?;
        let scope = if new_scope { self.push_scope(ScopeKind::Block, None) } else { self.scope };
        let children = self.with_scope(scope, |p| {
            let mut children = Vec::new();
            while !p.at_punct("}") {
                if p.peek().is_none() {
                    return Err(p.error("`}`"));
                }
                children.extend(p.parse_statement()?);
            }
            Ok(children)
        })?;
        self.expect_punct("}")?;
        let mut node = self.node("CompoundStmt", start);
        node.children = children;
        Ok(node)
    }

    fn starts_declaration(&self) -> bool {
        self.at_any_keyword(BUILTIN_TYPES) || self.at_any_keyword(CV) || self.at_any_keyword(DECL_SPECIFIERS)
    }

    fn classify_ident_statement(&self) -> StmtClass {
        disambiguate_stmt(&self.tokens[self.pos..], self.table, self.scope)
    }

    fn parse_statement(&mut self) -> PResult<Vec<AstNode>> {
        let Some(tok) = self.peek() else { return Err(self.error("statement")) };
        if tok.is_punct("{") {
            return Ok(vec![self.parse_compound(true)?]);
        }
        if tok.is_punct(";") {
            let start = self.pos;
            self.bump();
            return Ok(vec![self.node("ExprStmt", start).with_attr("empty", "true")]);
        }
        if tok.kind == TokenKind::Keyword {
            let start = self.pos;
            let single = match tok.text.as_str() {
                "if" => Some(self.parse_if()?),
                "while" => Some(self.parse_while()?),
                "do" => Some(self.parse_do()?),
                "for" => Some(self.parse_for()?),
                "switch" => Some(self.parse_switch()?),
                "return" => {
                    self.bump();
                    let mut node = AstNode::new(LANG, "ReturnStmt", tok.span.clone());
                    if !self.at_punct(";") {
                        node.children.push(self.parse_expression()?.with_attr("role", "value"));
                    }
                    self.expect_punct(";")?;
                    node.span = self.span_from(start);
                    Some(node)
                }
                "break" | "continue" => {
                    self.bump();
                    self.expect_punct(";")?;
                    let kind = if tok.text == "break" { "BreakStmt" } else { "ContinueStmt" };
                    Some(self.node(kind, start))
                }
                "goto" => {
                    self.bump();
                    let label = self.expect_ident()?;
                    self.expect_punct(";")?;
                    Some(self.node("GotoStmt", start).with_attr("label", label.text.clone()))
                }
                "case" | "default" => {
                    return Err(Diagnostic::new(
                        DiagnosticKind::Parse,
                        tok.span.clone(),
                        format!("`{}` outside of a switch", tok.text),
                    ))
                }
                "typedef" => Some(self.parse_typedef()?),
                "enum" => Some(self.parse_enum()?),
                "class" | "struct" => Some(self.parse_class()?),
                _ => None,
            };
            if let Some(node) = single {
                return Ok(vec![node]);
            }
            if self.starts_declaration() {
                return self.parse_simple_declaration(None, true);
            }
        }
        if tok.kind == TokenKind::Ident {
            let label_colon = self.peek_at(1).is_some_and(|t| t.is_punct(":"));
            if label_colon {
                return Ok(vec![self.parse_label()?]);
            }
            if self.classify_ident_statement() == StmtClass::Declaration {
                return self.parse_simple_declaration(None, true);
            }
        }
        let start = self.pos;
        let expr = self.parse_expression()?;
        self.expect_punct(";")?;
        let mut node = self.node("ExprStmt", start);
        node.children.push(expr);
        Ok(vec![node])
    }

    fn parse_label(&mut self) -> PResult<AstNode> {
        let start = self.pos;
        let name = self.bump();
        self.bump();
        let mut node = AstNode::new(LANG, "LabelStmt", name.span.clone())
            .with_attr("name", name.text.clone())
            .with_anchor(name.span.clone());
        if self.eat_punct(";") {
            // label on an empty statement
        } else if !self.at_punct("}") {
            let body = self.parse_substatement()?;
            node.children.push(body.with_attr("role", "body"));
        }
        node.span = self.span_from(start);
        Ok(node)
    }

    fn parse_substatement(&mut self) -> PResult<AstNode> {
        let at = self.peek().map(|t| t.span.clone()).unwrap_or_else(|| self.eof_span());
        let mut stmts = self.parse_statement()?;
        if stmts.len() != 1 {
            return Err(Diagnostic::new(
                DiagnosticKind::Parse,
                at,
                "multiple declarators are not allowed as a sub-statement".to_string(),
            ));
        }
        Ok(stmts.pop().unwrap())
    }

    fn parse_condition(&mut self) -> PResult<AstNode> {
        self.expect_punct("(")?;
        let cond = self.parse_expression()?;
        self.expect_punct(")")?;
        Ok(cond.with_attr("role", "cond"))
    }

    fn parse_if(&mut self) -> PResult<AstNode> {
        let start = self.pos;
        self.bump();
        let mut node = self.node("IfStmt", start);
        node.children.push(self.parse_condition()?);
        node.children.push(self.parse_substatement()?.with_attr("role", "then"));
        if self.eat_keyword("else") {
            node.children.push(self.parse_substatement()?.with_attr("role", "else"));
        }
        node.span = self.span_from(start);
        Ok(node)
    }

    fn parse_while(&mut self) -> PResult<AstNode> {
        let start = self.pos;
        self.bump();
        let mut node = self.node("WhileStmt", start);
        node.children.push(self.parse_condition()?);
        node.children.push(self.parse_substatement()?.with_attr("role", "body"));
        node.span = self.span_from(start);
        Ok(node)
    }

    fn parse_do(&mut self) -> PResult<AstNode> {
        let start = self.pos;
        self.bump();
        let mut node = self.node("DoStmt", start);
        node.children.push(self.parse_substatement()?.with_attr("role", "body"));
        if !self.eat_keyword("while") {
            return Err(self.error("`while`"));
        }
        node.children.push(self.parse_condition()?);
        self.expect_punct(";")?;
        node.span = self.span_from(start);
        Ok(node)
    }

    fn parse_for(&mut self) -> PResult<AstNode> {
        let start = self.pos;
        self.bump();
        let mut node = self.node("ForStmt", start);
        self.expect_punct("(")?;
        let scope = self.push_scope(ScopeKind::Block, None);
        let children = self.with_scope(scope, |p| {
            let mut children = Vec::new();
            if p.eat_punct(";") {
                // no init
            } else if p.starts_declaration()
                || (p.at_ident()
                    && !p.peek_at(1).is_some_and(|t| t.is_punct(":"))
                    && p.classify_ident_statement() == StmtClass::Declaration)
            {
                for d in p.parse_simple_declaration(None, true)? {
                    children.push(d.with_attr("role", "init"));
                }
            } else {
                let istart = p.pos;
                let e = p.parse_expression()?;
                p.expect_punct(";")?;
                let mut init = p.node("ExprStmt", istart).with_attr("role", "init");
                init.children.push(e);
                children.push(init);
            }
            if !p.at_punct(";") {
                children.push(p.parse_expression()?.with_attr("role", "cond"));
            }
            p.expect_punct(";")?;
            if !p.at_punct(")") {
                children.push(p.parse_expression()?.with_attr("role", "step"));
            }
            p.expect_punct(")")?;
            children.push(p.parse_substatement()?.with_attr("role", "body"));
            Ok(children)
        })?;
        node.children = children;
        node.span = self.span_from(start);
        Ok(node)
    }

    fn parse_switch(&mut self) -> PResult<AstNode> {
        let start = self.pos;
        self.bump();
        let mut node = self.node("SwitchStmt", start);
        node.children.push(self.parse_condition()?);
        self.expect_punct("{")?;
        let scope = self.push_scope(ScopeKind::Block, None);
        let clauses = self.with_scope(scope, |p| {
            let mut clauses = Vec::new();
            while !p.at_punct("}") {
                let cstart = p.pos;
                let mut clause = if p.eat_keyword("case") {
                    let value = p.parse_conditional()?.with_attr("role", "value");
                    p.node("CaseClause", cstart).with_child(value)
                } else if p.eat_keyword("default") {
                    p.node("DefaultClause", cstart)
                } else {
                    return Err(p.error("`case`, `default` or `}`"));
                };
                p.expect_punct(":")?;
                while !(p.at_punct("}") || p.at_keyword("case") || p.at_keyword("default")) {
                    if p.peek().is_none() {
                        return Err(p.error("`}`"));
                    }
                    for s in p.parse_statement()? {
                        clause.children.push(s.with_attr("role", "body"));
                    }
                }
                clause.span = p.span_from(cstart);
                clauses.push(clause);
            }
            Ok(clauses)
        })?;
        self.expect_punct("}")?;
        node.children.extend(clauses);
        node.span = self.span_from(start);
        Ok(node)
    }

    // ---- expressions ----------------------------------------------------

    fn parse_expression(&mut self) -> PResult<AstNode> {
        self.parse_assignment()
    }

    fn parse_assignment(&mut self) -> PResult<AstNode> {
        let start = self.pos;
        let lhs = self.parse_conditional()?;
        if let Some(op) = self.peek().filter(|t| t.kind == TokenKind::Punct && ASSIGN_OPS.contains(&t.text.as_str())) {
            self.bump();
            let rhs = self.parse_assignment()?;
            let node = self
                .node("AssignExpr", start)
                .with_attr("op", op.text.clone())
                .with_anchor(op.span.clone())
                .with_child(lhs.with_attr("role", "lhs"))
                .with_child(rhs.with_attr("role", "rhs"));
            return Ok(node);
        }
        Ok(lhs)
    }

    fn parse_conditional(&mut self) -> PResult<AstNode> {
        let e = self.parse_binary(0)?;
        if self.at_punct("?") {
            return Err(self.unsupported("the conditional operator `?:`"));
        }
        Ok(e)
    }

    fn parse_binary(&mut self, level: usize) -> PResult<AstNode> {
        if level == BINARY_LEVELS.len() {
            return self.parse_unary();
        }
        let start = self.pos;
        let mut lhs = self.parse_binary(level + 1)?;
        while let Some(op) =
            self.peek().filter(|t| t.kind == TokenKind::Punct && BINARY_LEVELS[level].contains(&t.text.as_str()))
        {
            self.bump();
            let rhs = self.parse_binary(level + 1)?;
            lhs = self
                .node("BinaryExpr", start)
                .with_attr("op", op.text.clone())
                .with_anchor(op.span.clone())
                .with_child(lhs.with_attr("role", "lhs"))
                .with_child(rhs.with_attr("role", "rhs"));
        }
        Ok(lhs)
    }

    fn parse_unary(&mut self) -> PResult<AstNode> {
        let start = self.pos;
        let Some(tok) = self.peek() else { return Err(self.error("expression")) };
        if tok.kind == TokenKind::Punct && ["!", "-", "+", "~", "*", "&", "++", "--"].contains(&tok.text.as_str()) {
            self.bump();
            let operand = self.parse_unary()?;
            return Ok(self
                .node("UnaryExpr", start)
                .with_attr("op", tok.text.clone())
                .with_anchor(tok.span.clone())
                .with_child(operand.with_attr("role", "operand")));
        }
        if tok.is_keyword("new") {
            return self.parse_new();
        }
        if tok.is_keyword("delete") {
            self.bump();
            let array = if self.at_punct("[") {
                self.bump();
                self.expect_punct("]")?;
                true
            } else {
                false
            };
            let operand = self.parse_unary()?;
            return Ok(self
                .node("DeleteExpr", start)
                .with_attr("array", array.to_string())
                .with_anchor(tok.span.clone())
                .with_child(operand.with_attr("role", "operand")));
        }
        if tok.is_keyword("sizeof") {
            return Err(self.unsupported("`sizeof`"));
        }
        self.parse_postfix()
    }

    fn parse_new(&mut self) -> PResult<AstNode> {
        let start = self.pos;
        let new_tok = self.bump();
        let base = self.parse_type_base()?.ok_or_else(|| self.error("type after `new`"))?;
        let ty = format!("{base}{}", self.parse_ptr_ops());
        let mut node =
            AstNode::new(LANG, "NewExpr", new_tok.span.clone()).with_attr("type", ty).with_anchor(new_tok.span.clone());
        let mut array = false;
        if self.eat_punct("[") {
            node.children.push(self.parse_expression()?.with_attr("role", "size"));
            self.expect_punct("]")?;
            array = true;
        }
        if self.eat_punct("(") {
            while !self.at_punct(")") {
                node.children.push(self.parse_assignment()?.with_attr("role", "arg"));
                if !self.eat_punct(",") {
                    break;
                }
            }
            self.expect_punct(")")?;
        }
        node.set_attr("array", array.to_string());
        node.span = self.span_from(start);
        Ok(node)
    }

    fn parse_postfix(&mut self) -> PResult<AstNode> {
        let start = self.pos;
        let mut expr = self.parse_primary()?;
        loop {
            if self.at_punct("(") {
                self.bump();
                let mut call =
                    AstNode::new(LANG, "CallExpr", expr.span.clone()).with_child(expr.with_attr("role", "callee"));
                while !self.at_punct(")") {
                    call.children.push(self.parse_assignment()?.with_attr("role", "arg"));
                    if !self.eat_punct(",") {
                        break;
                    }
                }
                self.expect_punct(")")?;
                call.span = self.span_from(start);
                expr = call;
            } else if self.at_punct(".") || self.at_punct("->") {
                let op = self.bump();
                let member = self.expect_ident()?;
                expr = self
                    .node("MemberExpr", start)
                    .with_attr("op", op.text.clone())
                    .with_attr("member", member.text.clone())
                    .with_anchor(member.span.clone())
                    .with_child(expr.with_attr("role", "object"));
            } else if self.at_punct("[") {
                let op = self.bump();
                let index = self.parse_expression()?;
                self.expect_punct("]")?;
                expr = self
                    .node("BinaryExpr", start)
                    .with_attr("op", "[]")
                    .with_anchor(op.span.clone())
                    .with_child(expr.with_attr("role", "lhs"))
                    .with_child(index.with_attr("role", "rhs"));
            } else if self.at_punct("++") || self.at_punct("--") {
                let op = self.bump();
                expr = self
                    .node("UnaryExpr", start)
                    .with_attr("op", op.text.clone())
                    .with_attr("postfix", "true")
                    .with_anchor(op.span.clone())
                    .with_child(expr.with_attr("role", "operand"));
            } else {
                return Ok(expr);
            }
        }
    }

    fn parse_primary(&mut self) -> PResult<AstNode> {
        let start = self.pos;
        let Some(tok) = self.peek() else { return Err(self.error("expression")) };
        let literal_type = match tok.kind {
            TokenKind::IntLit => Some("int"),
            TokenKind::FloatLit => Some("float"),
            TokenKind::StringLit => Some("string"),
            TokenKind::CharLit => Some("char"),
            TokenKind::Keyword if tok.text == "true" || tok.text == "false" => Some("bool"),
            TokenKind::Keyword if tok.text == "nullptr" => Some("null"),
            _ => None,
        };
        if let Some(ty) = literal_type {
            self.bump();
            let mut value = tok.text.clone();
            if tok.kind == TokenKind::StringLit {
                while let Some(next) = self.peek().filter(|t| t.kind == TokenKind::StringLit) {
                    value.push(' ');
                    value.push_str(&next.text);
                    self.bump();
                }
            }
            return Ok(self.node("Literal", start).with_attr("type", ty).with_attr("value", value));
        }
        if tok.is_keyword("this") {
            self.bump();
            return Ok(self.node("IdentExpr", start).with_attr("name", "this"));
        }
        if tok.kind == TokenKind::Ident {
            let (name, _) = self.parse_qualified_name()?;
            return Ok(self.node("IdentExpr", start).with_attr("name", name));
        }
        if tok.is_punct("(") {
            self.bump();
            let inner = self.parse_expression()?;
            self.expect_punct(")")?;
            return Ok(self.node("ParenExpr", start).with_child(inner.with_attr("role", "inner")));
        }
        Err(self.error("expression"))
    }
}
