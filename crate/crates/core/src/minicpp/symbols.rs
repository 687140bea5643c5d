//! Builds the full symbol table from a parsed unit.

use std::collections::{BTreeSet, HashSet};

use crate::ast::AstNode;
use crate::error::{Diagnostic, DiagnosticKind};
use crate::symtab::{
    normalize_type, BaseRef, Binding, ClassBinding, ClassId, FunctionBinding, FunctionId, ScopeId, ScopeKind,
    Specifier, SymbolTable, VariableBinding,
};

/// Scopes: GLOBAL for the unit, NAMESPACE, CLASS, FUNCTION per function
/// (its body shares it), BLOCK per other compound statement and per `for`.
pub fn build_symbols(ast: &AstNode) -> SymbolTable {
    let mut b = Builder { t: SymbolTable::new(ast.node_id), forward: HashSet::new() };
    b.visit_children(ast, SymbolTable::GLOBAL, None, false);
    b.t
}

struct Builder {
    t: SymbolTable,
    forward: HashSet<ClassId>,
}

impl Builder {
    fn visit_children(&mut self, node: &AstNode, scope: ScopeId, class: Option<ClassId>, for_init: bool) {
        for child in &node.children {
            let loop_index = for_init && child.role() == Some("init");
            self.visit(child, scope, class, loop_index);
        }
    }

    fn duplicate(&mut self, node: &AstNode, what: &str, name: &str) {
        self.t.diagnostics.push(Diagnostic::new(
            DiagnosticKind::DuplicateDeclaration,
            node.anchor_span(),
            format!("duplicate declaration of {what} `{name}`"),
        ));
    }

    fn visit(&mut self, node: &AstNode, scope: ScopeId, class: Option<ClassId>, loop_index: bool) {
        self.t.set_node_scope(node.node_id, scope);
        match node.kind.as_str() {
            "NamespaceDef" => {
                let name = node.attr_or_empty("name").to_string();
                let existing = self.t.lookup_local(scope, &name).find_map(|b| match b {
                    Binding::Namespace { scope, .. } => Some(*scope),
                    _ => None,
                });
                let ns = existing.unwrap_or_else(|| {
                    let ns = self.t.add_scope(ScopeKind::Namespace, Some(name.clone()), scope, node.node_id);
                    self.t.declare(scope, Binding::Namespace { name, scope: ns });
                    ns
                });
                self.t.set_node_scope(node.node_id, ns);
                self.visit_children(node, ns, None, false);
            }
            "ClassDef" => self.visit_class(node, scope),
            "FunctionDef" | "Constructor" | "Destructor" => self.visit_function(node, scope, class),
            "VarDecl" => {
                let name = node.attr_or_empty("name").to_string();
                let is_member = self.t.scope(scope).kind == ScopeKind::Class;
                let clash = self.t.lookup_local(scope, &name).any(|b| matches!(b, Binding::Variable(_)));
                if clash {
                    self.duplicate(node, "variable", &name);
                }
                let id = self.t.add_variable(VariableBinding {
                    name,
                    declared_type: node.attr_or_empty("type").to_string(),
                    scope,
                    has_initializer: node.flag("has_init"),
                    is_member,
                    is_parameter: false,
                    is_loop_index: loop_index,
                    decl_span: node.anchor_span(),
                    node_id: node.node_id,
                });
                if let (true, Some(c)) = (is_member, class) {
                    self.t.class_mut(c).data_members.push(id);
                }
                self.visit_children(node, scope, class, false);
            }
            "CompoundStmt" => {
                let block = self.t.add_scope(ScopeKind::Block, None, scope, node.node_id);
                self.t.set_node_scope(node.node_id, block);
                self.visit_children(node, block, class, false);
            }
            "ForStmt" => {
                let block = self.t.add_scope(ScopeKind::Block, None, scope, node.node_id);
                self.t.set_node_scope(node.node_id, block);
                self.visit_children(node, block, class, true);
            }
            "EnumDef" => {
                let name = node.attr_or_empty("name");
                if !name.is_empty() {
                    self.t.declare(scope, Binding::Enum { name: name.to_string(), node_id: node.node_id });
                }
                self.visit_children(node, scope, class, false);
            }
            "TypedefDecl" => {
                self.t.declare(
                    scope,
                    Binding::Typedef {
                        name: node.attr_or_empty("name").to_string(),
                        target: node.attr_or_empty("type").to_string(),
                        node_id: node.node_id,
                    },
                );
            }
            _ => self.visit_children(node, scope, class, false),
        }
    }

    fn visit_class(&mut self, node: &AstNode, scope: ScopeId) {
        let name = node.attr_or_empty("name").to_string();
        let previous = self.t.lookup_local(scope, &name).find_map(|b| match b {
            Binding::Class(id) => Some(*id),
            _ => None,
        });
        let is_forward = node.flag("forward");
        if is_forward && previous.is_some() {
            return;
        }
        if previous.is_some_and(|p| !self.forward.contains(&p)) {
            self.duplicate(node, "class", &name);
        }

        let class_scope = self.t.add_scope(ScopeKind::Class, Some(name.clone()), scope, node.node_id);
        self.t.set_node_scope(node.node_id, class_scope);
        let bases = node
            .children
            .iter()
            .filter(|c| c.is("BaseSpec"))
            .map(|b| {
                let mut access = BTreeSet::new();
                access.insert(Specifier::from_access(b.attr_or_empty("access")).unwrap_or(Specifier::Private));
                if b.flag("virtual") {
                    access.insert(Specifier::Virtual);
                }
                let base_name = b.attr_or_empty("name").to_string();
                BaseRef { class: self.t.find_class(scope, &base_name), name: base_name, access }
            })
            .collect();
        let id = self.t.add_class(
            scope,
            ClassBinding {
                name,
                scope: class_scope,
                declared_in: scope,
                bases,
                functions: Vec::new(),
                data_members: Vec::new(),
                decl_span: node.anchor_span(),
                node_id: node.node_id,
            },
        );
        if is_forward {
            self.forward.insert(id);
            return;
        }
        for child in &node.children {
            self.visit(child, class_scope, Some(id), false);
        }
    }

    fn visit_function(&mut self, node: &AstNode, scope: ScopeId, class: Option<ClassId>) {
        let name = node.attr_or_empty("name").to_string();
        let qualifier = node.attr("qualifier");
        let owner = match qualifier {
            Some(q) => self.t.find_class(scope, q),
            None if self.t.scope(scope).kind == ScopeKind::Class => class,
            None => None,
        };
        let parent = match (qualifier, owner) {
            (Some(_), Some(c)) => self.t.class(c).scope,
            _ => scope,
        };

        let params: Vec<&AstNode> = node.children.iter().filter(|c| c.is("ParamDecl")).collect();
        let parameter_types: Vec<String> = params.iter().map(|p| p.attr_or_empty("type").to_string()).collect();
        let body = node.children.iter().find(|c| c.is("CompoundStmt") && c.role() == Some("body"));

        let existing = self.matching_declaration(&name, &parameter_types, owner, qualifier.is_some(), parent);
        match existing {
            Some(f) => {
                self.t.alias_function_node(node.node_id, f);
                if let Some(body) = body {
                    self.t.function_mut(f).body_span = Some(body.span.clone());
                }
            }
            None => {
                let mut specifiers = BTreeSet::new();
                if let Some(a) = node.attr("access").and_then(Specifier::from_access) {
                    specifiers.insert(a);
                }
                if node.flag("virtual") {
                    specifiers.insert(Specifier::Virtual);
                }
                if node.flag("pure") {
                    specifiers.insert(Specifier::Virtual);
                    specifiers.insert(Specifier::PureVirtual);
                }
                if node.flag("static") {
                    specifiers.insert(Specifier::Static);
                }
                if node.flag("const") {
                    specifiers.insert(Specifier::Const);
                }
                self.t.add_function(
                    parent,
                    FunctionBinding {
                        name: name.clone(),
                        owner,
                        specifiers,
                        parameter_types,
                        return_type: node.attr_or_empty("return_type").to_string(),
                        body_span: body.map(|b| b.span.clone()),
                        is_constructor: node.is("Constructor"),
                        is_destructor: node.is("Destructor"),
                        decl_span: node.anchor_span(),
                        node_id: node.node_id,
                        declared_in: parent,
                    },
                );
            }
        }

        let fn_scope = self.t.add_scope(ScopeKind::Function, Some(name), parent, node.node_id);
        self.t.set_node_scope(node.node_id, fn_scope);
        for child in &node.children {
            if child.is("ParamDecl") {
                self.t.set_node_scope(child.node_id, fn_scope);
                let pname = child.attr_or_empty("name");
                if !pname.is_empty() {
                    self.t.add_variable(VariableBinding {
                        name: pname.to_string(),
                        declared_type: child.attr_or_empty("type").to_string(),
                        scope: fn_scope,
                        has_initializer: true,
                        is_member: false,
                        is_parameter: true,
                        is_loop_index: false,
                        decl_span: child.anchor_span(),
                        node_id: child.node_id,
                    });
                }
                self.visit_children(child, fn_scope, owner, false);
            } else if body.is_some_and(|b| std::ptr::eq(b, child)) {
                self.t.set_node_scope(child.node_id, fn_scope);
                self.visit_children(child, fn_scope, owner, false);
            } else {
                self.visit(child, fn_scope, owner, false);
            }
        }
    }

    /// Earlier declaration a definition completes: the in-class declaration
    /// for `C::f`, or a bodiless prototype for a free function.
    fn matching_declaration(
        &self,
        name: &str,
        params: &[String],
        owner: Option<ClassId>,
        qualified: bool,
        scope: ScopeId,
    ) -> Option<FunctionId> {
        let same_params = |f: &FunctionBinding| {
            f.name == name
                && f.parameter_types.len() == params.len()
                && f.parameter_types.iter().zip(params).all(|(a, b)| normalize_type(a) == normalize_type(b))
        };
        if qualified {
            let c = owner?;
            return self.t.class(c).functions.iter().copied().find(|f| same_params(self.t.function(*f)));
        }
        if owner.is_some() {
            return None;
        }
        self.t.lookup_local(scope, name).find_map(|b| match b {
            Binding::Function(f) if same_params(self.t.function(*f)) && self.t.function(*f).body_span.is_none() => {
                Some(*f)
            }
            _ => None,
        })
    }
}
