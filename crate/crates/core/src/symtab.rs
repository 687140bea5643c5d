//! Scoped symbol table with class, function and variable bindings.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::ast::SourceSpan;
use crate::error::Diagnostic;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ScopeId(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClassId(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FunctionId(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VarId(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ScopeKind {
    Global,
    Namespace,
    Class,
    Function,
    Block,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Specifier {
    Public,
    Protected,
    Private,
    Virtual,
    PureVirtual,
    Static,
    Const,
}

impl Specifier {
    pub fn is_access(self) -> bool {
        matches!(self, Specifier::Public | Specifier::Protected | Specifier::Private)
    }

    pub fn from_access(text: &str) -> Option<Specifier> {
        match text {
            "public" => Some(Specifier::Public),
            "protected" => Some(Specifier::Protected),
            "private" => Some(Specifier::Private),
            _ => None,
        }
    }
}

/// Classification of a resolved identifier.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TypeCategory {
    Type,
    Constructor,
    Variable,
    Function,
    Namespace,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Binding {
    Class(ClassId),
    Function(FunctionId),
    Variable(VarId),
    Enum { name: String, node_id: usize },
    Typedef { name: String, target: String, node_id: usize },
    Namespace { name: String, scope: ScopeId },
}

#[derive(Debug, Clone)]
pub struct Scope {
    pub kind: ScopeKind,
    pub name: Option<String>,
    pub parent: Option<ScopeId>,
    pub owner_node_id: usize,
    pub declarations: Vec<Binding>,
}

#[derive(Debug, Clone)]
pub struct BaseRef {
    pub name: String,
    /// `None` when the base is declared outside the unit.
    pub class: Option<ClassId>,
    /// Exactly one access specifier, optionally `Virtual`.
    pub access: BTreeSet<Specifier>,
}

#[derive(Debug, Clone)]
pub struct ClassBinding {
    pub name: String,
    pub scope: ScopeId,
    pub declared_in: ScopeId,
    pub bases: Vec<BaseRef>,
    pub functions: Vec<FunctionId>,
    pub data_members: Vec<VarId>,
    pub decl_span: SourceSpan,
    pub node_id: usize,
}

#[derive(Debug, Clone)]
pub struct FunctionBinding {
    pub name: String,
    pub owner: Option<ClassId>,
    pub specifiers: BTreeSet<Specifier>,
    pub parameter_types: Vec<String>,
    pub return_type: String,
    pub body_span: Option<SourceSpan>,
    pub is_constructor: bool,
    pub is_destructor: bool,
    pub decl_span: SourceSpan,
    pub node_id: usize,
    pub declared_in: ScopeId,
}

impl FunctionBinding {
    pub fn has_specifier(&self, s: Specifier) -> bool {
        self.specifiers.contains(&s)
    }

    /// Same name, same parameter type list, same return type. Specifiers and
    /// parameter names are ignored; types compare after whitespace
    /// normalization.
    pub fn equal_signature(&self, other: &FunctionBinding) -> bool {
        self.name == other.name
            && normalize_type(&self.return_type) == normalize_type(&other.return_type)
            && self.parameter_types.len() == other.parameter_types.len()
            && self
                .parameter_types
                .iter()
                .zip(&other.parameter_types)
                .all(|(a, b)| normalize_type(a) == normalize_type(b))
    }

    /// `<name> : <RETURN TYPE>`, e.g. `derive : DOUBLE`.
    pub fn print_signature(&self) -> String {
        format!("{} : {}", self.name, self.return_type.to_uppercase())
    }
}

/// Collapses whitespace runs and drops whitespace next to punctuation.
pub fn normalize_type(ty: &str) -> String {
    let mut out = String::with_capacity(ty.len());
    let mut pending_space = false;
    for c in ty.chars() {
        if c.is_whitespace() {
            pending_space = true;
            continue;
        }
        if pending_space {
            let prev_word = out.chars().last().is_some_and(|p| p.is_alphanumeric() || p == '_');
            let next_word = c.is_alphanumeric() || c == '_';
            if prev_word && next_word {
                out.push(' ');
            }
            pending_space = false;
        }
        out.push(c);
    }
    out
}

#[derive(Debug, Clone)]
pub struct VariableBinding {
    pub name: String,
    pub declared_type: String,
    pub scope: ScopeId,
    pub has_initializer: bool,
    pub is_member: bool,
    pub is_parameter: bool,
    pub is_loop_index: bool,
    pub decl_span: SourceSpan,
    pub node_id: usize,
}

#[derive(Debug, Clone)]
pub struct SymbolTable {
    scopes: Vec<Scope>,
    classes: Vec<ClassBinding>,
    functions: Vec<FunctionBinding>,
    variables: Vec<VariableBinding>,
    node_scopes: HashMap<usize, ScopeId>,
    class_nodes: HashMap<usize, ClassId>,
    function_nodes: HashMap<usize, FunctionId>,
    variable_nodes: HashMap<usize, VarId>,
    pub diagnostics: Vec<Diagnostic>,
}

impl SymbolTable {
    pub const GLOBAL: ScopeId = ScopeId(0);

    /// A table holding only the GLOBAL scope, owned by `root_node_id`.
    pub fn new(root_node_id: usize) -> Self {
        let mut table = SymbolTable {
            scopes: Vec::new(),
            classes: Vec::new(),
            functions: Vec::new(),
            variables: Vec::new(),
            node_scopes: HashMap::new(),
            class_nodes: HashMap::new(),
            function_nodes: HashMap::new(),
            variable_nodes: HashMap::new(),
            diagnostics: Vec::new(),
        };
        table.scopes.push(Scope {
            kind: ScopeKind::Global,
            name: None,
            parent: None,
            owner_node_id: root_node_id,
            declarations: Vec::new(),
        });
        table.node_scopes.insert(root_node_id, Self::GLOBAL);
        table
    }

    // ---- construction -------------------------------------------------

    pub fn add_scope(
        &mut self,
        kind: ScopeKind,
        name: Option<String>,
        parent: ScopeId,
        owner_node_id: usize,
    ) -> ScopeId {
        let id = ScopeId(self.scopes.len());
        self.scopes.push(Scope { kind, name, parent: Some(parent), owner_node_id, declarations: Vec::new() });
        id
    }

    /// Records `scope` as the innermost scope enclosing `node_id`.
    pub fn set_node_scope(&mut self, node_id: usize, scope: ScopeId) {
        self.node_scopes.insert(node_id, scope);
    }

    pub fn declare(&mut self, scope: ScopeId, binding: Binding) {
        self.scopes[scope.0].declarations.push(binding);
    }

    pub fn add_class(&mut self, declared_in: ScopeId, class: ClassBinding) -> ClassId {
        let id = ClassId(self.classes.len());
        self.class_nodes.insert(class.node_id, id);
        self.classes.push(class);
        self.declare(declared_in, Binding::Class(id));
        id
    }

    /// Adds a function binding. Members are also listed on their class.
    pub fn add_function(&mut self, declared_in: ScopeId, function: FunctionBinding) -> FunctionId {
        let id = FunctionId(self.functions.len());
        self.function_nodes.insert(function.node_id, id);
        if let Some(owner) = function.owner {
            self.classes[owner.0].functions.push(id);
        }
        self.functions.push(function);
        self.declare(declared_in, Binding::Function(id));
        id
    }

    pub fn add_variable(&mut self, variable: VariableBinding) -> VarId {
        let id = VarId(self.variables.len());
        self.variable_nodes.insert(variable.node_id, id);
        let scope = variable.scope;
        self.variables.push(variable);
        self.declare(scope, Binding::Variable(id));
        id
    }

    /// Additional AST node (e.g. an out-of-class definition) standing for an
    /// existing function.
    pub fn alias_function_node(&mut self, node_id: usize, function: FunctionId) {
        self.function_nodes.insert(node_id, function);
    }

    pub fn class_mut(&mut self, id: ClassId) -> &mut ClassBinding {
        &mut self.classes[id.0]
    }

    pub fn function_mut(&mut self, id: FunctionId) -> &mut FunctionBinding {
        &mut self.functions[id.0]
    }

    // ---- access -------------------------------------------------------

    pub fn scope(&self, id: ScopeId) -> &Scope {
        &self.scopes[id.0]
    }

    pub fn scopes(&self) -> impl Iterator<Item = (ScopeId, &Scope)> {
        self.scopes.iter().enumerate().map(|(i, s)| (ScopeId(i), s))
    }

    pub fn class(&self, id: ClassId) -> &ClassBinding {
        &self.classes[id.0]
    }

    pub fn classes(&self) -> impl Iterator<Item = (ClassId, &ClassBinding)> {
        self.classes.iter().enumerate().map(|(i, c)| (ClassId(i), c))
    }

    pub fn function(&self, id: FunctionId) -> &FunctionBinding {
        &self.functions[id.0]
    }

    pub fn functions(&self) -> impl Iterator<Item = (FunctionId, &FunctionBinding)> {
        self.functions.iter().enumerate().map(|(i, f)| (FunctionId(i), f))
    }

    pub fn variable(&self, id: VarId) -> &VariableBinding {
        &self.variables[id.0]
    }

    pub fn variables(&self) -> impl Iterator<Item = (VarId, &VariableBinding)> {
        self.variables.iter().enumerate().map(|(i, v)| (VarId(i), v))
    }

    pub fn class_of_node(&self, node_id: usize) -> Option<ClassId> {
        self.class_nodes.get(&node_id).copied()
    }

    pub fn function_of_node(&self, node_id: usize) -> Option<FunctionId> {
        self.function_nodes.get(&node_id).copied()
    }

    pub fn variable_of_node(&self, node_id: usize) -> Option<VarId> {
        self.variable_nodes.get(&node_id).copied()
    }

    /// Innermost scope enclosing the node; GLOBAL when the node is unknown.
    /// A scope-introducing node maps to the scope it introduces.
    pub fn scope_of(&self, node_id: usize) -> ScopeId {
        self.node_scopes.get(&node_id).copied().unwrap_or(Self::GLOBAL)
    }

    /// `ancestor` is `scope` or one of its parents.
    pub fn is_ancestor_or_self(&self, ancestor: ScopeId, scope: ScopeId) -> bool {
        self.scope_chain(scope).any(|s| s == ancestor)
    }

    /// `scope`, its parent, ... up to GLOBAL.
    pub fn scope_chain(&self, scope: ScopeId) -> impl Iterator<Item = ScopeId> + '_ {
        std::iter::successors(Some(scope), move |s| self.scopes[s.0].parent)
    }

    /// Nearest enclosing CLASS scope (including `scope` itself).
    pub fn enclosing_class_scope(&self, scope: ScopeId) -> Option<ScopeId> {
        self.scope_chain(scope).find(|s| self.scopes[s.0].kind == ScopeKind::Class)
    }

    pub fn binding_name<'a>(&'a self, binding: &'a Binding) -> &'a str {
        match binding {
            Binding::Class(id) => &self.classes[id.0].name,
            Binding::Function(id) => &self.functions[id.0].name,
            Binding::Variable(id) => &self.variables[id.0].name,
            Binding::Enum { name, .. } | Binding::Typedef { name, .. } | Binding::Namespace { name, .. } => name,
        }
    }

    /// Bindings named `name` declared directly in `scope`, latest first.
    pub fn lookup_local<'a>(&'a self, scope: ScopeId, name: &'a str) -> impl Iterator<Item = &'a Binding> + 'a {
        self.scopes[scope.0].declarations.iter().rev().filter(move |b| self.binding_name(b) == name)
    }

    /// First binding named `name` found along the scope chain.
    pub fn lookup(&self, scope: ScopeId, name: &str) -> Option<&Binding> {
        self.scope_chain(scope)
            .find_map(|s| self.scopes[s.0].declarations.iter().rev().find(|b| self.binding_name(b) == name))
    }

    /// The scope a name denotes when used as a qualifier (`N::` or `C::`).
    pub fn scope_named(&self, from: ScopeId, name: &str) -> Option<ScopeId> {
        self.scope_chain(from).find_map(|s| {
            self.lookup_local(s, name).find_map(|b| match b {
                Binding::Class(id) => Some(self.classes[id.0].scope),
                Binding::Namespace { scope, .. } => Some(*scope),
                _ => None,
            })
        })
    }

    /// Resolves `A::B::c` to the scope holding `c`. A single segment resolves
    /// to `from` itself.
    pub fn qualifier_scope(&self, from: ScopeId, segments: &[&str]) -> Option<ScopeId> {
        let (_, quals) = segments.split_last()?;
        let mut scope = from;
        for (i, q) in quals.iter().enumerate() {
            scope = if i == 0 {
                self.scope_named(scope, q)?
            } else {
                self.lookup_local(scope, q).find_map(|b| match b {
                    Binding::Class(id) => Some(self.classes[id.0].scope),
                    Binding::Namespace { scope, .. } => Some(*scope),
                    _ => None,
                })?
            };
        }
        Some(scope)
    }

    fn classify(&self, binding: &Binding) -> TypeCategory {
        match binding {
            Binding::Class(_) | Binding::Enum { .. } | Binding::Typedef { .. } => TypeCategory::Type,
            Binding::Function(_) => TypeCategory::Function,
            Binding::Variable(_) => TypeCategory::Variable,
            Binding::Namespace { .. } => TypeCategory::Namespace,
        }
    }

    /// Classifies an identifier as seen from `scope`.
    pub fn resolve(&self, scope: ScopeId, ident: &str) -> Option<TypeCategory> {
        let s = &self.scopes[scope.0];
        if s.kind == ScopeKind::Class && s.name.as_deref() == Some(ident) {
            return Some(TypeCategory::Constructor);
        }
        self.lookup(scope, ident).map(|b| self.classify(b))
    }

    /// `Some(TYPE | CONSTRUCTOR)` iff `ident` names a class, enum or typedef
    /// visible from `scope`, or the constructor of the class whose scope it is.
    pub fn is_type_name(&self, scope: ScopeId, ident: &str) -> Option<TypeCategory> {
        self.resolve(scope, ident).filter(|c| matches!(c, TypeCategory::Type | TypeCategory::Constructor))
    }

    /// [`Self::is_type_name`] for a possibly qualified name (`A::B`).
    pub fn is_qualified_type_name(&self, scope: ScopeId, segments: &[&str]) -> Option<TypeCategory> {
        match segments {
            [] => None,
            [single] => self.is_type_name(scope, single),
            _ => {
                let holder = self.qualifier_scope(scope, segments)?;
                let last = segments[segments.len() - 1];
                let s = &self.scopes[holder.0];
                if s.kind == ScopeKind::Class && s.name.as_deref() == Some(last) {
                    return Some(TypeCategory::Constructor);
                }
                self.lookup_local(holder, last).map(|b| self.classify(b)).find(|c| *c == TypeCategory::Type)
            }
        }
    }

    /// First class named `name` visible from `scope`, following qualifiers.
    pub fn find_class(&self, scope: ScopeId, qualified: &str) -> Option<ClassId> {
        let segments: Vec<&str> = qualified.split("::").map(str::trim).collect();
        let holder = self.qualifier_scope(scope, &segments)?;
        let last = *segments.last()?;
        let found = if segments.len() == 1 {
            self.scope_chain(holder).find_map(|s| self.class_in(s, last))
        } else {
            self.class_in(holder, last)
        };
        found
    }

    fn class_in(&self, scope: ScopeId, name: &str) -> Option<ClassId> {
        self.lookup_local(scope, name).find_map(|b| match b {
            Binding::Class(id) => Some(*id),
            _ => None,
        })
    }

    // ---- interface queries --------------------------------------------

    /// Direct base classes that are declared in this unit.
    pub fn inherited_classes(&self, class: ClassId) -> Vec<ClassId> {
        self.classes[class.0].bases.iter().filter_map(|b| b.class).collect()
    }

    /// No data members and every member function pure virtual (destructor
    /// exempt).
    pub fn has_only_interface_methods(&self, class: ClassId) -> bool {
        let c = &self.classes[class.0];
        c.data_members.is_empty()
            && c.functions.iter().all(|f| {
                let f = &self.functions[f.0];
                f.is_destructor || f.has_specifier(Specifier::PureVirtual)
            })
    }

    /// Specifiers of the inheritance edge `class -> base`.
    pub fn specifier_of_inherited(&self, class: ClassId, base: ClassId) -> Option<&BTreeSet<Specifier>> {
        self.classes[class.0].bases.iter().find(|b| b.class == Some(base)).map(|b| &b.access)
    }

    pub fn all_functions(&self, class: ClassId) -> impl Iterator<Item = &FunctionBinding> + '_ {
        self.classes[class.0].functions.iter().map(|f| &self.functions[f.0])
    }

    pub fn equal_signature(&self, f: FunctionId, g: FunctionId) -> bool {
        self.functions[f.0].equal_signature(&self.functions[g.0])
    }

    pub fn print_signature(&self, f: FunctionId) -> String {
        self.functions[f.0].print_signature()
    }
}

impl fmt::Display for ScopeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ScopeKind::Global => "GLOBAL",
            ScopeKind::Namespace => "NAMESPACE",
            ScopeKind::Class => "CLASS",
            ScopeKind::Function => "FUNCTION",
            ScopeKind::Block => "BLOCK",
        };
        f.write_str(s)
    }
}
