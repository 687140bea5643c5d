//! One positive and one negative fixture per rule, with exact positions.

mod common;

use common::{findings, findings_with, in_fn, positions, read_fixture};

fn cpp(rule: &str, src: &str) -> Vec<(u32, u32)> {
    positions(&findings("minicpp", rule, src))
}

fn cpp_with(rule: &str, props: &[(&str, &str)], src: &str) -> Vec<(u32, u32)> {
    positions(&findings_with("minicpp", rule, props, src))
}

fn sd(rule: &str, src: &str) -> Vec<(u32, u32)> {
    positions(&findings("seqdiag", rule, src))
}

fn messages(lang: &str, rule: &str, src: &str) -> Vec<String> {
    findings(lang, rule, src).into_iter().map(|f| f.message).collect()
}

// ConstructorChecker

#[test]
fn constructor_canonical_order() {
    assert_eq!(cpp("ConstructorChecker", "class A { A(); ~A(); void f(); };"), vec![]);
}

#[test]
fn constructor_after_destructor() {
    assert_eq!(cpp("ConstructorChecker", "class A { ~A(); A(); };"), vec![(1, 17)]);
}

#[test]
fn constructor_after_method() {
    assert_eq!(cpp("ConstructorChecker", "class A { void f(); A(); };"), vec![(1, 21)]);
}

// DestructorChecker

#[test]
fn destructor_not_virtual() {
    assert_eq!(cpp("DestructorChecker", "class A { virtual void f(); ~A(); };"), vec![(1, 7)]);
}

#[test]
fn destructor_virtual() {
    assert_eq!(cpp("DestructorChecker", "class A { virtual void f(); virtual ~A(); };"), vec![]);
}

#[test]
fn destructor_not_needed() {
    assert_eq!(cpp("DestructorChecker", "class A { void f(); };"), vec![]);
}

#[test]
fn destructor_missing_in_derived_class() {
    assert_eq!(cpp("DestructorChecker", "class B { };\nclass D : public B { };"), vec![(2, 7)]);
}

// EnumChecker

#[test]
fn enum_anonymous() {
    assert_eq!(cpp("EnumChecker", "enum { A, B };"), vec![(1, 1)]);
}

#[test]
fn enum_mixed_initializers() {
    assert_eq!(cpp("EnumChecker", "enum E { A = 1, B };"), vec![(1, 6)]);
}

#[test]
fn enum_clean() {
    assert_eq!(cpp("EnumChecker", "enum E { A, B };\nenum F { X = 1, Y = 2 };"), vec![]);
}

// ExpressionChecker

#[test]
fn expression_mixed_logical_operators() {
    assert_eq!(cpp("ExpressionChecker", &in_fn("  bool r = a && b || c;")), vec![(2, 19)]);
}

#[test]
fn expression_parenthesized() {
    assert_eq!(cpp("ExpressionChecker", &in_fn("  bool r = (a && b) || c;")), vec![]);
}

#[test]
fn expression_same_operator() {
    assert_eq!(cpp("ExpressionChecker", &in_fn("  bool r = a && b && c;")), vec![]);
}

// ExpressionAssignmentChecker

#[test]
fn assignment_in_if_condition() {
    assert_eq!(cpp("ExpressionAssignmentChecker", &in_fn("  if (x = 1) {}")), vec![(2, 9)]);
}

#[test]
fn comparison_in_if_condition() {
    assert_eq!(cpp("ExpressionAssignmentChecker", &in_fn("  if (x == 1) {}")), vec![]);
}

#[test]
fn parenthesized_assignment_in_while_condition() {
    assert_eq!(cpp("ExpressionAssignmentChecker", &in_fn("  while ((y = next())) {}")), vec![(2, 13)]);
}

#[test]
fn assignment_in_loop_body_is_fine() {
    assert_eq!(cpp("ExpressionAssignmentChecker", &in_fn("  while (y) { y = 0; }")), vec![]);
}

// FlowControlChecker

#[test]
fn flow_goto_and_label() {
    assert_eq!(cpp("FlowControlChecker", &in_fn("  goto l;\n  l: ;")), vec![(2, 3), (3, 3)]);
}

#[test]
fn flow_break_in_switch() {
    assert_eq!(cpp("FlowControlChecker", &in_fn("  switch (x) { case 1: break; }")), vec![]);
}

#[test]
fn flow_break_in_loop() {
    assert_eq!(cpp("FlowControlChecker", &in_fn("  while (x) { break; }")), vec![(2, 15)]);
}

// FunctionChecker

#[test]
fn function_too_long() {
    let body = "  f();\n".repeat(150);
    let src = format!("void run() {{\n{body}}}\n");
    assert_eq!(cpp("FunctionChecker", &src), vec![(1, 6)]);
    assert_eq!(cpp_with("FunctionChecker", &[("maxLines", "200")], &src), vec![]);
}

#[test]
fn function_bad_name() {
    assert_eq!(cpp("FunctionChecker", "void Process_Data();"), vec![(1, 6)]);
}

#[test]
fn function_too_many_parameters() {
    let src = "void run(int a, int b, int c, int d, int e, int f, int g);";
    assert_eq!(cpp("FunctionChecker", src), vec![(1, 6)]);
}

#[test]
fn function_clean() {
    assert_eq!(cpp("FunctionChecker", "void run() {\n  f();\n}\nclass A { A(); ~A(); };"), vec![]);
}

// IdentifierChecker

#[test]
fn identifier_similar_to_parameter() {
    let src = "typedef bool BOOL;\nvoid run(BOOL array_Size) {\n  int arraySize = 0;\n}\n";
    let f = findings("minicpp", "IdentifierChecker", src);
    assert_eq!(positions(&f), vec![(3, 7)]);
    assert_eq!(f[0].message, "Local Variable \"arraySize\" is named similar to \"array_Size : BOOL\".");
}

#[test]
fn identifier_similar_to_member() {
    let src = "typedef int INT;\nclass A {\n  INT tempint;\n  void f() {\n    INT tempint = 0;\n  }\n};\n";
    let f = findings("minicpp", "IdentifierChecker", src);
    assert_eq!(positions(&f), vec![(5, 9)]);
    assert!(f[0].message.contains("similar to instance variable \"tempint : INT\""), "{}", f[0].message);
}

#[test]
fn identifier_distinct_names() {
    assert_eq!(cpp("IdentifierChecker", &in_fn("  int alpha = 0;\n  int beta = 0;")), vec![]);
}

#[test]
fn identifier_sibling_scopes_do_not_overlap() {
    assert_eq!(
        cpp(
            "IdentifierChecker",
            "void f(int value);\nvoid g(int value);\nvoid h() { int x = 0; }\nvoid k() { int X = 0; }"
        ),
        vec![]
    );
}

// IfChecker

#[test]
fn if_bare_then_branch() {
    assert_eq!(cpp("IfChecker", &in_fn("  if (a) x = 1;")), vec![(2, 3)]);
}

#[test]
fn if_bare_else_branch() {
    assert_eq!(cpp("IfChecker", &in_fn("  if (a) { } else x = 1;")), vec![(2, 19)]);
}

#[test]
fn if_braced() {
    assert_eq!(cpp("IfChecker", &in_fn("  if (a) { } else { }")), vec![]);
}

#[test]
fn if_else_if_chain() {
    assert_eq!(cpp("IfChecker", &in_fn("  if (a) { } else if (b) { }")), vec![]);
}

// InitializedVariableChecker

#[test]
fn uninitialized_local() {
    assert_eq!(cpp("InitializedVariableChecker", &in_fn("  int x;")), vec![(2, 7)]);
}

#[test]
fn initialized_local() {
    assert_eq!(cpp("InitializedVariableChecker", &in_fn("  int x = 0;")), vec![]);
}

#[test]
fn uninitialized_member_and_global_exempt() {
    assert_eq!(cpp("InitializedVariableChecker", "int g;\nclass A { int x; };"), vec![]);
}

// InterfaceChecker

#[test]
fn interface_undeclared_public_function() {
    let src = "class Shape {\npublic:\n  double derive();\n};\n";
    let f = findings("minicpp", "InterfaceChecker", src);
    assert_eq!(positions(&f), vec![(1, 7)]);
    assert_eq!(f[0].message, "Class Shape has public functions not declared in interfaces: derive : DOUBLE");
}

#[test]
fn interface_fully_declared() {
    let src = "class IShape {\npublic:\n  virtual double area() = 0;\n  virtual ~IShape() {}\n};\n\
               class Square : public IShape {\npublic:\n  Square();\n  double area();\n  static Square unit();\nprivate:\n  double helper();\n};\n";
    assert_eq!(cpp("InterfaceChecker", src), vec![]);
}

#[test]
fn interface_private_inheritance_does_not_count() {
    let src = "class IShape {\npublic:\n  virtual double area() = 0;\n};\nclass Square : private IShape {\npublic:\n  double area();\n};\n";
    assert_eq!(cpp("InterfaceChecker", src), vec![(5, 7)]);
}

#[test]
fn interface_open_api_skips_classes_without_interfaces() {
    let src = "class Shape {\npublic:\n  double derive();\n};\n";
    assert_eq!(cpp_with("InterfaceChecker", &[("CloseAPI", "false")], src), vec![]);
}

// MemoryChecker

#[test]
fn memory_never_freed() {
    let src = "int run() {\n  int* p = new int;\n  return 0;\n}\n";
    let f = findings("minicpp", "MemoryChecker", src);
    assert_eq!(positions(&f), vec![(2, 12)]);
    assert_eq!(f[0].message, "Memory allocated for \"p\" is never freed.");
}

#[test]
fn memory_array_scalar_mismatch() {
    assert_eq!(cpp("MemoryChecker", &in_fn("  int* p = new int[4];\n  delete p;")), vec![(3, 3)]);
}

#[test]
fn memory_paired() {
    assert_eq!(
        cpp("MemoryChecker", &in_fn("  int* p = new int;\n  delete p;\n  int* q = new int[2];\n  delete[] q;")),
        vec![]
    );
}

#[test]
fn memory_escaping_pointer() {
    let src = "int* g = 0;\nint* make() {\n  int* p = new int;\n  return p;\n}\nvoid keep() {\n  int* q = new int;\n  g = q;\n}\n";
    assert_eq!(cpp("MemoryChecker", src), vec![]);
}

// NamingConventionChecker

#[test]
fn naming_class_not_upper_camel() {
    assert_eq!(cpp("NamingConventionChecker", "class my_class {};"), vec![(1, 7)]);
}

#[test]
fn naming_hungarian_prefix() {
    let f = messages("minicpp", "NamingConventionChecker", "char* szName = 0;");
    assert_eq!(f, vec!["Variable name \"szName\" uses the Hungarian prefix \"sz\".".to_string()]);
}

#[test]
fn naming_clean() {
    assert_eq!(cpp("NamingConventionChecker", "class Library {};\nint bookCount = 0;"), vec![]);
}

// NamespaceChecker

#[test]
fn namespace_global_using() {
    assert_eq!(cpp("NamespaceChecker", "using namespace std;"), vec![(1, 1)]);
}

#[test]
fn namespace_clean() {
    assert_eq!(cpp("NamespaceChecker", "namespace n { class A {}; }\nint main() {\n  return 0;\n}\n"), vec![]);
}

#[test]
fn namespace_global_class() {
    assert_eq!(cpp("NamespaceChecker", "class A {};"), vec![(1, 7)]);
}

// SingleLetterVariableChecker

#[test]
fn single_letter_local() {
    assert_eq!(cpp("SingleLetterVariableChecker", &in_fn("  int x;")), vec![(2, 7)]);
}

#[test]
fn single_letter_loop_index() {
    let body = "  for (int i = 0; i < 3; i++) { }";
    assert_eq!(cpp("SingleLetterVariableChecker", &in_fn(body)), vec![]);
    assert_eq!(cpp_with("SingleLetterVariableChecker", &[("allowLoopIndices", "false")], &in_fn(body)), vec![(2, 12)]);
}

#[test]
fn single_letter_longer_name() {
    assert_eq!(cpp("SingleLetterVariableChecker", &in_fn("  int idx;")), vec![]);
}

// SwitchChecker

#[test]
fn switch_clean() {
    assert_eq!(cpp("SwitchChecker", &in_fn("  switch (x) { case 1: { f(); break; } default: { } }")), vec![]);
}

#[test]
fn switch_unbraced_case() {
    assert_eq!(cpp("SwitchChecker", &in_fn("  switch (x) { case 1: f(); break; default: {} }")), vec![(2, 16)]);
}

#[test]
fn switch_without_default() {
    assert_eq!(cpp("SwitchChecker", &in_fn("  switch (x) { case 1: { f(); break; } }")), vec![(2, 3)]);
}

#[test]
fn switch_fallthrough() {
    let body = "  switch (x) {\n  case 1: { f(); }\n  case 2: { break; }\n  default: { }\n  }";
    assert_eq!(cpp("SwitchChecker", &in_fn(body)), vec![(3, 3)]);
}

// SymbolOrderChecker

#[test]
fn symbol_order_late_declaration() {
    assert_eq!(cpp("SymbolOrderChecker", &in_fn("  int a = 0;\n  f();\n  int b = 0;")), vec![(4, 7)]);
}

#[test]
fn symbol_order_declarations_first() {
    assert_eq!(cpp("SymbolOrderChecker", &in_fn("  int a = 0;\n  int b = 0;\n  f();")), vec![]);
}

#[test]
fn symbol_order_no_declarations() {
    assert_eq!(cpp("SymbolOrderChecker", &in_fn("  f();")), vec![]);
}

// TypeDefChecker

#[test]
fn typedef_bad_name() {
    assert_eq!(cpp("TypeDefChecker", "typedef int Count;"), vec![(1, 13)]);
}

#[test]
fn typedef_good_name() {
    assert_eq!(cpp("TypeDefChecker", "typedef int count_t;"), vec![]);
}

#[test]
fn typedef_custom_pattern() {
    assert_eq!(cpp_with("TypeDefChecker", &[("pattern", "^[A-Z][a-zA-Z0-9]*$")], "typedef int Count;"), vec![]);
}

// TriggerChecker

#[test]
fn trigger_missing_in_library_chart() {
    let f = findings("seqdiag", "TriggerChecker", &read_fixture("librarytest.sd"));
    assert_eq!(positions(&f), vec![(9, 10)]);
}

#[test]
fn trigger_no_driver_messages() {
    let src = "sequencediagram s {\n  object t:T;\n  object a:A;\n  object b:B;\n  {\n    a -> b : go();\n  }\n}\n";
    assert_eq!(sd("TriggerChecker", src), vec![]);
}

#[test]
fn trigger_configured_driver() {
    let src = "sequencediagram s {\n  object a:A;\n  object t:T;\n  {\n    t -> a : go();\n  }\n}\n";
    let f = findings_with("seqdiag", "TriggerChecker", &[("testDriver", "t")], src);
    assert_eq!(positions(&f), vec![(5, 7)]);
}

// NoCallToTestDriverChecker

#[test]
fn no_call_in_library_chart() {
    let f = findings("seqdiag", "NoCallToTestDriverChecker", &read_fixture("librarytest.sd"));
    assert_eq!(positions(&f), vec![(21, 15)]);
}

#[test]
fn no_call_return_to_driver_exempt() {
    let src = "sequencediagram s {\n  object test:T;\n  object librarian:L;\n  {\n    test <- librarian : return x;\n  }\n}\n";
    assert_eq!(sd("NoCallToTestDriverChecker", src), vec![]);
}

#[test]
fn no_call_without_driver_calls() {
    let src = "sequencediagram s {\n  object t:T;\n  object a:A;\n  {\n    t -> a : <<trigger>> go();\n  }\n}\n";
    assert_eq!(sd("NoCallToTestDriverChecker", src), vec![]);
}
