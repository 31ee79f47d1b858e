#ifndef ROCFLOW_PARSER_HPP
#define ROCFLOW_PARSER_HPP

#include <memory>
#include <string>

#include "rocflow/catalog.hpp"
#include "rocflow/jet.hpp"

namespace rocflow {

// Expression AST over the variables psi and s with +, -, *, /, ^ (real
// exponent, right associative), unary minus, exp, log, sqrt.
struct ExprNode;
using ExprPtr = std::shared_ptr<const ExprNode>;

struct ExprNode {
  enum class Kind { Constant, VarPsi, VarS, Add, Sub, Mul, Div, Pow, Neg, Call };
  Kind kind;
  double value = 0.0;       // Constant
  std::string func;         // Call: exp | log | sqrt
  ExprPtr lhs, rhs;         // binary; unary uses lhs only
};

struct ExprAst {
  ExprPtr root;
};

// Parses a conventional precedence grammar. Throws SyntaxError with a
// character position, or UnknownIdentifier.
ExprAst parse_flow_expression(const std::string& text);

// Canonical fully-parenthesized rendering; parse(print(ast)) reproduces the
// same tree.
std::string print_expression(const ExprAst& ast);
bool expressions_equal(const ExprAst& a, const ExprAst& b);

// Second-order forward-AD evaluation at a cone point.
FlowJet jet_eval(const ExprAst& ast, double psi, double s);

// Wraps an expression as a FlowSpec (sign left indefinite).
FlowSpec make_expression_flow(const std::string& text);

}  // namespace rocflow

#endif
