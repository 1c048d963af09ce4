#pragma once

// One-variable expression parsing and evaluation with exact first
// derivatives carried by forward-mode dual numbers.
//
// Grammar: numbers in decimal or scientific notation, the declared variable,
// free identifiers as named parameters, parentheses, unary minus, the binary
// operators + - * / ^ (with ^ right-associative and binding tighter than
// unary minus), and the functions exp, log, sqrt, abs, sin, cos, pow(a, b).

#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace et::expr {

// Value and first derivative with respect to the evaluation variable.
struct Dual {
  double value = 0.0;
  double deriv = 0.0;
};

enum class NodeKind { Number, Variable, Parameter, Negate, Add, Sub, Mul, Div, Pow, Call };
enum class Builtin { Exp, Log, Sqrt, Abs, Sin, Cos };

struct ExprNode {
  NodeKind kind = NodeKind::Number;
  double number = 0.0;        // Number
  std::string name;           // Variable and Parameter
  Builtin fn = Builtin::Exp;  // Call
  std::vector<ExprNode> children;

  friend bool operator==(const ExprNode& a, const ExprNode& b);
};

// A parsed expression together with its declared variable name and the
// sorted list of parameters that must be bound before evaluation.
struct Parsed {
  ExprNode root;
  std::string variable;
  std::vector<std::string> parameters;
};

using ParamMap = std::map<std::string, double>;

Parsed parse(std::string_view text, std::string_view variable);

// Prints with minimal parentheses; parse(to_string(p), var) recovers an
// equal tree.
std::string to_string(const ExprNode& node);
std::string to_string(const Parsed& parsed);

Dual eval(const ExprNode& node, Dual at, const ParamMap& params);
Dual eval(const Parsed& parsed, double at, const ParamMap& params);

// (value, derivative) at `at`.
std::pair<double, double> eval_with_derivative(const Parsed& parsed, double at,
                                               const ParamMap& params);

}  // namespace et::expr
