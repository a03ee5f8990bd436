#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>

#include "sympf/error.hpp"

namespace sympf {

// Abstract syntax tree for coefficient expressions. Nodes are immutable and
// freely shareable. Grammar (loosest to tightest binding):
//
//   sum     := product (('+' | '-') product)*
//   product := unary (('*' | '/') unary)*
//   unary   := '-' unary | power
//   power   := primary ('^' exponent)?      exponent := integer ('^' exponent)?
//   primary := number | variable | call '(' sum ')' | '(' sum ')'
//
// '^' takes a literal integer exponent (right-associative, folded at parse
// time) and binds tighter than unary minus, so -2^2 = -4. Variables follow
// the x<k> / y<k> / t pattern; calls are sin, cos, exp, sqrt, abs.
struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  enum class Kind { kNumber, kVariable, kNegate, kAdd, kSub, kMul, kDiv, kPow, kCall };

  Kind kind;
  double number = 0;        // kNumber
  std::string name;         // kVariable, kCall
  long exponent = 0;        // kPow
  ExprPtr lhs, rhs;         // binaries; kNegate/kCall/kPow use lhs only
  std::size_t offset = 0;   // byte offset into the source, for diagnostics
};

// Structural equality, ignoring source offsets.
bool expr_equal(const Expr& a, const Expr& b);

// Throws Errc::kParse with the byte offset and the expected-token set.
ExprPtr parse_expression(std::string_view source);

using Env = std::map<std::string, double>;

// Throws Errc::kEval (unbound variable, division by zero, sqrt of a
// negative) carrying the offending subtree's offset in the message.
double evaluate(const Expr& e, const Env& env);

std::set<std::string> free_variables(const Expr& e);

// Prints with minimal parentheses; parse(print(e)) is structurally equal
// to e.
std::string to_string(const Expr& e);

}  // namespace sympf
