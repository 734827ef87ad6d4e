#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "frackit/funcspace.hpp"

// Expression language for user-supplied f(t, y) and Psi(t).
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := '-' unary | power
//   power   := primary ('^' unary)?          right-associative
//   primary := number | 't' | 'y' | func '(' expr ')' | '(' expr ')'
//   func    := exp | ln | sqrt | sin | cos | abs
//
// Numbers are decimal literals with an optional exponent. There is no implicit
// multiplication: "4y" is a syntax error.
namespace frackit::expr {

enum class Kind { Constant, VarT, VarY, Add, Sub, Mul, Div, Pow, Neg, Call };
enum class Func { Exp, Ln, Sqrt, Sin, Cos, Abs };

struct Node;
using Ast = std::shared_ptr<const Node>;

struct Node {
  Kind kind = Kind::Constant;
  double value = 0.0;   // Constant only
  Func func = Func::Exp;  // Call only
  Ast lhs;              // unary operand, call argument, or left operand
  Ast rhs;
};

class SyntaxError : public std::runtime_error {
 public:
  SyntaxError(const std::string& message, std::size_t position);
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

class UnknownIdentifier : public SyntaxError {
 public:
  using SyntaxError::SyntaxError;
};

// Raised during evaluation; the message names the offending subexpression.
class EvalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Ast parse(std::string_view src);

/// Prints with the fewest parentheses that reparse to the same tree.
std::string print(const Ast& ast);

/// Structural equality, constants compared exactly.
bool equal(const Ast& a, const Ast& b);

bool uses_y(const Ast& ast);
bool uses_func(const Ast& ast, Func func);

double eval(const Ast& ast, double t, std::optional<double> y = std::nullopt);

/// d/dt with constant folding. Throws InvalidArgument if the tree contains y
/// or abs.
Ast differentiate(const Ast& ast);

/// Builds Psi and Psi' from an expression in t. Rejects y and abs; the PsiMap
/// constructor then checks Psi' > 0 on its sample.
PsiMap make_psi(const Ast& psi, double a, double b);

std::string_view func_name(Func func);

}  // namespace frackit::expr
