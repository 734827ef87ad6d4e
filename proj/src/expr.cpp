#include "frackit/expr.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <sstream>

#include "frackit/errors.hpp"

namespace frackit::expr {

namespace {

constexpr std::array<std::pair<std::string_view, Func>, 6> kFuncs{{
    {"exp", Func::Exp},
    {"ln", Func::Ln},
    {"sqrt", Func::Sqrt},
    {"sin", Func::Sin},
    {"cos", Func::Cos},
    {"abs", Func::Abs},
}};

Ast make_const(double v) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Constant;
  n->value = v;
  return n;
}

Ast make_var(Kind kind) {
  auto n = std::make_shared<Node>();
  n->kind = kind;
  return n;
}

Ast make_unary(Kind kind, Ast operand) {
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->lhs = std::move(operand);
  return n;
}

Ast make_binary(Kind kind, Ast lhs, Ast rhs) {
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  return n;
}

Ast make_call(Func func, Ast arg) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Call;
  n->func = func;
  n->lhs = std::move(arg);
  return n;
}

class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src) {}

  Ast run() {
    skip_space();
    if (pos_ == src_.size()) throw SyntaxError("empty expression", 0);
    Ast out = expression();
    skip_space();
    if (pos_ != src_.size()) fail("unexpected '" + std::string(1, src_[pos_]) + "'");
    return out;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw SyntaxError(what, pos_); }

  void skip_space() {
    while (pos_ < src_.size() && (src_[pos_] == ' ' || src_[pos_] == '\t' || src_[pos_] == '\n' ||
                                  src_[pos_] == '\r')) {
      ++pos_;
    }
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Ast expression() {
    Ast lhs = term();
    for (;;) {
      if (accept('+')) {
        lhs = make_binary(Kind::Add, lhs, term());
      } else if (accept('-')) {
        lhs = make_binary(Kind::Sub, lhs, term());
      } else {
        return lhs;
      }
    }
  }

  Ast term() {
    Ast lhs = unary();
    for (;;) {
      if (accept('*')) {
        lhs = make_binary(Kind::Mul, lhs, unary());
      } else if (accept('/')) {
        lhs = make_binary(Kind::Div, lhs, unary());
      } else {
        return lhs;
      }
    }
  }

  Ast unary() {
    if (accept('-')) return make_unary(Kind::Neg, unary());
    return power();
  }

  Ast power() {
    Ast base = primary();
    if (accept('^')) return make_binary(Kind::Pow, base, unary());
    return base;
  }

  Ast primary() {
    skip_space();
    if (pos_ == src_.size()) fail("unexpected end of expression");
    const char c = src_[pos_];
    if (accept('(')) {
      Ast inner = expression();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if ((c >= '0' && c <= '9') || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
    fail("unexpected '" + std::string(1, c) + "'");
  }

  Ast number() {
    double v = 0.0;
    const char* first = src_.data() + pos_;
    const char* last = src_.data() + src_.size();
    const auto [end, ec] = std::from_chars(first, last, v, std::chars_format::general);
    if (ec != std::errc() || !std::isfinite(v)) fail("malformed number");
    pos_ += static_cast<std::size_t>(end - first);
    return make_const(v);
  }

  Ast identifier() {
    const std::size_t start = pos_;
    while (pos_ < src_.size() &&
           (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
      ++pos_;
    }
    const std::string_view name = src_.substr(start, pos_ - start);
    if (name == "t") return make_var(Kind::VarT);
    if (name == "y") return make_var(Kind::VarY);
    for (const auto& [fname, func] : kFuncs) {
      if (name == fname) {
        if (!accept('(')) fail("expected '(' after " + std::string(name));
        Ast arg = expression();
        if (!accept(')')) fail("expected ')'");
        return make_call(func, arg);
      }
    }
    throw UnknownIdentifier("unknown identifier '" + std::string(name) + "'", start);
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

int precedence(const Ast& a) {
  switch (a->kind) {
    case Kind::Add:
    case Kind::Sub:
      return 1;
    case Kind::Mul:
    case Kind::Div:
      return 2;
    case Kind::Neg:
      return 3;
    case Kind::Pow:
      return 4;
    case Kind::Constant:
      return a->value < 0.0 ? 0 : 5;
    default:
      return 5;
  }
}

std::string format_number(double v) {
  std::array<char, 32> buf{};
  const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  if (ec != std::errc()) throw InvalidArgument("cannot format number");
  return std::string(buf.data(), end);
}

void print_into(const Ast& a, std::string& out);

void print_wrapped(const Ast& a, bool parens, std::string& out) {
  if (parens) out += '(';
  print_into(a, out);
  if (parens) out += ')';
}

void print_into(const Ast& a, std::string& out) {
  switch (a->kind) {
    case Kind::Constant:
      out += format_number(a->value);
      return;
    case Kind::VarT:
      out += 't';
      return;
    case Kind::VarY:
      out += 'y';
      return;
    case Kind::Add:
    case Kind::Sub:
      print_wrapped(a->lhs, precedence(a->lhs) < 1, out);
      out += a->kind == Kind::Add ? " + " : " - ";
      print_wrapped(a->rhs, precedence(a->rhs) <= 1, out);
      return;
    case Kind::Mul:
    case Kind::Div:
      print_wrapped(a->lhs, precedence(a->lhs) < 2, out);
      out += a->kind == Kind::Mul ? "*" : "/";
      print_wrapped(a->rhs, precedence(a->rhs) <= 2, out);
      return;
    case Kind::Neg:
      out += '-';
      print_wrapped(a->lhs, precedence(a->lhs) < 3, out);
      return;
    case Kind::Pow:
      print_wrapped(a->lhs, precedence(a->lhs) <= 4, out);
      out += '^';
      print_wrapped(a->rhs, precedence(a->rhs) < 3, out);
      return;
    case Kind::Call:
      out += func_name(a->func);
      out += '(';
      print_into(a->lhs, out);
      out += ')';
      return;
  }
}

[[noreturn]] void eval_fail(const Ast& a, const std::string& what) {
  throw EvalError(what + " in '" + print(a) + "'");
}

double checked(const Ast& a, double v) {
  if (!std::isfinite(v)) eval_fail(a, "non-finite result");
  return v;
}

double eval_call(const Ast& a, double x) {
  switch (a->func) {
    case Func::Exp:
      return checked(a, std::exp(x));
    case Func::Ln:
      if (!(x > 0.0)) eval_fail(a, "ln of non-positive argument");
      return std::log(x);
    case Func::Sqrt:
      if (x < 0.0) eval_fail(a, "sqrt of negative argument");
      return std::sqrt(x);
    case Func::Sin:
      return std::sin(x);
    case Func::Cos:
      return std::cos(x);
    case Func::Abs:
      return std::abs(x);
  }
  return x;
}

bool is_const(const Ast& a, double v) { return a->kind == Kind::Constant && a->value == v; }

// Folding constructors for differentiate.
Ast fold_neg(Ast a) {
  if (a->kind == Kind::Constant) return make_const(-a->value);
  if (a->kind == Kind::Neg) return a->lhs;
  return make_unary(Kind::Neg, std::move(a));
}

Ast fold_add(Ast l, Ast r) {
  if (l->kind == Kind::Constant && r->kind == Kind::Constant) return make_const(l->value + r->value);
  if (is_const(l, 0.0)) return r;
  if (is_const(r, 0.0)) return l;
  return make_binary(Kind::Add, std::move(l), std::move(r));
}

Ast fold_sub(Ast l, Ast r) {
  if (l->kind == Kind::Constant && r->kind == Kind::Constant) return make_const(l->value - r->value);
  if (is_const(r, 0.0)) return l;
  if (is_const(l, 0.0)) return fold_neg(std::move(r));
  return make_binary(Kind::Sub, std::move(l), std::move(r));
}

Ast fold_mul(Ast l, Ast r) {
  if (l->kind == Kind::Constant && r->kind == Kind::Constant) return make_const(l->value * r->value);
  if (is_const(l, 0.0) || is_const(r, 0.0)) return make_const(0.0);
  if (is_const(l, 1.0)) return r;
  if (is_const(r, 1.0)) return l;
  if (is_const(l, -1.0)) return fold_neg(std::move(r));
  if (is_const(r, -1.0)) return fold_neg(std::move(l));
  return make_binary(Kind::Mul, std::move(l), std::move(r));
}

Ast fold_div(Ast l, Ast r) {
  if (l->kind == Kind::Constant && r->kind == Kind::Constant && r->value != 0.0) {
    return make_const(l->value / r->value);
  }
  if (is_const(l, 0.0)) return make_const(0.0);
  if (is_const(r, 1.0)) return l;
  return make_binary(Kind::Div, std::move(l), std::move(r));
}

Ast fold_pow(Ast l, Ast r) {
  if (is_const(r, 0.0)) return make_const(1.0);
  if (is_const(r, 1.0)) return l;
  if (l->kind == Kind::Constant && r->kind == Kind::Constant) {
    const double v = std::pow(l->value, r->value);
    if (std::isfinite(v)) return make_const(v);
  }
  return make_binary(Kind::Pow, std::move(l), std::move(r));
}

bool contains(const Ast& a, const auto& pred) {
  if (!a) return false;
  if (pred(*a)) return true;
  return contains(a->lhs, pred) || contains(a->rhs, pred);
}

}  // namespace

SyntaxError::SyntaxError(const std::string& message, std::size_t position)
    : std::runtime_error(message + " at position " + std::to_string(position)),
      position_(position) {}

std::string_view func_name(Func func) {
  for (const auto& [name, f] : kFuncs) {
    if (f == func) return name;
  }
  return "?";
}

Ast parse(std::string_view src) { return Parser(src).run(); }

std::string print(const Ast& ast) {
  std::string out;
  print_into(ast, out);
  return out;
}

bool equal(const Ast& a, const Ast& b) {
  if (!a || !b) return !a && !b;
  if (a->kind != b->kind) return false;
  if (a->kind == Kind::Constant && a->value != b->value) return false;
  if (a->kind == Kind::Call && a->func != b->func) return false;
  return equal(a->lhs, b->lhs) && equal(a->rhs, b->rhs);
}

bool uses_y(const Ast& ast) {
  return contains(ast, [](const Node& n) { return n.kind == Kind::VarY; });
}

bool uses_func(const Ast& ast, Func func) {
  return contains(ast, [func](const Node& n) { return n.kind == Kind::Call && n.func == func; });
}

double eval(const Ast& a, double t, std::optional<double> y) {
  switch (a->kind) {
    case Kind::Constant:
      return a->value;
    case Kind::VarT:
      return t;
    case Kind::VarY:
      if (!y) eval_fail(a, "y is not available");
      return *y;
    case Kind::Add:
      return checked(a, eval(a->lhs, t, y) + eval(a->rhs, t, y));
    case Kind::Sub:
      return checked(a, eval(a->lhs, t, y) - eval(a->rhs, t, y));
    case Kind::Mul:
      return checked(a, eval(a->lhs, t, y) * eval(a->rhs, t, y));
    case Kind::Div: {
      const double num = eval(a->lhs, t, y);
      const double den = eval(a->rhs, t, y);
      if (den == 0.0) eval_fail(a, "division by zero");
      return checked(a, num / den);
    }
    case Kind::Pow:
      return checked(a, std::pow(eval(a->lhs, t, y), eval(a->rhs, t, y)));
    case Kind::Neg:
      return -eval(a->lhs, t, y);
    case Kind::Call:
      return eval_call(a, eval(a->lhs, t, y));
  }
  return 0.0;
}

Ast differentiate(const Ast& a) {
  switch (a->kind) {
    case Kind::Constant:
      return make_const(0.0);
    case Kind::VarT:
      return make_const(1.0);
    case Kind::VarY:
      throw InvalidArgument("differentiate: expression depends on y");
    case Kind::Add:
      return fold_add(differentiate(a->lhs), differentiate(a->rhs));
    case Kind::Sub:
      return fold_sub(differentiate(a->lhs), differentiate(a->rhs));
    case Kind::Mul:
      return fold_add(fold_mul(differentiate(a->lhs), a->rhs),
                      fold_mul(a->lhs, differentiate(a->rhs)));
    case Kind::Div: {
      const Ast num = fold_sub(fold_mul(differentiate(a->lhs), a->rhs),
                               fold_mul(a->lhs, differentiate(a->rhs)));
      return fold_div(num, fold_pow(a->rhs, make_const(2.0)));
    }
    case Kind::Neg:
      return fold_neg(differentiate(a->lhs));
    case Kind::Pow: {
      const Ast du = differentiate(a->lhs);
      const Ast dv = differentiate(a->rhs);
      if (dv->kind == Kind::Constant && dv->value == 0.0) {
        const Ast exponent = fold_sub(a->rhs, make_const(1.0));
        return fold_mul(fold_mul(a->rhs, fold_pow(a->lhs, exponent)), du);
      }
      // u^v (v' ln u + v u' / u)
      const Ast inner = fold_add(fold_mul(dv, make_call(Func::Ln, a->lhs)),
                                 fold_div(fold_mul(a->rhs, du), a->lhs));
      return fold_mul(a, inner);
    }
    case Kind::Call: {
      const Ast& u = a->lhs;
      const Ast du = differentiate(u);
      switch (a->func) {
        case Func::Exp:
          return fold_mul(a, du);
        case Func::Ln:
          return fold_div(du, u);
        case Func::Sqrt:
          return fold_div(du, fold_mul(make_const(2.0), a));
        case Func::Sin:
          return fold_mul(make_call(Func::Cos, u), du);
        case Func::Cos:
          return fold_neg(fold_mul(make_call(Func::Sin, u), du));
        case Func::Abs:
          throw InvalidArgument("differentiate: abs is not differentiable at 0");
      }
    }
  }
  throw InvalidArgument("differentiate: unsupported node");
}

PsiMap make_psi(const Ast& psi, double a, double b) {
  if (uses_y(psi)) throw InvalidArgument("Psi must not depend on y");
  if (uses_func(psi, Func::Abs)) throw InvalidArgument("Psi must not use abs");
  const Ast dpsi = differentiate(psi);
  auto f = [psi](double t) { return eval(psi, t); };
  auto df = [dpsi](double t) { return eval(dpsi, t); };
  return PsiMap(f, df, a, b);
}

}  // namespace frackit::expr
