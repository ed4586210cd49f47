#include "chmorley/expression.hpp"

#include <cctype>
#include <cmath>
#include <memory>
#include <stdexcept>
#include <vector>

namespace chmorley {

namespace {

// value with first partials in x and y
struct Dual {
  double v = 0.0, dx = 0.0, dy = 0.0;
};

Dual operator+(Dual a, Dual b) { return {a.v + b.v, a.dx + b.dx, a.dy + b.dy}; }
Dual operator-(Dual a, Dual b) { return {a.v - b.v, a.dx - b.dx, a.dy - b.dy}; }
Dual operator-(Dual a) { return {-a.v, -a.dx, -a.dy}; }
Dual operator*(Dual a, Dual b) {
  return {a.v * b.v, a.dx * b.v + a.v * b.dx, a.dy * b.v + a.v * b.dy};
}
Dual operator/(Dual a, Dual b) {
  const double inv = 1.0 / b.v;
  const double q = a.v * inv;
  return {q, (a.dx - q * b.dx) * inv, (a.dy - q * b.dy) * inv};
}
Dual chain(Dual a, double f, double fp) { return {f, fp * a.dx, fp * a.dy}; }

struct Node {
  virtual ~Node() = default;
  virtual Dual eval(double x, double y) const = 0;
};
using NodePtr = std::unique_ptr<Node>;

struct Const : Node {
  double c;
  explicit Const(double v) : c(v) {}
  Dual eval(double, double) const override { return {c, 0.0, 0.0}; }
};
struct VarX : Node {
  Dual eval(double x, double) const override { return {x, 1.0, 0.0}; }
};
struct VarY : Node {
  Dual eval(double, double y) const override { return {y, 0.0, 1.0}; }
};
struct Binary : Node {
  char op;
  NodePtr lhs, rhs;
  Binary(char o, NodePtr l, NodePtr r) : op(o), lhs(std::move(l)), rhs(std::move(r)) {}
  Dual eval(double x, double y) const override {
    const Dual a = lhs->eval(x, y);
    const Dual b = rhs->eval(x, y);
    switch (op) {
      case '+': return a + b;
      case '-': return a - b;
      case '*': return a * b;
      case '/': return a / b;
      default:  // '^' with constant exponent, enforced at parse time
        return chain(a, std::pow(a.v, b.v), b.v * std::pow(a.v, b.v - 1.0));
    }
  }
};
struct Negate : Node {
  NodePtr arg;
  explicit Negate(NodePtr a) : arg(std::move(a)) {}
  Dual eval(double x, double y) const override { return -arg->eval(x, y); }
};
struct Call : Node {
  std::string name;
  NodePtr arg;
  Call(std::string n, NodePtr a) : name(std::move(n)), arg(std::move(a)) {}
  Dual eval(double x, double y) const override {
    const Dual a = arg->eval(x, y);
    if (name == "sin") return chain(a, std::sin(a.v), std::cos(a.v));
    if (name == "cos") return chain(a, std::cos(a.v), -std::sin(a.v));
    if (name == "tan") {
      const double t = std::tan(a.v);
      return chain(a, t, 1.0 + t * t);
    }
    if (name == "tanh") {
      const double t = std::tanh(a.v);
      return chain(a, t, 1.0 - t * t);
    }
    if (name == "exp") {
      const double e = std::exp(a.v);
      return chain(a, e, e);
    }
    if (name == "log") return chain(a, std::log(a.v), 1.0 / a.v);
    if (name == "sqrt") {
      const double s = std::sqrt(a.v);
      return chain(a, s, 0.5 / s);
    }
    // abs
    return chain(a, std::fabs(a.v), a.v < 0.0 ? -1.0 : 1.0);
  }
};

class Parser {
 public:
  explicit Parser(const std::string& text) : s_(text) {}

  NodePtr parse() {
    NodePtr e = expr();
    skip_ws();
    if (pos_ != s_.size()) fail("trailing input");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("expression parse error at position " +
                                std::to_string(pos_) + ": " + what);
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool consume(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  NodePtr expr() {
    NodePtr lhs = term();
    for (;;) {
      if (consume('+'))
        lhs = std::make_unique<Binary>('+', std::move(lhs), term());
      else if (consume('-'))
        lhs = std::make_unique<Binary>('-', std::move(lhs), term());
      else
        return lhs;
    }
  }

  NodePtr term() {
    NodePtr lhs = unary();
    for (;;) {
      if (consume('*'))
        lhs = std::make_unique<Binary>('*', std::move(lhs), unary());
      else if (consume('/'))
        lhs = std::make_unique<Binary>('/', std::move(lhs), unary());
      else
        return lhs;
    }
  }

  NodePtr unary() {
    if (consume('-')) return std::make_unique<Negate>(unary());
    return power();
  }

  NodePtr power() {
    NodePtr base = atom();
    if (consume('^')) {
      NodePtr exponent = unary();  // right associative
      const Dual probe0 = exponent->eval(0.1, 0.2);
      const Dual probe1 = exponent->eval(-0.3, 0.7);
      if (probe0.dx != 0.0 || probe0.dy != 0.0 || probe1.v != probe0.v)
        fail("exponent must be a constant");
      return std::make_unique<Binary>('^', std::move(base), std::move(exponent));
    }
    return base;
  }

  NodePtr atom() {
    skip_ws();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      NodePtr e = expr();
      if (!consume(')')) fail("expected ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
    fail(std::string("unexpected character '") + c + "'");
  }

  NodePtr number() {
    std::size_t used = 0;
    double v;
    try {
      v = std::stod(s_.substr(pos_), &used);
    } catch (const std::exception&) {
      fail("malformed number");
    }
    pos_ += used;
    return std::make_unique<Const>(v);
  }

  NodePtr identifier() {
    std::size_t start = pos_;
    while (pos_ < s_.size() &&
           (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
      ++pos_;
    const std::string name = s_.substr(start, pos_ - start);
    if (name == "x") return std::make_unique<VarX>();
    if (name == "y") return std::make_unique<VarY>();
    if (name == "pi") return std::make_unique<Const>(M_PI);
    static const char* funcs[] = {"sin", "cos", "tan", "tanh", "exp", "log", "sqrt", "abs"};
    for (const char* f : funcs) {
      if (name == f) {
        if (!consume('(')) fail("expected '(' after " + name);
        NodePtr arg = expr();
        if (!consume(')')) fail("expected ')'");
        return std::make_unique<Call>(name, std::move(arg));
      }
    }
    fail("unknown identifier '" + name + "'");
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

}  // namespace

ScalarField compile_expression(const std::string& text) {
  auto root = std::shared_ptr<Node>(Parser(text).parse());
  ScalarField f;
  f.value = [root](const Vec2& p) { return root->eval(p.x(), p.y()).v; };
  f.gradient = [root](const Vec2& p) {
    const Dual d = root->eval(p.x(), p.y());
    return Vec2(d.dx, d.dy);
  };
  return f;
}

}  // namespace chmorley
