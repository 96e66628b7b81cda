#include "curvfun/expr.hpp"

#include <cctype>
#include <cmath>
#include <numbers>
#include <optional>

#include "curvfun/error.hpp"

namespace curvfun {

struct Expr::Node {
  enum class Kind { kNumber, kPi, kVar, kAdd, kSub, kMul, kDiv, kPow, kNeg, kSin, kCos, kExp, kSqrt };
  Kind kind;
  double number = 0;
  Rational exact;
  int var = 0;
  std::optional<long> int_exponent;  // set for '^' with an integer literal exponent
  std::shared_ptr<const Node> a, b;
};

namespace {

using Node = Expr::Node;
using NodePtr = std::shared_ptr<const Node>;

class Parser {
 public:
  Parser(const std::string& s, int max_vars) : s_(s), max_vars_(max_vars) {}

  NodePtr parse() {
    NodePtr n = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected character");
    return n;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorCode::kParse, what + " at column " + std::to_string(pos_ + 1) + " in '" + s_ + "'");
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  static NodePtr make(Node::Kind k, NodePtr a = nullptr, NodePtr b = nullptr) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->a = std::move(a);
    n->b = std::move(b);
    return n;
  }

  NodePtr expr() {
    NodePtr lhs = term();
    for (;;) {
      if (eat('+'))
        lhs = make(Node::Kind::kAdd, lhs, term());
      else if (eat('-'))
        lhs = make(Node::Kind::kSub, lhs, term());
      else
        return lhs;
    }
  }
  NodePtr term() {
    NodePtr lhs = unary();
    for (;;) {
      if (eat('*'))
        lhs = make(Node::Kind::kMul, lhs, unary());
      else if (eat('/'))
        lhs = make(Node::Kind::kDiv, lhs, unary());
      else
        return lhs;
    }
  }
  NodePtr unary() {
    if (eat('-')) return make(Node::Kind::kNeg, unary());
    if (eat('+')) return unary();
    return power();
  }
  NodePtr power() {
    NodePtr base = atom();
    if (!eat('^')) return base;
    NodePtr ex = unary();
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::kPow;
    n->a = base;
    n->b = ex;
    // integer literal exponents (optionally negated) use exact repeated products
    const Node* e = ex.get();
    bool neg = false;
    if (e->kind == Node::Kind::kNeg) {
      neg = true;
      e = e->a.get();
    }
    if (e->kind == Node::Kind::kNumber && e->exact.get_den() == 1 && std::fabs(e->number) <= 64)
      n->int_exponent = (neg ? -1 : 1) * e->exact.get_num().get_si();
    return n;
  }
  NodePtr atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of expression");
    const char c = s_[pos_];
    if (eat('(')) {
      NodePtr n = expr();
      if (!eat(')')) fail("expected ')'");
      return n;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      const std::string id = s_.substr(start, pos_ - start);
      if (id == "pi") return make(Node::Kind::kPi);
      if (id.size() > 1 && id[0] == 'x' && id.find_first_not_of("0123456789", 1) == std::string::npos) {
        const int k = std::stoi(id.substr(1));
        if (k < 1 || k > max_vars_) {
          pos_ = start;
          fail("variable " + id + " out of range 1.." + std::to_string(max_vars_));
        }
        auto n = std::make_shared<Node>();
        n->kind = Node::Kind::kVar;
        n->var = k - 1;
        return n;
      }
      Node::Kind k;
      if (id == "sin")
        k = Node::Kind::kSin;
      else if (id == "cos")
        k = Node::Kind::kCos;
      else if (id == "exp")
        k = Node::Kind::kExp;
      else if (id == "sqrt")
        k = Node::Kind::kSqrt;
      else {
        pos_ = start;
        fail("unknown identifier '" + id + "'");
      }
      if (!eat('(')) fail("expected '(' after " + id);
      NodePtr arg = expr();
      if (!eat(')')) fail("expected ')'");
      return make(k, arg);
    }
    fail(std::string("unexpected character '") + c + "'");
  }
  NodePtr number() {
    const std::size_t start = pos_;
    std::string digits;
    long frac_digits = 0;
    bool dot = false;
    while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.')) {
      if (s_[pos_] == '.') {
        if (dot) fail("malformed number");
        dot = true;
      } else {
        digits += s_[pos_];
        if (dot) ++frac_digits;
      }
      ++pos_;
    }
    long exponent = 0;
    if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
      std::size_t p = pos_ + 1;
      bool neg = false;
      if (p < s_.size() && (s_[p] == '+' || s_[p] == '-')) neg = s_[p++] == '-';
      const std::size_t ds = p;
      while (p < s_.size() && std::isdigit(static_cast<unsigned char>(s_[p]))) ++p;
      if (p == ds) fail("malformed exponent");
      exponent = std::stol(s_.substr(ds, p - ds)) * (neg ? -1 : 1);
      pos_ = p;
    }
    if (digits.empty()) fail("malformed number");
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::kNumber;
    mpz_class num(digits, 10), ten(10), scale;
    const long e10 = exponent - frac_digits;
    mpz_pow_ui(scale.get_mpz_t(), ten.get_mpz_t(), static_cast<unsigned long>(std::labs(e10)));
    n->exact = e10 >= 0 ? Rational(num * scale) : Rational(num, scale);
    n->exact.canonicalize();
    n->number = std::stod(s_.substr(start, pos_ - start));
    return n;
  }

  const std::string& s_;
  std::size_t pos_ = 0;
  int max_vars_;
};

template <class S>
S constant_of(const Node& n) {
  if constexpr (std::is_same_v<S, Jet<Rational>>)
    return S(n.exact);
  else
    return S(n.number);
}

template <class S>
[[noreturn]] void not_exact(const char* what) {
  throw Error(ErrorCode::kNotExact, std::string(what) + " has no exact rational value");
}

template <class S>
S eval_node(const Node& n, std::span<const S> x) {
  using K = Node::Kind;
  constexpr bool exact = std::is_same_v<S, Jet<Rational>>;
  switch (n.kind) {
    case K::kNumber:
      return constant_of<S>(n);
    case K::kPi:
      if constexpr (exact) not_exact<S>("pi");
      else return S(std::numbers::pi);
    case K::kVar:
      if (static_cast<std::size_t>(n.var) >= x.size())
        throw Error(ErrorCode::kParse, "variable x" + std::to_string(n.var + 1) + " not bound");
      return x[static_cast<std::size_t>(n.var)];
    case K::kAdd:
      return eval_node(*n.a, x) + eval_node(*n.b, x);
    case K::kSub:
      return eval_node(*n.a, x) - eval_node(*n.b, x);
    case K::kMul:
      return eval_node(*n.a, x) * eval_node(*n.b, x);
    case K::kDiv:
      return eval_node(*n.a, x) / eval_node(*n.b, x);
    case K::kNeg:
      return -eval_node(*n.a, x);
    case K::kPow:
      if (n.int_exponent) return ipow(eval_node(*n.a, x), *n.int_exponent);
      if constexpr (exact) {
        not_exact<S>("non-integer power");
      } else {
        if constexpr (std::is_same_v<S, double>) {
          return std::pow(eval_node(*n.a, x), eval_node(*n.b, x));
        } else {
          using std::exp;
          using std::log;
          return exp(eval_node(*n.b, x) * log(eval_node(*n.a, x)));
        }
      }
    case K::kSin:
    case K::kCos:
    case K::kExp:
    case K::kSqrt:
      if constexpr (exact) {
        not_exact<S>("transcendental function");
      } else {
        using std::cos;
        using std::exp;
        using std::sin;
        using std::sqrt;
        const S a = eval_node(*n.a, x);
        if (n.kind == K::kSin) return sin(a);
        if (n.kind == K::kCos) return cos(a);
        if (n.kind == K::kExp) return exp(a);
        return sqrt(a);
      }
  }
  throw Error(ErrorCode::kParse, "corrupt expression tree");
}

bool rational_node(const Node& n) {
  using K = Node::Kind;
  switch (n.kind) {
    case K::kNumber:
    case K::kVar:
      return true;
    case K::kPi:
    case K::kSin:
    case K::kCos:
    case K::kExp:
    case K::kSqrt:
      return false;
    case K::kPow:
      return n.int_exponent.has_value() && rational_node(*n.a);
    case K::kNeg:
      return rational_node(*n.a);
    default:
      return rational_node(*n.a) && rational_node(*n.b);
  }
}

int max_var_node(const Node& n) {
  int m = n.kind == Node::Kind::kVar ? n.var + 1 : 0;
  if (n.a) m = std::max(m, max_var_node(*n.a));
  if (n.b) m = std::max(m, max_var_node(*n.b));
  return m;
}

}  // namespace

Expr Expr::parse(const std::string& text, int max_vars) {
  Expr e;
  e.root_ = Parser(text, max_vars).parse();
  e.text_ = text;
  return e;
}

template <class S>
S Expr::eval(std::span<const S> x) const {
  return eval_node<S>(*root_, x);
}

template double Expr::eval<double>(std::span<const double>) const;
template Jet<double> Expr::eval<Jet<double>>(std::span<const Jet<double>>) const;
template Jet<Rational> Expr::eval<Jet<Rational>>(std::span<const Jet<Rational>>) const;

bool Expr::is_rational() const { return rational_node(*root_); }
int Expr::max_variable() const { return max_var_node(*root_); }

double eval_constant(const std::string& text) {
  const Expr e = Expr::parse(text, 0);
  return e.eval<double>(std::span<const double>{});
}

}  // namespace curvfun
