#pragma once

// Small arithmetic expression language for user-defined metrics.
//
//   expr   := term (('+' | '-') term)*
//   term   := unary (('*' | '/') unary)*
//   unary  := '-' unary | power
//   power  := atom ('^' unary)?
//   atom   := number | 'pi' | x<k> | func '(' expr ')' | '(' expr ')'
//   func   := sin | cos | exp | sqrt
//
// Variables are x1..xn (1-based). Integer exponents are evaluated by repeated
// multiplication, so polynomial expressions also evaluate over exact
// rationals; anything transcendental (or pi) raises kNotExact there.

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "curvfun/jet.hpp"
#include "curvfun/rational.hpp"

namespace curvfun {

class Expr {
 public:
  /// Parses `text`; throws kParse with the offending column on failure, or
  /// if a variable index exceeds `max_vars`.
  static Expr parse(const std::string& text, int max_vars = kMaxVars);

  template <class S>
  S eval(std::span<const S> x) const;

  /// True if the expression only uses field operations and integer powers.
  bool is_rational() const;
  /// Largest variable index used (1-based), 0 for constants.
  int max_variable() const;
  const std::string& text() const { return text_; }

  struct Node;

 private:
  std::shared_ptr<const Node> root_;
  std::string text_;
};

extern template double Expr::eval<double>(std::span<const double>) const;
extern template Jet<double> Expr::eval<Jet<double>>(std::span<const Jet<double>>) const;
extern template Jet<Rational> Expr::eval<Jet<Rational>>(std::span<const Jet<Rational>>) const;

/// Evaluates a constant expression such as "2*pi".
double eval_constant(const std::string& text);

}  // namespace curvfun
