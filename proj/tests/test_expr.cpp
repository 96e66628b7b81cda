#include <doctest.h>

#include <cmath>
#include <numbers>

#include "curvfun/error.hpp"
#include "curvfun/expr.hpp"

using namespace curvfun;

namespace {

double ev(const std::string& s, std::vector<double> x = {}) {
  return Expr::parse(s).eval<double>(std::span<const double>(x));
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kConfig;
}

}  // namespace

TEST_SUITE("expr") {
  TEST_CASE("precedence and associativity") {
    CHECK(ev("1+2*3") == 7);
    CHECK(ev("(1+2)*3") == 9);
    CHECK(ev("2^3^2") == 512);
    CHECK(ev("-2^2") == -4);
    CHECK(ev("8/2/2") == 2);
    CHECK(ev("1-2-3") == -4);
    CHECK(ev("2*-x1", {3}) == -6);
    CHECK(ev("1.5e2") == 150);
  }

  TEST_CASE("functions, constants and variables") {
    CHECK(ev("pi") == doctest::Approx(std::numbers::pi));
    CHECK(ev("sin(x1)^2+cos(x1)^2", {0.3}) == doctest::Approx(1));
    CHECK(ev("exp(x2)*sqrt(x1)", {4, 1}) == doctest::Approx(2 * std::exp(1.0)));
    CHECK(ev("x1^0.5", {9}) == doctest::Approx(3));
    CHECK(eval_constant("2*pi") == doctest::Approx(2 * std::numbers::pi));
  }

  TEST_CASE("jets differentiate expressions") {
    const Expr e = Expr::parse("x1^2*x2 + sin(x2)");
    const std::vector<Jet<double>> x{Jet<double>::variable(2, 0, 2), Jet<double>::variable(0.5, 1, 2)};
    const Jet<double> j = e.eval<Jet<double>>(x);
    CHECK(j.grad(0) == doctest::Approx(2));
    CHECK(j.grad(1) == doctest::Approx(4 + std::cos(0.5)));
    CHECK(j.hess(0, 1) == doctest::Approx(4));
    CHECK(j.hess(1, 1) == doctest::Approx(-std::sin(0.5)));
  }

  TEST_CASE("rational evaluation") {
    const Expr e = Expr::parse("1-3*x1^2 + 0.25/x2");
    CHECK(e.is_rational());
    const std::vector<Jet<Rational>> x{Jet<Rational>::variable(Rational(1, 3), 0, 2),
                                       Jet<Rational>::variable(Rational(1, 2), 1, 2)};
    CHECK(e.eval<Jet<Rational>>(x).value() == Rational(7, 6));
    const Expr t = Expr::parse("sin(x1)");
    CHECK_FALSE(t.is_rational());
    CHECK(code_of([&] { (void)t.eval<Jet<Rational>>(x); }) == ErrorCode::kNotExact);
    CHECK_FALSE(Expr::parse("pi*x1").is_rational());
    CHECK_FALSE(Expr::parse("x1^0.5").is_rational());
  }

  TEST_CASE("parse errors") {
    CHECK(code_of([] { (void)Expr::parse("1+"); }) == ErrorCode::kParse);
    CHECK(code_of([] { (void)Expr::parse("foo(x1)"); }) == ErrorCode::kParse);
    CHECK(code_of([] { (void)Expr::parse("(1"); }) == ErrorCode::kParse);
    CHECK(code_of([] { (void)Expr::parse("x3", 2); }) == ErrorCode::kParse);
    CHECK(code_of([] { (void)Expr::parse("x0"); }) == ErrorCode::kParse);
    CHECK(code_of([] { (void)Expr::parse("1 2"); }) == ErrorCode::kParse);
    try {
      (void)Expr::parse("1 + * 2");
    } catch (const Error& e) {
      CHECK(std::string(e.what()).find("column") != std::string::npos);
    }
  }

  TEST_CASE("metadata") {
    const Expr e = Expr::parse("x1 + x4*x2");
    CHECK(e.max_variable() == 4);
    CHECK(e.text() == "x1 + x4*x2");
    CHECK(Expr::parse("3").max_variable() == 0);
  }
}
