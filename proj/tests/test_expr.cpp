#include <cmath>

#include "doctest.h"
#include "fminlab/error.hpp"
#include "fminlab/expr.hpp"
#include "fminlab/expr_corpus.hpp"

using namespace fminlab;

namespace {

ParseError::Kind parse_error_kind(const std::string& text, const std::string& var) {
  try {
    parse(text, var);
  } catch (const ParseError& e) {
    return e.kind();
  }
  FAIL("expected a parse error for " << text);
  return ParseError::Kind::Syntax;
}

}  // namespace

TEST_CASE("parse and eval basics") {
  const Expr e = parse("1 - 2*t^2", "t");
  CHECK(e.eval(0.25) == doctest::Approx(0.875).epsilon(1e-15));
  CHECK(e.eval(0.5) == 0.5);
  CHECK(parse("exp(t)", "t").kind() == Expr::Kind::Function);
  CHECK(parse("exp(t)", "t").fn() == Expr::Fn::Exp);
  CHECK(parse("sinh(t)", "t").eval(1.0) == doctest::Approx(1.1752011936438014).epsilon(1e-15));
  CHECK(parse("pi", "t").eval(0.0) == doctest::Approx(M_PI));
  CHECK(parse("2e-1*t", "t").eval(1.0) == doctest::Approx(0.2));
}

TEST_CASE("precedence and associativity") {
  CHECK(parse("2^3^2", "x").eval(0) == 512.0);     // right-assoc
  CHECK(parse("-2^2", "x").eval(0) == -4.0);       // ^ binds tighter than unary minus
  CHECK(parse("8/4/2", "x").eval(0) == 1.0);       // left-assoc
  CHECK(parse("5-3-1", "x").eval(0) == 1.0);
  CHECK(parse("2*x^2", "x").eval(3) == 18.0);
  CHECK(parse("-x*3", "x").eval(2) == -6.0);
  CHECK(parse("x^-1", "x").eval(4) == 0.25);
}

TEST_CASE("parse errors") {
  try {
    parse("2*r^", "r");
    FAIL("no error");
  } catch (const ParseError& e) {
    CHECK(e.kind() == ParseError::Kind::Syntax);
    CHECK(e.offset() == 4);
  }
  CHECK(parse_error_kind("foo(t)", "t") == ParseError::Kind::UnknownIdentifier);
  CHECK(parse_error_kind("x + 1", "t") == ParseError::Kind::WrongVariable);
  CHECK(parse_error_kind("t^t", "t") == ParseError::Kind::NonConstantExponent);
  CHECK(parse_error_kind("", "t") == ParseError::Kind::Syntax);
  CHECK(parse_error_kind("(t", "t") == ParseError::Kind::Syntax);
  CHECK(parse_error_kind("t)", "t") == ParseError::Kind::Syntax);
}

TEST_CASE("domain errors name the subexpression") {
  CHECK_THROWS_AS(parse("log(t)", "t").eval(-1.0), EvalDomainError);
  CHECK_THROWS_AS(parse("sqrt(t)", "t").eval(-1.0), EvalDomainError);
  CHECK_THROWS_AS(parse("1/t", "t").eval(0.0), EvalDomainError);
  CHECK_THROWS_AS(parse("t^-2", "t").eval(0.0), EvalDomainError);
  try {
    parse("1 + log(t - 2)", "t").eval(1.0);
  } catch (const EvalDomainError& e) {
    CHECK(e.subexpression() == "log(t-2)");
  }
}

TEST_CASE("differentiate") {
  CHECK(structurally_equal(differentiate(parse("1-2*t^2", "t")), parse("-4*t", "t")));
  CHECK(structurally_equal(differentiate(parse("exp(t)", "t")), parse("exp(t)", "t")));
  const Expr f2 = differentiate(differentiate(parse("-2*t^2", "t")));
  REQUIRE(f2.is_constant());
  CHECK(f2.value() == -4.0);
}

TEST_CASE("simplify") {
  CHECK(render(simplify(parse("0*t + 1*t", "t"))) == "t");
  CHECK(render(simplify(parse("t^1", "t"))) == "t");
  CHECK(render(simplify(parse("2*3", "t"))) == "6");
  CHECK(render(simplify(parse("-(-t)", "t"))) == "t");
}

TEST_CASE("corpus round trip, simplify and derivative properties") {
  const auto corpus = expr_corpus(1000, 6, 20240611);
  REQUIRE(corpus.size() == 1000);
  std::size_t failures = 0;
  double worst = 0.0;
  for (const auto& entry : corpus) {
    const Expr s = simplify(entry.expr);
    const Expr back = parse(render(s), "x");
    if (!structurally_equal(back, s)) {
      ++failures;
      MESSAGE("round trip: " << render(s) << " -> " << render(back));
    }
    const Expr d = differentiate(entry.expr);
    for (double x : entry.points) {
      const double v = entry.expr.eval(x);
      const double sv = s.eval(x);
      CHECK(std::abs(sv - v) <= 1e-12 * std::max(1.0, std::abs(v)));
      const double h = 1e-4 * (std::abs(x) + 1.0);
      const double exact = d.eval(x);
      const double err = std::abs(exact - central_difference(entry.expr, x, h)) /
                         std::max(1.0, std::abs(exact));
      worst = std::max(worst, err);
    }
  }
  CHECK(failures == 0);
  CHECK(worst <= 1e-7);
  MESSAGE("worst derivative error " << worst);
}
