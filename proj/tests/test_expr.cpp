#include "doctest.h"

#include <cmath>
#include <numbers>

#include "hyperlap/analytic.hpp"
#include "hyperlap/error.hpp"

using namespace hyperlap;

TEST_CASE("parse and evaluate") {
  Expr e = parse("exp(-z)/z");
  CHECK(std::abs(evaluate(e, {{"z", 2.0}}) - std::exp(-2.0) / 2.0) < 1e-15);
  CHECK(std::abs(evaluate(parse("(1+2*i)^2"), {}) - cplx(-3, 4)) < 1e-15);
  CHECK(std::abs(evaluate(parse("sqrt(-4)"), {}) - cplx(0, 2)) < 1e-15);
  CHECK(is_constant(parse("pi/2")));
  CHECK_FALSE(is_constant(parse("z1 + 1")));
}

TEST_CASE("print round trip") {
  for (const char* t : {"1/(z-1)", "exp(-(z1+z2))/(z1*z2)", "z^3 - 2*z + i"}) {
    Expr e = parse(t);
    CHECK(structurally_equal(parse(print(e)), e));
  }
}

TEST_CASE("symbolic derivative") {
  Expr d = diff(parse("z^3 + exp(2*z)"), "z");
  const cplx z(0.3, -0.7);
  CHECK(std::abs(evaluate(d, {{"z", z}}) - (3.0 * z * z + 2.0 * std::exp(2.0 * z))) < 1e-13);
}

TEST_CASE("log cut placement") {
  // principal cut: arg in (-pi, pi]
  CHECK(std::abs(log_with_cut(-1.0, kPrincipalCut) - cplx(0, std::numbers::pi)) < 1e-15);
  // cut along [0, inf): arg in (-2 pi, 0]
  CHECK(std::abs(log_with_cut(-1.0, 0.0) - cplx(0, -std::numbers::pi)) < 1e-15);
  CHECK(std::abs(log_with_cut(cplx(0, 1), 0.0) - cplx(0, -1.5 * std::numbers::pi)) < 1e-15);
}

TEST_CASE("syntax errors carry positions") {
  try {
    parse("1 + * z");
    FAIL("no throw");
  } catch (const SyntaxError& e) {
    CHECK(e.position() == 4);
  }
  CHECK_THROWS_AS(parse("foo(z)"), Error);
}

TEST_CASE("expression functions accept zeta names") {
  HoloPtr f = expr_function("1/(zeta-1)", 1);
  CHECK(std::abs((*f)(3.0) - 0.5) < 1e-15);
  HoloPtr g = expr_function("zeta1*zeta2", 2);
  const cplx z[2] = {2.0, 3.0};
  CHECK(std::abs(g->eval(z) - 6.0) < 1e-15);
}
