#include "doctest.h"

#include <cmath>

#include "hyperlap/error.hpp"
#include "hyperlap/laplace.hpp"
#include "hyperlap/literal.hpp"

using namespace hyperlap;

TEST_CASE("builtin literals") {
  CHECK(parse_literal("delta(1)").terms.size() == 2);
  CHECK(parse_literal("0").terms.empty());
  CHECK(parse_literal("delta(1, 2)").n == 2);
  Hyperfunction u = parse_literal("2*d(delta(0.5)) - (1+i)*Y(0)");
  const cplx z = 2.0;
  const cplx expect = 2.0 * z * std::exp(-0.5 * z) - cplx(1, 1) / z;
  CHECK(std::abs(forward(u, z) - expect) < 1e-10);
  CHECK(std::abs(forward(parse_literal("heaviside_exp(1, 0)"), cplx(3.0)) - 0.5) < 1e-10);
  CHECK(parse_literal("tensor(delta(1), Y(0))").n == 2);
  CHECK(parse_literal("delta(1) + 0").terms.size() == 2);
}

TEST_CASE("literal errors") {
  CHECK_THROWS_AS(parse_literal("delta(1"), SyntaxError);
  CHECK_THROWS_AS(parse_literal("delta(1) + 2"), Error);
  CHECK_THROWS_AS(parse_literal("delta(1) * delta(2)"), Error);
  CHECK_THROWS_AS(parse_literal("d(delta(1), 2)"), SyntaxError);
  CHECK_THROWS_AS(parse_literal("3"), Error);
}

TEST_CASE("scalars") {
  CHECK(std::abs(parse_scalar("3+2*i") - cplx(3, 2)) < 1e-15);
  CHECK(std::abs(parse_scalar("exp(i*pi)") + 1.0) < 1e-15);
  CHECK_THROWS_AS(parse_scalar("zeta"), Error);
}

TEST_CASE("cones from text and JSON") {
  CHECK(parse_cone("[0,inf)").cone.generators()[0][0] == 1.0);
  CHECK(parse_cone("(-inf, 2]").vertex[0] == 2.0);
  CHECK(parse_cone("{3}").cone.is_zero());
  CHECK(parse_cone("orthant(1,2)").dim() == 2);
  const ClosedConicSet K = parse_cone(R"({"vertex": [1, 0], "generators": [[1, 0], [1, 1]]})");
  CHECK(K.contains({3.0, 1.0}));
  CHECK_FALSE(K.contains({1.0, 1.0}));
  CHECK(cone_from_json(cone_to_json(K)).cone.generators() == K.cone.generators());
  CHECK_THROWS_AS(parse_cone("[0,1]"), Error);
}

TEST_CASE("JSON literals round trip") {
  const Hyperfunction u = parse_literal("delta(0.5) + 2*heaviside_exp(1+i, 0)");
  const nlohmann::json j = literal_to_json(u);
  CHECK(j["terms"].size() == 4);
  const Hyperfunction w = literal_from_json(j);
  for (cplx z : {cplx(3.0), cplx(2.5, 1.0)}) CHECK(std::abs(forward(u, z) - forward(w, z)) < 1e-10);
  // hand-written literal: b_+(-1/(2 pi i (z - 1))) - b_-(...) is delta(1)
  const auto lit = nlohmann::json::parse(R"json({
    "terms": [
      {"alpha": "+", "coeff": [-1, 0], "expr": "1/(2*pi*i*(z - 1))", "H": 0},
      {"alpha": "-", "coeff": [1, 0], "expr": "1/(2*pi*i*(z - 1))", "H": 0}],
    "support": {"vertex": [1], "generators": []}})json");
  CHECK(std::abs(forward(literal_from_json(lit), cplx(2.0)) - std::exp(-2.0)) < 1e-10);
}
