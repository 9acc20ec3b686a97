#include "doctest.h"

#include <cmath>

#include "hyperlap/error.hpp"
#include "hyperlap/hyperfunction.hpp"

using namespace hyperlap;

TEST_CASE("extended reals round trip through text") {
  CHECK(ExtReal::parse("-inf") == ExtReal::neg_inf());
  CHECK(ExtReal::parse("+inf") == ExtReal::pos_inf());
  CHECK(ExtReal::parse("2.5").value == 2.5);
  CHECK(ExtReal::parse(ExtReal::neg_inf().to_string()) == ExtReal::neg_inf());
  CHECK_THROWS_AS(ExtReal::parse("two"), Error);
}

TEST_CASE("support function of a half line") {
  const ClosedConicSet K = half_line(1.0, 1);
  auto h = support_function(K, Direction::real({1.0}));
  REQUIRE(h.is_finite());
  CHECK(h.value == doctest::Approx(1.0));
  CHECK(support_function(K, Direction::real({-1.0})).kind == ExtReal::Kind::neg_inf);
  CHECK(in_hpc(K, Direction::real({1.0})));
  CHECK_FALSE(in_hpc(K, Direction::real({-1.0})));
}

TEST_CASE("shifted orthant") {
  const ClosedConicSet K = shifted_orthant({1.0, 2.0});
  CHECK(K.contains({1.0, 2.0}));
  CHECK(K.contains({5.0, 2.5}));
  CHECK_FALSE(K.contains({0.5, 3.0}));
  // h_K(xi) = <vertex, xi> for xi in the closed first quadrant
  auto h = support_function(K, Direction::real({1.0, 1.0}));
  REQUIRE(h.is_finite());
  CHECK(h.value == doctest::Approx(3.0 / std::sqrt(2.0)));
  CHECK(distance(K, {0.0, 0.0}) == doctest::Approx(std::sqrt(5.0)));
  CHECK(distance(K, {3.0, 0.0}) == doctest::Approx(2.0));
  for (auto& d : hpc_fan(K, 5)) CHECK(in_hpc(K, d));
}

TEST_CASE("duals and properness") {
  PolyhedralCone quadrant(2, {{1.0, 0.0}, {0.0, 1.0}});
  CHECK(quadrant.is_proper());
  DualCone d = dual_cone(quadrant);
  CHECK(d.contains(Vector{1.0, 0.5}));
  CHECK_FALSE(d.contains(Vector{1.0, -0.5}));
  PolyhedralCone line(1, {{1.0}, {-1.0}});
  CHECK_FALSE(line.is_proper());
  CHECK_THROWS_AS(PolyhedralCone(2, {{0.0, 0.0}}), Error);
}

TEST_CASE("half space hull is an outer approximation") {
  const ClosedConicSet K = shifted_orthant({0.0, 0.0});
  HalfSpaceFamily fam = halfspace_hull(K, hpc_fan(K, 7));
  CHECK(fam.contains({0.0, 0.0}));
  CHECK(fam.contains({3.0, 0.1}));
  CHECK_FALSE(fam.contains({-1.0, -1.0}));
}
