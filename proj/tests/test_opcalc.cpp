#include "doctest.h"

#include <cmath>

#include "hyperlap/error.hpp"
#include "hyperlap/opcalc.hpp"

using namespace hyperlap;

namespace {
MultiPoly z(int n, int k) { return MultiPoly::variable(n, k); }
}  // namespace

TEST_CASE("exact constants") {
  CRational c = CRational::from_double(0.1);
  CHECK(c.re == Rational(3602879701896397) / Rational(36028797018963968));
  CHECK(c.im == 0);
  CRational q = CRational(Rational(1), Rational(1)) / CRational(Rational(1), Rational(-1));  // (1+i)/(1-i) = i
  CHECK(q == CRational(Rational(0), Rational(1)));
}

TEST_CASE("polynomial parsing") {
  MultiPoly p = parse_poly("D1^2 + D2^2", 2);
  CHECK(p.degree() == 2);
  CHECK(p == z(2, 0).pow(2) + z(2, 1).pow(2));
  MultiPoly q = parse_poly("(D - 1)*(D + 1)", 1);
  CHECK(q == z(1, 0).pow(2) - MultiPoly::constant(1, 1));
  CHECK(parse_poly("3*zeta1*zeta2 - i", 2).coefficient({0, 0}) == CRational(Rational(0), Rational(-1)));
  CHECK_THROWS_AS(parse_poly("D3", 2), Error);
  CHECK_THROWS_AS(parse_poly("D^", 1), SyntaxError);
}

TEST_CASE("principal symbols") {
  CHECK(principal_symbol(DiffOp::parse("D^2 - D + 1", 1)) == z(1, 0).pow(2));
  CHECK(principal_symbol(DiffOp::parse("D1*D2 - 3*D1", 2)) == z(2, 0) * z(2, 1));
  CHECK_THROWS_AS(principal_symbol(DiffOp::parse("0", 1)), Error);
}

TEST_CASE("derivatives and Lipschitz bounds") {
  MultiPoly p = parse_poly("zeta1^3*zeta2 + 2*zeta2", 2);
  CHECK(p.derivative(0) == CRational(3) * (z(2, 0).pow(2) * z(2, 1)));
  // per-coordinate sums 3 and 1 + 2: sqrt(9 + 9)
  CHECK(p.lipschitz_bound() == doctest::Approx(std::sqrt(18.0)));
}

TEST_CASE("operator application") {
  // (d/dx - 1) delta(0) paired with e^{-x^2}: -phi'(0) - phi(0) = -1
  DiffOp P = DiffOp::parse("D - 1", 1);
  CHECK(std::abs(pairing(P.apply(delta({0.0})), gaussian_density(1.0, 0.0)) - cplx(-1.0)) < 1e-9);
}

TEST_CASE("Koszul differential squares to zero") {
  const std::vector<MultiPoly> P = {z(2, 0), z(2, 1)};
  KoszulElement e{0, 2, 2, {}};
  e.add({}, MultiPoly::constant(2, 1));
  KoszulElement de = koszul_d(e, P);
  CHECK(de.degree == 1);
  CHECK(de.parts.at({0}) == z(2, 0));
  CHECK(de.parts.at({1}) == z(2, 1));
  CHECK(koszul_d(de, P).is_zero());
  KoszulElement top{2, 2, 2, {}};
  top.add({0, 1}, MultiPoly::constant(2, 1));
  CHECK_THROWS_AS(koszul_d(top, P), Error);
}

TEST_CASE("homotopy identity holds as an anticommutator") {
  const MultiPoly z1 = z(2, 0), z2 = z(2, 1);
  KoszulElement e{1, 2, 2, {}};
  e.add({0}, z1 * z2);
  const std::vector<MultiPoly> a = {MultiPoly::constant(2, 1), MultiPoly::constant(2, 1)};
  auto r = koszul_homotopy_check({z1, z2}, a, z1 + z2, {e});
  CHECK(r.anticommutator_exact);
  CHECK_FALSE(r.commutator_exact);
  CHECK_THROWS_AS(koszul_homotopy_check({z1, z2}, a, z1, {e}), Error);
}

TEST_CASE("bounded regular sequence check") {
  CHECK(regular_sequence_check_bounded({z(2, 0), z(2, 1)}, 6).consistent);
  auto r = regular_sequence_check_bounded({z(2, 0), z(2, 0)}, 6);
  CHECK_FALSE(r.consistent);
  CHECK(r.failed_position >= 0);
  CHECK_THROWS_AS(regular_sequence_check_bounded({z(2, 0).pow(3), z(2, 1).pow(3)}, 2), Error);
}

TEST_CASE("companion roots") {
  auto roots = poly_roots(parse_poly("zeta^2 + 1", 1));
  REQUIRE(roots.size() == 2);
  for (cplx r : roots) CHECK(std::abs(r * r + 1.0) < 1e-12);
  CHECK(poly_roots(parse_poly("3", 1)).empty());
}

TEST_CASE("characteristic scan") {
  auto grid = projective_grid(2, 0.05);
  CHECK(grid.directions.size() > 100);
  CHECK(projective_grid(1, 0.05).directions.size() == 1);
  // d/dx1 is characteristic exactly at zeta1 = 0
  CharReport r = char_infinity({DiffOp::parse("D1", 2)}, 0.05);
  REQUIRE_FALSE(r.flagged.empty());
  for (auto i : r.flagged) CHECK(std::abs(r.grid.directions[i][0]) < 0.1);
  // D1 and D2 never vanish together on the sphere
  CHECK(char_infinity({DiffOp::parse("D1", 2), DiffOp::parse("D2", 2)}, 0.05).flagged.empty());
}

TEST_CASE("solvability fixtures") {
  CHECK(check_solvable(DiffOp::parse("D - 1", 1), half_line(0.0, 1)).solvable);
  CHECK(check_solvable(DiffOp::parse("D1*D2", 2), shifted_orthant({0.0, 0.0}), 0.05).solvable);
  CHECK_FALSE(check_solvable(DiffOp::parse("D1^2 + D2^2", 2), shifted_orthant({0.0, 0.0}), 0.05).solvable);
  CHECK_THROWS_AS(check_solvable(DiffOp::parse("D", 1), whole_space(1)), Error);
}

TEST_CASE("solve y' - y = delta") {
  SolveResult r = solve(DiffOp::parse("D - 1", 1), delta({0.0}), half_line(0.0, 1));
  CHECK(r.max_residual < 1e-8);
  REQUIRE(r.roots.size() == 1);
  CHECK(std::abs(r.roots[0] - 1.0) < 1e-12);
  // u = Y(x) e^x: int_0^inf e^x e^{-x^2} dx
  const double oracle = std::sqrt(std::acos(-1.0)) / 2 * std::exp(0.25) * (1 + std::erf(0.5));
  CHECK(std::abs(pairing(r.u, gaussian_density(1.0, 0.0)) - oracle) < 1e-8);
  CHECK_THROWS_AS(solve(DiffOp::parse("D1^2 + D2^2", 2), delta({0.0, 0.0}), shifted_orthant({0.0, 0.0})), Error);
}
