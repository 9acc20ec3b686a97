#include "doctest.h"

#include <cmath>
#include <numbers>

#include "hyperlap/error.hpp"
#include "hyperlap/hyperfunction.hpp"

using namespace hyperlap;

namespace {
double err(cplx a, cplx b) { return std::abs(a - b); }
}  // namespace

TEST_CASE("delta pairs to point evaluation") {
  const TestDensity phi = gaussian_density(1.0, 0.0);
  CHECK(err(pairing(delta({0.5}), phi), std::exp(-0.25)) < 1e-9);
  // <delta', phi> = -phi'(0) with phi = e^{-(x - 1/2)^2}: -e^{-1/4}
  CHECK(err(pairing(derivative(delta({0.0}), 0), gaussian_density(1.0, 0.5)), -std::exp(-0.25)) < 1e-9);
}

TEST_CASE("Heaviside pairs to the half-line integral") {
  // int_0^inf e^{-x^2} dx
  CHECK(err(pairing(heaviside_exp(0.0, 0.0), gaussian_density(1.0, 0.0)), std::sqrt(std::numbers::pi) / 2) < 1e-9);
  // int_0^inf e^{x} e^{-x^2} dx = sqrt(pi)/2 e^{1/4} (1 + erf(1/2))
  const double oracle = std::sqrt(std::numbers::pi) / 2 * std::exp(0.25) * (1 + std::erf(0.5));
  CHECK(err(pairing(heaviside_exp(1.0, 0.0), gaussian_density(1.0, 0.0)), oracle) < 1e-9);
}

TEST_CASE("tensor deltas pair to product evaluation") {
  const TestDensity phi = product_density(gaussian_density(1.0, 0.0), gaussian_density(2.0, 1.0));
  CHECK(err(pairing(delta({0.5, -0.5}), phi), std::exp(-0.25) * std::exp(-4.5)) < 1e-9);
}

TEST_CASE("linear combinations") {
  const TestDensity phi = gaussian_density(1.0, 0.0);
  Hyperfunction u = add(scale(delta({0.0}), 2.0), scale(delta({1.0}), cplx(0, 1)));
  CHECK(err(pairing(u, phi), cplx(2.0, std::exp(-1.0))) < 1e-9);
  CHECK(pairing(zero_hyperfunction(1), phi) == cplx(0.0));
  CHECK_THROWS_AS(add(delta({0.0}), delta({0.0, 0.0})), Error);
}

TEST_CASE("x u and derivative of x") {
  // x delta = 0
  const auto bat = density_battery(1);
  for (cplx v : pairing_batch(multiply_by_coordinate(delta({0.0}), 0), bat)) CHECK(std::abs(v) < 1e-9);
}

TEST_CASE("support probes") {
  CHECK(support_test(delta({0.0}), {{1.0}, {2.0}}));
  CHECK_FALSE(support_test(delta({0.0}), {{-1.0}, {1.0}}));
  CHECK(support_test(heaviside_exp(0.0, 0.0), {{-3.0}, {-0.5}}));
}

TEST_CASE("cutoff pair reproduces the defining function") {
  const Hyperfunction u = heaviside_exp(0.0, 0.0);
  Cutoff chi;
  chi.core = u.support;
  CechDolbeaultPair p = to_pair(u, u.support, chi);
  CHECK(chi.value(cplx(1.0, 0.1)) == doctest::Approx(1.0));
  CHECK(chi.value(cplx(1.0, 2.0)) == doctest::Approx(0.0));
  const cplx z(1.0, 0.7);
  CHECK(err(p.nu01(z), chi.value(z) * p.defining(z)) < 1e-15);
  CHECK(smooth_step(0.0) == 0.0);
  CHECK(smooth_step(1.0) == 1.0);
}

TEST_CASE("density closed forms") {
  DensityFactor f;
  f.a = 2.0;
  f.c = 0.5;
  f.poly = {1.0, 0.5};
  // exp_moment at zeta = 0 is the plain integral: sqrt(pi/2) (1 + 0.5 * 0.5)
  CHECK(err(f.exp_moment(0.0), std::sqrt(std::numbers::pi / 2) * 1.25) < 1e-13);
  CHECK(density_battery(1).size() == 20);
  CHECK(density_battery(2).size() == 20);
  CHECK(density_battery(2)[0].dim() == 2);
}
