#include "doctest.h"

#include <cmath>
#include <numbers>

#include "hyperlap/chains.hpp"
#include "hyperlap/error.hpp"
#include "hyperlap/quadrature.hpp"

using namespace hyperlap;

TEST_CASE("Gauss-Kronrod on smooth integrands") {
  auto r = gauss_kronrod([](double x) { return cplx(x * x); }, 0.0, 1.0);
  CHECK(std::abs(r.value - 1.0 / 3.0) < 1e-14);
  auto s = gauss_kronrod([](double x) { return std::exp(cplx(0, 1) * x); }, 0.0, std::numbers::pi);
  CHECK(std::abs(s.value - cplx(0, 2)) < 1e-13);
}

TEST_CASE("error estimates cover the error") {
  QuadOptions o;
  o.tol = 1e-6;
  auto r = gauss_kronrod([](double x) { return cplx(1.0 / (1e-3 + x * x)); }, -1.0, 1.0, o);
  const double exact = 2.0 * std::atan(1.0 / std::sqrt(1e-3)) / std::sqrt(1e-3);
  CHECK(std::abs(r.value - exact) <= 3.0 * r.error_estimate + 1e-12);
}

TEST_CASE("tails") {
  auto r = integrate_tail([](double x) { return cplx(std::exp(-x)); }, 0.0, 1.0);
  CHECK(std::abs(r.value - 1.0) < 1e-10);
  // int_0^inf e^{-(1 - i) x} dx = 1 / (1 - i)
  auto c = integrate_tail([](double x) { return std::exp(cplx(-1, 1) * x); }, 0.0, 1.0);
  CHECK(std::abs(c.value - 1.0 / cplx(1, -1)) < 1e-10);
}

TEST_CASE("vector quadrature matches the scalar rule") {
  auto v = gauss_kronrod_vector(
      [](double x, cplx* out) {
        out[0] = std::sin(x);
        out[1] = std::cos(3 * x);
      },
      2, 0.0, 1.0);
  CHECK(std::abs(v.value[0] - (1 - std::cos(1.0))) < 1e-13);
  CHECK(std::abs(v.value[1] - std::sin(3.0) / 3.0) < 1e-13);
}

TEST_CASE("contour integral of 1/z around the origin") {
  BoxLoop box;
  box.eps = 0.3;
  auto f = [](cplx z) { return 1.0 / z; };
  // counterclockwise: the lower half left to right, then the upper half right to left
  cplx lower = integrate_path(f, box.half(-1), 1e-12).value;
  cplx upper = integrate_path(f, box.half(1), 1e-12).value;
  CHECK(std::abs(lower - upper - cplx(0, 2 * std::numbers::pi)) < 1e-9);
}
