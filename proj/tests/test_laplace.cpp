#include "doctest.h"

#include <cmath>
#include <numbers>

#include "hyperlap/error.hpp"
#include "hyperlap/laplace.hpp"

using namespace hyperlap;

namespace {
AnalyticFunction fn(const std::string& text, int n = 1) {
  AnalyticFunction f;
  f.f = expr_function(text, n);
  return f;
}
double err(cplx a, cplx b) { return std::abs(a - b); }
}  // namespace

TEST_CASE("forward anchors") {
  CHECK(err(forward(delta({1.0}), cplx(2.0)), std::exp(-2.0)) < 1e-12);
  CHECK(err(forward(heaviside_exp(1.0, 0.0), cplx(3.0)), 0.5) < 1e-10);
  CHECK(err(forward(heaviside_exp(1.0, 0.0), cplx(3.0, 7.0)), 1.0 / cplx(2.0, 7.0)) < 1e-10);
  // L(delta') = zeta e^{-a zeta}
  const cplx z(2.0, -1.0);
  CHECK(err(forward(derivative(delta({0.5}), 0), z), z * std::exp(-0.5 * z)) < 1e-10);
  const CVector z2 = {cplx(1, 1), cplx(2, -1)};
  CHECK(err(forward(delta({0.5, -1.0}), z2), std::exp(-0.5 * z2[0] + z2[1])) < 1e-12);
}

TEST_CASE("forward outside the region") {
  CHECK_THROWS_AS(forward(heaviside_exp(2.0, 0.0), cplx(1.0)), Error);
  try {
    forward(heaviside_exp(2.0, 0.0), cplx(1.0));
  } catch (const Error& e) {
    CHECK(e.code() == Errc::out_of_region);
  }
}

TEST_CASE("batch and pair routes agree with the chain") {
  const Hyperfunction u = heaviside_exp(cplx(0.5, 1.0), 0.2);
  std::vector<CVector> zs = {{cplx(2.0)}, {cplx(3.0, 1.0)}};
  auto v = forward_batch(u, zs);
  for (std::size_t i = 0; i < zs.size(); ++i) CHECK(err(v[i], forward(u, zs[i])) < 1e-10);
  Cutoff chi;
  chi.core = u.support;
  auto p = to_pair(u, u.support, chi);
  CHECK(err(forward_pair(p, 2.0), forward(u, cplx(2.0))) < 1e-8);
}

TEST_CASE("inverse of 1/zeta is the Heaviside function") {
  Hyperfunction u = inverse(fn("1/zeta"), half_line(0.0, 1), default_inverse_chain(0.0));
  CHECK(err(pairing(u, gaussian_density(1.0, 0.0)), std::sqrt(std::numbers::pi) / 2) < 1e-8);
}

TEST_CASE("inverse of exp(-zeta) is delta(1)") {
  Hyperfunction u = inverse(fn("exp(-zeta)"), half_line(1.0, 1), default_inverse_chain(0.0));
  const TestDensity phi = gaussian_density(2.0, 0.5, {1.0, cplx(0, 0.5)});
  CHECK(err(pairing(u, phi), phi(cplx(1.0))) < 1e-8);
}

TEST_CASE("chain defaults") {
  InverseChain c = default_inverse_chain(1.0);
  CHECK(c.zeta(0.0).real() == doctest::Approx(1.5));
  CHECK(c.psi.infra_linear());
  CHECK(chain_distance(c, cplx(0.0)) > 1.0);
}

TEST_CASE("triangulation kernel") {
  KernelReport r = check_kernel(default_kernel());
  CHECK(r.covers);
  CHECK(r.bracketed);
  CHECK(r.pass(0.1));
}

TEST_CASE("anchor selection") {
  ReconstructOptions o;
  CHECK(select_anchor(0.0, o) == 4.0);
  CHECK(select_anchor(3.7, o) == 8.0);
  CHECK_THROWS_AS(select_anchor(5000.0, o), Error);
}

TEST_CASE("transform as an analytic function") {
  TransformResult T = transform(delta({1.0}));
  AnalyticFunction g = T.as_analytic();
  CHECK(err(g(cplx(2.0, 1.0)), std::exp(-cplx(2.0, 1.0))) < 1e-12);
  CHECK(T.in_region({cplx(0.5)}));
}
