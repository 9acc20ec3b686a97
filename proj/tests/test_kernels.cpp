#include "doctest.h"

#include <random>

#include "hyperlap/kernels.hpp"

using namespace hyperlap;
using namespace hyperlap::kernels;

namespace {
std::vector<CVector> random_dirs(std::size_t m) {
  std::mt19937 rng(7);
  std::normal_distribution<double> g;
  std::vector<CVector> d(m);
  for (auto& v : d) v = {cplx(g(rng), g(rng)), cplx(g(rng), g(rng))};
  return d;
}
}  // namespace

TEST_CASE("serial and parallel scans agree exactly") {
  NumericPoly p{2, {{2, 0}, {0, 2}, {1, 1}}, {1.0, 1.0, cplx(0, 0.5)}};
  auto dirs = random_dirs(5000);
  CHECK(abs_scan_serial(p, dirs) == abs_scan_parallel(p, dirs));
  MinAbs a = min_abs_serial(p, dirs), b = min_abs_parallel(p, dirs);
  CHECK(a.value == b.value);
  CHECK(a.index == b.index);
}

TEST_CASE("exponential sums") {
  std::vector<cplx> c = {1.0, -2.0, cplx(0, 1)}, r = {-1.0, cplx(0, 3), 0.5}, z(257);
  for (std::size_t i = 0; i < z.size(); ++i) z[i] = cplx(0.01 * i, -0.02 * i);
  CHECK(exp_sum_serial(c, r, z) == exp_sum_parallel(c, r, z));
}

TEST_CASE("forward grids") {
  const Hyperfunction u = delta({0.5});
  std::vector<CVector> zs = {{cplx(1.0)}, {cplx(2.0, 1.0)}, {cplx(3.0, -2.0)}};
  CHECK(forward_grid_serial(u, zs) == forward_grid_parallel(u, zs));
  zs.push_back({cplx(-1.0)});
  CHECK_NOTHROW(forward_grid_parallel(u, zs));  // delta has no region restriction
  const Hyperfunction y = heaviside_exp(1.0, 0.0);
  CHECK_THROWS(forward_grid_parallel(y, zs));
}
