#pragma once

#include <complex>
#include <string>
#include <vector>

#include "hyperlap/expr.hpp"

namespace hyperlap {

// One factor p(x) exp(-a (x - c)^2) with p a complex polynomial (coefficients by power).
struct DensityFactor {
  std::vector<cplx> poly{1.0};
  double a = 1.0;
  double c = 0.0;

  cplx operator()(cplx z) const;
  DensityFactor derivative() const;
  // Phi(zeta) = integral over R of e^{zeta x} p(x) e^{-a (x-c)^2} dx, in closed form.
  cplx exp_moment(cplx zeta) const;
  // Bound on log|p(z)| + a Im(z)^2 - a Re(z - c)^2, the log-magnitude at z.
  double log_magnitude(cplx z) const;
  Expr to_expr(const std::string& var = "x") const;
};

// Entire test density with Gaussian decay along M; a product of one factor per axis.
struct TestDensity {
  std::vector<DensityFactor> factors;

  int dim() const { return static_cast<int>(factors.size()); }
  cplx operator()(const cplx* z) const;
  cplx operator()(cplx z) const { return (*this)(&z); }
  TestDensity derivative(int k) const;
  cplx exp_moment(const cplx* zeta) const;
  double min_rate() const;
  std::string describe() const;
};

TestDensity gaussian_density(double a, double c, std::vector<cplx> poly = {1.0});
TestDensity product_density(const TestDensity& x, const TestDensity& y);

// The fixed 20-density comparison battery in dimension 1 or 2.
std::vector<TestDensity> density_battery(int n);
// Narrow Gaussians for reconstruction sums, whose defining functions grow like e^{R x}:
// the cancellation in b_+ - b_- costs about R c + R^2/(4a) digits of e.
std::vector<TestDensity> sharp_density_battery(int n);

}  // namespace hyperlap
