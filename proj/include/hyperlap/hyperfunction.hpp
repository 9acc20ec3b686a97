#pragma once

#include <vector>

#include "hyperlap/analytic.hpp"
#include "hyperlap/density.hpp"
#include "hyperlap/geometry.hpp"

namespace hyperlap {

// coeff * b_alpha(F): boundary value of F from the wedge F.domain.
struct WedgeBV {
  AnalyticFunction F;
  cplx coeff = 1.0;

  const std::vector<int>& alpha() const { return F.domain.alpha; }
};

// Finite sum of boundary values, with a claimed support K.
struct Hyperfunction {
  int n = 1;
  std::vector<WedgeBV> terms;
  ClosedConicSet support;

  double growth_type() const;
};

ClosedConicSet whole_space(int n);
ClosedConicSet point_set(const Vector& a);
ClosedConicSet half_line(double a, int direction);
ClosedConicSet shifted_orthant(const Vector& a);  // a + closure(Gamma_+^n)

Hyperfunction zero_hyperfunction(int n);
Hyperfunction delta(const Vector& a);
Hyperfunction heaviside_exp(cplx c, double a);
Hyperfunction boundary_value(const AnalyticFunction& F, const std::vector<int>& alpha, cplx coeff = 1.0);
Hyperfunction boundary_value(const AnalyticFunction& F, const std::vector<int>& alpha, cplx coeff,
                             const ClosedConicSet& support);
Hyperfunction tensor(const Hyperfunction& u, const Hyperfunction& v);
Hyperfunction add(const Hyperfunction& u, const Hyperfunction& v);
Hyperfunction scale(const Hyperfunction& u, cplx c);
Hyperfunction derivative(const Hyperfunction& u, int k);
Hyperfunction multiply_by_coordinate(const Hyperfunction& u, int k);

struct PairingOptions {
  double tol = 1e-11;
  double push_in = -1.0;  // default: min(0.5, 0.5/sqrt(max Gaussian rate))
  double slope = 0.25;
  double center = 0.0;    // abscissa of the hyperbola vertex
  double range_cap = 200.0;
  double rel_tol = 0.0;             // relative floor against the integral of |F phi|
  long max_evaluations = 400'000;   // per quadrature; defining functions may be expensive
};

std::vector<cplx> pairing_batch(const Hyperfunction& u, const std::vector<TestDensity>& phis,
                                const PairingOptions& opt = {});
cplx pairing(const Hyperfunction& u, const TestDensity& phi, const PairingOptions& opt = {});

struct Box {
  Vector lo, hi;
};

struct SupportTestReport {
  bool pass = false;
  double max_abs_pairing = 0.0;
  std::size_t densities = 0;
};

SupportTestReport support_test_report(const Hyperfunction& u, const Box& region, double tol = 1e-7);
bool support_test(const Hyperfunction& u, const Box& region, double tol = 1e-7);

// Smooth cutoff chi(z) = S((r1 - dist(z, core)) / (r1 - r0)) built from e^{-1/t}.
struct Cutoff {
  double r0 = 0.5, r1 = 1.0;
  ClosedConicSet core;

  double dist(cplx z, cplx* nearest = nullptr) const;
  double value(cplx z) const;
  cplx dbar(cplx z) const;  // d chi / d zbar
};

double smooth_step(double t);
double smooth_step_deriv(double t);

// Cutoff-realised representative: nu01 = chi * sigma_alpha F_alpha on the half planes,
// nu1 = dbar(chi) * sigma_alpha F_alpha (the dzbar ^ dz coefficient), sigma_+ = 1, sigma_- = -1.
struct CechDolbeaultPair {
  Hyperfunction source;
  Cutoff cutoff;

  cplx nu01(cplx z) const;
  cplx nu1(cplx z) const;
  cplx defining(cplx z) const;  // sigma_alpha sum over terms on the half plane of z
};

CechDolbeaultPair to_pair(const Hyperfunction& u, const ClosedConicSet& region, const Cutoff& chi);

}  // namespace hyperlap
