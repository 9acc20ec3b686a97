#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace hyperlap {

using cplx = std::complex<double>;

struct QuadratureResult {
  cplx value{};
  double error_estimate = 0.0;
  long evaluations = 0;
  double abs_value = 0.0;  // integral of |f|, used for tail decisions
};

struct VectorQuadratureResult {
  std::vector<cplx> value;
  std::vector<double> error_estimate;
  std::vector<double> abs_value;
  long evaluations = 0;
  double max_error() const;
  double max_abs() const;
};

struct QuadOptions {
  double tol = 1e-10;       // absolute tolerance on the total
  double rel_tol = 0.0;     // also accept error <= rel_tol * integral of |f| (noisy integrands)
  int max_depth = 40;       // bisection depth per interval
  long max_evaluations = 4'000'000;
};

// Adaptive Gauss-Kronrod (7/15) with global bisection of the worst interval.
QuadratureResult gauss_kronrod(const std::function<cplx(double)>& f, double a, double b,
                               const QuadOptions& opt = {});

// Same strategy with m integrands sharing abscissae; the worst component drives refinement.
using VectorIntegrand = std::function<void(double t, cplx* out)>;
VectorQuadratureResult gauss_kronrod_vector(const VectorIntegrand& f, int m, double a, double b,
                                            const QuadOptions& opt = {});

// Integral over [a, inf) of an integrand with certified exponential decay rate sigma > 0.
// The window doubles until the last slab contributes below tol/10 in absolute mass.
QuadratureResult integrate_tail(const std::function<cplx(double)>& f, double a, double sigma,
                                const QuadOptions& opt = {});
VectorQuadratureResult integrate_tail_vector(const VectorIntegrand& f, int m, double a, double sigma,
                                             const QuadOptions& opt = {});

// Fixed composite rule: panels refined adaptively once, then reused as node/weight lists.
struct NodeRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// The 15 Kronrod abscissae and weights mapped to [a, b].
void kronrod_nodes(double a, double b, double* x, double* w);

}  // namespace hyperlap
