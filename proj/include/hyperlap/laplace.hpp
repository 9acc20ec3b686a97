#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "hyperlap/analytic.hpp"
#include "hyperlap/chains.hpp"
#include "hyperlap/hyperfunction.hpp"

namespace hyperlap {

// ------------------------------------------------------------------ forward transform

struct ForwardOptions {
  double tol = 1e-11;
  double eps = 0.3;       // loop height above/below K
  double kappa = 0.0;     // tail slope
  double back = -1.0;     // overshoot behind the vertex, defaults to eps
  double margin = 0.0;    // extra damping demanded beyond the growth type
  bool adapt_eps = true;  // shrink eps and back so e^{-z zeta} stays O(1) on the finite loop part
};

// L(u)(zeta) = sum of coeff * integral over L_alpha of F_alpha(z) e^{-z zeta} dz.
cplx forward(const Hyperfunction& u, cplx zeta, const ForwardOptions& opt = {});
cplx forward(const Hyperfunction& u, const CVector& zeta, const ForwardOptions& opt = {});
// Shared contours, one vector quadrature over all zeta (n = 1); n = 2 loops.
std::vector<cplx> forward_batch(const Hyperfunction& u, const std::vector<CVector>& zetas,
                                const ForwardOptions& opt = {});

// Integral of sum coeff F_alpha(w) g_1(w_1)...g_n(w_n) over the loop chains, for kernels with
// |g_k(w)| <= C e^{-decay_k Re(d_k w)} along every ray axis. Forward uses g_k = e^{-w zeta_k}.
using AxisKernel = std::function<cplx(cplx)>;
cplx loop_integral(const Hyperfunction& u, const std::vector<AxisKernel>& kernels, const Vector& decay,
                   const ForwardOptions& opt);

// Cutoff route: integral of nu1 e^{-z zeta} over the support of dbar chi (n = 1).
cplx forward_pair(const CechDolbeaultPair& p, cplx zeta, double tol = 1e-10);

struct TransformResult {
  Hyperfunction source;
  ForwardOptions options;

  int dim() const { return source.n; }
  const ClosedConicSet& support() const { return source.support; }
  double growth_type() const { return source.growth_type(); }
  cplx operator()(const CVector& zeta) const { return forward(source, zeta, options); }
  cplx operator()(cplx zeta) const { return forward(source, zeta, options); }
  // Positive damping on every ray axis of the support.
  bool in_region(const CVector& zeta) const;
  // Numeric AnalyticFunction on the half space Re zeta > 0, usable as inverse input.
  AnalyticFunction as_analytic() const;
};

TransformResult transform(const Hyperfunction& u, const ForwardOptions& opt = {});

struct DerivativeRulesReport {
  double derivative_rule = 0.0;  // max rel. |dL/dzeta_k - L(-x_k u)|
  double multiplier_rule = 0.0;  // max rel. |zeta_k L(u) - L(du/dx_k)|
  std::size_t samples = 0;
  bool pass(double tol = 1e-6) const { return derivative_rule < tol && multiplier_rule < tol; }
};

DerivativeRulesReport derivative_rules_check(const Hyperfunction& u, int k, const std::vector<CVector>& zetas,
                                             const ForwardOptions& opt = {});

// ------------------------------------------------------------------ growth

struct GrowthRaySample {
  std::size_t direction = 0;
  double t = 0.0;
  double ratio = 0.0;  // e^{t h_K(zeta0)} |L(u)(t zeta0)|
  bool out_of_region = false;
};

struct GrowthCertificateReport {
  std::vector<GrowthRaySample> samples;
  std::vector<GrowthRaySample> violations;
  double C = 0.0;    // estimated from the first half of each ray
  double eps = 0.1;
  std::size_t out_of_region = 0;
  bool pass() const { return violations.empty(); }
};

// Along each ray: ratio(t) <= C e^{eps t}, with C fitted on the first half of the t grid.
GrowthCertificateReport growth_certificate(const TransformResult& T, const std::vector<Direction>& rays,
                                           const std::vector<double>& ts, double eps = 0.1);

// ------------------------------------------------------------------ inverse transform

struct InverseOptions {
  double tol = 1e-12;
  bool check_growth = true;
};

// One half (n = 1) or one orthant piece (n = 2) of the inverse integral, as a defining function.
class InverseTerm : public HoloFunction {
 public:
  virtual double growth_type() const = 0;
};

// I L(f) for n = 1: b_+(F_+) + b_-(F_-), F_s(z) = (1/2 pi i) integral over the s half of the
// chain of e^{zeta z} f(zeta) dzeta. For n = 2 the four orthant pieces of the chain, each with
// coefficient +1. The support claim is K.
Hyperfunction inverse(const AnalyticFunction& f, const ClosedConicSet& K, const InverseChain& chain,
                      const InverseOptions& opt = {});

// Default chain for n = 1: psi(0) = s_max + 0.5 with the given rightmost singular abscissa.
InverseChain default_inverse_chain(double s_max, int xi0 = 1);

// Half spaces {<x, xi> >= h(xi)} over the sampled directions.
HalfSpaceFamily support_estimate(const AnalyticFunction& f, const SupportHandle& h,
                                 const std::vector<Direction>& directions);

// Growth audit of f along the chain and along the real ray in direction xi0.
struct InverseGrowthReport {
  // max of q(zeta) - q(anchor) - 0.1 r - 4 log(1 + r) - 1 with q = log|f| + Re<vertex, zeta>,
  // r = |zeta - anchor|: polynomial growth passes, exponential excess fails
  double worst_excess = 0.0;
  bool pass() const { return worst_excess <= 0.0; }
};
InverseGrowthReport inverse_growth_check(const AnalyticFunction& f, const ClosedConicSet& K,
                                         const InverseChain& chain);

// ------------------------------------------------------------------ orthant pieces (n = 2)

struct OrthantExtensionReport {
  double max_discrepancy = 0.0;  // max |sgn(alpha) F_alpha - F_real| over grid and pieces
  double max_value = 0.0;
  std::size_t points = 0;
  bool pass(double tol = 1e-6) const { return max_discrepancy < tol; }
};

// Pieces of an n = 2 inverse output, compared on the left polydisc grid with the real-chain
// integral (1/2 pi i)^2 over anchor + R_+^2.
OrthantExtensionReport orthant_extension_check(const Hyperfunction& inv, const AnalyticFunction& f,
                                               const std::vector<CVector>& grid, double tol = 1e-10);
std::vector<CVector> left_polydisc_grid();

// ------------------------------------------------------------------ triangulation kernel (n = 2)

struct KernelArc {
  double theta0 = 0.0, theta1 = 0.0;
  Vector nu1, nu2;  // columns of A
  double det() const { return nu1[0] * nu2[1] - nu1[1] * nu2[0]; }
};

struct KernelOmega {
  std::vector<KernelArc> arcs;
};

struct KernelReport {
  bool covers = false;     // arcs tile the circle
  bool bracketed = false;  // closure of each arc inside the cone of its columns
  double min_det = 0.0;
  bool pass(double delta) const { return covers && bracketed && min_det >= delta; }
};

KernelOmega default_kernel(int arcs = 8, double bracket = 0.19634954084936207 /* pi/16 */);
KernelReport check_kernel(const KernelOmega& k);

// ------------------------------------------------------------------ reconstruction

struct ReconstructOptions {
  double R = 0.0;        // 0: start at 4 and double until R - H > margin
  double margin = 0.5;
  double cap = 1024.0;
  double tol = 1e-11;
  double eps = 0.1;      // loop height, below the pairing push-in
};

struct Reconstruction {
  double R = 0.0;
  HoloPtr h;           // h_u on the complement of the loops
  Hyperfunction sum;   // sum over alpha of sgn(alpha) b_alpha(h_u)
};

double select_anchor(double H, const ReconstructOptions& opt);
Reconstruction reconstruct(const Hyperfunction& u, const ReconstructOptions& opt = {});
Reconstruction reconstruct(const CechDolbeaultPair& p, const ReconstructOptions& opt = {});

}  // namespace hyperlap
