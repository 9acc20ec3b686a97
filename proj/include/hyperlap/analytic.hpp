#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hyperlap/density.hpp"
#include "hyperlap/expr.hpp"
#include "hyperlap/geometry.hpp"

namespace hyperlap {

class HoloFunction;
using HoloPtr = std::shared_ptr<const HoloFunction>;

// Point-evaluable holomorphic function of n variables.
class HoloFunction : public std::enable_shared_from_this<HoloFunction> {
 public:
  virtual ~HoloFunction() = default;
  virtual int dim() const = 0;
  virtual cplx eval(const cplx* z) const = 0;
  cplx operator()(cplx z) const { return eval(&z); }
  virtual HoloPtr derivative(int k) const = 0;
  virtual HoloPtr times_coordinate(int k) const;
  virtual std::string describe() const = 0;
  virtual std::optional<Expr> expression() const { return std::nullopt; }
  // Terms that can pair against Gaussian densities without a z-contour override this.
  virtual bool pair_densities(const std::vector<int>& /*alpha*/, const std::vector<TestDensity>& /*phis*/,
                              cplx* /*out*/, double /*tol*/) const {
    return false;
  }
  // Factors (f, g) when F(z1, z2) = f(z1) g(z2); null otherwise.
  virtual std::pair<HoloPtr, HoloPtr> tensor_factors() const { return {nullptr, nullptr}; }
};

HoloPtr expr_function(const Expr& e, int n);
HoloPtr expr_function(const std::string& text, int n);
HoloPtr tensor_function(HoloPtr f1, HoloPtr f2);  // F(z1) G(z2)
HoloPtr sum_function(std::vector<std::pair<cplx, HoloPtr>> terms);
HoloPtr lambda_function(int n, std::function<cplx(const cplx*)> f, std::string label);
HoloPtr coordinate_times(int k, HoloPtr f);  // z_k F

enum class WedgePart { imag, real };

// Omega_alpha = M x i Gamma_alpha: constraint alpha_k Im z_k > 0 (or on Re when part = real).
struct WedgeDescriptor {
  int n = 1;
  std::vector<int> alpha{1};  // +1, -1, or 0 for unconstrained
  WedgePart part = WedgePart::imag;
  std::string base = "M";

  bool contains(const cplx* z) const;
  std::string signs() const;
  static WedgeDescriptor orthant(std::vector<int> alpha);
  static WedgeDescriptor parse_signs(const std::string& s);
};

using SupportHandle = std::function<ExtReal(const Direction&)>;

struct GrowthCertificate {
  double H = 0.0;
  double C = 1.0;
  SupportHandle h;  // optional support-function claim for infra-h checks
  double eps = 0.1;
};

struct AnalyticFunction {
  HoloPtr f;
  WedgeDescriptor domain;
  GrowthCertificate growth;

  cplx operator()(const cplx* z) const { return f->eval(z); }
  cplx operator()(cplx z) const { return f->eval(&z); }
};

struct GrowthReport {
  std::vector<std::size_t> violations;
  double worst_ratio = 0.0;
  bool pass() const { return violations.empty(); }
};

// |f(z)| <= C e^{H|z|} at every sample.
GrowthReport check_growth(const AnalyticFunction& f, const std::vector<CVector>& samples);

struct RaySample {
  std::size_t direction = 0;
  double t = 0.0;
  double ratio = 0.0;
};

struct InfraReport {
  std::vector<RaySample> samples;
  std::vector<RaySample> violations;
  double worst_ratio = 0.0;
  bool pass() const { return violations.empty(); }
};

// e^{t h(zeta0)} |f(t zeta0)| <= C e^{eps t} along each ray.
InfraReport check_infra_exponential(const AnalyticFunction& f, const SupportHandle& h, double eps,
                                    const std::vector<Direction>& rays, const std::vector<double>& ts);

}  // namespace hyperlap
