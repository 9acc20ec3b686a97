#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "hyperlap/error.hpp"
#include "hyperlap/laplace.hpp"

namespace hyperlap {

namespace {

const cplx kTwoPiI(0.0, 2.0 * std::numbers::pi);

cplx ipow(cplx z, int m) {
  cplx r = 1.0;
  for (int i = 0; i < m; ++i) r *= z;
  return r;
}

// F_s(z) = (1/2 pi i) integral over eta in s[0, inf) of zeta^power f(zeta) e^{zeta z} zeta'(eta) d eta.
class InverseHalf final : public InverseTerm {
 public:
  InverseHalf(HoloPtr f, InverseChain chain, int side, int power, double tol)
      : f_(std::move(f)), chain_(std::move(chain)), side_(side), power_(power), tol_(tol) {}

  int dim() const override { return 1; }

  cplx eval(const cplx* zp) const override {
    const cplx z = *zp;
    const double y = side_ * z.imag();
    if (y < 0 || (y == 0 && !(chain_.xi0 * z.real() < 0)))
      throw Error(Errc::domain_error, "inverse half evaluated outside its wedge");
    Path1D path = chain_.half(side_, std::max(y, 0.02));
    auto r = integrate_path(
        [&](cplx zeta) { return ipow(zeta, power_) * f_->eval(&zeta) * std::exp(zeta * z); }, path, tol_);
    return r.value / kTwoPiI;
  }

  HoloPtr derivative(int) const override {
    return std::make_shared<InverseHalf>(f_, chain_, side_, power_ + 1, tol_);
  }

  std::string describe() const override {
    std::ostringstream os;
    os << "inverse half " << (side_ > 0 ? "+" : "-") << " of " << f_->describe();
    if (power_) os << " times zeta^" << power_;
    return os.str();
  }

  double growth_type() const override { return std::max(chain_.psi(0.0), 0.0) + 0.05; }

  // <b_s(F_s), phi> = (1/2 pi i) integral over the half chain of zeta^power f Phi.
  bool pair_densities(const std::vector<int>& alpha, const std::vector<TestDensity>& phis, cplx* out,
                      double tol) const override {
    if (alpha.size() != 1 || alpha[0] != side_) return false;
    const int m = static_cast<int>(phis.size());
    auto r = integrate_path_vector(
        [&](cplx zeta, cplx* o) {
          cplx w = ipow(zeta, power_) * f_->eval(&zeta) / kTwoPiI;
          for (int j = 0; j < m; ++j) o[j] = w * phis[j].exp_moment(&zeta);
        },
        m, chain_.half(side_, 1.0), tol);
    std::copy(r.value.begin(), r.value.end(), out);
    return true;
  }

 private:
  HoloPtr f_;
  InverseChain chain_;
  int side_;
  int power_;
  double tol_;
};

// Orthant piece alpha = (s1, s2) of the n = 2 inverse integral over
// zeta_k = a_k + (g(r) + i s_k) u_k, g = psi_hat(r) / r, u = r (cos t, sin t) in R_+^2.
class OrthantPiece final : public InverseTerm {
 public:
  OrthantPiece(HoloPtr f, InverseChain chain, std::array<int, 2> s, std::array<int, 2> power, double tol)
      : f_(std::move(f)), chain_(std::move(chain)), s_(s), power_(power), tol_(tol) {}

  int dim() const override { return 2; }

  double g(double r) const { return r < 1e-12 ? chain_.psi.c1 * chain_.psi.p : chain_.psi_hat(r) / r; }
  double gprime(double r) const {
    if (r < 1e-6) return 0.5 * chain_.psi.c1 * chain_.psi.p * (chain_.psi.p - 1.0);
    return (chain_.psi_hat_deriv(r) * r - chain_.psi_hat(r)) / (r * r);
  }

  // Chain point and Jacobian determinant times r (polar area element).
  void point(double r, double th, cplx* zeta, cplx* jac) const {
    const double u[2] = {r * std::cos(th), r * std::sin(th)};
    const double gr = g(r), gp = gprime(r);
    cplx d[2];
    for (int k = 0; k < 2; ++k) {
      d[k] = cplx(gr, s_[k]);
      zeta[k] = chain_.anchor[k] + d[k] * u[k];
    }
    // det(D + g' u u^T / r) with D = diag(d)
    cplx det = d[0] * d[1];
    if (r > 0) det += gp / r * (u[0] * u[0] * d[1] + u[1] * u[1] * d[0]);
    *jac = det * r;
  }

  cplx weight(const cplx* zeta) const {
    return ipow(zeta[0], power_[0]) * ipow(zeta[1], power_[1]) * f_->eval(zeta);
  }

  // Coupled chain integral of weight * kernel, vector over m kernels.
  std::vector<cplx> coupled(int m, const std::function<void(const cplx*, cplx*)>& kernel,
                            const std::function<double(double)>& sigma_of_theta, double tol) const {
    QuadOptions outer_opt;
    outer_opt.tol = tol;
    const double pre = s_[0] * s_[1];
    auto outer = [&](double th, cplx* out) {
      QuadOptions inner_opt;
      inner_opt.tol = tol * 0.1;
      std::vector<cplx> kv(m);
      auto r = integrate_tail_vector(
          [&](double r, cplx* o) {
            cplx zeta[2], jac;
            point(r, th, zeta, &jac);
            cplx w = weight(zeta) * jac;
            kernel(zeta, kv.data());
            for (int j = 0; j < m; ++j) o[j] = w * kv[j];
          },
          m, 0.0, sigma_of_theta(th), inner_opt);
      for (int j = 0; j < m; ++j) out[j] = r.value[j];
    };
    auto r = gauss_kronrod_vector(outer, m, 0.0, 0.5 * std::numbers::pi, outer_opt);
    for (auto& v : r.value) v *= pre / (kTwoPiI * kTwoPiI);
    return r.value;
  }

  // Mixed chain: coordinates in `real` run along a_k + R_+, the others along the 1D type
  // a_k + psi_hat(u) + i s_k u. Valid for x_k < 0 on the real coordinates.
  cplx mixed(const cplx* z, const bool real[2]) const {
    auto coord = [&](int k, double t, cplx* zeta, cplx* dz) {
      if (real[k]) {
        *zeta = chain_.anchor[k] + t;
        *dz = 1.0;
      } else {
        *zeta = cplx(chain_.anchor[k] + chain_.psi_hat(t), s_[k] * t);
        *dz = cplx(chain_.psi_hat_deriv(t), s_[k]);
      }
    };
    double sig[2];
    for (int k = 0; k < 2; ++k) sig[k] = real[k] ? -z[k].real() : s_[k] * z[k].imag();
    QuadOptions outer_opt;
    outer_opt.tol = tol_;
    QuadOptions inner_opt;
    inner_opt.tol = tol_ * 0.1;
    auto outer = [&](double t1) {
      cplx zeta[2], dz1, dz2;
      coord(0, t1, &zeta[0], &dz1);
      auto r = integrate_tail(
          [&](double t2) {
            coord(1, t2, &zeta[1], &dz2);
            return weight(zeta) * std::exp(zeta[0] * z[0] + zeta[1] * z[1]) * dz1 * dz2;
          },
          0.0, std::max(sig[1], 0.02), inner_opt);
      return r.value;
    };
    auto r = integrate_tail(outer, 0.0, std::max(sig[0], 0.02), outer_opt);
    return r.value * double(s_[0] * s_[1]) / (kTwoPiI * kTwoPiI);
  }

  cplx eval(const cplx* z) const override {
    bool real[2];
    bool any = false;
    for (int k = 0; k < 2; ++k) {
      real[k] = !(s_[k] * z[k].imag() > 0);
      if (real[k] && !(z[k].real() < 0))
        throw Error(Errc::domain_error, "orthant piece evaluated outside its wedge and the left half planes");
      any = any || real[k];
    }
    if (any) return mixed(z, real);
    const double y0 = s_[0] * z[0].imag(), y1 = s_[1] * z[1].imag();
    return coupled(
        1, [&](const cplx* zeta, cplx* o) { *o = std::exp(zeta[0] * z[0] + zeta[1] * z[1]); },
        [&](double th) { return std::max(std::cos(th) * y0 + std::sin(th) * y1, 0.02); }, tol_)[0];
  }

  HoloPtr derivative(int k) const override {
    auto p = power_;
    ++p[k];
    return std::make_shared<OrthantPiece>(f_, chain_, s_, p, tol_);
  }

  std::string describe() const override {
    std::ostringstream os;
    os << "orthant piece (" << (s_[0] > 0 ? "+" : "-") << (s_[1] > 0 ? "+" : "-") << ") of " << f_->describe();
    return os.str();
  }

  double growth_type() const override {
    return std::abs(chain_.anchor[0]) + std::abs(chain_.anchor[1]) + 0.1;
  }

  bool pair_densities(const std::vector<int>& alpha, const std::vector<TestDensity>& phis, cplx* out,
                      double tol) const override {
    if (alpha.size() != 2 || alpha[0] != s_[0] || alpha[1] != s_[1]) return false;
    const int m = static_cast<int>(phis.size());
    auto v = coupled(
        m,
        [&](const cplx* zeta, cplx* o) {
          for (int j = 0; j < m; ++j) o[j] = phis[j].exp_moment(zeta);
        },
        [](double) { return 1.0; }, tol);
    std::copy(v.begin(), v.end(), out);
    return true;
  }

  const InverseChain& chain() const { return chain_; }
  std::array<int, 2> signs() const { return s_; }

 private:
  HoloPtr f_;
  InverseChain chain_;
  std::array<int, 2> s_;
  std::array<int, 2> power_;
  double tol_;
};

}  // namespace

InverseChain default_inverse_chain(double s_max, int xi0) {
  Profile psi;
  psi.c1 = 1.0;
  psi.p = 0.5;
  psi.c0 = s_max + 0.5 - psi.c1;
  return make_inverse_chain(xi0, psi);
}

InverseGrowthReport inverse_growth_check(const AnalyticFunction& f, const ClosedConicSet& K,
                                         const InverseChain& chain) {
  InverseGrowthReport rep;
  rep.worst_excess = -1e300;
  const std::size_t n = K.dim();
  auto q = [&](const CVector& zeta) {
    cplx v = f.f->eval(zeta.data());
    if (v == cplx(0.0) || !std::isfinite(std::abs(v))) return std::abs(v) == 0 ? -1e300 : 1e300;
    double s = std::log(std::abs(v));
    for (std::size_t k = 0; k < n; ++k) s += K.vertex[k] * zeta[k].real();
    return s;
  };
  std::vector<CVector> pts;
  CVector base;
  if (chain.n == 1) {
    base = {chain.zeta(0.0)};
    for (double t = 0.5; t <= 1024; t *= 2) {
      pts.push_back({chain.zeta(t)});
      pts.push_back({chain.zeta(-t)});
      pts.push_back({base[0] + double(chain.xi0) * t});
    }
  } else {
    base = {chain.anchor[0], chain.anchor[1]};
    for (double r = 0.5; r <= 512; r *= 2)
      for (int j = 0; j <= 4; ++j) {
        double th = 0.5 * std::numbers::pi * j / 4.0;
        double u[2] = {r * std::cos(th), r * std::sin(th)};
        for (int s1 : {1, -1})
          for (int s2 : {1, -1}) {
            int s[2] = {s1, s2};
            CVector z(2);
            for (int k = 0; k < 2; ++k) z[k] = cplx(chain.anchor[k] + chain.psi_hat(r) * u[k] / r, s[k] * u[k]);
            pts.push_back(z);
          }
        pts.push_back({chain.anchor[0] + u[0], chain.anchor[1] + u[1]});
      }
  }
  const double q0 = q(base);
  // numeric f carries an absolute noise floor; only samples of appreciable size are audited
  const double floor = std::log(std::abs(f.f->eval(base.data()))) - 18.0;
  for (auto& z : pts) {
    if (std::log(std::abs(f.f->eval(z.data()))) < floor) continue;
    double dist = 0.0;
    for (std::size_t k = 0; k < n; ++k) dist += std::norm(z[k] - base[k]);
    const double r = std::sqrt(dist);
    double e = q(z) - q0 - 0.1 * r - 4.0 * std::log1p(r) - 1.0;
    rep.worst_excess = std::max(rep.worst_excess, e);
  }
  return rep;
}

Hyperfunction inverse(const AnalyticFunction& f, const ClosedConicSet& K, const InverseChain& chain,
                      const InverseOptions& opt) {
  const int n = f.f->dim();
  if (n != chain.n || static_cast<int>(K.dim()) != n) throw Error(Errc::domain_mismatch, "dimension mismatch");
  if (opt.check_growth) {
    auto g = inverse_growth_check(f, K, chain);
    if (!g.pass())
      throw Error(Errc::growth_certificate_fail,
                  "f grows faster than the support claim allows (excess " + std::to_string(g.worst_excess) + ")");
  }
  Hyperfunction u;
  u.n = n;
  u.support = K;
  if (n == 1) {
    for (int side : {1, -1}) {
      auto half = std::make_shared<InverseHalf>(f.f, chain, side, 0, opt.tol);
      AnalyticFunction af;
      af.f = half;
      af.domain = WedgeDescriptor::orthant({side});
      af.growth.H = half->growth_type();
      u.terms.push_back({af, 1.0});
    }
    return u;
  }
  if (n != 2) throw Error(Errc::unsupported, "inverse implemented for n <= 2");
  for (int s1 : {1, -1})
    for (int s2 : {1, -1}) {
      auto piece = std::make_shared<OrthantPiece>(f.f, chain, std::array<int, 2>{s1, s2},
                                                  std::array<int, 2>{0, 0}, opt.tol);
      AnalyticFunction af;
      af.f = piece;
      af.domain = WedgeDescriptor::orthant({s1, s2});
      af.growth.H = piece->growth_type();
      u.terms.push_back({af, 1.0});
    }
  return u;
}

HalfSpaceFamily support_estimate(const AnalyticFunction&, const SupportHandle& h,
                                 const std::vector<Direction>& directions) {
  HalfSpaceFamily fam;
  for (auto& d : directions) {
    ExtReal v = h(d);
    if (v.kind == ExtReal::Kind::neg_inf) continue;  // no constraint
    fam.entries.push_back({d, v.is_finite() ? v.value : 1e300});
  }
  return fam;
}

// ------------------------------------------------------------------ orthant extension

std::vector<CVector> left_polydisc_grid() {
  const std::vector<cplx> pts = {{-1, 1}, {-1, -1}, {-0.5, 0.5}, {-0.5, -0.5}, {-1.5, 0}};
  std::vector<CVector> grid;
  for (auto a : pts)
    for (auto b : pts) grid.push_back({a, b});
  return grid;
}

OrthantExtensionReport orthant_extension_check(const Hyperfunction& inv, const AnalyticFunction& f,
                                               const std::vector<CVector>& grid, double tol) {
  if (inv.n != 2) throw Error(Errc::domain_mismatch, "orthant extension is an n = 2 check");
  OrthantExtensionReport rep;
  if (inv.terms.empty()) return rep;
  const auto* first = dynamic_cast<const OrthantPiece*>(inv.terms.front().F.f.get());
  if (!first) throw Error(Errc::domain_mismatch, "terms are not orthant pieces of an inverse transform");
  const Vector anchor = first->chain().anchor;
  QuadOptions outer_opt;
  outer_opt.tol = tol;
  QuadOptions inner_opt;
  inner_opt.tol = tol * 0.1;
  for (const CVector& z : grid) {
    if (!(z[0].real() < 0 && z[1].real() < 0)) throw Error(Errc::domain_error, "grid must lie in Re z < 0");
    // real chain anchor + R_+^2
    auto outer = [&](double t1) {
      return integrate_tail(
                 [&](double t2) {
                   cplx zeta[2] = {anchor[0] + t1, anchor[1] + t2};
                   return f.f->eval(zeta) * std::exp(zeta[0] * z[0] + zeta[1] * z[1]);
                 },
                 0.0, -z[1].real(), inner_opt)
          .value;
    };
    const cplx ref = integrate_tail(outer, 0.0, -z[0].real(), outer_opt).value / (kTwoPiI * kTwoPiI);
    rep.max_value = std::max(rep.max_value, std::abs(ref));
    for (auto& t : inv.terms) {
      const auto* piece = dynamic_cast<const OrthantPiece*>(t.F.f.get());
      if (!piece) throw Error(Errc::domain_mismatch, "terms are not orthant pieces of an inverse transform");
      auto s = piece->signs();
      cplx v = double(s[0] * s[1]) * t.coeff * piece->eval(z.data());
      rep.max_discrepancy = std::max(rep.max_discrepancy, std::abs(v - ref));
    }
    ++rep.points;
  }
  return rep;
}

// ------------------------------------------------------------------ kernel

KernelOmega default_kernel(int arcs, double bracket) {
  KernelOmega k;
  const double step = 2.0 * std::numbers::pi / arcs;
  for (int l = 0; l < arcs; ++l) {
    KernelArc a;
    a.theta0 = l * step;
    a.theta1 = (l + 1) * step;
    a.nu1 = {std::cos(a.theta0 - bracket), std::sin(a.theta0 - bracket)};
    a.nu2 = {std::cos(a.theta1 + bracket), std::sin(a.theta1 + bracket)};
    k.arcs.push_back(a);
  }
  return k;
}

KernelReport check_kernel(const KernelOmega& k) {
  KernelReport rep;
  if (k.arcs.empty()) return rep;
  auto arcs = k.arcs;
  std::sort(arcs.begin(), arcs.end(), [](auto& a, auto& b) { return a.theta0 < b.theta0; });
  rep.covers = true;
  for (std::size_t i = 0; i + 1 < arcs.size(); ++i)
    if (std::abs(arcs[i].theta1 - arcs[i + 1].theta0) > 1e-12) rep.covers = false;
  if (std::abs(arcs.back().theta1 - arcs.front().theta0 - 2.0 * std::numbers::pi) > 1e-12) rep.covers = false;
  rep.bracketed = true;
  rep.min_det = 1e300;
  for (auto& a : arcs) {
    const double det = a.det();
    rep.min_det = std::min(rep.min_det, det);
    if (!(det > 0)) {
      rep.bracketed = false;
      continue;
    }
    for (int j = 0; j <= 32; ++j) {
      double th = a.theta0 + (a.theta1 - a.theta0) * j / 32.0;
      double w0 = std::cos(th), w1 = std::sin(th);
      // A c = w
      double c1 = (w0 * a.nu2[1] - w1 * a.nu2[0]) / det;
      double c2 = (a.nu1[0] * w1 - a.nu1[1] * w0) / det;
      if (!(c1 > 0 && c2 > 0)) rep.bracketed = false;
    }
  }
  return rep;
}

}  // namespace hyperlap
