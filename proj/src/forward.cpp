#include <algorithm>
#include <cmath>
#include <numbers>

#include "hyperlap/error.hpp"
#include "hyperlap/laplace.hpp"

namespace hyperlap {

namespace {

const cplx kTwoPiI(0.0, 2.0 * std::numbers::pi);

// Loop geometry for one coordinate of the support.
struct AxisLoop {
  bool ray = false;
  int d = 1;
  double a = 0.0;
};

std::vector<AxisLoop> axis_loops(const ClosedConicSet& K) {
  if (!K.cone.is_proper()) throw Error(Errc::improper_cone, "support cone is not proper");
  const std::size_t n = K.dim();
  std::vector<AxisLoop> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    bool pos = false, neg = false;
    for (auto& g : K.cone.generators()) {
      if (g[k] > 1e-14) pos = true;
      if (g[k] < -1e-14) neg = true;
    }
    if (pos && neg) throw Error(Errc::unsupported, "support cone must lie in one closed orthant");
    out[k] = {pos || neg, neg ? -1 : 1, K.vertex[k]};
  }
  return out;
}

Path1D axis_path(const AxisLoop& L, int side, double eps, double kappa, double back, double sigma) {
  if (side == 0) throw Error(Errc::unsupported, "loop chains need signed wedges");
  if (L.ray) return RayLoop{L.a, L.d, eps, kappa, back}.half(side, sigma);
  return BoxLoop{L.a, L.a, eps, back}.half(side);
}

// Shared driver: per axis eps, decay and kernels; vector output over m kernel families.
using AxisKernelVec = std::function<void(int axis, cplx w, cplx* out)>;

struct LoopShape {
  double eps = 0.3;
  double back = -1.0;
};

std::vector<cplx> loop_integral_impl(const Hyperfunction& u, int m, const AxisKernelVec& kernel,
                                     const Vector& decay, const std::vector<LoopShape>& shape,
                                     const ForwardOptions& opt) {
  std::vector<cplx> total(m, 0.0);
  if (u.terms.empty()) return total;
  const int n = u.n;
  auto loops = axis_loops(u.support);
  const double tol = opt.tol / u.terms.size();
  const double slope = std::sqrt(1.0 + opt.kappa * opt.kappa);
  for (const WedgeBV& t : u.terms) {
    const double H = t.F.growth.H;
    std::vector<Path1D> paths;
    for (int k = 0; k < n; ++k) {
      double sigma = decay[k] - H * slope - opt.margin;
      if (loops[k].ray && !(sigma > 0))
        throw Error(Errc::out_of_region, "zeta outside the convergence region (damping " + std::to_string(sigma) + ")");
      paths.push_back(
          axis_path(loops[k], t.alpha()[k], shape[k].eps, opt.kappa, shape[k].back, std::max(sigma, 1e-3)));
    }
    const HoloFunction& F = *t.F.f;
    if (n == 1) {
      std::vector<cplx> kv(m);
      auto r = integrate_path_vector(
          [&](cplx z, cplx* out) {
            cplx fz = t.coeff * F.eval(&z);
            kernel(0, z, kv.data());
            for (int j = 0; j < m; ++j) out[j] = fz * kv[j];
          },
          m, paths[0], tol);
      for (int j = 0; j < m; ++j) total[j] += r.value[j];
      continue;
    }
    if (n != 2) throw Error(Errc::unsupported, "loop integrals implemented for n <= 2");
    if (m != 1) throw Error(Errc::unsupported, "vector kernels are n = 1 only");
    auto [f1, f2] = F.tensor_factors();
    if (f1) {
      cplx k1v, k2v;
      auto r1 = integrate_path([&](cplx z) { kernel(0, z, &k1v); return f1->eval(&z) * k1v; }, paths[0], tol * 0.5);
      auto r2 = integrate_path([&](cplx z) { kernel(1, z, &k2v); return f2->eval(&z) * k2v; }, paths[1], tol * 0.5);
      total[0] += t.coeff * r1.value * r2.value;
      continue;
    }
    auto r = integrate_product(
        [&](cplx z1, cplx z2) {
          cplx z[2] = {z1, z2}, k1v, k2v;
          kernel(0, z1, &k1v);
          kernel(1, z2, &k2v);
          return t.coeff * F.eval(z) * k1v * k2v;
        },
        paths[0], paths[1], tol);
    total[0] += r.value;
  }
  return total;
}

Vector forward_decay(const std::vector<AxisLoop>& loops, const std::vector<CVector>& zetas, double kappa) {
  Vector decay(loops.size(), 1e300);
  for (auto& z : zetas)
    for (std::size_t k = 0; k < loops.size(); ++k)
      decay[k] = std::min(decay[k], loops[k].d * z[k].real() - kappa * std::abs(z[k].imag()));
  return decay;
}

// Keep |e^{-z zeta}| = O(e) on the finite part of the loops: height below 1/|Im zeta|,
// overshoot behind the vertex below 1/|Re zeta|.
std::vector<LoopShape> forward_shape(std::size_t n, const std::vector<CVector>& zetas, const ForwardOptions& opt) {
  std::vector<LoopShape> shape(n, LoopShape{opt.eps, opt.back > 0 ? opt.back : opt.eps});
  if (!opt.adapt_eps) return shape;
  for (auto& z : zetas)
    for (std::size_t k = 0; k < n; ++k) {
      if (std::abs(z[k].imag()) * shape[k].eps > 1.0) shape[k].eps = 1.0 / std::abs(z[k].imag());
      if (std::abs(z[k].real()) * shape[k].back > 1.0) shape[k].back = 1.0 / std::abs(z[k].real());
    }
  return shape;
}

}  // namespace

cplx loop_integral(const Hyperfunction& u, const std::vector<AxisKernel>& kernels, const Vector& decay,
                   const ForwardOptions& opt) {
  if (static_cast<int>(kernels.size()) != u.n) throw Error(Errc::domain_mismatch, "one kernel per axis");
  std::vector<LoopShape> shape(u.n, LoopShape{opt.eps, opt.back > 0 ? opt.back : opt.eps});
  return loop_integral_impl(
      u, 1, [&](int k, cplx w, cplx* out) { *out = kernels[k](w); }, decay, shape, opt)[0];
}

std::vector<cplx> forward_batch(const Hyperfunction& u, const std::vector<CVector>& zetas, const ForwardOptions& opt) {
  for (auto& z : zetas)
    if (static_cast<int>(z.size()) != u.n) throw Error(Errc::domain_mismatch, "zeta dimension differs from u");
  if (u.terms.empty() || zetas.empty()) return std::vector<cplx>(zetas.size(), 0.0);
  auto loops = axis_loops(u.support);
  if (u.n == 1) {
    const int m = static_cast<int>(zetas.size());
    return loop_integral_impl(
        u, m,
        [&](int, cplx w, cplx* out) {
          for (int j = 0; j < m; ++j) out[j] = std::exp(-w * zetas[j][0]);
        },
        forward_decay(loops, zetas, opt.kappa), forward_shape(1, zetas, opt), opt);
  }
  std::vector<cplx> out;
  for (auto& z : zetas) {
    std::vector<CVector> one{z};
    out.push_back(loop_integral_impl(
        u, 1, [&](int k, cplx w, cplx* o) { *o = std::exp(-w * z[k]); }, forward_decay(loops, one, opt.kappa),
        forward_shape(u.n, one, opt), opt)[0]);
  }
  return out;
}

cplx forward(const Hyperfunction& u, const CVector& zeta, const ForwardOptions& opt) {
  return forward_batch(u, {zeta}, opt).front();
}

cplx forward(const Hyperfunction& u, cplx zeta, const ForwardOptions& opt) { return forward(u, CVector{zeta}, opt); }

// ------------------------------------------------------------------ cutoff route

namespace {

// Integral of nu1(w) g(w) dzbar ^ dz = 2i nu1 g dx dy over the support of dbar chi.
cplx area_integral(const CechDolbeaultPair& p, const std::function<cplx(cplx)>& g, double sigma, double tol) {
  const Cutoff& chi = p.cutoff;
  const ClosedConicSet& K = chi.core;
  if (K.dim() != 1) throw Error(Errc::unsupported, "cutoff pairs are implemented for n = 1");
  const double a = K.vertex[0];
  bool right = false, left = false;
  for (auto& gen : K.cone.generators()) (gen[0] > 0 ? right : left) = true;
  if (right && left) throw Error(Errc::improper_cone, "cutoff core is the whole line");
  const double r0 = chi.r0, r1 = chi.r1;
  QuadOptions qo;
  qo.tol = tol / 4;
  auto nu1g = [&](cplx w) {
    cplx v = p.nu1(w);
    return v == cplx(0.0) ? v : v * g(w);
  };
  cplx total = 0.0;
  // strips along the ray, |y| in (r0, r1)
  if (right || left) {
    if (!(sigma > 0)) throw Error(Errc::out_of_region, "zeta outside the convergence region");
    const int d = right ? 1 : -1;
    QuadOptions inner = qo;
    inner.tol = qo.tol / (r1 - r0);
    for (int side : {1, -1}) {
      auto outer = [&](double y) {
        auto r = integrate_tail([&](double t) { return nu1g(cplx(a + d * t, side * y)); }, 0.0, sigma, inner);
        return r.value;
      };
      total += gauss_kronrod(outer, r0, r1, qo).value;
    }
  }
  // annulus (half of it behind the vertex when K is a ray)
  double th0 = 0.0, th1 = 2.0 * std::numbers::pi;
  if (right) th0 = 0.5 * std::numbers::pi, th1 = 1.5 * std::numbers::pi;
  if (left) th0 = -0.5 * std::numbers::pi, th1 = 0.5 * std::numbers::pi;
  auto outer = [&](double th) {
    cplx e = std::polar(1.0, th);
    return gauss_kronrod([&](double r) { return nu1g(a + r * e) * r; }, r0, r1, qo).value;
  };
  total += gauss_kronrod(outer, th0, th1, qo).value;
  return cplx(0.0, 2.0) * total;
}

}  // namespace

cplx forward_pair(const CechDolbeaultPair& p, cplx zeta, double tol) {
  double H = p.source.growth_type();
  bool right = false, left = false;
  for (auto& g : p.cutoff.core.cone.generators()) (g[0] > 0 ? right : left) = true;
  double sigma = right ? zeta.real() - H : left ? -zeta.real() - H : 1.0;
  return area_integral(p, [zeta](cplx w) { return std::exp(-w * zeta); }, sigma, tol);
}

// ------------------------------------------------------------------ transform results

TransformResult transform(const Hyperfunction& u, const ForwardOptions& opt) {
  axis_loops(u.support);  // validates the support cone
  return {u, opt};
}

bool TransformResult::in_region(const CVector& zeta) const {
  auto loops = axis_loops(source.support);
  const double H = growth_type() * std::sqrt(1.0 + options.kappa * options.kappa);
  for (std::size_t k = 0; k < loops.size(); ++k)
    if (loops[k].ray &&
        !(loops[k].d * zeta[k].real() - options.kappa * std::abs(zeta[k].imag()) - H - options.margin > 0))
      return false;
  return true;
}

AnalyticFunction TransformResult::as_analytic() const {
  auto self = std::make_shared<TransformResult>(*this);
  const int n = dim();
  AnalyticFunction af;
  af.f = lambda_function(
      n, [self, n](const cplx* z) { return (*self)(CVector(z, z + n)); }, "L(u)");
  auto loops = axis_loops(source.support);
  std::vector<int> alpha;
  for (auto& l : loops) alpha.push_back(l.ray ? l.d : 0);
  af.domain = WedgeDescriptor::orthant(alpha);
  af.domain.part = WedgePart::real;
  af.domain.base = "E*";
  ClosedConicSet K = source.support;
  af.growth.h = [K](const Direction& xi) { return support_function(K, xi); };
  return af;
}

DerivativeRulesReport derivative_rules_check(const Hyperfunction& u, int k, const std::vector<CVector>& zetas,
                                             const ForwardOptions& opt) {
  ForwardOptions fine = opt;
  fine.tol = std::min(opt.tol, 1e-13);
  const Hyperfunction xu = scale(multiply_by_coordinate(u, k), -1.0);
  const Hyperfunction du = derivative(u, k);
  DerivativeRulesReport rep;
  const double h = 1e-2;
  for (const CVector& z : zetas) {
    auto at = [&](double s) {
      CVector w = z;
      w[k] += s;
      return forward(u, w, fine);
    };
    const cplx L = at(0.0);
    const cplx fd = (-at(2 * h) + 8.0 * at(h) - 8.0 * at(-h) + at(-2 * h)) / (12.0 * h);
    const cplx lx = forward(xu, z, fine);
    const cplx ld = forward(du, z, fine);
    const double scale_d = std::max({std::abs(lx), std::abs(L), 1e-300});
    const double scale_m = std::max({std::abs(z[k] * L), std::abs(ld), 1e-300});
    rep.derivative_rule = std::max(rep.derivative_rule, std::abs(fd - lx) / scale_d);
    rep.multiplier_rule = std::max(rep.multiplier_rule, std::abs(z[k] * L - ld) / scale_m);
    ++rep.samples;
  }
  return rep;
}

GrowthCertificateReport growth_certificate(const TransformResult& T, const std::vector<Direction>& rays,
                                           const std::vector<double>& ts, double eps) {
  GrowthCertificateReport rep;
  rep.eps = eps;
  for (std::size_t d = 0; d < rays.size(); ++d) {
    ExtReal h = support_function(T.support(), rays[d]);
    if (!h.is_finite()) throw Error(Errc::domain_error, "ray direction outside HPC");
    std::vector<GrowthRaySample> ray;
    for (double t : ts) {
      GrowthRaySample s{d, t, 0.0, false};
      CVector zeta;
      for (auto& c : rays[d].unit) zeta.push_back(t * c);
      if (!T.in_region(zeta)) {
        s.out_of_region = true;
      } else {
        try {
          s.ratio = std::exp(t * h.value) * std::abs(T(zeta));
        } catch (const Error& e) {
          if (e.code() != Errc::out_of_region) throw;
          s.out_of_region = true;
        }
      }
      if (s.out_of_region) ++rep.out_of_region;
      ray.push_back(s);
      rep.samples.push_back(s);
    }
    std::vector<GrowthRaySample> inside;
    for (auto& s : ray)
      if (!s.out_of_region) inside.push_back(s);
    if (inside.empty()) continue;
    const std::size_t half = std::max<std::size_t>(1, inside.size() / 2);
    double C = 0.0;
    for (std::size_t i = 0; i < half; ++i) C = std::max(C, inside[i].ratio * std::exp(-eps * inside[i].t));
    rep.C = std::max(rep.C, C);
    for (std::size_t i = half; i < inside.size(); ++i)
      if (inside[i].ratio > C * std::exp(eps * inside[i].t) * (1.0 + 1e-9)) rep.violations.push_back(inside[i]);
  }
  return rep;
}

// ------------------------------------------------------------------ reconstruction

double select_anchor(double H, const ReconstructOptions& opt) {
  if (opt.R > 0) {
    if (!(opt.R - H > opt.margin)) throw Error(Errc::convergence_fail, "anchor R does not dominate the growth type");
    return opt.R;
  }
  double R = 4.0;
  while (!(R - H > opt.margin)) {
    R *= 2.0;
    if (R > opt.cap) throw Error(Errc::convergence_fail, "no admissible anchor below the cap");
  }
  return R;
}

namespace {

Hyperfunction alternating_sum(const HoloPtr& h, int n, double R, const ClosedConicSet& support) {
  Hyperfunction sum;
  sum.n = n;
  sum.support = support;
  const int count = 1 << n;
  for (int mask = 0; mask < count; ++mask) {
    std::vector<int> alpha(n);
    int sgn = 1;
    for (int k = 0; k < n; ++k) {
      alpha[k] = (mask >> k) & 1 ? -1 : 1;
      sgn *= alpha[k];
    }
    AnalyticFunction af;
    af.f = h;
    af.domain = WedgeDescriptor::orthant(alpha);
    af.growth.H = R * n;
    sum.terms.push_back({af, static_cast<double>(sgn)});
  }
  return sum;
}

}  // namespace

Reconstruction reconstruct(const Hyperfunction& u, const ReconstructOptions& opt) {
  auto loops = axis_loops(u.support);
  for (auto& l : loops)
    if (l.ray && l.d < 0) throw Error(Errc::unsupported, "reconstruction assumes K inside a + closed first orthant");
  Reconstruction rec;
  rec.R = select_anchor(u.growth_type(), opt);
  const double R = rec.R;
  const int n = u.n;
  auto src = std::make_shared<Hyperfunction>(u);
  ForwardOptions fo;
  fo.tol = opt.tol;
  fo.eps = opt.eps;
  fo.adapt_eps = false;
  const double eps = opt.eps;
  rec.h = lambda_function(
      n,
      [src, R, n, fo, eps](const cplx* z) {
        for (int k = 0; k < n; ++k)
          if (!(std::abs(z[k].imag()) > eps)) throw Error(Errc::domain_error, "h_u is evaluated off the loops only");
        std::vector<AxisKernel> ker;
        for (int k = 0; k < n; ++k) {
          cplx zk = z[k];
          ker.push_back([zk, R](cplx w) { return std::exp((zk - w) * R) / (w - zk); });
        }
        cplx pre = 1.0;
        for (int k = 0; k < n; ++k) pre /= kTwoPiI;
        return pre * loop_integral(*src, ker, Vector(n, R), fo);
      },
      "h_u");
  if (u.terms.empty()) rec.h = lambda_function(n, [](const cplx*) { return cplx(0.0); }, "0");
  rec.sum = alternating_sum(rec.h, n, R, u.support);
  return rec;
}

Reconstruction reconstruct(const CechDolbeaultPair& p, const ReconstructOptions& opt) {
  Reconstruction rec;
  rec.R = select_anchor(p.source.growth_type(), opt);
  const double R = rec.R;
  const double sigma = R - p.source.growth_type();
  auto pair = std::make_shared<CechDolbeaultPair>(p);
  const double tol = opt.tol;
  rec.h = lambda_function(
      1,
      [pair, R, sigma, tol](const cplx* z) {
        const cplx zz = z[0];
        if (!(pair->cutoff.dist(zz) > pair->cutoff.r1))
          throw Error(Errc::domain_error, "h_u is evaluated outside the cutoff support only");
        return area_integral(*pair, [zz, R](cplx w) { return std::exp((zz - w) * R) / (w - zz); }, sigma, tol) /
               kTwoPiI;
      },
      "h_u");
  rec.sum = alternating_sum(rec.h, 1, R, p.source.support);
  return rec;
}

}  // namespace hyperlap
