#include "hyperlap/hyperfunction.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hyperlap/error.hpp"
#include "hyperlap/quadrature.hpp"

namespace hyperlap {

namespace {

const cplx kTwoPiI(0.0, 2.0 * std::numbers::pi);

AnalyticFunction make_af(const Expr& e, std::vector<int> alpha, double H, double C = 1.0) {
  AnalyticFunction af;
  af.f = expr_function(e, static_cast<int>(alpha.size()));
  af.domain = WedgeDescriptor::orthant(std::move(alpha));
  af.growth.H = H;
  af.growth.C = C;
  return af;
}

}  // namespace

double Hyperfunction::growth_type() const {
  double h = 0.0;
  for (auto& t : terms) h = std::max(h, t.F.growth.H);
  return h;
}

ClosedConicSet whole_space(int n) {
  std::vector<Vector> gens;
  for (int k = 0; k < n; ++k) {
    Vector e(n, 0.0);
    e[k] = 1;
    gens.push_back(e);
    e[k] = -1;
    gens.push_back(e);
  }
  return {Vector(n, 0.0), PolyhedralCone(n, gens)};
}

ClosedConicSet point_set(const Vector& a) { return {a, PolyhedralCone(a.size(), {})}; }

ClosedConicSet half_line(double a, int direction) {
  return {{a}, PolyhedralCone(1, {{direction > 0 ? 1.0 : -1.0}})};
}

ClosedConicSet shifted_orthant(const Vector& a) {
  std::vector<Vector> gens;
  for (std::size_t k = 0; k < a.size(); ++k) {
    Vector e(a.size(), 0.0);
    e[k] = 1;
    gens.push_back(e);
  }
  return {a, PolyhedralCone(a.size(), gens)};
}

Hyperfunction zero_hyperfunction(int n) {
  Hyperfunction u;
  u.n = n;
  u.support = point_set(Vector(n, 0.0));
  return u;
}

Hyperfunction delta(const Vector& a) {
  if (a.size() == 2) return tensor(delta({a[0]}), delta({a[1]}));
  if (a.size() != 1) throw Error(Errc::unsupported, "delta is built for n = 1, 2");
  Expr F = ex::div(ex::constant(1.0), ex::sub(ex::var("z1"), ex::constant(a[0])));
  Hyperfunction u;
  u.n = 1;
  u.support = point_set(a);
  u.terms.push_back({make_af(F, {1}, 0.0), -1.0 / kTwoPiI});
  u.terms.push_back({make_af(F, {-1}, 0.0), 1.0 / kTwoPiI});
  return u;
}

Hyperfunction heaviside_exp(cplx c, double a) {
  // G = -(1/2 pi i) e^{c(z-a)} log(-(z-a)), principal log: cut of G along [a, inf).
  Expr shift = ex::sub(ex::var("z1"), ex::constant(a));
  Expr G = ex::mul(ex::constant(-1.0 / kTwoPiI),
                   ex::mul(ex::exp(ex::mul(ex::constant(c), shift)), ex::log(ex::neg(shift), kPrincipalCut)));
  const double H = std::abs(c.real()) + 0.05;
  Hyperfunction u;
  u.n = 1;
  u.support = half_line(a, 1);
  u.terms.push_back({make_af(G, {1}, H), 1.0});
  u.terms.push_back({make_af(G, {-1}, H), -1.0});
  return u;
}

Hyperfunction boundary_value(const AnalyticFunction& F, const std::vector<int>& alpha, cplx coeff) {
  return boundary_value(F, alpha, coeff, whole_space(static_cast<int>(alpha.size())));
}

Hyperfunction boundary_value(const AnalyticFunction& F, const std::vector<int>& alpha, cplx coeff,
                             const ClosedConicSet& support) {
  if (F.domain.alpha != alpha || F.f->dim() != static_cast<int>(alpha.size()))
    throw Error(Errc::domain_mismatch, "defining function domain is not the wedge " +
                                           WedgeDescriptor::orthant(alpha).signs());
  Hyperfunction u;
  u.n = static_cast<int>(alpha.size());
  u.support = support;
  u.terms.push_back({F, coeff});
  return u;
}

Hyperfunction tensor(const Hyperfunction& u, const Hyperfunction& v) {
  if (u.n != 1 || v.n != 1) throw Error(Errc::unsupported, "tensor products are built from 1D factors");
  Hyperfunction w;
  w.n = 2;
  std::vector<Vector> gens;
  for (auto& g : u.support.cone.generators()) gens.push_back({g[0], 0.0});
  for (auto& g : v.support.cone.generators()) gens.push_back({0.0, g[0]});
  w.support = {{u.support.vertex[0], v.support.vertex[0]}, PolyhedralCone(2, gens)};
  for (auto& s : u.terms)
    for (auto& t : v.terms) {
      AnalyticFunction af;
      af.f = tensor_function(s.F.f, t.F.f);
      af.domain = WedgeDescriptor::orthant({s.alpha()[0], t.alpha()[0]});
      af.growth.H = s.F.growth.H + t.F.growth.H;
      af.growth.C = s.F.growth.C * t.F.growth.C;
      w.terms.push_back({af, s.coeff * t.coeff});
    }
  return w;
}

Hyperfunction add(const Hyperfunction& u, const Hyperfunction& v) {
  if (u.n != v.n) throw Error(Errc::domain_mismatch, "dimension mismatch in sum");
  Hyperfunction w = u;
  w.terms.insert(w.terms.end(), v.terms.begin(), v.terms.end());
  if (u.terms.empty()) w.support = v.support;
  else if (!v.terms.empty()) {
    // Hull of the two claims: keep the one containing the other, else the whole space.
    auto inside = [](const ClosedConicSet& a, const ClosedConicSet& b) {
      if (!b.contains(a.vertex)) return false;
      for (auto& g : a.cone.generators())
        if (!b.cone.contains(g)) return false;
      return true;
    };
    if (inside(v.support, u.support)) w.support = u.support;
    else if (inside(u.support, v.support)) w.support = v.support;
    else w.support = whole_space(u.n);
  }
  return w;
}

Hyperfunction scale(const Hyperfunction& u, cplx c) {
  Hyperfunction w = u;
  for (auto& t : w.terms) t.coeff *= c;
  return w;
}

Hyperfunction derivative(const Hyperfunction& u, int k) {
  Hyperfunction w = u;
  for (auto& t : w.terms) t.F.f = t.F.f->derivative(k);
  return w;
}

Hyperfunction multiply_by_coordinate(const Hyperfunction& u, int k) {
  Hyperfunction w = u;
  for (auto& t : w.terms) t.F.f = t.F.f->times_coordinate(k);
  return w;
}

// ------------------------------------------------------------------ pairing

namespace {

struct AxisChain {
  int alpha = 0;
  double delta = 0.5, kappa = 0.25, xc = 0.0;
  double lo = 0.0, hi = 0.0;

  cplx z(double x) const {
    if (alpha == 0) return x;
    return {x, alpha * std::sqrt(delta * delta + kappa * kappa * (x - xc) * (x - xc))};
  }
  cplx dz(double x) const {
    if (alpha == 0) return 1.0;
    double r = std::sqrt(delta * delta + kappa * kappa * (x - xc) * (x - xc));
    return {1.0, alpha * kappa * kappa * (x - xc) / r};
  }
};

// Interval outside which |F phi| stays below tol * 1e-3 for every density in the group.
void axis_range(AxisChain& ch, const std::vector<const DensityFactor*>& fs, double H, double C, double tol,
                double cap) {
  const double thr = std::log(tol) - 7.0 - std::log(std::max(C, 1.0));
  ch.lo = 1e300;
  ch.hi = -1e300;
  for (const DensityFactor* f : fs) {
    const double rate = f->a * (1.0 - ch.kappa * ch.kappa);
    if (!(rate > 0)) throw Error(Errc::growth_mismatch, "density decay does not dominate");
    const double min_exc = H / rate + 2.0 / std::sqrt(f->a) + 0.5;
    const double step = 0.125 / std::sqrt(f->a) + 0.05;
    for (int side : {-1, 1}) {
      double x = f->c;
      for (;;) {
        double exc = std::abs(x - f->c);
        cplx z = ch.z(x);
        double lb = H * std::abs(z) + f->log_magnitude(z);
        if (exc >= min_exc && lb < thr) break;
        if (exc > cap) throw Error(Errc::growth_mismatch, "density decay does not dominate the defining function growth");
        x += side * step;
      }
      if (side < 0) ch.lo = std::min(ch.lo, x);
      else ch.hi = std::max(ch.hi, x);
    }
  }
}

struct Group {
  std::vector<std::size_t> members;
  Vector center;
  double amax = 0.0;
};

std::vector<Group> group_densities(const std::vector<TestDensity>& phis, double kappa) {
  std::vector<Group> groups;
  const int n = phis.empty() ? 0 : phis.front().dim();
  for (std::size_t i = 0; i < phis.size(); ++i) {
    bool placed = false;
    for (auto& g : groups) {
      // candidate centre: midpoint of the extreme member centres per axis
      Vector lo(n, 1e300), hi(n, -1e300);
      double amax = std::max(g.amax, phis[i].min_rate());
      std::vector<std::size_t> trial = g.members;
      trial.push_back(i);
      for (auto m : trial)
        for (int k = 0; k < n; ++k) {
          lo[k] = std::min(lo[k], phis[m].factors[k].c);
          hi[k] = std::max(hi[k], phis[m].factors[k].c);
        }
      bool ok = true;
      Vector mid(n);
      for (int k = 0; k < n; ++k) mid[k] = 0.5 * (lo[k] + hi[k]);
      for (auto m : trial)
        for (int k = 0; k < n; ++k) {
          double a = phis[m].factors[k].a, d = phis[m].factors[k].c - mid[k];
          if (a * kappa * kappa * d * d > 1.0) ok = false;
        }
      if (ok) {
        g.members = trial;
        g.center = mid;
        g.amax = amax;
        placed = true;
        break;
      }
    }
    if (!placed) {
      Group g;
      g.members = {i};
      for (auto& f : phis[i].factors) {
        g.center.push_back(f.c);
        g.amax = std::max(g.amax, f.a);
      }
      groups.push_back(g);
    }
  }
  for (auto& g : groups) {
    g.amax = 0;
    for (auto m : g.members)
      for (auto& f : phis[m].factors) g.amax = std::max(g.amax, f.a);
  }
  return groups;
}

void chain_pair_term(const WedgeBV& t, const std::vector<TestDensity>& phis, const std::vector<std::size_t>& members,
                     const Vector& center, double amax, const PairingOptions& opt, cplx* out) {
  const int n = t.F.f->dim();
  const int m = static_cast<int>(members.size());
  std::vector<AxisChain> ch(n);
  const double delta = opt.push_in > 0 ? opt.push_in : std::min(0.5, 0.5 / std::sqrt(amax));
  for (int k = 0; k < n; ++k) {
    ch[k].alpha = t.alpha()[k];
    ch[k].delta = delta;
    ch[k].kappa = opt.slope;
    ch[k].xc = center[k];
    std::vector<const DensityFactor*> fs;
    for (auto i : members) fs.push_back(&phis[i].factors[k]);
    axis_range(ch[k], fs, t.F.growth.H, t.F.growth.C, opt.tol, opt.range_cap);
  }
  const HoloFunction& F = *t.F.f;
  QuadOptions qo;
  qo.tol = opt.tol;
  qo.rel_tol = opt.rel_tol;
  qo.max_evaluations = opt.max_evaluations;
  if (n == 1) {
    auto g = [&](double x, cplx* o) {
      cplx z = ch[0].z(x);
      cplx w = t.coeff * F.eval(&z) * ch[0].dz(x);
      for (int j = 0; j < m; ++j) o[j] = w * phis[members[j]](&z);
    };
    auto r = gauss_kronrod_vector(g, m, ch[0].lo, ch[0].hi, qo);
    std::copy(r.value.begin(), r.value.end(), out);
    return;
  }
  if (n == 2) {
    QuadOptions inner = qo;
    inner.tol = opt.tol * 0.1 / std::max(1.0, ch[0].hi - ch[0].lo);
    auto g = [&](double x1, cplx* o) {
      cplx z1 = ch[0].z(x1), dz1 = ch[0].dz(x1);
      std::vector<cplx> f1(m);
      for (int j = 0; j < m; ++j) f1[j] = phis[members[j]].factors[0](z1);
      auto h = [&](double x2, cplx* oo) {
        cplx z[2] = {z1, ch[1].z(x2)};
        cplx w = t.coeff * F.eval(z) * ch[1].dz(x2) * dz1;
        for (int j = 0; j < m; ++j) oo[j] = w * phis[members[j]].factors[1](z[1]) * f1[j];
      };
      auto r = gauss_kronrod_vector(h, m, ch[1].lo, ch[1].hi, inner);
      std::copy(r.value.begin(), r.value.end(), o);
    };
    auto r = gauss_kronrod_vector(g, m, ch[0].lo, ch[0].hi, qo);
    std::copy(r.value.begin(), r.value.end(), out);
    return;
  }
  throw Error(Errc::unsupported, "pairing implemented for n <= 2");
}

}  // namespace

std::vector<cplx> pairing_batch(const Hyperfunction& u, const std::vector<TestDensity>& phis,
                                const PairingOptions& opt) {
  std::vector<cplx> total(phis.size(), 0.0);
  for (auto& phi : phis)
    if (phi.dim() != u.n) throw Error(Errc::domain_mismatch, "density dimension differs from the hyperfunction");
  if (phis.empty()) return total;
  auto groups = group_densities(phis, opt.slope);
  std::vector<cplx> buf(phis.size());
  for (const WedgeBV& t : u.terms) {
    if (t.F.f->pair_densities(t.alpha(), phis, buf.data(), opt.tol)) {
      for (std::size_t i = 0; i < phis.size(); ++i) total[i] += t.coeff * buf[i];
      continue;
    }
    if (u.n == 2) {
      auto [f1, f2] = t.F.f->tensor_factors();
      if (f1) {
        // separable term: product of two one-dimensional pairings
        std::vector<cplx> p[2];
        HoloPtr fk[2] = {f1, f2};
        for (int k = 0; k < 2; ++k) {
          WedgeBV tk;
          tk.F.f = fk[k];
          tk.F.domain = WedgeDescriptor::orthant({t.alpha()[k]});
          tk.F.growth = t.F.growth;
          tk.coeff = 1.0;
          std::vector<TestDensity> ph;
          for (auto& phi : phis) ph.push_back(TestDensity{{phi.factors[k]}});
          Hyperfunction one;
          one.n = 1;
          one.terms = {tk};
          p[k] = pairing_batch(one, ph, opt);
        }
        for (std::size_t i = 0; i < phis.size(); ++i) total[i] += t.coeff * p[0][i] * p[1][i];
        continue;
      }
    }
    for (const Group& g : groups) {
      std::vector<cplx> part(g.members.size());
      chain_pair_term(t, phis, g.members, g.center, g.amax, opt, part.data());
      for (std::size_t j = 0; j < g.members.size(); ++j) total[g.members[j]] += part[j];
    }
  }
  return total;
}

cplx pairing(const Hyperfunction& u, const TestDensity& phi, const PairingOptions& opt) {
  return pairing_batch(u, {phi}, opt).front();
}

SupportTestReport support_test_report(const Hyperfunction& u, const Box& region, double tol) {
  const int n = u.n;
  if (static_cast<int>(region.lo.size()) != n || static_cast<int>(region.hi.size()) != n)
    throw Error(Errc::domain_mismatch, "probe box dimension");
  std::vector<std::vector<double>> axis(n);
  double half_width = 1e300;
  for (int k = 0; k < n; ++k) {
    double lo = region.lo[k], hi = region.hi[k];
    axis[k] = {lo, 0.5 * (lo + hi), hi};
    half_width = std::min(half_width, 0.5 * (hi - lo));
  }
  if (!(half_width > 0)) half_width = 0.5;
  std::vector<TestDensity> phis;
  std::vector<Vector> centers;
  if (n == 1) {
    for (double c : axis[0]) centers.push_back({c});
  } else {
    for (double c1 : axis[0])
      for (double c2 : axis[1]) centers.push_back({c1, c2});
  }
  for (const Vector& c : centers) {
    double d = distance(u.support, c);
    if (d < 1e-9) d = half_width;
    const double a = std::max(2.0, 28.0 / (d * d));
    TestDensity plain, tilted;
    for (int k = 0; k < n; ++k) {
      plain.factors.push_back({{1.0}, a, c[k]});
      tilted.factors.push_back({k == 0 ? std::vector<cplx>{-c[k], 1.0} : std::vector<cplx>{1.0}, a, c[k]});
    }
    phis.push_back(plain);
    phis.push_back(tilted);
  }
  PairingOptions opt;
  opt.tol = tol * 1e-3;
  auto vals = pairing_batch(u, phis, opt);
  SupportTestReport rep;
  rep.densities = phis.size();
  for (auto v : vals) rep.max_abs_pairing = std::max(rep.max_abs_pairing, std::abs(v));
  rep.pass = rep.max_abs_pairing < tol;
  return rep;
}

bool support_test(const Hyperfunction& u, const Box& region, double tol) {
  return support_test_report(u, region, tol).pass;
}

// ------------------------------------------------------------------ cutoff pairs

double smooth_step(double t) {
  if (t <= 0) return 0.0;
  if (t >= 1) return 1.0;
  double f = std::exp(-1.0 / t), g = std::exp(-1.0 / (1.0 - t));
  return f / (f + g);
}

double smooth_step_deriv(double t) {
  if (t <= 0 || t >= 1) return 0.0;
  double f = std::exp(-1.0 / t), g = std::exp(-1.0 / (1.0 - t));
  double fp = f / (t * t), gp = g / ((1.0 - t) * (1.0 - t));  // d/dt of g(1-t) is -g'(1-t); sign folded below
  return (fp * g + f * gp) / ((f + g) * (f + g));
}

double Cutoff::dist(cplx z, cplx* nearest) const {
  if (core.dim() != 1) throw Error(Errc::unsupported, "cutoffs are implemented for n = 1");
  const double a = core.vertex[0], x = z.real();
  bool right = false, left = false;
  for (auto& g : core.cone.generators()) (g[0] > 0 ? right : left) = true;
  double p = a;
  if (right && x >= a) p = x;
  if (left && x <= a) p = x;
  if (nearest) *nearest = p;
  return std::abs(z - p);
}

double Cutoff::value(cplx z) const { return smooth_step((r1 - dist(z)) / (r1 - r0)); }

cplx Cutoff::dbar(cplx z) const {
  cplx p;
  double d = dist(z, &p);
  if (d <= r0 || d >= r1) return 0.0;
  double bump_d = -smooth_step_deriv((r1 - d) / (r1 - r0)) / (r1 - r0);
  return bump_d * (z - p) / (2.0 * d);
}

cplx CechDolbeaultPair::defining(cplx z) const {
  if (z.imag() == 0.0) return 0.0;
  const int side = z.imag() > 0 ? 1 : -1;
  cplx s = 0.0;
  for (auto& t : source.terms)
    if (t.alpha()[0] == side) s += t.coeff * t.F(z);
  return side > 0 ? s : -s;
}

cplx CechDolbeaultPair::nu01(cplx z) const {
  double chi = cutoff.value(z);
  return chi == 0.0 ? cplx(0.0) : chi * defining(z);
}

cplx CechDolbeaultPair::nu1(cplx z) const {
  cplx db = cutoff.dbar(z);
  return db == cplx(0.0) ? cplx(0.0) : db * defining(z);
}

CechDolbeaultPair to_pair(const Hyperfunction& u, const ClosedConicSet& region, const Cutoff& chi) {
  if (u.n != 1) throw Error(Errc::unsupported, "cutoff pairs are implemented for n = 1");
  if (!(chi.r0 > 0 && chi.r0 < chi.r1)) throw Error(Errc::domain_error, "cutoff radii need 0 < r0 < r1");
  if (!region.contains(u.support.vertex))
    throw Error(Errc::support_leak, "cutoff core does not contain the support vertex");
  for (auto& g : u.support.cone.generators())
    if (!region.cone.contains(g)) throw Error(Errc::support_leak, "cutoff core does not contain the support cone");
  for (auto& t : u.terms)
    if (t.alpha()[0] == 0) throw Error(Errc::unsupported, "cutoff pairs need signed wedges");
  CechDolbeaultPair p;
  p.source = u;
  p.cutoff = chi;
  p.cutoff.core = region;
  return p;
}

}  // namespace hyperlap
