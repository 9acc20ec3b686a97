#include "hyperlap/verify.hpp"

#include <chrono>
#include <cstdio>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <random>

#include "hyperlap/error.hpp"
#include "hyperlap/laplace.hpp"
#include "hyperlap/opcalc.hpp"
#include "hyperlap/quadrature.hpp"

namespace hyperlap {

namespace {

using Clock = std::chrono::steady_clock;

struct Suite {
  SuiteResult r;

  void check(const std::string& label, double value, double limit) {
    bool ok = std::isfinite(value) && value < limit;
    r.checks.push_back({label, value, limit, ok});
  }
  void require(const std::string& label, bool ok) { r.checks.push_back({label, ok ? 0.0 : 1.0, 0.5, ok}); }
};

double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

template <class T>
double max_diff(const std::vector<T>& a, const std::vector<T>& b) {
  double e = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) e = std::max(e, std::abs(a[i] - b[i]));
  return e;
}

AnalyticFunction fn(const std::string& text, int n) {
  AnalyticFunction f;
  f.f = expr_function(text, n);
  return f;
}

// ------------------------------------------------------------------ 1: anchors

void anchors(Suite& s) {
  const std::vector<cplx> zetas = {{1.5, 0}, {2, 0}, {3, 0}, {2, 1}, {2, -1}, {1.5, 3}, {4, -2}, {1, 0.5}, {2.5, 6}, {3, -4}};
  const double a = 1.0;
  const cplx c(0.5, 0.0);
  const Hyperfunction d = delta({a});
  const Hyperfunction y = heaviside_exp(c, 0.0);
  double ed = 0.0, ey = 0.0, oracle = 0.0;
  for (cplx z : zetas) {
    ed = std::max(ed, rel(forward(d, z), std::exp(-a * z)));
    const cplx closed = 1.0 / (z - c);
    ey = std::max(ey, rel(forward(y, z), closed));
    // the closed form itself against a real-axis integral
    QuadOptions qo;
    qo.tol = 1e-13;
    auto q = integrate_tail([&](double x) { return std::exp((c - z) * x); }, 0.0, (z - c).real(), qo);
    oracle = std::max(oracle, rel(q.value, closed));
  }
  s.check("L(delta(1)) vs exp(-zeta), rel", ed, 1e-6);
  s.check("L(Y e^{x/2}) vs 1/(zeta - 1/2), rel", ey, 1e-6);
  s.check("closed form vs real integral, rel", oracle, 1e-9);
}

// ------------------------------------------------------------------ 2: round trips

const std::vector<std::string> kRationalCorpus = {"1/zeta", "1/zeta^2", "1/(zeta-1)", "exp(-zeta)/zeta", "exp(-zeta)"};

void roundtrip(Suite& s) {
  const double smax[] = {0, 0, 1, 0, 0};
  const double vertex[] = {0, 0, 0, 1, 1};
  const std::vector<cplx> base = {{2.5, 0}, {3, .5}, {3, -.5}, {3.5, 1}, {3.5, -1}, {4, 0}, {2.5, .3}, {4, 1}, {3, 0}, {4, -.7}};
  ForwardOptions fo;
  fo.eps = 0.3;
  fo.kappa = 1.0;
  fo.back = 1.5;
  fo.tol = 1e-9;
  for (std::size_t i = 0; i < kRationalCorpus.size(); ++i) {
    AnalyticFunction f = fn(kRationalCorpus[i], 1);
    Hyperfunction u = inverse(f, half_line(vertex[i], 1), default_inverse_chain(smax[i]));
    std::vector<CVector> zs;
    for (cplx z : base) zs.push_back({z + smax[i]});
    auto v = forward_batch(u, zs, fo);
    double e = 0.0;
    for (std::size_t j = 0; j < zs.size(); ++j) e = std::max(e, std::abs(v[j] - f(zs[j][0])));
    s.check("L(IL f) - f for f = " + kRationalCorpus[i], e, 1e-5);
  }
  const auto bat = density_battery(1);
  const cplx c(0.5, 1.0);
  const std::vector<std::pair<std::string, Hyperfunction>> us = {
      {"delta(1/2)", delta({0.5})},
      {"heaviside_exp(1/2+i, 1/5)", heaviside_exp(c, 0.2)},
      {"delta'(1/2)", derivative(delta({0.5}), 0)},
      {"heaviside_exp'(1/2+i, 1/5)", derivative(heaviside_exp(c, 0.2), 0)}};
  const double rightmost[] = {0, 0.5, 0, 0.5};
  for (std::size_t i = 0; i < us.size(); ++i) {
    const Hyperfunction& u = us[i].second;
    AnalyticFunction g = transform(u).as_analytic();
    Hyperfunction w = inverse(g, u.support, default_inverse_chain(rightmost[i]));
    s.check("IL(L u) - u pairings for u = " + us[i].first, max_diff(pairing_batch(u, bat), pairing_batch(w, bat)), 1e-5);
  }
}

// ------------------------------------------------------------------ 3: contour independence

void stokes(Suite& s) {
  const std::vector<cplx> zetas = {{1.5, 0}, {2, 1}, {2, -1}, {3, 0.5}, {1.2, -1.5}};
  ForwardOptions g1, g2;
  g1.adapt_eps = g2.adapt_eps = false;
  g1.eps = 0.2;
  g1.back = 0.2;
  g2.eps = 0.4;
  g2.back = 0.1;
  g2.kappa = 0.3;
  const std::vector<std::pair<std::string, Hyperfunction>> us = {{"delta(1/2)", delta({0.5})},
                                                                 {"heaviside_exp(1/2, 1/5)", heaviside_exp(0.5, 0.2)},
                                                                 {"delta'(0)", derivative(delta({0.0}), 0)}};
  for (auto& [name, u] : us) {
    double e = 0.0;
    for (cplx z : zetas) e = std::max(e, std::abs(forward(u, z, g1) - forward(u, z, g2)));
    s.check("two loop geometries, " + name, e, 1e-6);
  }
  // chain formula against the cutoff pair, for two cutoff radii
  for (auto& [name, u] : us) {
    Cutoff wide, narrow;
    narrow.r0 = 0.25;
    narrow.r1 = 0.5;
    ClosedConicSet core = u.support;
    auto p1 = to_pair(u, core, wide), p2 = to_pair(u, core, narrow);
    double e = 0.0;
    for (cplx z : zetas) {
      cplx ref = forward(u, z);
      e = std::max({e, std::abs(forward_pair(p1, z) - ref), std::abs(forward_pair(p2, z) - ref)});
    }
    s.check("cutoff pair vs chain, " + name, e, 1e-5);
  }
  AnalyticFunction f = fn("exp(-zeta)/zeta^2", 1);
  Profile psi1{1.0, 1.0, 0.5}, psi2{2.0, 1.0, 0.6};
  const ClosedConicSet K = half_line(1.0, 1);
  auto bat = density_battery(1);
  auto v1 = pairing_batch(inverse(f, K, make_inverse_chain(1, psi1)), bat);
  auto v2 = pairing_batch(inverse(f, K, make_inverse_chain(1, psi2)), bat);
  s.check("two inverse profiles, f = exp(-zeta)/zeta^2", max_diff(v1, v2), 1e-6);
}

// ------------------------------------------------------------------ 4: derivative rules

void derivative_rules(Suite& s) {
  const std::vector<CVector> z1 = {{cplx(2, 0)}, {cplx(3, 1)}, {cplx(1.5, -0.5)}, {cplx(2.5, 2)}};
  const std::vector<CVector> z2 = {{cplx(2, 0), cplx(1.5, 0.5)}, {cplx(3, -1), cplx(2, 0)}, {cplx(1.5, 0.5), cplx(2.5, -1)}};
  const cplx c(0.5, 1.0);
  std::vector<std::tuple<std::string, Hyperfunction, int, const std::vector<CVector>*>> cases = {
      {"delta(1)", delta({1.0}), 0, &z1},
      {"heaviside_exp(1/2+i, 1/5)", heaviside_exp(c, 0.2), 0, &z1},
      {"delta'(1/2)", derivative(delta({0.5}), 0), 0, &z1},
      {"delta(1/2, -3/10), x1", delta({0.5, -0.3}), 0, &z2},
      {"delta(1/2, -3/10), x2", delta({0.5, -0.3}), 1, &z2},
      {"Y(x1) e^{x1/2} (x) delta(x2), x2", tensor(heaviside_exp(0.5, 0.0), delta({0.25})), 1, &z2}};
  for (auto& [name, u, k, zs] : cases) {
    auto r = derivative_rules_check(u, k, *zs);
    s.check("dL/dzeta = L(-x u), " + name, r.derivative_rule, 1e-6);
    s.check("zeta L(u) = L(u'), " + name, r.multiplier_rule, 1e-6);
  }
}

// ------------------------------------------------------------------ 5: growth

void growth(Suite& s) {
  std::vector<Direction> rays;
  for (double th : {-1.2, -0.6, 0.0, 0.6, 1.2}) rays.push_back(Direction::complex({std::polar(1.0, th)}));
  const std::vector<double> ts = {2, 4, 6, 10, 14, 20, 28, 40, 56, 80};
  const std::vector<std::pair<std::string, Hyperfunction>> us = {{"delta(1)", delta({1.0})},
                                                                 {"heaviside_exp(0, 0)", heaviside_exp(0.0, 0.0)},
                                                                 {"heaviside_exp(2, 0)", heaviside_exp(2.0, 0.0)},
                                                                 {"delta'(1/2)", derivative(delta({0.5}), 0)}};
  for (auto& [name, u] : us) {
    auto rep = growth_certificate(transform(u), rays, ts, 0.1);
    s.check("ray violations, " + name, static_cast<double>(rep.violations.size()), 0.5);
  }
  // heaviside_exp(2, 0) is only defined for Re zeta > 2; small t must be flagged
  auto rep = growth_certificate(transform(heaviside_exp(2.0, 0.0)), rays, ts, 0.1);
  s.require("out-of-region samples flagged for heaviside_exp(2, 0)", rep.out_of_region > 0);
  const Hyperfunction u2 = tensor(heaviside_exp(0.0, 0.0), delta({0.5}));
  auto fan = hpc_fan(u2.support, 5);
  auto rep2 = growth_certificate(transform(u2), fan, ts, 0.1);
  s.check("ray violations, Y(x1) (x) delta(x2 - 1/2)", static_cast<double>(rep2.violations.size()), 0.5);
}

// ------------------------------------------------------------------ 6: support

bool box_outside(const HalfSpaceFamily& fam, const Box& b) {
  std::vector<Vector> corners;
  if (b.lo.size() == 1) {
    corners = {b.lo, b.hi};
  } else {
    corners = {{b.lo[0], b.lo[1]}, {b.lo[0], b.hi[1]}, {b.hi[0], b.lo[1]}, {b.hi[0], b.hi[1]}};
  }
  for (const HalfSpace& h : fam.entries) {
    const Vector xi = h.xi.real_part();
    bool all_out = true;
    for (auto& x : corners) all_out = all_out && dot(x, xi) < h.bound;
    if (all_out) return true;
  }
  return false;
}

void support(Suite& s) {
  {
    AnalyticFunction f = fn("exp(-zeta)/zeta", 1);
    const ClosedConicSet K = half_line(1.0, 1);
    Hyperfunction u = inverse(f, K, default_inverse_chain(0.0));
    auto fam = support_estimate(f, [K](const Direction& xi) { return support_function(K, xi); },
                                {Direction::real({1.0})});
    const std::vector<Box> boxes = {{{-3.0}, {-2.0}}, {{-2.0}, {-1.0}}, {{-1.0}, {0.0}}, {{0.0}, {0.5}}, {{0.5}, {0.9}}};
    for (auto& b : boxes) {
      s.require("box outside the estimate", box_outside(fam, b));
      auto rep = support_test_report(u, b, 1e-7);
      char label[64];
      std::snprintf(label, sizeof label, "pairings on [%g, %g]", b.lo[0], b.hi[0]);
      s.check(label, rep.max_abs_pairing, 1e-7);
    }
  }
  {
    AnalyticFunction f = fn("exp(-(zeta1+zeta2))/(zeta1*zeta2)", 2);
    const ClosedConicSet K = shifted_orthant({1.0, 1.0});
    Profile ph{0.0, 1.0, 0.5};
    Hyperfunction u = inverse(f, K, make_orthant_chain({0.5, 0.5}, ph));
    auto fam = support_estimate(f, [K](const Direction& xi) { return support_function(K, xi); }, hpc_fan(K, 8));
    const std::vector<Box> boxes = {{{-1.0, -1.0}, {0.5, 3.0}},
                                    {{-1.0, -1.0}, {3.0, 0.5}},
                                    {{-2.0, -2.0}, {-1.0, -1.0}},
                                    {{0.0, 0.0}, {0.6, 0.6}}};
    for (auto& b : boxes) {
      s.require("2D box outside the estimate", box_outside(fam, b));
      s.check("2D quadrant probe", support_test_report(u, b, 1e-7).max_abs_pairing, 1e-7);
    }
  }
}

// ------------------------------------------------------------------ 7: reconstruction

void reconstruction(Suite& s) {
  const auto bat = sharp_density_battery(1);
  PairingOptions po;
  po.rel_tol = 1e-12;
  const std::vector<std::pair<std::string, Hyperfunction>> us = {{"delta(1/2)", delta({0.5})},
                                                                 {"heaviside_exp(0, 0)", heaviside_exp(0.0, 0.0)},
                                                                 {"heaviside_exp(-1, 1/2)", heaviside_exp(-1.0, 0.5)},
                                                                 {"delta'(0)", derivative(delta({0.0}), 0)}};
  for (auto& [name, u] : us) {
    auto ref = pairing_batch(u, bat);
    auto r1 = reconstruct(u);
    ReconstructOptions o;
    o.R = 2 * r1.R;
    auto r2 = reconstruct(u, o);
    auto v1 = pairing_batch(r1.sum, bat, po), v2 = pairing_batch(r2.sum, bat, po);
    s.check("round trip, " + name, max_diff(v1, ref), 1e-5);
    s.check("R vs 2R, " + name, max_diff(v1, v2), 1e-6);
  }
  Cutoff chi;
  chi.r0 = 0.05;
  chi.r1 = 0.12;
  const Hyperfunction d = delta({0.5});
  chi.core = d.support;
  auto rp = reconstruct(to_pair(d, d.support, chi));
  s.check("round trip from the cutoff pair, delta(1/2)", max_diff(pairing_batch(rp.sum, bat, po), pairing_batch(d, bat)),
          1e-5);
}

// ------------------------------------------------------------------ 8: orthant pieces

void orthant(Suite& s) {
  Profile ph{0.0, 1.0, 0.5};
  const auto grid = left_polydisc_grid();
  for (const char* text : {"1/(zeta1*zeta2)", "1/(zeta1+zeta2)^2"}) {
    AnalyticFunction f = fn(text, 2);
    Hyperfunction u = inverse(f, shifted_orthant({0.0, 0.0}), make_orthant_chain({0.5, 0.5}, ph));
    auto rep = orthant_extension_check(u, f, grid);
    s.check(std::string("four pieces agree, f = ") + text, rep.max_discrepancy, 1e-6);
  }
}

// ------------------------------------------------------------------ 9: operational calculus

MultiPoly random_poly(std::mt19937& rng, int n, int max_degree) {
  std::uniform_int_distribution<int> deg(0, max_degree), coef(-4, 4), den(1, 3), count(1, 4);
  MultiPoly p(n);
  const int terms = count(rng);
  for (int t = 0; t < terms; ++t) {
    Exponent e(n, 0);
    int d = deg(rng);
    for (int j = 0; j < d; ++j) e[std::uniform_int_distribution<int>(0, n - 1)(rng)] += 1;
    p.add_term(e, CRational(Rational(coef(rng), den(rng)), Rational(coef(rng), den(rng))));
  }
  return p;
}

void pde(Suite& s) {
  std::mt19937 rng(20261018);
  const int n = 3, ell = 3;
  std::vector<MultiPoly> P, a;
  for (int j = 0; j < ell; ++j) {
    P.push_back(random_poly(rng, n, 2));
    a.push_back(random_poly(rng, n, 2));
  }
  MultiPoly h(n);
  for (int j = 0; j < ell; ++j) h = h + a[j] * P[j];
  std::vector<KoszulElement> elems;
  std::size_t dd_fail = 0;
  for (int i = 0; i < 50; ++i) {
    const int k = i % (ell + 1);
    KoszulElement e{k, ell, n, {}};
    std::vector<int> idx(ell);
    for (int j = 0; j < ell; ++j) idx[j] = j;
    // every k-subset gets a random coefficient
    std::vector<bool> pick(ell, false);
    std::fill(pick.begin(), pick.begin() + k, true);
    do {
      std::vector<int> I;
      for (int j = 0; j < ell; ++j)
        if (pick[j]) I.push_back(j);
      e.add(I, random_poly(rng, n, 6));
    } while (std::prev_permutation(pick.begin(), pick.end()));
    if (k + 2 <= ell && !koszul_d(koszul_d(e, P), P).is_zero()) ++dd_fail;
    elems.push_back(e);
  }
  s.check("d o d != 0 on random elements", static_cast<double>(dd_fail), 0.5);
  auto hr = koszul_homotopy_check(P, a, h, elems);
  s.require("homotopy s d + d s = h exact on 50 elements", hr.pass());

  auto bat = density_battery(1);
  const std::vector<std::tuple<std::string, std::function<double(double)>>> odes = {
      {"D - 1", [](double x) { return std::exp(x); }}, {"D^2 - 1", [](double x) { return std::sinh(x); }}};
  for (auto& [text, kernel] : odes) {
    auto res = solve(DiffOp::parse(text, 1), delta({0.0}), half_line(0.0, 1));
    s.check("residual <P(D)u - delta, phi>, P = " + text, res.max_residual, 1e-4);
    auto v = pairing_batch(res.u, bat);
    double e = 0.0;
    for (std::size_t i = 0; i < bat.size(); ++i) {
      QuadOptions qo;
      qo.tol = 1e-12;
      const TestDensity& phi = bat[i];
      auto k = kernel;
      auto q = integrate_tail([&](double x) { return k(x) * phi(cplx(x)); }, 0.0, 0.5, qo);
      e = std::max(e, std::abs(v[i] - q.value));
    }
    s.check("solution vs real-integral oracle, P = " + text, e, 1e-4);
  }

  auto cr = char_infinity({DiffOp::parse("D1^2 + D2^2", 2)}, 0.02);
  const double r2 = std::sqrt(0.5);
  const CVector roots[] = {{r2, cplx(0, r2)}, {r2, cplx(0, -r2)}};
  auto orbit_distance = [](const CVector& z, const CVector& c) {
    cplx ip = std::conj(c[0]) * z[0] + std::conj(c[1]) * z[1];
    return std::sqrt(std::max(0.0, 2.0 - 2.0 * std::abs(ip)));
  };
  double far = 0.0;
  for (auto i : cr.flagged) {
    const CVector& z = cr.grid.directions[i];
    far = std::max(far, std::min(orbit_distance(z, roots[0]), orbit_distance(z, roots[1])));
  }
  s.require("Laplacian: directions flagged", !cr.flagged.empty());
  s.check("Laplacian: flagged distance to zeta2 = +-i zeta1", far, 0.02 + 1e-12);
  for (const CVector& c : roots) {
    double nearest = 1e9;
    for (auto i : cr.flagged) nearest = std::min(nearest, orbit_distance(cr.grid.directions[i], c));
    s.check("Laplacian: characteristic line reached by a flagged direction", nearest, 0.02 + 1e-12);
  }
  s.require("d/dx - 1 on [0, inf) solvable", check_solvable(DiffOp::parse("D - 1", 1), half_line(0.0, 1)).solvable);
  s.require("dx dy on the quadrant solvable", check_solvable(DiffOp::parse("D1*D2", 2), shifted_orthant({0.0, 0.0})).solvable);
  s.require("Laplacian on the quadrant not solvable",
            !check_solvable(DiffOp::parse("D1^2 + D2^2", 2), shifted_orthant({0.0, 0.0})).solvable);
}

// ------------------------------------------------------------------ 10: quadrature honesty

void quadrature(Suite& s) {
  using F = std::function<cplx(double)>;
  struct Item {
    std::string name;
    F f;
    double a, b;  // b = inf: tail with rate b_rate
    double rate;
  };
  std::vector<Item> items;
  const double pi = std::numbers::pi;
  for (int k = 0; k < 10; ++k) {
    cplx r(-5.0 + k, 0.5 * k);
    items.push_back({"exp", [r](double x) { return std::exp(r * x); }, 0.0, 1.0, 0.0});
  }
  for (int k = 1; k <= 10; ++k)
    items.push_back({"cos", [k](double x) { return cplx(std::cos(3.0 * k * x), std::sin(k * x)); }, 0.0, pi, 0.0});
  for (int k = 0; k < 10; ++k) {
    double w = 0.02 + 0.1 * k;
    items.push_back({"peak", [w](double x) { return cplx(1.0 / (1.0 + (x / w) * (x / w))); }, -1.0, 1.0, 0.0});
  }
  for (int k = 0; k < 10; ++k) {
    double al = 0.5 + 0.25 * k;
    items.push_back({"power", [al](double x) { return cplx(std::pow(x, al)); }, 0.0, 1.0, 0.0});
  }
  for (int k = 0; k < 10; ++k) {
    double sg = 0.3 + 0.2 * k, c = 0.5 * k;
    items.push_back({"tail", [sg, c](double x) { return std::exp(-sg * x) * cplx(std::cos(c * x), (x - c) * (x - c) * 0.1); },
                     0.0, INFINITY, sg});
  }
  int worst_index = -1;
  double worst = 0.0;
  for (std::size_t i = 0; i < items.size(); ++i) {
    auto run = [&](double tol) {
      QuadOptions qo;
      qo.tol = tol;
      return std::isinf(items[i].b) ? integrate_tail(items[i].f, items[i].a, items[i].rate, qo)
                                    : gauss_kronrod(items[i].f, items[i].a, items[i].b, qo);
    };
    auto coarse = run(1e-6);
    auto fine = run(1e-13);
    const double delta = std::abs(coarse.value - fine.value);
    // rounding floor: a few ulps of the absolute mass
    const double bound = 3.0 * coarse.error_estimate + 64 * 2.2e-16 * fine.abs_value;
    const double ratio = delta / bound;
    if (ratio > worst) {
      worst = ratio;
      worst_index = static_cast<int>(i);
    }
  }
  s.check("max observed delta / (3 x estimate) over 50 integrals" +
              (worst_index >= 0 ? " (worst: " + items[worst_index].name + ")" : std::string()),
          worst, 1.0);
}

struct Entry {
  std::string title;
  void (*run)(Suite&);
  double time_limit;
};

const std::map<std::string, Entry>& registry() {
  static const std::map<std::string, Entry> r = {
      {"anchors", {"delta and exponential anchors", anchors, 5.0}},
      {"roundtrip", {"inversion round trips", roundtrip, 60.0}},
      {"stokes", {"contour and representative independence", stokes, 0.0}},
      {"derivative", {"derivative and multiplier rules", derivative_rules, 0.0}},
      {"growth", {"growth along HPC rays", growth, 0.0}},
      {"support", {"support estimate probes", support, 0.0}},
      {"reconstruct", {"reconstruction round trip and anchor independence", reconstruction, 0.0}},
      {"orthant", {"orthant pieces agree on the left polydisc", orthant, 0.0}},
      {"pde", {"Koszul identities, ODE solves, characteristic scan, solvability", pde, 0.0}},
      {"quadrature", {"quadrature error estimates", quadrature, 0.0}},
  };
  return r;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"anchors", "roundtrip", "stokes", "derivative", "growth",
                                                 "support", "reconstruct", "orthant", "pde", "quadrature"};
  return names;
}

SuiteResult run_suite(const std::string& name) {
  auto it = registry().find(name);
  if (it == registry().end()) throw Error(Errc::config_error, "unknown suite '" + name + "'");
  Suite s;
  s.r.name = name;
  s.r.title = it->second.title;
  s.r.time_limit = it->second.time_limit;
  const auto t0 = Clock::now();
  try {
    it->second.run(s);
  } catch (const std::exception& e) {
    s.r.error = e.what();
  }
  s.r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  s.r.pass = s.r.error.empty() && !s.r.checks.empty();
  double worst = -1.0;
  for (auto& c : s.r.checks) {
    s.r.pass = s.r.pass && c.pass;
    double ratio = c.value / c.limit;
    if (ratio > worst) {
      worst = ratio;
      s.r.metric = c.value;
      s.r.threshold = c.limit;
    }
  }
  if (s.r.time_limit > 0 && s.r.seconds > s.r.time_limit) s.r.pass = false;
  return s.r;
}

}  // namespace hyperlap
