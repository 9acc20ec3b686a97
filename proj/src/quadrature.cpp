#include "hyperlap/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <queue>

#include "hyperlap/error.hpp"

namespace hyperlap {

namespace {

// Abscissae of the 15-point Kronrod rule on [-1, 1]; odd indices carry the 7-point Gauss rule.
constexpr double xgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                           0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                           0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                           0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double wgk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                           0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                           0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                           0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double wg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                          0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a, b;
  int depth;
  std::vector<cplx> val;
  std::vector<double> err, absv;
  double key;  // worst component error
};

struct PanelOrder {
  bool operator()(const Panel* x, const Panel* y) const {
    if (x->key != y->key) return x->key < y->key;
    return x->a > y->a;  // deterministic tie-break
  }
};

void eval_panel(const VectorIntegrand& f, int m, Panel& p, std::vector<cplx>& scratch) {
  const double c = 0.5 * (p.a + p.b), h = 0.5 * (p.b - p.a);
  p.val.assign(m, 0.0);
  p.err.assign(m, 0.0);
  p.absv.assign(m, 0.0);
  std::vector<cplx> gauss(m, 0.0);
  scratch.resize(2 * m);
  cplx* f1 = scratch.data();
  cplx* f2 = scratch.data() + m;
  f(c, f1);
  for (int k = 0; k < m; ++k) {
    p.val[k] = wgk[7] * f1[k];
    p.absv[k] = wgk[7] * std::abs(f1[k]);
    gauss[k] = wg[3] * f1[k];
  }
  for (int j = 0; j < 7; ++j) {
    double dx = h * xgk[j];
    f(c - dx, f1);
    f(c + dx, f2);
    for (int k = 0; k < m; ++k) {
      cplx s = f1[k] + f2[k];
      p.val[k] += wgk[j] * s;
      p.absv[k] += wgk[j] * (std::abs(f1[k]) + std::abs(f2[k]));
      if (j % 2 == 1) gauss[k] += wg[j / 2] * s;
    }
  }
  const double eps = std::numeric_limits<double>::epsilon();
  p.key = 0.0;
  for (int k = 0; k < m; ++k) {
    p.val[k] *= h;
    gauss[k] *= h;
    p.absv[k] *= std::abs(h);
    double e = std::abs(p.val[k] - gauss[k]);
    // roundoff floor: nothing below a few ulps of the absolute mass is resolvable
    e = std::max(e, 50 * eps * p.absv[k]);
    p.err[k] = e;
    p.key = std::max(p.key, e);
  }
}

VectorQuadratureResult run_adaptive(const VectorIntegrand& f, int m, double a, double b, const QuadOptions& opt) {
  VectorQuadratureResult out;
  out.value.assign(m, 0.0);
  out.error_estimate.assign(m, 0.0);
  out.abs_value.assign(m, 0.0);
  if (a == b || m == 0) return out;
  if (!std::isfinite(a) || !std::isfinite(b)) throw Error(Errc::missing_damping_certificate, "infinite interval");

  std::vector<cplx> scratch;
  std::vector<std::unique_ptr<Panel>> store;
  std::priority_queue<Panel*, std::vector<Panel*>, PanelOrder> heap;
  auto push = [&](double lo, double hi, int depth) {
    store.push_back(std::make_unique<Panel>(Panel{lo, hi, depth, {}, {}, {}, 0.0}));
    eval_panel(f, m, *store.back(), scratch);
    out.evaluations += 15;
    heap.push(store.back().get());
  };
  push(a, b, 0);
  // Track the running error sum exactly: remove a parent's error, add the children.
  std::vector<double> err_sum(m, 0.0), abs_sum(m, 0.0);
  for (int k = 0; k < m; ++k) err_sum[k] = heap.top()->err[k], abs_sum[k] = heap.top()->absv[k];
  // A component is done once its error meets the tolerance or the roundoff floor of its mass.
  const double eps = std::numeric_limits<double>::epsilon();
  auto unconverged = [&]() {
    for (int k = 0; k < m; ++k)
      if (err_sum[k] > std::max(opt.tol, std::max(opt.rel_tol, 100 * eps) * abs_sum[k])) return true;
    return false;
  };
  auto worst_sum = [&]() {
    double w = 0;
    for (double x : err_sum) w = std::max(w, x);
    return w;
  };

  long splits = 0;
  while (unconverged() && !heap.empty()) {
    Panel* p = heap.top();
    if (p->depth >= opt.max_depth || out.evaluations >= opt.max_evaluations) {
      // the worst panel cannot be refined further
      double floor_err = worst_sum();
      throw Error(Errc::no_convergence, "adaptive quadrature stalled with error " + std::to_string(floor_err) +
                                            " > tol " + std::to_string(opt.tol));
    }
    heap.pop();
    const double mid = 0.5 * (p->a + p->b);
    for (int k = 0; k < m; ++k) err_sum[k] -= p->err[k], abs_sum[k] -= p->absv[k];
    push(p->a, mid, p->depth + 1);
    for (int k = 0; k < m; ++k) err_sum[k] += store.back()->err[k], abs_sum[k] += store.back()->absv[k];
    push(mid, p->b, p->depth + 1);
    for (int k = 0; k < m; ++k) err_sum[k] += store.back()->err[k], abs_sum[k] += store.back()->absv[k];
    p->depth = -1;  // retired
    if (++splits % 128 == 0) {
      // resynchronise the running sum to avoid cancellation drift
      std::fill(err_sum.begin(), err_sum.end(), 0.0);
      std::fill(abs_sum.begin(), abs_sum.end(), 0.0);
      for (auto& q : store)
        if (q->depth >= 0)
          for (int k = 0; k < m; ++k) err_sum[k] += q->err[k], abs_sum[k] += q->absv[k];
    }
  }

  // Fixed summation order: by left endpoint.
  std::vector<Panel*> leaves;
  for (auto& p : store)
    if (p->depth >= 0) leaves.push_back(p.get());
  std::sort(leaves.begin(), leaves.end(), [](Panel* x, Panel* y) { return x->a < y->a; });
  for (Panel* p : leaves)
    for (int k = 0; k < m; ++k) {
      out.value[k] += p->val[k];
      out.error_estimate[k] += p->err[k];
      out.abs_value[k] += p->absv[k];
    }
  return out;
}

}  // namespace

double VectorQuadratureResult::max_error() const {
  double w = 0;
  for (double e : error_estimate) w = std::max(w, e);
  return w;
}

double VectorQuadratureResult::max_abs() const {
  double w = 0;
  for (double e : abs_value) w = std::max(w, e);
  return w;
}

void kronrod_nodes(double a, double b, double* x, double* w) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  for (int j = 0; j < 7; ++j) {
    x[2 * j] = c - h * xgk[j];
    x[2 * j + 1] = c + h * xgk[j];
    w[2 * j] = w[2 * j + 1] = h * wgk[j];
  }
  x[14] = c;
  w[14] = h * wgk[7];
}

QuadratureResult gauss_kronrod(const std::function<cplx(double)>& f, double a, double b, const QuadOptions& opt) {
  auto r = run_adaptive([&](double t, cplx* out) { *out = f(t); }, 1, a, b, opt);
  return {r.value[0], r.error_estimate[0], r.evaluations, r.abs_value[0]};
}

VectorQuadratureResult gauss_kronrod_vector(const VectorIntegrand& f, int m, double a, double b,
                                            const QuadOptions& opt) {
  return run_adaptive(f, m, a, b, opt);
}

VectorQuadratureResult integrate_tail_vector(const VectorIntegrand& f, int m, double a, double sigma,
                                             const QuadOptions& opt) {
  if (!(sigma > 0) || !std::isfinite(sigma))
    throw Error(Errc::missing_damping_certificate, "tail needs a positive damping rate");
  // First window: where a unit-size integrand has decayed to the tolerance.
  double len = std::clamp(std::log(1.0 / opt.tol) / sigma * 0.5, 1.0, 1e6);
  QuadOptions o = opt;
  o.tol = opt.tol * 0.5;
  VectorQuadratureResult acc = run_adaptive(f, m, a, a + len, o);
  double lo = a + len;
  for (int iter = 0; iter < 40; ++iter) {
    o.tol = std::max(opt.tol * std::ldexp(0.25, iter), 1e-300);
    VectorQuadratureResult slab = run_adaptive(f, m, lo, lo + len, o);
    for (int k = 0; k < m; ++k) {
      acc.value[k] += slab.value[k];
      acc.error_estimate[k] += slab.error_estimate[k];
      acc.abs_value[k] += slab.abs_value[k];
    }
    acc.evaluations += slab.evaluations;
    lo += len;
    len *= 2;
    if (slab.max_abs() < 0.1 * std::max(opt.tol, opt.rel_tol * acc.max_abs())) {
      // geometric decay: the remainder is bounded by the last slab's mass
      for (int k = 0; k < m; ++k) acc.error_estimate[k] += slab.abs_value[k];
      return acc;
    }
  }
  throw Error(Errc::no_convergence, "tail did not decay within the doubling budget");
}

QuadratureResult integrate_tail(const std::function<cplx(double)>& f, double a, double sigma, const QuadOptions& opt) {
  auto r = integrate_tail_vector([&](double t, cplx* out) { *out = f(t); }, 1, a, sigma, opt);
  return {r.value[0], r.error_estimate[0], r.evaluations, r.abs_value[0]};
}

}  // namespace hyperlap
