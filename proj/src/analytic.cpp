#include "hyperlap/analytic.hpp"

#include <cmath>

#include "hyperlap/error.hpp"

namespace hyperlap {

namespace {

std::string var_name(int k) { return "z" + std::to_string(k + 1); }

Expr rename(const Expr& e, const std::string& from, const std::string& to) {
  if (!e) return e;
  if (e->op == Op::variable) return e->name == from ? ex::var(to) : e;
  Expr a = rename(e->a, from, to), b = rename(e->b, from, to);
  if (a == e->a && b == e->b) return e;
  Node n = *e;
  n.a = a;
  n.b = b;
  return std::make_shared<const Node>(std::move(n));
}

class ExprFunction : public HoloFunction {
 public:
  ExprFunction(Expr e, int n) : n_(n) {
    // x, z and zeta spellings all name the same slots
    for (int k = 0; k < n; ++k) {
      e = rename(e, "zeta" + std::to_string(k + 1), var_name(k));
      e = rename(e, "x" + std::to_string(k + 1), var_name(k));
    }
    if (n == 1)
      for (const char* s : {"z", "x", "zeta"}) e = rename(e, s, "z1");
    expr_ = e;
    compiled_ = CompiledExpr(expr_, bind_indexed("z", n));
  }
  int dim() const override { return n_; }
  cplx eval(const cplx* z) const override { return compiled_(z); }
  HoloPtr derivative(int k) const override { return std::make_shared<ExprFunction>(diff(expr_, var_name(k)), n_); }
  HoloPtr times_coordinate(int k) const override {
    return std::make_shared<ExprFunction>(ex::mul(ex::var(var_name(k)), expr_), n_);
  }
  std::string describe() const override { return print(expr_); }
  std::optional<Expr> expression() const override { return expr_; }

 private:
  int n_;
  Expr expr_;
  CompiledExpr compiled_;
};

class TensorFunction : public HoloFunction {
 public:
  TensorFunction(HoloPtr f, HoloPtr g) : f_(std::move(f)), g_(std::move(g)) {
    if (f_->dim() != 1 || g_->dim() != 1) throw Error(Errc::domain_error, "tensor factors must be 1D");
  }
  int dim() const override { return 2; }
  cplx eval(const cplx* z) const override { return f_->eval(&z[0]) * g_->eval(&z[1]); }
  HoloPtr derivative(int k) const override {
    return k == 0 ? tensor_function(f_->derivative(0), g_) : tensor_function(f_, g_->derivative(0));
  }
  HoloPtr times_coordinate(int k) const override {
    return k == 0 ? tensor_function(f_->times_coordinate(0), g_) : tensor_function(f_, g_->times_coordinate(0));
  }
  std::string describe() const override {
    return "(" + f_->describe() + ")[z1] * (" + g_->describe() + ")[z2]";
  }
  bool pair_densities(const std::vector<int>&, const std::vector<TestDensity>&, cplx*, double) const override {
    return false;
  }
  std::pair<HoloPtr, HoloPtr> tensor_factors() const override { return {f_, g_}; }
  const HoloPtr& first() const { return f_; }
  const HoloPtr& second() const { return g_; }

 private:
  HoloPtr f_, g_;
};

class SumFunction : public HoloFunction {
 public:
  explicit SumFunction(std::vector<std::pair<cplx, HoloPtr>> t) : terms_(std::move(t)) {}
  int dim() const override { return terms_.empty() ? 1 : terms_.front().second->dim(); }
  cplx eval(const cplx* z) const override {
    cplx s = 0.0;
    for (auto& [c, f] : terms_) s += c * f->eval(z);
    return s;
  }
  HoloPtr derivative(int k) const override {
    std::vector<std::pair<cplx, HoloPtr>> d;
    for (auto& [c, f] : terms_) d.emplace_back(c, f->derivative(k));
    return sum_function(std::move(d));
  }
  HoloPtr times_coordinate(int k) const override {
    std::vector<std::pair<cplx, HoloPtr>> d;
    for (auto& [c, f] : terms_) d.emplace_back(c, f->times_coordinate(k));
    return sum_function(std::move(d));
  }
  std::string describe() const override {
    std::string s;
    for (auto& [c, f] : terms_) {
      if (!s.empty()) s += " + ";
      s += "(" + std::to_string(c.real()) + "+" + std::to_string(c.imag()) + "i)*(" + f->describe() + ")";
    }
    return s.empty() ? "0" : s;
  }
  bool pair_densities(const std::vector<int>& alpha, const std::vector<TestDensity>& phis, cplx* out,
                      double tol) const override {
    std::vector<cplx> acc(phis.size(), 0.0), part(phis.size());
    for (auto& [c, f] : terms_) {
      if (!f->pair_densities(alpha, phis, part.data(), tol / std::max<std::size_t>(1, terms_.size()))) return false;
      for (std::size_t i = 0; i < phis.size(); ++i) acc[i] += c * part[i];
    }
    std::copy(acc.begin(), acc.end(), out);
    return true;
  }

 private:
  std::vector<std::pair<cplx, HoloPtr>> terms_;
};

class CoordinateTimes : public HoloFunction {
 public:
  CoordinateTimes(int k, HoloPtr f) : k_(k), f_(std::move(f)) {}
  int dim() const override { return f_->dim(); }
  cplx eval(const cplx* z) const override { return z[k_] * f_->eval(z); }
  HoloPtr derivative(int j) const override {
    std::vector<std::pair<cplx, HoloPtr>> t;
    if (j == k_) t.emplace_back(1.0, f_);
    t.emplace_back(1.0, std::make_shared<CoordinateTimes>(k_, f_->derivative(j)));
    return sum_function(std::move(t));
  }
  std::string describe() const override { return var_name(k_) + "*(" + f_->describe() + ")"; }

 private:
  int k_;
  HoloPtr f_;
};

class LambdaFunction : public HoloFunction {
 public:
  LambdaFunction(int n, std::function<cplx(const cplx*)> f, std::string label)
      : n_(n), f_(std::move(f)), label_(std::move(label)) {}
  int dim() const override { return n_; }
  cplx eval(const cplx* z) const override { return f_(z); }
  HoloPtr derivative(int) const override {
    throw Error(Errc::unsupported, "no derivative for numeric function " + label_);
  }
  std::string describe() const override { return label_; }

 private:
  int n_;
  std::function<cplx(const cplx*)> f_;
  std::string label_;
};

}  // namespace

HoloPtr HoloFunction::times_coordinate(int k) const { return coordinate_times(k, shared_from_this()); }

HoloPtr expr_function(const Expr& e, int n) { return std::make_shared<ExprFunction>(e, n); }
HoloPtr expr_function(const std::string& text, int n) { return expr_function(parse(text), n); }
HoloPtr tensor_function(HoloPtr f1, HoloPtr f2) { return std::make_shared<TensorFunction>(std::move(f1), std::move(f2)); }
HoloPtr sum_function(std::vector<std::pair<cplx, HoloPtr>> terms) {
  return std::make_shared<SumFunction>(std::move(terms));
}
HoloPtr lambda_function(int n, std::function<cplx(const cplx*)> f, std::string label) {
  return std::make_shared<LambdaFunction>(n, std::move(f), std::move(label));
}
HoloPtr coordinate_times(int k, HoloPtr f) { return std::make_shared<CoordinateTimes>(k, std::move(f)); }

bool WedgeDescriptor::contains(const cplx* z) const {
  for (int k = 0; k < n; ++k) {
    if (alpha[k] == 0) continue;
    double v = part == WedgePart::imag ? z[k].imag() : z[k].real();
    if (!(alpha[k] * v > 0)) return false;
  }
  return true;
}

std::string WedgeDescriptor::signs() const {
  std::string s;
  for (int a : alpha) s += a > 0 ? '+' : (a < 0 ? '-' : '.');
  return s;
}

WedgeDescriptor WedgeDescriptor::orthant(std::vector<int> alpha) {
  WedgeDescriptor w;
  w.n = static_cast<int>(alpha.size());
  w.alpha = std::move(alpha);
  return w;
}

WedgeDescriptor WedgeDescriptor::parse_signs(const std::string& s) {
  std::vector<int> a;
  for (char c : s) {
    if (c == '+') a.push_back(1);
    else if (c == '-') a.push_back(-1);
    else if (c == '.' || c == '0') a.push_back(0);
    else throw Error(Errc::config_error, "bad wedge sign '" + std::string(1, c) + "'");
  }
  if (a.empty()) throw Error(Errc::config_error, "empty wedge sign vector");
  return orthant(a);
}

GrowthReport check_growth(const AnalyticFunction& f, const std::vector<CVector>& samples) {
  GrowthReport r;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const CVector& z = samples[i];
    if (!f.domain.contains(z.data())) throw Error(Errc::domain_error, "sample outside the wedge");
    double nz = 0;
    for (auto& c : z) nz += std::norm(c);
    nz = std::sqrt(nz);
    double ratio = std::abs(f(z.data())) / (f.growth.C * std::exp(f.growth.H * nz));
    if (!std::isfinite(ratio)) ratio = 1e300;
    r.worst_ratio = std::max(r.worst_ratio, ratio);
    if (ratio > 1.0) r.violations.push_back(i);
  }
  return r;
}

InfraReport check_infra_exponential(const AnalyticFunction& f, const SupportHandle& h, double eps,
                                    const std::vector<Direction>& rays, const std::vector<double>& ts) {
  InfraReport r;
  for (std::size_t d = 0; d < rays.size(); ++d) {
    ExtReal hv = h ? h(rays[d]) : ExtReal::finite(0.0);
    if (!hv.is_finite()) throw Error(Errc::domain_error, "ray direction outside the support function's domain");
    for (double t : ts) {
      CVector z;
      for (auto& u : rays[d].unit) z.push_back(t * u);
      if (!f.domain.contains(z.data())) throw Error(Errc::domain_error, "ray sample outside the domain");
      double log_ratio = t * hv.value + std::log(std::abs(f(z.data()))) - std::log(f.growth.C) - eps * t;
      double ratio = std::exp(std::min(log_ratio, 700.0));
      RaySample s{d, t, ratio};
      r.samples.push_back(s);
      r.worst_ratio = std::max(r.worst_ratio, ratio);
      if (ratio > 1.0) r.violations.push_back(s);
    }
  }
  return r;
}

}  // namespace hyperlap
