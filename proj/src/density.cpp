#include "hyperlap/density.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "hyperlap/error.hpp"

namespace hyperlap {

cplx DensityFactor::operator()(cplx z) const {
  cplx p = 0.0;
  for (std::size_t i = poly.size(); i-- > 0;) p = p * z + poly[i];
  return p * std::exp(-a * (z - c) * (z - c));
}

DensityFactor DensityFactor::derivative() const {
  // (p e^{-a(x-c)^2})' = (p' - 2a(x-c)p) e^{...}
  std::vector<cplx> out(poly.size() + 1, 0.0);
  for (std::size_t i = 1; i < poly.size(); ++i) out[i - 1] += static_cast<double>(i) * poly[i];
  for (std::size_t i = 0; i < poly.size(); ++i) {
    out[i + 1] += -2.0 * a * poly[i];
    out[i] += 2.0 * a * c * poly[i];
  }
  while (out.size() > 1 && out.back() == cplx(0.0)) out.pop_back();
  return {out, a, c};
}

cplx DensityFactor::exp_moment(cplx zeta) const {
  // Complete the square: zeta x - a(x-c)^2 = zeta c + zeta^2/(4a) - a (v)^2, x = c + m + v, m = zeta/(2a).
  const cplx m = zeta / (2.0 * a);
  const cplx s = c + m;
  const std::size_t d = poly.size();
  // q(v) = p(v + s): Taylor coefficients by repeated synthetic division.
  std::vector<cplx> q(poly);
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t i = d - 1; i > j; --i) q[i - 1] += s * q[i];
  // Gaussian moments: integral of v^j e^{-a v^2}.
  cplx sum = 0.0;
  double moment = std::sqrt(std::numbers::pi / a);
  for (std::size_t j = 0; j < d; j += 2) {
    sum += q[j] * moment;
    moment *= static_cast<double>(j + 1) / (2.0 * a);
  }
  return std::exp(zeta * c + zeta * zeta / (4.0 * a)) * sum;
}

double DensityFactor::log_magnitude(cplx z) const {
  double p = 0.0, zn = 1.0, az = std::abs(z);
  for (auto& coef : poly) p += std::abs(coef) * zn, zn *= az;
  const double x = z.real() - c, y = z.imag();
  return std::log(std::max(p, 1e-300)) - a * (x * x - y * y);
}

Expr DensityFactor::to_expr(const std::string& var) const {
  Expr p = ex::constant(poly.empty() ? cplx(0.0) : poly[0]);
  for (std::size_t i = 1; i < poly.size(); ++i)
    p = ex::add(p, ex::mul(ex::constant(poly[i]), ex::pow(ex::var(var), static_cast<int>(i))));
  Expr shift = ex::sub(ex::var(var), ex::constant(c));
  return ex::mul(p, ex::exp(ex::neg(ex::mul(ex::constant(a), ex::pow(shift, 2)))));
}

cplx TestDensity::operator()(const cplx* z) const {
  cplx v = 1.0;
  for (std::size_t k = 0; k < factors.size(); ++k) v *= factors[k](z[k]);
  return v;
}

TestDensity TestDensity::derivative(int k) const {
  TestDensity d = *this;
  d.factors.at(k) = factors.at(k).derivative();
  return d;
}

cplx TestDensity::exp_moment(const cplx* zeta) const {
  cplx v = 1.0;
  for (std::size_t k = 0; k < factors.size(); ++k) v *= factors[k].exp_moment(zeta[k]);
  return v;
}

double TestDensity::min_rate() const {
  double r = 1e300;
  for (auto& f : factors) r = std::min(r, f.a);
  return r;
}

std::string TestDensity::describe() const {
  std::ostringstream os;
  for (std::size_t k = 0; k < factors.size(); ++k) {
    if (k) os << " * ";
    os << print(factors[k].to_expr("x" + std::to_string(k + 1)));
  }
  return os.str();
}

TestDensity gaussian_density(double a, double c, std::vector<cplx> poly) {
  if (!(a > 0)) throw Error(Errc::growth_mismatch, "density needs a positive Gaussian rate");
  TestDensity d;
  d.factors.push_back({std::move(poly), a, c});
  return d;
}

TestDensity product_density(const TestDensity& x, const TestDensity& y) {
  TestDensity d = x;
  d.factors.insert(d.factors.end(), y.factors.begin(), y.factors.end());
  return d;
}

std::vector<TestDensity> density_battery(int n) {
  const cplx I(0, 1);
  std::vector<TestDensity> one = {
      gaussian_density(1.0, 0.0, {1.0}),
      gaussian_density(2.0, 0.5, {1.0}),
      gaussian_density(1.0, 1.0, {1.0}),
      gaussian_density(3.0, 1.5, {1.0}),
      gaussian_density(1.5, -0.5, {1.0}),
      gaussian_density(1.0, 0.0, {0.0, 1.0}),
      gaussian_density(2.0, 1.0, {0.0, 1.0}),
      gaussian_density(1.5, 0.5, {0.0, 1.0}),
      gaussian_density(1.0, 0.25, {1.0, 0.0, 1.0}),
      gaussian_density(2.0, 1.25, {1.0, 0.0, 1.0}),
      gaussian_density(1.5, 0.0, {-1.0, 0.0, 1.0}),
      gaussian_density(2.0, 0.75, {0.0, 0.0, 0.0, 1.0}),
      gaussian_density(1.0, 2.0, {1.0, -1.0}),
      gaussian_density(3.0, -1.0, {2.0, 1.0}),
      gaussian_density(1.0, 0.5, {0.0, 1.0, 0.0, -1.0 / 3.0}),
      gaussian_density(4.0, 1.0, {1.0}),
      gaussian_density(1.0, 0.0, {1.0, I}),
      gaussian_density(2.5, 1.0, {0.0, 0.0, 1.0}),
      gaussian_density(1.25, 2.5, {1.0}),
      gaussian_density(1.0, 0.1, {0.0, -1.0, 0.0, 0.0, 1.0}),
  };
  if (n == 1) return one;
  if (n != 2) throw Error(Errc::unsupported, "density battery exists for n = 1, 2");
  std::vector<TestDensity> two;
  for (std::size_t i = 0; i < one.size(); ++i) two.push_back(product_density(one[i], one[(i * 7 + 3) % one.size()]));
  return two;
}

std::vector<TestDensity> sharp_density_battery(int n) {
  std::vector<TestDensity> one;
  for (double a : {6.0, 8.0})
    for (double c : {-1.0, -0.5, 0.0, 0.5, 0.75, 1.0}) one.push_back(gaussian_density(a, c, {1.0, c - 0.25}));
  if (n == 1) return one;
  if (n != 2) throw Error(Errc::unsupported, "density battery exists for n = 1, 2");
  std::vector<TestDensity> two;
  for (std::size_t i = 0; i < one.size(); ++i) two.push_back(product_density(one[i], one[(i * 5 + 2) % one.size()]));
  return two;
}

}  // namespace hyperlap
