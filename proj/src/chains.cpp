#include "hyperlap/chains.hpp"

#include <algorithm>
#include <cmath>

#include "hyperlap/error.hpp"

namespace hyperlap {

Segment line_segment(cplx p, cplx q) {
  Segment s;
  s.z = [p, q](double t) { return p + (q - p) * t; };
  s.dz = [p, q](double) { return q - p; };
  return s;
}

Segment tail_segment(cplx start, cplx velocity, double sigma) {
  Segment s;
  s.z = [start, velocity](double t) { return start + velocity * t; };
  s.dz = [velocity](double) { return velocity; };
  s.tail = true;
  s.sigma = sigma;
  return s;
}

cplx Path1D::start() const {
  if (segments.empty()) return 0.0;
  const Segment& s = segments.front();
  return s.z(s.t0);
}

bool Path1D::is_closed(double tol) const {
  if (segments.empty()) return true;
  const Segment& last = segments.back();
  if (last.tail) return false;
  return std::abs(last.z(last.t1) - start()) <= tol;
}

Path1D RayLoop::half(int side, double sigma) const {
  const double b = back_offset();
  const double s = side > 0 ? 1.0 : -1.0;
  const cplx p0(a - d * b, 0.0);
  const cplx p1(a - d * b, s * eps);
  const cplx p2(a, s * eps);
  Path1D path;
  path.segments.push_back(line_segment(p0, p1));
  path.segments.push_back(line_segment(p1, p2));
  path.segments.push_back(tail_segment(p2, cplx(d, s * kappa), sigma));
  path.orientation = d;  // d = -1 runs against M
  return path;
}

double RayLoop::tail_damping(cplx zeta, double H) const {
  return d * zeta.real() - kappa * std::abs(zeta.imag()) - H;
}

Path1D BoxLoop::half(int side) const {
  const double b = back > 0 ? back : eps;
  const double s = side > 0 ? 1.0 : -1.0;
  const cplx p0(lo - b, 0.0), p1(lo - b, s * eps), p2(hi + b, s * eps), p3(hi + b, 0.0);
  Path1D path;
  path.segments.push_back(line_segment(p0, p1));
  path.segments.push_back(line_segment(p1, p2));
  path.segments.push_back(line_segment(p2, p3));
  return path;
}

double Profile::operator()(double t) const { return c0 + c1 * std::pow(1.0 + t, p); }
double Profile::deriv(double t) const { return c1 * p * std::pow(1.0 + t, p - 1.0); }

cplx InverseChain::zeta(double eta) const { return cplx(psi(std::abs(eta)) * xi0, eta); }

cplx InverseChain::dzeta(double eta) const {
  double sgn = eta >= 0 ? 1.0 : -1.0;
  return cplx(sgn * psi.deriv(std::abs(eta)) * xi0, 1.0);
}

Path1D InverseChain::half(int side, double sigma) const {
  if (n != 1) throw Error(Errc::unsupported, "half chains exist for n = 1 only");
  const double s = side > 0 ? 1.0 : -1.0;
  Segment seg;
  InverseChain self = *this;
  seg.z = [self, s](double t) { return self.zeta(s * t); };
  seg.dz = [self, s](double t) { return s * self.dzeta(s * t); };
  seg.tail = true;
  seg.sigma = sigma;
  Path1D path;
  path.segments.push_back(seg);
  path.orientation = side > 0 ? 1 : -1;  // the lower half is traversed towards eta = 0
  return path;
}

Path1D InverseChain::full(double sigma) const {
  Path1D lo = half(-1, sigma), hi = half(1, sigma);
  // Represent the whole chain as the lower half reversed followed by the upper half;
  // the orientation flag is absorbed into a sign-flipped derivative.
  Segment l = lo.segments.front();
  auto dz = l.dz;
  l.dz = [dz](double t) { return -dz(t); };
  Path1D path;
  path.segments.push_back(l);
  path.segments.push_back(hi.segments.front());
  return path;
}

double InverseChain::psi_hat(double r) const { return psi.c1 * (std::pow(1.0 + r, psi.p) - 1.0); }
double InverseChain::psi_hat_deriv(double r) const { return psi.c1 * psi.p * std::pow(1.0 + r, psi.p - 1.0); }

double chain_distance(const InverseChain& chain, cplx point) {
  // Coarse scan on a stretched grid, then golden-section refinement around the best sample.
  auto dist = [&](double eta) { return std::abs(chain.zeta(eta) - point); };
  double best_eta = 0.0, best = dist(0.0);
  const double reach = 4.0 * (std::abs(point) + 10.0);
  const int samples = 4001;
  for (int i = 0; i < samples; ++i) {
    double u = -1.0 + 2.0 * i / (samples - 1);
    double eta = reach * u * std::abs(u);
    double d = dist(eta);
    if (d < best) best = d, best_eta = eta;
  }
  double h = reach * 4.0 / samples + 1e-3;
  double lo = best_eta - h, hi = best_eta + h;
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  for (int it = 0; it < 80; ++it) {
    double m1 = hi - g * (hi - lo), m2 = lo + g * (hi - lo);
    if (dist(m1) < dist(m2)) hi = m2;
    else lo = m1;
  }
  return std::min(best, dist(0.5 * (lo + hi)));
}

InverseChain make_inverse_chain(int xi0, const Profile& psi, const std::vector<cplx>& zeros, double margin) {
  if (!psi.infra_linear()) throw Error(Errc::domain_error, "profile is not infra-linear (need 0 < p < 1, c1 >= 0)");
  if (xi0 != 1 && xi0 != -1) throw Error(Errc::domain_error, "xi0 must be +1 or -1 for n = 1");
  InverseChain c;
  c.n = 1;
  c.xi0 = xi0;
  c.psi = psi;
  for (cplx z : zeros) {
    double d = chain_distance(c, z);
    if (d < margin)
      throw Error(Errc::margin_violation,
                  "chain passes within " + std::to_string(d) + " of a declared zero");
  }
  return c;
}

InverseChain make_orthant_chain(const Vector& anchor, const Profile& psi_hat) {
  if (anchor.size() != 2) throw Error(Errc::domain_error, "orthant chains need a 2D anchor");
  if (!psi_hat.infra_linear()) throw Error(Errc::domain_error, "profile is not infra-linear");
  InverseChain c;
  c.n = 2;
  c.anchor = anchor;
  c.psi = psi_hat;
  c.psi.c0 = -psi_hat.c1;  // psi_hat(0) = 0
  return c;
}

VectorQuadratureResult integrate_path_vector(const PathVectorIntegrand& f, int m, const Path1D& path, double tol) {
  VectorQuadratureResult total;
  total.value.assign(m, 0.0);
  total.error_estimate.assign(m, 0.0);
  total.abs_value.assign(m, 0.0);
  if (path.segments.empty()) return total;
  QuadOptions opt;
  opt.tol = tol / path.segments.size();
  std::vector<cplx> buf(m);
  for (const Segment& s : path.segments) {
    auto g = [&](double t, cplx* out) {
      const cplx z = s.z(t), dz = s.dz(t);
      f(z, out);
      for (int k = 0; k < m; ++k) out[k] *= dz;
    };
    VectorQuadratureResult r = s.tail ? integrate_tail_vector(g, m, s.t0, s.sigma, opt)
                                      : gauss_kronrod_vector(g, m, s.t0, s.t1, opt);
    for (int k = 0; k < m; ++k) {
      total.value[k] += r.value[k];
      total.error_estimate[k] += r.error_estimate[k];
      total.abs_value[k] += r.abs_value[k];
    }
    total.evaluations += r.evaluations;
  }
  if (path.orientation < 0)
    for (auto& v : total.value) v = -v;
  return total;
}

QuadratureResult integrate_path(const PathIntegrand& f, const Path1D& path, double tol) {
  auto r = integrate_path_vector([&](cplx z, cplx* out) { *out = f(z); }, 1, path, tol);
  return {r.value[0], r.error_estimate[0], r.evaluations, r.abs_value[0]};
}

double stokes_check(const PathIntegrand& f, const Path1D& g1, const Path1D& g2, double tol) {
  return std::abs(integrate_path(f, g1, tol).value - integrate_path(f, g2, tol).value);
}

QuadratureResult integrate_product(const std::function<cplx(cplx, cplx)>& f, const Path1D& path1,
                                   const Path1D& path2, double tol) {
  long inner_evals = 0;
  double inner_err = 0.0;
  const double inner_tol = tol * 0.1;
  auto outer = [&](cplx z1) {
    QuadratureResult r = integrate_path([&](cplx z2) { return f(z1, z2); }, path2, inner_tol);
    inner_evals += r.evaluations;
    inner_err = std::max(inner_err, r.error_estimate);
    return r.value;
  };
  QuadratureResult r = integrate_path(outer, path1, tol * 0.5);
  r.evaluations += inner_evals;
  r.error_estimate += inner_err;
  return r;
}

}  // namespace hyperlap
