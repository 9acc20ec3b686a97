#include "hyperlap/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hyperlap/error.hpp"

namespace hyperlap {

std::string ExtReal::to_string() const {
  switch (kind) {
    case Kind::neg_inf: return "-inf";
    case Kind::pos_inf: return "+inf";
    default: break;
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

ExtReal ExtReal::parse(const std::string& text) {
  if (text == "-inf") return neg_inf();
  if (text == "+inf" || text == "inf") return pos_inf();
  try {
    std::size_t used = 0;
    double v = std::stod(text, &used);
    if (used != text.size() || !std::isfinite(v)) throw std::invalid_argument(text);
    return finite(v);
  } catch (const std::logic_error&) {
    throw Error(Errc::config_error, "not an extended real: " + text);
  }
}

double dot(const Vector& a, const Vector& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm(const Vector& a) { return std::sqrt(dot(a, a)); }

Vector normalized(const Vector& a) {
  double n = norm(a);
  if (!(n > 0.0) || !std::isfinite(n)) throw Error(Errc::domain_error, "zero or non-finite vector");
  Vector out(a);
  for (auto& x : out) x /= n;
  return out;
}

Direction Direction::real(const Vector& v) {
  Vector u = normalized(v);
  Direction d;
  d.space = Space::base;
  d.unit.assign(u.begin(), u.end());
  return d;
}

Direction Direction::complex(const CVector& v) {
  double n = 0.0;
  for (auto& c : v) n += std::norm(c);
  n = std::sqrt(n);
  if (!(n > 0.0)) throw Error(Errc::domain_error, "zero direction");
  Direction d;
  d.space = Space::complexified;
  for (auto& c : v) d.unit.push_back(c / n);
  return d;
}

Vector Direction::real_part() const {
  Vector out;
  for (auto& c : unit) out.push_back(c.real());
  return out;
}

namespace {

// Look for xi with <g, xi> > 0 for all generators. Exact in 1D and 2D; perceptron search above.
bool find_interior_dual(std::size_t dim, const std::vector<Vector>& gens, Vector& xi) {
  if (gens.empty()) {
    xi.assign(dim, 0.0);
    xi[0] = 1.0;
    return true;
  }
  if (dim == 1) {
    bool pos = std::all_of(gens.begin(), gens.end(), [](auto& g) { return g[0] > 0; });
    bool neg = std::all_of(gens.begin(), gens.end(), [](auto& g) { return g[0] < 0; });
    xi = {pos ? 1.0 : -1.0};
    return pos || neg;
  }
  if (dim == 2) {
    // Angular span of the generators must be below pi.
    std::vector<double> ang;
    for (auto& g : gens) ang.push_back(std::atan2(g[1], g[0]));
    std::sort(ang.begin(), ang.end());
    const double two_pi = 2 * std::numbers::pi;
    double best_gap = -1.0;
    std::size_t gap_at = 0;
    for (std::size_t i = 0; i < ang.size(); ++i) {
      double next = (i + 1 < ang.size()) ? ang[i + 1] : ang[0] + two_pi;
      double gap = next - ang[i];
      if (gap > best_gap) best_gap = gap, gap_at = i;
    }
    double span = two_pi - best_gap;
    if (span >= std::numbers::pi - 1e-14) return false;
    double lo = (gap_at + 1 < ang.size()) ? ang[gap_at + 1] : ang[0];
    double mid = lo + span / 2;
    xi = {std::cos(mid), std::sin(mid)};
    return true;
  }
  xi.assign(dim, 0.0);
  for (auto& g : gens) {
    Vector u = normalized(g);
    for (std::size_t i = 0; i < dim; ++i) xi[i] += u[i];
  }
  for (int it = 0; it < 10000; ++it) {
    bool ok = true;
    for (auto& g : gens) {
      if (dot(g, xi) <= 1e-12 * norm(g) * std::max(norm(xi), 1e-300)) {
        Vector u = normalized(g);
        for (std::size_t i = 0; i < dim; ++i) xi[i] += u[i];
        ok = false;
      }
    }
    if (ok) return norm(xi) > 0;
  }
  return false;
}

}  // namespace

PolyhedralCone::PolyhedralCone(std::size_t dim, std::vector<Vector> generators)
    : dim_(dim), generators_(std::move(generators)) {
  if (dim == 0) throw Error(Errc::domain_error, "cone dimension must be positive");
  for (auto& g : generators_) {
    if (g.size() != dim) throw Error(Errc::domain_error, "generator dimension mismatch");
    for (double c : g)
      if (!std::isfinite(c)) throw Error(Errc::domain_error, "non-finite generator");
    if (norm(g) == 0.0) throw Error(Errc::domain_error, "zero generator");
  }
  proper_ = find_interior_dual(dim, generators_, interior_dual_);
  if (proper_) interior_dual_ = normalized(interior_dual_);
}

bool PolyhedralCone::contains(const Vector& x, double tol) const {
  double nx = norm(x);
  if (nx <= tol) return true;
  if (generators_.empty()) return false;
  if (dim_ == 1) {
    for (auto& g : generators_)
      if (g[0] * x[0] > 0) return true;
    return false;
  }
  if (dim_ == 2) {
    // x lies in the hull iff it is a nonnegative combination of some pair (or a single generator).
    for (std::size_t i = 0; i < generators_.size(); ++i) {
      const auto& a = generators_[i];
      double cr = a[0] * x[1] - a[1] * x[0];
      if (std::abs(cr) <= tol * norm(a) * nx && dot(a, x) > 0) return true;
      for (std::size_t j = i + 1; j < generators_.size(); ++j) {
        const auto& b = generators_[j];
        double det = a[0] * b[1] - a[1] * b[0];
        if (std::abs(det) < 1e-300) continue;
        double s = (x[0] * b[1] - x[1] * b[0]) / det;
        double t = (a[0] * x[1] - a[1] * x[0]) / det;
        if (s >= -tol && t >= -tol) return true;
      }
    }
    return false;
  }
  throw Error(Errc::unsupported, "cone membership implemented for n <= 2");
}

bool ClosedConicSet::contains(const Vector& x, double tol) const {
  Vector d(x);
  for (std::size_t i = 0; i < d.size(); ++i) d[i] -= vertex[i];
  return cone.contains(d, tol);
}

bool DualCone::contains(const Vector& xi) const {
  for (auto& g : primal.generators())
    if (!(dot(g, xi) > 0)) return false;
  return true;
}

bool DualCone::contains(const CVector& zeta) const {
  Vector re;
  for (auto& c : zeta) re.push_back(c.real());
  return contains(re);
}

bool HalfSpaceFamily::contains(const Vector& x, double tol) const { return margin(x) >= -tol; }

double HalfSpaceFamily::margin(const Vector& x) const {
  double m = std::numeric_limits<double>::infinity();
  for (auto& e : entries) m = std::min(m, dot(x, e.xi.real_part()) - e.bound);
  return m;
}

ExtReal support_function(const ClosedConicSet& k, const Direction& xi) {
  Vector re = xi.real_part();
  for (auto& g : k.cone.generators())
    if (dot(g, re) < 0) return ExtReal::neg_inf();
  return ExtReal::finite(dot(k.vertex, re));
}

DualCone dual_cone(const PolyhedralCone& g) {
  if (!g.is_proper()) throw Error(Errc::improper_cone, "dual open cone is empty");
  const std::size_t n = g.dim();
  std::vector<Vector> gens;
  if (g.is_zero()) {
    for (std::size_t i = 0; i < n; ++i) {
      Vector e(n, 0.0);
      e[i] = 1;
      gens.push_back(e);
      e[i] = -1;
      gens.push_back(e);
    }
  } else if (n == 1) {
    gens.push_back({g.generators()[0][0] > 0 ? 1.0 : -1.0});
  } else if (n == 2) {
    // Extreme rays by angle relative to the interior dual direction.
    const Vector& c = g.interior_dual();
    double amin = 1e9, amax = -1e9;
    Vector lo, hi;
    for (auto& v : g.generators()) {
      double a = std::atan2(c[0] * v[1] - c[1] * v[0], dot(c, v));
      if (a < amin) amin = a, lo = v;
      if (a > amax) amax = a, hi = v;
    }
    // Rotate lo by +90 degrees and hi by -90 degrees.
    Vector dlo = normalized({-lo[1], lo[0]});
    Vector dhi = normalized({hi[1], -hi[0]});
    gens.push_back(dlo);
    if (std::abs(dlo[0] * dhi[1] - dlo[1] * dhi[0]) < 1e-14 && dot(dlo, dhi) < 0) {
      gens.push_back(c);  // half-plane: add the inner normal to keep the hull
    }
    gens.push_back(dhi);
  } else {
    throw Error(Errc::unsupported, "dual cone generators implemented for n <= 2");
  }
  return DualCone{g, PolyhedralCone(n, gens)};
}

bool in_hpc(const ClosedConicSet& k, const CVector& zeta) {
  Vector re;
  for (auto& c : zeta) re.push_back(c.real());
  for (auto& g : k.cone.generators())
    if (!(dot(g, re) > 0)) return false;
  return true;
}

bool in_hpc(const ClosedConicSet& k, const Direction& zeta) { return in_hpc(k, zeta.unit); }

HalfSpaceFamily halfspace_hull(const ClosedConicSet& k, const std::vector<Direction>& directions) {
  HalfSpaceFamily fam;
  for (auto& d : directions) {
    if (!in_hpc(k, d)) continue;
    Direction r = Direction::real(d.real_part());
    ExtReal h = support_function(k, r);
    if (!h.is_finite()) continue;
    fam.entries.push_back({r, h.value});
  }
  if (fam.entries.empty()) throw Error(Errc::empty_hpc, "no supplied direction lies in HPC");
  return fam;
}

double distance(const ClosedConicSet& k, const Vector& x) {
  Vector d(x);
  for (std::size_t i = 0; i < d.size(); ++i) d[i] -= k.vertex[i];
  if (k.cone.contains(d, 1e-14)) return 0.0;
  double best = norm(d);
  for (auto& g : k.cone.generators()) {
    Vector u = normalized(g);
    double t = std::max(0.0, dot(d, u));
    Vector r(d);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= t * u[i];
    best = std::min(best, norm(r));
  }
  return best;
}

std::vector<Direction> hpc_fan(const ClosedConicSet& k, int count) {
  const std::size_t n = k.dim();
  if (!k.cone.is_proper()) throw Error(Errc::empty_hpc, "cone is not proper");
  std::vector<Direction> out;
  if (n == 1) {
    if (k.cone.is_zero()) {
      out.push_back(Direction::real({1.0}));
      out.push_back(Direction::real({-1.0}));
    } else {
      out.push_back(Direction::real(k.cone.interior_dual()));
    }
    return out;
  }
  if (n != 2) throw Error(Errc::unsupported, "direction fans implemented for n <= 2");
  double lo = 0, hi = 2 * std::numbers::pi;
  if (!k.cone.is_zero()) {
    DualCone d = dual_cone(k.cone);
    const auto& gs = d.closure.generators();
    double a0 = std::atan2(gs.back()[1], gs.back()[0]);
    double a1 = std::atan2(gs.front()[1], gs.front()[0]);
    while (a1 < a0) a1 += 2 * std::numbers::pi;
    lo = a0, hi = a1;
  }
  for (int i = 0; i < count; ++i) {
    double t = lo + (hi - lo) * (i + 0.5) / count;
    out.push_back(Direction::real({std::cos(t), std::sin(t)}));
  }
  return out;
}

}  // namespace hyperlap
