#pragma once

#include <complex>
#include <string>
#include <vector>

namespace hyperlap {

using cplx = std::complex<double>;
using Vector = std::vector<double>;
using CVector = std::vector<cplx>;

// Real number extended by -inf and +inf, kept explicit instead of using IEEE infinities.
struct ExtReal {
  enum class Kind { finite, neg_inf, pos_inf };
  Kind kind = Kind::finite;
  double value = 0.0;

  static ExtReal finite(double v) { return {Kind::finite, v}; }
  static ExtReal neg_inf() { return {Kind::neg_inf, 0.0}; }
  static ExtReal pos_inf() { return {Kind::pos_inf, 0.0}; }

  bool is_finite() const { return kind == Kind::finite; }
  std::string to_string() const;
  static ExtReal parse(const std::string& text);
  bool operator==(const ExtReal& o) const {
    return kind == o.kind && (kind != Kind::finite || value == o.value);
  }
};

enum class Space { base, complexified };

// Unit vector in M* (real) or E* (complex). Base directions have zero imaginary part.
struct Direction {
  CVector unit;
  Space space = Space::base;

  static Direction real(const Vector& v);
  static Direction complex(const CVector& v);
  std::size_t dim() const { return unit.size(); }
  Vector real_part() const;
};

class PolyhedralCone {
 public:
  PolyhedralCone() = default;
  PolyhedralCone(std::size_t dim, std::vector<Vector> generators);

  std::size_t dim() const { return dim_; }
  const std::vector<Vector>& generators() const { return generators_; }
  bool is_convex() const { return true; }  // conic hulls are convex
  bool is_proper() const { return proper_; }
  bool is_zero() const { return generators_.empty(); }
  // A vector with <g, xi> > 0 for every generator, when the cone is proper.
  const Vector& interior_dual() const { return interior_dual_; }
  bool contains(const Vector& x, double tol = 1e-12) const;

 private:
  std::size_t dim_ = 0;
  std::vector<Vector> generators_;
  bool proper_ = true;
  Vector interior_dual_;
};

// K = closure(vertex + cone).
struct ClosedConicSet {
  Vector vertex;
  PolyhedralCone cone;

  std::size_t dim() const { return vertex.size(); }
  bool contains(const Vector& x, double tol = 1e-12) const;
};

// Open dual cone: zeta with Re<g, zeta> > 0 for all generators g.
struct DualCone {
  PolyhedralCone primal;
  PolyhedralCone closure;  // generators of the closed dual

  bool contains(const Vector& xi) const;
  bool contains(const CVector& zeta) const;
};

struct HalfSpace {
  Direction xi;
  double bound = 0.0;  // {x : <x, xi> >= bound}
};

struct HalfSpaceFamily {
  std::vector<HalfSpace> entries;
  bool contains(const Vector& x, double tol = 1e-12) const;
  // Smallest bound slack over the family; positive means strictly inside.
  double margin(const Vector& x) const;
};

double dot(const Vector& a, const Vector& b);
double norm(const Vector& a);
Vector normalized(const Vector& a);

ExtReal support_function(const ClosedConicSet& k, const Direction& xi);
DualCone dual_cone(const PolyhedralCone& g);
bool in_hpc(const ClosedConicSet& k, const Direction& zeta);
bool in_hpc(const ClosedConicSet& k, const CVector& zeta);
HalfSpaceFamily halfspace_hull(const ClosedConicSet& k, const std::vector<Direction>& directions);

// Euclidean distance from x to K (n <= 2).
double distance(const ClosedConicSet& k, const Vector& x);

// n equally spaced real directions strictly inside the open dual of g (n = 2 only uses a fan).
std::vector<Direction> hpc_fan(const ClosedConicSet& k, int count);

}  // namespace hyperlap
