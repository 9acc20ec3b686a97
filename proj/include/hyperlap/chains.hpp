#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "hyperlap/geometry.hpp"
#include "hyperlap/quadrature.hpp"

namespace hyperlap {

struct Segment {
  std::function<cplx(double)> z;
  std::function<cplx(double)> dz;
  double t0 = 0.0;
  double t1 = 1.0;     // ignored for tails
  bool tail = false;   // parameter runs over [t0, inf)
  double sigma = 0.0;  // damping certificate on tails: |integrand| <= C e^{-sigma t}
};

Segment line_segment(cplx p, cplx q);
Segment tail_segment(cplx start, cplx velocity, double sigma);

struct Path1D {
  std::vector<Segment> segments;
  int orientation = 1;

  Path1D reversed() const {
    Path1D p = *this;
    p.orientation = -orientation;
    return p;
  }
  cplx start() const;
  bool is_closed(double tol = 1e-12) const;
};

// Loop half around closure(a + R_+ d): crosses the real axis at a - d*back, rises to
// height side*eps, runs to the vertex, then follows a + d t + i side (eps + kappa t).
// The returned path is oriented along M (left to right).
struct RayLoop {
  double a = 0.0;
  int d = 1;
  double eps = 0.3;
  double kappa = 0.0;
  double back = -1.0;  // defaults to eps

  double back_offset() const { return back > 0 ? back : eps; }
  Path1D half(int side, double sigma) const;
  // Worst damping of e^{-z zeta} along the tail for a defining function of type H.
  double tail_damping(cplx zeta, double H) const;
};

// Loop half around a compact interval [lo, hi]; oriented left to right.
struct BoxLoop {
  double lo = 0.0, hi = 0.0;
  double eps = 0.3;
  double back = -1.0;

  Path1D half(int side) const;
};

struct Profile {
  double c0 = 1.0, c1 = 1.0, p = 0.5;

  double operator()(double t) const;
  double deriv(double t) const;
  bool infra_linear() const { return p > 0 && p < 1 && c1 >= 0; }
};

// Bromwich-type chain zeta(eta) = psi(|eta|) xi0 + i eta (n = 1), or, for n = 2, orthant
// pieces zeta = anchor + psi_hat(|eta|) (|eta_1|, |eta_2|)/|eta| + i eta with psi_hat(0) = 0.
struct InverseChain {
  int n = 1;
  int xi0 = 1;
  Profile psi;
  Vector anchor;  // n = 2

  cplx zeta(double eta) const;   // n = 1
  cplx dzeta(double eta) const;  // d zeta / d eta, n = 1
  // Half side = +1 (eta > 0) or -1, oriented with increasing eta.
  Path1D half(int side, double sigma = 1.0) const;
  Path1D full(double sigma = 1.0) const;
  double psi_hat(double r) const;       // n = 2 radial profile c1((1+r)^p - 1)
  double psi_hat_deriv(double r) const;
};

InverseChain make_inverse_chain(int xi0, const Profile& psi, const std::vector<cplx>& zeros = {},
                                double margin = 0.0);
InverseChain make_orthant_chain(const Vector& anchor, const Profile& psi_hat);

// Smallest distance from the n = 1 chain to a point, by sampling plus golden refinement.
double chain_distance(const InverseChain& chain, cplx point);

using PathIntegrand = std::function<cplx(cplx)>;
using PathVectorIntegrand = std::function<void(cplx z, cplx* out)>;

QuadratureResult integrate_path(const PathIntegrand& f, const Path1D& path, double tol);
VectorQuadratureResult integrate_path_vector(const PathVectorIntegrand& f, int m, const Path1D& path, double tol);

double stokes_check(const PathIntegrand& f, const Path1D& g1, const Path1D& g2, double tol);

// Iterated integral over the product chain path1 x path2 (outer factor first).
QuadratureResult integrate_product(const std::function<cplx(cplx, cplx)>& f, const Path1D& path1,
                                   const Path1D& path2, double tol);

}  // namespace hyperlap
