#pragma once

#include <map>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "hyperlap/hyperfunction.hpp"
#include "hyperlap/laplace.hpp"

namespace hyperlap {

using Rational = boost::multiprecision::cpp_rational;

// Complex rational re + i im.
struct CRational {
  Rational re, im;

  CRational() = default;
  CRational(Rational r, Rational i = 0) : re(std::move(r)), im(std::move(i)) {}
  CRational(long v) : re(v), im(0) {}
  static CRational from_double(cplx v);  // exact binary value

  bool is_zero() const { return re == 0 && im == 0; }
  cplx to_cplx() const;
  double abs() const { return std::abs(to_cplx()); }
  std::string str() const;

  friend CRational operator+(const CRational& a, const CRational& b) { return {a.re + b.re, a.im + b.im}; }
  friend CRational operator-(const CRational& a, const CRational& b) { return {a.re - b.re, a.im - b.im}; }
  friend CRational operator*(const CRational& a, const CRational& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend CRational operator/(const CRational& a, const CRational& b);
  CRational operator-() const { return {-re, -im}; }
  friend bool operator==(const CRational& a, const CRational& b) { return a.re == b.re && a.im == b.im; }
};

using Exponent = std::vector<int>;

// Sparse polynomial in n variables with exact coefficients; zero entries are never stored.
class MultiPoly {
 public:
  MultiPoly() = default;
  explicit MultiPoly(int n) : n_(n) {}
  static MultiPoly constant(int n, const CRational& c);
  static MultiPoly variable(int n, int k);  // zeta_{k+1}
  static MultiPoly monomial(int n, const Exponent& e, const CRational& c);

  int vars() const { return n_; }
  int degree() const;  // -1 for the zero polynomial
  bool is_zero() const { return terms_.empty(); }
  const std::map<Exponent, CRational>& terms() const { return terms_; }
  CRational coefficient(const Exponent& e) const;
  void add_term(const Exponent& e, const CRational& c);

  MultiPoly homogeneous_part(int d) const;
  MultiPoly derivative(int k) const;
  MultiPoly pow(int k) const;
  cplx operator()(const cplx* z) const;
  cplx operator()(cplx z) const { return (*this)(&z); }
  // Lipschitz bound on the unit ball from per-coordinate derivative bounds.
  double lipschitz_bound() const;
  std::string str(const std::string& stem = "zeta") const;

  friend MultiPoly operator+(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator-(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator*(const CRational& c, const MultiPoly& a);
  friend bool operator==(const MultiPoly& a, const MultiPoly& b) { return a.n_ == b.n_ && a.terms_ == b.terms_; }

 private:
  int n_ = 0;
  std::map<Exponent, CRational> terms_;
};

// Polynomial text in D1..Dn (or D), zeta1..zetan (or zeta), with + - * ^ and numeric constants.
MultiPoly parse_poly(const std::string& text, int n);

// Constant-coefficient operator: the polynomial read in d/dx_k.
struct DiffOp {
  MultiPoly p;

  static DiffOp parse(const std::string& text, int n);
  int vars() const { return p.vars(); }
  int order() const { return p.degree(); }
  // P(d) u as a hyperfunction.
  Hyperfunction apply(const Hyperfunction& u) const;
};

MultiPoly principal_symbol(const DiffOp& P);

// ------------------------------------------------------------------ characteristic variety

// Directions of the sphere in C^n modulo the phase e^{i theta}: symbols are homogeneous, so
// |sigma| is constant on phase orbits. n = 1: one point. n = 2: (cos eta, sin eta e^{i phi}).
struct SphereGrid {
  double mesh = 0.02;
  std::vector<CVector> directions;
};
SphereGrid projective_grid(int n, double mesh);
// Covering radius of the grid, measured between phase orbits.
double projective_cover(int n, double mesh);

struct CharReport {
  SphereGrid grid;
  double cover = 0.0;
  double tol = -1.0;  // fixed relative threshold, or the Lipschitz slack when negative
  // max over generators of |sigma_i| / max_grid |sigma_i|; characteristic means all vanish
  std::vector<double> value;
  std::vector<std::size_t> flagged;
  std::string csv() const;
};

// Flags directions where every generator's relative symbol value is below its threshold.
CharReport char_infinity(const std::vector<DiffOp>& gens, double mesh = 0.02, double tol = -1.0);

struct SolvabilityReport {
  bool solvable = false;
  double min_abs = 0.0;   // min of |sigma(P)| over the scanned part of HPC{K}
  double slack = 0.0;     // Lipschitz bound times the covering radius
  double depth = 0.0;     // scanned directions keep Re<g, zeta> >= depth |g| for every generator g
  CVector worst;
  std::size_t directions = 0;
};

// Grid over the unit sphere restricted to HPC{K} at the given depth; solvable when
// min |sigma| exceeds the slack, so sigma has no zero in the scanned region.
SolvabilityReport check_solvable(const DiffOp& P, const ClosedConicSet& K, double mesh = 0.02,
                                 double depth = 0.2);

// ------------------------------------------------------------------ Koszul complex

struct KoszulElement {
  int degree = 0;
  int ell = 0;
  int n = 0;
  std::map<std::vector<int>, MultiPoly> parts;  // sorted index tuples in 0..ell-1

  bool is_zero() const;
  friend bool operator==(const KoszulElement& a, const KoszulElement& b);
  friend KoszulElement operator-(const KoszulElement& a, const KoszulElement& b);
  void add(const std::vector<int>& index, const MultiPoly& f);
};

// d(f e_I) = sum_j P_j f e_j ^ e_I.
KoszulElement koszul_d(const KoszulElement& e, const std::vector<MultiPoly>& P);
// s(f e_J) = sum_j a_j f i_j(e_J), contraction with the coefficient vector a.
KoszulElement koszul_s(const KoszulElement& e, const std::vector<MultiPoly>& a);

struct HomotopyReport {
  bool anticommutator_exact = false;  // s d + d s = h
  bool commutator_exact = false;      // s d - d s = h
  std::size_t elements = 0;
  bool pass() const { return anticommutator_exact; }
};

// h = sum a_j P_j is checked symbolically first.
HomotopyReport koszul_homotopy_check(const std::vector<MultiPoly>& P, const std::vector<MultiPoly>& a,
                                     const MultiPoly& h, const std::vector<KoszulElement>& elements);

struct RegularSequenceReport {
  bool consistent = false;
  int failed_position = -1;
  int failed_degree = -1;
  int cap = 0;
};

// Exact ranks of the filtered Koszul maps: ker d_k = im d_{k-1} for every position k < ell and
// every filtration degree up to D, with the e_j weighted by deg P_j.
RegularSequenceReport regular_sequence_check_bounded(const std::vector<MultiPoly>& P, int D);

// ------------------------------------------------------------------ operational calculus

struct SolveOptions {
  double margin = 0.5;   // chain abscissa beyond the rightmost root
  double pole_gap = 0.1; // minimum distance between chain and roots
  double psi0 = 0.0;     // chain abscissa override; 0 chooses automatically
  InverseOptions inverse;
  ForwardOptions forward;
};

struct SolveResult {
  Hyperfunction u;
  std::vector<cplx> roots;
  InverseChain chain;
  SolvabilityReport solvability;
  std::vector<cplx> residual;  // pairings of P(d)u - f on the battery
  double max_residual = 0.0;
};

// u = I L(L(f) / P) in one variable; residuals over density_battery(1).
SolveResult solve(const DiffOp& P, const Hyperfunction& f, const ClosedConicSet& K, const SolveOptions& opt = {});

// Roots of a one variable polynomial from the companion matrix.
std::vector<cplx> poly_roots(const MultiPoly& p);

}  // namespace hyperlap
