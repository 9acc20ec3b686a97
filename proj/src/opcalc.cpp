#include "hyperlap/opcalc.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "hyperlap/error.hpp"
#include "hyperlap/expr.hpp"
#include "hyperlap/kernels.hpp"

namespace hyperlap {

// ------------------------------------------------------------------ complex rationals

CRational CRational::from_double(cplx v) {
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
    throw Error(Errc::domain_error, "non-finite coefficient");
  return {Rational(v.real()), Rational(v.imag())};
}

cplx CRational::to_cplx() const {
  return {static_cast<double>(re), static_cast<double>(im)};
}

std::string CRational::str() const {
  auto r = [](const Rational& q) {
    std::ostringstream os;
    os << q;
    return os.str();
  };
  if (im == 0) return r(re);
  if (re == 0) return r(im) + "i";
  return "(" + r(re) + (im > 0 ? "+" : "") + r(im) + "i)";
}

CRational operator/(const CRational& a, const CRational& b) {
  Rational d = b.re * b.re + b.im * b.im;
  if (d == 0) throw Error(Errc::domain_error, "division by zero");
  return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}

// ------------------------------------------------------------------ polynomials

MultiPoly MultiPoly::constant(int n, const CRational& c) { return monomial(n, Exponent(n, 0), c); }

MultiPoly MultiPoly::variable(int n, int k) {
  Exponent e(n, 0);
  e[k] = 1;
  return monomial(n, e, CRational(1));
}

MultiPoly MultiPoly::monomial(int n, const Exponent& e, const CRational& c) {
  MultiPoly p(n);
  p.add_term(e, c);
  return p;
}

void MultiPoly::add_term(const Exponent& e, const CRational& c) {
  if (static_cast<int>(e.size()) != n_) throw Error(Errc::domain_mismatch, "exponent length");
  if (c.is_zero()) return;
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_.emplace(e, c);
    return;
  }
  it->second = it->second + c;
  if (it->second.is_zero()) terms_.erase(it);
}

static int total(const Exponent& e) {
  int s = 0;
  for (int v : e) s += v;
  return s;
}

int MultiPoly::degree() const {
  int d = -1;
  for (auto& [e, c] : terms_) d = std::max(d, total(e));
  return d;
}

CRational MultiPoly::coefficient(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? CRational() : it->second;
}

MultiPoly MultiPoly::homogeneous_part(int d) const {
  MultiPoly p(n_);
  for (auto& [e, c] : terms_)
    if (total(e) == d) p.terms_.emplace(e, c);
  return p;
}

MultiPoly MultiPoly::derivative(int k) const {
  MultiPoly p(n_);
  for (auto& [e, c] : terms_) {
    if (e[k] == 0) continue;
    Exponent f = e;
    f[k] -= 1;
    p.add_term(f, CRational(e[k]) * c);
  }
  return p;
}

MultiPoly MultiPoly::pow(int k) const {
  if (k < 0) throw Error(Errc::domain_error, "negative power of a polynomial");
  MultiPoly r = constant(n_, CRational(1));
  for (int i = 0; i < k; ++i) r = r * *this;
  return r;
}

cplx MultiPoly::operator()(const cplx* z) const {
  cplx s = 0.0;
  for (auto& [e, c] : terms_) {
    cplx m = c.to_cplx();
    for (int k = 0; k < n_; ++k)
      for (int j = 0; j < e[k]; ++j) m *= z[k];
    s += m;
  }
  return s;
}

double MultiPoly::lipschitz_bound() const {
  // |d_k p| <= sum |c_alpha| alpha_k on the unit ball; the gradient bound is their 2-norm
  std::vector<double> partial(n_, 0.0);
  for (auto& [e, c] : terms_)
    for (int k = 0; k < n_; ++k) partial[k] += c.abs() * e[k];
  double s = 0.0;
  for (double v : partial) s += v * v;
  return std::sqrt(s);
}

std::string MultiPoly::str(const std::string& stem) const {
  if (terms_.empty()) return "0";
  std::string out;
  // highest degree first
  std::vector<std::pair<Exponent, CRational>> v(terms_.begin(), terms_.end());
  std::stable_sort(v.begin(), v.end(), [](auto& a, auto& b) {
    return total(a.first) != total(b.first) ? total(a.first) > total(b.first) : a.first > b.first;
  });
  for (auto& [e, c] : v) {
    std::string mono;
    for (int k = 0; k < n_; ++k) {
      if (e[k] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += n_ == 1 ? stem : stem + std::to_string(k + 1);
      if (e[k] > 1) mono += "^" + std::to_string(e[k]);
    }
    std::string cs = c.str();
    if (!out.empty()) out += " + ";
    if (mono.empty())
      out += cs;
    else if (c == CRational(1))
      out += mono;
    else if (c == CRational(-1))
      out += "-" + mono;
    else
      out += cs + "*" + mono;
  }
  return out;
}

MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) {
  if (a.n_ != b.n_) throw Error(Errc::domain_mismatch, "polynomials in different variable counts");
  MultiPoly r = a;
  for (auto& [e, c] : b.terms_) r.add_term(e, c);
  return r;
}

MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) {
  if (a.n_ != b.n_) throw Error(Errc::domain_mismatch, "polynomials in different variable counts");
  MultiPoly r = a;
  for (auto& [e, c] : b.terms_) r.add_term(e, -c);
  return r;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  if (a.n_ != b.n_) throw Error(Errc::domain_mismatch, "polynomials in different variable counts");
  MultiPoly r(a.n_);
  for (auto& [ea, ca] : a.terms_)
    for (auto& [eb, cb] : b.terms_) {
      Exponent e(a.n_);
      for (int k = 0; k < a.n_; ++k) e[k] = ea[k] + eb[k];
      r.add_term(e, ca * cb);
    }
  return r;
}

MultiPoly operator*(const CRational& c, const MultiPoly& a) {
  MultiPoly r(a.n_);
  for (auto& [e, v] : a.terms_) r.add_term(e, c * v);
  return r;
}

namespace {

int variable_index(const std::string& name, int n) {
  for (const char* stem : {"D", "zeta"}) {
    std::string s = stem;
    if (name == s && n == 1) return 0;
    if (name.size() > s.size() && name.compare(0, s.size(), s) == 0) {
      std::string rest = name.substr(s.size());
      if (!std::all_of(rest.begin(), rest.end(), [](char c) { return c >= '0' && c <= '9'; })) continue;
      int k = std::stoi(rest);
      if (k >= 1 && k <= n) return k - 1;
    }
  }
  throw Error(Errc::unknown_identifier, "'" + name + "' is not a variable of a " + std::to_string(n) +
                                            "-variable polynomial");
}

MultiPoly to_poly(const Expr& e, int n) {
  switch (e->op) {
    case Op::constant:
      return MultiPoly::constant(n, CRational::from_double(e->value));
    case Op::variable:
      if (e->name == "i" || e->name == "I") return MultiPoly::constant(n, CRational(0, 1));
      return MultiPoly::variable(n, variable_index(e->name, n));
    case Op::add:
      return to_poly(e->a, n) + to_poly(e->b, n);
    case Op::sub:
      return to_poly(e->a, n) - to_poly(e->b, n);
    case Op::mul:
      return to_poly(e->a, n) * to_poly(e->b, n);
    case Op::neg:
      return CRational(-1) * to_poly(e->a, n);
    case Op::pow:
      if (e->exponent < 0) throw Error(Errc::unsupported, "negative powers are not polynomial");
      return to_poly(e->a, n).pow(e->exponent);
    case Op::div: {
      MultiPoly d = to_poly(e->b, n);
      if (d.degree() != 0) throw Error(Errc::unsupported, "division by a non-constant");
      return (CRational(1) / d.coefficient(Exponent(n, 0))) * to_poly(e->a, n);
    }
    default:
      throw Error(Errc::unsupported, "only polynomial expressions are operators");
  }
}

}  // namespace

MultiPoly parse_poly(const std::string& text, int n) {
  if (n < 1) throw Error(Errc::domain_error, "need at least one variable");
  return to_poly(parse(text), n);
}

DiffOp DiffOp::parse(const std::string& text, int n) { return DiffOp{parse_poly(text, n)}; }

Hyperfunction DiffOp::apply(const Hyperfunction& u) const {
  if (u.n != vars()) throw Error(Errc::domain_mismatch, "operator and hyperfunction dimensions differ");
  Hyperfunction out;
  out.n = u.n;
  out.support = u.support;
  for (auto& [e, c] : p.terms()) {
    Hyperfunction w = u;
    for (int k = 0; k < u.n; ++k)
      for (int j = 0; j < e[k]; ++j) w = derivative(w, k);
    for (auto& t : w.terms) out.terms.push_back({t.F, t.coeff * c.to_cplx()});
  }
  return out;
}

MultiPoly principal_symbol(const DiffOp& P) {
  if (P.p.is_zero()) throw Error(Errc::zero_operator, "the zero operator has no principal symbol");
  return P.p.homogeneous_part(P.order());
}

// ------------------------------------------------------------------ characteristic scans

namespace {

kernels::NumericPoly numeric(const MultiPoly& p) {
  kernels::NumericPoly q;
  q.n = p.vars();
  for (auto& [e, c] : p.terms()) {
    q.exponents.push_back(e);
    q.coeffs.push_back(c.to_cplx());
  }
  return q;
}

int steps(double length, double mesh) { return std::max(1, static_cast<int>(std::ceil(length / mesh))); }

}  // namespace

SphereGrid projective_grid(int n, double mesh) {
  if (!(mesh > 0)) throw Error(Errc::domain_error, "grid mesh must be positive");
  SphereGrid g;
  g.mesh = mesh;
  if (n == 1) {
    g.directions.push_back({cplx(1.0)});
    return g;
  }
  if (n != 2) throw Error(Errc::unsupported, "sphere grids implemented for n <= 2");
  const double pi = std::numbers::pi;
  const int ne = steps(pi / 2, mesh), nphi = steps(2 * pi, mesh);
  for (int i = 0; i <= ne; ++i) {
    double eta = (pi / 2) * i / ne;
    int m = (i == 0) ? 1 : nphi;  // eta = 0 is a single point
    for (int j = 0; j < m; ++j) {
      double phi = 2 * pi * j / nphi;
      g.directions.push_back({cplx(std::cos(eta)), std::sin(eta) * std::polar(1.0, phi)});
    }
  }
  return g;
}

double projective_cover(int n, double mesh) {
  if (n == 1) return 0.0;
  const double pi = std::numbers::pi;
  const double de = (pi / 2) / steps(pi / 2, mesh), dphi = 2 * pi / steps(2 * pi, mesh);
  // horizontal metric d eta^2 + sin^2 cos^2 d phi^2 <= d eta^2 + d phi^2 / 4
  return 0.5 * std::sqrt(de * de + 0.25 * dphi * dphi);
}

std::string CharReport::csv() const {
  std::ostringstream os;
  os.precision(12);
  os << "index";
  const std::size_t n = grid.directions.empty() ? 0 : grid.directions[0].size();
  for (std::size_t k = 0; k < n; ++k) os << ",re_zeta" << k + 1 << ",im_zeta" << k + 1;
  os << ",value,flagged\n";
  std::vector<char> mark(value.size(), 0);
  for (auto i : flagged) mark[i] = 1;
  for (std::size_t i = 0; i < value.size(); ++i) {
    os << i;
    for (cplx z : grid.directions[i]) os << "," << z.real() << "," << z.imag();
    os << "," << value[i] << "," << int(mark[i]) << "\n";
  }
  return os.str();
}

CharReport char_infinity(const std::vector<DiffOp>& gens, double mesh, double tol) {
  if (gens.empty()) throw Error(Errc::domain_error, "no generators");
  CharReport rep;
  rep.grid = projective_grid(gens[0].vars(), mesh);
  rep.cover = projective_cover(gens[0].vars(), mesh);
  rep.tol = tol;
  rep.value.assign(rep.grid.directions.size(), 0.0);
  std::vector<char> maybe_zero(rep.grid.directions.size(), 1);
  for (const DiffOp& P : gens) {
    if (P.vars() != gens[0].vars()) throw Error(Errc::domain_mismatch, "generators in different dimensions");
    const MultiPoly sigma = principal_symbol(P);
    auto vals = kernels::abs_scan_parallel(numeric(sigma), rep.grid.directions);
    const double scale = *std::max_element(vals.begin(), vals.end());
    // below this relative value a zero may sit within the covering radius
    const double cut = tol > 0 ? tol : sigma.lipschitz_bound() * rep.cover / scale;
    for (std::size_t i = 0; i < vals.size(); ++i) {
      rep.value[i] = std::max(rep.value[i], vals[i] / scale);
      if (!(vals[i] / scale < cut)) maybe_zero[i] = 0;
    }
  }
  for (std::size_t i = 0; i < rep.value.size(); ++i)
    if (maybe_zero[i]) rep.flagged.push_back(i);
  return rep;
}

SolvabilityReport check_solvable(const DiffOp& P, const ClosedConicSet& K, double mesh, double depth) {
  const int n = P.vars();
  if (static_cast<int>(K.dim()) != n) throw Error(Errc::domain_mismatch, "operator and support dimensions differ");
  if (!K.cone.is_proper()) throw Error(Errc::empty_hpc, "K is not contained in a proper half space");
  const double pi = std::numbers::pi;
  std::vector<Vector> gens;
  for (const Vector& g : K.cone.generators()) gens.push_back(normalized(g));
  auto keep = [&](const CVector& z) {
    for (const Vector& g : gens) {
      double re = 0.0;
      for (int k = 0; k < n; ++k) re += g[k] * z[k].real();
      if (re < depth) return false;
    }
    return true;
  };
  std::vector<CVector> dirs;
  double cover = 0.0;
  if (n == 1) {
    const int m = steps(2 * pi, mesh);
    for (int j = 0; j < m; ++j) {
      CVector z{std::polar(1.0, 2 * pi * j / m)};
      if (keep(z)) dirs.push_back(z);
    }
    cover = 0.5 * 2 * pi / m;
  } else if (n == 2) {
    const int ne = steps(pi / 2, mesh), nt = steps(2 * pi, mesh);
    for (int i = 0; i <= ne; ++i) {
      double eta = (pi / 2) * i / ne;
      for (int a = 0; a < nt; ++a)
        for (int b = 0; b < nt; ++b) {
          CVector z{std::cos(eta) * std::polar(1.0, 2 * pi * a / nt), std::sin(eta) * std::polar(1.0, 2 * pi * b / nt)};
          if (keep(z)) dirs.push_back(z);
        }
    }
    cover = 0.5 * std::sqrt((pi / 2 / ne) * (pi / 2 / ne) + 2 * (2 * pi / nt) * (2 * pi / nt));
  } else {
    throw Error(Errc::unsupported, "solvability scans implemented for n <= 2");
  }
  if (dirs.empty()) throw Error(Errc::empty_hpc, "no grid direction in HPC at the requested depth");
  const MultiPoly sigma = principal_symbol(P);
  SolvabilityReport rep;
  auto best = kernels::min_abs_parallel(numeric(sigma), dirs);
  rep.min_abs = best.value;
  rep.worst = dirs[best.index];
  rep.slack = sigma.lipschitz_bound() * cover;
  rep.depth = depth;
  rep.directions = dirs.size();
  rep.solvable = rep.min_abs > rep.slack;
  return rep;
}

// ------------------------------------------------------------------ Koszul complex

bool KoszulElement::is_zero() const {
  for (auto& [I, f] : parts)
    if (!f.is_zero()) return false;
  return true;
}

void KoszulElement::add(const std::vector<int>& index, const MultiPoly& f) {
  if (static_cast<int>(index.size()) != degree) throw Error(Errc::domain_mismatch, "index size differs from degree");
  if (f.is_zero()) return;
  auto it = parts.find(index);
  if (it == parts.end()) {
    parts.emplace(index, f);
    return;
  }
  it->second = it->second + f;
  if (it->second.is_zero()) parts.erase(it);
}

bool operator==(const KoszulElement& a, const KoszulElement& b) { return (a - b).is_zero(); }

KoszulElement operator-(const KoszulElement& a, const KoszulElement& b) {
  if (a.degree != b.degree || a.ell != b.ell) throw Error(Errc::domain_mismatch, "Koszul elements of different shape");
  KoszulElement r = a;
  for (auto& [I, f] : b.parts) r.add(I, CRational(-1) * f);
  return r;
}

KoszulElement koszul_d(const KoszulElement& e, const std::vector<MultiPoly>& P) {
  if (static_cast<int>(P.size()) != e.ell) throw Error(Errc::domain_mismatch, "need one polynomial per generator");
  if (e.degree >= e.ell) throw Error(Errc::degree_overflow, "d raises degree past the number of generators");
  KoszulElement out{e.degree + 1, e.ell, e.n, {}};
  for (auto& [I, f] : e.parts)
    for (int j = 0; j < e.ell; ++j) {
      if (std::find(I.begin(), I.end(), j) != I.end()) continue;
      // e_j ^ e_I = (-1)^{#{i in I : i < j}} e_{I + j}
      int before = static_cast<int>(std::count_if(I.begin(), I.end(), [j](int i) { return i < j; }));
      std::vector<int> J = I;
      J.insert(J.begin() + before, j);
      MultiPoly g = P[j] * f;
      out.add(J, before % 2 ? CRational(-1) * g : g);
    }
  return out;
}

KoszulElement koszul_s(const KoszulElement& e, const std::vector<MultiPoly>& a) {
  if (static_cast<int>(a.size()) != e.ell) throw Error(Errc::domain_mismatch, "need one coefficient per generator");
  if (e.degree == 0) return KoszulElement{0, e.ell, e.n, {}};
  KoszulElement out{e.degree - 1, e.ell, e.n, {}};
  for (auto& [J, f] : e.parts)
    for (std::size_t pos = 0; pos < J.size(); ++pos) {
      std::vector<int> I = J;
      I.erase(I.begin() + static_cast<long>(pos));
      MultiPoly g = a[J[pos]] * f;
      out.add(I, pos % 2 ? CRational(-1) * g : g);
    }
  return out;
}

HomotopyReport koszul_homotopy_check(const std::vector<MultiPoly>& P, const std::vector<MultiPoly>& a,
                                     const MultiPoly& h, const std::vector<KoszulElement>& elements) {
  if (P.size() != a.size()) throw Error(Errc::domain_mismatch, "need one coefficient per generator");
  MultiPoly sum(h.vars());
  for (std::size_t j = 0; j < P.size(); ++j) sum = sum + a[j] * P[j];
  if (!(sum == h)) throw Error(Errc::coefficient_mismatch, "sum a_j P_j differs from h");
  HomotopyReport rep;
  rep.anticommutator_exact = rep.commutator_exact = true;
  const int ell = static_cast<int>(P.size());
  for (const KoszulElement& e : elements) {
    KoszulElement he{e.degree, e.ell, e.n, {}};
    for (auto& [I, f] : e.parts) he.add(I, h * f);
    KoszulElement sd{e.degree, e.ell, e.n, {}}, ds{e.degree, e.ell, e.n, {}};
    if (e.degree < ell) sd = koszul_s(koszul_d(e, P), a);
    if (e.degree > 0) ds = koszul_d(koszul_s(e, a), P);
    KoszulElement anti = sd, comm = sd;
    for (auto& [I, f] : ds.parts) {
      anti.add(I, f);
      comm.add(I, CRational(-1) * f);
    }
    rep.anticommutator_exact = rep.anticommutator_exact && (anti - he).is_zero();
    rep.commutator_exact = rep.commutator_exact && (comm - he).is_zero();
    ++rep.elements;
  }
  return rep;
}

namespace {

std::vector<Exponent> monomials_up_to(int n, int d) {
  std::vector<Exponent> out;
  if (d < 0) return out;
  Exponent e(n, 0);
  // odometer over exponents with total <= d
  while (true) {
    out.push_back(e);
    int k = 0;
    while (k < n) {
      ++e[k];
      if (total(e) <= d) break;
      e[k] = 0;
      ++k;
    }
    if (k == n) break;
  }
  return out;
}

std::vector<std::vector<int>> subsets(int ell, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int start) -> void {
    if (static_cast<int>(cur.size()) == k) {
      out.push_back(cur);
      return;
    }
    for (int j = start; j < ell; ++j) {
      cur.push_back(j);
      self(self, j + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

// Exact rank by fraction-free pivoting over complex rationals.
int exact_rank(std::vector<std::vector<CRational>> m) {
  int rank = 0;
  const std::size_t rows = m.size();
  const std::size_t cols = rows ? m[0].size() : 0;
  for (std::size_t c = 0; c < cols && rank < static_cast<int>(rows); ++c) {
    std::size_t p = rank;
    while (p < rows && m[p][c].is_zero()) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[rank]);
    const CRational inv = CRational(1) / m[rank][c];
    for (std::size_t r = rank + 1; r < rows; ++r) {
      if (m[r][c].is_zero()) continue;
      const CRational f = m[r][c] * inv;
      for (std::size_t k = c; k < cols; ++k)
        if (!m[rank][k].is_zero()) m[r][k] = m[r][k] - f * m[rank][k];
    }
    ++rank;
  }
  return rank;
}

}  // namespace

RegularSequenceReport regular_sequence_check_bounded(const std::vector<MultiPoly>& P, int D) {
  if (P.empty()) throw Error(Errc::domain_error, "empty sequence");
  const int n = P[0].vars();
  const int ell = static_cast<int>(P.size());
  if (ell > n) throw Error(Errc::domain_error, "more generators than variables");
  std::vector<int> deg;
  int W = 0;
  for (auto& p : P) {
    if (p.is_zero()) throw Error(Errc::domain_error, "zero polynomial in the sequence");
    deg.push_back(p.degree());
    W += p.degree();
  }
  if (D < W) throw Error(Errc::cap_too_small, "degree cap below the sum of generator degrees");
  RegularSequenceReport rep;
  rep.cap = D;
  // filtration degree of f e_I is deg f + W - w(I); d does not raise it
  auto weight = [&](const std::vector<int>& I) {
    int w = 0;
    for (int i : I) w += deg[i];
    return w;
  };
  struct Basis {
    std::vector<std::pair<std::vector<int>, Exponent>> cols;
  };
  auto basis = [&](int k, int t) {
    Basis b;
    if (k < 0 || k > ell) return b;
    for (auto& I : subsets(ell, k))
      for (auto& m : monomials_up_to(n, t - W + weight(I))) b.cols.push_back({I, m});
    return b;
  };
  // matrix of d_k restricted to the filtration piece t, columns = basis(k, t)
  auto d_matrix = [&](int k, int t) {
    Basis src = basis(k, t), dst = basis(k + 1, t);
    std::map<std::pair<std::vector<int>, Exponent>, std::size_t> row;
    for (std::size_t i = 0; i < dst.cols.size(); ++i) row[dst.cols[i]] = i;
    std::vector<std::vector<CRational>> m(dst.cols.size(), std::vector<CRational>(src.cols.size()));
    for (std::size_t c = 0; c < src.cols.size(); ++c) {
      KoszulElement e{k, ell, n, {}};
      e.add(src.cols[c].first, MultiPoly::monomial(n, src.cols[c].second, CRational(1)));
      for (auto& [J, f] : koszul_d(e, P).parts)
        for (auto& [ex, v] : f.terms()) m.at(row.at({J, ex}))[c] = v;
    }
    return std::make_pair(m, src.cols.size());
  };
  for (int t = 0; t <= D; ++t)
    for (int k = 0; k < ell; ++k) {
      auto [dk, cols] = d_matrix(k, t);
      const int kernel = static_cast<int>(cols) - exact_rank(dk);
      int image = 0;
      if (k > 0) image = exact_rank(d_matrix(k - 1, t).first);
      if (kernel != image) {
        rep.failed_position = k;
        rep.failed_degree = t;
        return rep;
      }
    }
  rep.consistent = true;
  return rep;
}

// ------------------------------------------------------------------ operational calculus

std::vector<cplx> poly_roots(const MultiPoly& p) {
  if (p.vars() != 1) throw Error(Errc::unsupported, "roots of one variable polynomials only");
  const int m = p.degree();
  if (m < 0) throw Error(Errc::zero_operator, "roots of the zero polynomial");
  if (m == 0) return {};
  std::vector<cplx> c(m + 1);
  for (int k = 0; k <= m; ++k) c[k] = p.coefficient({k}).to_cplx();
  Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(m, m);
  for (int i = 1; i < m; ++i) comp(i, i - 1) = 1.0;
  for (int i = 0; i < m; ++i) comp(i, m - 1) = -c[i] / c[m];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
  std::vector<cplx> roots(es.eigenvalues().data(), es.eigenvalues().data() + m);
  std::sort(roots.begin(), roots.end(),
            [](cplx a, cplx b) { return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag(); });
  return roots;
}

SolveResult solve(const DiffOp& P, const Hyperfunction& f, const ClosedConicSet& K, const SolveOptions& opt) {
  if (P.vars() != f.n || static_cast<int>(K.dim()) != f.n)
    throw Error(Errc::domain_mismatch, "operator, right-hand side and cone differ in dimension");
  if (f.n != 1) {
    // the verdict is still reported for two variables; the division step is one variable only
    if (!check_solvable(P, K).solvable)
      throw Error(Errc::solvability_fail, "principal symbol may vanish on HPC{K}");
    throw Error(Errc::unsupported, "solve is implemented in one variable");
  }
  // the chain opens to the right, which only represents forward supports [a, inf)
  const auto& gens = K.cone.generators();
  if (gens.size() != 1 || gens[0][0] <= 0.0) throw Error(Errc::unsupported, "solve expects K = [a, inf)");
  for (double x : {f.support.vertex[0]})
    if (!K.contains({x}) && !f.terms.empty()) throw Error(Errc::support_leak, "supp f is not inside K");
  SolveResult res;
  res.solvability = check_solvable(P, K);
  if (!res.solvability.solvable)
    throw Error(Errc::solvability_fail, "principal symbol may vanish on HPC{K} (min " +
                                            std::to_string(res.solvability.min_abs) + ")");
  res.roots = poly_roots(P.p);
  double s_max = std::max(0.0, f.growth_type());
  for (cplx r : res.roots) s_max = std::max(s_max, r.real());
  const double psi0 = opt.psi0 != 0.0 ? opt.psi0 : s_max + opt.margin;
  Profile psi;
  psi.c1 = 1.0;
  psi.p = 0.5;
  psi.c0 = psi0 - psi.c1;
  res.chain = make_inverse_chain(1, psi);
  for (cplx r : res.roots) {
    if (chain_distance(res.chain, r) < opt.pole_gap)
      throw Error(Errc::pole_on_chain, "a zero of P lies on the inversion chain");
    // the chain must keep every zero on its left
    if (r.real() > res.chain.psi(std::abs(r.imag())))
      throw Error(Errc::pole_on_chain, "a zero of P lies right of the inversion chain");
  }
  TransformResult T = transform(f, opt.forward);
  auto self = std::make_shared<TransformResult>(T);
  const MultiPoly p = P.p;
  AnalyticFunction g = T.as_analytic();
  g.f = lambda_function(
      1, [self, p](const cplx* z) { return (*self)(*z) / p(z); }, "L(f)/P");
  res.u = inverse(g, K, res.chain, opt.inverse);
  auto bat = density_battery(1);
  auto lhs = pairing_batch(P.apply(res.u), bat);
  auto rhs = pairing_batch(f, bat);
  res.residual.resize(bat.size());
  for (std::size_t i = 0; i < bat.size(); ++i) {
    res.residual[i] = lhs[i] - rhs[i];
    res.max_residual = std::max(res.max_residual, std::abs(res.residual[i]));
  }
  return res;
}

}  // namespace hyperlap
