#include "hyperlap/kernels.hpp"

#include <omp.h>

#include <cmath>
#include <exception>
#include <limits>

namespace hyperlap::kernels {

cplx NumericPoly::operator()(const cplx* z) const {
  cplx s = 0.0;
  for (std::size_t t = 0; t < coeffs.size(); ++t) {
    cplx m = coeffs[t];
    for (int k = 0; k < n; ++k)
      for (int e = 0; e < exponents[t][k]; ++e) m *= z[k];
    s += m;
  }
  return s;
}

std::vector<double> abs_scan_serial(const NumericPoly& p, const std::vector<CVector>& dirs) {
  std::vector<double> out(dirs.size());
  for (std::size_t i = 0; i < dirs.size(); ++i) out[i] = std::abs(p(dirs[i].data()));
  return out;
}

std::vector<double> abs_scan_parallel(const NumericPoly& p, const std::vector<CVector>& dirs) {
  std::vector<double> out(dirs.size());
  const long m = static_cast<long>(dirs.size());
#pragma omp parallel for schedule(static)
  for (long i = 0; i < m; ++i) out[i] = std::abs(p(dirs[i].data()));
  return out;
}

MinAbs min_abs_serial(const NumericPoly& p, const std::vector<CVector>& dirs) {
  MinAbs best{std::numeric_limits<double>::infinity(), 0};
  for (std::size_t i = 0; i < dirs.size(); ++i) {
    double v = std::abs(p(dirs[i].data()));
    if (v < best.value) best = {v, i};
  }
  return best;
}

MinAbs min_abs_parallel(const NumericPoly& p, const std::vector<CVector>& dirs) {
  const long m = static_cast<long>(dirs.size());
  std::vector<MinAbs> local(static_cast<std::size_t>(omp_get_max_threads()),
                            MinAbs{std::numeric_limits<double>::infinity(), 0});
#pragma omp parallel
  {
    MinAbs& mine = local[static_cast<std::size_t>(omp_get_thread_num())];
    // static chunks are contiguous and ordered by thread id
#pragma omp for schedule(static)
    for (long i = 0; i < m; ++i) {
      double v = std::abs(p(dirs[i].data()));
      if (v < mine.value) mine = {v, static_cast<std::size_t>(i)};
    }
  }
  MinAbs best{std::numeric_limits<double>::infinity(), 0};
  for (const MinAbs& l : local)
    if (l.value < best.value) best = l;
  return best;
}

std::vector<cplx> exp_sum_serial(const std::vector<cplx>& c, const std::vector<cplx>& r, const std::vector<cplx>& z) {
  std::vector<cplx> out(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) {
    cplx s = 0.0;
    for (std::size_t k = 0; k < c.size(); ++k) s += c[k] * std::exp(r[k] * z[i]);
    out[i] = s;
  }
  return out;
}

std::vector<cplx> exp_sum_parallel(const std::vector<cplx>& c, const std::vector<cplx>& r,
                                   const std::vector<cplx>& z) {
  std::vector<cplx> out(z.size());
  const long m = static_cast<long>(z.size());
#pragma omp parallel for schedule(static)
  for (long i = 0; i < m; ++i) {
    cplx s = 0.0;
    for (std::size_t k = 0; k < c.size(); ++k) s += c[k] * std::exp(r[k] * z[i]);
    out[i] = s;
  }
  return out;
}

std::vector<cplx> forward_grid_serial(const Hyperfunction& u, const std::vector<CVector>& zetas,
                                      const ForwardOptions& opt) {
  std::vector<cplx> out(zetas.size());
  for (std::size_t i = 0; i < zetas.size(); ++i) out[i] = forward(u, zetas[i], opt);
  return out;
}

std::vector<cplx> forward_grid_parallel(const Hyperfunction& u, const std::vector<CVector>& zetas,
                                        const ForwardOptions& opt) {
  std::vector<cplx> out(zetas.size());
  const long m = static_cast<long>(zetas.size());
  std::exception_ptr failure;
  // the first failing index wins, matching the serial loop
  long failed_at = m;
#pragma omp parallel for schedule(dynamic, 1)
  for (long i = 0; i < m; ++i) {
    try {
      out[i] = forward(u, zetas[i], opt);
    } catch (...) {
#pragma omp critical
      if (i < failed_at) {
        failed_at = i;
        failure = std::current_exception();
      }
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

}  // namespace hyperlap::kernels
