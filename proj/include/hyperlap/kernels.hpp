#pragma once

// Hot loops in two flavours: a serial reference and an OpenMP version. Reductions run in a
// fixed order so both return identical results.

#include <cstddef>
#include <vector>

#include "hyperlap/hyperfunction.hpp"
#include "hyperlap/laplace.hpp"

namespace hyperlap::kernels {

// Flat double-precision copy of a polynomial for evaluation in scans.
struct NumericPoly {
  int n = 0;
  std::vector<std::vector<int>> exponents;
  std::vector<cplx> coeffs;

  cplx operator()(const cplx* z) const;
};

// |p| at each direction.
std::vector<double> abs_scan_serial(const NumericPoly& p, const std::vector<CVector>& dirs);
std::vector<double> abs_scan_parallel(const NumericPoly& p, const std::vector<CVector>& dirs);

struct MinAbs {
  double value = 0.0;
  std::size_t index = 0;  // smallest index on ties
};
MinAbs min_abs_serial(const NumericPoly& p, const std::vector<CVector>& dirs);
MinAbs min_abs_parallel(const NumericPoly& p, const std::vector<CVector>& dirs);

// sum_k c_k e^{r_k z} over a batch of z.
std::vector<cplx> exp_sum_serial(const std::vector<cplx>& c, const std::vector<cplx>& r, const std::vector<cplx>& z);
std::vector<cplx> exp_sum_parallel(const std::vector<cplx>& c, const std::vector<cplx>& r, const std::vector<cplx>& z);

// L(u) at each zeta, one independent contour evaluation per point.
std::vector<cplx> forward_grid_serial(const Hyperfunction& u, const std::vector<CVector>& zetas,
                                      const ForwardOptions& opt = {});
std::vector<cplx> forward_grid_parallel(const Hyperfunction& u, const std::vector<CVector>& zetas,
                                        const ForwardOptions& opt = {});

}  // namespace hyperlap::kernels
