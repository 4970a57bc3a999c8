#ifndef OPDIFF_SPACE_HPP
#define OPDIFF_SPACE_HPP

#include <vector>

#include "opdiff/series.hpp"

namespace opdiff {

/// Weight parameter of the analytic function space: alpha = -1 selects the
/// square-summable-coefficient space on the disk, alpha > -1 the weighted
/// area-integral spaces. Monomials are orthogonal in all of them with
/// ||z^m||^2 = basis_weight(m, alpha).
struct SpaceParams {
  double alpha = -1.0;
};

/// ||z^m||^2, computed by the recurrence w_0 = 1, w_m = w_{m-1} * m/(m+alpha+1)
/// (exact in rationals, no factorial overflow).
double basis_weight(int m, double alpha);

/// Weights w_0..w_max as a vector (same recurrence, one pass).
std::vector<double> basis_weights(int max_degree, double alpha);

/// sum_k f_k conj(g_k) w_k(alpha) over the common coefficient range.
cxd inner_product(const TruncatedSeries& f, const TruncatedSeries& g, double alpha);

/// Truncated expansion of the kernel whose inner product against f evaluates
/// the n-th derivative at w: coefficient k is k!/(k-n)! conj(w)^{k-n} / w_k.
struct KernelSeries {
  cxd w;
  int order = 0;
  double alpha = -1.0;
  TruncatedSeries series;
};

KernelSeries kernel_series(cxd w, int n, double alpha, int trunc);

}  // namespace opdiff

#endif
