#include "opdiff/space.hpp"

#include <algorithm>
#include <cmath>

namespace opdiff {

double basis_weight(int m, double alpha) {
  if (m < 0) throw domain_error("basis degree must be nonnegative");
  if (alpha < -1.0) throw domain_error("space parameter must satisfy alpha >= -1");
  double w = 1.0;
  for (int k = 1; k <= m; ++k) w *= static_cast<double>(k) / (static_cast<double>(k) + alpha + 1.0);
  return w;
}

std::vector<double> basis_weights(int max_degree, double alpha) {
  if (max_degree < 0) throw domain_error("basis degree must be nonnegative");
  if (alpha < -1.0) throw domain_error("space parameter must satisfy alpha >= -1");
  std::vector<double> w(static_cast<size_t>(max_degree) + 1);
  w[0] = 1.0;
  for (int k = 1; k <= max_degree; ++k)
    w[static_cast<size_t>(k)] =
        w[static_cast<size_t>(k) - 1] * static_cast<double>(k) / (static_cast<double>(k) + alpha + 1.0);
  return w;
}

cxd inner_product(const TruncatedSeries& f, const TruncatedSeries& g, double alpha) {
  const int d = std::min(f.trunc_degree(), g.trunc_degree());
  const std::vector<double> w = basis_weights(d, alpha);
  cxd acc(0.0);
  for (int k = 0; k <= d; ++k) acc += f.coeff(k) * std::conj(g.coeff(k)) * w[static_cast<size_t>(k)];
  return acc;
}

KernelSeries kernel_series(cxd w, int n, double alpha, int trunc) {
  const double r = std::abs(w);
  if (r >= 1.0) throw domain_error("kernel base point must satisfy |w| < 1");
  if (n < 0) throw domain_error("kernel derivative order must be nonnegative");
  if (trunc < n) throw truncation_error("kernel truncation degree below derivative order");
  const std::vector<double> weights = basis_weights(trunc, alpha);

  std::vector<cxd> v(static_cast<size_t>(trunc) + 1, cxd(0.0));
  cxd wbar_pow(1.0);  // conj(w)^{k-n}, running
  for (int k = n; k <= trunc; ++k) {
    v[static_cast<size_t>(k)] = falling_factorial(k, n) * wbar_pow / weights[static_cast<size_t>(k)];
    wbar_pow *= std::conj(w);
  }

  double tail = 0.0;
  if (r > 0.0) {
    // |c_{k+1}/c_k| = r (k+alpha+2)/(k+1-n), decreasing in k; geometric bound
    // from the last stored coefficient.
    const double q = r * (static_cast<double>(trunc) + alpha + 2.0) /
                     (static_cast<double>(trunc) + 1.0 - static_cast<double>(n));
    if (q >= 1.0)
      throw truncation_error("kernel truncation degree too small for this base point");
    tail = std::abs(v[static_cast<size_t>(trunc)]) * q / (1.0 - q);
  }
  KernelSeries ks;
  ks.w = w;
  ks.order = n;
  ks.alpha = alpha;
  ks.series = TruncatedSeries(std::move(v), tail);
  return ks;
}

}  // namespace opdiff
