#include "opdiff/series.hpp"

#include <algorithm>
#include <cmath>

namespace opdiff {

TruncatedSeries::TruncatedSeries(std::vector<cxd> coeffs, double tail_bound)
    : coeffs_(std::move(coeffs)), tail_bound_(tail_bound) {
  if (coeffs_.empty()) coeffs_.assign(1, cxd(0.0));
  if (tail_bound_ < 0.0) throw domain_error("tail bound must be nonnegative");
}

TruncatedSeries TruncatedSeries::monomial(int k, cxd c) {
  if (k < 0) throw domain_error("monomial degree must be nonnegative");
  std::vector<cxd> v(static_cast<size_t>(k) + 1, cxd(0.0));
  v.back() = c;
  return TruncatedSeries(std::move(v));
}

cxd TruncatedSeries::coeff(int k) const {
  if (k < 0 || k > trunc_degree()) return cxd(0.0);
  return coeffs_[static_cast<size_t>(k)];
}

int TruncatedSeries::effective_degree() const {
  for (int k = trunc_degree(); k > 0; --k)
    if (coeffs_[static_cast<size_t>(k)] != cxd(0.0)) return k;
  return 0;
}

bool TruncatedSeries::is_zero() const {
  for (const cxd& c : coeffs_)
    if (c != cxd(0.0)) return false;
  return true;
}

cxd TruncatedSeries::evaluate(cxd z) const {
  cxd acc(0.0);
  for (int k = trunc_degree(); k >= 0; --k) acc = acc * z + coeffs_[static_cast<size_t>(k)];
  return acc;
}

double TruncatedSeries::coeff_l1() const {
  double s = 0.0;
  for (const cxd& c : coeffs_) s += std::abs(c);
  return s;
}

TruncatedSeries TruncatedSeries::resized(int n) const {
  if (n < 0) throw domain_error("resize degree must be nonnegative");
  std::vector<cxd> v(coeffs_);
  for (int k = trunc_degree(); k > n; --k) {
    if (v[static_cast<size_t>(k)] != cxd(0.0))
      throw truncation_error("resize would drop a nonzero coefficient");
    v.pop_back();
  }
  v.resize(static_cast<size_t>(n) + 1, cxd(0.0));
  return TruncatedSeries(std::move(v), tail_bound_);
}

TruncatedSeries add(const TruncatedSeries& f, const TruncatedSeries& g) {
  std::vector<cxd> v(static_cast<size_t>(std::max(f.trunc_degree(), g.trunc_degree())) + 1,
                     cxd(0.0));
  for (size_t k = 0; k < v.size(); ++k) v[k] = f.coeff(static_cast<int>(k)) + g.coeff(static_cast<int>(k));
  return TruncatedSeries(std::move(v), f.tail_bound() + g.tail_bound());
}

TruncatedSeries scale(const TruncatedSeries& f, cxd c) {
  std::vector<cxd> v(f.coeffs());
  for (cxd& x : v) x *= c;
  return TruncatedSeries(std::move(v), f.tail_bound() * std::abs(c));
}

TruncatedSeries multiply(const TruncatedSeries& f, const TruncatedSeries& g, int trunc) {
  if (trunc < 0) throw domain_error("truncation degree must be nonnegative");
  const int df = f.trunc_degree(), dg = g.trunc_degree();
  const int dr = std::min(df + dg, trunc);
  std::vector<cxd> v(static_cast<size_t>(dr) + 1, cxd(0.0));
  double discarded = 0.0;
  for (int i = 0; i <= df; ++i) {
    const cxd fi = f.coeff(i);
    if (fi == cxd(0.0)) continue;
    for (int j = 0; j <= dg; ++j) {
      const cxd t = fi * g.coeff(j);
      if (i + j <= trunc)
        v[static_cast<size_t>(i + j)] += t;
      else
        discarded += std::abs(t);
    }
  }
  // Operand tails interact with the other factor's circle sup (bounded by the
  // coefficient l1 norm) and with each other.
  const double tail = f.tail_bound() * g.coeff_l1() + g.tail_bound() * f.coeff_l1() +
                      f.tail_bound() * g.tail_bound() + discarded;
  return TruncatedSeries(std::move(v), tail);
}

TruncatedSeries power(const TruncatedSeries& f, int k, int trunc) {
  if (k < 0) throw domain_error("power exponent must be nonnegative");
  TruncatedSeries acc = TruncatedSeries::constant(cxd(1.0));
  for (int i = 0; i < k; ++i) acc = multiply(acc, f, trunc);
  return acc;
}

cxd derivative_at(const TruncatedSeries& f, int order, cxd w) {
  if (order < 0) throw domain_error("derivative order must be nonnegative");
  if (order > f.trunc_degree()) {
    if (f.tail_bound() > 0.0)
      throw truncation_error("derivative order exceeds truncation degree of an inexact series");
    return cxd(0.0);
  }
  // sum_{k>=order} c_k * k!/(k-order)! * w^{k-order}, Horner in w.
  cxd acc(0.0);
  for (int k = f.trunc_degree(); k >= order; --k)
    acc = acc * w + f.coeff(k) * falling_factorial(k, order);
  return acc;
}

TruncatedSeries derivative_series(const TruncatedSeries& f, int order) {
  if (order < 0) throw domain_error("derivative order must be nonnegative");
  if (f.tail_bound() > 0.0)
    throw truncation_error("derivative_series requires an exact polynomial");
  const int d = f.trunc_degree();
  if (order > d) return TruncatedSeries();
  std::vector<cxd> v(static_cast<size_t>(d - order) + 1);
  for (int k = order; k <= d; ++k)
    v[static_cast<size_t>(k - order)] = f.coeff(k) * falling_factorial(k, order);
  return TruncatedSeries(std::move(v));
}

TruncatedSeries compose(const TruncatedSeries& f, const TruncatedSeries& g, int trunc) {
  if (f.tail_bound() > 0.0 || g.tail_bound() > 0.0)
    throw truncation_error("compose requires exact polynomial inputs");
  TruncatedSeries acc = TruncatedSeries::constant(f.coeff(f.trunc_degree()));
  for (int k = f.trunc_degree() - 1; k >= 0; --k) {
    acc = multiply(acc, g, trunc);
    acc = add(acc, TruncatedSeries::constant(f.coeff(k)));
  }
  return acc;
}

TruncatedSeries blaschke_series(cxd w, int trunc) {
  const double r = std::abs(w);
  if (r >= 1.0) throw domain_error("blaschke_series requires |w| < 1");
  if (trunc < 1) throw domain_error("blaschke_series needs truncation degree >= 1");
  if (w == cxd(0.0)) {
    // (0 - z)/(1 - 0) = -z, exact.
    return TruncatedSeries({cxd(0.0), cxd(-1.0)});
  }
  std::vector<cxd> v(static_cast<size_t>(trunc) + 1);
  v[0] = w;
  const double head = 1.0 - r * r;
  cxd wbar_pow(1.0);
  for (int k = 1; k <= trunc; ++k) {
    v[static_cast<size_t>(k)] = -head * wbar_pow;
    wbar_pow *= std::conj(w);
  }
  const double tail = (1.0 + r) * std::pow(r, trunc);
  return TruncatedSeries(std::move(v), tail);
}

double sup_norm_estimate(const TruncatedSeries& f, int samples) {
  if (samples < 64) throw domain_error("sup_norm_estimate needs at least 64 circle samples");
  double best = 0.0;
  constexpr double two_pi = 6.283185307179586476925286766559;
#pragma omp parallel for reduction(max : best) schedule(static)
  for (int s = 0; s < samples; ++s) {
    const double theta = two_pi * static_cast<double>(s) / static_cast<double>(samples);
    const double v = std::abs(f.evaluate(std::polar(1.0, theta)));
    if (v > best) best = v;
  }
  return best + f.tail_bound();
}

BellTable bell_coefficients(std::span<const cxd> phi_derivs, int j) {
  if (j < 0) throw domain_error("bell order must be nonnegative");
  BellTable table;
  table.order = j;
  if (j == 0) return table;
  if (static_cast<int>(phi_derivs.size()) < j)
    throw domain_error("bell_coefficients needs derivative values up to order j");
  // B[m][k], 0 <= k <= m <= j, built by the standard recurrence
  //   B_{m,k} = sum_i C(m-1, i-1) x_i B_{m-i, k-1}.
  std::vector<std::vector<cxd>> B(static_cast<size_t>(j) + 1);
  for (int m = 0; m <= j; ++m) B[static_cast<size_t>(m)].assign(static_cast<size_t>(m) + 1, cxd(0.0));
  B[0][0] = cxd(1.0);
  for (int m = 1; m <= j; ++m) {
    for (int k = 1; k <= m; ++k) {
      cxd acc(0.0);
      for (int i = 1; i <= m - k + 1; ++i)
        acc += binomial(m - 1, i - 1) * phi_derivs[static_cast<size_t>(i) - 1] *
               B[static_cast<size_t>(m - i)][static_cast<size_t>(k - 1)];
      B[static_cast<size_t>(m)][static_cast<size_t>(k)] = acc;
    }
  }
  table.entries.assign(B[static_cast<size_t>(j)].begin() + 1, B[static_cast<size_t>(j)].end());
  return table;
}

double falling_factorial(int k, int n) {
  double p = 1.0;
  for (int i = 0; i < n; ++i) p *= static_cast<double>(k - i);
  return p;
}

double binomial(long l, int n) {
  if (n < 0 || l < n) return 0.0;
  double p = 1.0;
  for (int i = 1; i <= n; ++i) p = p * static_cast<double>(l - n + i) / static_cast<double>(i);
  return p;
}

double factorial(int n) {
  double p = 1.0;
  for (int i = 2; i <= n; ++i) p *= static_cast<double>(i);
  return p;
}

}  // namespace opdiff
