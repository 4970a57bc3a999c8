#ifndef OPDIFF_SERIES_HPP
#define OPDIFF_SERIES_HPP

#include <span>
#include <vector>

#include "opdiff/types.hpp"

namespace opdiff {

/// Truncated complex power series c_0 + c_1 z + ... + c_N z^N together with an
/// l1 bound on everything that was discarded beyond degree N.
///
/// tail_bound() == 0 means the object is exactly the stored polynomial on all
/// of the complex plane; a positive tail bound certifies
/// |true value - stored polynomial| <= tail_bound on the closed unit disk.
class TruncatedSeries {
 public:
  TruncatedSeries() : coeffs_(1, cxd(0.0)), tail_bound_(0.0) {}
  explicit TruncatedSeries(std::vector<cxd> coeffs, double tail_bound = 0.0);

  static TruncatedSeries constant(cxd c) { return TruncatedSeries({c}); }
  /// c * z^k
  static TruncatedSeries monomial(int k, cxd c = cxd(1.0));

  int trunc_degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  double tail_bound() const { return tail_bound_; }
  const std::vector<cxd>& coeffs() const { return coeffs_; }
  cxd coeff(int k) const;  // 0 beyond the truncation degree

  /// Highest k with c_k != 0 (0 for the zero polynomial).
  int effective_degree() const;
  bool is_zero() const;
  bool is_constant() const { return effective_degree() == 0; }

  cxd evaluate(cxd z) const;  // Horner
  double coeff_l1() const;    // sum_k |c_k|, an upper bound for sup_{|z|<=1}|poly|

  /// Copy with the coefficient vector resized to degree `n` (padding with 0 or
  /// dropping exact-zero high coefficients only).
  TruncatedSeries resized(int n) const;

 private:
  std::vector<cxd> coeffs_;
  double tail_bound_;
};

TruncatedSeries add(const TruncatedSeries& f, const TruncatedSeries& g);
TruncatedSeries scale(const TruncatedSeries& f, cxd c);

/// Cauchy product truncated at degree `trunc`. Discarded coefficients and the
/// operands' own tails are folded into the result's tail bound.
TruncatedSeries multiply(const TruncatedSeries& f, const TruncatedSeries& g, int trunc);

/// f^k by repeated truncated multiplication; k = 0 gives the constant 1.
TruncatedSeries power(const TruncatedSeries& f, int k, int trunc);

/// f^(order)(w), exact for polynomials. Throws truncation_error when the order
/// exceeds the truncation degree of a series with a nonzero tail.
cxd derivative_at(const TruncatedSeries& f, int order, cxd w);

/// Coefficient series of f^(order). Requires an exact polynomial input.
TruncatedSeries derivative_series(const TruncatedSeries& f, int order);

/// f(g(z)) truncated at `trunc`; both inputs must be exact polynomials.
TruncatedSeries compose(const TruncatedSeries& f, const TruncatedSeries& g, int trunc);

/// Expansion of the disk automorphism factor (w - z)/(1 - conj(w) z):
/// c_0 = w, c_k = -(1-|w|^2) conj(w)^{k-1}. Tail bound (1+|w|)|w|^N.
TruncatedSeries blaschke_series(cxd w, int trunc);

/// max |f| over `samples` equispaced points of the unit circle, plus the tail
/// bound. A lower estimate of the true sup norm (sampling may miss the
/// maximizer), exact for symbols whose maximum is attained at a sample point.
double sup_norm_estimate(const TruncatedSeries& f, int samples);

/// Partial Bell coefficients B_{j,k} of a composition derivative:
/// (f o phi)^(j)(w) = sum_k f^(k)(phi(w)) B_{j,k}(phi'(w), phi''(w), ...).
struct BellTable {
  int order = 0;               // j
  std::vector<cxd> entries;    // entries[k-1] = B_{j,k}, 1 <= k <= j
  cxd at(int k) const { return entries.at(static_cast<size_t>(k) - 1); }
};

/// All B_{j,k} for 1 <= k <= j from the derivative values phi_derivs[i] = phi^(i+1)(w).
/// j = 0 returns an empty table (the j = 0 term is f(phi(w)) itself).
BellTable bell_coefficients(std::span<const cxd> phi_derivs, int j);

// Small numeric helpers shared across modules.
double falling_factorial(int k, int n);  // k(k-1)...(k-n+1), 1 for n = 0
double binomial(long l, int n);          // C(l, n) as double
double factorial(int n);

}  // namespace opdiff

#endif
