#ifndef OPDIFF_BOUNDS_HPP
#define OPDIFF_BOUNDS_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "opdiff/spectral.hpp"

namespace opdiff {

/// Smallest k with |psi^(k)(w)|/k! above threshold * (1 + max |coefficient|).
/// Throws hypothesis_error when every derivative up to the truncation degree
/// is below threshold (identically-zero weight).
int vanishing_order(const TruncatedSeries& psi, cxd w, double threshold = 1e-9);

/// Norm lower bound for a derivative-part-only operator on the alpha = -1
/// space, built from the modified weight psi * B_w^k (B_w the disk-automorphism
/// factor, k chosen from the vanishing order of psi at w).
double lower_bound_norm(const OperatorSpec& spec, const FixedPointInfo& fp, double alpha = -1.0);

/// Norm upper bound n! ||psi||_inf sqrt((b+|phi(0)|)/(b-|phi(0)|)) C(l*,n) b^{l*-n}
/// for any b with ||phi||_inf <= b < 1, alpha = -1 only. Returns exactly n!
/// when psi == 1, phi(0) = 0 and ||phi||_inf <= 1/(n+1). The sup norms come
/// from circle sampling, so the bound is certified only for symbols whose
/// maximum is attained at a sample point.
double upper_bound_norm(const OperatorSpec& spec, double b, double alpha = -1.0);

/// Exact norm of f |-> f^(n) o (b z) on the alpha = -1 space:
/// n! C(floor(n/(1-|b|)), n) |b|^{floor(n/(1-|b|)) - n}, for 0 < |b| < 1.
double exact_norm_bz(cxd b, int n);

/// Structural classification: the operator is hyponormal or cohyponormal
/// (indeed normal) exactly when psi = a z^n and phi = b z, in which case the
/// norm equals n! |a| C(floor(n/(1-|b|)), n) |b|^{...}. Numeric evidence comes
/// from the leading quarter block of T^H T - T T^H.
struct HyponormalityReport {
  bool normal = false;                   // structural verdict
  std::optional<double> closed_norm;     // present for the normal case
  double numeric_norm = 0.0;
  double radius_closed = 0.0;
  double min_commutator_eig = 0.0;
  double max_commutator_eig = 0.0;
  double tol = 0.0;                      // 1e-8 * ||T||^2
  bool commutator_nonnegative = false;   // min eig >= -tol on the tested block
  std::string detail;
};

HyponormalityReport hyponormality_classify(const OperatorSpec& spec, const FixedPointInfo& fp,
                                           double alpha, int trunc);

/// Aggregated norm information for one operator: closed-form exact value where
/// one exists, lower/upper bounds where the theory provides them, and the
/// numeric truncated-matrix norm. Tags record where each number came from.
struct NormReport {
  std::optional<double> lower;
  std::optional<double> upper;
  std::optional<double> exact;
  double numeric = 0.0;
  std::vector<std::pair<std::string, std::string>> method_tags;
};

NormReport norm_report(const OperatorSpec& spec, double alpha, int trunc, double tol);

/// Detects psi = a z^n (a != 0): returns a.
std::optional<cxd> monomial_weight_coefficient(const TruncatedSeries& psi, int n);
/// Detects phi = b z (0 < |b| < 1): returns b.
std::optional<cxd> linear_map_coefficient(const TruncatedSeries& phi);

}  // namespace opdiff

#endif
