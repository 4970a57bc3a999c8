#ifndef OPDIFF_OPERATOR_HPP
#define OPDIFF_OPERATOR_HPP

#include <optional>
#include <vector>

#include "opdiff/kernels.hpp"
#include "opdiff/series.hpp"

namespace opdiff {

/// Data of the operator f |-> psi0 (f o phi0) + psin (f^(n) o phin).
/// Either part may be absent, not both.
struct OperatorSpec {
  struct CompPart {
    TruncatedSeries psi;  // multiplier
    TruncatedSeries phi;  // self-map of the disk
  };
  struct DiffPart {
    TruncatedSeries psi;
    TruncatedSeries phi;
    int order = 1;  // n >= 1
  };

  std::optional<CompPart> comp;
  std::optional<DiffPart> diff;

  bool has_comp() const { return comp.has_value(); }
  bool has_diff() const { return diff.has_value(); }
  bool diff_only() const { return diff.has_value() && !comp.has_value(); }
  void validate_shape() const;  // at least one part, diff order >= 1
};

/// Interior fixed point of a validated self-map, with the derivative data the
/// closed-form results consume.
struct FixedPointInfo {
  cxd w;
  cxd phi_prime;
  std::vector<cxd> higher_derivs;  // higher_derivs[k] = phi^(k+2)(w)

  cxd derivative(int order) const;  // phi^(order)(w), order >= 1
};

struct SelfMapReport {
  bool ok = false;
  double sup_estimate = 0.0;
  double margin = 0.0;
};

/// Matrix of the operator in the orthonormal basis e_m = z^m/||z^m||,
/// degrees 0..trunc_degree (so the matrix is (N+1) x (N+1)).
struct OperatorMatrix {
  kernels::Matrix entries;
  double alpha = -1.0;
  int trunc_degree = 0;
  OperatorSpec spec;
};

/// Image of z^m: psi0 phi0^m + m!/(m-n)! psin phin^{m-n} (zero contribution
/// from the derivative part when m < n), truncated at degree `trunc`.
TruncatedSeries apply_to_monomial(const OperatorSpec& spec, int m, int trunc);

/// Columns are apply_to_monomial images rescaled by sqrt(w_i/w_j); rejects
/// specs whose self-maps fail validation. Columns are built in parallel.
OperatorMatrix build_matrix(const OperatorSpec& spec, double alpha, int trunc);

/// Forward iteration z <- phi(z) from 0 to the attracting interior fixed
/// point. Throws convergence_error when no interior fixed point is reached.
FixedPointInfo find_fixed_point(const TruncatedSeries& phi);

/// Certifies sup |phi| <= 1 - margin on the disk via circle sampling plus the
/// tail bound (4096 samples). Default margin 1e-6.
SelfMapReport validate_self_map(const TruncatedSeries& phi, double margin = 1e-6);

}  // namespace opdiff

#endif
