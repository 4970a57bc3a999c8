#ifndef OPDIFF_SPECTRAL_HPP
#define OPDIFF_SPECTRAL_HPP

#include <utility>
#include <vector>

#include "opdiff/operator.hpp"

namespace opdiff {

struct EigenPair {
  cxd value;
  double residual = 0.0;  // ||M v - lambda v|| for the computed unit eigenvector
  bool flagged = false;   // residual exceeded the requested tolerance
};

/// Closed-form eigenvalue candidate tagged by the vanishing order l of the
/// eigenfunction at the fixed point; l = -1 tags the essential 0 of a compact
/// operator.
struct ClosedFormEigenvalue {
  long l = -1;
  cxd value;
};

struct SpectrumReport {
  std::vector<ClosedFormEigenvalue> closed_form;
  std::vector<EigenPair> numeric;
  double radius_closed = 0.0;
  long l_star = -1;  // index of the modulus maximizer among closed-form values
  double alpha = -1.0;
  int trunc_degree = 0;
  bool tie = false;          // discrete maximizer shared between l_star and l_star - 1
  bool conjugated = false;   // matrix was conjugated to move the fixed point to 0
};

/// All eigenvalues of the dense matrix with per-pair residuals, sorted by
/// descending modulus. Pairs whose residual exceeds tol * ||M||_F are flagged,
/// never dropped. Requires trunc_degree <= 2048.
std::vector<EigenPair> eigenvalues(const OperatorMatrix& M, double tol);

/// Largest singular value by power iteration on M^H M with deterministic
/// all-ones start. `tol` is the relative accuracy target; the iteration stops
/// once the extrapolated remaining error is safely below it. Throws
/// convergence_error (carrying the last iterate) after 1e5 iterations.
double operator_norm(const kernels::Matrix& M, double tol = 1e-10);
double operator_norm(const OperatorMatrix& M, double tol = 1e-10);

struct ArgmaxResult {
  long l_star = 0;
  double value = 0.0;
  bool tie = false;
};

/// Discrete maximizer of C(l, n) r^{l-n} over integers l >= n:
/// l* = floor(n / (1 - r)), with the convention r^0 = 1 when r = 0 and l = n.
/// Ties (n/(1-r) integral) report the floor and set `tie`.
ArgmaxResult argmax_l(int n, double r);

/// Eigenvalue candidate set of the compact sum at an interior common fixed
/// point w: {0} u {psi0(w) (phi0'(w))^l : l < n} u
/// {psi0(w) (phi0'(w))^l + C(l,n) psin^(n)(w) (phin'(w))^{l-n} : n <= l <= L_max},
/// each tagged by l. Derivative-part-only specs with a constant phi return
/// {0, psi^(n)(a)}. Requires psin to vanish at w to order >= n.
SpectrumReport closed_form_spectrum(const OperatorSpec& spec, const FixedPointInfo& fp, long L_max);

/// Default L_max: far enough past the modulus maximizer that the remaining
/// candidates decay below any tolerance in use.
long default_lmax(const OperatorSpec& spec, const FixedPointInfo& fp);

/// Spectral radius of a derivative-part-only operator whose weight vanishes at
/// w to order exactly n: |psi^(n)(w)| * C(l*, n) |phi'(w)|^{l*-n}, and
/// |psi^(n)(w)| itself when phi'(w) = 0. Returns (radius, l*).
std::pair<double, long> spectral_radius_closed(const OperatorSpec& spec, const FixedPointInfo& fp);

/// Two-sided norm bound for an unweighted composition operator in terms of
/// |phi(0)|: ((1/(1-|phi(0)|^2))^{(alpha+2)/2}, ((1+|phi(0)|)/(1-|phi(0)|))^{(alpha+2)/2}).
std::pair<double, double> composition_norm_bounds(cxd phi0_at_zero, double alpha);

/// Fixed point shared by every self-map in the spec (to 1e-9); throws
/// hypothesis_error when the parts disagree.
FixedPointInfo common_fixed_point(const OperatorSpec& spec);

}  // namespace opdiff

#endif
