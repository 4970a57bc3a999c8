#ifndef OPDIFF_VERIFY_HPP
#define OPDIFF_VERIFY_HPP

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "opdiff/bounds.hpp"

namespace opdiff {

/// One verification outcome. `pass` holds exactly when residual <= tolerance;
/// checks that combine several sub-tolerances report the residual normalized
/// against them (tolerance 1.0) and record the raw numbers in `note`.
struct VerificationReport {
  std::string case_id;
  std::string theorem;  // which closed-form result is exercised
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  double runtime_sec = 0.0;
  std::string note;
};

/// Coefficients of the adjoint image of a kernel derivative vector:
/// T^H K^[m]_w = sum_j conj(c_j) K^[j]_w.
struct AdjointExpansion {
  int m = 0;
  std::vector<cxd> coefficients;       // c_j from the kernel-span least squares
  std::vector<cxd> coefficients_bell;  // c_j from the Leibniz/Bell route
  cxd leading_predicted;               // case formula for c_m
  double span_residual = 0.0;          // relative norm of the unexplained component
  double leading_error = 0.0;          // |c_m - leading_predicted|
  double bell_error = 0.0;             // max_j |c_j - c_j_bell| / (1 + |c_j|)
  bool gram_warning = false;           // kernel Gram nearly singular (|w| close to 1)
};

/// Expands T^H K^[m]_w over {K^[0]_w .. K^[m]_w} two independent ways (matrix
/// least squares and symbolic Leibniz/Bell) and checks the leading-coefficient
/// case formula. Requires the derivative-part weight to vanish at w to order
/// >= n and w to be the common fixed point.
std::pair<VerificationReport, AdjointExpansion> check_adjoint_expansion(
    const OperatorSpec& spec, cxd w, int m, double alpha, int trunc);

/// Numeric spectrum of the truncated matrix vs the closed-form candidate set,
/// matched both ways on the top_k largest moduli. A nonzero fixed point is
/// moved to 0 by conjugating with the self-inverse kernel unitary first
/// (flagged in the report note as experimental).
VerificationReport check_spectrum_match(const OperatorSpec& spec, double alpha, int trunc,
                                        int top_k);

/// Squaring the first-derivative composition operator equals the second-order
/// operator with symbols (phi' o phi, phi o phi): compares the matrices on the
/// columns the truncation keeps exact.
VerificationReport check_factorization(const TruncatedSeries& phi, double alpha, int trunc);

/// Truncated norms are nondecreasing in N; when the closed-form norm applies,
/// the largest-N value matches it to 1e-6.
VerificationReport check_norm_convergence(const OperatorSpec& spec, double alpha,
                                          const std::vector<int>& N_grid);

/// Sweeps the kernel reproducing property <f, K^[n]_w> = f^(n)(w) over random
/// polynomials, base points, orders and the given alpha values.
VerificationReport check_reproducing(const std::vector<double>& alphas, int trunc);

/// Matrix of the self-inverse unitary built from the normalized kernel and the
/// disk automorphism exchanging w and 0, in the orthonormal basis.
kernels::Matrix fixed_point_conjugation_matrix(cxd w, double alpha, int trunc);

/// A named, runnable verification case.
struct VerificationCase {
  std::string id;
  std::function<VerificationReport()> run;
};

/// The built-in suite: adjoint-expansion corpus, spectrum matches,
/// factorization, norm limits, reproducing sweep.
std::vector<VerificationCase> default_suite();

/// Runs cases in parallel; reports come back in case order.
std::vector<VerificationReport> run_suite(const std::vector<VerificationCase>& cases);

}  // namespace opdiff

#endif
