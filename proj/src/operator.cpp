#include "opdiff/operator.hpp"

#include <cmath>

#include "opdiff/space.hpp"

namespace opdiff {

void OperatorSpec::validate_shape() const {
  if (!comp && !diff) throw spec_error("operator spec needs a composition part or a derivative part");
  if (diff && diff->order < 1) throw spec_error("derivative order n must be a positive integer");
}

cxd FixedPointInfo::derivative(int order) const {
  if (order < 1) throw domain_error("fixed-point derivative order must be >= 1");
  if (order == 1) return phi_prime;
  const size_t idx = static_cast<size_t>(order) - 2;
  if (idx >= higher_derivs.size()) return cxd(0.0);
  return higher_derivs[idx];
}

TruncatedSeries apply_to_monomial(const OperatorSpec& spec, int m, int trunc) {
  spec.validate_shape();
  if (m < 0) throw domain_error("monomial degree must be nonnegative");
  TruncatedSeries out;
  if (spec.comp) {
    out = multiply(spec.comp->psi, power(spec.comp->phi, m, trunc), trunc);
  }
  if (spec.diff && m >= spec.diff->order) {
    const int n = spec.diff->order;
    TruncatedSeries d = multiply(spec.diff->psi, power(spec.diff->phi, m - n, trunc), trunc);
    d = scale(d, cxd(falling_factorial(m, n)));
    out = spec.comp ? add(out, d) : std::move(d);
  }
  return out;
}

OperatorMatrix build_matrix(const OperatorSpec& spec, double alpha, int trunc) {
  spec.validate_shape();
  if (trunc < 0) throw domain_error("truncation degree must be nonnegative");
  if (spec.comp && !validate_self_map(spec.comp->phi).ok)
    throw hypothesis_error("composition symbol is not a strict self-map of the disk (sup |phi| must stay below 1)");
  if (spec.diff && !validate_self_map(spec.diff->phi).ok)
    throw hypothesis_error("derivative-part symbol is not a strict self-map of the disk (sup |phi| must stay below 1)");

  const int n = trunc + 1;
  const std::vector<double> w = basis_weights(trunc, alpha);
  std::vector<double> sqrt_w(w.size());
  for (size_t i = 0; i < w.size(); ++i) sqrt_w[i] = std::sqrt(w[i]);

  OperatorMatrix M;
  M.alpha = alpha;
  M.trunc_degree = trunc;
  M.spec = spec;
  M.entries.resize(n, n);
#pragma omp parallel for schedule(dynamic)
  for (int j = 0; j < n; ++j) {
    const TruncatedSeries col = apply_to_monomial(spec, j, trunc);
    for (int i = 0; i < n; ++i)
      M.entries(i, j) = col.coeff(i) * sqrt_w[static_cast<size_t>(i)] / sqrt_w[static_cast<size_t>(j)];
  }
  return M;
}

FixedPointInfo find_fixed_point(const TruncatedSeries& phi) {
  if (phi.tail_bound() > 0.0)
    throw truncation_error("fixed-point search requires an exact polynomial self-map");
  constexpr long kMaxIter = 1000000;
  constexpr double kTol = 1e-14;
  cxd z(0.0);
  bool converged = false;
  for (long it = 0; it < kMaxIter; ++it) {
    const cxd next = phi.evaluate(z);
    if (std::abs(next) >= 1.0)
      throw convergence_error("iteration left the closed unit disk; no interior fixed point", std::abs(next));
    if (std::abs(next - z) < kTol) {
      z = next;
      converged = true;
      break;
    }
    z = next;
  }
  if (!converged)
    throw convergence_error("self-map iteration did not reach an interior fixed point", std::abs(z));

  FixedPointInfo fp;
  fp.w = z;
  fp.phi_prime = derivative_at(phi, 1, z);
  if (std::abs(fp.phi_prime) >= 1.0)
    throw hypothesis_error("fixed point is not attracting: |phi'(w)| must be < 1");
  const int deg = phi.effective_degree();
  for (int k = 2; k <= deg; ++k) fp.higher_derivs.push_back(derivative_at(phi, k, z));
  return fp;
}

SelfMapReport validate_self_map(const TruncatedSeries& phi, double margin) {
  SelfMapReport r;
  r.margin = margin;
  r.sup_estimate = sup_norm_estimate(phi, 4096);
  r.ok = r.sup_estimate <= 1.0 - margin;
  return r;
}

}  // namespace opdiff
