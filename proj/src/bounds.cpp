#include "opdiff/bounds.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <sstream>

#include "opdiff/space.hpp"

namespace opdiff {

namespace {
constexpr int kBlaschkeTrunc = 256;
constexpr int kSupSamples = 4096;
}  // namespace

int vanishing_order(const TruncatedSeries& psi, cxd w, double threshold) {
  double scale = 0.0;
  for (const cxd& c : psi.coeffs()) scale = std::max(scale, std::abs(c));
  if (scale == 0.0) throw hypothesis_error("weight symbol is identically zero");
  for (int k = 0; k <= psi.trunc_degree(); ++k) {
    const double taylor = std::abs(derivative_at(psi, k, w)) / factorial(k);
    if (taylor > threshold * (1.0 + scale)) return k;
  }
  throw hypothesis_error("weight symbol is numerically zero at every order up to the truncation degree");
}

double lower_bound_norm(const OperatorSpec& spec, const FixedPointInfo& fp, double alpha) {
  spec.validate_shape();
  if (!spec.diff_only())
    throw hypothesis_error("norm lower bound applies to derivative-part-only operators");
  if (alpha != -1.0)
    throw hypothesis_error("norm lower bound is available on the alpha = -1 space only");
  const auto& d = *spec.diff;
  const int n = d.order;
  const int m = vanishing_order(d.psi, fp.w);

  TruncatedSeries modified = d.psi;
  if (m < n) {
    const int k = (m == 0) ? n : n - m;
    modified = multiply(d.psi, power(blaschke_series(fp.w, kBlaschkeTrunc), k, kBlaschkeTrunc),
                        kBlaschkeTrunc);
  }
  const double lead = std::abs(derivative_at(modified, n, fp.w));
  const double r = std::abs(fp.phi_prime);

  double bound = lead;  // phi'(w) = 0 case
  if (r > 0.0) bound = lead * argmax_l(n, r).value;

  if (r == 0.0 && n == 1) {
    // With psi''(w) = 0 the second kernel derivative is an eigenvector of the
    // adjoint with eigenvalue conj(psi(w) phi''(w)).
    const double psi2 = std::abs(derivative_at(d.psi, 2, fp.w));
    double scale = 0.0;
    for (const cxd& c : d.psi.coeffs()) scale = std::max(scale, std::abs(c));
    if (psi2 / 2.0 <= 1e-9 * (1.0 + scale)) {
      const cxd psi_w = d.psi.evaluate(fp.w);
      const cxd phi2 = fp.derivative(2);
      bound = std::max(bound, std::abs(psi_w * phi2));
    }
  }
  return bound;
}

double upper_bound_norm(const OperatorSpec& spec, double b, double alpha) {
  spec.validate_shape();
  if (!spec.diff_only())
    throw hypothesis_error("norm upper bound applies to derivative-part-only operators");
  if (alpha != -1.0)
    throw hypothesis_error("norm upper bound is available on the alpha = -1 space only");
  const auto& d = *spec.diff;
  const int n = d.order;
  if (b >= 1.0) throw domain_error("upper bound needs b < 1");

  const double sup_phi = sup_norm_estimate(d.phi, kSupSamples);
  if (b + 1e-12 < sup_phi) throw domain_error("upper bound needs b >= sup |phi|");
  const double phi0 = std::abs(d.phi.evaluate(cxd(0.0)));

  const bool psi_is_one = d.psi.effective_degree() == 0 && d.psi.coeff(0) == cxd(1.0);
  if (psi_is_one && phi0 <= 1e-15 && sup_phi <= 1.0 / static_cast<double>(n + 1) + 1e-12)
    return factorial(n);  // the bound is attained: the norm equals n! exactly

  if (b <= phi0) throw domain_error("upper bound needs b > |phi(0)|");
  const double sup_psi = sup_norm_estimate(d.psi, kSupSamples);
  const ArgmaxResult am = argmax_l(n, b);
  return factorial(n) * sup_psi * std::sqrt((b + phi0) / (b - phi0)) * am.value;
}

double exact_norm_bz(cxd b, int n) {
  if (n < 1) throw domain_error("derivative order must be a positive integer");
  const double r = std::abs(b);
  if (r <= 0.0 || r >= 1.0) throw domain_error("exact norm formula needs 0 < |b| < 1");
  return factorial(n) * argmax_l(n, r).value;
}

std::optional<cxd> monomial_weight_coefficient(const TruncatedSeries& psi, int n) {
  if (n > psi.trunc_degree()) return std::nullopt;
  const cxd a = psi.coeff(n);
  if (a == cxd(0.0)) return std::nullopt;
  for (int k = 0; k <= psi.trunc_degree(); ++k)
    if (k != n && std::abs(psi.coeff(k)) > 1e-14 * std::abs(a)) return std::nullopt;
  return a;
}

std::optional<cxd> linear_map_coefficient(const TruncatedSeries& phi) {
  const cxd b = phi.coeff(1);
  if (b == cxd(0.0) || std::abs(b) >= 1.0) return std::nullopt;
  for (int k = 0; k <= phi.trunc_degree(); ++k)
    if (k != 1 && std::abs(phi.coeff(k)) > 1e-14 * std::abs(b)) return std::nullopt;
  return b;
}

HyponormalityReport hyponormality_classify(const OperatorSpec& spec, const FixedPointInfo& fp,
                                           double alpha, int trunc) {
  spec.validate_shape();
  if (!spec.diff_only())
    throw hypothesis_error("hyponormality classification applies to derivative-part-only operators");
  const auto& d = *spec.diff;
  if (d.phi.is_constant())
    throw hypothesis_error("hyponormality classification requires a nonconstant self-map");
  if (vanishing_order(d.psi, fp.w) < d.order)
    throw hypothesis_error(
        "hyponormality classification requires the weight to vanish at the fixed point to order >= n");

  HyponormalityReport rep;
  const std::optional<cxd> a = monomial_weight_coefficient(d.psi, d.order);
  const std::optional<cxd> b = linear_map_coefficient(d.phi);
  rep.normal = a.has_value() && b.has_value() && std::abs(fp.w) <= 1e-12;
  if (rep.normal)
    rep.closed_norm = factorial(d.order) * std::abs(*a) * argmax_l(d.order, std::abs(*b)).value;

  const OperatorMatrix T = build_matrix(spec, alpha, trunc);
  rep.numeric_norm = operator_norm(T);
  rep.radius_closed = closed_form_spectrum(spec, fp, default_lmax(spec, fp)).radius_closed;

  const kernels::Matrix commutator = kernels::gram(T.entries) - kernels::cogram(T.entries);
  const Eigen::Index q = std::max<Eigen::Index>(1, (trunc + 1) / 4);
  Eigen::SelfAdjointEigenSolver<kernels::Matrix> es(commutator.topLeftCorner(q, q),
                                                    Eigen::EigenvaluesOnly);
  rep.min_commutator_eig = es.eigenvalues().minCoeff();
  rep.max_commutator_eig = es.eigenvalues().maxCoeff();
  rep.tol = 1e-8 * rep.numeric_norm * rep.numeric_norm;
  rep.commutator_nonnegative = rep.min_commutator_eig >= -rep.tol;

  std::ostringstream os;
  if (rep.normal) {
    os << "weight a z^n with linear self-map b z: diagonal matrix, normal";
  } else {
    os << "not of the a z^n / b z form";
    if (rep.radius_closed < rep.numeric_norm * (1.0 - 1e-6))
      os << "; spectral radius below the norm rules out hyponormality";
    if (!rep.commutator_nonnegative && rep.max_commutator_eig > rep.tol)
      os << "; commutator block indefinite";
  }
  rep.detail = os.str();
  return rep;
}

NormReport norm_report(const OperatorSpec& spec, double alpha, int trunc, double tol) {
  spec.validate_shape();
  NormReport rep;
  const OperatorMatrix M = build_matrix(spec, alpha, trunc);
  rep.numeric = operator_norm(M, tol);
  rep.method_tags.emplace_back("numeric", "power_iteration");

  if (spec.diff_only() && alpha == -1.0) {
    const auto& d = *spec.diff;
    const FixedPointInfo fp = find_fixed_point(d.phi);
    try {
      rep.lower = lower_bound_norm(spec, fp, alpha);
      rep.method_tags.emplace_back("lower", "adjoint_kernel_eigenvector");
    } catch (const hypothesis_error&) {
    }
    const double sup_phi = sup_norm_estimate(d.phi, kSupSamples);
    const double b = std::ceil(sup_phi * 1e6) / 1e6;
    const double phi0 = std::abs(d.phi.evaluate(cxd(0.0)));
    if (b < 1.0 && b > phi0) {
      rep.upper = upper_bound_norm(spec, b, alpha);
      rep.method_tags.emplace_back("upper", "sampled_sup_bound");
    }
    const bool psi_is_one = d.psi.effective_degree() == 0 && d.psi.coeff(0) == cxd(1.0);
    if (psi_is_one) {
      if (const std::optional<cxd> b_lin = linear_map_coefficient(d.phi)) {
        rep.exact = exact_norm_bz(*b_lin, d.order);
        rep.method_tags.emplace_back("exact", "linear_map_closed_form");
      } else if (phi0 <= 1e-15 && sup_phi <= 1.0 / static_cast<double>(d.order + 1) + 1e-12) {
        rep.exact = factorial(d.order);
        rep.method_tags.emplace_back("exact", "small_sup_norm_clause");
      }
    }
  } else if (!spec.has_diff() && spec.comp) {
    const bool psi_is_one =
        spec.comp->psi.effective_degree() == 0 && spec.comp->psi.coeff(0) == cxd(1.0);
    if (psi_is_one) {
      const auto [lo, hi] = composition_norm_bounds(spec.comp->phi.evaluate(cxd(0.0)), alpha);
      rep.lower = lo;
      rep.upper = hi;
      rep.method_tags.emplace_back("lower", "composition_bound");
      rep.method_tags.emplace_back("upper", "composition_bound");
    }
  }
  return rep;
}

}  // namespace opdiff
