#include "opdiff/spectral.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "opdiff/bounds.hpp"

namespace opdiff {

std::vector<EigenPair> eigenvalues(const OperatorMatrix& M, double tol) {
  if (M.trunc_degree > 2048) throw domain_error("dense eigensolve limited to truncation degree 2048");
  Eigen::ComplexEigenSolver<kernels::Matrix> solver(M.entries, /*computeEigenvectors=*/true);
  if (solver.info() != Eigen::Success)
    throw convergence_error("dense eigensolver did not converge", 0.0);

  const double scale = M.entries.norm();  // Frobenius, >= spectral norm
  const Eigen::Index n = M.entries.rows();
  std::vector<EigenPair> out(static_cast<size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    const cxd lambda = solver.eigenvalues()(i);
    const kernels::Vector v = solver.eigenvectors().col(i);
    EigenPair p;
    p.value = lambda;
    p.residual = (M.entries * v - lambda * v).norm() / v.norm();
    p.flagged = p.residual > tol * scale;
    out[static_cast<size_t>(i)] = p;
  }
  std::sort(out.begin(), out.end(), [](const EigenPair& a, const EigenPair& b) {
    const double ma = std::abs(a.value), mb = std::abs(b.value);
    if (ma != mb) return ma > mb;
    if (a.value.real() != b.value.real()) return a.value.real() > b.value.real();
    return a.value.imag() > b.value.imag();
  });
  return out;
}

double operator_norm(const kernels::Matrix& M, double tol) {
  if (M.rows() == 0 || M.cols() == 0) return 0.0;
  if (tol <= 0.0) throw domain_error("operator_norm tolerance must be positive");
  constexpr long kMaxIter = 100000;

  kernels::Vector x = kernels::Vector::Ones(M.cols());
  x /= x.norm();
  kernels::Vector y(M.rows()), z(M.cols());

  double sigma = 0.0, prev = 0.0, prev_diff = -1.0;
  int settled = 0, noise = 0;
  for (long it = 0; it < kMaxIter; ++it) {
    kernels::matvec(M, x, y);
    const double ny = y.norm();
    if (ny == 0.0) return 0.0;  // x in the kernel; with the fixed start this means M = 0 numerically
    sigma = ny;                 // ||M x|| with ||x|| = 1, increases toward sigma_max

    kernels::adjoint_matvec(M, y, z);
    const double nz = z.norm();
    if (nz == 0.0) return sigma;
    x = z / nz;

    const double diff = std::abs(sigma - prev);
    if (it > 0) {
      // Extrapolate the geometric tail: remaining error ~ diff * rho/(1-rho).
      double rho = prev_diff > 0.0 ? diff / prev_diff : 1.0;
      rho = std::clamp(rho, 0.0, 0.99999);
      const double err_est = diff * rho / (1.0 - rho);
      if (err_est <= 0.1 * tol * std::max(sigma, 1e-300))
        ++settled;
      else
        settled = 0;
      if (diff <= 4.0 * 2.220446049250313e-16 * sigma)
        ++noise;
      else
        noise = 0;
      if (settled >= 3 || noise >= 5) return sigma;
    }
    prev = sigma;
    prev_diff = diff > 0.0 ? diff : prev_diff;
  }
  throw convergence_error("power iteration did not converge", sigma);
}

double operator_norm(const OperatorMatrix& M, double tol) { return operator_norm(M.entries, tol); }

namespace {

double candidate_value(int n, double r, long l) {
  if (l == n) return 1.0;  // r^0 = 1 for every r, including r = 0
  return binomial(l, n) * std::pow(r, static_cast<double>(l - n));
}

}  // namespace

ArgmaxResult argmax_l(int n, double r) {
  if (n < 1) throw domain_error("argmax order n must be a positive integer");
  if (r < 0.0 || r >= 1.0) throw domain_error("argmax rate must satisfy 0 <= r < 1");
  ArgmaxResult res;
  if (r == 0.0) {
    res.l_star = n;
    res.value = 1.0;
    return res;
  }
  long l = static_cast<long>(std::floor(static_cast<double>(n) / (1.0 - r)));
  if (l < n) l = n;
  // Guard the floating floor against off-by-one at near-integral n/(1-r).
  while (candidate_value(n, r, l + 1) > candidate_value(n, r, l) * (1.0 + 1e-12)) ++l;
  while (l > n && candidate_value(n, r, l - 1) > candidate_value(n, r, l) * (1.0 + 1e-12)) --l;
  res.l_star = l;
  res.value = candidate_value(n, r, l);
  // A tie (n/(1-r) integral) pairs l with one neighbor; floating-point floor
  // can land on either member, so look both ways.
  const double above = candidate_value(n, r, l + 1);
  res.tie = std::abs(above - res.value) <= 1e-12 * res.value;
  if (!res.tie && l > n) {
    const double below = candidate_value(n, r, l - 1);
    res.tie = std::abs(below - res.value) <= 1e-12 * res.value;
  }
  return res;
}

FixedPointInfo common_fixed_point(const OperatorSpec& spec) {
  spec.validate_shape();
  if (spec.has_diff()) {
    FixedPointInfo fp = find_fixed_point(spec.diff->phi);
    if (spec.has_comp()) {
      const cxd there = spec.comp->phi.evaluate(fp.w);
      if (std::abs(there - fp.w) > 1e-9)
        throw hypothesis_error("the two self-maps must share the interior fixed point w");
    }
    return fp;
  }
  return find_fixed_point(spec.comp->phi);
}

SpectrumReport closed_form_spectrum(const OperatorSpec& spec, const FixedPointInfo& fp, long L_max) {
  spec.validate_shape();
  SpectrumReport rep;
  rep.closed_form.push_back({-1, cxd(0.0)});

  if (spec.has_diff()) {
    const auto& d = *spec.diff;
    if (spec.diff_only() && d.phi.is_constant()) {
      // Constant self-map: spectrum is {0, psi^(n)(a)}.
      const cxd a = d.phi.coeff(0);
      if (std::abs(a) >= 1.0) throw domain_error("constant self-map value must lie in the open disk");
      const cxd lead = derivative_at(d.psi, d.order, a);
      if (lead != cxd(0.0)) rep.closed_form.push_back({static_cast<long>(d.order), lead});
      rep.radius_closed = std::abs(lead);
      rep.l_star = lead != cxd(0.0) ? d.order : -1;
      return rep;
    }
    if (vanishing_order(d.psi, fp.w) < d.order)
      throw hypothesis_error(
          "derivative-part weight must vanish at the fixed point to order >= n "
          "(kernel-expansion hypothesis)");
  }

  const int n = spec.has_diff() ? spec.diff->order : 0;
  const cxd psi0_w = spec.has_comp() ? spec.comp->psi.evaluate(fp.w) : cxd(0.0);
  const cxd dphi0 = spec.has_comp() ? derivative_at(spec.comp->phi, 1, fp.w) : cxd(0.0);
  cxd psin_n(0.0), dphin(0.0);
  if (spec.has_diff()) {
    psin_n = derivative_at(spec.diff->psi, spec.diff->order, fp.w);
    dphin = derivative_at(spec.diff->phi, 1, fp.w);
  }

  if (spec.has_comp()) {
    cxd comp_pow(1.0);  // (phi0'(w))^l, running
    for (long l = 0; l < n && l <= L_max; ++l) {
      rep.closed_form.push_back({l, psi0_w * comp_pow});
      comp_pow *= dphi0;
    }
  }
  if (spec.has_diff()) {
    cxd comp_pow = cxd(1.0);
    for (int i = 0; i < n; ++i) comp_pow *= dphi0;  // (phi0')^n
    cxd diff_pow(1.0);                              // (phin'(w))^{l-n}, 0^0 = 1
    for (long l = n; l <= L_max; ++l) {
      const cxd value = (spec.has_comp() ? psi0_w * comp_pow : cxd(0.0)) +
                        binomial(l, n) * psin_n * diff_pow;
      rep.closed_form.push_back({l, value});
      comp_pow *= dphi0;
      diff_pow *= dphin;
    }
  } else {
    cxd comp_pow(1.0);  // (phi0'(w))^l
    for (long l = 0; l <= L_max; ++l) {
      rep.closed_form.push_back({l, psi0_w * comp_pow});
      comp_pow *= dphi0;
    }
  }

  for (const auto& cf : rep.closed_form) {
    const double m = std::abs(cf.value);
    if (m > rep.radius_closed) {
      rep.radius_closed = m;
      rep.l_star = cf.l;
    }
  }
  return rep;
}

long default_lmax(const OperatorSpec& spec, const FixedPointInfo& fp) {
  long l_star = 0;
  if (spec.has_diff() && !spec.diff->phi.is_constant()) {
    const double r = std::abs(derivative_at(spec.diff->phi, 1, fp.w));
    if (r < 1.0) l_star = argmax_l(spec.diff->order, r).l_star;
  }
  return std::max(3 * l_star, 50L);
}

std::pair<double, long> spectral_radius_closed(const OperatorSpec& spec, const FixedPointInfo& fp) {
  spec.validate_shape();
  if (!spec.diff_only())
    throw hypothesis_error("spectral radius formula applies to derivative-part-only operators");
  const auto& d = *spec.diff;
  const int order = vanishing_order(d.psi, fp.w);
  if (order != d.order)
    throw hypothesis_error(
        "spectral radius formula requires the weight to vanish at the fixed point to order exactly n");
  const double lead = std::abs(derivative_at(d.psi, d.order, fp.w));
  const double r = std::abs(fp.phi_prime);
  if (r == 0.0) return {lead, d.order};
  const ArgmaxResult am = argmax_l(d.order, r);
  return {lead * am.value, am.l_star};
}

std::pair<double, double> composition_norm_bounds(cxd phi0_at_zero, double alpha) {
  const double a = std::abs(phi0_at_zero);
  if (a >= 1.0) throw domain_error("composition symbol must satisfy |phi(0)| < 1");
  const double e = (alpha + 2.0) / 2.0;
  const double lower = std::pow(1.0 / (1.0 - a * a), e);
  const double upper = std::pow((1.0 + a) / (1.0 - a), e);
  return {lower, upper};
}

}  // namespace opdiff
