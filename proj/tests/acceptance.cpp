// Acceptance suite: one line per criterion, nonzero exit on any failure.
// Every tolerance is pinned here; nothing is deferred to calibration.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "opdiff/verify.hpp"

using namespace opdiff;

namespace {

int g_failures = 0;

void report(int idx, const std::string& name, bool pass, const std::string& detail) {
  std::printf("[%s] criterion %d: %s (%s)\n", pass ? "PASS" : "FAIL", idx, name.c_str(),
              detail.c_str());
  if (!pass) ++g_failures;
}

TruncatedSeries ts(std::vector<cxd> v) { return TruncatedSeries(std::move(v)); }

OperatorSpec diff_spec(std::vector<cxd> psi, std::vector<cxd> phi, int n) {
  OperatorSpec s;
  s.diff = OperatorSpec::DiffPart{ts(std::move(psi)), ts(std::move(phi)), n};
  return s;
}

OperatorSpec mixed_spec(std::vector<cxd> psi0, std::vector<cxd> phi0, std::vector<cxd> psin,
                        std::vector<cxd> phin, int n) {
  OperatorSpec s;
  s.comp = OperatorSpec::CompPart{ts(std::move(psi0)), ts(std::move(phi0))};
  s.diff = OperatorSpec::DiffPart{ts(std::move(psin)), ts(std::move(phin)), n};
  return s;
}

// 1. Norm of f -> f^(n) o (bz) at truncation 256 matches the closed form to 1e-6.
void criterion_exact_norm() {
  double worst = 0.0;
  std::string worst_at;
  for (double b : {0.3, 0.5, 0.75, 0.9}) {
    for (int n : {1, 2, 3}) {
      const OperatorSpec spec = diff_spec({1}, {0, b}, n);
      const double numeric = operator_norm(build_matrix(spec, -1.0, 256), 1e-10);
      const double exact = exact_norm_bz(cxd(b), n);
      const double err = std::abs(numeric - exact);
      if (err > worst) {
        worst = err;
        worst_at = "b=" + std::to_string(b) + ",n=" + std::to_string(n);
      }
    }
  }
  // spot values frozen from the closed form
  const double s1 = std::abs(exact_norm_bz(cxd(0.5), 1) - 1.0);
  const double s2 = std::abs(exact_norm_bz(cxd(0.5), 2) - 3.0);
  const double s3 = std::abs(exact_norm_bz(cxd(0.9), 1) - 3.87420489);
  const bool pass = worst <= 1e-6 && s1 <= 1e-12 && s2 <= 1e-12 && s3 <= 1e-9;
  report(1, "exact norm for linear symbols on the (b, n) grid", pass,
         "max |numeric-exact| = " + std::to_string(worst) + " at " + worst_at);
}

// 2. The floor formula maximizes C(l,n) r^{l-n} over integers l >= n.
void criterion_radius_maximizer() {
  int mismatches = 0;
  for (int n = 1; n <= 5; ++n) {
    for (int ri = 1; ri <= 99; ++ri) {
      const double r = ri / 100.0;
      const ArgmaxResult am = argmax_l(n, r);
      const long span = n + static_cast<long>(std::ceil(10.0 / (1.0 - r)));
      double best = -1.0;
      long best_l = n;
      for (long l = n; l <= span; ++l) {
        const double v = binomial(l, n) * std::pow(r, static_cast<double>(l - n));
        if (v > best) {
          best = v;
          best_l = l;
        }
      }
      const bool value_ok = std::abs(am.value - best) <= 1e-12 * best;
      const bool l_ok = am.l_star == best_l || (am.tie && std::labs(am.l_star - best_l) == 1);
      if (!value_ok || !l_ok) ++mismatches;
    }
  }
  report(2, "discrete spectral-radius maximizer equals brute force", mismatches == 0,
         std::to_string(mismatches) + " mismatches over 495 grid points");
}

// 3. Truncated-matrix eigenvalues against the closed-form spectrum.
void criterion_spectrum() {
  const auto ev = eigenvalues(build_matrix(diff_spec({0, 1}, {0, 0.5, 0.2}, 1), -1.0, 100), 1e-8);
  std::vector<double> closed;
  for (int l = 1; l <= 300; ++l) closed.push_back(l * std::pow(0.5, l - 1));
  std::sort(closed.rbegin(), closed.rend());
  double worst = 0.0;
  for (int i = 0; i < 10; ++i)
    worst = std::max(worst, std::abs(std::abs(ev[static_cast<size_t>(i)].value) - closed[static_cast<size_t>(i)]));

  const auto qe = eigenvalues(build_matrix(diff_spec({0, 0, 1}, {0, 0.5}, 1), -1.0, 100), 1e-8);
  double qworst = 0.0;
  for (const auto& p : qe) qworst = std::max(qworst, std::abs(p.value));

  const bool pass = worst <= 1e-8 && qworst <= 1e-6;
  report(3, "spectrum equality and quasinilpotence", pass,
         "top-10 err = " + std::to_string(worst) + ", quasinilpotent max = " + std::to_string(qworst));
}

// 4. Adjoint action on kernel derivatives: 12 mixed cases, three sub-tolerances.
void criterion_adjoint() {
  struct Case {
    OperatorSpec spec;
    int m;
  };
  const std::vector<Case> corpus = {
      {mixed_spec({1, 1}, {0, 0.5}, {0, 1}, {0, 0.5}, 1), 3},
      {mixed_spec({2, -0.3, 0.1}, {0, 0.5, 0.2}, {0, 0, 1, 0.1}, {0, 0.4, 0, 0.1}, 1), 6},
      {mixed_spec({1, 0, 0.5}, {0, 0.3, 0.1}, {0, 0, 1, 0, 0.2}, {0, 0.5, 0.2}, 2), 2},
      {mixed_spec({1, 1, 1}, {0, 0.4}, {0, 0, 0, 0.5}, {0, 0.6}, 3), 2},
  };
  double span = 0.0, lead = 0.0, bell = 0.0;
  int cases = 0;
  for (const Case& c : corpus) {
    for (double alpha : {-1.0, 0.0, 1.0}) {
      const auto [rep, exp] = check_adjoint_expansion(c.spec, cxd(0.0), c.m, alpha, 128);
      span = std::max(span, exp.span_residual);
      lead = std::max(lead, exp.leading_error);
      bell = std::max(bell, exp.bell_error);
      ++cases;
    }
  }
  const bool pass = cases == 12 && span <= 1e-8 && lead <= 1e-10 && bell <= 1e-8;
  char detail[160];
  std::snprintf(detail, sizeof detail, "span=%.2e lead=%.2e bell=%.2e over %d cases", span, lead,
                bell, cases);
  report(4, "adjoint kernel expansion (12-case corpus)", pass, detail);
}

// 5. Reproducing property sweep.
void criterion_reproducing() {
  const VerificationReport rep = check_reproducing({-1.0, 0.0, 1.0, 2.5}, 128);
  report(5, "kernel reproducing property", rep.pass && rep.residual <= 1e-10,
         "max residual = " + std::to_string(rep.residual));
}

// 6. Squared first-derivative operator equals the order-two operator.
void criterion_factorization() {
  bool pass = true;
  double worst = 0.0;
  for (const TruncatedSeries& phi : {ts({0, 0.5}), ts({0, 0.5, 0.2}), ts({0.3})}) {
    const VerificationReport rep = check_factorization(phi, -1.0, 128);
    pass = pass && rep.pass;
    worst = std::max(worst, rep.tolerance > 0 ? rep.residual / rep.tolerance : rep.residual);
  }
  report(6, "derivative-operator factorization", pass,
         "worst residual/tolerance = " + std::to_string(worst));
}

// 7. Lower bounds against numeric norms; the small-sup clause is exact.
void criterion_sandwich() {
  const OperatorSpec ex1 = diff_spec({1}, {0, 0, 0.6, 0.3}, 1);
  const double lb1 = lower_bound_norm(ex1, find_fixed_point(ex1.diff->phi));
  const double n1 = operator_norm(build_matrix(ex1, -1.0, 256), 1e-10);

  const OperatorSpec ex2 = diff_spec({1}, {0, 0.75, 0, 0, 0, 0.1}, 1);
  const double lb2 = lower_bound_norm(ex2, find_fixed_point(ex2.diff->phi));
  const double n2 = operator_norm(build_matrix(ex2, -1.0, 256), 1e-10);

  const OperatorSpec ex3 = diff_spec({1}, {0, 0, 0.5}, 1);
  const double n3 = operator_norm(build_matrix(ex3, -1.0, 256), 1e-10);

  const bool pass = std::abs(lb1 - 1.2) <= 1e-12 && n1 >= 1.2 - 1e-6 &&
                    std::abs(lb2 - 1.6875) <= 1e-12 && n2 >= 1.6875 - 1e-6 &&
                    std::abs(n3 - 1.0) <= 1e-6;
  char detail[160];
  std::snprintf(detail, sizeof detail, "norms %.6f>=1.2, %.6f>=1.6875, |%.8f-1|<=1e-6", n1, n2, n3);
  report(7, "lower bounds and the exact small-sup norm", pass, detail);
}

// 8. Hyponormality classification with commutator evidence.
void criterion_hyponormality() {
  const OperatorSpec normal = diff_spec({0, 2}, {0, 0.5}, 1);
  const HyponormalityReport a =
      hyponormality_classify(normal, find_fixed_point(normal.diff->phi), -1.0, 128);

  const OperatorSpec skew = diff_spec({0, 1, 1}, {0, 0.5}, 1);
  const HyponormalityReport b =
      hyponormality_classify(skew, find_fixed_point(skew.diff->phi), -1.0, 128);
  const double neg_threshold = -1e-6 * b.numeric_norm * b.numeric_norm;

  const bool pass = a.normal && a.closed_norm && std::abs(*a.closed_norm - 2.0) <= 1e-12 &&
                    std::abs(a.numeric_norm - 2.0) <= 1e-6 &&
                    std::abs(a.min_commutator_eig) <= 1e-12 &&
                    std::abs(a.max_commutator_eig) <= 1e-12 && !b.normal &&
                    b.min_commutator_eig <= neg_threshold && b.max_commutator_eig > 0.0;
  char detail[200];
  std::snprintf(detail, sizeof detail,
                "normal: norm=%.8f commutator<=%.1e; two-term: min_eig=%.3e (threshold %.3e)",
                a.numeric_norm, std::max(std::abs(a.min_commutator_eig), std::abs(a.max_commutator_eig)),
                b.min_commutator_eig, neg_threshold);
  report(8, "hyponormality classification", pass, detail);
}

}  // namespace

int main() {
  criterion_exact_norm();
  criterion_radius_maximizer();
  criterion_spectrum();
  criterion_adjoint();
  criterion_reproducing();
  criterion_factorization();
  criterion_sandwich();
  criterion_hyponormality();
  if (g_failures == 0)
    std::printf("acceptance: all 8 criteria passed\n");
  else
    std::printf("acceptance: %d criterion(s) FAILED\n", g_failures);
  return g_failures == 0 ? 0 : 1;
}
