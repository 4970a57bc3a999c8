#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "opdiff/verify.hpp"
#include "support.hpp"

using namespace opdiff;
using namespace opdiff::testing;

TEST_CASE("adjoint expansion: diagonal operator, m above n") {
  const OperatorSpec spec = diff_spec({0, 1}, {0, 0.5}, 1);
  const auto [rep, exp] = check_adjoint_expansion(spec, cxd(0.0), 3, -1.0, 64);
  CHECK(rep.pass);
  CHECK(exp.span_residual <= 1e-10);
  REQUIRE(exp.coefficients.size() == 4u);
  CHECK(std::abs(exp.coefficients[3] - cxd(0.75)) <= 1e-12);
  for (int j = 0; j < 3; ++j) CHECK(std::abs(exp.coefficients[static_cast<size_t>(j)]) <= 1e-12);
  CHECK(std::abs(exp.leading_predicted - cxd(0.75)) <= 1e-15);
}

TEST_CASE("adjoint expansion: derivative part is annihilated below order n") {
  const OperatorSpec spec = diff_spec({0, 0, 0, 0.5}, {0, 0.6}, 3);
  const auto [rep, exp] = check_adjoint_expansion(spec, cxd(0.0), 2, -1.0, 64);
  CHECK(rep.pass);
  for (const cxd& c : exp.coefficients) CHECK(std::abs(c) <= 1e-12);
}

TEST_CASE("adjoint expansion: m equals n mixes both leading terms") {
  // psi0(0) (phi0'(0))^2 + psi2''(0) = 1 * 0.09 + 2
  const OperatorSpec spec = mixed_spec({1, 0, 0.5}, {0, 0.3, 0.1}, {0, 0, 1, 0, 0.2}, {0, 0.5, 0.2}, 2);
  const auto [rep, exp] = check_adjoint_expansion(spec, cxd(0.0), 2, -1.0, 96);
  CHECK(rep.pass);
  CHECK(std::abs(exp.leading_predicted - cxd(2.09)) <= 1e-12);
  CHECK(exp.leading_error <= 1e-10);
  CHECK(exp.bell_error <= 1e-8);
}

TEST_CASE("adjoint expansion: mixed case on the weighted spaces") {
  const OperatorSpec spec = mixed_spec({1, 1}, {0, 0.5}, {0, 1}, {0, 0.5}, 1);
  for (double alpha : {-1.0, 0.0, 1.0}) {
    const auto [rep, exp] = check_adjoint_expansion(spec, cxd(0.0), 4, alpha, 96);
    CHECK(rep.pass);
    // leading: psi0(0) (0.5)^4 + C(4,1) psi1'(0) (0.5)^3 = 0.0625 + 0.5
    CHECK(std::abs(exp.leading_predicted - cxd(0.5625)) <= 1e-14);
  }
}

TEST_CASE("adjoint expansion enforces the vanishing hypothesis") {
  const OperatorSpec spec = diff_spec({1}, {0, 0.5}, 1);
  CHECK_THROWS_AS(check_adjoint_expansion(spec, cxd(0.0), 2, -1.0, 64), hypothesis_error);
}

TEST_CASE("structural triangularity: vanishing weights at 0 give a lower-triangular matrix") {
  // Mirrors the invariant-subspace argument: with the fixed point at 0 and the
  // derivative-part weight vanishing to order n, no column reaches above its
  // own degree.
  const OperatorSpec spec = mixed_spec({1, -0.2, 0.3}, {0, 0.5, 0.2}, {0, 0, 1, 0.4}, {0, 0.3, 0.1}, 2);
  const OperatorMatrix M = build_matrix(spec, 0.5, 40);
  for (int j = 0; j <= 40; ++j)
    for (int i = 0; i < j; ++i) CHECK(M.entries(i, j) == cxd(0.0));
}

TEST_CASE("conjugation matrix is a self-inverse isometry on the retained block") {
  // Columns near the truncation degree lose coefficient mass (powers of the
  // automorphism spread out before decaying), so only the leading quarter
  // block of U^2 is expected to reproduce the identity.
  for (double alpha : {-1.0, 1.0}) {
    const kernels::Matrix U = fixed_point_conjugation_matrix(cxd(0.3), alpha, 96);
    const kernels::Matrix UU = kernels::matmul(U, U);
    const int q = 24;
    const kernels::Matrix I = kernels::Matrix::Identity(97, 97);
    CHECK((UU - I).topLeftCorner(q, q).cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("spectrum match: triangular, quasinilpotent and constant-map cases") {
  CHECK(check_spectrum_match(diff_spec({0, 1}, {0, 0.5, 0.2}, 1), -1.0, 100, 10).pass);
  CHECK(check_spectrum_match(diff_spec({0, 0, 1}, {0, 0.5}, 1), -1.0, 100, 10).pass);

  const VerificationReport constant = check_spectrum_match(diff_spec({-0.3, 1}, {0.3}, 1), -1.0, 64, 5);
  CHECK(constant.pass);
  CHECK(constant.note.find("experimental") != std::string::npos);
}

TEST_CASE("spectrum match: nonzero fixed point via conjugation") {
  // phi = 0.25 + 0.5z fixes w = 0.5; psi = (z - 0.5) vanishes there to order 1
  const OperatorSpec spec = diff_spec({-0.5, 1}, {0.25, 0.5}, 1);
  const VerificationReport rep = check_spectrum_match(spec, -1.0, 128, 6);
  CHECK(rep.pass);
}

TEST_CASE("factorization checks") {
  CHECK(check_factorization(ts({0, 0.5}), -1.0, 96).pass);
  CHECK(check_factorization(ts({0, 0.5, 0.2}), -1.0, 96).pass);
  CHECK(check_factorization(ts({0.3}), -1.0, 96).pass);

  // linear symbol: exact equality, not just within tolerance
  const VerificationReport lin = check_factorization(ts({0, 0.5}), -1.0, 64);
  CHECK(lin.residual <= 1e-13);
}

TEST_CASE("norm convergence checks") {
  CHECK(check_norm_convergence(diff_spec({1}, {0, 0.9}, 1), -1.0, {32, 64, 128, 256}).pass);
  CHECK(check_norm_convergence(diff_spec({1}, {0, 0.5}, 2), -1.0, {64, 128, 256}).pass);
  CHECK(check_norm_convergence(diff_spec({0}, {0, 0.5}, 1), -1.0, {16, 32, 64}).pass);
}

TEST_CASE("reproducing sweep") {
  const VerificationReport rep = check_reproducing({-1.0, 0.0, 1.0, 2.5}, 128);
  CHECK(rep.pass);
  CHECK(rep.residual <= 1e-10);
}

TEST_CASE("default suite passes end to end") {
  const auto reports = run_suite(default_suite());
  CHECK(reports.size() >= 23u);
  for (const auto& r : reports) {
    INFO(r.case_id, ": residual=", r.residual, " tol=", r.tolerance, " note=", r.note);
    CHECK(r.pass);
  }
}

TEST_CASE("suite errors are reported as failures, not crashes") {
  std::vector<VerificationCase> cases;
  cases.push_back({"broken/nonvanishing-weight", [] {
                     return check_adjoint_expansion(diff_spec({1}, {0, 0.5}, 1), cxd(0.0), 2, -1.0, 32)
                         .first;
                   }});
  const auto reports = run_suite(cases);
  REQUIRE(reports.size() == 1u);
  CHECK_FALSE(reports[0].pass);
  CHECK(reports[0].theorem == "error");
  CHECK(reports[0].note.find("vanish") != std::string::npos);
}
