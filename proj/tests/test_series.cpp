#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "opdiff/series.hpp"
#include "support.hpp"

using namespace opdiff;
using opdiff::testing::random_disk_point;
using opdiff::testing::random_poly;
using opdiff::testing::ts;

TEST_CASE("multiply: exact polynomial products") {
  const TruncatedSeries p = multiply(ts({1, 1}), ts({1, -1}), 2);  // (1+z)(1-z)
  CHECK(p.coeff(0) == cxd(1.0));
  CHECK(p.coeff(1) == cxd(0.0));
  CHECK(p.coeff(2) == cxd(-1.0));
  CHECK(p.tail_bound() == 0.0);

  const TruncatedSeries q = multiply(ts({0, 0.5}), ts({0, 0.5}), 2);
  CHECK(q.coeff(2) == cxd(0.25));
  CHECK(q.coeff(1) == cxd(0.0));
}

TEST_CASE("multiply: truncation moves discarded mass into the tail bound") {
  const TruncatedSeries p = multiply(ts({0, 1}), ts({0, 1}), 1);  // z*z truncated at 1
  CHECK(p.coeff(1) == cxd(0.0));
  CHECK(p.tail_bound() == doctest::Approx(1.0));
}

TEST_CASE("multiply: product of the half-point automorphism factor with itself has modulus one") {
  const TruncatedSeries b = blaschke_series(cxd(0.5), 64);
  const TruncatedSeries p = multiply(b, b, 64);
  for (int s = 0; s < 64; ++s) {
    const cxd z = std::polar(1.0, 2.0 * M_PI * s / 64.0);
    CHECK(std::abs(std::abs(p.evaluate(z)) - 1.0) <= p.tail_bound() + 1e-12);
  }
}

TEST_CASE("power") {
  const TruncatedSeries c = power(ts({0, 0.5}), 3, 8);
  CHECK(c.coeff(3) == cxd(0.125));

  const TruncatedSeries one = power(ts({0.3, 0.7}), 0, 8);
  CHECK(one.coeff(0) == cxd(1.0));
  CHECK(one.effective_degree() == 0);

  const TruncatedSeries sq = power(ts({0, 0.5, 0.2}), 2, 4);
  CHECK(sq.coeff(2) == cxd(0.25));
  CHECK(std::abs(sq.coeff(3) - cxd(0.2)) < 1e-16);
  CHECK(std::abs(sq.coeff(4) - cxd(0.04)) < 1e-16);
}

TEST_CASE("derivative_at on monomials and polynomials") {
  CHECK(derivative_at(TruncatedSeries::monomial(3), 2, cxd(0.5)) == cxd(3.0));
  CHECK(derivative_at(TruncatedSeries::monomial(3), 0, cxd(0.0)) == cxd(0.0));
  CHECK(derivative_at(ts({0, 0.5, 0.2}), 1, cxd(0.0)) == cxd(0.5));
}

TEST_CASE("derivative_at: error only when the tail makes the answer unknowable") {
  CHECK(derivative_at(ts({1, 1}), 5, cxd(0.2)) == cxd(0.0));  // exact polynomial: 0
  const TruncatedSeries tailed({cxd(1.0), cxd(1.0)}, 0.5);
  CHECK_THROWS_AS(derivative_at(tailed, 5, cxd(0.2)), truncation_error);
}

TEST_CASE("blaschke_series coefficients") {
  const TruncatedSeries b0 = blaschke_series(cxd(0.0), 8);
  CHECK(b0.coeff(0) == cxd(0.0));
  CHECK(b0.coeff(1) == cxd(-1.0));
  CHECK(b0.tail_bound() == 0.0);

  const TruncatedSeries b = blaschke_series(cxd(0.5), 3);
  CHECK(b.coeff(0) == cxd(0.5));
  CHECK(b.coeff(1) == cxd(-0.75));
  CHECK(b.coeff(2) == cxd(-0.375));
  CHECK(b.coeff(3) == cxd(-0.1875));

  CHECK_THROWS_AS(blaschke_series(cxd(1.0), 8), domain_error);
}

TEST_CASE("blaschke_series is inner: modulus one on the circle up to the tail bound") {
  for (const cxd w : {cxd(0.5), cxd(0.3, 0.2), cxd(-0.1, -0.6)}) {
    const TruncatedSeries b = blaschke_series(w, 96);
    for (int s = 0; s < 256; ++s) {
      const cxd z = std::polar(1.0, 2.0 * M_PI * s / 256.0);
      CHECK(std::abs(std::abs(b.evaluate(z)) - 1.0) <= b.tail_bound() + 1e-13);
    }
  }
}

TEST_CASE("blaschke_series matches the rational value inside the disk") {
  const cxd w(0.5);
  const int N = 128;
  const TruncatedSeries b = blaschke_series(w, N);
  const double bound = (1.0 + std::abs(w)) * std::pow(0.9 * std::abs(w), N) / (1.0 - 0.9 * std::abs(w));
  std::mt19937 rng(7u);
  for (int i = 0; i < 50; ++i) {
    const cxd z = random_disk_point(rng, 0.9);
    const cxd exact = (w - z) / (1.0 - std::conj(w) * z);
    CHECK(std::abs(b.evaluate(z) - exact) <= bound + 1e-15);
  }
}

TEST_CASE("sup_norm_estimate") {
  CHECK(sup_norm_estimate(TruncatedSeries::monomial(5), 64) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(sup_norm_estimate(ts({0.3, 0.4}), 128) == doctest::Approx(0.7).epsilon(1e-14));
  CHECK(sup_norm_estimate(ts({0, 0.5, 0.2}), 128) == doctest::Approx(0.7).epsilon(1e-14));
  CHECK_THROWS_AS(sup_norm_estimate(ts({1}), 32), domain_error);
}

TEST_CASE("bell_coefficients: low orders against hand values") {
  const std::vector<cxd> d = {cxd(0.5), cxd(1.2), cxd(-0.3)};  // phi', phi'', phi'''
  const BellTable b1 = bell_coefficients(d, 1);
  CHECK(b1.at(1) == cxd(0.5));

  const BellTable b2 = bell_coefficients(d, 2);
  CHECK(b2.at(1) == cxd(1.2));          // phi''
  CHECK(b2.at(2) == cxd(0.25));         // (phi')^2

  const BellTable b3 = bell_coefficients(d, 3);
  CHECK(b3.at(2) == cxd(3.0 * 0.5 * 1.2));  // 3 phi' phi''
  CHECK(b3.at(1) == cxd(-0.3));
  CHECK(b3.at(3) == cxd(0.125));

  CHECK(bell_coefficients(d, 0).entries.empty());
}

TEST_CASE("bell_coefficients reproduce composition derivatives of random polynomials") {
  std::mt19937 rng(42u);
  for (int rep = 0; rep < 20; ++rep) {
    const TruncatedSeries f = random_poly(rng, 8);
    const TruncatedSeries phi = random_poly(rng, 6, 0.3);
    const cxd w = random_disk_point(rng, 0.5);
    const TruncatedSeries comp = compose(f, phi, 96);

    std::vector<cxd> phi_derivs;
    for (int i = 1; i <= 6; ++i) phi_derivs.push_back(derivative_at(phi, i, w));

    for (int j = 1; j <= 5; ++j) {
      const BellTable bt = bell_coefficients(phi_derivs, j);
      cxd sum(0.0);
      for (int k = 1; k <= j; ++k) sum += derivative_at(f, k, phi.evaluate(w)) * bt.at(k);
      const cxd direct = derivative_at(comp, j, w);
      CHECK(std::abs(sum - direct) <= 1e-9 * (1.0 + std::abs(direct)));
    }
  }
}

TEST_CASE("property: multiply agrees with pointwise products at random points") {
  std::mt19937 rng(11u);
  for (int rep = 0; rep < 10; ++rep) {
    const TruncatedSeries f = random_poly(rng, 16);
    const TruncatedSeries g = random_poly(rng, 16);
    const TruncatedSeries p = multiply(f, g, 32);
    for (int i = 0; i < 20; ++i) {
      const cxd z = random_disk_point(rng, 0.99);
      CHECK(std::abs(p.evaluate(z) - f.evaluate(z) * g.evaluate(z)) <= 1e-12);
    }
  }
}

TEST_CASE("property: derivative_at agrees with central finite differences") {
  std::mt19937 rng(13u);
  const double h = 1e-5;
  for (int rep = 0; rep < 10; ++rep) {
    const TruncatedSeries f = random_poly(rng, 10);
    const cxd w = random_disk_point(rng, 0.5);
    const auto at = [&](double off) { return f.evaluate(w + cxd(off)); };

    const cxd d1 = (at(h) - at(-h)) / (2.0 * h);
    const cxd d2 = (at(h) - 2.0 * at(0.0) + at(-h)) / (h * h);
    const cxd e1 = derivative_at(f, 1, w), e2 = derivative_at(f, 2, w), e3 = derivative_at(f, 3, w);
    CHECK(std::abs(d1 - e1) <= 1e-6 * (1.0 + std::abs(e1)));
    CHECK(std::abs(d2 - e2) <= 1e-6 * (1.0 + std::abs(e2)));

    // The third-order stencil would lose every digit to cancellation at the
    // small step, so run it at a coarse step and Richardson-extrapolate.
    const auto d3_at = [&](double hh) {
      return (at(2.0 * hh) - 2.0 * at(hh) + 2.0 * at(-hh) - at(-2.0 * hh)) / (2.0 * hh * hh * hh);
    };
    const double H = 1e-2;
    const cxd d3 = (4.0 * d3_at(H / 2.0) - d3_at(H)) / 3.0;
    CHECK(std::abs(d3 - e3) <= 1e-6 * (1.0 + std::abs(e3)));
  }
}

TEST_CASE("compose and derivative_series behave on exact polynomials") {
  const TruncatedSeries f = ts({1, 0, 2});       // 1 + 2z^2
  const TruncatedSeries g = ts({0, 0.5, 0.25});  // 0.5z + 0.25z^2
  const TruncatedSeries c = compose(f, g, 8);
  std::mt19937 rng(3u);
  for (int i = 0; i < 10; ++i) {
    const cxd z = random_disk_point(rng);
    CHECK(std::abs(c.evaluate(z) - f.evaluate(g.evaluate(z))) <= 1e-14);
  }
  const TruncatedSeries df = derivative_series(f, 1);
  CHECK(df.coeff(1) == cxd(4.0));
  CHECK(df.coeff(0) == cxd(0.0));

  const TruncatedSeries tailed({cxd(1.0)}, 0.25);
  CHECK_THROWS_AS(derivative_series(tailed, 1), truncation_error);
  CHECK_THROWS_AS(compose(tailed, g, 8), truncation_error);
}
