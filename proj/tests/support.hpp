#ifndef OPDIFF_TESTS_SUPPORT_HPP
#define OPDIFF_TESTS_SUPPORT_HPP

#include <random>
#include <vector>

#include "opdiff/operator.hpp"

namespace opdiff::testing {

inline TruncatedSeries ts(std::vector<cxd> v) { return TruncatedSeries(std::move(v)); }

inline OperatorSpec diff_spec(std::vector<cxd> psi, std::vector<cxd> phi, int n) {
  OperatorSpec s;
  s.diff = OperatorSpec::DiffPart{ts(std::move(psi)), ts(std::move(phi)), n};
  return s;
}

inline OperatorSpec comp_spec(std::vector<cxd> psi, std::vector<cxd> phi) {
  OperatorSpec s;
  s.comp = OperatorSpec::CompPart{ts(std::move(psi)), ts(std::move(phi))};
  return s;
}

inline OperatorSpec mixed_spec(std::vector<cxd> psi0, std::vector<cxd> phi0, std::vector<cxd> psin,
                               std::vector<cxd> phin, int n) {
  OperatorSpec s;
  s.comp = OperatorSpec::CompPart{ts(std::move(psi0)), ts(std::move(phi0))};
  s.diff = OperatorSpec::DiffPart{ts(std::move(psin)), ts(std::move(phin)), n};
  return s;
}

inline TruncatedSeries random_poly(std::mt19937& rng, int degree, double scale = 1.0) {
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::vector<cxd> v(static_cast<size_t>(degree) + 1);
  for (cxd& c : v) c = scale * cxd(unit(rng), unit(rng));
  return TruncatedSeries(std::move(v));
}

inline cxd random_disk_point(std::mt19937& rng, double radius = 0.9) {
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  for (;;) {
    const cxd z(unit(rng), unit(rng));
    if (std::abs(z) <= 1.0) return radius * z;
  }
}

}  // namespace opdiff::testing

#endif
