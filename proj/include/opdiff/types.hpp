#ifndef OPDIFF_TYPES_HPP
#define OPDIFF_TYPES_HPP

#include <complex>
#include <stdexcept>
#include <string>

namespace opdiff {

using cxd = std::complex<double>;

// Argument outside the mathematical domain of an operation (|w| >= 1, r >= 1, ...).
class domain_error : public std::domain_error {
 public:
  explicit domain_error(const std::string& msg) : std::domain_error(msg) {}
};

// A structural hypothesis of a closed-form result does not hold for the given
// data (wrong vanishing order, missing fixed point, unsupported space, ...).
class hypothesis_error : public std::runtime_error {
 public:
  explicit hypothesis_error(const std::string& msg) : std::runtime_error(msg) {}
};

// The truncation degree is too small to answer the question asked.
class truncation_error : public std::runtime_error {
 public:
  explicit truncation_error(const std::string& msg) : std::runtime_error(msg) {}
};

// An iterative scheme did not converge within its iteration budget.
class convergence_error : public std::runtime_error {
 public:
  convergence_error(const std::string& msg, double last)
      : std::runtime_error(msg), last_iterate(last) {}
  double last_iterate;
};

// Malformed input file / JSON schema violation.
class spec_error : public std::runtime_error {
 public:
  explicit spec_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace opdiff

#endif
