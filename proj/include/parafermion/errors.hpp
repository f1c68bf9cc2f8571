#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace parafermion {

// Raised when a domain exceeds the enumerator's vertex cap, or an exact
// count would overflow its accumulator.
class CapacityError : public std::runtime_error {
 public:
  CapacityError(const std::string& what, std::size_t cap)
      : std::runtime_error(what), cap_(cap) {}
  std::size_t cap() const noexcept { return cap_; }

 private:
  std::size_t cap_;
};

// Exponent formulas diverge at kappa = 4 (n = 2).
class DivergenceError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Gamma pole: eta in {0, -1, -2, ...}.
class PoleError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class NoDataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class FitDomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace parafermion
