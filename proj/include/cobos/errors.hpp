#pragma once

#include <stdexcept>
#include <string>

namespace cobos {

struct InvalidArgument : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Resource bounds on enumeration (factorial growth).
struct ResourceLimit : std::length_error {
  using std::length_error::length_error;
};

// Quadratic form is not positive definite, so the Gaussian integral diverges.
struct DivergentIntegral : std::domain_error {
  using std::domain_error::domain_error;
};

// The (anti)symmetrized norm cannot be separated from zero even at the
// highest working precision.
class VanishingNorm : public std::runtime_error {
public:
  VanishingNorm(const std::string& what, double condition)
      : std::runtime_error(what), condition_(condition) {}
  double condition() const noexcept { return condition_; }

private:
  double condition_;
};

struct NoBracket : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UndefinedMu : std::domain_error {
  using std::domain_error::domain_error;
};

}  // namespace cobos
