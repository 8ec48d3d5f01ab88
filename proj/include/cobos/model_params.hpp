#pragma once

#include <string>

#include "cobos/perm_classes.hpp"

namespace cobos {

/// n pairs of two fermion species in a d-dimensional isotropic trap, bound by
/// exp(-q (a_i - b_i)^2). Masses are 1/2, hbar = 1 and the trap is sum x^2.
struct ModelParams {
  int n = 1;
  int d = 3;
  double q = 0.0;
  SignMode mode = SignMode::Fermionic;

  /// Throws InvalidArgument unless n >= 1, d in {1,2,3}, q >= 0 and finite.
  void validate() const;
};

std::string to_string(SignMode mode);
SignMode parse_sign_mode(const std::string& s);

}  // namespace cobos
