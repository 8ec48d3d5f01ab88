#include "cobos/model_params.hpp"

#include <cmath>

#include "cobos/errors.hpp"

namespace cobos {

void ModelParams::validate() const {
  if (n < 1) throw InvalidArgument("n must be >= 1");
  if (d < 1 || d > 3) throw InvalidArgument("d must be 1, 2 or 3");
  if (!std::isfinite(q) || q < 0) throw InvalidArgument("q must be finite and >= 0");
}

std::string to_string(SignMode mode) {
  return mode == SignMode::Fermionic ? "fermionic" : "bosonic";
}

SignMode parse_sign_mode(const std::string& s) {
  if (s == "fermionic") return SignMode::Fermionic;
  if (s == "bosonic") return SignMode::Bosonic;
  throw InvalidArgument("unknown sign mode '" + s + "'");
}

}  // namespace cobos
