#pragma once

// Independent check of the class-grouped matrix elements: every one of the n!
// permutations is integrated on its full 2n x 2n form. Only the Gaussian
// engine primitives are shared with the production path.

#include <cstdint>
#include <string>
#include <vector>

#include "cobos/model_params.hpp"
#include "cobos/perm_classes.hpp"
#include "cobos/scalar.hpp"

namespace cobos {

inline constexpr int kOracleMaxN = 6;

/// Identity-normalized contribution of one permutation, unsigned.
struct PermutationTerm {
  Permutation perm;
  int parity = 1;  // sign of the permutation, from inversion count
  double overlap = 0;
  double kinetic = 0;
  double potential = 0;
};

/// All n! unsigned terms in lexicographic order, at binary64.
std::vector<PermutationTerm> brute_force_terms(const ModelParams& params, double p);

struct OracleReport {
  double overlap = 0;
  double kinetic = 0;
  double potential = 0;
  double delta_overlap = 0;  // relative to assemble_sums
  double delta_kinetic = 0;
  double delta_potential = 0;
  double condition = 1;
  Precision precision = Precision::Binary64;
  bool pass = false;

  double max_delta() const;
};

/// Brute-force signed sums over all permutations, compared with
/// assemble_sums. n <= 6.
OracleReport brute_force_sums(const ModelParams& params, double p, double tol = 1e-10);

/// Energy of a single pair from the centre-of-mass / relative separation:
/// d [2(p + q) + 1/(4p) + 1/(4(p + 2q))].
double n1_closed_form(double p, double q, int d);

struct CrossCheckTrial {
  int n = 1;
  SignMode mode = SignMode::Fermionic;
  double p = 0, q = 0;
  double delta = 0;
  bool pass = false;
  std::string error;
};

struct CrossCheckEntry {
  int n = 1;
  SignMode mode = SignMode::Fermionic;
  int trials = 0;
  int failures = 0;
  double max_delta = 0;
};

struct CrossCheckSummary {
  std::vector<CrossCheckEntry> entries;
  std::vector<CrossCheckTrial> trials;
  bool pass() const;
};

/// For n = 1..n_max and both modes, `trials` seeded (p, q) in [0.1, 3]^2.
CrossCheckSummary cross_check(int n_max, int trials, double tol, std::uint64_t seed);

}  // namespace cobos
