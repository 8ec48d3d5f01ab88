#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace cobos {

/// Statistics of the two fermion species. Bosonic mode weights every
/// permutation with +1 and serves as the comparison case.
enum class SignMode { Fermionic, Bosonic };

using Permutation = std::vector<int>;

/// Cycle lengths of a permutation of n elements, stored non-increasing.
class CycleType {
public:
  CycleType() = default;
  /// Sorts `parts`; throws InvalidArgument on an empty list or a part < 1.
  explicit CycleType(std::vector<int> parts);

  const std::vector<int>& parts() const { return parts_; }
  int size() const;  // n, the sum of the parts
  int cycle_count() const { return static_cast<int>(parts_.size()); }
  /// Number of parts equal to k.
  int count(int k) const;
  bool is_identity() const;

  std::string to_string() const;  // "[2,1]"

  auto operator<=>(const CycleType&) const = default;

private:
  std::vector<int> parts_;
};

struct PermClass {
  CycleType cycle_type;
  std::uint64_t multiplicity = 0;
  int signature = 1;
};

/// All cycle types of S_n in reverse lexicographic order: [n], ..., [1,...,1].
std::vector<CycleType> enumerate_cycle_types(int n);

/// Permutations of this type and their common sign under `mode`.
PermClass class_weight(const CycleType& t, SignMode mode);

std::vector<PermClass> enumerate_classes(int n, SignMode mode);

/// Number of integer partitions p(n); p(0) = 1.
std::uint64_t partition_count(int n);

/// Matrix elements needed when the kinetic operator acts on a single marked
/// coordinate: sum over k of p(n - k), where k is the length of the marked
/// cycle.
std::uint64_t count_marked_partitions(int n);

/// A cycle type split into the cycle containing the first element and the rest.
struct MarkedClass {
  int marked_length = 1;
  std::vector<int> rest;  // non-increasing, sums to n - marked_length
  std::uint64_t multiplicity = 0;
  int signature = 1;
};

/// Marked classes ordered by marked length, then by rest from all fixed
/// points up to a single cycle. Size is count_marked_partitions(n).
std::vector<MarkedClass> enumerate_marked_classes(int n, SignMode mode);

inline constexpr int kMaxEnumeratedPermutations = 8;

/// All n! permutations in lexicographic order; n <= 8.
std::vector<Permutation> enumerate_permutations(int n);

bool is_permutation(std::span<const int> perm);

/// Cycle type of `perm`, found by following index chains.
CycleType cycle_type_of(std::span<const int> perm);

std::uint64_t factorial(int n);

}  // namespace cobos
