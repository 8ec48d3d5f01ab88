#include "cobos/perm_classes.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "cobos/errors.hpp"

namespace cobos {

namespace {

// 20! is the largest factorial representable in 64 bits.
constexpr int kMaxFactorial = 20;

void require_positive(int n, const char* what) {
  if (n < 1) throw InvalidArgument(std::string(what) + ": n must be >= 1, got " + std::to_string(n));
}

std::uint64_t ipow(std::uint64_t base, int e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= base;
  return r;
}

// Partitions of n with parts <= max_part, emitted non-increasing, largest first.
void partitions(int n, int max_part, std::vector<int>& prefix,
                const std::function<void(const std::vector<int>&)>& emit) {
  if (n == 0) {
    emit(prefix);
    return;
  }
  for (int k = std::min(n, max_part); k >= 1; --k) {
    prefix.push_back(k);
    partitions(n - k, k, prefix, emit);
    prefix.pop_back();
  }
}

std::vector<std::vector<int>> all_partitions(int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> prefix;
  partitions(n, n, prefix, [&](const std::vector<int>& p) { out.push_back(p); });
  return out;
}

// Permutations of m elements with the given cycle lengths.
std::uint64_t cycle_index_count(const std::vector<int>& parts, int m) {
  std::uint64_t denom = 1;
  for (int k = 1; k <= m; ++k) {
    const int mk = static_cast<int>(std::count(parts.begin(), parts.end(), k));
    denom *= ipow(static_cast<std::uint64_t>(k), mk) * factorial(mk);
  }
  return factorial(m) / denom;
}

int parity_sign(const std::vector<int>& parts, int n) {
  return ((n - static_cast<int>(parts.size())) % 2 == 0) ? 1 : -1;
}

}  // namespace

CycleType::CycleType(std::vector<int> parts) : parts_(std::move(parts)) {
  if (parts_.empty()) throw InvalidArgument("cycle type must have at least one part");
  for (int k : parts_)
    if (k < 1) throw InvalidArgument("cycle lengths must be >= 1");
  std::sort(parts_.begin(), parts_.end(), std::greater<>());
}

int CycleType::size() const { return std::accumulate(parts_.begin(), parts_.end(), 0); }

int CycleType::count(int k) const {
  return static_cast<int>(std::count(parts_.begin(), parts_.end(), k));
}

bool CycleType::is_identity() const {
  return std::all_of(parts_.begin(), parts_.end(), [](int k) { return k == 1; });
}

std::string CycleType::to_string() const {
  std::string s = "[";
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(parts_[i]);
  }
  return s + "]";
}

std::uint64_t factorial(int n) {
  if (n < 0) throw InvalidArgument("factorial of a negative number");
  if (n > kMaxFactorial) throw ResourceLimit("factorial overflows 64 bits beyond n = 20");
  std::uint64_t r = 1;
  for (int i = 2; i <= n; ++i) r *= static_cast<std::uint64_t>(i);
  return r;
}

std::vector<CycleType> enumerate_cycle_types(int n) {
  require_positive(n, "enumerate_cycle_types");
  std::vector<CycleType> out;
  for (auto& p : all_partitions(n)) out.emplace_back(std::move(p));
  return out;
}

PermClass class_weight(const CycleType& t, SignMode mode) {
  const int n = t.size();
  return PermClass{t, cycle_index_count(t.parts(), n),
                   mode == SignMode::Fermionic ? parity_sign(t.parts(), n) : 1};
}

std::vector<PermClass> enumerate_classes(int n, SignMode mode) {
  std::vector<PermClass> out;
  for (const auto& t : enumerate_cycle_types(n)) out.push_back(class_weight(t, mode));
  return out;
}

std::uint64_t partition_count(int n) {
  if (n < 0) return 0;
  std::vector<std::uint64_t> p(static_cast<std::size_t>(n) + 1, 0);
  p[0] = 1;
  for (int k = 1; k <= n; ++k)
    for (int m = k; m <= n; ++m) p[m] += p[m - k];
  return p[n];
}

std::uint64_t count_marked_partitions(int n) {
  require_positive(n, "count_marked_partitions");
  std::uint64_t total = 0;
  for (int k = 1; k <= n; ++k) total += partition_count(n - k);
  return total;
}

std::vector<MarkedClass> enumerate_marked_classes(int n, SignMode mode) {
  require_positive(n, "enumerate_marked_classes");
  std::vector<MarkedClass> out;
  for (int k = 1; k <= n; ++k) {
    // Choose the k - 1 partners of the marked element and a cyclic order.
    const std::uint64_t marked_cycles = factorial(n - 1) / factorial(n - k);
    const int m = n - k;
    std::vector<std::vector<int>> rests = m == 0 ? std::vector<std::vector<int>>{{}} : all_partitions(m);
    std::reverse(rests.begin(), rests.end());
    for (auto& rest : rests) {
      std::vector<int> parts = rest;
      parts.push_back(k);
      MarkedClass mc;
      mc.marked_length = k;
      mc.multiplicity = marked_cycles * cycle_index_count(rest, m);
      mc.signature = mode == SignMode::Fermionic ? parity_sign(parts, n) : 1;
      mc.rest = std::move(rest);
      out.push_back(std::move(mc));
    }
  }
  return out;
}

std::vector<Permutation> enumerate_permutations(int n) {
  require_positive(n, "enumerate_permutations");
  if (n > kMaxEnumeratedPermutations)
    throw ResourceLimit("enumerate_permutations is limited to n <= 8, got " + std::to_string(n));
  Permutation perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<Permutation> out;
  out.reserve(factorial(n));
  do {
    out.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

bool is_permutation(std::span<const int> perm) {
  std::vector<bool> seen(perm.size(), false);
  for (int v : perm) {
    if (v < 0 || static_cast<std::size_t>(v) >= perm.size() || seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

CycleType cycle_type_of(std::span<const int> perm) {
  if (perm.empty() || !is_permutation(perm)) throw InvalidArgument("not a permutation");
  std::vector<bool> visited(perm.size(), false);
  std::vector<int> parts;
  for (std::size_t start = 0; start < perm.size(); ++start) {
    if (visited[start]) continue;
    int len = 0;
    for (auto i = start; !visited[i]; i = static_cast<std::size_t>(perm[i])) {
      visited[i] = true;
      ++len;
    }
    parts.push_back(len);
  }
  return CycleType(std::move(parts));
}

}  // namespace cobos
