#pragma once

// Published closed forms used by `cobos verify`: matrix element counts for
// marked partitions and the n = 3 element table.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace cobos::golden {

struct Check {
  std::string name;
  bool pass = false;
  std::string detail;
};

/// Marked-partition counts for n = 1..10.
inline constexpr std::array<std::uint64_t, 10> kMarkedCounts{1, 2, 4, 7, 12, 19, 30, 45, 67, 97};

/// One printed row for n = 3 in d = 3: the a_1 cycle length, the remaining
/// cycles, signed factor, overlap and <d^2/da_11^2> (negative).
struct Table2Row {
  int marked_length;
  std::vector<int> rest;
  int factor;
  double overlap;
  double laplacian;
};

std::vector<Table2Row> table2_rows(double p, double q);

std::vector<Check> marked_count_checks();
std::vector<Check> table2_checks(double tol = 1e-12);

}  // namespace cobos::golden
