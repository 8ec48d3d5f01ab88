#include "cobos/golden.hpp"

#include <cmath>
#include <numbers>

#include "cobos/matrix_elements.hpp"
#include "cobos/records.hpp"

namespace cobos::golden {

std::vector<Table2Row> table2_rows(double p, double q) {
  using std::pow;
  const double pi9 = pow(std::numbers::pi, 9);
  const double s = p * (p + 2 * q);
  const double mixed = 512 * pow(p, 3) * pow(p + q, 3) * pow(p + 2 * q, 3);
  const double c3 = 4 * p * p + 8 * p * q + 3 * q * q;
  return {
      {1, {1, 1}, 1, pi9 / (512 * pow(s, 4.5)), -pi9 * (p + q) / (512 * pow(s, 4.5))},
      {1, {2}, -1, pi9 / mixed, -pi9 / (512 * pow(p, 3) * pow(p + q, 2) * pow(p + 2 * q, 3))},
      {2, {1}, -2, pi9 / mixed,
       -pi9 * (2 * p * p + 4 * p * q + q * q) / (1024 * pow(p, 3) * pow(p + q, 4) * pow(p + 2 * q, 3))},
      {3, {}, 2, pi9 / (8 * pow(s, 1.5) * pow(c3, 3)),
       -pi9 * (4 * pow(p, 3) + 12 * p * p * q + 9 * p * q * q + pow(q, 3)) / (8 * pow(s, 1.5) * pow(c3, 4))},
  };
}

std::vector<Check> marked_count_checks() {
  std::vector<Check> out;
  for (int n = 1; n <= static_cast<int>(kMarkedCounts.size()); ++n) {
    const auto got = count_marked_partitions(n);
    const auto want = kMarkedCounts[static_cast<std::size_t>(n) - 1];
    out.push_back({"marked count n=" + std::to_string(n), got == want,
                   std::to_string(got) + " (expected " + std::to_string(want) + ")"});
  }
  return out;
}

std::vector<Check> table2_checks(double tol) {
  std::vector<Check> out;
  const double points[][2] = {{1, 1}, {2, 0.5}, {1.0 / 3, 1}};
  for (const auto& pt : points) {
    const double p = pt[0], q = pt[1];
    CycleFactorTable<double> table(p, q);
    const auto marked = enumerate_marked_classes(3, SignMode::Fermionic);
    for (const auto& row : table2_rows(p, q)) {
      Check c;
      c.name = "n=3 element a1 in " + std::to_string(row.marked_length) + "-cycle at p=" +
               io::format_number(p) + " q=" + io::format_number(q);
      for (const auto& mc : marked) {
        if (mc.marked_length != row.marked_length || mc.rest != row.rest) continue;
        const auto e = marked_element(mc, table, 3);
        const int factor = mc.signature * static_cast<int>(mc.multiplicity);
        const double d_overlap = std::abs(e.overlap - row.overlap) / std::abs(row.overlap);
        const double d_kinetic = std::abs(-e.kinetic - row.laplacian) / std::abs(row.laplacian);
        c.pass = factor == row.factor && d_overlap <= tol && d_kinetic <= tol;
        c.detail = "factor " + std::to_string(factor) + ", overlap rel " + io::format_number(d_overlap) +
                   ", kinetic rel " + io::format_number(d_kinetic);
      }
      out.push_back(c);
    }
  }
  return out;
}

}  // namespace cobos::golden
