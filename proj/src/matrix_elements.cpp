#include "cobos/matrix_elements.hpp"

#include <string>

namespace cobos {

#define COBOS_MATRIX_ELEMENTS_INSTANTIATE(S)                                              \
  template CycleFactors<S> cycle_factors<S>(int, const S&, const S&);                     \
  template ClassElement<S> class_element<S>(const CycleType&, CycleFactorTable<S>&, int); \
  template ElementSums<S> assemble_sums_at<S>(const ModelParams&, const S&);

COBOS_MATRIX_ELEMENTS_INSTANTIATE(double)
COBOS_MATRIX_ELEMENTS_INSTANTIATE(Float128)
COBOS_MATRIX_ELEMENTS_INSTANTIATE(Float256)
COBOS_MATRIX_ELEMENTS_INSTANTIATE(Float512)
COBOS_MATRIX_ELEMENTS_INSTANTIATE(Float1024)

ResolvedSums assemble_sums(const ModelParams& params, double p) {
  params.validate();
  if (!(p > 0) || !std::isfinite(p)) throw InvalidArgument("assemble_sums: p must be > 0");

  Precision prec = Precision::Binary64;
  for (;;) {
    std::optional<ResolvedSums> accepted;
    double condition = 0;
    with_precision(prec, [&]<class S>(std::type_identity<S>) {
      const auto sums = assemble_sums_at<S>(params, S(p));
      condition = to_double(sums.condition);
      if (!cancellation_acceptable(sums.condition) || !(sums.overlap > 0)) return;
      ResolvedSums r;
      r.overlap = to_double(sums.overlap);
      r.kinetic = to_double(sums.kinetic);
      r.potential = to_double(sums.potential);
      r.kinetic_ratio = to_double(S(sums.kinetic / sums.overlap));
      r.potential_ratio = to_double(S(sums.potential / sums.overlap));
      r.energy = to_double(S((sums.kinetic + sums.potential) / sums.overlap));
      r.condition = condition;
      r.precision = prec;
      accepted = r;
    });
    if (accepted) return *accepted;
    const auto next = next_precision(prec);
    if (!next)
      throw VanishingNorm("overlap sum vanishes at " + std::to_string(significand_bits(prec)) +
                              " bits (n = " + std::to_string(params.n) + ", q = " +
                              std::to_string(params.q) + ")",
                          condition);
    prec = *next;
  }
}

}  // namespace cobos
