#include "cobos/gauss_engine.hpp"

namespace cobos {

#define COBOS_GAUSS_ENGINE_INSTANTIATE(S)                                                        \
  template S gauss_moment_1d<S>(const S&, const S&, const S&, const S&, const S&, const S&);     \
  template PairForm<S> build_pair_form<S>(int, const S&, const S&, std::span<const int>);        \
  template FormEvaluation<S> evaluate_form<S>(const PairForm<S>&);                               \
  template S overlap_integral<S>(const PairForm<S>&);                                            \
  template S second_moment_sum<S>(const PairForm<S>&);                                           \
  template S kinetic_bilinear<S>(const PairForm<S>&);                                            \
  template S kinetic_coordinate<S>(const PairForm<S>&, Eigen::Index);

COBOS_GAUSS_ENGINE_INSTANTIATE(double)
COBOS_GAUSS_ENGINE_INSTANTIATE(Float128)
COBOS_GAUSS_ENGINE_INSTANTIATE(Float256)
COBOS_GAUSS_ENGINE_INSTANTIATE(Float512)
COBOS_GAUSS_ENGINE_INSTANTIATE(Float1024)

}  // namespace cobos
