#pragma once

// Matrix elements <psi(a, P b)| O |psi(a, b)> grouped by the cycle type of P.
// A k-cycle couples 2k coordinates into one closed chain a-b-a-...-a, and the
// integrand factorizes over chains and over spatial dimensions.

#include <cmath>
#include <numeric>
#include <optional>
#include <vector>

#include "cobos/gauss_engine.hpp"
#include "cobos/model_params.hpp"
#include "cobos/perm_classes.hpp"
#include "cobos/scalar.hpp"

namespace cobos {

/// Per-dimension factors of a single k-cycle chain.
template <class Scalar>
struct CycleFactors {
  int length = 1;
  /// Overlap divided by the k-th power of the 1-cycle overlap.
  Scalar overlap;
  /// log(pi^k / sqrt(det A)), the un-normalized overlap.
  Scalar log_raw_overlap;
  /// Kinetic integral over the chain's 2k coordinates, divided by the overlap.
  Scalar kinetic;
  /// Second moment sum over the chain's 2k coordinates, divided by the overlap.
  Scalar potential;
  /// Kinetic ratio of the chain's first a coordinate alone.
  Scalar coordinate_kinetic;
};

inline Permutation cycle_permutation(int k) {
  Permutation perm(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) perm[static_cast<std::size_t>(i)] = (i + 1) % k;
  return perm;
}

template <class Scalar>
CycleFactors<Scalar> cycle_factors(int k, const Scalar& p, const Scalar& q) {
  using std::exp;
  using std::log;
  if (k < 1) throw InvalidArgument("cycle_factors: k must be >= 1");
  const Permutation unit{0};
  const auto single = evaluate_form(build_pair_form<Scalar>(1, p, q, unit));
  const Permutation perm = cycle_permutation(k);
  const auto ev = k == 1 ? single : evaluate_form(build_pair_form<Scalar>(k, p, q, perm));

  CycleFactors<Scalar> f;
  f.length = k;
  f.overlap = exp((Scalar(k) * single.log_det - ev.log_det) / 2);
  f.log_raw_overlap = Scalar(k) * log(pi<Scalar>()) - ev.log_det / 2;
  f.kinetic = ev.kinetic_ratio();
  f.potential = ev.second_moment_ratio;
  f.coordinate_kinetic = ev.kinetic_ratios(0);
  return f;
}

/// Lazily filled cycle factors for one (p, q) at one precision. Not shared
/// between threads.
template <class Scalar>
class CycleFactorTable {
public:
  CycleFactorTable(Scalar p, Scalar q) : p_(std::move(p)), q_(std::move(q)) {}

  const CycleFactors<Scalar>& operator()(int k) {
    if (k < 1) throw InvalidArgument("cycle length must be >= 1");
    if (static_cast<std::size_t>(k) > factors_.size()) factors_.resize(static_cast<std::size_t>(k));
    auto& slot = factors_[static_cast<std::size_t>(k) - 1];
    if (!slot) slot = cycle_factors<Scalar>(k, p_, q_);
    return *slot;
  }

private:
  Scalar p_, q_;
  std::vector<std::optional<CycleFactors<Scalar>>> factors_;
};

/// One class representative across d dimensions, normalized so that the
/// identity class has overlap 1.
template <class Scalar>
struct ClassElement {
  Scalar overlap;
  Scalar kinetic;
  Scalar potential;
};

template <class Scalar>
ClassElement<Scalar> class_element(const CycleType& t, CycleFactorTable<Scalar>& table, int d) {
  using std::pow;
  Scalar per_dim = 1, kin = 0, pot = 0;
  for (int k : t.parts()) {
    const auto& f = table(k);
    per_dim *= f.overlap;
    kin += f.kinetic;
    pot += f.potential;
  }
  ClassElement<Scalar> e;
  e.overlap = pow(per_dim, d);
  e.kinetic = Scalar(d) * e.overlap * kin;
  e.potential = Scalar(d) * e.overlap * pot;
  return e;
}

template <class Scalar>
ClassElement<Scalar> class_element(const CycleType& t, const Scalar& p, const Scalar& q, int d) {
  CycleFactorTable<Scalar> table(p, q);
  return class_element(t, table, d);
}

/// Un-normalized overlap of a class (includes all powers of pi).
template <class Scalar>
Scalar raw_class_overlap(const CycleType& t, CycleFactorTable<Scalar>& table, int d) {
  using std::exp;
  Scalar log_sum = 0;
  for (int k : t.parts()) log_sum += table(k).log_raw_overlap;
  return exp(Scalar(d) * log_sum);
}

/// Un-normalized element with the kinetic operator restricted to the first a
/// coordinate in one direction. `kinetic` is positive; the plain second
/// derivative expectation is its negative.
template <class Scalar>
struct MarkedElement {
  Scalar overlap;
  Scalar kinetic;
};

template <class Scalar>
MarkedElement<Scalar> marked_element(const MarkedClass& mc, CycleFactorTable<Scalar>& table, int d) {
  std::vector<int> parts = mc.rest;
  parts.push_back(mc.marked_length);
  const Scalar overlap = raw_class_overlap(CycleType(parts), table, d);
  return {overlap, overlap * table(mc.marked_length).coordinate_kinetic};
}

/// Signed, multiplicity-weighted sums over permutation classes, normalized by
/// the identity overlap.
template <class Scalar>
struct ElementSums {
  Scalar overlap;
  Scalar kinetic;
  Scalar potential;
  /// Smallest |sum| / sum|terms| over the three sums.
  Scalar condition;
};

template <class Scalar>
ElementSums<Scalar> assemble_sums_at(const ModelParams& params, const Scalar& p) {
  using std::abs;
  using std::min;
  params.validate();
  if (!(p > 0)) throw InvalidArgument("assemble_sums: p must be > 0");
  CycleFactorTable<Scalar> table(p, Scalar(params.q));
  Scalar o = 0, t = 0, v = 0, o_abs = 0, t_abs = 0, v_abs = 0;
  for (const auto& cls : enumerate_classes(params.n, params.mode)) {
    const auto e = class_element(cls.cycle_type, table, params.d);
    const Scalar w = Scalar(cls.signature) * Scalar(cls.multiplicity);
    o += w * e.overlap;
    t += w * e.kinetic;
    v += w * e.potential;
    o_abs += abs(w * e.overlap);
    t_abs += abs(w * e.kinetic);
    v_abs += abs(w * e.potential);
  }
  Scalar cond = min(abs(o) / o_abs, min(abs(t) / t_abs, abs(v) / v_abs));
  return {o, t, v, cond};
}

/// Element sums after precision escalation, reported in binary64.
struct ResolvedSums {
  double overlap = 0;
  double kinetic = 0;
  double potential = 0;
  double kinetic_ratio = 0;    // kinetic / overlap
  double potential_ratio = 0;  // potential / overlap
  double energy = 0;           // (kinetic + potential) / overlap
  double condition = 1;
  Precision precision = Precision::Binary64;
};

/// Evaluates at binary64 and recomputes at doubled precision while the
/// cancellation condition leaves fewer than ~13 correct digits. Throws
/// VanishingNorm when the overlap sum stays indistinguishable from zero at
/// 1024 bits.
ResolvedSums assemble_sums(const ModelParams& params, double p);

#define COBOS_MATRIX_ELEMENTS_EXTERN(S)                                                         \
  extern template CycleFactors<S> cycle_factors<S>(int, const S&, const S&);                    \
  extern template ClassElement<S> class_element<S>(const CycleType&, CycleFactorTable<S>&, int); \
  extern template ElementSums<S> assemble_sums_at<S>(const ModelParams&, const S&);

COBOS_MATRIX_ELEMENTS_EXTERN(double)
COBOS_MATRIX_ELEMENTS_EXTERN(Float128)
COBOS_MATRIX_ELEMENTS_EXTERN(Float256)
COBOS_MATRIX_ELEMENTS_EXTERN(Float512)
COBOS_MATRIX_ELEMENTS_EXTERN(Float1024)

#undef COBOS_MATRIX_ELEMENTS_EXTERN

}  // namespace cobos
