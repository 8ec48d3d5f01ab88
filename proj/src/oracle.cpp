#include "cobos/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <random>

#include "cobos/errors.hpp"
#include "cobos/gauss_engine.hpp"
#include "cobos/matrix_elements.hpp"

namespace cobos {

namespace {

int inversion_sign(const Permutation& perm) {
  int inversions = 0;
  for (std::size_t i = 0; i < perm.size(); ++i)
    for (std::size_t j = i + 1; j < perm.size(); ++j)
      if (perm[i] > perm[j]) ++inversions;
  return inversions % 2 == 0 ? 1 : -1;
}

template <class S>
struct Terms {
  std::vector<int> parity;
  std::vector<S> overlap, kinetic, potential;
};

template <class S>
Terms<S> permutation_terms(const ModelParams& params, const std::vector<Permutation>& perms, double p) {
  const S ps(p), qs(params.q), d(params.d);
  const int n = params.n;
  Permutation id(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) id[static_cast<std::size_t>(i)] = i;
  const S log_det_id = evaluate_form(build_pair_form<S>(n, ps, qs, id)).log_det;

  Terms<S> t;
  for (const auto& perm : perms) {
    const auto ev = evaluate_form(build_pair_form<S>(n, ps, qs, perm));
    using std::exp;
    const S o = exp(d * (log_det_id - ev.log_det) / 2);
    t.parity.push_back(inversion_sign(perm));
    t.overlap.push_back(o);
    t.kinetic.push_back(d * o * ev.kinetic_ratio());
    t.potential.push_back(d * o * ev.second_moment_ratio);
  }
  return t;
}

void check_size(const ModelParams& params) {
  params.validate();
  if (params.n > kOracleMaxN)
    throw ResourceLimit("oracle is limited to n <= " + std::to_string(kOracleMaxN));
}

double relative_delta(double got, double ref) {
  if (got == ref) return 0;
  const double scale = std::max(std::abs(ref), std::numeric_limits<double>::min());
  return std::abs(got - ref) / scale;
}

}  // namespace

std::vector<PermutationTerm> brute_force_terms(const ModelParams& params, double p) {
  check_size(params);
  const auto perms = enumerate_permutations(params.n);
  const auto t = permutation_terms<double>(params, perms, p);
  std::vector<PermutationTerm> out;
  for (std::size_t i = 0; i < perms.size(); ++i)
    out.push_back({perms[i], t.parity[i], t.overlap[i], t.kinetic[i], t.potential[i]});
  return out;
}

double OracleReport::max_delta() const {
  return std::max({delta_overlap, delta_kinetic, delta_potential});
}

OracleReport brute_force_sums(const ModelParams& params, double p, double tol) {
  check_size(params);
  if (!(p > 0)) throw InvalidArgument("brute_force_sums: p must be > 0");
  const auto perms = enumerate_permutations(params.n);

  OracleReport r;
  for (Precision prec = Precision::Binary64;;) {
    bool accepted = false;
    with_precision(prec, [&]<class S>(std::type_identity<S>) {
      using std::abs;
      const auto t = permutation_terms<S>(params, perms, p);
      S o = 0, k = 0, v = 0, o_abs = 0, k_abs = 0, v_abs = 0;
      for (std::size_t i = 0; i < perms.size(); ++i) {
        const S sign(params.mode == SignMode::Fermionic ? t.parity[i] : 1);
        o += sign * t.overlap[i];
        k += sign * t.kinetic[i];
        v += sign * t.potential[i];
        o_abs += t.overlap[i];
        k_abs += t.kinetic[i];
        v_abs += t.potential[i];
      }
      using std::min;
      const S cond = min(abs(o) / o_abs, min(abs(k) / k_abs, abs(v) / v_abs));
      r.condition = to_double(cond);
      r.precision = prec;
      if (!cancellation_acceptable(cond) || !(o > 0)) return;
      r.overlap = to_double(o);
      r.kinetic = to_double(k);
      r.potential = to_double(v);
      accepted = true;
    });
    if (accepted) break;
    const auto next = next_precision(prec);
    if (!next) throw VanishingNorm("oracle overlap sum vanishes at 1024 bits", r.condition);
    prec = *next;
  }

  const auto engine = assemble_sums(params, p);
  r.delta_overlap = relative_delta(engine.overlap, r.overlap);
  r.delta_kinetic = relative_delta(engine.kinetic, r.kinetic);
  r.delta_potential = relative_delta(engine.potential, r.potential);
  r.pass = std::isfinite(r.max_delta()) && r.max_delta() <= tol;
  return r;
}

double n1_closed_form(double p, double q, int d) {
  if (!(p > 0) || q < 0) throw InvalidArgument("n1_closed_form: need p > 0 and q >= 0");
  return d * (2 * (p + q) + 1 / (4 * p) + 1 / (4 * (p + 2 * q)));
}

bool CrossCheckSummary::pass() const {
  return std::all_of(entries.begin(), entries.end(), [](const auto& e) { return e.failures == 0; });
}

CrossCheckSummary cross_check(int n_max, int trials, double tol, std::uint64_t seed) {
  if (n_max < 1) throw InvalidArgument("cross_check: n_max must be >= 1");
  if (n_max > kOracleMaxN)
    throw ResourceLimit("cross_check: n_max is limited to " + std::to_string(kOracleMaxN));
  if (trials < 0) throw InvalidArgument("cross_check: trials must be >= 0");

  CrossCheckSummary summary;
  if (trials == 0) return summary;

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> draw(0.1, 3.0);
  for (int n = 1; n <= n_max; ++n) {
    std::vector<std::pair<double, double>> pq(static_cast<std::size_t>(trials));
    for (auto& [p, q] : pq) {
      p = draw(rng);
      q = draw(rng);
    }
    for (SignMode mode : {SignMode::Fermionic, SignMode::Bosonic}) {
      CrossCheckEntry entry{n, mode, trials, 0, 0.0};
      for (const auto& [p, q] : pq) {
        CrossCheckTrial trial{n, mode, p, q, 0, false, {}};
        try {
          const auto r = brute_force_sums(ModelParams{n, 3, q, mode}, p, tol);
          trial.delta = r.max_delta();
          trial.pass = r.pass;
        } catch (const std::exception& e) {
          trial.delta = std::numeric_limits<double>::infinity();
          trial.error = e.what();
        }
        if (!trial.pass) ++entry.failures;
        entry.max_delta = std::max(entry.max_delta, trial.delta);
        summary.trials.push_back(std::move(trial));
      }
      summary.entries.push_back(entry);
    }
  }
  return summary;
}

}  // namespace cobos
