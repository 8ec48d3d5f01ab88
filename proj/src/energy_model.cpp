#include "cobos/energy_model.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include "cobos/errors.hpp"
#include "cobos/matrix_elements.hpp"

namespace cobos {

namespace {

constexpr double kInvGolden = 0.6180339887498949;  // (sqrt(5) - 1) / 2

std::uint64_t binomial(int n, int k) {
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return r;
}

// Splits E/n into external + internal with both identities exact in binary64:
// per_boson - external == internal and external + internal == per_boson.
// Snaps per_boson to a grid (<= 2 ulp) that both operands lie on.
void fill_energies(EnergyReport& r, double energy) {
  const auto& prm = r.params;
  r.energy = energy;
  r.internal_per_boson = internal_energy_per_boson(prm.q, prm.d);
  double per_boson = energy / prm.n;
  const double internal = r.internal_per_boson;
  const bool exact = per_boson - (per_boson - internal) == internal &&
                     (per_boson - internal) + internal == per_boson;
  const double scale = std::max(std::abs(per_boson), std::abs(internal));
  if (!exact && scale > 0 && std::isfinite(scale)) {
    int e = 0;
    std::frexp(scale, &e);
    const double grid = std::ldexp(1.0, e - std::numeric_limits<double>::digits + 1);
    per_boson = std::nearbyint(per_boson / grid) * grid;
  }
  r.energy_per_boson = per_boson;
  r.external_per_boson = per_boson - r.internal_per_boson;
  r.fermion_ref = fermion_reference(prm.n, prm.d);
  r.boson_ref = boson_reference(prm.d);
  if (prm.n >= 2) r.mu = mixing_mu(r.external_per_boson, r.fermion_ref, r.boson_ref);
}

}  // namespace

double rayleigh_energy(const ModelParams& params, double p) { return assemble_sums(params, p).energy; }

double internal_energy_per_boson(double q, int d) {
  if (!(q >= 0)) throw InvalidArgument("internal energy: q must be >= 0");
  return 2.0 * d * q;
}

double fermion_reference(int n, int d) {
  if (n < 1) throw InvalidArgument("fermion_reference: n must be >= 1");
  if (d < 1 || d > 3) throw InvalidArgument("fermion_reference: d must be 1, 2 or 3");
  std::uint64_t remaining = static_cast<std::uint64_t>(n);
  double filled = 0;
  for (int shell = 0; remaining > 0; ++shell) {
    const std::uint64_t take = std::min(binomial(shell + d - 1, d - 1), remaining);
    filled += static_cast<double>(take) * kTrapOmega * (shell + 0.5 * d);
    remaining -= take;
  }
  return 2.0 * filled / n;
}

double boson_reference(int d) {
  if (d < 1 || d > 3) throw InvalidArgument("boson_reference: d must be 1, 2 or 3");
  // Pair of mass 1 in the trap 2 R^2: frequency 2, ground energy d.
  return 0.5 * kTrapOmega * d;
}

double mixing_mu(double external_per_boson, double fermion_ref, double boson_ref) {
  const double span = fermion_ref - boson_ref;
  if (span == 0 || !std::isfinite(span))
    throw UndefinedMu("mixing parameter undefined: fermion and boson references coincide");
  return (fermion_ref - external_per_boson) / span;
}

EnergyReport evaluate_at(const ModelParams& params, double p) {
  params.validate();
  const auto sums = assemble_sums(params, p);
  EnergyReport r;
  r.params = params;
  r.p_star = p;
  r.width = 1.0 / std::sqrt(p);
  r.condition = sums.condition;
  r.precision = sums.precision;
  r.converged = false;
  fill_energies(r, sums.energy);
  return r;
}

EnergyReport optimize_width(const ModelParams& params, const OptimizerSettings& settings) {
  params.validate();
  if (settings.scan_points < 3) throw InvalidArgument("optimize_width: need at least 3 scan points");
  if (params.mode == SignMode::Fermionic && params.q == 0 && params.n >= 2) {
    // Antisymmetrization annihilates the product state; surfaces as VanishingNorm.
    assemble_sums(params, 0.5);
    throw VanishingNorm("antisymmetrized state vanishes at q = 0", 0.0);
  }

  const double inf = std::numeric_limits<double>::infinity();
  double worst_condition = 1;
  Precision worst_precision = Precision::Binary64;
  auto energy_at = [&](double log_p, bool track) {
    try {
      const auto s = assemble_sums(params, std::exp(log_p));
      if (track) {
        worst_condition = std::min(worst_condition, s.condition);
        if (significand_bits(s.precision) > significand_bits(worst_precision))
          worst_precision = s.precision;
      }
      return s.energy;
    } catch (const VanishingNorm&) {
      return inf;
    } catch (const DivergentIntegral&) {
      return inf;
    }
  };

  const int m = settings.scan_points;
  std::vector<double> xs(static_cast<std::size_t>(m)), fs(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    xs[i] = settings.log_p_min + (settings.log_p_max - settings.log_p_min) * i / (m - 1);
    fs[i] = energy_at(xs[i], false);
  }
  const auto best = static_cast<int>(std::min_element(fs.begin(), fs.end()) - fs.begin());
  if (!std::isfinite(fs[best]))
    throw VanishingNorm("energy undefined at every scan point", 0.0);
  if (best == 0 || best == m - 1)
    throw NoBracket("energy minimum not bracketed in p in [" + std::to_string(std::exp(settings.log_p_min)) +
                    ", " + std::to_string(std::exp(settings.log_p_max)) + "]");

  double a = xs[best - 1], b = xs[best + 1];
  double c = b - kInvGolden * (b - a), d = a + kInvGolden * (b - a);
  double fc = energy_at(c, true), fd = energy_at(d, true);
  int it = 0;
  while (b - a > settings.tolerance && it++ < settings.max_iterations) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvGolden * (b - a);
      fc = energy_at(c, true);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvGolden * (b - a);
      fd = energy_at(d, true);
    }
  }
  const double log_p_star = fc < fd ? c : d;

  EnergyReport r = evaluate_at(params, std::exp(log_p_star));
  r.converged = b - a <= settings.tolerance;
  r.condition = std::min(worst_condition, r.condition);
  if (significand_bits(worst_precision) > significand_bits(r.precision)) r.precision = worst_precision;
  return r;
}

std::vector<SweepPoint> sweep(std::span<const int> n_list, int d, std::span<const double> q_list,
                              SignMode mode, unsigned jobs) {
  std::vector<SweepPoint> points;
  for (double q : q_list)
    for (int n : n_list) points.push_back({ModelParams{n, d, q, mode}, std::nullopt, {}, std::nullopt});

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < points.size(); i = next++) {
      auto& pt = points[i];
      try {
        pt.report = optimize_width(pt.params);
        pt.condition = pt.report->condition;
      } catch (const VanishingNorm& e) {
        pt.error = e.what();
        pt.condition = e.condition();
      } catch (const std::exception& e) {
        pt.error = e.what();
      }
    }
  };
  const unsigned threads = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(points.size())));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  return points;
}

}  // namespace cobos
