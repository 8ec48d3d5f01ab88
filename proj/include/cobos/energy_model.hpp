#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cobos/model_params.hpp"
#include "cobos/scalar.hpp"

namespace cobos {

/// Trap frequency fixed by the potential sum x^2 with mass 1/2.
inline constexpr double kTrapOmega = 2.0;

struct EnergyReport {
  ModelParams params;
  double p_star = 0;
  double width = 0;  // 1 / sqrt(p_star)
  double energy = 0;
  double energy_per_boson = 0;
  double internal_per_boson = 0;
  double external_per_boson = 0;
  double fermion_ref = 0;
  double boson_ref = 0;
  std::optional<double> mu;  // undefined for a single pair
  bool converged = false;
  double condition = 1;  // worst cancellation condition met
  Precision precision = Precision::Binary64;
};

/// <phi|H|phi> / <phi|phi> with H = -laplacian + sum(a_i^2 + b_i^2).
double rayleigh_energy(const ModelParams& params, double p);

/// Kinetic energy of the pair factor exp(-q (a - b)^2): 2 d q.
double internal_energy_per_boson(double q, int d);

/// External energy per pair of two uncoupled fermion species, each filling
/// the lowest n oscillator orbitals.
double fermion_reference(int n, int d);

/// Ground energy per pair of a mass-1 point boson in the doubled trap.
double boson_reference(int d);

/// mu with E_ext = mu E_boson + (1 - mu) E_fermion. Not clamped.
double mixing_mu(double external_per_boson, double fermion_ref, double boson_ref);

/// Report at a fixed external parameter p (converged stays false).
EnergyReport evaluate_at(const ModelParams& params, double p);

struct OptimizerSettings {
  double log_p_min = -4 * 2.302585092994046;  // ln 1e-4
  double log_p_max = 4 * 2.302585092994046;   // ln 1e4
  int scan_points = 33;
  double tolerance = 1e-10;  // bracket width in ln p
  int max_iterations = 200;
};

/// Log-spaced scan to bracket the minimum of E(p), then golden-section search
/// on ln p.
EnergyReport optimize_width(const ModelParams& params, const OptimizerSettings& settings = {});

struct SweepPoint {
  ModelParams params;
  std::optional<EnergyReport> report;
  std::string error;               // empty on success
  std::optional<double> condition;  // known for vanishing-norm failures
};

/// One point per (q, n), q outer. Failures are recorded, not thrown.
std::vector<SweepPoint> sweep(std::span<const int> n_list, int d, std::span<const double> q_list,
                              SignMode mode, unsigned jobs = 1);

}  // namespace cobos
