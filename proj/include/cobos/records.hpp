#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cobos/energy_model.hpp"

namespace cobos::io {

/// One CSV row / JSON object. Numeric fields are empty when a grid point
/// failed; mu is empty when undefined.
struct OutputRecord {
  int n = 1;
  int d = 3;
  double q = 0;
  std::optional<double> internal_width;  // empty means infinite (q = 0)
  SignMode mode = SignMode::Fermionic;
  std::optional<double> p_star;
  std::optional<double> width;
  std::optional<double> E;
  std::optional<double> E_per_boson;
  std::optional<double> E_internal_per_boson;
  std::optional<double> E_external_per_boson;
  std::optional<double> E_fermion_ref;
  std::optional<double> E_boson_ref;
  std::optional<double> mu;
  bool converged = false;
  std::optional<double> condition;

  bool operator==(const OutputRecord&) const = default;
};

extern const std::vector<std::string> kCsvColumns;

OutputRecord to_record(const EnergyReport& report);
OutputRecord to_record(const SweepPoint& point);

/// 17 significant digits, '.' decimal point.
std::string format_number(double x);

std::string csv_header();
std::string to_csv_row(const OutputRecord& r);
std::string to_csv(const std::vector<OutputRecord>& records);
std::vector<OutputRecord> parse_csv(const std::string& text);

std::string to_json(const OutputRecord& r);
/// JSON array, one object per record.
std::string to_json(const std::vector<OutputRecord>& records);
std::vector<OutputRecord> parse_json(const std::string& text);

}  // namespace cobos::io
