#include "cobos/records.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

#include <json.hpp>

#include "cobos/errors.hpp"

namespace cobos::io {

const std::vector<std::string> kCsvColumns = {
    "n",     "d", "q", "internal_width", "mode",           "p_star", "width",
    "E",     "E_per_boson", "E_internal_per_boson", "E_external_per_boson", "E_fermion_ref",
    "E_boson_ref", "mu", "converged", "condition"};

namespace {

using nlohmann::ordered_json;

std::optional<double> internal_width_of(double q) {
  if (q == 0) return std::nullopt;
  return 1.0 / std::sqrt(q);
}

std::string opt(const std::optional<double>& x) { return x ? format_number(*x) : std::string{}; }

std::optional<double> parse_opt(const std::string& s) {
  if (s.empty()) return std::nullopt;
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size()) throw InvalidArgument("bad numeric field '" + s + "'");
  return v;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

ordered_json json_opt(const std::optional<double>& x) { return x ? ordered_json(*x) : ordered_json(nullptr); }

std::optional<double> from_json_opt(const ordered_json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<double>();
}

ordered_json to_json_object(const OutputRecord& r) {
  ordered_json j;
  j["n"] = r.n;
  j["d"] = r.d;
  j["q"] = r.q;
  j["internal_width"] = r.internal_width ? ordered_json(*r.internal_width) : ordered_json("inf");
  j["mode"] = to_string(r.mode);
  j["p_star"] = json_opt(r.p_star);
  j["width"] = json_opt(r.width);
  j["E"] = json_opt(r.E);
  j["E_per_boson"] = json_opt(r.E_per_boson);
  j["E_internal_per_boson"] = json_opt(r.E_internal_per_boson);
  j["E_external_per_boson"] = json_opt(r.E_external_per_boson);
  j["E_fermion_ref"] = json_opt(r.E_fermion_ref);
  j["E_boson_ref"] = json_opt(r.E_boson_ref);
  j["mu"] = json_opt(r.mu);
  j["converged"] = r.converged;
  j["condition"] = json_opt(r.condition);
  return j;
}

OutputRecord from_json_object(const ordered_json& j) {
  OutputRecord r;
  r.n = j.at("n").get<int>();
  r.d = j.at("d").get<int>();
  r.q = j.at("q").get<double>();
  const auto& w = j.at("internal_width");
  r.internal_width = w.is_string() ? std::nullopt : std::optional<double>(w.get<double>());
  r.mode = parse_sign_mode(j.at("mode").get<std::string>());
  r.p_star = from_json_opt(j.at("p_star"));
  r.width = from_json_opt(j.at("width"));
  r.E = from_json_opt(j.at("E"));
  r.E_per_boson = from_json_opt(j.at("E_per_boson"));
  r.E_internal_per_boson = from_json_opt(j.at("E_internal_per_boson"));
  r.E_external_per_boson = from_json_opt(j.at("E_external_per_boson"));
  r.E_fermion_ref = from_json_opt(j.at("E_fermion_ref"));
  r.E_boson_ref = from_json_opt(j.at("E_boson_ref"));
  r.mu = from_json_opt(j.at("mu"));
  r.converged = j.at("converged").get<bool>();
  r.condition = from_json_opt(j.at("condition"));
  return r;
}

}  // namespace

std::string format_number(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (std::isnan(x)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

OutputRecord to_record(const EnergyReport& rep) {
  OutputRecord r;
  r.n = rep.params.n;
  r.d = rep.params.d;
  r.q = rep.params.q;
  r.internal_width = internal_width_of(rep.params.q);
  r.mode = rep.params.mode;
  r.p_star = rep.p_star;
  r.width = rep.width;
  r.E = rep.energy;
  r.E_per_boson = rep.energy_per_boson;
  r.E_internal_per_boson = rep.internal_per_boson;
  r.E_external_per_boson = rep.external_per_boson;
  r.E_fermion_ref = rep.fermion_ref;
  r.E_boson_ref = rep.boson_ref;
  r.mu = rep.mu;
  r.converged = rep.converged;
  r.condition = rep.condition;
  return r;
}

OutputRecord to_record(const SweepPoint& pt) {
  if (pt.report) return to_record(*pt.report);
  OutputRecord r;
  r.n = pt.params.n;
  r.d = pt.params.d;
  r.q = pt.params.q;
  r.internal_width = internal_width_of(pt.params.q);
  r.mode = pt.params.mode;
  r.condition = pt.condition;
  return r;
}

std::string csv_header() {
  std::string s;
  for (std::size_t i = 0; i < kCsvColumns.size(); ++i) {
    if (i) s += ',';
    s += kCsvColumns[i];
  }
  return s;
}

std::string to_csv_row(const OutputRecord& r) {
  std::ostringstream os;
  os << r.n << ',' << r.d << ',' << format_number(r.q) << ','
     << (r.internal_width ? format_number(*r.internal_width) : "inf") << ',' << to_string(r.mode) << ','
     << opt(r.p_star) << ',' << opt(r.width) << ',' << opt(r.E) << ',' << opt(r.E_per_boson) << ','
     << opt(r.E_internal_per_boson) << ',' << opt(r.E_external_per_boson) << ',' << opt(r.E_fermion_ref)
     << ',' << opt(r.E_boson_ref) << ',' << opt(r.mu) << ',' << (r.converged ? "true" : "false") << ','
     << opt(r.condition);
  return os.str();
}

std::string to_csv(const std::vector<OutputRecord>& records) {
  std::string s = csv_header() + "\n";
  for (const auto& r : records) s += to_csv_row(r) + "\n";
  return s;
}

std::vector<OutputRecord> parse_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || split(line, ',') != kCsvColumns)
    throw InvalidArgument("CSV header does not match the record layout");
  std::vector<OutputRecord> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split(line, ',');
    if (f.size() != kCsvColumns.size()) throw InvalidArgument("CSV row has wrong field count");
    OutputRecord r;
    r.n = std::stoi(f[0]);
    r.d = std::stoi(f[1]);
    r.q = *parse_opt(f[2]);
    r.internal_width = f[3] == "inf" ? std::nullopt : parse_opt(f[3]);
    r.mode = parse_sign_mode(f[4]);
    r.p_star = parse_opt(f[5]);
    r.width = parse_opt(f[6]);
    r.E = parse_opt(f[7]);
    r.E_per_boson = parse_opt(f[8]);
    r.E_internal_per_boson = parse_opt(f[9]);
    r.E_external_per_boson = parse_opt(f[10]);
    r.E_fermion_ref = parse_opt(f[11]);
    r.E_boson_ref = parse_opt(f[12]);
    r.mu = parse_opt(f[13]);
    if (f[14] != "true" && f[14] != "false") throw InvalidArgument("bad converged field");
    r.converged = f[14] == "true";
    r.condition = parse_opt(f[15]);
    out.push_back(r);
  }
  return out;
}

std::string to_json(const OutputRecord& r) { return to_json_object(r).dump(2); }

std::string to_json(const std::vector<OutputRecord>& records) {
  ordered_json arr = ordered_json::array();
  for (const auto& r : records) arr.push_back(to_json_object(r));
  return arr.dump(2);
}

std::vector<OutputRecord> parse_json(const std::string& text) {
  const auto j = ordered_json::parse(text);
  std::vector<OutputRecord> out;
  if (j.is_array()) {
    for (const auto& item : j) out.push_back(from_json_object(item));
  } else {
    out.push_back(from_json_object(j));
  }
  return out;
}

}  // namespace cobos::io
