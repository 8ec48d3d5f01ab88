#include "cli.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "cobos/energy_model.hpp"
#include "cobos/errors.hpp"
#include "cobos/golden.hpp"
#include "cobos/matrix_elements.hpp"
#include "cobos/oracle.hpp"
#include "cobos/perm_classes.hpp"
#include "cobos/records.hpp"

namespace cobos::cli {

namespace {

using io::format_number;
using nlohmann::ordered_json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

double parse_double(const std::string& s) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw UsageError("not a number: '" + s + "'");
  }
  if (used != s.size()) throw UsageError("not a number: '" + s + "'");
  return v;
}

int parse_int(const std::string& s) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(s, &used);
  } catch (const std::exception&) {
    throw UsageError("not an integer: '" + s + "'");
  }
  if (used != s.size()) throw UsageError("not an integer: '" + s + "'");
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep))
    if (!item.empty()) out.push_back(item);
  return out;
}

// "1..8", "1,2,5" or "4".
std::vector<int> parse_n_list(const std::string& s) {
  if (const auto dots = s.find(".."); dots != std::string::npos) {
    const int lo = parse_int(s.substr(0, dots)), hi = parse_int(s.substr(dots + 2));
    if (lo > hi) throw UsageError("empty n range '" + s + "'");
    std::vector<int> out;
    for (int n = lo; n <= hi; ++n) out.push_back(n);
    return out;
  }
  std::vector<int> out;
  for (const auto& item : split(s, ',')) out.push_back(parse_int(item));
  if (out.empty()) throw UsageError("empty n list");
  return out;
}

std::vector<double> parse_double_list(const std::string& s) {
  std::vector<double> out;
  for (const auto& item : split(s, ',')) out.push_back(parse_double(item));
  return out;
}

double q_from_width(double w) {
  if (std::isinf(w) && w > 0) return 0;
  if (!(w > 0)) throw UsageError("internal width must be > 0");
  return 1.0 / (w * w);
}

void require_format(const std::string& format) {
  if (format != "csv" && format != "json") throw UsageError("format must be csv or json");
}

std::string cycle_label(const std::vector<int>& parts) {
  std::string s = "[";
  for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? " " : "") + std::to_string(parts[i]);
  return s + "]";
}

// Minimal table emitter: CSV with header or JSON array of objects.
class Table {
public:
  explicit Table(std::vector<std::string> columns) : columns_(std::move(columns)) {}

  void add(std::vector<ordered_json> row) { rows_.push_back(std::move(row)); }

  void write(std::ostream& out, const std::string& format) const {
    if (format == "json") {
      ordered_json arr = ordered_json::array();
      for (const auto& row : rows_) {
        ordered_json obj;
        for (std::size_t i = 0; i < columns_.size(); ++i) obj[columns_[i]] = row[i];
        arr.push_back(obj);
      }
      out << arr.dump(2) << '\n';
      return;
    }
    for (std::size_t i = 0; i < columns_.size(); ++i) out << (i ? "," : "") << columns_[i];
    out << '\n';
    for (const auto& row : rows_) {
      for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << cell(row[i]);
      out << '\n';
    }
  }

private:
  static std::string cell(const ordered_json& v) {
    if (v.is_null()) return {};
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_float()) return format_number(v.get<double>());
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    return v.dump();
  }

  std::vector<std::string> columns_;
  std::vector<std::vector<ordered_json>> rows_;
};

struct Options {
  // shared
  std::string format = "csv";
  std::string mode = "fermionic";
  int d = 3;
  // classes / elements / energy
  int n = 0;
  bool marked = false;
  bool raw = false;
  double p = 0;
  double q = 0;
  double internal_width = 0;
  bool optimize = false;
  // sweep
  std::string n_range;
  std::string q_list;
  std::string width_list;
  std::string out_path;
  unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
  // verify
  int n_max = kOracleMaxN;
  int trials = 20;
  double tol = 1e-10;
  std::uint64_t seed = 1;
};

int cmd_classes(const Options& o, std::ostream& out) {
  require_format(o.format);
  if (o.n < 1) throw UsageError("--n must be >= 1");
  if (o.marked) {
    Table t({"n", "marked_count"});
    for (int n = 1; n <= o.n; ++n) t.add({n, count_marked_partitions(n)});
    t.write(out, o.format);
    return kSuccess;
  }
  Table t({"cycle_type", "multiplicity", "signature"});
  for (const auto& c : enumerate_classes(o.n, parse_sign_mode(o.mode)))
    t.add({cycle_label(c.cycle_type.parts()), c.multiplicity, c.signature});
  t.write(out, o.format);
  return kSuccess;
}

ModelParams model_from(const Options& o, const CLI::App& cmd) {
  ModelParams prm;
  prm.n = o.n;
  prm.d = o.d;
  prm.mode = parse_sign_mode(o.mode);
  prm.q = cmd.count("--internal-width") ? q_from_width(o.internal_width) : o.q;
  prm.validate();
  return prm;
}

int cmd_elements(const Options& o, const CLI::App& cmd, std::ostream& out) {
  require_format(o.format);
  const ModelParams prm = model_from(o, cmd);
  if (!(o.p > 0)) throw UsageError("--p must be > 0");
  CycleFactorTable<double> table(o.p, prm.q);

  if (o.raw) {
    Table t({"marked_cycle", "rest", "factor", "overlap", "laplacian_a1", "kinetic_a1", "kinetic_ratio_a1"});
    for (const auto& mc : enumerate_marked_classes(prm.n, prm.mode)) {
      const auto e = marked_element(mc, table, prm.d);
      t.add({mc.marked_length, cycle_label(mc.rest), mc.signature * static_cast<long long>(mc.multiplicity),
             e.overlap, -e.kinetic, e.kinetic, e.kinetic / e.overlap});
    }
    t.write(out, o.format);
    return kSuccess;
  }

  Table t({"cycle_type", "multiplicity", "signature", "factor", "overlap", "kinetic", "potential",
           "kinetic_ratio", "potential_ratio", "coordinate_kinetic_ratios"});
  for (const auto& c : enumerate_classes(prm.n, prm.mode)) {
    const auto e = class_element(c.cycle_type, table, prm.d);
    std::string coords;
    int last = 0;
    for (int k : c.cycle_type.parts()) {
      if (k == last) continue;
      last = k;
      coords += (coords.empty() ? "" : " ") + std::to_string(k) + ":" + format_number(table(k).coordinate_kinetic);
    }
    t.add({cycle_label(c.cycle_type.parts()), c.multiplicity, c.signature,
           c.signature * static_cast<long long>(c.multiplicity), e.overlap, e.kinetic, e.potential,
           e.kinetic / (prm.d * e.overlap), e.potential / (prm.d * e.overlap), coords});
  }
  const auto sums = assemble_sums(prm, o.p);
  t.add({"sum", factorial(prm.n), nullptr, nullptr, sums.overlap, sums.kinetic, sums.potential,
         sums.kinetic_ratio / prm.d, sums.potential_ratio / prm.d, nullptr});
  t.write(out, o.format);
  return kSuccess;
}

void write_records(std::ostream& out, const std::vector<io::OutputRecord>& records, const std::string& format,
                   bool single) {
  if (format == "json")
    out << (single ? io::to_json(records.front()) : io::to_json(records)) << '\n';
  else
    out << io::to_csv(records);
}

int cmd_energy(const Options& o, const CLI::App& cmd, std::ostream& out) {
  require_format(o.format);
  const bool fixed = cmd.count("--p") > 0;
  if (fixed == o.optimize) throw UsageError("give exactly one of --p or --optimize");
  const ModelParams prm = model_from(o, cmd);
  if (fixed && !(o.p > 0)) throw UsageError("--p must be > 0");
  const EnergyReport rep = fixed ? evaluate_at(prm, o.p) : optimize_width(prm);
  write_records(out, {io::to_record(rep)}, o.format, true);
  return kSuccess;
}

int cmd_sweep(const Options& o, const CLI::App& cmd, std::ostream& out, std::ostream& err) {
  require_format(o.format);
  const auto ns = parse_n_list(o.n_range);
  const bool by_width = cmd.count("--width") > 0;
  if (by_width == (cmd.count("--q") > 0)) throw UsageError("give exactly one of --q or --width");
  std::vector<double> qs;
  if (by_width) {
    for (double w : parse_double_list(o.width_list)) qs.push_back(q_from_width(w));
  } else {
    qs = parse_double_list(o.q_list);
  }
  if (qs.empty()) throw UsageError("empty coupling list");
  const SignMode mode = parse_sign_mode(o.mode);
  for (int n : ns) ModelParams{n, o.d, 0, mode}.validate();
  for (double q : qs) ModelParams{1, o.d, q, mode}.validate();
  if (o.jobs < 1) throw UsageError("--jobs must be >= 1");

  std::ofstream file;
  if (!o.out_path.empty()) {
    file.open(o.out_path, std::ios::binary | std::ios::trunc);
    if (!file) throw UsageError("cannot write to '" + o.out_path + "'");
  }

  const auto points = sweep(ns, o.d, qs, mode, o.jobs);
  std::vector<io::OutputRecord> records;
  for (const auto& pt : points) {
    if (!pt.error.empty())
      err << "n=" << pt.params.n << " q=" << format_number(pt.params.q) << ": " << pt.error << '\n';
    records.push_back(io::to_record(pt));
  }
  std::ostream& dest = o.out_path.empty() ? out : static_cast<std::ostream&>(file);
  write_records(dest, records, o.format, false);
  if (file.is_open()) {
    file.close();
    if (!file) throw UsageError("failed writing '" + o.out_path + "'");
  }
  return kSuccess;
}

int cmd_verify(const Options& o, std::ostream& out) {
  if (o.n_max < 1 || o.n_max > kOracleMaxN)
    throw UsageError("--n-max must be in 1.." + std::to_string(kOracleMaxN));
  if (o.trials < 0) throw UsageError("--trials must be >= 0");
  if (!(o.tol > 0)) throw UsageError("--tol must be > 0");

  bool ok = true;
  auto report = [&](const golden::Check& c) {
    ok = ok && c.pass;
    out << (c.pass ? "PASS " : "FAIL ") << c.name << ": " << c.detail << '\n';
  };
  for (const auto& c : golden::marked_count_checks()) report(c);
  for (const auto& c : golden::table2_checks()) report(c);

  const auto summary = cross_check(o.n_max, o.trials, o.tol, o.seed);
  for (const auto& t : summary.trials)
    if (!t.pass)
      out << "FAIL oracle trial n=" << t.n << ' ' << to_string(t.mode) << " p=" << format_number(t.p)
          << " q=" << format_number(t.q) << " delta=" << format_number(t.delta)
          << (t.error.empty() ? "" : " (" + t.error + ")") << '\n';
  for (const auto& e : summary.entries)
    report({"oracle n=" + std::to_string(e.n) + " " + to_string(e.mode), e.failures == 0,
            std::to_string(e.trials) + " trials, max relative delta " + format_number(e.max_delta)});
  out << "oracle trials: " << summary.trials.size() << " (seed " << o.seed << ", tol " << format_number(o.tol)
      << ")\n";
  out << (ok ? "verify: all checks passed" : "verify: FAILED") << '\n';
  return ok ? kSuccess : kVerificationFailed;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Variational energies of composite bosons in a harmonic trap"};
  app.require_subcommand(1);
  Options o;

  auto add_mode = [&](CLI::App* c) {
    c->add_option("--mode", o.mode, "fermionic or bosonic")->check(CLI::IsMember({"fermionic", "bosonic"}));
  };
  auto add_format = [&](CLI::App* c) {
    c->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  };
  auto add_coupling = [&](CLI::App* c) {
    auto* q = c->add_option("--q", o.q, "internal strength q (width 1/sqrt(q))");
    auto* w = c->add_option("--internal-width", o.internal_width, "internal width 1/sqrt(q)");
    q->excludes(w);
  };

  auto* classes = app.add_subcommand("classes", "permutation classes by cycle type");
  classes->add_option("--n", o.n, "pairs per species")->required();
  classes->add_flag("--marked", o.marked, "marked-partition counts for 1..n");
  add_mode(classes);
  add_format(classes);

  auto* elements = app.add_subcommand("elements", "per-class matrix elements");
  elements->add_option("--n", o.n)->required();
  elements->add_option("--p", o.p, "external parameter p")->required();
  elements->add_option("--d", o.d, "dimension");
  elements->add_flag("--raw", o.raw, "un-normalized elements with the kinetic operator on a_1");
  add_coupling(elements);
  add_mode(elements);
  add_format(elements);

  auto* energy = app.add_subcommand("energy", "energy at fixed or optimized p");
  energy->add_option("--n", o.n)->required();
  energy->add_option("--d", o.d);
  auto* p_opt = energy->add_option("--p", o.p);
  energy->add_flag("--optimize", o.optimize)->excludes(p_opt);
  add_coupling(energy);
  add_mode(energy);
  add_format(energy);

  auto* sw = app.add_subcommand("sweep", "optimized energies over an (n, q) grid");
  sw->add_option("--n", o.n_range, "range a..b or list")->required();
  sw->add_option("--d", o.d);
  auto* ql = sw->add_option("--q", o.q_list, "comma-separated q values");
  sw->add_option("--width", o.width_list, "comma-separated internal widths")->excludes(ql);
  sw->add_option("--out", o.out_path, "output file (default stdout)");
  sw->add_option("--jobs", o.jobs, "parallel grid points");
  add_mode(sw);
  add_format(sw);

  auto* verify = app.add_subcommand("verify", "oracle cross-check and golden values");
  verify->add_option("--n-max", o.n_max);
  verify->add_option("--trials", o.trials);
  verify->add_option("--tol", o.tol);
  verify->add_option("--seed", o.seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }

  try {
    if (classes->parsed()) return cmd_classes(o, out);
    if (elements->parsed()) return cmd_elements(o, *elements, out);
    if (energy->parsed()) return cmd_energy(o, *energy, out);
    if (sw->parsed()) return cmd_sweep(o, *sw, out, err);
    if (verify->parsed()) return cmd_verify(o, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const ResourceLimit& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const VanishingNorm& e) {
    err << "numerical failure: " << e.what() << " (condition " << format_number(e.condition()) << ")\n";
    return kNumericalFailure;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumericalFailure;
  }
  return kUsageError;
}

}  // namespace cobos::cli
