#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "../tools/cli.hpp"
#include "cobos/oracle.hpp"
#include "cobos/records.hpp"

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "cobos");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cobos::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

std::vector<std::string> fields(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  for (std::string f; std::getline(ss, f, ',');) out.push_back(f);
  return out;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("classes") {
    const auto r = run({"classes", "--n", "3"});
    CHECK(r.code == 0);
    const auto ls = lines(r.out);
    REQUIRE(ls.size() == 4);
    CHECK(ls[1].find("[3]") != std::string::npos);
    CHECK(ls[2].find("[2 1]") != std::string::npos);
    CHECK(ls[3].find("[1 1 1]") != std::string::npos);

    const auto m = run({"classes", "--marked", "--n", "10"});
    CHECK(m.code == 0);
    CHECK(lines(m.out).back() == "10,97");

    CHECK(run({"classes", "--n", "0"}).code == 2);
    CHECK(run({"classes"}).code == 2);
    CHECK(run({"classes", "--n", "3", "--format", "xml"}).code == 2);
  }

  TEST_CASE("raw elements reproduce the n = 3 identity overlap") {
    const auto r = run({"elements", "--n", "3", "--p", "1", "--q", "1", "--raw"});
    CHECK(r.code == 0);
    const auto ls = lines(r.out);
    REQUIRE(ls.size() == 5);
    const auto f = fields(ls[1]);
    const double want = std::pow(std::numbers::pi, 9) / (512 * std::pow(3.0, 4.5));
    CHECK(rel(std::stod(f.at(3)), want) < 1e-12);
  }

  TEST_CASE("normalized elements") {
    const auto one = run({"elements", "--n", "1", "--p", "0.5", "--q", "0"});
    CHECK(one.code == 0);
    const auto ls = lines(one.out);
    REQUIRE(ls.size() == 3);  // header, one class, sum
    CHECK(std::stod(fields(ls[1]).at(7)) == doctest::Approx(1.0).epsilon(1e-15));

    const auto three = run({"elements", "--n", "3", "--p", "1", "--q", "1"});
    CHECK(three.code == 0);
    CHECK(three.out.find("2:1.75") != std::string::npos);

    CHECK(run({"elements", "--n", "3", "--p", "1", "--q", "0"}).code == 3);
    CHECK(run({"elements", "--n", "3", "--p", "-1", "--q", "1"}).code == 2);
  }

  TEST_CASE("energy") {
    const auto opt = run({"energy", "--n", "1", "--d", "3", "--q", "0", "--optimize"});
    REQUIRE(opt.code == 0);
    const auto rec = cobos::io::parse_csv(opt.out).at(0);
    CHECK(std::abs(*rec.E - 6) < 1e-9);
    CHECK(std::abs(*rec.width - std::sqrt(2.0)) < 1e-5);
    CHECK(!rec.mu.has_value());

    const auto fixed = run({"energy", "--n", "1", "--d", "3", "--q", "1", "--p", "0.25"});
    REQUIRE(fixed.code == 0);
    CHECK(rel(*cobos::io::parse_csv(fixed.out).at(0).E, cobos::n1_closed_form(0.25, 1, 3)) < 1e-14);

    const auto two = run({"energy", "--n", "2", "--d", "3", "--internal-width", "1", "--optimize", "--format", "json"});
    REQUIRE(two.code == 0);
    const auto r2 = cobos::io::parse_json(two.out).at(0);
    CHECK(r2.converged);
    CHECK(r2.mu.has_value());

    CHECK(run({"energy", "--n", "1", "--q", "1"}).code == 2);
    CHECK(run({"energy", "--n", "1", "--q", "1", "--p", "1", "--optimize"}).code == 2);
    CHECK(run({"energy", "--n", "1", "--q", "1", "--internal-width", "1", "--optimize"}).code == 2);
    CHECK(run({"energy", "--n", "1", "--d", "4", "--q", "1", "--optimize"}).code == 2);
    CHECK(run({"energy", "--n", "2", "--q", "0", "--optimize"}).code == 3);
  }

  TEST_CASE("sweep") {
    const auto t3 = run({"sweep", "--n", "1..3", "--d", "3", "--width", "1"});
    REQUIRE(t3.code == 0);
    CHECK(cobos::io::parse_csv(t3.out).size() == 3);

    const auto fig = run({"sweep", "--n", "1..4", "--d", "1", "--width", "0.5,1,2"});
    REQUIRE(fig.code == 0);
    const auto recs = cobos::io::parse_csv(fig.out);
    REQUIRE(recs.size() == 12);
    CHECK(*recs[0].internal_width == 0.5);
    CHECK(recs[0].n == 1);
    CHECK(recs[3].n == 4);
    CHECK(*recs[4].internal_width == 1);

    CHECK(run({"sweep", "--n", "1..2", "--width", ""}).code == 2);
    CHECK(run({"sweep", "--n", "1..2"}).code == 2);
    CHECK(run({"sweep", "--n", "3..1", "--q", "1"}).code == 2);
    CHECK(run({"sweep", "--n", "1,2", "--q", "1", "--out", "/nonexistent-dir/x.csv"}).code == 2);
  }

  TEST_CASE("sweep records failed points") {
    const auto r = run({"sweep", "--n", "1,2", "--q", "0"});
    REQUIRE(r.code == 0);
    const auto recs = cobos::io::parse_csv(r.out);
    REQUIRE(recs.size() == 2);
    CHECK(recs[0].E.has_value());
    CHECK(!recs[1].E.has_value());
    CHECK(recs[1].condition.has_value());
    CHECK(!r.err.empty());
  }

  TEST_CASE("sweep to a file") {
    const auto path = std::filesystem::temp_directory_path() / "cobos_cli_sweep_test.json";
    const auto r = run({"sweep", "--n", "1,2", "--q", "1", "--format", "json", "--out", path.string()});
    REQUIRE(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    CHECK(cobos::io::parse_json(ss.str()).size() == 2);
    std::filesystem::remove(path);
  }

  TEST_CASE("output is byte-identical across runs and worker counts") {
    const std::vector<std::string> base{"sweep", "--n", "1..5", "--d", "2", "--q", "0.5,2"};
    auto a = base, b = base;
    a.insert(a.end(), {"--jobs", "1"});
    b.insert(b.end(), {"--jobs", "3"});
    const auto ra = run(a), rb = run(b), rc = run(a);
    CHECK(ra.out == rb.out);
    CHECK(ra.out == rc.out);

    const std::vector<std::string> v{"verify", "--n-max", "3", "--trials", "3", "--seed", "9"};
    CHECK(run(v).out == run(v).out);
  }

  TEST_CASE("verify") {
    const auto ok = run({"verify", "--n-max", "3", "--trials", "5", "--tol", "1e-10", "--seed", "7"});
    CHECK(ok.code == 0);
    CHECK(ok.out.find("verify: all checks passed") != std::string::npos);

    CHECK(run({"verify", "--n-max", "7"}).code == 2);

    const auto zero = run({"verify", "--trials", "0"});
    CHECK(zero.code == 0);
    CHECK(zero.out.find("oracle trials: 0") != std::string::npos);

    const auto strict = run({"verify", "--n-max", "2", "--trials", "2", "--tol", "1e-300"});
    CHECK(strict.code == 1);
    CHECK(strict.out.find("verify: FAILED") != std::string::npos);
  }

  TEST_CASE("help and unknown commands") {
    CHECK(run({"--help"}).code == 0);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({}).code == 2);
  }
}
