#include "doctest.h"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"

using monopole::cli::run;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result call(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

std::vector<std::string> fields(const std::string& row) {
  std::vector<std::string> out;
  std::istringstream in(row);
  for (std::string f; std::getline(in, f, ',');) out.push_back(f);
  return out;
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("monopole_cli_" + name)).string();
}

const std::vector<std::string> kFlatCoulomb = {"spectrum", "--geometry", "flat", "--potential", "coulomb",
                                                "--k",      "1",          "--j",  "2",           "--alpha",
                                                "1",        "--mass",     "1",    "--n",         "0..3",
                                                "--format", "csv"};

const std::vector<std::string> kLobCoulomb = {"spectrum", "--geometry", "lobachevsky", "--potential",
                                               "coulomb",  "--no-monopole", "--j",      "0",
                                               "--alpha",  "10",       "--mass",      "1",
                                               "--n",      "0..5",     "--format",    "csv"};

}  // namespace

TEST_CASE("spectrum: three branches times four radial indices") {
  const auto r = call(kFlatCoulomb);
  REQUIRE(r.code == 0);
  const auto rows = lines(r.out);
  REQUIRE(rows.size() == 13);
  // Sorted by channel, then n; E = -1/(2(n + L + 1)^2).
  CHECK(fields(rows[1])[3] == "A1");
  CHECK(fields(rows[12])[3] == "A3");
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto f = fields(rows[i]);
    const double E = std::stod(f[6]), N = std::stod(f[9]);
    CHECK(E == doctest::Approx(-0.5 / (N * N)).epsilon(1e-11));
    CHECK(std::stoi(f[5]) == static_cast<int>((i - 1) % 4));
  }
}

TEST_CASE("spectrum: finite Lobachevsky Coulomb spectrum") {
  auto args = kLobCoulomb;
  auto r = call(args);
  REQUIRE(r.code == 0);
  CHECK(lines(r.out).size() == 4);  // header + n = 0..2

  args.push_back("--include-inadmissible");
  r = call(args);
  REQUIRE(r.code == 0);
  const auto rows = lines(r.out);
  REQUIRE(rows.size() == 7);
  for (int n = 0; n < 6; ++n) {
    const auto f = fields(rows[n + 1]);
    CHECK(f[10] == (n <= 2 ? "true" : "false"));
    if (n > 2) CHECK(f[13].find("M*alpha <= N^2") != std::string::npos);
  }
}

TEST_CASE("spectrum: empty range and bad configurations") {
  auto args = kLobCoulomb;
  args[13] = "3..2";
  const auto r = call(args);
  CHECK(r.code == 0);
  CHECK(lines(r.out).size() == 1);

  CHECK(call({"spectrum", "--geometry", "flat", "--potential", "coulomb", "--k", "1"}).code == 2);  // no alpha
  CHECK(call({"spectrum", "--geometry", "torus", "--potential", "coulomb", "--alpha", "1"}).code == 2);
  CHECK(call({"spectrum", "--potential", "coulomb", "--alpha", "1", "--k", "1", "--j", "1/2"}).code == 2);
  CHECK(call({"spectrum", "--potential", "coulomb", "--alpha", "1", "--k", "1", "--no-monopole"}).code == 2);
  CHECK(call({"spectrum", "--bogus"}).code == 2);
  CHECK(call({}).code == 2);
  CHECK(call({"--help"}).code == 0);
  // α outside (0, 1/2) for the min-j Lobachevsky Coulomb channel.
  CHECK(call({"spectrum", "--geometry", "lobachevsky", "--potential", "coulomb", "--k", "1", "--j", "0", "--alpha",
              "2"})
            .code == 2);
}

TEST_CASE("spectrum output does not depend on the worker count") {
  setenv("MONOPOLE_SPECTRA_THREADS", "1", 1);
  auto args = kFlatCoulomb;
  args.back() = "json";
  const auto one = call(args);
  setenv("MONOPOLE_SPECTRA_THREADS", "4", 1);
  const auto four = call(args);
  setenv("MONOPOLE_SPECTRA_THREADS", "zero", 1);
  CHECK(call(args).code == 2);
  unsetenv("MONOPOLE_SPECTRA_THREADS");
  CHECK(one.code == 0);
  CHECK(one.out == four.out);
}

TEST_CASE("roots subcommand") {
  auto r = call({"roots", "--k", "1", "--j", "2"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("p = -5.58333") != std::string::npos);
  CHECK(r.out.find("q = -2.07407") != std::string::npos);
  CHECK(r.out.find("S_residual = ") != std::string::npos);

  r = call({"roots", "--k", "0", "--j", "1"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("parity_pair = {2, -1}") != std::string::npos);

  r = call({"roots", "--k", "1", "--j", "0"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("minimum-j") != std::string::npos);
  CHECK(r.out.find("p = ") == std::string::npos);

  r = call({"roots", "--k", "-1/2", "--j", "1/2", "--format", "json"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("\"S\": null") != std::string::npos);

  CHECK(call({"roots", "--k", "1", "--j", "2", "--format", "csv"}).out.find("A[0],") != std::string::npos);
  CHECK(call({"roots", "--k", "1"}).code == 2);
  CHECK(call({"roots", "--k", "1", "--j", "1/2"}).code == 2);
  CHECK(call({"roots", "--k", "1/3", "--j", "2"}).code == 2);
}

TEST_CASE("validate subcommand") {
  auto r = call({"validate", "--suite", "nope"});
  CHECK(r.code == 2);
  CHECK(r.err.find("unknown suite") != std::string::npos);

  const std::string report = temp_path("report.json");
  r = call({"validate", "--suite", "roots", "--report", report});
  CHECK(r.code == 0);
  CHECK(lines(r.out).size() == 2);
  CHECK(r.out.rfind("PASS criterion 1", 0) == 0);
  std::ifstream f(report);
  const std::string text((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
  CHECK(text.find("\"timestamp\"") != std::string::npos);
  CHECK(text.find("\"measured\"") != std::string::npos);
  std::filesystem::remove(report);
}

TEST_CASE("wavefunction: grid honoured, peculiar state, errors") {
  auto r = call({"wavefunction", "--geometry", "flat", "--k", "1", "--j", "0", "--energy", "-0.5", "--grid",
                 "0.001:40:4000"});
  REQUIRE(r.code == 0);
  const auto rows = lines(r.out);
  REQUIRE(rows.size() == 4002);
  CHECK(rows[0].find("\"closed_form\":\"exp(-kappa r)\"") != std::string::npos);
  CHECK(rows[1] == "r,u");
  CHECK(rows[2].rfind("0.001,", 0) == 0);
  CHECK(rows.back().rfind("40,", 0) == 0);
  // u = e^{-r} with κ = √(2M|E|) = 1.
  for (std::size_t i = 2; i < rows.size(); i += 500) {
    const auto f = fields(rows[i]);
    CHECK(std::stod(f[1]) == doctest::Approx(std::exp(-std::stod(f[0]))).epsilon(1e-10));
  }

  // Lobachevsky oscillator ground state is nodeless.
  r = call({"wavefunction", "--geometry", "lobachevsky", "--potential", "oscillator", "--no-monopole", "--K", "100",
            "--j", "0", "--n", "0"});
  REQUIRE(r.code == 0);
  const auto osc = lines(r.out);
  int sign_changes = 0;
  double prev = 0;
  for (std::size_t i = 2; i < osc.size(); ++i) {
    const double u = std::stod(fields(osc[i])[1]);
    if (std::abs(u) < 1e-12) continue;
    if (prev != 0 && (u > 0) != (prev > 0)) ++sign_changes;
    prev = u;
  }
  CHECK(sign_changes == 0);

  r = call({"wavefunction", "--geometry", "lobachevsky", "--potential", "coulomb", "--no-monopole", "--alpha", "10",
            "--j", "0", "--n", "4"});
  CHECK(r.code == 1);
  CHECK(r.err.find("inadmissible") != std::string::npos);
  CHECK(call({"wavefunction", "--geometry", "flat", "--k", "1", "--j", "0", "--energy", "-0.5", "--grid", "1:0:10"})
            .code == 2);
  CHECK(call({"wavefunction", "--geometry", "flat", "--k", "1", "--j", "0"}).code == 2);
  CHECK(call({"wavefunction", "--geometry", "flat", "--k", "1", "--j", "0", "--energy", "0.5"}).code == 2);
}

TEST_CASE("configuration file round trip, flags override") {
  auto args = kFlatCoulomb;
  args.insert(args.begin(), "--print-config");
  const auto first = call(args);
  REQUIRE(first.code == 0);
  const std::string path = temp_path("config.txt");
  {
    std::ofstream f(path);
    f << first.out;
  }
  const auto second = call({"--config", path, "--print-config", "spectrum"});
  REQUIRE(second.code == 0);
  CHECK(second.out == first.out);

  const auto from_file = call({"--config", path, "spectrum"});
  CHECK(from_file.out == call(kFlatCoulomb).out);
  const auto overridden = call({"--config", path, "spectrum", "--n", "0"});
  CHECK(lines(overridden.out).size() == 4);

  {
    std::ofstream f(path);
    f << "no_such_key = 1\n";
  }
  CHECK(call({"--config", path, "spectrum"}).code == 2);
  std::filesystem::remove(path);
}

TEST_CASE("index ranges") {
  using monopole::cli::parse_index_range;
  CHECK(parse_index_range("3") == std::vector<int>{3});
  CHECK(parse_index_range("1..3") == std::vector<int>{1, 2, 3});
  CHECK(parse_index_range("3..1").empty());
  CHECK_THROWS_AS(parse_index_range("-1..2"), monopole::cli::ConfigError);
  CHECK_THROWS_AS(parse_index_range("a..b"), monopole::cli::ConfigError);
}
