#include "doctest.h"

#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "json.hpp"
#include "monopole/report.hpp"

using namespace monopole;

namespace {
std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}
}  // namespace

TEST_CASE("numbers carry twelve significant digits") {
  CHECK(format_number(0.1) == "0.1");
  CHECK(format_number(1.0 / 3) == "0.333333333333");
  CHECK(format_number(-50.5) == "-50.5");
  CHECK(format_number(1e-20) == "1e-20");
  CHECK(format_number(std::nan("")) == "nan");
  CHECK(format_number(-std::numeric_limits<double>::infinity()) == "-inf");
}

TEST_CASE("formats parse and print") {
  for (auto f : {Format::Json, Format::Csv, Format::Table}) CHECK(parse_format(to_string(f)) == f);
  CHECK_THROWS_AS(parse_format("xml"), DomainError);
}

TEST_CASE("level records in every format") {
  auto a = lob_nomonopole_coulomb(10, 1, HalfInt::integer(0), 0, Channel::ParityOdd);
  auto b = lob_nomonopole_coulomb(10, 1, HalfInt::integer(0), 5, Channel::ParityOdd);
  REQUIRE_FALSE(b.admissible);
  b.reason = "a, \"quoted\" reason";

  const auto csv = lines(levels_to_string({a, b}, Format::Csv));
  REQUIRE(csv.size() == 3);
  CHECK(csv[0] == "geometry,potential,k,channel,j,n,E,epsilon_rel,L,N,admissible,derivation,formula,reason");
  CHECK(csv[1].find("lobachevsky,coulomb,0,parity-odd,0,0,-50.5,") == 0);
  CHECK(csv[2].find(",false,") != std::string::npos);
  CHECK(csv[2].find("\"a, \"\"quoted\"\" reason\"") != std::string::npos);

  const auto js = nlohmann::json::parse(levels_to_string({a, b}, Format::Json));
  REQUIRE(js.size() == 2);
  CHECK(js[0]["E"].get<double>() == -50.5);
  CHECK(js[0]["j2"] == 0);
  CHECK(js[0]["scenario"]["geometry"] == "lobachevsky");
  CHECK(js[0]["scenario"]["alpha"] == 10.0);
  CHECK(js[0]["epsilon_rel"].is_null());
  CHECK(js[1]["admissible"] == false);
  CHECK(js[1]["reason"] == b.reason);

  const auto table = lines(levels_to_string({a}, Format::Table));
  REQUIRE(table.size() == 2);
  CHECK(table[1].find("-50.5") != std::string::npos);

  CHECK(levels_to_string({a, b}, Format::Json) == levels_to_string({a, b}, Format::Json));
  CHECK(lines(levels_to_string({}, Format::Csv)).size() == 1);
}

TEST_CASE("oscillator candidates are exported") {
  const auto lv = flat_oscillator(1, 1, HalfInt::integer(0), MonopoleCharge::from_twice(2), 1, Channel::MinJ);
  const auto js = nlohmann::json::parse(levels_to_string({lv}, Format::Json));
  CHECK(js[0]["candidates"]["quantization"].get<double>() == doctest::Approx(3.5));
  CHECK(js[0]["candidates"]["printed"].get<double>() == doctest::Approx(1.75));
}

TEST_CASE("validation report envelope and table") {
  SuiteResult s;
  s.suite = "roots";
  CriterionResult c;
  c.id = 2;
  c.name = "parity split";
  c.pass = true;
  c.detail = "ok";
  c.measured = std::nan("");
  s.criteria.push_back(c);
  CHECK(validation_table(s) == "PASS criterion 2 (parity split): ok\n");
  const auto js = nlohmann::json::parse(validation_report_json(s, "2026-01-01T00:00:00Z"));
  CHECK(js["suite"] == "roots");
  CHECK(js["timestamp"] == "2026-01-01T00:00:00Z");
  CHECK(js["pass"] == true);
  CHECK(js["criteria"][0]["measured"].is_null());
  CHECK(js["oracle"]["entries"].empty());
}

TEST_CASE("wavefunction export: JSON header, column row, samples") {
  RadialSolution sol;
  sol.grid = {0.5, 1.0};
  sol.values = {1.0, 2.0};
  sol.closed_form.tag = "test";
  sol.closed_form.params = {{"kappa", 1.0}};
  const auto lv = lob_nomonopole_coulomb(10, 1, HalfInt::integer(0), 0, Channel::ParityOdd);
  const auto out = lines(wavefunction_csv(sol, lv, 1e-9));
  REQUIRE(out.size() == 4);
  const auto head = nlohmann::json::parse(out[0]);
  CHECK(head["closed_form"] == "test");
  CHECK(head["params"]["kappa"] == 1.0);
  CHECK(head["points"] == 2);
  CHECK(out[1] == "r,u");
  CHECK(out[2] == "0.5,1");
  CHECK(out[3] == "1,2");
}
