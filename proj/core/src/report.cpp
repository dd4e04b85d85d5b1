#include "monopole/report.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "json.hpp"

namespace monopole {

using nlohmann::json;

Format parse_format(const std::string& s) {
  if (s == "json") return Format::Json;
  if (s == "csv") return Format::Csv;
  if (s == "table") return Format::Table;
  throw DomainError("unknown format '" + s + "' (json, csv, table)");
}

std::string to_string(Format f) {
  switch (f) {
    case Format::Json: return "json";
    case Format::Csv: return "csv";
    case Format::Table: return "table";
  }
  return "?";
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  // snprintf honours LC_NUMERIC, which the library never changes from "C".
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

namespace {

// JSON number rounded to 12 significant digits; null when not finite.
json jnum(double v) {
  if (!std::isfinite(v)) return nullptr;
  const std::string s = format_number(v);
  double out = 0;
  std::from_chars(s.data(), s.data() + s.size(), out);
  return out;
}

json jopt(const std::optional<double>& v) { return v ? jnum(*v) : json(nullptr); }

json level_json(const EnergyLevel& lv) {
  json j;
  j["scenario"] = {{"geometry", to_string(lv.scenario.geometry)},
                   {"potential", to_string(lv.scenario.potential)},
                   {"k", lv.scenario.charge.k.str()},
                   {"M", jnum(lv.scenario.M)},
                   {"R", jnum(lv.scenario.R)},
                   {"alpha", jnum(lv.scenario.alpha)},
                   {"K_osc", jnum(lv.scenario.K_osc)}};
  j["channel"] = to_string(lv.channel);
  j["j2"] = lv.j.twice();
  j["n"] = lv.n;
  j["E"] = jnum(lv.E);
  j["epsilon_rel"] = jopt(lv.epsilon_rel);
  j["L"] = jopt(lv.L);
  j["N"] = jopt(lv.N);
  j["derivation"] = to_string(lv.derivation);
  j["admissible"] = lv.admissible;
  j["reason"] = lv.reason;
  j["formula"] = lv.formula;
  j["units"] = lv.units == Units::Natural ? "natural" : "physical";
  if (lv.candidates)
    j["candidates"] = {{"printed", jnum(lv.candidates->printed)},
                       {"quantization", jnum(lv.candidates->quantization)},
                       {"confirmed", lv.candidates->confirmed}};
  return j;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string opt_str(const std::optional<double>& v) { return v ? format_number(*v) : ""; }

json oracle_json(const OracleReport& r) {
  json j;
  j["problem"] = r.problem;
  j["entries"] = json::array();
  for (const auto& e : r.entries)
    j["entries"].push_back({{"label", e.label},
                            {"channel", to_string(e.channel)},
                            {"j", e.j.str()},
                            {"n", e.n},
                            {"analytic_E", jnum(e.analytic)},
                            {"numeric_E", jnum(e.numeric)},
                            {"abs_dev", jnum(e.abs_dev)},
                            {"rel_dev", jnum(e.rel_dev)}});
  j["bound_state_counts"] = json::array();
  for (const auto& c : r.counts)
    j["bound_state_counts"].push_back(
        {{"label", c.label}, {"analytic", c.analytic}, {"numeric", c.numeric}, {"stable", c.stable}});
  j["arbitration"] = json::array();
  for (const auto& v : r.verdicts)
    j["arbitration"].push_back({{"family", v.family},
                                {"matching", v.matching},
                                {"max_rel_dev_quantization", jnum(v.max_rel_dev_quantization)},
                                {"max_rel_dev_printed", jnum(v.max_rel_dev_printed)},
                                {"fd_spacing", jnum(v.fd_spacing)},
                                {"spacing_quantization", jnum(v.spacing_quantization)},
                                {"spacing_printed", jnum(v.spacing_printed)},
                                {"stable_across_grids", v.stable_across_grids}});
  return j;
}

}  // namespace

std::string levels_to_string(const std::vector<EnergyLevel>& levels, Format f) {
  if (f == Format::Json) {
    json arr = json::array();
    for (const auto& lv : levels) arr.push_back(level_json(lv));
    return arr.dump(2) + "\n";
  }
  std::ostringstream out;
  if (f == Format::Csv) {
    out << "geometry,potential,k,channel,j,n,E,epsilon_rel,L,N,admissible,derivation,formula,reason\n";
    for (const auto& lv : levels)
      out << to_string(lv.scenario.geometry) << ',' << to_string(lv.scenario.potential) << ','
          << lv.scenario.charge.k.str() << ',' << to_string(lv.channel) << ',' << lv.j.str() << ',' << lv.n << ','
          << format_number(lv.E) << ',' << opt_str(lv.epsilon_rel) << ',' << opt_str(lv.L) << ','
          << opt_str(lv.N) << ',' << (lv.admissible ? "true" : "false") << ',' << to_string(lv.derivation) << ','
          << csv_field(lv.formula) << ',' << csv_field(lv.reason) << '\n';
    return out.str();
  }
  char line[512];
  std::snprintf(line, sizeof line, "%-12s %-5s %-5s %4s %20s %20s %-10s %s\n", "channel", "j", "k", "n", "E",
                "L|N", "admissible", "reason");
  out << line;
  for (const auto& lv : levels) {
    const std::string ln = lv.L ? format_number(*lv.L) : lv.N ? format_number(*lv.N) : "-";
    std::snprintf(line, sizeof line, "%-12s %-5s %-5s %4d %20s %20s %-10s %s\n", to_string(lv.channel).c_str(),
                  lv.j.str().c_str(), lv.scenario.charge.k.str().c_str(), lv.n, format_number(lv.E).c_str(),
                  ln.c_str(), lv.admissible ? "yes" : "no", lv.reason.c_str());
    out << line;
  }
  return out.str();
}

std::string oracle_report_json(const OracleReport& r) { return oracle_json(r).dump(2) + "\n"; }

std::string validation_report_json(const SuiteResult& s, const std::string& timestamp) {
  json j;
  j["suite"] = s.suite;
  j["timestamp"] = timestamp;
  j["pass"] = s.pass();
  j["criteria"] = json::array();
  for (const auto& c : s.criteria)
    j["criteria"].push_back({{"id", c.id},
                             {"name", c.name},
                             {"pass", c.pass},
                             {"measured", jnum(c.measured)},
                             {"threshold", jnum(c.threshold)},
                             {"detail", c.detail},
                             {"informational", c.informational},
                             {"seconds", jnum(c.seconds)}});
  j["oracle"] = oracle_json(s.report);
  return j.dump(2) + "\n";
}

std::string validation_table(const SuiteResult& s) {
  std::ostringstream out;
  for (const auto& c : s.criteria)
    out << (c.pass ? "PASS" : "FAIL") << " criterion " << c.id << " (" << c.name << "): " << c.detail << '\n';
  return out.str();
}

std::string wavefunction_csv(const RadialSolution& sol, const EnergyLevel& lv, double residual) {
  json head;
  head["closed_form"] = sol.closed_form.tag;
  json params = json::object();
  for (const auto& [k, v] : sol.closed_form.params) params[k] = jnum(v);
  head["params"] = params;
  head["note"] = sol.closed_form.note;
  head["level"] = level_json(lv);
  head["residual"] = jnum(residual);
  head["norm"] = jopt(sol.norm);
  head["points"] = sol.grid.size();
  std::ostringstream out;
  out << head.dump() << '\n';
  const bool aux = !sol.aux.empty();
  out << "r,u" << (aux ? "," + sol.aux_label : "") << '\n';
  for (std::size_t i = 0; i < sol.grid.size(); ++i) {
    out << format_number(sol.grid[i]) << ',' << format_number(sol.values[i]);
    if (aux) out << ',' << format_number(sol.aux[i]);
    out << '\n';
  }
  return out.str();
}

}  // namespace monopole
