#include "cli.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "monopole/mixing.hpp"
#include "monopole/radial.hpp"
#include "monopole/report.hpp"
#include "monopole/spectra.hpp"
#include "monopole/validation.hpp"

namespace monopole::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string quoted(const std::string& s) { return "\"" + s + "\""; }

// Splits "a..b"; a single value gives {text, text}.
std::pair<std::string, std::string> split_range(const std::string& text) {
  const auto pos = text.find("..");
  if (pos == std::string::npos) return {text, text};
  return {text.substr(0, pos), text.substr(pos + 2)};
}

int parse_int(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) throw ConfigError("invalid " + what + " '" + s + "'");
  return v;
}

double parse_double(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size() || !std::isfinite(v)) throw ConfigError("invalid " + what + " '" + s + "'");
  return v;
}

HalfInt parse_half(const std::string& s, const std::string& what) {
  try {
    return HalfInt::parse(s);
  } catch (const DomainError& e) {
    throw ConfigError("invalid " + what + " '" + s + "': " + e.what());
  }
}

std::vector<HalfInt> parse_j_range(const std::string& text) {
  const auto [a, b] = split_range(text);
  const HalfInt lo = parse_half(a, "j"), hi = parse_half(b, "j");
  if (lo.is_integer() != hi.is_integer()) throw ConfigError("j range '" + text + "' mixes integers and half-integers");
  std::vector<HalfInt> out;
  for (int t = lo.twice(); t <= hi.twice(); t += 2) out.push_back(HalfInt::from_twice(t));
  return out;
}

Scenario make_scenario(const RunConfig& cfg, bool need_potential) {
  Scenario sc;
  try {
    sc.geometry = parse_geometry(cfg.geometry);
    sc.potential = parse_potential(cfg.potential);
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  sc.charge = MonopoleCharge{parse_half(cfg.k, "k")};
  if (cfg.no_monopole && !sc.charge.no_monopole()) throw ConfigError("--no-monopole contradicts k = " + cfg.k);
  sc.M = cfg.mass;
  sc.R = cfg.R;
  if (need_potential && sc.potential == PotentialKind::None)
    throw ConfigError("a potential is required (--potential coulomb|oscillator)");
  if (sc.potential == PotentialKind::Coulomb) {
    if (!cfg.alpha) throw ConfigError("the Coulomb potential needs --alpha");
    sc.alpha = *cfg.alpha;
  }
  if (sc.potential == PotentialKind::Oscillator) {
    if (!cfg.K_osc) throw ConfigError("the oscillator potential needs --K");
    sc.K_osc = *cfg.K_osc;
  }
  try {
    sc.validate();
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  return sc;
}

// Smallest j with a closed-form channel.
HalfInt default_j(const Scenario& sc) {
  const MonopoleCharge k = sc.charge;
  if (k.no_monopole()) return HalfInt::integer(sc.geometry == Geometry::Flat ? 1 : 0);
  if (sc.geometry == Geometry::Lobachevsky && k.k.twice() * k.k.twice() < 4)
    throw ConfigError("with |k| = 1/2 there is no closed-form Lobachevsky channel");
  return min_j(k);
}

// Channels with closed forms at (scenario, j), in sort order.
std::vector<Channel> channels_for(const Scenario& sc, HalfInt j) {
  const AngularClass cls = classify(j, sc.charge);
  if (sc.geometry == Geometry::Flat) {
    if (cls == AngularClass::MinJ) return {Channel::MinJ};
    if (cls == AngularClass::NoMonopole && j.twice() == 0) return {};
    return {Channel::A1, Channel::A2, Channel::A3};
  }
  if (!sc.charge.no_monopole()) {
    if (cls == AngularClass::MinJ) return {Channel::MinJ};
    return {};
  }
  if (j.twice() == 0) return {Channel::ParityOdd};
  return {Channel::ParityOdd, Channel::Heun1, Channel::Heun2};
}

std::vector<HalfInt> requested_j(const RunConfig& cfg, const Scenario& sc) {
  std::vector<HalfInt> js = cfg.j ? parse_j_range(*cfg.j) : std::vector<HalfInt>{default_j(sc)};
  for (HalfInt j : js)
    if (!is_admissible(sc.charge, j))
      throw ConfigError("j = " + j.str() + " is not admissible for k = " + sc.charge.k.str());
  return js;
}

std::optional<Channel> requested_channel(const RunConfig& cfg) {
  if (!cfg.channel) return std::nullopt;
  try {
    return parse_channel(*cfg.channel);
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
}

Format requested_format(const RunConfig& cfg) {
  try {
    return parse_format(cfg.format);
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
}

int threads() {
  try {
    return worker_count();
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
}

void emit(const RunConfig& cfg, const std::string& text, std::ostream& out) {
  if (!cfg.output) {
    out << text;
    return;
  }
  std::ofstream f(*cfg.output, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open output file " + *cfg.output);
  f << text;
  if (!f) throw std::runtime_error("cannot write output file " + *cfg.output);
}

// ---------------------------------------------------------------- spectrum

int cmd_spectrum(const RunConfig& cfg, std::ostream& out) {
  const Scenario sc = make_scenario(cfg, true);
  const Format fmt = requested_format(cfg);
  const auto js = requested_j(cfg, sc);
  const auto ns = parse_index_range(cfg.n);
  const auto only = requested_channel(cfg);
  const int workers = threads();

  struct Task {
    Channel ch;
    HalfInt j;
    int n;
  };
  std::vector<Task> tasks;
  bool any_channel = false;
  for (int c = 0; c <= static_cast<int>(Channel::Heun2); ++c) {
    const auto ch = static_cast<Channel>(c);
    if (only && *only != ch) continue;
    for (HalfInt j : js) {
      const auto avail = channels_for(sc, j);
      if (std::find(avail.begin(), avail.end(), ch) == avail.end()) continue;
      any_channel = true;
      // Parameter domains are checked once per channel before the fan-out.
      try {
        compute_level(sc, j, 0, ch);
      } catch (const DomainError& e) {
        throw ConfigError(std::string(e.what()));
      }
      for (int n : ns) tasks.push_back({ch, j, n});
    }
  }
  if (!any_channel) throw ConfigError("no closed-form channel for the requested scenario, j and channel");

  std::vector<EnergyLevel> levels(tasks.size());
  parallel_for(tasks.size(), workers,
               [&](std::size_t i) { levels[i] = compute_level(sc, tasks[i].j, tasks[i].n, tasks[i].ch); });
  if (!cfg.include_inadmissible)
    levels.erase(std::remove_if(levels.begin(), levels.end(), [](const EnergyLevel& l) { return !l.admissible; }),
                 levels.end());
  emit(cfg, levels_to_string(levels, fmt), out);
  return kOk;
}

// ---------------------------------------------------------------- roots

std::string render_value(const ordered_json& v) {
  if (v.is_number()) return format_number(v.get<double>());
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_array()) {
    std::string s = "{";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + render_value(v[i]);
    return s + "}";
  }
  return v.dump();
}

void flatten_csv(const std::string& key, const ordered_json& v, std::ostream& out) {
  if (v.is_array()) {
    for (std::size_t i = 0; i < v.size(); ++i) flatten_csv(key + "[" + std::to_string(i) + "]", v[i], out);
    return;
  }
  std::string s = render_value(v);
  if (s.find_first_of(",\"\n") != std::string::npos) {
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    s = q + "\"";
  }
  out << key << ',' << s << '\n';
}

ordered_json num(double v) { return std::isfinite(v) ? ordered_json(std::stod(format_number(v))) : ordered_json(); }

int cmd_roots(const RunConfig& cfg, std::ostream& out) {
  const Format fmt = requested_format(cfg);
  const MonopoleCharge k{parse_half(cfg.k, "k")};
  if (cfg.no_monopole && !k.no_monopole()) throw ConfigError("--no-monopole contradicts k = " + cfg.k);
  if (!cfg.j) throw ConfigError("roots needs --j");
  const HalfInt j = parse_half(*cfg.j, "j");
  if (!is_admissible(k, j)) throw ConfigError("j = " + j.str() + " is not admissible for k = " + k.k.str());

  ordered_json doc;
  doc["k"] = k.k.str();
  doc["j"] = j.str();
  const AngularClass cls = classify(j, k);
  doc["class"] = to_string(cls);
  if (cls == AngularClass::MinJ) {
    doc["notice"] = "j = |k| - 1: minimum-j channel with a single reduced radial equation; no 3x3 mixing problem";
  } else {
    const Couplings cp = couplings(j, k);
    const CubicInvariants inv = cubic_invariants(j, k);
    doc["c"] = num(cp.c);
    doc["d"] = num(cp.d);
    doc["r"] = num(inv.r);
    doc["s"] = num(inv.s);
    doc["t"] = num(inv.t);
    doc["p"] = num(inv.p);
    doc["q"] = num(inv.q);
    doc["p_closed"] = num(inv.p_closed);
    doc["q_closed"] = num(inv.q_closed);
    doc["D"] = num(inv.D);
    const RootTriple rt = roots(inv);
    doc["A"] = {num(rt.A[0]), num(rt.A[1]), num(rt.A[2])};
    doc["L"] = {num(rt.L[0]), num(rt.L[1]), num(rt.L[2])};
    try {
      const TransformMatrix S = transform_matrix(inv.c, inv.d, rt);
      ordered_json rows = ordered_json::array();
      for (const auto& row : S.S) rows.push_back({num(row[0]), num(row[1]), num(row[2])});
      doc["S"] = rows;
      doc["S_residual"] = num(S.residual);
    } catch (const DegeneracyError& e) {
      doc["S"] = nullptr;
      doc["S_note"] = std::string("no invertible S: ") + e.what();
    }
    if (cls == AngularClass::Edge)
      doc["caution"] = "j = |k|: one coupling vanishes, the zero root belongs to a component that does not exist";
    if (k.no_monopole()) {
      const auto pe = parity_eigenvalues(j);
      doc["parity_pair"] = {num(pe[0]), num(pe[1])};
    }
  }

  std::ostringstream text;
  if (fmt == Format::Json) {
    text << doc.dump(2) << '\n';
  } else if (fmt == Format::Csv) {
    text << "quantity,value\n";
    for (const auto& [key, v] : doc.items()) flatten_csv(key, v, text);
  } else {
    for (const auto& [key, v] : doc.items()) {
      if (key == "S" && v.is_array()) {
        for (std::size_t i = 0; i < v.size(); ++i) text << "S[" << i << "] = " << render_value(v[i]) << '\n';
        continue;
      }
      text << key << " = " << render_value(v) << '\n';
    }
  }
  emit(cfg, text.str(), out);
  return kOk;
}

// ---------------------------------------------------------------- wavefunction

std::vector<double> parse_grid(const std::string& text) {
  const auto a = text.find(':');
  const auto b = a == std::string::npos ? a : text.find(':', a + 1);
  if (b == std::string::npos || text.find(':', b + 1) != std::string::npos)
    throw ConfigError("grid must be r0:r1:n, got '" + text + "'");
  const double r0 = parse_double(text.substr(0, a), "grid start");
  const double r1 = parse_double(text.substr(a + 1, b - a - 1), "grid end");
  const int n = parse_int(text.substr(b + 1), "grid size");
  if (!(r0 >= 0 && r1 > r0 && n >= 2)) throw ConfigError("grid needs 0 <= r0 < r1 and n >= 2");
  return uniform_grid(r0, r1, n);
}

int cmd_wavefunction(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const Scenario sc = make_scenario(cfg, false);
  const auto js = requested_j(cfg, sc);
  if (js.size() != 1) throw ConfigError("wavefunction needs a single j");
  const HalfInt j = js[0];
  const auto ns = parse_index_range(cfg.n);
  if (ns.size() != 1) throw ConfigError("wavefunction needs a single n");
  const auto avail = channels_for(sc, j);
  const auto only = requested_channel(cfg);
  if (avail.empty() || (only && std::find(avail.begin(), avail.end(), *only) == avail.end()))
    throw ConfigError("no closed-form channel for the requested scenario, j and channel");
  const Channel ch = only ? *only : avail.front();
  const std::vector<double> grid = cfg.grid ? parse_grid(*cfg.grid) : std::vector<double>{};

  EnergyLevel lv;
  try {
    if (sc.potential == PotentialKind::None) {
      if (!cfg.energy) throw ConfigError("the free problem needs --energy");
      lv = sc.geometry == Geometry::Flat ? peculiar_level(sc.M, *cfg.energy, sc.charge)
                                         : free_level(sc, ch, j, *cfg.energy);
    } else {
      if (cfg.energy) throw ConfigError("--energy applies to the free problem only");
      lv = compute_level(sc, j, ns[0], ch);
    }
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  if (!lv.admissible) {
    err << "error: level is inadmissible: " << lv.reason << '\n';
    return kComputationError;
  }
  const RadialProblem p = build_problem(lv.scenario, lv.channel, lv.j);
  const RadialSolution sol = analytic_solution(p, lv, grid);
  double res = std::nan("");
  if (sol.grid.size() >= 302) res = residual(p, sol, lv);
  emit(cfg, wavefunction_csv(sol, lv, res), out);
  return kOk;
}

// ---------------------------------------------------------------- validate

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

int cmd_validate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const Format fmt = requested_format(cfg);
  try {
    suite_criteria(cfg.suite);
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  const SuiteResult result = run_suite(cfg.suite, threads());
  const std::string stamp = utc_timestamp();
  if (cfg.report) {
    std::ofstream f(*cfg.report, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open report file " + *cfg.report);
    f << validation_report_json(result, stamp);
  }
  emit(cfg, fmt == Format::Json ? validation_report_json(result, stamp) : validation_table(result), out);
  if (const auto* bad = result.first_failure()) {
    err << "first failing criterion: " << bad->id << " (" << bad->name << ")\n";
    return kComputationError;
  }
  return kOk;
}

}  // namespace

std::vector<int> parse_index_range(const std::string& text) {
  const auto [a, b] = split_range(text);
  const int lo = parse_int(a, "n"), hi = parse_int(b, "n");
  if (lo < 0) throw ConfigError("n must be non-negative");
  std::vector<int> out;
  for (int n = lo; n <= hi; ++n) out.push_back(n);
  return out;
}

std::string RunConfig::serialize() const {
  std::ostringstream s;
  s << "geometry = " << quoted(geometry) << '\n';
  s << "potential = " << quoted(potential) << '\n';
  s << "k = " << quoted(k) << '\n';
  if (j) s << "j = " << quoted(*j) << '\n';
  if (alpha) s << "alpha = " << format_number(*alpha) << '\n';
  if (K_osc) s << "K = " << format_number(*K_osc) << '\n';
  s << "mass = " << format_number(mass) << '\n';
  s << "R = " << format_number(R) << '\n';
  s << "n = " << quoted(n) << '\n';
  s << "no-monopole = " << (no_monopole ? "true" : "false") << '\n';
  if (channel) s << "channel = " << quoted(*channel) << '\n';
  if (energy) s << "energy = " << format_number(*energy) << '\n';
  s << "format = " << quoted(format) << '\n';
  if (output) s << "output = " << quoted(*output) << '\n';
  s << "include-inadmissible = " << (include_inadmissible ? "true" : "false") << '\n';
  if (grid) s << "grid = " << quoted(*grid) << '\n';
  s << "suite = " << quoted(suite) << '\n';
  if (report) s << "report = " << quoted(*report) << '\n';
  return s.str();
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  bool print_config = false;
  CLI::App app{"Spectra of a spin-1 particle with a Dirac monopole in flat and Lobachevsky space",
               "monopole-spectra"};
  app.set_config("--config", "", "Read `key = value` settings from a file; flags override it");
  app.add_option("--geometry", cfg.geometry, "flat | lobachevsky");
  app.add_option("--potential", cfg.potential, "none | coulomb | oscillator");
  app.add_option("--k", cfg.k, "Monopole charge, a half-integer such as 1/2 or -1");
  app.add_option("--j", cfg.j, "Total angular momentum, or a range a..b");
  app.add_option("--alpha", cfg.alpha, "Coulomb coupling");
  app.add_option("--K", cfg.K_osc, "Oscillator constant");
  app.add_option("--mass", cfg.mass, "Mass in natural units");
  app.add_option("--R", cfg.R, "Curvature radius kept for unit conversion");
  app.add_option("--n", cfg.n, "Radial index, or a range a..b");
  app.add_flag("--no-monopole", cfg.no_monopole, "Require k = 0");
  app.add_option("--channel", cfg.channel, "Restrict to one channel (min-j, A1..A3, parity-odd, heun1, heun2)");
  app.add_option("--energy", cfg.energy, "Energy of a free-problem solution");
  app.add_option("--format", cfg.format, "json | csv | table");
  app.add_option("--output", cfg.output, "Write to this file instead of stdout");
  app.add_flag("--include-inadmissible", cfg.include_inadmissible, "Keep inadmissible levels, with reasons");
  app.add_option("--grid", cfg.grid, "Sampling grid r0:r1:n");
  app.add_option("--suite", cfg.suite, "Validation suite");
  app.add_option("--report", cfg.report, "Write the JSON validation report here");
  app.add_flag("--print-config", print_config, "Print the effective configuration and exit");

  auto* spectrum = app.add_subcommand("spectrum", "Closed-form energy levels");
  auto* roots_cmd = app.add_subcommand("roots", "Mixing-matrix roots, L values and S");
  auto* validate = app.add_subcommand("validate", "Run a validation suite against the oracles");
  auto* wave = app.add_subcommand("wavefunction", "Sample a closed-form radial solution");
  for (auto* sub : {spectrum, roots_cmd, validate, wave}) sub->fallthrough();
  app.require_subcommand(1);

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kConfigError;
  }
  for (auto* sub : app.get_subcommands()) cfg.command = sub->get_name();
  if (print_config) {
    out << cfg.serialize();
    return kOk;
  }

  try {
    if (cfg.command == "spectrum") return cmd_spectrum(cfg, out);
    if (cfg.command == "roots") return cmd_roots(cfg, out);
    if (cfg.command == "wavefunction") return cmd_wavefunction(cfg, out, err);
    return cmd_validate(cfg, out, err);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kComputationError;
  }
}

}  // namespace monopole::cli
