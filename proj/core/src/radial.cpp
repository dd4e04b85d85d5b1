#include "monopole/radial.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include "monopole/heunspec.hpp"
#include "monopole/mixing.hpp"
#include "monopole/specfun.hpp"

namespace monopole {

namespace {

using cplx = std::complex<double>;

double sq(double x) { return x * x; }

// Closed forms are sampled in extended precision and rounded once: the FD
// residual amplifies per-sample noise by 1/h², and exp of a double
// argument of size ~10 already carries ~1e-15 relative noise.
using ld = long double;

// log cosh r and log sinh r without overflow for large r.
ld log_cosh(ld r) { return r + std::log1p(std::exp(-2.0L * r)) - std::numbers::ln2_v<ld>; }
ld log_sinh(ld r) { return r + std::log(-std::expm1(-2.0L * r)) - std::numbers::ln2_v<ld>; }

// Coefficients of the terminating ₂F₁(−n, b; c; y) (b = nullopt → ₁F₁(−n; c; y)).
std::vector<ld> poly_coeffs(int n, std::optional<ld> b, ld c) {
  std::vector<ld> co(n + 1);
  co[0] = 1.0L;
  for (int k = 0; k < n; ++k) {
    const ld den = (c + k) * (k + 1.0L);
    if (den == 0.0L) throw DomainError("terminating series has a vanishing lower parameter");
    co[k + 1] = co[k] * (k - n) * (b ? *b + k : 1.0L) / den;
  }
  return co;
}

struct LogVal {
  ld log_abs = 0;
  ld sign = 1;
};

// Σ c_k y^k as log|·| and sign; logy = log|y| is used for |y| > 1 so that
// y itself may be out of range.
LogVal log_poly(const std::vector<ld>& co, ld y, ld logy) {
  const int n = static_cast<int>(co.size()) - 1;
  ld s = 0;
  ld lead = 0;
  if (logy <= 0) {
    for (int k = n; k >= 0; --k) s = s * y + co[k];
  } else {
    const ld t = std::exp(-logy) * (y < 0 ? -1.0L : 1.0L);
    for (int k = 0; k <= n; ++k) s = s * t + co[k];
    lead = n * logy;
    if (y < 0 && n % 2) s = -s;
  }
  if (s == 0) return {-std::numeric_limits<ld>::infinity(), 0};
  return {lead + std::log(std::abs(s)), s < 0 ? -1.0L : 1.0L};
}

double signed_exp(const LogVal& v, ld extra_log) {
  if (v.sign == 0) return 0;
  return static_cast<double>(v.sign * std::exp(v.log_abs + extra_log));
}

int check_polynomial(double n_implied, int n, const char* what) {
  if (std::abs(n_implied - n) > 1e-8 * (1.0 + n))
    throw DomainError(std::string("non-polynomial parameter set for a bound-state request (") + what +
                      " implies n = " + std::to_string(n_implied) + ", expected " + std::to_string(n) +
                      ")");
  return n;
}

double flat_L(const Scenario& sc, Channel ch, HalfInt j) {
  const AngularClass cls = classify(j, sc.charge);
  if (!is_admissible(sc.charge, j))
    throw DomainError("j = " + j.str() + " is not admissible for k = " + sc.charge.k.str());
  if (ch == Channel::MinJ) {
    if (cls != AngularClass::MinJ) throw DomainError("the min-j channel needs j = |k| - 1");
    return 0.0;
  }
  if (ch != Channel::A1 && ch != Channel::A2 && ch != Channel::A3)
    throw DomainError("flat channels are min-j and A1..A3, not " + to_string(ch));
  if (cls == AngularClass::MinJ) throw DomainError("j = |k| - 1 only has the min-j channel");
  if (cls == AngularClass::NoMonopole && j.twice() == 0)
    throw DomainError("flat space without monopole at j = 0 is not covered");
  return roots(cubic_invariants(j, sc.charge)).L[branch_index(ch)];
}

std::string channel_suffix(Channel ch) { return to_string(ch); }

// Decay rate of the bound solution, used to size default grids.
double decay_rate(const RadialProblem& p, const EnergyLevel& lv) {
  const Scenario& sc = p.scenario;
  const double M = sc.M;
  if (p.linearity == Linearity::QuadraticInEpsilon) {
    const double eps = lv.epsilon_rel.value_or(lv.E + M);
    const double q = sq(M) - sq(eps + sc.alpha);
    return q > 0 ? std::sqrt(q) : 0.0;
  }
  if (p.continuum_edge) {
    const double gap = 2.0 * M * p.weight * (*p.continuum_edge - lv.E);
    return gap > 0 ? std::sqrt(gap) : 0.0;
  }
  return lv.E < 0 ? std::sqrt(-2.0 * M * p.weight * lv.E) : 0.0;
}

}  // namespace

RadialProblem lobachevsky_minj_coulomb_problem(double alpha, double M) {
  if (!(M > 0)) throw DomainError("mass must be positive");
  if (!(alpha >= 0 && alpha < 0.5)) throw DomainError("min-j Coulomb needs 0 <= alpha < 1/2");
  RadialProblem p;
  p.scenario.geometry = Geometry::Lobachevsky;
  p.scenario.potential = alpha > 0 ? PotentialKind::Coulomb : PotentialKind::None;
  p.scenario.alpha = alpha;
  p.scenario.M = M;
  p.channel = Channel::MinJ;
  p.M = M;
  p.linearity = Linearity::QuadraticInEpsilon;
  p.Q = [alpha, M](double r, double eps) { return sq(eps + alpha / std::tanh(r)) - M * M; };
  p.origin_exponent = (1.0 + std::sqrt(1.0 - 4.0 * alpha * alpha)) / 2.0;
  p.far = FarBoundary::Decay;
  p.continuum_edge = -alpha;  // ε = M − α
  p.formula = "lobachevsky-min-j-coulomb";
  return p;
}

RadialProblem build_problem(const Scenario& sc, Channel channel, HalfInt j) {
  sc.validate();
  RadialProblem p;
  p.scenario = sc;
  p.channel = channel;
  p.j = j;
  p.M = sc.M;
  const double M = sc.M;
  const double alpha = sc.alpha, K = sc.K_osc;

  if (sc.geometry == Geometry::Flat) {
    const double L = flat_L(sc, channel, j);
    const double cent = L * (L + 1.0);
    p.L = L;
    p.origin_exponent = L + 1.0;
    const std::string tail = channel == Channel::MinJ ? "min-j" : channel_suffix(channel);
    switch (sc.potential) {
      case PotentialKind::Coulomb:
        p.V = [cent, M, alpha](double r) { return cent / (r * r) - 2.0 * M * alpha / r; };
        p.formula = "flat-coulomb-" + tail;
        break;
      case PotentialKind::Oscillator:
        p.V = [cent, M, K](double r) { return cent / (r * r) + M * K * r * r; };
        p.formula = "flat-oscillator-" + tail;
        break;
      case PotentialKind::None:
        p.V = [cent](double r) { return cent / (r * r); };
        p.far = FarBoundary::StandingWave;
        p.formula = "flat-free-" + tail;
        break;
    }
    return p;
  }

  // Lobachevsky space, lengths in units of the curvature radius.
  if (!sc.charge.no_monopole()) {
    if (classify(j, sc.charge) != AngularClass::MinJ || channel != Channel::MinJ)
      throw DomainError("with a monopole, Lobachevsky radial equations are covered only for j = |k| - 1");
    switch (sc.potential) {
      case PotentialKind::Coulomb: {
        RadialProblem q = lobachevsky_minj_coulomb_problem(alpha, M);
        q.scenario = sc;
        q.j = j;
        return q;
      }
      case PotentialKind::Oscillator:
        p.V = [M, K](double r) { return M * K * sq(std::tanh(r)); };
        p.continuum_edge = K / 2.0;
        p.formula = "lobachevsky-min-j-oscillator";
        break;
      case PotentialKind::None:
        p.V = [](double) { return 0.0; };
        p.continuum_edge = 0.0;
        p.far = FarBoundary::StandingWave;
        p.formula = "lobachevsky-min-j-free";
        break;
    }
    p.origin_exponent = 1.0;
    return p;
  }

  if (!j.is_integer()) throw DomainError("without monopole j must be an integer");
  const double jj = j.value();
  const double cent = jj * (jj + 1.0);
  // (1 + cosh r)/sinh²r = 1/(2 sinh²(r/2)), written without cancellation.
  std::function<double(double)> base;
  switch (channel) {
    case Channel::ParityOdd:
      base = [cent](double r) { return cent / sq(std::sinh(r)); };
      p.origin_exponent = jj + 1.0;
      break;
    case Channel::ParityEven:
    case Channel::Heun1:
      if (j.twice() < 2) throw DomainError("the two-component parity channel needs j >= 1");
      base = [cent, jj](double r) {
        return cent / sq(std::sinh(r)) + (jj + 1.0) / (2.0 * sq(std::sinh(r / 2.0)));
      };
      p.origin_exponent = jj + 2.0;
      break;
    case Channel::Heun2:
      if (j.twice() < 2) throw DomainError("the two-component parity channel needs j >= 1");
      base = [cent, jj](double r) { return cent / sq(std::sinh(r)) - jj / (2.0 * sq(std::sinh(r / 2.0))); };
      p.origin_exponent = jj;
      break;
    default:
      throw DomainError("channel " + to_string(channel) + " does not exist without a monopole in Lobachevsky space");
  }
  const std::string tail = to_string(channel);
  switch (sc.potential) {
    case PotentialKind::Coulomb:
      p.V = [base, M, alpha](double r) { return base(r) - 2.0 * M * alpha / std::tanh(r); };
      p.continuum_edge = -alpha;
      p.formula = "lobachevsky-coulomb-" + tail;
      break;
    case PotentialKind::Oscillator:
      p.V = [base, M, K](double r) { return base(r) + M * K * sq(std::tanh(r)); };
      p.continuum_edge = K / 2.0;
      p.formula = "lobachevsky-oscillator-" + tail;
      break;
    case PotentialKind::None:
      p.V = base;
      p.continuum_edge = 0.0;
      p.far = FarBoundary::StandingWave;
      p.formula = "lobachevsky-free-" + tail;
      break;
  }
  return p;
}

std::vector<double> uniform_grid(double r0, double r1, int n) {
  if (n < 2 || !(r1 > r0)) throw DomainError("grid needs n >= 2 and r1 > r0");
  std::vector<double> g(n);
  const double h = (r1 - r0) / (n - 1);
  for (int i = 0; i < n; ++i) g[i] = r0 + h * i;
  g.back() = r1;
  return g;
}

std::vector<double> default_grid(const RadialProblem& p, const EnergyLevel& lv) {
  const bool flat = p.scenario.geometry == Geometry::Flat;
  const double r0 = flat ? 1e-4 : 1e-3;
  const double h = 1e-3;
  double r1 = 0;
  const bool heun = lv.derivation == Derivation::HeunFormalBetaCondition;
  if (heun) {
    r1 = 2.0 * std::atanh(0.8);
  } else if (p.far == FarBoundary::StandingWave && lv.E > 0) {
    const double k = std::sqrt(2.0 * p.M * p.weight * lv.E);
    r1 = std::min(40.0 * std::numbers::pi / k, flat ? 400.0 : 60.0);
  } else if (flat && p.scenario.potential == PotentialKind::Oscillator) {
    const double x1 = 60.0 + 4.0 * lv.n + 2.0 * p.L.value_or(0.0);
    r1 = std::sqrt(x1 / std::sqrt(p.M * p.scenario.K_osc));
  } else {
    const double d = decay_rate(p, lv);
    const double L = p.L.value_or(p.origin_exponent - 1.0);
    if (flat) {
      if (!(d > 0)) throw DomainError("no decaying solution to size the grid for");
      r1 = std::min((60.0 + 4.0 * (lv.n + L + 1.0)) / d, 2000.0);
    } else {
      r1 = d > 0 ? std::clamp(40.0 / d, 8.0, 40.0) : 40.0;
    }
  }
  const int n = static_cast<int>(std::min(2000001.0, std::ceil((r1 - r0) / h) + 1.0));
  return uniform_grid(r0, r1, std::max(n, 400));
}

EnergyLevel peculiar_level(double M, double E, MonopoleCharge k) {
  if (!(E < 0)) throw DomainError("the peculiar min-j state needs E < 0");
  if (k.k.twice() < 2 && k.k.twice() > -2) throw DomainError("a min-j channel needs |k| >= 1");
  EnergyLevel lv;
  lv.scenario.geometry = Geometry::Flat;
  lv.scenario.potential = PotentialKind::None;
  lv.scenario.charge = k;
  lv.scenario.M = M;
  lv.channel = Channel::MinJ;
  lv.j = min_j(k);
  lv.E = E;
  lv.formula = "flat-free-min-j-peculiar";
  return lv;
}

EnergyLevel free_level(const Scenario& sc, Channel channel, HalfInt j, double E) {
  if (!(E > 0)) throw DomainError("a free continuum level needs E > 0");
  const RadialProblem p = build_problem(sc, channel, j);
  if (p.far != FarBoundary::StandingWave) throw DomainError("free_level needs a potential-free scenario");
  EnergyLevel lv;
  lv.scenario = sc;
  lv.channel = channel;
  lv.j = j;
  lv.E = E;
  lv.formula = p.formula;
  return lv;
}

EnergyLevel relativistic_level(double epsilon, double M, Geometry g) {
  EnergyLevel lv;
  lv.scenario.geometry = g;
  lv.scenario.M = M;
  lv.epsilon_rel = epsilon;
  lv.E = epsilon - M;
  lv.formula = "relativistic-min-j";
  return lv;
}

RadialProblem relativistic_minj_problem(double M, Geometry g) {
  if (!(M > 0)) throw DomainError("mass must be positive");
  RadialProblem p;
  p.scenario.geometry = g;
  p.scenario.M = M;
  p.M = M;
  p.linearity = Linearity::QuadraticInEpsilon;
  p.Q = [M](double, double eps) { return eps * eps - M * M; };
  p.origin_exponent = 1.0;
  p.formula = "relativistic-min-j";
  return p;
}

double free_lobachevsky_u(int j, double k, double r) {
  if (j < 0) throw DomainError("j must be non-negative");
  if (!(k > 0)) throw DomainError("free Lobachevsky solution needs k > 0");
  if (!(r > 0)) throw DomainError("r must be positive");
  // u = y^a (y−1)^b ₂F₁(λ, β; 2b + 1/2; 1 − y), y = cosh²(r/2), a = b = (j+1)/2,
  // λ, β = j + 1 ± ik; the prefactor equals (sinh r / 2)^{j+1}.
  const double J = j + 1.0;
  const cplx lam(J, k), bet(J, -k);
  const double c = J + 0.5;
  const double w = sq(std::sinh(r / 2.0));  // y − 1
  const double log_pref = static_cast<double>(J * (log_sinh(r) - std::numbers::ln2_v<ld>));
  cplx F;
  if (w <= 0.5) {
    F = gauss_2f1(lam, bet, cplx(c), cplx(-w));
  } else if (w < 2.0) {
    // Pfaff: ₂F₁(λ, β; c; z) = (1 − z)^{−λ} ₂F₁(λ, c − β; c; z/(z − 1)).
    const double y = 1.0 + w;
    F = std::exp(-lam * std::log(y)) * gauss_2f1(lam, cplx(c) - bet, cplx(c), cplx(w / y));
  } else {
    // Connection to z = ∞ with −z = w > 0.
    const cplx lc = lgamma_complex(cplx(c));
    const double lw = std::log(w);
    const cplx t1 = std::exp(lc + lgamma_complex(bet - lam) - lgamma_complex(bet) -
                             lgamma_complex(cplx(c) - lam) - lam * lw) *
                    gauss_2f1(lam, lam - c + 1.0, lam - bet + 1.0, cplx(-1.0 / w));
    const cplx t2 = std::exp(lc + lgamma_complex(lam - bet) - lgamma_complex(lam) -
                             lgamma_complex(cplx(c) - bet) - bet * lw) *
                    gauss_2f1(bet, bet - c + 1.0, bet - lam + 1.0, cplx(-1.0 / w));
    F = t1 + t2;
  }
  return std::exp(log_pref) * F.real();
}

StandingWaveReport standing_wave_check(int j, double M, double E, double r_lo, double r_hi, int samples) {
  if (!(E > 0)) throw DomainError("standing-wave check needs E > 0");
  if (!(M > 0)) throw DomainError("mass must be positive");
  if (r_lo < 3.0) throw DomainError("window too close to the origin (r_lo < 3)");
  if (!(r_hi > r_lo) || samples < 2) throw DomainError("empty window");
  const double k = std::sqrt(2.0 * M * E);
  StandingWaveReport rep;
  rep.env_min = std::numeric_limits<double>::infinity();
  rep.env_max = 0;
  for (int i = 0; i < samples; ++i) {
    const double r = r_lo + (r_hi - r_lo) * i / (samples - 1);
    const double d = 1e-5 * std::max(1.0, r);
    const double u = free_lobachevsky_u(j, k, r);
    const double du = (free_lobachevsky_u(j, k, r + d) - free_lobachevsky_u(j, k, r - d)) / (2.0 * d);
    const double env = std::sqrt(u * u + sq(du / k));
    rep.env_min = std::min(rep.env_min, env);
    rep.env_max = std::max(rep.env_max, env);
  }
  rep.flatness = rep.env_max / rep.env_min;
  // Least-squares slope of log u against log r on [1e-3, 1e-2].
  const int m = 21;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int i = 0; i < m; ++i) {
    const double x = std::log(1e-3) + (std::log(1e-2) - std::log(1e-3)) * i / (m - 1);
    const double y = std::log(free_lobachevsky_u(j, k, std::exp(x)));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  rep.origin_slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  return rep;
}

RadialSolution relativistic_minj(double epsilon, double M, int k_sign, Geometry g,
                                 const std::vector<double>& grid) {
  if (!(M > 0)) throw DomainError("mass must be positive");
  if (grid.empty()) throw DomainError("empty grid");
  RadialSolution s;
  s.grid = grid;
  s.values.resize(grid.size());
  const double Q = epsilon * epsilon - M * M;
  const double q = std::sqrt(std::abs(Q));
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double r = grid[i];
    s.values[i] = Q > 0 ? std::sin(q * r) : Q == 0 ? r : std::exp(-q * r);
  }
  s.closed_form.tag = Q > 0 ? "sin(q r)" : Q == 0 ? "r" : "exp(-kappa r)";
  s.closed_form.params = {{"epsilon", epsilon}, {"M", M}, {Q > 0 ? "q" : "kappa", q}};
  if (Q < 0) s.closed_form.note = "below threshold: decaying solution, not regular at r = 0";
  if (g == Geometry::Lobachevsky) {
    s.aux.resize(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double r = grid[i];
      s.aux[i] = (1.0 + std::cosh(r)) / (2.0 * std::sinh(r)) * s.values[i];
    }
    s.aux_label = k_sign >= 0 ? "f2" : "f4";
  }
  return s;
}

RadialSolution analytic_solution(const RadialProblem& p, const EnergyLevel& lv, std::vector<double> grid) {
  if (!lv.admissible) throw DomainError("level is not admissible: " + lv.reason);
  if (lv.channel != p.channel || lv.j != p.j)
    throw DomainError("level and problem refer to different channels");
  if (!std::isfinite(lv.E)) throw DomainError("level energy is not finite");
  if (grid.empty()) grid = default_grid(p, lv);
  for (std::size_t i = 0; i < grid.size(); ++i)
    if (!(grid[i] > 0) || (i && !(grid[i] > grid[i - 1])))
      throw DomainError("grid must be positive and strictly increasing");

  const Scenario& sc = p.scenario;
  const double M = sc.M, alpha = sc.alpha, K = sc.K_osc, E = lv.E;
  const int n = lv.n;
  RadialSolution s;
  std::vector<double>& u = s.values;
  auto& cf = s.closed_form;

  const bool heun = lv.derivation == Derivation::HeunFormalBetaCondition;
  if (heun) {
    if (sc.potential != PotentialKind::Coulomb)
      throw DomainError("the local Heun series about x = 0 does not reach the physical region x = cosh r >= 1");
    const HeunSet hs = heun_params_coulomb(E, alpha, M, p.j, p.channel);
    const double rmax = 2.0 * std::atanh(0.8);
    std::vector<double> g;
    for (double r : grid)
      if (r <= rmax) g.push_back(r);
    grid = g;
    for (double r : grid) {
      const double z = std::tanh(r / 2.0);
      const double pref = std::pow(z, hs.exps.A) * std::pow(1 - z, hs.exps.B) * std::pow(1 + z, hs.exps.C) /
                          std::sqrt(1 - z * z);
      u.push_back(pref * heun_local(hs.params, z));
    }
    cf.tag = "z^A (1-z)^B (1+z)^C H(z) / sqrt(1-z^2), z = tanh(r/2)";
    cf.params = {{"A", hs.exps.A},         {"B", hs.exps.B},         {"C", hs.exps.C},
                 {"gamma", hs.params.gamma}, {"delta", hs.params.delta}, {"epsilon", hs.params.epsilon},
                 {"lambda", hs.params.lambda}, {"beta", hs.params.beta}, {"q", hs.params.q}};
    cf.note = "local Heun series about r = 0 restricted to |z| <= 0.8; the formal condition beta = -n does "
              "not make it a polynomial, so the behaviour at infinity is not encoded";
    s.grid = grid;
    return s;
  }

  s.grid = grid;
  u.resize(grid.size());

  if (sc.geometry == Geometry::Flat) {
    const double L = p.L.value_or(0.0);
    if (sc.potential == PotentialKind::Coulomb) {
      if (!(E < 0)) throw DomainError("bound Coulomb level needs E < 0");
      const double kappa = std::sqrt(-2.0 * M * E);
      check_polynomial(M * alpha / kappa - L - 1.0, n, "1F1 parameter a");
      const auto co = poly_coeffs(n, std::nullopt, 2.0 * L + 2.0);
      for (std::size_t i = 0; i < grid.size(); ++i) {
        const ld r = grid[i], z = 2.0L * kappa * r;
        u[i] = signed_exp(log_poly(co, z, std::log(z)), std::log(r) + L * std::log(z) - z / 2.0L);
      }
      cf.tag = "r z^L exp(-z/2) 1F1(-n; 2L+2; z), z = 2 kappa r";
      cf.params = {{"L", L}, {"kappa", kappa}, {"a", -double(n)}, {"b", 2 * L + 2}};
    } else if (sc.potential == PotentialKind::Oscillator) {
      const double s2 = std::sqrt(M * K);
      check_polynomial(-0.5 * (1.5 + L - E * std::sqrt(M / K)), n, "1F1 parameter a");
      const auto co = poly_coeffs(n, std::nullopt, L + 1.5);
      for (std::size_t i = 0; i < grid.size(); ++i) {
        const ld r = grid[i], x = s2 * r * r;
        u[i] = signed_exp(log_poly(co, x, std::log(x)), std::log(r) + 0.5L * L * std::log(x) - x / 2.0L);
      }
      cf.tag = "r x^(L/2) exp(-x/2) 1F1(-n; L+3/2; x), x = sqrt(M K) r^2";
      cf.params = {{"L", L}, {"a", -double(n)}, {"b", L + 1.5}};
    } else {
      if (p.channel == Channel::MinJ && E < 0) {
        const double kappa = std::sqrt(-2.0 * M * E);
        for (std::size_t i = 0; i < grid.size(); ++i) u[i] = std::exp(-kappa * grid[i]);
        cf.tag = "exp(-kappa r)";
        cf.params = {{"kappa", kappa}};
        cf.note = "Psi = u/r is singular at the origin; norm is the L2(r^2 dr) norm of Psi, finite but the "
                  "state is not regular at r = 0";
        s.norm = std::sqrt(1.0 / (2.0 * kappa));
        return s;
      }
      if (!(E > 0)) throw DomainError("free flat solutions need E > 0 (or E < 0 in the min-j channel)");
      const double k = std::sqrt(2.0 * M * E);
      for (std::size_t i = 0; i < grid.size(); ++i) {
        const double x = k * grid[i];
        u[i] = L == 0.0 ? std::sin(x) : std::sqrt(x) * std::cyl_bessel_j(L + 0.5, x);
      }
      cf.tag = L == 0.0 ? "sin(k r)" : "sqrt(k r) J_{L+1/2}(k r)";
      cf.params = {{"L", L}, {"k", k}};
      return s;
    }
  } else if (p.linearity == Linearity::QuadraticInEpsilon) {
    if (!lv.epsilon_rel) throw DomainError("level carries no relativistic energy");
    const double eps = *lv.epsilon_rel;
    const double A = p.origin_exponent;
    const double gap = M * M - sq(eps + alpha);
    if (!(gap > 0)) throw DomainError("no decaying solution: (eps + alpha)^2 >= M^2");
    const double B = std::sqrt(gap) / 2.0;
    const double nu = -B + std::sqrt(B * B + eps * alpha);
    check_polynomial(nu - A, n, "the decay exponent");
    const auto co = poly_coeffs(n, 2 * A + 2 * B + n, 2 * A);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const ld r = grid[i], x = -std::expm1(-2.0L * r);
      u[i] = signed_exp(log_poly(co, x, 0.0L), A * std::log(x) - 2.0L * B * r);
    }
    cf.tag = "x^A (1-x)^B 2F1(-n, 2A+2B+n; 2A; x), x = 1 - exp(-2r)";
    cf.params = {{"A", A}, {"B", B}, {"nu", nu}, {"epsilon", eps}};
  } else if (sc.potential == PotentialKind::Oscillator) {
    if (p.channel != Channel::MinJ && p.channel != Channel::ParityOdd)
      throw DomainError("no hypergeometric closed form for channel " + to_string(p.channel));
    const double jj = p.channel == Channel::MinJ ? 0.0 : p.j.value();
    const double sdep = oscillator_depth_s(K, M);
    const double rad = M * (K - 2.0 * E);
    if (!(rad > 0)) throw DomainError("oscillator level above the continuum edge K/2");
    const double kappa = std::sqrt(rad);
    const double N = sdep + 0.5 - kappa;
    check_polynomial((N - jj - 1.5) / 2.0, n, "the decay exponent");
    const double b = -sdep + jj + 1.0 + n, c = 0.5 - sdep;
    const auto co = poly_coeffs(n, b, c);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const ld r = grid[i];
      const ld lc = log_cosh(r);
      const ld y = std::exp(std::min(2.0L * lc, 700.0L));
      u[i] = signed_exp(log_poly(co, y, 2.0L * lc), -sdep * lc + (jj + 1.0L) * log_sinh(r));
    }
    cf.tag = "cosh^(-s) r sinh^(j+1) r 2F1(-n, -s+j+1+n; 1/2-s; cosh^2 r)";
    cf.params = {{"s", sdep}, {"a", -sdep / 2.0}, {"b", (jj + 1.0) / 2.0}, {"gamma", c}, {"kappa", kappa}};
  } else if (sc.potential == PotentialKind::Coulomb) {
    if (p.channel != Channel::ParityOdd)
      throw DomainError("no hypergeometric closed form for channel " + to_string(p.channel));
    const double jj = p.j.value();
    const double rad = -2.0 * M * (E + alpha);
    if (!(rad > 0)) throw DomainError("Coulomb level above the continuum edge -alpha");
    const double b = std::sqrt(rad) / 2.0;
    const double N = -b + std::sqrt(b * b + M * alpha);
    check_polynomial(N - jj - 1.0, n, "the decay exponent");
    const double a = jj + 1.0;
    const auto co = poly_coeffs(n, 2 * a + 2 * b + n, 2 * a);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const ld r = grid[i], x = -std::expm1(-2.0L * r);
      u[i] = signed_exp(log_poly(co, x, 0.0L), a * std::log(x) - 2.0L * b * r);
    }
    cf.tag = "x^a (1-x)^b 2F1(-n, 2a+2b+n; 2a; x), x = 1 - exp(-2r)";
    cf.params = {{"a", a}, {"b", b}, {"N", N}};
  } else {
    if (!(E > 0)) throw DomainError("free Lobachevsky solutions need E > 0");
    const double k = std::sqrt(2.0 * M * E);
    if (p.channel == Channel::MinJ) {
      for (std::size_t i = 0; i < grid.size(); ++i) u[i] = std::sin(k * grid[i]);
      cf.tag = "sin(k r)";
    } else if (p.channel == Channel::ParityOdd) {
      const int jj = p.j.twice() / 2;
      for (std::size_t i = 0; i < grid.size(); ++i) u[i] = free_lobachevsky_u(jj, k, grid[i]);
      cf.tag = "y^a (y-1)^b 2F1(a+b+ik, a+b-ik; 2b+1/2; 1-y), y = (cosh r + 1)/2";
      cf.params = {{"a", (jj + 1.0) / 2.0}, {"b", (jj + 1.0) / 2.0}};
    } else {
      throw DomainError("no hypergeometric closed form for channel " + to_string(p.channel));
    }
    cf.params.push_back({"k", k});
    return s;
  }

  // Bound state: flat L²(dr) norm by the trapezoid rule.
  double acc = 0;
  for (std::size_t i = 1; i < grid.size(); ++i)
    acc += 0.5 * (sq(u[i]) + sq(u[i - 1])) * (grid[i] - grid[i - 1]);
  s.norm = std::sqrt(acc);
  return s;
}

namespace {

// Weights of the second derivative at offset 0 from five nodes with offsets d.
std::array<double, 5> second_derivative_weights(const std::array<double, 5>& d) {
  std::array<double, 5> w{};
  for (int k = 0; k < 5; ++k) {
    double den = 1;
    for (int m = 0; m < 5; ++m)
      if (m != k) den *= d[k] - d[m];
    // d²/dx² Π_{m≠k}(x − d_m) at x = 0.
    double num = 0;
    for (int a = 0; a < 5; ++a)
      for (int b = a + 1; b < 5; ++b) {
        if (a == k || b == k) continue;
        double prod = 1;
        for (int m = 0; m < 5; ++m)
          if (m != k && m != a && m != b) prod *= -d[m];
        num += 2.0 * prod;
      }
    w[k] = num / den;
  }
  return w;
}

}  // namespace

double residual(const RadialProblem& p, const RadialSolution& s, const EnergyLevel& lv, int core_steps) {
  const std::size_t N = s.grid.size();
  if (N != s.values.size()) throw DomainError("grid and values differ in length");
  if (core_steps < 0) throw DomainError("core_steps must be non-negative");
  const std::size_t first = std::max<std::size_t>(2, core_steps);
  if (N < first + 202) throw DomainError("grid too coarse: fewer than 200 interior points");
  const bool quad = p.linearity == Linearity::QuadraticInEpsilon;
  double eps = 0;
  if (quad) {
    if (!lv.epsilon_rel) throw DomainError("quadratic problem needs the relativistic energy");
    eps = *lv.epsilon_rel;
  }
  const double e_term = 2.0 * p.M * p.weight * lv.E;
  if (!std::isfinite(e_term) || !std::isfinite(eps)) throw DomainError("level energy is not finite");
  double worst = 0, scale = 0;
  for (std::size_t i = first; i + 2 < N; ++i) {
    std::array<double, 5> d;
    for (int k = 0; k < 5; ++k) d[k] = s.grid[i + k - 2] - s.grid[i];
    const auto w = second_derivative_weights(d);
    double u2 = 0;
    for (int k = 0; k < 5; ++k) u2 += w[k] * s.values[i + k - 2];
    const double r = s.grid[i], u = s.values[i];
    double res, sc;
    if (quad) {
      const double q = p.Q(r, eps);
      res = u2 + q * u;
      sc = std::abs(u2) + std::abs(q * u);
    } else {
      const double v = p.V(r);
      res = u2 + (e_term - v) * u;
      sc = std::abs(u2) + std::abs(v * u) + std::abs(e_term * u);
    }
    worst = std::max(worst, std::abs(res));
    scale = std::max(scale, sc);
  }
  return scale == 0 ? 0.0 : worst / scale;
}

double origin_slope(const RadialSolution& s, int points) {
  if (points < 3 || static_cast<std::size_t>(points) > s.grid.size())
    throw DomainError("origin slope fit needs at least 3 samples");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int i = 0; i < points; ++i) {
    if (s.values[i] == 0) throw DomainError("zero sample inside the origin fit window");
    const double x = std::log(s.grid[i]), y = std::log(std::abs(s.values[i]));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (points * sxy - sx * sy) / (points * sxx - sx * sx);
}

int count_nodes(const RadialSolution& s) {
  double mx = 0;
  for (double v : s.values) mx = std::max(mx, std::abs(v));
  const double tol = 1e-10 * mx;
  int nodes = 0;
  double last = 0;
  for (double v : s.values) {
    if (std::abs(v) <= tol) continue;
    if (last != 0 && (v > 0) != (last > 0)) ++nodes;
    last = v;
  }
  return nodes;
}

}  // namespace monopole
