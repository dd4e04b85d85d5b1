#include "monopole/spectra.hpp"

#include <cmath>
#include <string>

#include "monopole/mixing.hpp"

namespace monopole {

std::string to_string(Derivation d) {
  return d == Derivation::HypergeometricPolynomial ? "hypergeometric-polynomial"
                                                   : "heun-formal-beta-condition";
}

namespace {

void require_positive(double v, const char* name) {
  if (!(v > 0)) throw DomainError(std::string(name) + " must be positive");
}

void require_n(int n) {
  if (n < 0) throw DomainError("radial index n must be non-negative");
}

// Effective L for a flat channel at (j, k).
double flat_L(HalfInt j, MonopoleCharge k, Channel ch) {
  if (!is_admissible(k, j))
    throw DomainError("j = " + j.str() + " is not admissible for k = " + k.k.str());
  const AngularClass cls = classify(j, k);
  if (cls == AngularClass::MinJ) {
    if (ch != Channel::MinJ)
      throw DomainError("j = |k| - 1 only has the min-j channel");
    return 0.0;
  }
  if (ch == Channel::MinJ) throw DomainError("min-j channel requires j = |k| - 1");
  if (cls == AngularClass::NoMonopole && j.twice() == 0)
    throw DomainError("flat space without monopole at j = 0 is not covered (degenerate mixing roots)");
  const RootTriple rt = roots(cubic_invariants(j, k));
  return rt.L[branch_index(ch)];
}

Scenario flat_scenario(PotentialKind pot, double coupling, double M, MonopoleCharge k) {
  Scenario sc;
  sc.geometry = Geometry::Flat;
  sc.potential = pot;
  if (pot == PotentialKind::Coulomb) sc.alpha = coupling;
  if (pot == PotentialKind::Oscillator) sc.K_osc = coupling;
  sc.charge = k;
  sc.M = M;
  return sc;
}

Scenario lob_scenario(PotentialKind pot, double coupling, double M, MonopoleCharge k) {
  Scenario sc = flat_scenario(pot, coupling, M, k);
  sc.geometry = Geometry::Lobachevsky;
  return sc;
}

void mark(EnergyLevel& lv, bool ok, const std::string& reason) {
  lv.admissible = ok;
  lv.reason = ok ? std::string() : reason;
}

}  // namespace

double lob_oscillator_energy(double K_osc, double M, double N) {
  return N * std::sqrt(K_osc / M + 1.0 / (4.0 * M * M)) - (N * N + 0.25) / (2.0 * M);
}

double lob_coulomb_energy(double alpha, double M, double N) {
  return -M * alpha * alpha / (2.0 * N * N) - N * N / (2.0 * M);
}

double oscillator_depth_s(double K_osc, double M) {
  return (-1.0 + std::sqrt(1.0 + 4.0 * M * K_osc)) / 2.0;
}

EnergyLevel flat_coulomb(double alpha, double M, HalfInt j, MonopoleCharge k, int n, Channel branch) {
  require_positive(alpha, "alpha");
  require_positive(M, "M");
  require_n(n);
  const double L = flat_L(j, k, branch);
  EnergyLevel lv;
  lv.scenario = flat_scenario(PotentialKind::Coulomb, alpha, M, k);
  lv.channel = branch;
  lv.j = j;
  lv.n = n;
  lv.L = L;
  lv.N = n + L + 1.0;
  lv.E = -alpha * alpha * M / (2.0 * (*lv.N) * (*lv.N));
  lv.formula = branch == Channel::MinJ ? "flat-coulomb-min-j" : "flat-coulomb-branch";
  return lv;
}

EnergyLevel flat_oscillator(double K_osc, double M, HalfInt j, MonopoleCharge k, int n,
                            Channel branch) {
  require_positive(K_osc, "K_osc");
  require_positive(M, "M");
  require_n(n);
  const double L = flat_L(j, k, branch);
  const double w = std::sqrt(K_osc / M);
  OscillatorCandidates cand;
  cand.quantization = w * (1.5 + L + 2.0 * n);
  cand.printed = 0.5 * cand.quantization;
  EnergyLevel lv;
  lv.scenario = flat_scenario(PotentialKind::Oscillator, K_osc, M, k);
  lv.channel = branch;
  lv.j = j;
  lv.n = n;
  lv.L = L;
  lv.N = 2.0 * n + L + 1.5;
  lv.E = cand.quantization;
  lv.candidates = cand;
  lv.formula = branch == Channel::MinJ ? "flat-oscillator-min-j" : "flat-oscillator-branch";
  return lv;
}

EnergyLevel lob_minj_coulomb(double alpha, double M, int n) {
  require_positive(M, "M");
  require_n(n);
  if (!(alpha > 0 && alpha < 0.5))
    throw DomainError("min-j Coulomb needs 0 < alpha < 1/2 (real Frobenius exponent)");
  const double A = (1.0 + std::sqrt(1.0 - 4.0 * alpha * alpha)) / 2.0;
  const double nu = n + A;
  EnergyLevel lv;
  lv.scenario = lob_scenario(PotentialKind::Coulomb, alpha, M, MonopoleCharge{});
  lv.channel = Channel::MinJ;
  lv.j = HalfInt{};
  lv.n = n;
  lv.N = nu;
  lv.formula = "lobachevsky-min-j-coulomb";
  const double rad = 1.0 - (alpha * alpha + nu * nu) / (M * M);
  if (rad <= 0) {
    lv.E = std::nan("");
    mark(lv, false, "finite spectrum exhausted: alpha^2 + nu^2 >= M^2");
    return lv;
  }
  const double eps = M / std::sqrt(1.0 + alpha * alpha / (nu * nu)) * std::sqrt(rad);
  lv.epsilon_rel = eps;
  lv.E = eps - M;
  // The closed form solves a squared condition; the decay exponent of the
  // far-field factor (1 − x)^B is B = (εα/ν − ν)/2 and must be positive.
  const double B = (eps * alpha / nu - nu) / 2.0;
  if (!(B > 0))
    mark(lv, false, "no decaying solution: far-field exponent (eps*alpha/nu - nu)/2 <= 0");
  return lv;
}

EnergyLevel lob_minj_oscillator(double K_osc, double M, int n) {
  require_positive(K_osc, "K_osc");
  require_positive(M, "M");
  require_n(n);
  EnergyLevel lv;
  lv.scenario = lob_scenario(PotentialKind::Oscillator, K_osc, M, MonopoleCharge{});
  lv.channel = Channel::MinJ;
  lv.n = n;
  lv.N = 2.0 * n + 1.5;
  lv.E = lob_oscillator_energy(K_osc, M, *lv.N);
  lv.formula = "lobachevsky-min-j-oscillator";
  const double limit = std::sqrt(1.0 + 4.0 * K_osc * M) / 2.0;
  mark(lv, *lv.N < limit, "restriction N < sqrt(1 + 4 M K_osc)/2 violated");
  return lv;
}

EnergyLevel lob_nomonopole_coulomb(double alpha, double M, HalfInt j, int n, Channel channel) {
  require_positive(alpha, "alpha");
  require_positive(M, "M");
  require_n(n);
  if (!j.is_integer() || j.twice() < 0) throw DomainError("no-monopole j must be a non-negative integer");
  const double jj = j.value();
  EnergyLevel lv;
  lv.scenario = lob_scenario(PotentialKind::Coulomb, alpha, M, MonopoleCharge{});
  lv.channel = channel;
  lv.j = j;
  lv.n = n;
  switch (channel) {
    case Channel::ParityOdd:
      lv.N = jj + 1.0 + n;
      lv.formula = "lobachevsky-coulomb-parity-odd";
      break;
    case Channel::Heun1:
    case Channel::Heun2:
      if (j.twice() < 2) throw DomainError("parity-even channels need j >= 1");
      lv.N = jj + (channel == Channel::Heun1 ? 1.5 : 0.5) + n / 2.0;
      lv.derivation = Derivation::HeunFormalBetaCondition;
      lv.formula = channel == Channel::Heun1 ? "lobachevsky-coulomb-heun1" : "lobachevsky-coulomb-heun2";
      break;
    default:
      throw DomainError("channel " + to_string(channel) + " not available for the Lobachevsky Coulomb problem");
  }
  lv.E = lob_coulomb_energy(alpha, M, *lv.N);
  mark(lv, M * alpha > (*lv.N) * (*lv.N), "finite spectrum exhausted: M*alpha <= N^2");
  return lv;
}

EnergyLevel lob_nomonopole_oscillator(double K_osc, double M, HalfInt j, int n, Channel channel) {
  require_positive(K_osc, "K_osc");
  require_positive(M, "M");
  require_n(n);
  if (!j.is_integer() || j.twice() < 0) throw DomainError("no-monopole j must be a non-negative integer");
  const double jj = j.value();
  EnergyLevel lv;
  lv.scenario = lob_scenario(PotentialKind::Oscillator, K_osc, M, MonopoleCharge{});
  lv.channel = channel;
  lv.j = j;
  lv.n = n;
  switch (channel) {
    case Channel::ParityOdd:
      lv.N = 2.0 * n + jj + 1.5;
      lv.formula = "lobachevsky-oscillator-parity-odd";
      break;
    case Channel::Heun1:
    case Channel::Heun2:
      if (j.twice() < 2) throw DomainError("parity-even channels need j >= 1");
      lv.N = (channel == Channel::Heun1 ? 2.0 : 1.0) + jj + n;
      lv.derivation = Derivation::HeunFormalBetaCondition;
      lv.formula = channel == Channel::Heun1 ? "lobachevsky-oscillator-heun1" : "lobachevsky-oscillator-heun2";
      break;
    default:
      throw DomainError("channel " + to_string(channel) + " not available for the Lobachevsky oscillator");
  }
  lv.E = lob_oscillator_energy(K_osc, M, *lv.N);
  const double limit = std::sqrt(1.0 + 4.0 * K_osc * M) / 2.0;
  mark(lv, *lv.N < limit, "restriction N < sqrt(1 + 4 M K_osc)/2 violated");
  return lv;
}

EnergyLevel compute_level(const Scenario& sc, HalfInt j, int n, Channel channel) {
  sc.validate();
  EnergyLevel lv;
  if (sc.geometry == Geometry::Flat) {
    switch (sc.potential) {
      case PotentialKind::Coulomb: lv = flat_coulomb(sc.alpha, sc.M, j, sc.charge, n, channel); break;
      case PotentialKind::Oscillator: lv = flat_oscillator(sc.K_osc, sc.M, j, sc.charge, n, channel); break;
      case PotentialKind::None:
        throw DomainError("the free flat problem has no discrete spectrum");
    }
  } else {
    if (sc.potential == PotentialKind::None)
      throw DomainError("the free Lobachevsky problem has a continuous spectrum only");
    if (!sc.charge.no_monopole()) {
      if (classify(j, sc.charge) != AngularClass::MinJ || channel != Channel::MinJ)
        throw DomainError("with a monopole, closed forms in Lobachevsky space exist only for j = |k| - 1");
      lv = sc.potential == PotentialKind::Coulomb ? lob_minj_coulomb(sc.alpha, sc.M, n)
                                                  : lob_minj_oscillator(sc.K_osc, sc.M, n);
      lv.j = j;
    } else {
      lv = sc.potential == PotentialKind::Coulomb ? lob_nomonopole_coulomb(sc.alpha, sc.M, j, n, channel)
                                                  : lob_nomonopole_oscillator(sc.K_osc, sc.M, j, n, channel);
    }
  }
  lv.scenario = sc;
  return lv;
}

namespace {

double length_unit(const EnergyLevel& level, const UnitSystem& u) {
  require_positive(u.hbar, "hbar");
  require_positive(u.c, "c");
  require_positive(u.m, "m");
  const double M = level.scenario.M;
  if (level.scenario.geometry == Geometry::Lobachevsky) {
    if (!u.length) throw DomainError("physical units for Lobachevsky scenarios need the curvature radius R");
    const double implied = u.m * u.c * (*u.length) / u.hbar;
    if (std::abs(implied - M) > 1e-9 * M)
      throw DomainError("natural mass M differs from m c R / hbar for the given units");
    return *u.length;
  }
  if (u.length) {
    const double implied = u.m * u.c * (*u.length) / u.hbar;
    if (std::abs(implied - M) > 1e-9 * M)
      throw DomainError("natural mass M differs from m c l / hbar for the given length unit");
    return *u.length;
  }
  return M * u.hbar / (u.m * u.c);
}

EnergyLevel rescale(EnergyLevel lv, double e_factor, double k_factor) {
  lv.E *= e_factor;
  if (lv.epsilon_rel) *lv.epsilon_rel *= e_factor;
  if (lv.candidates) {
    lv.candidates->printed *= e_factor;
    lv.candidates->quantization *= e_factor;
  }
  lv.scenario.K_osc *= k_factor;
  return lv;
}

}  // namespace

double energy_unit(const EnergyLevel& level, const UnitSystem& u) {
  return u.hbar * u.c / length_unit(level, u);
}

EnergyLevel to_physical_units(const EnergyLevel& level, const UnitSystem& u) {
  if (level.units != Units::Natural) throw DomainError("level is already in physical units");
  if (u.alpha_fs && level.scenario.potential == PotentialKind::Coulomb &&
      std::abs(*u.alpha_fs - level.scenario.alpha) > 1e-12 * level.scenario.alpha)
    throw DomainError("alpha_fs does not match the scenario's Coulomb coupling");
  const double ell = length_unit(level, u);
  const double e = u.hbar * u.c / ell;
  EnergyLevel out = rescale(level, e, e / (ell * ell));
  out.units = Units::Physical;
  return out;
}

EnergyLevel to_natural_units(const EnergyLevel& level, const UnitSystem& u) {
  if (level.units != Units::Physical) throw DomainError("level is already in natural units");
  const double ell = length_unit(level, u);
  const double e = u.hbar * u.c / ell;
  EnergyLevel out = rescale(level, 1.0 / e, ell * ell / e);
  out.units = Units::Natural;
  return out;
}

}  // namespace monopole
