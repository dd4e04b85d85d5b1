#pragma once

// Closed-form energy levels with channel labels, bound-state admissibility
// and conversion between natural and physical units.

#include <optional>
#include <string>

#include "monopole/quantum.hpp"

namespace monopole {

enum class Derivation {
  HypergeometricPolynomial,  // terminating ₁F₁/₂F₁ series
  HeunFormalBetaCondition    // only β = −n imposed; no polynomial constructed
};
std::string to_string(Derivation d);

enum class Units { Natural, Physical };

/// The two competing closed forms of a flat oscillator level.
struct OscillatorCandidates {
  double printed = 0;       // prefactor 1/2
  double quantization = 0;  // prefactor 1, from a = −n
  /// Which one a finite-difference arbitration confirmed ("quantization",
  /// "printed"), empty until a validation run sets it.
  std::string confirmed;
};

struct EnergyLevel {
  Scenario scenario;
  Channel channel = Channel::MinJ;
  HalfInt j;
  int n = 0;
  double E = 0;                       // rest energy excluded
  std::optional<double> epsilon_rel;  // relativistic energy, where available
  Derivation derivation = Derivation::HypergeometricPolynomial;
  bool admissible = true;
  std::string reason;   // why inadmissible (empty when admissible)
  std::string formula;  // identifier of the closed form used
  Units units = Units::Natural;

  // Channel-local metadata.
  std::optional<double> L;  // effective angular momentum (flat channels)
  std::optional<double> N;  // principal-like number (ν for the min-j Coulomb case)
  std::optional<OscillatorCandidates> candidates;
};

/// Flat Coulomb: E = −α²M / (2(n + L + 1)²); L from the mixing roots for
/// A1..A3, L = 0 for MinJ.
EnergyLevel flat_coulomb(double alpha, double M, HalfInt j, MonopoleCharge k, int n, Channel branch);

/// Flat oscillator; E carries the a = −n value √(K/M)(2n + L + 3/2), the
/// printed prefactor-1/2 variant is kept in `candidates`.
EnergyLevel flat_oscillator(double K_osc, double M, HalfInt j, MonopoleCharge k, int n,
                            Channel branch);

/// Lobachevsky, j = |k| − 1, Coulomb. Requires 0 < α < 1/2.
EnergyLevel lob_minj_coulomb(double alpha, double M, int n);

/// Lobachevsky, j = |k| − 1, oscillator; N = 2n + 3/2.
EnergyLevel lob_minj_oscillator(double K_osc, double M, int n);

/// Lobachevsky without monopole, Coulomb. channel ∈ {ParityOdd, Heun1, Heun2}.
EnergyLevel lob_nomonopole_coulomb(double alpha, double M, HalfInt j, int n, Channel channel);

/// Lobachevsky without monopole, oscillator. channel ∈ {ParityOdd, Heun1, Heun2}.
EnergyLevel lob_nomonopole_oscillator(double K_osc, double M, HalfInt j, int n, Channel channel);

/// Lobachevsky oscillator closed form N√(K/M + 1/(2M)²) − (N² + 1/4)/(2M).
double lob_oscillator_energy(double K_osc, double M, double N);
/// Lobachevsky Coulomb closed form −Mα²/(2N²) − N²/(2M).
double lob_coulomb_energy(double alpha, double M, double N);
/// s = (−1 + √(1 + 4MK))/2, the depth parameter of the tanh² well.
double oscillator_depth_s(double K_osc, double M);

/// Dispatch on the scenario (geometry, potential, charge).
EnergyLevel compute_level(const Scenario& sc, HalfInt j, int n, Channel channel);

/// Constants needed to leave natural units. `length` is the curvature
/// radius R for Lobachevsky scenarios; for flat ones it is optional and
/// defaults to ℓ = M ħ/(m c), the length for which the natural mass is M.
struct UnitSystem {
  double hbar = 1, c = 1, m = 1;
  std::optional<double> length;
  std::optional<double> alpha_fs;  // e²/ħc, checked against α when given
};

/// ħc/ℓ, the physical energy of one natural unit.
double energy_unit(const EnergyLevel& level, const UnitSystem& u);

/// Natural → physical: energies scale by ħc/ℓ, K by ħc/ℓ³, M becomes m.
EnergyLevel to_physical_units(const EnergyLevel& level, const UnitSystem& u);
/// Exact inverse of to_physical_units.
EnergyLevel to_natural_units(const EnergyLevel& level, const UnitSystem& u);

}  // namespace monopole
