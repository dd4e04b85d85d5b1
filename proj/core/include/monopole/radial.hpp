#pragma once

// One-dimensional radial problems in normal form, closed-form wavefunctions
// built from the hypergeometric substitutions, and finite-difference
// residual checks of those closed forms.

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "monopole/quantum.hpp"
#include "monopole/spectra.hpp"

namespace monopole {

enum class Linearity {
  LinearInE,          // u'' + (2 M w E − V(r)) u = 0
  QuadraticInEpsilon  // F'' + Q(r, ε) F = 0
};

enum class FarBoundary { Decay, StandingWave };

struct RadialProblem {
  Scenario scenario;
  Channel channel = Channel::MinJ;
  HalfInt j;
  double M = 1;
  double weight = 1;
  Linearity linearity = Linearity::LinearInE;
  /// V(r) for LinearInE problems (already multiplied by 2M).
  std::function<double(double)> V;
  /// Q(r, ε) for QuadraticInEpsilon problems.
  std::function<double(double, double)> Q;
  /// Frobenius exponent s of the regular solution, u ~ r^s at the origin.
  double origin_exponent = 1;
  FarBoundary far = FarBoundary::Decay;
  /// lim V/(2Mw) for r → ∞ when finite (energy units).
  std::optional<double> continuum_edge;
  /// Identifier of the equation, e.g. "lobachevsky-coulomb-parity-odd".
  std::string formula;
  /// Effective angular momentum for flat channels.
  std::optional<double> L;
};

/// Builds the radial equation for a channel; the monopole charge is taken
/// from the scenario. Throws DomainError on an unsupported combination.
RadialProblem build_problem(const Scenario& sc, Channel channel, HalfInt j);

/// The equation F'' + ((ε + α coth r)² − M²) F = 0 of the Lobachevsky min-j Coulomb
/// channel; α = 0 is accepted (free case).
RadialProblem lobachevsky_minj_coulomb_problem(double alpha, double M);

/// Tag and parameters of the closed form behind a solution.
struct ClosedForm {
  std::string tag;
  std::vector<std::pair<std::string, double>> params;
  std::string note;
};

struct RadialSolution {
  std::vector<double> grid;
  std::vector<double> values;
  ClosedForm closed_form;
  std::optional<double> norm;
  /// Optional second sampled quantity (e.g. a spinor component) with label.
  std::vector<double> aux;
  std::string aux_label;
};

/// n points from r0 to r1 inclusive, uniform.
std::vector<double> uniform_grid(double r0, double r1, int n);

/// Grid used when none is given: uniform from 1e-4 (flat) or 1e-3
/// (Lobachevsky), spacing ≤ 1e-3, long enough for the solution to decay.
std::vector<double> default_grid(const RadialProblem& p, const EnergyLevel& level);

/// Samples the closed-form solution of `level` on `grid` (default grid if
/// empty). Throws DomainError if the level is inadmissible or its
/// parameters do not give a terminating series, and for Heun-derived levels
/// whose local series does not cover the physical region.
RadialSolution analytic_solution(const RadialProblem& p, const EnergyLevel& level,
                                 std::vector<double> grid = {});

/// Bound level for the peculiar flat min-j solution u = e^{−κr} of the free
/// problem at a chosen E < 0 (Ψ = u/r is singular at the origin).
EnergyLevel peculiar_level(double M, double E, MonopoleCharge k);

/// Continuum level with energy E > 0 for a free problem.
EnergyLevel free_level(const Scenario& sc, Channel channel, HalfInt j, double E);

/// max |u'' + k²(r) u| / max(|u''| + |V u| + |2MwE u|) over interior points,
/// with 5-point (4th-order) second-derivative weights built on the actual
/// nodes, so node rounding does not pollute the result. The first
/// `core_steps` samples are skipped: there u ~ r^s with non-integer s is not
/// resolved by a fixed-step stencil, and origin_slope checks that region
/// instead. Needs at least 200 evaluated points.
double residual(const RadialProblem& p, const RadialSolution& s, const EnergyLevel& level,
                int core_steps = 100);

/// Least-squares slope of log|u| against log r over the first `points`
/// samples; compare with RadialProblem::origin_exponent.
double origin_slope(const RadialSolution& s, int points = 20);

/// Number of sign changes, ignoring samples below 1e-10 of the maximum.
int count_nodes(const RadialSolution& s);

/// Regular solution of the free Lobachevsky parity-odd equation
/// u'' + (k² − j(j+1)/sinh²r) u = 0, normalised so that u ~ (r/2)^{j+1}.
double free_lobachevsky_u(int j, double k, double r);

struct StandingWaveReport {
  double flatness = 0;  // max/min of the envelope √(u² + (u'/k)²) on the window
  double env_min = 0, env_max = 0;
  double origin_slope = 0;  // d log u / d log r fitted on [1e-3, 1e-2]
};

/// Free Lobachevsky particle at 2ME = k² > 0: envelope flatness on
/// [r_lo, r_hi] and the origin exponent. Throws for E ≤ 0 or r_lo < 3.
StandingWaveReport standing_wave_check(int j, double M, double E, double r_lo, double r_hi,
                                       int samples = 2001);

/// F'' + (ε² − M²) F = 0: sin(qr) for ε² > M², r at ε² = M², and the
/// decaying e^{−κr} below threshold. For Lobachevsky the component
/// f = (1 + cosh r)/(2 sinh r)·F is sampled into `aux` (labelled f2 for
/// k > 0, f4 for k < 0).
RadialSolution relativistic_minj(double epsilon, double M, int k_sign, Geometry g,
                                 const std::vector<double>& grid);

/// The relativistic min-j equation as a RadialProblem (Q = ε² − M²).
RadialProblem relativistic_minj_problem(double M, Geometry g);
/// Level carrying only ε, for residual checks of relativistic_minj.
EnergyLevel relativistic_level(double epsilon, double M, Geometry g);

}  // namespace monopole
