#pragma once

// Independent numerical eigenvalue machinery: a finite-difference
// discretisation solved as a symmetric tridiagonal problem by Sturm-sequence
// bisection, and a shooting integrator for the ε-quadratic min-j equation.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "monopole/radial.hpp"
#include "monopole/spectra.hpp"

namespace monopole {

/// Uniform grid r_i = r_min + i h, i = 0..N−1, with Dirichlet conditions at
/// both ends. r_min = 0 is allowed: the end node carries the boundary value
/// and the potential is never evaluated there.
struct Grid {
  double r_min = 0, r_max = 1;
  int N = 2000;

  double h() const { return (r_max - r_min) / (N - 1); }
  /// Same interval with the spacing halved.
  Grid refined() const { return {r_min, r_max, 2 * (N - 1) + 1}; }
  /// Same spacing, r_max scaled by `factor`.
  Grid extended(double factor) const;
  void validate() const;
};

/// Validation grid for a problem and a target energy: flat r_max =
/// 80/√(2M|E|) capped at 400 with N = 16000; Lobachevsky r_max = 40 with
/// N = 20000. Both start at r = 0.
Grid default_validation_grid(const RadialProblem& p, double E_target);

struct FdOptions {
  /// Return (4 E_{h/2} − E_h)/3 instead of E_h.
  bool richardson = true;
  /// Require h·√(max(0, λ − V(r))) ≤ 0.05 at the highest requested level.
  bool check_resolution = true;
  /// Nodes next to the origin excluded from the resolution check, where a
  /// Coulomb tail makes the local wavenumber unbounded.
  int resolution_skip = 20;
};

/// Thrown when the grid violates the resolution heuristic.
struct ResolutionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Lowest `count` eigenvalues E (ascending) of −u'' + V u = 2MwE u on the
/// grid. Throws DomainError for QuadraticInEpsilon problems, for a count
/// reaching the continuum edge (box states), and ResolutionError.
std::vector<double> fd_eigen(const RadialProblem& p, const Grid& g, int count, const FdOptions& opt = {});

/// Raw second-order eigenvalues E_h (no extrapolation, no checks).
std::vector<double> fd_eigen_raw(const RadialProblem& p, const Grid& g, int count);

/// Number of FD eigenvalues E strictly below `E` on the grid.
int fd_count_below(const RadialProblem& p, const Grid& g, double E);

/// FD eigenvalues strictly below the continuum edge, recomputed with r_max
/// scaled by 1.5 at the same spacing. Throws DomainError without a finite
/// edge and when the two counts differ.
int count_bound_states(const RadialProblem& p, const Grid& g);

struct ShootOptions {
  double r_start = 1e-6;
  double r_match = 1.0;
  double r_far = 30.0;
  double tolerance = 1e-12;  // per-step relative error of the adaptive RK4
};

struct ShootResult {
  bool decays = false;  // a decaying far-field solution exists at this ε
  double mismatch = 0;  // (F'/F)_outward − (F'/F)_inward at r_match
  double wronskian = 0; // normalised Wronskian of the two solutions at r_match
  double kappa = 0;     // far-field decay rate √(M² − (ε + α)²)
  std::string note;
};

/// Shoots F'' + Q(r, ε) F = 0 for Q = (ε + α coth r)² − M² (flat: α = 0,
/// Q = ε² − M²): regular Frobenius start F ~ r^A at the origin, exactly
/// decaying start in the far field, log-derivative mismatch at r_match.
/// A non-decaying far field ((ε + α)² ≥ M²) gives decays = false and no
/// mismatch. Throws DomainError for a LinearInE problem or α > 1/2.
ShootResult shoot_decay(const RadialProblem& p, double epsilon, const ShootOptions& opt = {});

/// One oracle comparison of an analytic energy with an FD eigenvalue.
struct OracleEntry {
  std::string label;
  Channel channel = Channel::MinJ;
  HalfInt j;
  int n = 0;
  double analytic = 0;
  double numeric = 0;
  double abs_dev = 0;
  double rel_dev = 0;
};

OracleEntry make_entry(std::string label, const EnergyLevel& lv, double numeric);

struct CountEntry {
  std::string label;
  int analytic = 0;
  int numeric = 0;
  bool stable = true;  // same numeric count on every grid tried
};

struct ArbitrationVerdict {
  std::string family;
  /// "quantization", "printed", "both" or "none".
  std::string matching;
  double max_rel_dev_quantization = 0;
  double max_rel_dev_printed = 0;
  /// FD level spacing against the two candidate spacings.
  double fd_spacing = 0;
  double spacing_quantization = 0;
  double spacing_printed = 0;
  bool stable_across_grids = true;
};

struct OracleReport {
  std::string problem;
  std::vector<OracleEntry> entries;
  std::vector<CountEntry> counts;
  std::vector<ArbitrationVerdict> verdicts;
};

/// Compares FD eigenvalues of the flat oscillator channels (pairs of
/// channel and j at one monopole charge) for n = 0..n_max with both
/// candidate closed forms, on the default grid and on a second grid with
/// 1.5× the points and 1.25× r_max. A candidate matches when every level
/// agrees to `tolerance` relative. Throws DomainError when neither matches.
ArbitrationVerdict arbitrate_oscillator_prefactor(const Scenario& sc,
                                                  const std::vector<std::pair<Channel, HalfInt>>& channels,
                                                  int n_max, double tolerance = 1e-4,
                                                  OracleReport* report = nullptr);

}  // namespace monopole
