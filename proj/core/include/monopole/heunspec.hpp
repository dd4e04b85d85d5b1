#pragma once

// Heun parameter sets of the two parity-even Lobachevsky channels and the
// formal quantization condition β = −n.

#include <string>

#include "monopole/quantum.hpp"
#include "monopole/specfun.hpp"

namespace monopole {

/// Powers of z, 1 − z and −1 − z in the substitution F = z^A (1−z)^B (−1−z)^C H.
struct SubstitutionExponents {
  double A = 0, B = 0, C = 0;
};

/// Exponent branch selection. The default (all false) is the bound-state
/// choice; setting a flag picks the other Frobenius index of that point.
struct BranchOverride {
  bool A = false, B = false, C = false;
  bool any() const { return A || B || C; }
};

enum class HeunKind { Coulomb, Oscillator };

struct HeunSet {
  HeunKind kind = HeunKind::Coulomb;
  Channel channel = Channel::Heun1;
  HalfInt j;
  double E = 0, M = 1, coupling = 0;  // coupling = α or K_osc
  SubstitutionExponents exps;
  HeunParams params;
  bool overridden = false;
};

/// Coulomb channel (variable z = tanh(r/2)):
///   γ = 2A, δ = 2B, ε = 2C, q = 4Mα − 2A(B − C), λ = S − j − 1, β = S + j,
/// S = A + B + C, with A = j + 2 (Heun1) or j (Heun2),
/// B = 1/2 + √(−2M(E + α)), C = 1/2 − √(−2M(E − α)).
/// Throws DomainError naming the radicand when E + α ≥ 0 or E − α ≥ 0 would
/// make it negative.
HeunSet heun_params_coulomb(double E, double alpha, double M, HalfInt j, Channel ch,
                            BranchOverride ov = {});

/// Oscillator channel (variable x = cosh r):
///   γ = 2A, δ = 2B + 1/2, ε = 2C + 1/2, q = −2A(B − C), λ, β = S ± √(M(K − 2E)),
/// with A = 1/2 − √(1 + 4MK)/2, C = 1/2 + j/2 and B = 1 + j/2 (Heun1) or
/// j/2 (Heun2).
HeunSet heun_params_oscillator(double E, double K_osc, double M, HalfInt j, Channel ch,
                               BranchOverride ov = {});

/// Result of imposing one exponent parameter = −n.
struct BetaSolution {
  double E = 0;
  int n = 0;
  /// True when β = −n holds with the principal square root; otherwise the
  /// energy makes λ = −n (the Heun equation is symmetric in λ ↔ β).
  bool principal_branch = true;
  std::string note;
};

BetaSolution solve_beta_coulomb(double alpha, double M, HalfInt j, int n, Channel ch);
BetaSolution solve_beta_oscillator(double K_osc, double M, HalfInt j, int n, Channel ch);

/// Distance of min(|λ + n|, |β + n|) from zero for a regenerated set.
double beta_condition_defect(const HeunSet& s, int n);

/// Max relative residual of the Heun equation for the local series on
/// `points` equally spaced real z in [−zmax, zmax].
double heun_residual_on_disc(const HeunParams& p, double zmax = 0.8, int points = 161);

/// Max relative residual of the original radial equation written in the Heun
/// variable (z = tanh(r/2) or x = cosh r), evaluated for
/// F = z^A (1−z)^B (1+z)^C H(z) (times (1−z²)^{−1/2} for Coulomb) on
/// (0, zmax]. Checks the substitution itself, analytically differentiated.
double substitution_residual(const HeunSet& s, double zmax = 0.8, int points = 80);

std::string to_string(HeunKind k);

}  // namespace monopole
