#include "monopole/heunspec.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace monopole {

std::string to_string(HeunKind k) { return k == HeunKind::Coulomb ? "coulomb" : "oscillator"; }

namespace {

double channel_j(HalfInt j, Channel ch) {
  if (ch != Channel::Heun1 && ch != Channel::Heun2)
    throw DomainError("Heun parameters exist only for the heun1/heun2 channels");
  if (!j.is_integer() || j.twice() < 2) throw DomainError("Heun channels need integer j >= 1");
  return j.value();
}

double checked_sqrt(double radicand, const char* name) {
  if (radicand < 0)
    throw DomainError(std::string("negative radicand ") + name + " = " + std::to_string(radicand));
  return std::sqrt(radicand);
}

}  // namespace

HeunSet heun_params_coulomb(double E, double alpha, double M, HalfInt j, Channel ch,
                            BranchOverride ov) {
  const double jj = channel_j(j, ch);
  if (!(M > 0) || !(alpha > 0)) throw DomainError("Coulomb Heun set needs M > 0 and alpha > 0");
  const double k1 = checked_sqrt(-2.0 * M * (E + alpha), "-2M(E + alpha)");
  const double k2 = checked_sqrt(-2.0 * M * (E - alpha), "-2M(E - alpha)");
  HeunSet s;
  s.kind = HeunKind::Coulomb;
  s.channel = ch;
  s.j = j;
  s.E = E;
  s.M = M;
  s.coupling = alpha;
  s.overridden = ov.any();
  if (ch == Channel::Heun1)
    s.exps.A = ov.A ? -(jj + 1.0) : jj + 2.0;
  else
    s.exps.A = ov.A ? 1.0 - jj : jj;
  s.exps.B = ov.B ? 0.5 - k1 : 0.5 + k1;
  s.exps.C = ov.C ? 0.5 + k2 : 0.5 - k2;
  const double A = s.exps.A, B = s.exps.B, C = s.exps.C, S = A + B + C;
  s.params = {2.0 * A, 2.0 * B, 2.0 * C, S - jj - 1.0, S + jj, 4.0 * M * alpha - 2.0 * A * (B - C)};
  return s;
}

HeunSet heun_params_oscillator(double E, double K_osc, double M, HalfInt j, Channel ch,
                               BranchOverride ov) {
  const double jj = channel_j(j, ch);
  if (!(M > 0) || !(K_osc > 0)) throw DomainError("oscillator Heun set needs M > 0 and K_osc > 0");
  const double kappa = checked_sqrt(M * (K_osc - 2.0 * E), "M(K_osc - 2E)");
  const double root = std::sqrt(1.0 + 4.0 * M * K_osc);
  HeunSet s;
  s.kind = HeunKind::Oscillator;
  s.channel = ch;
  s.j = j;
  s.E = E;
  s.M = M;
  s.coupling = K_osc;
  s.overridden = ov.any();
  s.exps.A = ov.A ? 0.5 + 0.5 * root : 0.5 - 0.5 * root;
  if (ch == Channel::Heun1)
    s.exps.B = ov.B ? -0.5 - jj / 2.0 : 1.0 + jj / 2.0;
  else
    s.exps.B = ov.B ? 0.5 - jj / 2.0 : jj / 2.0;
  s.exps.C = ov.C ? -jj / 2.0 : 0.5 + jj / 2.0;
  const double A = s.exps.A, B = s.exps.B, C = s.exps.C, S = A + B + C;
  s.params = {2.0 * A, 2.0 * B + 0.5, 2.0 * C + 0.5, S + kappa, S - kappa, -2.0 * A * (B - C)};
  return s;
}

BetaSolution solve_beta_coulomb(double alpha, double M, HalfInt j, int n, Channel ch) {
  if (n < 0) throw DomainError("n must be non-negative");
  const double jj = channel_j(j, ch);
  // β = S + j = −n fixes κ₂ − κ₁ = A + 1 + j + n = D, and κ₂² − κ₁² = 4Mα.
  const double A = ch == Channel::Heun1 ? jj + 2.0 : jj;
  const double D = A + 1.0 + jj + n;
  const double k1 = (4.0 * M * alpha / D - D) / 2.0;
  BetaSolution out;
  out.n = n;
  out.E = -alpha - k1 * k1 / (2.0 * M);
  out.principal_branch = k1 >= 0;
  if (!out.principal_branch)
    out.note = "sqrt(-2M(E + alpha)) would have to be negative: no solution on the bound-state branch";
  return out;
}

BetaSolution solve_beta_oscillator(double K_osc, double M, HalfInt j, int n, Channel ch) {
  if (n < 0) throw DomainError("n must be non-negative");
  const double jj = channel_j(j, ch);
  if (!(M > 0) || !(K_osc > 0)) throw DomainError("oscillator Heun set needs M > 0 and K_osc > 0");
  // S does not depend on E; β = S − κ = −n gives κ = S + n.
  const double S = 0.5 - 0.5 * std::sqrt(1.0 + 4.0 * M * K_osc) +
                   (ch == Channel::Heun1 ? 1.0 + jj / 2.0 : jj / 2.0) + 0.5 + jj / 2.0;
  const double kappa = S + n;
  BetaSolution out;
  out.n = n;
  out.E = K_osc / 2.0 - kappa * kappa / (2.0 * M);
  out.principal_branch = kappa >= 0;
  if (!out.principal_branch)
    out.note = "S + n < 0: with the principal root this energy gives lambda = -n instead of beta = -n";
  return out;
}

double beta_condition_defect(const HeunSet& s, int n) {
  return std::min(std::abs(s.params.lambda + n), std::abs(s.params.beta + n));
}

double heun_residual_on_disc(const HeunParams& p, double zmax, int points) {
  if (!(zmax > 0 && zmax < 1)) throw DomainError("zmax must lie in (0, 1)");
  if (points < 2) throw DomainError("need at least two points");
  double worst = 0;
  for (int i = 0; i < points; ++i) {
    const double z = -zmax + 2.0 * zmax * i / (points - 1);
    const Jet J = heun_local_jet(p, z);
    worst = std::max(worst, heun_ode_residual(p, z, J));
  }
  return worst;
}

double substitution_residual(const HeunSet& s, double zmax, int points) {
  if (!(zmax > 0 && zmax < 1)) throw DomainError("zmax must lie in (0, 1)");
  const double A = s.exps.A, B = s.exps.B, C = s.exps.C;
  const double jj = s.j.value();
  const bool ch1 = s.channel == Channel::Heun1;
  double worst = 0;
  for (int i = 1; i <= points; ++i) {
    const double z = zmax * i / points;
    const Jet H = heun_local_jet(s.params, z);
    // Logarithmic derivatives of the prefactor.
    double l1 = A / z - B / (1 - z) + C / (1 + z);
    double l2 = -A / (z * z) - B / ((1 - z) * (1 - z)) - C / ((1 + z) * (1 + z));
    if (s.kind == HeunKind::Coulomb) {
      const double w = 1 - z * z;
      l1 += z / w;
      l2 += (1 + z * z) / (w * w);
    }
    // F'/P and F''/P for F = P·H.
    const double f1 = l1 * H.f + H.df;
    const double f2 = (l2 + l1 * l1) * H.f + 2 * l1 * H.df + H.d2f;
    double t2, t1, t0;
    if (s.kind == HeunKind::Coulomb) {
      // F'' − 2z/(1−z²) F' + [8M(E + α(1+z²)/(2z))/(1−z²)² − j(j+1)/z² ∓ ...] F = 0
      const double w = 1 - z * z;
      const double centrifugal = ch1 ? -2.0 * (jj + 1.0) / (z * z * w) : 2.0 * jj / (z * z * w);
      t2 = f2;
      t1 = -2.0 * z / w * f1;
      t0 = 8.0 * s.M * (s.E + s.coupling * (1 + z * z) / (2 * z)) / (w * w) - jj * (jj + 1.0) / (z * z) +
           centrifugal;
      t0 *= H.f;
    } else {
      // (x²−1)F'' + xF' + [2M(E − K(x²−1)/(2x²)) − j(j+1)/(x²−1) ∓ (1+x)(j+1 | j)/(x²−1)] F = 0
      const double x = z, w = x * x - 1;
      const double extra = ch1 ? -(1 + x) * (jj + 1.0) / w : (1 + x) * jj / w;
      t2 = w * f2;
      t1 = x * f1;
      t0 = (2.0 * s.M * (s.E - s.coupling / 2.0 * w / (x * x)) - jj * (jj + 1.0) / w + extra) * H.f;
    }
    const double scale = std::abs(t2) + std::abs(t1) + std::abs(t0);
    worst = std::max(worst, std::abs(t2 + t1 + t0) / scale);
  }
  return worst;
}

}  // namespace monopole
