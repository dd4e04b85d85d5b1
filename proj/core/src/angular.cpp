#include "monopole/angular.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace monopole {

bool WignerIndex::valid() const noexcept {
  const int J = j.twice(), A = m1.twice(), B = m2.twice();
  if (J < 0) return false;
  if (std::abs(A) > J || std::abs(B) > J) return false;
  return (J - A) % 2 == 0 && (J - B) % 2 == 0;
}

void WignerIndex::validate() const {
  if (!valid())
    throw DomainError("invalid Wigner index j = " + j.str() + ", m1 = " + m1.str() +
                      ", m2 = " + m2.str());
}

namespace {

double log_fact(int n) { return std::lgamma(static_cast<double>(n) + 1.0); }

// Sum over s of w_s cos(θ/2)^p_s sin(θ/2)^q_s; with derivative=true each
// monomial is replaced by its θ-derivative.
double wigner_sum(const WignerIndex& idx, double theta, bool derivative) {
  idx.validate();
  if (theta < 0.0 || theta > std::numbers::pi)
    throw DomainError("theta outside [0, pi]");
  // Integers j+m1 etc. from doubled values.
  const int jp1 = (idx.j.twice() + idx.m1.twice()) / 2;  // j + m1
  const int jm1 = (idx.j.twice() - idx.m1.twice()) / 2;  // j - m1
  const int jp2 = (idx.j.twice() + idx.m2.twice()) / 2;  // j + m2
  const int jm2 = (idx.j.twice() - idx.m2.twice()) / 2;  // j - m2
  const int dm = (idx.m1.twice() - idx.m2.twice()) / 2;  // m1 - m2
  const int two_j = idx.j.twice();

  const double half_norm = 0.5 * (log_fact(jp1) + log_fact(jm1) + log_fact(jp2) + log_fact(jm2));
  const double C = std::cos(0.5 * theta);
  const double S = std::sin(0.5 * theta);

  const int s_min = std::max(0, -dm);
  const int s_max = std::min(jp2, jm1);
  double sum = 0.0;
  for (int s = s_min; s <= s_max; ++s) {
    const double lw = half_norm - log_fact(jp2 - s) - log_fact(s) - log_fact(dm + s) -
                      log_fact(jm1 - s);
    const double w = ((dm + s) % 2 == 0 ? 1.0 : -1.0) * std::exp(lw);
    const int p = two_j + (idx.m2.twice() - idx.m1.twice()) / 2 - 2 * s;  // cos power
    const int q = dm + 2 * s;                                             // sin power
    double term;
    if (!derivative) {
      term = std::pow(C, p) * std::pow(S, q);
    } else {
      // d/dθ C^p S^q = (1/2)(q C^{p+1} S^{q-1} − p C^{p-1} S^{q+1})
      term = 0.0;
      if (q > 0) term += q * std::pow(C, p + 1) * std::pow(S, q - 1);
      if (p > 0) term -= p * std::pow(C, p - 1) * std::pow(S, q + 1);
      term *= 0.5;
    }
    sum += w * term;
  }
  return sum;
}

// D_σ = d^j_{−m,σ}(θ), zero when σ is outside [−j, j].
struct Dfun {
  HalfInt j, mu;
  double value(HalfInt sigma, double th) const {
    WignerIndex idx{j, mu, sigma};
    return idx.valid() ? small_d(idx, th) : 0.0;
  }
  double deriv(HalfInt sigma, double th) const {
    WignerIndex idx{j, mu, sigma};
    return idx.valid() ? small_d_derivative(idx, th) : 0.0;
  }
};

// Worst residual of the derivative and the algebraic identity for column σ.
double pair_residual(const Dfun& D, HalfInt m, HalfInt sigma, double nu_lo, double nu_hi,
                     double th) {
  const HalfInt one = HalfInt::integer(1);
  const double lo = D.value(sigma - one, th);
  const double hi = D.value(sigma + one, th);
  const double r1 = D.deriv(sigma, th) - (nu_lo * lo - nu_hi * hi);
  const double lhs = (-m.value() - sigma.value() * std::cos(th)) / std::sin(th) * D.value(sigma, th);
  const double r2 = lhs - (-nu_lo * lo - nu_hi * hi);
  return std::max(std::abs(r1), std::abs(r2));
}

}  // namespace

double small_d(const WignerIndex& idx, double theta) { return wigner_sum(idx, theta, false); }

double small_d_derivative(const WignerIndex& idx, double theta) {
  return wigner_sum(idx, theta, true);
}

std::vector<double> interior_grid(int n) {
  if (n < 1) throw DomainError("grid needs at least one point");
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i) g[i] = std::numbers::pi * (i + 0.5) / n;
  return g;
}

double check_recurrences(HalfInt j, MonopoleCharge k, HalfInt m,
                         const std::vector<double>& theta_grid) {
  if (!is_admissible(k, j)) throw DomainError("(j, k) not admissible");
  if (!WignerIndex{j, -m, -m}.valid())
    throw DomainError("invalid m = " + m.str() + " for j = " + j.str());
  for (double th : theta_grid)
    if (!(th > 0.0 && th < std::numbers::pi)) throw DomainError("theta grid must be interior to (0, pi)");

  const Dfun D{j, -m};
  const HalfInt one = HalfInt::integer(1);
  const HalfInt kk = k.k;
  double worst = 0.0;

  if (classify(j, k) == AngularClass::MinJ) {
    // Only D_{k-1} (k > 0) or D_{k+1} (k < 0) exists.
    const double nu = std::sqrt((k.k.abs().value() - 1.0) / 2.0);
    for (double th : theta_grid) {
      if (kk.twice() > 0)
        worst = std::max(worst, pair_residual(D, m, kk - one, nu, 0.0, th));
      else
        worst = std::max(worst, pair_residual(D, m, kk + one, 0.0, nu, th));
    }
    return worst;
  }

  const Couplings cp = couplings(j, k);
  for (double th : theta_grid) {
    worst = std::max(worst, pair_residual(D, m, kk - one, cp.a, cp.c, th));
    worst = std::max(worst, pair_residual(D, m, kk, cp.c, cp.d, th));
    worst = std::max(worst, pair_residual(D, m, kk + one, cp.d, cp.b, th));
  }
  return worst;
}

}  // namespace monopole
