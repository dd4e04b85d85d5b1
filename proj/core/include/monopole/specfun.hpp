#pragma once

// Series evaluation of ₁F₁, ₂F₁ and the local general-Heun solution with
// singular points {0, 1, −1, ∞}.

#include <complex>
#include <stdexcept>

namespace monopole {

/// A series failed to reach its accuracy target within the term cap.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SeriesOptions {
  int max_terms = 10000;
  bool compensated = false;  // Neumaier summation
};

/// Value and first two derivatives of a function at a point.
struct Jet {
  double f = 0, df = 0, d2f = 0;
};

/// True when x is a non-positive integer (to 1e-12); n receives −x.
bool is_nonpositive_integer(double x, int* n = nullptr);

/// ₁F₁(a; b; z). For a = −n this is the degree-n polynomial.
double kummer_1f1(double a, double b, double z, const SeriesOptions& opt = {});
/// Value and z-derivatives, using d/dz ₁F₁(a;b;z) = (a/b) ₁F₁(a+1;b+1;z).
Jet kummer_1f1_jet(double a, double b, double z, const SeriesOptions& opt = {});

/// ₂F₁(a, b; c; z) for |z| < 1, or for any z when a or b is a
/// non-positive integer (polynomial case).
double gauss_2f1(double a, double b, double c, double z, const SeriesOptions& opt = {});
Jet gauss_2f1_jet(double a, double b, double c, double z, const SeriesOptions& opt = {});

/// Complex-parameter ₂F₁ series, |z| < 1 only.
std::complex<double> gauss_2f1(std::complex<double> a, std::complex<double> b,
                               std::complex<double> c, std::complex<double> z,
                               const SeriesOptions& opt = {});

/// log Γ(z) for complex z (Lanczos, reflection for Re z < 1/2).
std::complex<double> lgamma_complex(std::complex<double> z);

/// Parameters of
///   H'' + (γ/z + δ/(z−1) + ε/(z+1)) H' + (λβ z − q)/(z(z−1)(z+1)) H = 0.
struct HeunParams {
  double gamma = 1, delta = 0, epsilon = 0, lambda = 0, beta = 0, q = 0;

  /// γ + δ + ε − (λ + β + 1); zero for a well-formed set.
  double fuchs_residual() const { return gamma + delta + epsilon - (lambda + beta + 1.0); }
};

/// Local Frobenius solution about z = 0 normalised to H(0) = 1, |z| < 1.
double heun_local(const HeunParams& p, double z, const SeriesOptions& opt = {});
/// H, H', H'' from the term-wise differentiated series.
Jet heun_local_jet(const HeunParams& p, double z, const SeriesOptions& opt = {});

/// Relative residual of the Heun equation (multiplied through by
/// z(z−1)(z+1)) for the jet J at z; relative to the sum of term magnitudes.
double heun_ode_residual(const HeunParams& p, double z, const Jet& J);

}  // namespace monopole
