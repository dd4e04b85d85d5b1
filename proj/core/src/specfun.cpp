#include "monopole/specfun.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "monopole/quantum.hpp"

namespace monopole {

namespace {

// Neumaier-compensated or plain accumulator.
template <class T>
struct Accumulator {
  bool compensated;
  T sum{}, carry{};
  void add(T x) {
    if (!compensated) {
      sum += x;
      return;
    }
    const T t = sum + x;
    if constexpr (std::is_same_v<T, double>) {
      if (std::abs(sum) >= std::abs(x))
        carry += (sum - t) + x;
      else
        carry += (x - t) + sum;
    } else {
      carry += (sum - t) + x;
    }
    sum = t;
  }
  T value() const { return sum + carry; }
};

constexpr double kTarget = 1e-16;
constexpr double kAccept = 1e-13;

}  // namespace

bool is_nonpositive_integer(double x, int* n) {
  if (x > 1e-12) return false;
  const double r = std::round(x);
  if (std::abs(x - r) > 1e-12) return false;
  if (n) *n = static_cast<int>(-r);
  return true;
}

double kummer_1f1(double a, double b, double z, const SeriesOptions& opt) {
  int na = -1, nb = -1;
  const bool poly = is_nonpositive_integer(a, &na);
  if (is_nonpositive_integer(b, &nb) && !(poly && na < nb))
    throw DomainError("1F1: b is a non-positive integer");
  Accumulator<double> acc{opt.compensated};
  double term = 1.0;
  acc.add(term);
  if (poly) {
    for (int k = 0; k < na; ++k) {
      term *= (a + k) / (b + k) * z / (k + 1);
      acc.add(term);
    }
    return acc.value();
  }
  for (int k = 0; k < opt.max_terms; ++k) {
    term *= (a + k) / (b + k) * z / (k + 1);
    acc.add(term);
    const double s = std::abs(acc.value());
    if (k > 2 && std::abs(term) <= kTarget * s && std::abs((a + k + 1) / (b + k + 1) * z / (k + 2)) < 0.5)
      return acc.value();
  }
  const double s = std::abs(acc.value());
  if (std::abs(term) > kAccept * s)
    throw ConvergenceError("1F1 series did not converge within the term cap");
  return acc.value();
}

Jet kummer_1f1_jet(double a, double b, double z, const SeriesOptions& opt) {
  Jet J;
  J.f = kummer_1f1(a, b, z, opt);
  J.df = a == 0.0 ? 0.0 : a / b * kummer_1f1(a + 1, b + 1, z, opt);
  J.d2f = (a == 0.0 || a + 1 == 0.0)
              ? 0.0
              : a * (a + 1) / (b * (b + 1)) * kummer_1f1(a + 2, b + 2, z, opt);
  return J;
}

double gauss_2f1(double a, double b, double c, double z, const SeriesOptions& opt) {
  int na = -1, nb = -1, nc = -1;
  const bool pa = is_nonpositive_integer(a, &na);
  const bool pb = is_nonpositive_integer(b, &nb);
  int deg = -1;
  if (pa) deg = na;
  if (pb) deg = deg < 0 ? nb : std::min(deg, nb);
  if (is_nonpositive_integer(c, &nc) && !(deg >= 0 && deg < nc))
    throw DomainError("2F1: c is a non-positive integer");
  Accumulator<double> acc{opt.compensated};
  double term = 1.0;
  acc.add(term);
  if (deg >= 0) {
    for (int k = 0; k < deg; ++k) {
      term *= (a + k) * (b + k) / ((c + k) * (k + 1)) * z;
      acc.add(term);
    }
    return acc.value();
  }
  if (!(std::abs(z) < 1.0)) throw DomainError("2F1 series needs |z| < 1");
  for (int k = 0; k < opt.max_terms; ++k) {
    term *= (a + k) * (b + k) / ((c + k) * (k + 1)) * z;
    acc.add(term);
    const double ratio = std::abs((a + k + 1) * (b + k + 1) / ((c + k + 1) * (k + 2)) * z);
    // Once the ratio is below 1 the remaining tail is bounded geometrically.
    if (ratio < 1.0 && std::abs(term) * ratio / (1.0 - ratio) <= kTarget * std::abs(acc.value()))
      return acc.value();
  }
  if (std::abs(term) > kAccept * std::abs(acc.value()))
    throw ConvergenceError("2F1 series did not converge within the term cap");
  return acc.value();
}

Jet gauss_2f1_jet(double a, double b, double c, double z, const SeriesOptions& opt) {
  Jet J;
  J.f = gauss_2f1(a, b, c, z, opt);
  J.df = (a == 0.0 || b == 0.0) ? 0.0 : a * b / c * gauss_2f1(a + 1, b + 1, c + 1, z, opt);
  const double ab2 = a * (a + 1) * b * (b + 1);
  J.d2f = ab2 == 0.0 ? 0.0 : ab2 / (c * (c + 1)) * gauss_2f1(a + 2, b + 2, c + 2, z, opt);
  return J;
}

std::complex<double> gauss_2f1(std::complex<double> a, std::complex<double> b,
                               std::complex<double> c, std::complex<double> z,
                               const SeriesOptions& opt) {
  if (!(std::abs(z) < 1.0)) throw DomainError("complex 2F1 series needs |z| < 1");
  Accumulator<std::complex<double>> acc{opt.compensated};
  std::complex<double> term = 1.0;
  acc.add(term);
  for (int k = 0; k < opt.max_terms; ++k) {
    term *= (a + double(k)) * (b + double(k)) / ((c + double(k)) * double(k + 1)) * z;
    acc.add(term);
    const double ratio =
        std::abs((a + double(k + 1)) * (b + double(k + 1)) / ((c + double(k + 1)) * double(k + 2)) * z);
    if (ratio < 1.0 && std::abs(term) * ratio / (1.0 - ratio) <= kTarget * std::abs(acc.value()))
      return acc.value();
  }
  throw ConvergenceError("complex 2F1 series did not converge within the term cap");
}

std::complex<double> lgamma_complex(std::complex<double> z) {
  using cd = std::complex<double>;
  constexpr double pi = std::numbers::pi;
  if (z.real() < 0.5) {
    // Γ(z)Γ(1−z) = π / sin(πz)
    return std::log(pi) - std::log(std::sin(pi * z)) - lgamma_complex(1.0 - z);
  }
  static constexpr std::array<double, 9> g = {
      0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
      771.32342877765313,   -176.61502916214059,   12.507343278686905,
      -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
  const cd zz = z - 1.0;
  cd x = g[0];
  for (int i = 1; i < 9; ++i) x += g[i] / (zz + double(i));
  const cd t = zz + 7.5;
  return 0.5 * std::log(2 * pi) + (zz + 0.5) * std::log(t) - t + std::log(x);
}

namespace {

// Σ c_n z^n with c_{n+1} = −[(n(ε−δ) + q) c_n − (n−1+λ)(n−1+β) c_{n−1}] / ((n+1)(n+γ)).
Jet heun_series(const HeunParams& p, double z, const SeriesOptions& opt, double* cancellation = nullptr) {
  int ng = -1;
  if (is_nonpositive_integer(p.gamma, &ng))
    throw DomainError("Heun: gamma is a non-positive integer");
  if (!(std::abs(z) < 1.0)) throw DomainError("Heun local series needs |z| < 1");

  if (z == 0.0) {
    const double c1 = -p.q / p.gamma;
    const double c2 = -((p.epsilon - p.delta + p.q) * c1 - p.lambda * p.beta) / (2.0 * (1.0 + p.gamma));
    if (cancellation) *cancellation = 1.0;
    return {1.0, c1, 2.0 * c2};
  }
  double mag = 1.0;  // Σ |terms| over the three sums
  auto done = [&](const Jet& J) {
    if (cancellation)
      *cancellation = mag / std::max(std::abs(J.f) + std::abs(J.df) + std::abs(J.d2f), 1e-300);
    return J;
  };

  Accumulator<double> f{opt.compensated}, df{opt.compensated}, d2f{opt.compensated};
  double c_prev = 0.0, c_cur = 1.0;  // c_{n-1}, c_n
  double zn = 1.0;                   // z^n
  f.add(1.0);
  double tail = 0.0;
  int quiet = 0;
  for (int n = 0; n < opt.max_terms; ++n) {
    const double c_next = -(((n * (p.epsilon - p.delta) + p.q) * c_cur -
                             (n - 1 + p.lambda) * (n - 1 + p.beta) * c_prev) /
                            ((n + 1) * (n + p.gamma)));
    c_prev = c_cur;
    c_cur = c_next;
    const int m = n + 1;  // index of c_cur
    // z^{m}, z^{m-1}, z^{m-2}
    const double zm1 = zn;        // z^{m-1}
    const double zm2 = m >= 2 ? zn / z : 0.0;
    zn *= z;
    const double tf = c_cur * zn;
    const double tdf = m * c_cur * zm1;
    const double td2f = m >= 2 ? m * (m - 1.0) * c_cur * zm2 : 0.0;
    f.add(tf);
    df.add(tdf);
    d2f.add(td2f);
    mag += std::abs(tf) + std::abs(tdf) + std::abs(td2f);
    tail = std::max({std::abs(tf), std::abs(tdf), std::abs(td2f)});
    const double scale =
        std::max({std::abs(f.value()), std::abs(df.value()), std::abs(d2f.value()), 1e-300});
    // Require several consecutive negligible terms: the three-term recurrence
    // can produce isolated small coefficients.
    if (tail <= kTarget * scale) {
      if (++quiet >= 4) return done({f.value(), df.value(), d2f.value()});
    } else {
      quiet = 0;
    }
  }
  const double scale = std::max({std::abs(f.value()), std::abs(df.value()), std::abs(d2f.value())});
  if (tail > 1e-11 * scale)
    throw ConvergenceError("Heun series tail above 1e-11 at the term cap");
  return done({f.value(), df.value(), d2f.value()});
}

// Taylor expansion of the Heun solution about an ordinary point c with
// H(c) = f, H'(c) = df, summed at c + h (|h| below the distance to {0, ±1}).
// Coefficients follow from the equation multiplied by z(z−1)(z+1).
Jet heun_taylor_step(const HeunParams& p, double c, double f, double df, double h) {
  const double P0 = c * c * c - c, P1 = 3 * c * c - 1, P2 = 3 * c;
  const double S = p.gamma + p.delta + p.epsilon;
  const double Q0 = S * c * c + (p.delta - p.epsilon) * c - p.gamma, Q1 = 2 * S * c + (p.delta - p.epsilon),
               Q2 = S;
  const double R0 = p.lambda * p.beta * c - p.q, R1 = p.lambda * p.beta;
  double am1 = 0, a0 = f, a1 = df;  // a_{m−1}, a_m, a_{m+1}
  double hm = 1.0;                  // h^m
  Jet J{f + df * h, df, 0.0};
  // Running sums for derivatives at t = h: Σ m a_m h^{m−1}, Σ m(m−1) a_m h^{m−2}.
  double quiet = 0;
  for (int m = 0; m < 4000; ++m) {
    const double a2 = -(P1 * (m + 1.0) * m * a1 + P2 * m * (m - 1.0) * a0 + (m - 1.0) * (m - 2.0) * am1 +
                        Q0 * (m + 1.0) * a1 + Q1 * m * a0 + Q2 * (m - 1.0) * am1 + R0 * a0 + R1 * am1) /
                      (P0 * (m + 2.0) * (m + 1.0));
    am1 = a0;
    a0 = a1;
    a1 = a2;
    const int k = m + 2;  // index of a2
    const double hk2 = hm;  // h^{k−2}
    hm *= h;
    const double tf = a2 * hm * h;
    const double tdf = k * a2 * hm;
    const double td2f = k * (k - 1.0) * a2 * hk2;
    J.f += tf;
    J.df += tdf;
    J.d2f += td2f;
    const double tail = std::abs(tf) + std::abs(tdf * h) + std::abs(td2f * h * h);
    const double scale = std::abs(J.f) + std::abs(J.df * h) + std::abs(J.d2f * h * h);
    if (tail <= 1e-18 * scale) {
      if (++quiet >= 4) return J;
    } else {
      quiet = 0;
    }
  }
  throw ConvergenceError("Heun Taylor continuation did not converge");
}

// The local series cancels badly for some z (alternating terms far larger
// than the sum). Then start from a point nearer the origin where it is well
// conditioned and continue along the real axis by Taylor steps; the final
// step is a series about the previous centre, not an evaluation at z.
Jet heun_evaluate(const HeunParams& p, double z, const SeriesOptions& opt) {
  constexpr double kMaxCancellation = 1e3;
  double cancel = 1.0;
  Jet J = heun_series(p, z, opt, &cancel);
  if (cancel <= kMaxCancellation) return J;
  double c = z;
  for (int i = 0; i < 60 && cancel > kMaxCancellation; ++i) {
    c /= 2.0;
    J = heun_series(p, c, opt, &cancel);
  }
  if (cancel > kMaxCancellation) throw ConvergenceError("Heun series ill-conditioned near the origin");
  while (c != z) {
    const double dist = std::min({std::abs(c), std::abs(c - 1.0), std::abs(c + 1.0)});
    const double step = z - c;
    const double h = std::abs(step) <= 0.45 * dist ? step : std::copysign(0.4 * dist, step);
    J = heun_taylor_step(p, c, J.f, J.df, h);
    c = std::abs(step) <= 0.45 * dist ? z : c + h;
  }
  return J;
}

}  // namespace

double heun_local(const HeunParams& p, double z, const SeriesOptions& opt) {
  return heun_evaluate(p, z, opt).f;
}

Jet heun_local_jet(const HeunParams& p, double z, const SeriesOptions& opt) {
  return heun_evaluate(p, z, opt);
}

double heun_ode_residual(const HeunParams& p, double z, const Jet& J) {
  const double t2 = z * (z - 1.0) * (z + 1.0) * J.d2f;
  const double t1 =
      (p.gamma * (z - 1.0) * (z + 1.0) + p.delta * z * (z + 1.0) + p.epsilon * z * (z - 1.0)) * J.df;
  const double t0 = (p.lambda * p.beta * z - p.q) * J.f;
  const double scale = std::abs(t2) + std::abs(t1) + std::abs(t0);
  const double res = t2 + t1 + t0;
  return scale == 0.0 ? 0.0 : std::abs(res) / scale;
}

}  // namespace monopole
