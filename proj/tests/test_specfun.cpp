#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "monopole/specfun.hpp"

using namespace monopole;

TEST_CASE("1F1 polynomial and closed-form values") {
  for (double z : {-3.0, 0.0, 0.7, 5.0}) CHECK(kummer_1f1(-1, 2, z) == doctest::Approx(1 - z / 2));
  CHECK(kummer_1f1(0.3, 1.7, 0.0) == 1.0);
  CHECK(kummer_1f1(1, 1, 0.5) == doctest::Approx(std::exp(0.5)).epsilon(1e-14));
  CHECK(kummer_1f1(1, 1, -4.0) == doctest::Approx(std::exp(-4.0)).epsilon(1e-11));
  // Laguerre link: 1F1(−2; 3/2; x) = 1 − 4x/3 + 4x²/15
  const double x = 1.3;
  CHECK(kummer_1f1(-2, 1.5, x) == doctest::Approx(1 - 4 * x / 3 + 4 * x * x / 15).epsilon(1e-14));
  CHECK_THROWS_AS(kummer_1f1(0.5, -2, 1.0), std::domain_error);
  CHECK_NOTHROW(kummer_1f1(-1, -3, 1.0));
}

TEST_CASE("2F1 identities and explicit sums") {
  for (double z : {-0.7, -0.2, 0.3, 0.8})
    CHECK(gauss_2f1(0.7, 1.9, 1.9, z) == doctest::Approx(std::pow(1 - z, -0.7)).epsilon(1e-13));
  CHECK(gauss_2f1(-3, 2.5, 1.5, 0.0) == 1.0);
  // (−2)(3)/(2)·z + (−2)(−1)(3)(4)/((2)(3)·2)·z²
  const double z = 0.4;
  CHECK(gauss_2f1(-2, 3, 2, z) == doctest::Approx(1 - 3 * z + 2 * z * z).epsilon(1e-15));
  // polynomial case works beyond the unit disc
  CHECK(gauss_2f1(-2, 3, 2, 4.0) == doctest::Approx(1 - 12 + 32).epsilon(1e-15));
  CHECK_THROWS_AS(gauss_2f1(0.5, 0.5, 1.0, 1.2), std::domain_error);
  // log(1+z) = z 2F1(1,1;2;−z)
  CHECK(0.5 * gauss_2f1(1, 1, 2, -0.5) == doctest::Approx(std::log(1.5)).epsilon(1e-14));
}

TEST_CASE("polynomial mode agrees with series mode") {
  // a = −n handled exactly; the shifted a = −n + 1e−13 goes through the
  // general series on |z| < 1.
  for (int n = 0; n <= 6; ++n)
    for (double z : {-0.6, 0.2, 0.75}) {
      const double a = -n;
      CHECK(gauss_2f1(a, 2.3, 1.7, z) ==
            doctest::Approx(gauss_2f1(a + 1e-13, 2.3, 1.7, z)).epsilon(1e-11));
      CHECK(kummer_1f1(a, 1.7, 3 * z) ==
            doctest::Approx(kummer_1f1(a + 1e-13, 1.7, 3 * z)).epsilon(1e-11));
    }
}

TEST_CASE("hypergeometric functions satisfy their ODEs") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> par(0.2, 3.0), arg(-0.8, 0.8);
  for (int trial = 0; trial < 200; ++trial) {
    const double a = par(rng) - 1.5, b = par(rng) - 1.0, c = par(rng), z = arg(rng);
    const auto J = gauss_2f1_jet(a, b, c, z);
    const double t2 = z * (1 - z) * J.d2f, t1 = (c - (a + b + 1) * z) * J.df, t0 = -a * b * J.f;
    CHECK(std::abs(t2 + t1 + t0) <= 1e-9 * (std::abs(t2) + std::abs(t1) + std::abs(t0) + 1e-300));

    const auto K1 = kummer_1f1_jet(a, c, 4 * z);
    const double zz = 4 * z;
    const double k2 = zz * K1.d2f, k1 = (c - zz) * K1.df, k0 = -a * K1.f;
    CHECK(std::abs(k2 + k1 + k0) <= 1e-9 * (std::abs(k2) + std::abs(k1) + std::abs(k0) + 1e-300));
  }
}

TEST_CASE("complex 2F1 reduces to the real one and lgamma matches known values") {
  const auto w = gauss_2f1({0.3, 0.0}, {1.2, 0.0}, {2.1, 0.0}, {0.5, 0.0});
  CHECK(w.real() == doctest::Approx(gauss_2f1(0.3, 1.2, 2.1, 0.5)).epsilon(1e-14));
  CHECK(std::abs(w.imag()) < 1e-15);
  for (double x : {0.1, 0.5, 1.0, 2.5, 7.3, 30.0})
    CHECK(lgamma_complex({x, 0.0}).real() == doctest::Approx(std::lgamma(x)).epsilon(1e-13).scale(1.0));
  // |Γ(iy)|² = π / (y sinh πy)
  for (double y : {0.5, 1.0, 3.0}) {
    const double lhs = 2 * lgamma_complex({0.0, y}).real();
    CHECK(lhs == doctest::Approx(std::log(std::numbers::pi / (y * std::sinh(std::numbers::pi * y)))).epsilon(1e-12));
  }
  // Γ(1/2 + iy): |Γ|² = π / cosh(πy)
  const double lhs = 2 * lgamma_complex({0.5, 2.0}).real();
  CHECK(lhs == doctest::Approx(std::log(std::numbers::pi / std::cosh(2 * std::numbers::pi))).epsilon(1e-12));
}

TEST_CASE("Heun local solution: normalisation and first coefficient") {
  HeunParams p{1.7, 0.6, 1.3, 0.9, 1.7, 0.45};
  CHECK(std::abs(p.fuchs_residual()) < 1e-15);
  CHECK(heun_local(p, 0.0) == 1.0);
  const double step = 1e-6;
  const double fd = (heun_local(p, step) - heun_local(p, -step)) / (2 * step);
  CHECK(fd == doctest::Approx(-p.q / p.gamma).epsilon(1e-8));
  CHECK(heun_local_jet(p, 0.0).df == doctest::Approx(-p.q / p.gamma).epsilon(1e-15));
  CHECK_THROWS_AS(heun_local({-2.0, 1, 1, 0.5, 0.5, 0.1}, 0.3), std::domain_error);
  CHECK_THROWS_AS(heun_local(p, 1.0), std::domain_error);
}

TEST_CASE("Heun series satisfies the Heun equation on |z| <= 0.8") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(-2.0, 2.0), pos(0.3, 4.0), zz(-0.8, 0.8);
  for (int trial = 0; trial < 100; ++trial) {
    HeunParams p;
    p.gamma = pos(rng);
    p.delta = u(rng);
    p.epsilon = u(rng);
    p.lambda = u(rng) * 2;
    p.beta = p.gamma + p.delta + p.epsilon - p.lambda - 1.0;
    p.q = u(rng) * 3;
    for (int i = 0; i < 10; ++i) {
      const double z = zz(rng);
      CHECK(heun_ode_residual(p, z, heun_local_jet(p, z)) <= 1e-9);
    }
  }
}

TEST_CASE("Heun with a removable z = -1 singularity reduces to 2F1") {
  // ε = 0 and q = −λβ make z = −1 an ordinary point.
  for (double lam : {-0.7, 0.4, 1.3}) {
    HeunParams p;
    p.gamma = 1.6;
    p.delta = 0.9;
    p.epsilon = 0.0;
    p.lambda = lam;
    p.beta = p.gamma + p.delta - lam - 1.0;
    p.q = -p.lambda * p.beta;
    for (double z : {-0.75, -0.3, 0.2, 0.6, 0.8})
      CHECK(heun_local(p, z) == doctest::Approx(gauss_2f1(p.lambda, p.beta, p.gamma, z)).epsilon(1e-10));
  }
}

TEST_CASE("compensated summation path gives the same values") {
  HeunParams p{2.5, -0.4, 1.1, 1.5, 0.7, -1.2};
  for (double z : {-0.8, 0.5, 0.8}) {
    SeriesOptions o;
    o.compensated = true;
    CHECK(heun_local(p, z, o) == doctest::Approx(heun_local(p, z)).epsilon(1e-13));
  }
}
