#include "doctest.h"

#include <cmath>
#include <random>

#include "monopole/heunspec.hpp"
#include "monopole/spectra.hpp"

using namespace monopole;

namespace {
HalfInt J(int j) { return HalfInt::integer(j); }
}  // namespace

TEST_CASE("Coulomb Heun parameters") {
  const double alpha = 50, M = 1;
  for (Channel ch : {Channel::Heun1, Channel::Heun2})
    for (int j = 1; j <= 3; ++j) {
      const auto s = heun_params_coulomb(-200.0, alpha, M, J(j), ch);
      CHECK(std::abs(s.params.fuchs_residual()) <= 1e-12);
      CHECK(s.exps.A == (ch == Channel::Heun1 ? j + 2.0 : double(j)));
      CHECK(s.exps.B == doctest::Approx(0.5 + std::sqrt(2.0 * 150)));
      CHECK(s.exps.C == doctest::Approx(0.5 - std::sqrt(2.0 * 250)));
      CHECK(s.params.q == doctest::Approx(4 * M * alpha - 2 * s.exps.A * (s.exps.B - s.exps.C)));
      CHECK(heun_residual_on_disc(s.params) <= 1e-9);
      CHECK(substitution_residual(s) <= 1e-9);
    }
  CHECK_THROWS_AS(heun_params_coulomb(-10.0, 50, 1, J(1), Channel::Heun1), DomainError);
  CHECK_THROWS_AS(heun_params_coulomb(-100.0, 50, 1, J(0), Channel::Heun1), DomainError);
  CHECK_THROWS_AS(heun_params_coulomb(-100.0, 50, 1, J(1), Channel::ParityOdd), DomainError);
}

TEST_CASE("Coulomb beta = -n reproduces the channel spectra") {
  const double alpha = 50, M = 1;
  for (Channel ch : {Channel::Heun1, Channel::Heun2})
    for (int j = 1; j <= 3; ++j)
      for (int n = 0; n < 5; ++n) {
        const auto sol = solve_beta_coulomb(alpha, M, J(j), n, ch);
        const auto lv = lob_nomonopole_coulomb(alpha, M, J(j), n, ch);
        CHECK(sol.E == doctest::Approx(lv.E).epsilon(1e-13));
        CHECK(sol.principal_branch == lv.admissible);
        const auto s = heun_params_coulomb(sol.E, alpha, M, J(j), ch);
        CHECK(std::abs(s.params.beta + n) <= 1e-10);
      }
}

TEST_CASE("oscillator Heun parameters") {
  const double K = 100, M = 1;
  for (Channel ch : {Channel::Heun1, Channel::Heun2})
    for (int j = 1; j <= 3; ++j) {
      const auto s = heun_params_oscillator(20.0, K, M, J(j), ch);
      CHECK(std::abs(s.params.fuchs_residual()) <= 1e-12);
      CHECK(s.exps.A == doctest::Approx(0.5 - 0.5 * std::sqrt(401.0)));
      CHECK(s.exps.C == 0.5 + j / 2.0);
      CHECK(s.exps.B == (ch == Channel::Heun1 ? 1.0 + j / 2.0 : j / 2.0));
      CHECK(heun_residual_on_disc(s.params) <= 1e-9);
      CHECK(substitution_residual(s) <= 1e-9);
    }
  CHECK_THROWS_AS(heun_params_oscillator(60.0, K, M, J(1), Channel::Heun1), DomainError);
}

TEST_CASE("oscillator beta = -n reproduces N = 2 + j + n and N = 1 + j + n") {
  const double K = 100, M = 1;
  for (Channel ch : {Channel::Heun1, Channel::Heun2})
    for (int j = 1; j <= 3; ++j)
      for (int n = 0; n < 6; ++n) {
        const auto sol = solve_beta_oscillator(K, M, J(j), n, ch);
        const double N = (ch == Channel::Heun1 ? 2.0 : 1.0) + j + n;
        CHECK(sol.E == doctest::Approx(lob_oscillator_energy(K, M, N)).epsilon(1e-13));
        const auto s = heun_params_oscillator(sol.E, K, M, J(j), ch);
        CHECK(beta_condition_defect(s, n) <= 1e-10);
        // Bound levels sit on the λ = −n side of the principal root.
        const bool bound = N < std::sqrt(1 + 4 * K * M) / 2;
        CHECK(sol.principal_branch == !bound);
      }
}

TEST_CASE("branch override picks the other exponents") {
  const auto s = heun_params_coulomb(-200.0, 50, 1, J(2), Channel::Heun1, {true, true, true});
  CHECK(s.overridden);
  CHECK(s.exps.A == -3.0);
  CHECK(s.exps.B == doctest::Approx(0.5 - std::sqrt(300.0)));
  CHECK(std::abs(s.params.fuchs_residual()) <= 1e-12);
  const auto o = heun_params_oscillator(2.0, 10, 1, J(2), Channel::Heun2, {true, true, true});
  CHECK(o.exps.A == doctest::Approx(0.5 + 0.5 * std::sqrt(41.0)));
  CHECK(o.exps.B == -0.5);
  CHECK(o.exps.C == -1.0);
  CHECK(std::abs(o.params.fuchs_residual()) <= 1e-12);
  CHECK(substitution_residual(o) <= 1e-9);
}

TEST_CASE("random parameter sets satisfy the Heun equation on the disc") {
  std::mt19937_64 rng(12345);
  std::uniform_real_distribution<double> u(-3, 3);
  std::uniform_real_distribution<double> g(0.3, 4);
  for (int t = 0; t < 200; ++t) {
    HeunParams p;
    p.gamma = g(rng);
    p.delta = u(rng);
    p.epsilon = u(rng);
    p.lambda = u(rng);
    p.beta = p.gamma + p.delta + p.epsilon - 1 - p.lambda;
    p.q = 3 * u(rng);
    CHECK(std::abs(p.fuchs_residual()) <= 1e-12);
    CHECK(heun_residual_on_disc(p) <= 1e-9);
  }
  // At z = 0 the Frobenius series balances by construction (up to rounding of q/γ).
  HeunParams p{1.5, 0.3, -0.7, 0.4, -0.6, 0.9};
  CHECK(heun_ode_residual(p, 0.0, heun_local_jet(p, 0.0)) <= 1e-15);
}

TEST_CASE("continued Heun solution agrees with direct integration") {
  // Coulomb set whose series cancels heavily at negative z.
  const auto s = heun_params_coulomb(-200.0, 50, 1, J(1), Channel::Heun1);
  const HeunParams& p = s.params;
  auto rhs = [&](double z, double f, double df) {
    const double Q = p.gamma / z + p.delta / (z - 1) + p.epsilon / (z + 1);
    return -Q * df - (p.lambda * p.beta * z - p.q) / (z * (z - 1) * (z + 1)) * f;
  };
  double z = -0.05;
  const Jet start = heun_local_jet(p, z);
  double f = start.f, df = start.df;
  const int steps = 40000;
  const double h = (-0.75 - z) / steps;
  for (int i = 0; i < steps; ++i) {
    const double k1f = df, k1d = rhs(z, f, df);
    const double k2f = df + h / 2 * k1d, k2d = rhs(z + h / 2, f + h / 2 * k1f, df + h / 2 * k1d);
    const double k3f = df + h / 2 * k2d, k3d = rhs(z + h / 2, f + h / 2 * k2f, df + h / 2 * k2d);
    const double k4f = df + h * k3d, k4d = rhs(z + h, f + h * k3f, df + h * k3d);
    f += h / 6 * (k1f + 2 * k2f + 2 * k3f + k4f);
    df += h / 6 * (k1d + 2 * k2d + 2 * k3d + k4d);
    z += h;
  }
  const Jet J = heun_local_jet(p, -0.75);
  CHECK(J.f == doctest::Approx(f).epsilon(1e-8));
  CHECK(J.df == doctest::Approx(df).epsilon(1e-8));
}
