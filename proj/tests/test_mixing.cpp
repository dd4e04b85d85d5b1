#include "doctest.h"

#include <cmath>

#include "monopole/mixing.hpp"
#include "support/oracles.hpp"

using namespace monopole;

namespace {
HalfInt h(int twice) { return HalfInt::from_twice(twice); }
MonopoleCharge K(int twice) { return MonopoleCharge::from_twice(twice); }
}  // namespace

TEST_CASE("mixing matrix at j = 2, k = 1") {
  const auto m = build_matrix(std::sqrt(6.0) / 2, 1.0).m;
  CHECK(m[0][0] == doctest::Approx(3.0));
  CHECK(m[0][1] == doctest::Approx(std::sqrt(3.0)));
  CHECK(m[0][2] == 0.0);
  CHECK(m[1][1] == doctest::Approx(3.5));
  CHECK(m[1][2] == doctest::Approx(std::sqrt(2.0)));
  CHECK(m[2][0] == 0.0);
  CHECK(m[2][2] == doctest::Approx(2.0));
}

TEST_CASE("mixing matrix degenerate couplings") {
  const auto z = build_matrix(0, 0).m;
  CHECK(z[0][0] == 0.0);
  CHECK(z[1][1] == 1.0);
  CHECK(z[2][2] == 0.0);
  const auto m = build_matrix(1.3, 0).m;
  CHECK(m[1][2] == 0.0);
  CHECK(m[2][1] == 0.0);
  CHECK(m[2][2] == 0.0);
  CHECK_THROWS_AS(build_matrix(-1, 0), DomainError);
}

TEST_CASE("cubic invariants at j = 2, k = 1") {
  // det(Ā − A) expanded by hand: A³ − 8.5A² + 18.5A − 9.
  const auto inv = cubic_invariants(HalfInt::integer(2), K(2));
  CHECK(inv.r == doctest::Approx(-8.5).epsilon(1e-14));
  CHECK(inv.s == doctest::Approx(18.5).epsilon(1e-14));
  CHECK(inv.t == doctest::Approx(-9.0).epsilon(1e-14));
  CHECK(inv.p == doctest::Approx(-67.0 / 12.0).epsilon(1e-13));
  CHECK(inv.q == doctest::Approx(-56.0 / 27.0).epsilon(1e-13));
  CHECK(inv.p_closed == doctest::Approx(-67.0 / 12.0).epsilon(1e-15));
  CHECK(inv.q_closed == doctest::Approx(-56.0 / 27.0).epsilon(1e-15));
  CHECK(inv.D < 0);
}

TEST_CASE("roots at j = 2, k = 1 agree with a Jacobi eigensolve") {
  const auto inv = cubic_invariants(HalfInt::integer(2), K(2));
  const auto rt = roots(inv);
  const auto ref = oracle_ref::jacobi_eigenvalues(build_matrix(inv.c, inv.d).m);
  CHECK(rt.A[0] == doctest::Approx(0.6845).epsilon(1e-3));
  CHECK(rt.A[1] == doctest::Approx(2.4520).epsilon(1e-3));
  CHECK(rt.A[2] == doctest::Approx(5.3635).epsilon(1e-3));
  for (int i = 0; i < 3; ++i) {
    CHECK(std::abs(rt.A[i] - ref[i]) < 1e-12);
    CHECK(rt.L[i] * (rt.L[i] + 1) == doctest::Approx(2 * rt.A[i]).epsilon(1e-12));
  }
}

TEST_CASE("root scan: trigonometric roots vs eigensolve, signs, closed forms") {
  for (int ak = 1; ak <= 10; ++ak)
    for (int sgn : {1, -1}) {
      const MonopoleCharge k = K(sgn * ak);
      for (int tj = ak + 2; tj <= ak + 16; tj += 2) {  // j > |k|
        const auto inv = cubic_invariants(h(tj), k);
        CHECK(inv.D < 0);
        CHECK(inv.p < 0);
        CHECK(inv.q < 0);
        CHECK(std::abs(inv.p - inv.p_closed) <= 1e-12 * std::max(1.0, std::abs(inv.p_closed)));
        CHECK(std::abs(inv.q - inv.q_closed) <= 1e-12 * std::max(1.0, std::abs(inv.q_closed)));
        const auto rt = roots(inv);
        const auto ref = oracle_ref::jacobi_eigenvalues(build_matrix(inv.c, inv.d).m);
        for (int i = 0; i < 3; ++i) {
          CHECK(std::abs(rt.A[i] - ref[i]) <= 1e-10);
          CHECK(rt.A[i] > 0);
        }
        CHECK(rt.A[0] + rt.A[1] + rt.A[2] == doctest::Approx(-inv.r).epsilon(1e-10));
        CHECK(rt.A[0] * rt.A[1] * rt.A[2] == doctest::Approx(-inv.t).epsilon(1e-10));
        const auto S = transform_matrix(inv.c, inv.d, rt);
        CHECK(S.residual <= 1e-10);
      }
    }
}

TEST_CASE("edge j = |k|: one zero root and a degenerate S") {
  for (int tk : {1, 2, 3, 6, -2, -5}) {
    const auto inv = cubic_invariants(h(std::abs(tk)), K(tk));
    CHECK(std::abs(inv.t) < 1e-12);
    const auto rt = roots(inv);
    CHECK(std::abs(rt.A[0]) < 1e-10);
    CHECK(rt.A[1] > 0);
    CHECK_THROWS_AS(transform_matrix(inv.c, inv.d, rt), DegeneracyError);
  }
}

TEST_CASE("transform matrix: first column matches the symbolic form") {
  const auto inv = cubic_invariants(HalfInt::integer(2), K(2));
  const auto rt = roots(inv);
  const auto tm = transform_matrix(inv.c, inv.d, rt);
  CHECK(tm.S[1][0] == doctest::Approx(-(2 * inv.c * inv.c - rt.A[0]) / (std::sqrt(2.0) * inv.c)));
  CHECK(tm.S[0][0] == 1.0);
  CHECK(tm.residual <= 1e-10);
}

TEST_CASE("transform matrix refuses a root equal to 2c^2") {
  const double c = 1.2, d = 0.7;
  RootTriple rt;
  rt.A = {0.1, 2 * c * c, 3.0};
  try {
    transform_matrix(c, d, rt);
    FAIL("expected a degeneracy error");
  } catch (const DegeneracyError& e) {
    CHECK(e.root == doctest::Approx(2 * c * c));
  }
}

TEST_CASE("parity eigenvalues are {j+1, -j}") {
  for (int j = 1; j <= 10; ++j) {
    const auto ev = parity_eigenvalues(HalfInt::integer(j));
    CHECK(ev[0] == j + 1.0);
    CHECK(ev[1] == -static_cast<double>(j));
    const double nu2 = j * (j + 1) / 2.0;
    for (double l : ev) CHECK(l * l - l - 2 * nu2 == doctest::Approx(0.0).scale(1.0));
  }
  CHECK_THROWS_AS(parity_eigenvalues(HalfInt::integer(0)), DomainError);
}

TEST_CASE("k = 0 roots give L = j - 1, j, j + 1") {
  for (int j = 1; j <= 8; ++j) {
    const auto rt = roots(cubic_invariants(HalfInt::integer(j), K(0)));
    CHECK(rt.L[0] == doctest::Approx(j - 1.0).epsilon(1e-12));
    CHECK(rt.L[1] == doctest::Approx(j).epsilon(1e-12));
    CHECK(rt.L[2] == doctest::Approx(j + 1.0).epsilon(1e-12));
    // parity pair eigenvalues reproduce the outer two centrifugal terms:
    // (j+1)(j+2) = j(j+1) + 2(j+1) and (j−1)j = j(j+1) − 2j.
    const auto ev = parity_eigenvalues(HalfInt::integer(j));
    CHECK(rt.L[2] * (rt.L[2] + 1) == doctest::Approx(j * (j + 1) + 2 * ev[0]));
    CHECK(rt.L[0] * (rt.L[0] + 1) == doctest::Approx(j * (j + 1) + 2 * ev[1]).scale(1.0));
  }
}
