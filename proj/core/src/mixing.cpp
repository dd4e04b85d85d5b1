#include "monopole/mixing.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

namespace monopole {

MixingMatrix build_matrix(double c, double d) {
  if (c < 0 || d < 0) throw DomainError("couplings must be non-negative");
  const double r2 = std::numbers::sqrt2;
  MixingMatrix mm;
  mm.c = c;
  mm.d = d;
  mm.m = {{{2 * c * c, r2 * c, 0.0},
           {r2 * c, c * c + d * d + 1.0, r2 * d},
           {0.0, r2 * d, 2 * d * d}}};
  return mm;
}

CubicInvariants cubic_invariants(HalfInt j, MonopoleCharge k) {
  if (j < k.k.abs())
    throw DomainError("cubic invariants need j >= |k|; j = |k| - 1 is the reduced channel");
  const Couplings cp = couplings(j, k);

  // The invariants involve the off-diagonal entries only through their
  // squares, so with C = 16c² and D = 16d² (exact integers) the trace, the
  // principal minors and the determinant are exact rationals. Evaluating them
  // in integers avoids the cancellation in q = 2r³/27 − rs/3 + t, which loses
  // about seven digits in floating point for j ≈ 10.
  const long long J = j.twice(), K2 = k.k.twice();
  if (J > 400) throw DomainError("j above 200 would overflow the exact invariant evaluation");
  const long long C = (J + K2) * (J - K2 + 2);  // 16 c²
  const long long D = (J - K2) * (J + K2 + 2);  // 16 d²
  // Entries scaled by 16: diag (2C, C + D + 16, 2D); squared off-diagonals
  // scaled by 16: (2C, 2D).
  const long long d0 = 2 * C, d1 = C + D + 16, d2 = 2 * D, o01 = 2 * C, o12 = 2 * D;
  const long long R = -(d0 + d1 + d2);                                  // 16 r
  const long long S = d0 * d1 - 16 * o01 + d0 * d2 + d1 * d2 - 16 * o12;  // 256 s
  const long long T = -(d0 * (d1 * d2 - 16 * o12) - 16 * o01 * d2);      // 4096 t
  const long long P = 3 * S - R * R;                                    // 768 p
  const long long Q = 2 * R * R * R - 9 * R * S + 27 * T;               // 110592 q

  CubicInvariants inv;
  inv.c = cp.c;
  inv.d = cp.d;
  inv.r = static_cast<double>(R) / 16.0;
  inv.s = static_cast<double>(S) / 256.0;
  inv.t = static_cast<double>(T) / 4096.0;
  inv.p = static_cast<double>(P) / 768.0;
  inv.q = static_cast<double>(Q) / 110592.0;
  // Discriminant from the (correctly rounded) p and q.
  inv.D = std::pow(inv.p / 3.0, 3) + std::pow(inv.q / 2.0, 2);

  const double jj = j.value() * (j.value() + 1.0);
  const double kk = k.value() * k.value();
  inv.p_closed = -(jj - 0.75 * kk + 1.0 / 3.0);
  inv.q_closed = -(jj / 3.0 + 2.0 / 27.0);

  const double scale_p = std::max(1.0, std::abs(inv.p_closed));
  const double scale_q = std::max(1.0, std::abs(inv.q_closed));
  if (std::abs(inv.p - inv.p_closed) > 1e-10 * scale_p ||
      std::abs(inv.q - inv.q_closed) > 1e-10 * scale_q)
    throw ConsistencyError("cubic coefficients disagree with closed forms at j = " + j.str() +
                           ", k = " + k.k.str());
  return inv;
}

double effective_L(double A) {
  const double rad = 0.25 + 2.0 * A;
  if (rad < 0) throw DomainError("root below -1/8 has no real effective L");
  return -0.5 + std::sqrt(rad);
}

RootTriple roots(const CubicInvariants& inv) {
  const double p = inv.p, q = inv.q;
  const double scale = std::pow(std::abs(p) / 3.0, 3) + 1.0;
  if (inv.D >= 1e-12 * scale || !(p < 0))
    throw DomainError("discriminant is not negative; roots are not all real and distinct");
  double arg = (3.0 * q / (2.0 * p)) * std::sqrt(-3.0 / p);
  if (arg > 1.0) {
    if (arg - 1.0 > 1e-14) throw DomainError("arccos argument above 1");
    arg = 1.0;
  } else if (arg < -1.0) {
    if (-1.0 - arg > 1e-14) throw DomainError("arccos argument below -1");
    arg = -1.0;
  }
  const double phi = std::acos(arg) / 3.0;
  const double amp = 2.0 * std::sqrt(-p / 3.0);
  RootTriple rt;
  for (int i = 0; i < 3; ++i)
    rt.A[i] = amp * std::cos(phi + i * 2.0 * std::numbers::pi / 3.0) - inv.r / 3.0;
  std::sort(rt.A.begin(), rt.A.end());
  for (int i = 0; i < 3; ++i) rt.L[i] = effective_L(std::max(rt.A[i], -0.125));
  return rt;
}

namespace {
double guarded(double denom, const char* what, double root) {
  if (std::abs(denom) < 1e-12) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", root);
    throw DegeneracyError(std::string("degenerate denominator in ") + what + " at root " + buf, root);
  }
  return denom;
}
}  // namespace

TransformMatrix transform_matrix(double c, double d, const RootTriple& rt) {
  const double r2 = std::numbers::sqrt2;
  const double A1 = rt.A[0], A2 = rt.A[1], A3 = rt.A[2];
  TransformMatrix tm;
  Mat3& S = tm.S;
  S[0][0] = S[1][1] = S[2][2] = 1.0;

  S[1][0] = -(2 * c * c - A1) / (r2 * guarded(c, "s21", A1));
  S[2][0] = d / guarded(2 * d * d - A1, "s31", A1) * (2 * c * c - A1) / guarded(c, "s31", A1);
  S[0][1] = -r2 * c / guarded(2 * c * c - A2, "s12", A2);
  S[2][1] = -r2 * d / guarded(2 * d * d - A2, "s32", A2);
  S[0][2] = c / guarded(2 * c * c - A3, "s13", A3) * (2 * d * d - A3) / guarded(d, "s13", A3);
  S[1][2] = -(2 * d * d - A3) / (r2 * guarded(d, "s23", A3));

  // Eigenvectors are defined up to scale, so each column's residual is taken
  // relative to that column's largest entry.
  const Mat3 m = build_matrix(c, d).m;
  double worst = 0.0;
  for (int col = 0; col < 3; ++col) {
    double col_res = 0.0, col_max = 0.0;
    for (int i = 0; i < 3; ++i) {
      double lhs = 0.0;
      for (int l = 0; l < 3; ++l) lhs += m[i][l] * S[l][col];
      col_res = std::max(col_res, std::abs(lhs - S[i][col] * rt.A[col]));
      col_max = std::max(col_max, std::abs(S[i][col]));
    }
    worst = std::max(worst, col_res / col_max);
  }
  tm.residual = worst;
  return tm;
}

std::array<double, 2> parity_eigenvalues(HalfInt j) {
  if (!j.is_integer() || j.twice() < 2)
    throw DomainError("parity split needs integer j >= 1");
  // Characteristic polynomial λ² − λ − 2ν² with 2ν² = j(j+1); the
  // discriminant 1 + 4j(j+1) = (2j+1)² is an exact square.
  const long long J = j.twice() / 2;
  const double disc = static_cast<double>(1 + 4 * J * (J + 1));
  const double root = std::sqrt(disc);
  return {(1.0 + root) / 2.0, (1.0 - root) / 2.0};
}

}  // namespace monopole
