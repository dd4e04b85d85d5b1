#pragma once

// The flat-space 3x3 mixing matrix, its characteristic cubic, the
// trigonometric roots, the transformation matrix S and the 2x2 parity
// problem of the no-monopole case.

#include <array>
#include <stdexcept>
#include <string>

#include "monopole/quantum.hpp"

namespace monopole {

using Mat3 = std::array<std::array<double, 3>, 3>;

/// Raised when two independent derivations of the same quantity disagree.
/// This signals an implementation defect, never bad user input.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Raised when S cannot be built because a denominator vanishes.
class DegeneracyError : public DomainError {
 public:
  DegeneracyError(const std::string& what, double root) : DomainError(what), root(root) {}
  double root;
};

struct MixingMatrix {
  double c = 0, d = 0;
  Mat3 m{};
};

/// [[2c², √2c, 0], [√2c, c²+d²+1, √2d], [0, √2d, 2d²]].
MixingMatrix build_matrix(double c, double d);

struct CubicInvariants {
  // A³ + rA² + sA + t, from the matrix.
  double r = 0, s = 0, t = 0;
  // Reduced cubic B³ + pB + q with A = B − r/3, and its discriminant.
  double p = 0, q = 0, D = 0;
  // Closed forms in terms of j and k alone.
  double p_closed = 0, q_closed = 0;
  double c = 0, d = 0;
};

/// Invariants for j >= |k| (monopole or not). Throws ConsistencyError when
/// the matrix-derived and closed-form p or q differ by more than 1e-10.
CubicInvariants cubic_invariants(HalfInt j, MonopoleCharge k);

struct RootTriple {
  std::array<double, 3> A{};  // ascending
  std::array<double, 3> L{};  // L = −1/2 + √(1/4 + 2A)
};

/// Effective angular momentum of a root (upper sign; requires A >= −1/8).
double effective_L(double A);

/// Trigonometric roots of the reduced cubic, sorted ascending. The arccos
/// argument is clamped to [−1, 1] when it overshoots by at most 1e-14.
/// Throws DomainError when D >= 0 (given exact arithmetic this never happens
/// for admissible input; a vanishing D is tolerated only at 1e-12 scale).
RootTriple roots(const CubicInvariants& inv);

struct TransformMatrix {
  Mat3 S{};
  double residual = 0;  // max |Ā S − S diag(A)|
};

/// S with unit diagonal built from the closed-form eigenvector relations,
/// with column i belonging to roots.A[i]. Throws DegeneracyError when any
/// denominator is below 1e-12 in magnitude.
TransformMatrix transform_matrix(double c, double d, const RootTriple& roots);

/// Eigenvalues of [[0, ν], [2ν, 1]] with ν² = j(j+1)/2, larger first:
/// {j + 1, −j}.
std::array<double, 2> parity_eigenvalues(HalfInt j);

}  // namespace monopole
