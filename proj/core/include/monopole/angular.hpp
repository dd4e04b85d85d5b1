#pragma once

// Wigner small-d functions d^j_{m1,m2}(θ) and a numerical check of the
// ladder recurrences used to separate the angular variables.

#include <vector>

#include "monopole/quantum.hpp"

namespace monopole {

struct WignerIndex {
  HalfInt j, m1, m2;

  /// Throws DomainError unless |m1|, |m2| <= j with j - m integer.
  void validate() const;
  bool valid() const noexcept;
};

/// d^j_{m1,m2}(θ) from the explicit factorial sum, 0 <= θ <= π.
double small_d(const WignerIndex& idx, double theta);

/// dθ of small_d, by term-wise differentiation of the same finite sum.
double small_d_derivative(const WignerIndex& idx, double theta);

/// n equally spaced points strictly inside (0, π) (midpoint rule nodes).
std::vector<double> interior_grid(int n);

/// Largest absolute residual of the six ladder identities
///   ∂θ D_σ = ν(σ) D_{σ-1} − ν(σ+1) D_{σ+1},
///   (−m − σ cosθ)/sinθ · D_σ = −ν(σ) D_{σ-1} − ν(σ+1) D_{σ+1},
/// for σ = k−1, k, k+1 with D_σ = d^j_{−m,σ}(θ) and ν taken from the
/// couplings a, c, d, b. At j = |k| − 1 only the one surviving pair is
/// checked, with the reduced coefficient √((|k|−1)/2). D-functions whose
/// column index exceeds j vanish.
double check_recurrences(HalfInt j, MonopoleCharge k, HalfInt m,
                         const std::vector<double>& theta_grid);

}  // namespace monopole
