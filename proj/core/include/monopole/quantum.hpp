#pragma once

// Quantum-number bookkeeping: exact half-integers, the monopole charge,
// the admissible total angular momenta and the coupling coefficients
// a, b, c, d shared by the angular, mixing and radial code.

#include <compare>
#include <stdexcept>
#include <string>
#include <vector>

namespace monopole {

/// Raised when an argument lies outside the mathematical domain of an
/// operation (negative radicand, invalid index, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Exact half-integer, stored as twice its value.
class HalfInt {
 public:
  constexpr HalfInt() = default;
  static constexpr HalfInt from_twice(int twice) { return HalfInt(twice); }
  static constexpr HalfInt integer(int v) { return HalfInt(2 * v); }
  /// Accepts "3/2", "-1/2", "2", "1.5"; throws DomainError for anything that
  /// is not an exact multiple of 1/2.
  static HalfInt parse(const std::string& text);
  /// Throws DomainError unless 2*v is an integer (to 1e-12).
  static HalfInt from_double(double v);

  constexpr int twice() const { return twice_; }
  constexpr double value() const { return 0.5 * twice_; }
  constexpr bool is_integer() const { return twice_ % 2 == 0; }
  constexpr HalfInt abs() const { return HalfInt(twice_ < 0 ? -twice_ : twice_); }
  std::string str() const;

  constexpr HalfInt operator+(HalfInt o) const { return HalfInt(twice_ + o.twice_); }
  constexpr HalfInt operator-(HalfInt o) const { return HalfInt(twice_ - o.twice_); }
  constexpr HalfInt operator-() const { return HalfInt(-twice_); }
  constexpr auto operator<=>(const HalfInt&) const = default;

 private:
  constexpr explicit HalfInt(int twice) : twice_(twice) {}
  int twice_ = 0;
};

/// Monopole charge k = eg/ħc in units where it is a half-integer.
/// k = 0 is the explicit no-monopole limit.
struct MonopoleCharge {
  HalfInt k;

  static MonopoleCharge from_twice(int twice_k) { return {HalfInt::from_twice(twice_k)}; }
  bool no_monopole() const { return k.twice() == 0; }
  double value() const { return k.value(); }
  auto operator<=>(const MonopoleCharge&) const = default;
};

/// Smallest admissible j for a charge: |k| for |k| = 1/2 (and k = 0),
/// |k| - 1 otherwise.
HalfInt min_j(MonopoleCharge k);

/// All admissible j in [min_j(k), j_max], ascending.
std::vector<HalfInt> allowed_j(MonopoleCharge k, HalfInt j_max);

bool is_admissible(MonopoleCharge k, HalfInt j);

struct QuantumNumbers {
  MonopoleCharge k;
  HalfInt j;
  int n = 0;

  /// Throws DomainError when the triple violates the selection rules.
  void validate() const;
};

struct Couplings {
  double a = 0, b = 0, c = 0, d = 0;
};

/// a, b, c, d for j >= |k|. The c and d radicands are always non-negative for
/// admissible input (a DomainError otherwise); a and b involve neighbouring
/// D-functions that may not exist at the lowest j and are then set to zero.
Couplings couplings(HalfInt j, MonopoleCharge k);

/// Structural class of an (j, k) pair, used to route to the right equations.
enum class AngularClass {
  NoMonopole,  // k = 0: parity split instead of the 3x3 mixing problem
  MinJ,        // j = |k| - 1: single reduced radial equation
  Edge,        // j = |k| (|k| >= 1/2): one coupling vanishes, a mixing root is 0
  Generic      // j > |k|
};

AngularClass classify(HalfInt j, MonopoleCharge k);
std::string to_string(AngularClass c);

enum class Geometry { Flat, Lobachevsky };
enum class PotentialKind { None, Coulomb, Oscillator };

std::string to_string(Geometry g);
std::string to_string(PotentialKind p);
Geometry parse_geometry(const std::string& s);
PotentialKind parse_potential(const std::string& s);

/// Physical set-up. Natural units ħ = c = 1 are used internally; for the
/// Lobachevsky geometry lengths are measured in units of the curvature
/// radius R, which is kept for the conversion to physical units.
struct Scenario {
  Geometry geometry = Geometry::Flat;
  double R = 1.0;
  PotentialKind potential = PotentialKind::None;
  double alpha = 0.0;  // Coulomb coupling
  double K_osc = 0.0;  // oscillator constant
  MonopoleCharge charge;
  double M = 1.0;

  /// Throws DomainError on an invalid parameter combination.
  void validate() const;
  /// Short identifier such as "lobachevsky-coulomb".
  std::string tag() const;
};

/// Radial channel labels shared by spectra, radial and heunspec.
enum class Channel { MinJ, A1, A2, A3, ParityOdd, ParityEven, Heun1, Heun2 };

std::string to_string(Channel c);
Channel parse_channel(const std::string& s);
/// 0, 1, 2 for A1..A3; throws otherwise.
int branch_index(Channel c);
Channel branch_channel(int index);

}  // namespace monopole
