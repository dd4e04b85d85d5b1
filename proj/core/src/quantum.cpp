#include "monopole/quantum.hpp"

#include <cmath>

namespace monopole {

HalfInt HalfInt::from_double(double v) {
  const double t = 2.0 * v;
  const double r = std::round(t);
  if (!std::isfinite(t) || std::abs(t - r) > 1e-12 || std::abs(r) > 1e8)
    throw DomainError("not a half-integer: " + std::to_string(v));
  return HalfInt(static_cast<int>(r));
}

HalfInt HalfInt::parse(const std::string& text) {
  const auto slash = text.find('/');
  try {
    if (slash != std::string::npos) {
      std::size_t pos = 0;
      const int num = std::stoi(text.substr(0, slash), &pos);
      if (pos != slash) throw DomainError("bad numerator");
      const std::string den = text.substr(slash + 1);
      if (den != "2" && den != "1") throw DomainError("denominator must be 1 or 2");
      return den == "2" ? HalfInt(num) : HalfInt(2 * num);
    }
    std::size_t pos = 0;
    const double v = std::stod(text, &pos);
    if (pos != text.size()) throw DomainError("trailing characters");
    return from_double(v);
  } catch (const DomainError&) {
    throw DomainError("not a half-integer: '" + text + "'");
  } catch (const std::exception&) {
    throw DomainError("not a half-integer: '" + text + "'");
  }
}

std::string HalfInt::str() const {
  if (is_integer()) return std::to_string(twice_ / 2);
  return std::to_string(twice_) + "/2";
}

HalfInt min_j(MonopoleCharge k) {
  const HalfInt a = k.k.abs();
  if (a.twice() <= 1) return a;
  return a - HalfInt::integer(1);
}

std::vector<HalfInt> allowed_j(MonopoleCharge k, HalfInt j_max) {
  const HalfInt lo = min_j(k);
  if (j_max < lo)
    throw DomainError("j_max " + j_max.str() + " below the smallest admissible j " + lo.str());
  std::vector<HalfInt> out;
  for (HalfInt j = lo; j <= j_max; j = j + HalfInt::integer(1)) out.push_back(j);
  return out;
}

bool is_admissible(MonopoleCharge k, HalfInt j) {
  if (j.twice() < 0) return false;
  if ((j.twice() - k.k.twice()) % 2 != 0) return false;
  return j >= min_j(k);
}

void QuantumNumbers::validate() const {
  if (n < 0) throw DomainError("radial index n must be non-negative");
  if (j.twice() < 0) throw DomainError("j must be non-negative");
  if ((j.twice() - k.k.twice()) % 2 != 0)
    throw DomainError("j and k must both be integers or both half-odd");
  if (!is_admissible(k, j))
    throw DomainError("j = " + j.str() + " is below the smallest admissible value " +
                      min_j(k).str() + " for k = " + k.k.str());
}

namespace {
// (2j + s)(2j' + t) products are exact integers; the coefficient is
// sqrt(product)/4 because each factor carries a hidden 1/2.
double quarter_sqrt(long long radicand, const char* name, HalfInt j, MonopoleCharge k,
                    bool clamp) {
  if (radicand < 0) {
    if (clamp) return 0.0;
    throw DomainError(std::string("negative radicand for coupling ") + name + " at j = " +
                      j.str() + ", k = " + k.k.str());
  }
  return 0.25 * std::sqrt(static_cast<double>(radicand));
}
}  // namespace

Couplings couplings(HalfInt j, MonopoleCharge k) {
  const long long J = j.twice();
  const long long K = k.k.twice();
  if ((J - K) % 2 != 0) throw DomainError("j and k parity mismatch");
  Couplings c;
  c.c = quarter_sqrt((J + K) * (J - K + 2), "c", j, k, false);
  c.d = quarter_sqrt((J - K) * (J + K + 2), "d", j, k, false);
  c.a = quarter_sqrt((J + K - 2) * (J - K + 4), "a", j, k, true);
  c.b = quarter_sqrt((J - K - 2) * (J + K + 4), "b", j, k, true);
  return c;
}

AngularClass classify(HalfInt j, MonopoleCharge k) {
  if (k.no_monopole()) return AngularClass::NoMonopole;
  const HalfInt a = k.k.abs();
  if (j < a) return AngularClass::MinJ;
  if (j == a) return AngularClass::Edge;
  return AngularClass::Generic;
}

std::string to_string(AngularClass c) {
  switch (c) {
    case AngularClass::NoMonopole: return "no-monopole";
    case AngularClass::MinJ: return "min-j";
    case AngularClass::Edge: return "edge";
    case AngularClass::Generic: return "generic";
  }
  return "?";
}

std::string to_string(Geometry g) { return g == Geometry::Flat ? "flat" : "lobachevsky"; }

std::string to_string(PotentialKind p) {
  switch (p) {
    case PotentialKind::None: return "none";
    case PotentialKind::Coulomb: return "coulomb";
    case PotentialKind::Oscillator: return "oscillator";
  }
  return "?";
}

Geometry parse_geometry(const std::string& s) {
  if (s == "flat") return Geometry::Flat;
  if (s == "lobachevsky") return Geometry::Lobachevsky;
  throw DomainError("unknown geometry '" + s + "'");
}

PotentialKind parse_potential(const std::string& s) {
  if (s == "none" || s == "free") return PotentialKind::None;
  if (s == "coulomb") return PotentialKind::Coulomb;
  if (s == "oscillator") return PotentialKind::Oscillator;
  throw DomainError("unknown potential '" + s + "'");
}

void Scenario::validate() const {
  if (!(M > 0)) throw DomainError("mass must be positive");
  if (geometry == Geometry::Lobachevsky && !(R > 0))
    throw DomainError("curvature radius R must be positive");
  if (potential == PotentialKind::Coulomb && !(alpha > 0))
    throw DomainError("Coulomb coupling alpha must be positive");
  if (potential == PotentialKind::Oscillator && !(K_osc > 0))
    throw DomainError("oscillator constant K_osc must be positive");
}

std::string Scenario::tag() const { return to_string(geometry) + "-" + to_string(potential); }

std::string to_string(Channel c) {
  switch (c) {
    case Channel::MinJ: return "min-j";
    case Channel::A1: return "A1";
    case Channel::A2: return "A2";
    case Channel::A3: return "A3";
    case Channel::ParityOdd: return "parity-odd";
    case Channel::ParityEven: return "parity-even";
    case Channel::Heun1: return "heun1";
    case Channel::Heun2: return "heun2";
  }
  return "?";
}

Channel parse_channel(const std::string& s) {
  for (Channel c : {Channel::MinJ, Channel::A1, Channel::A2, Channel::A3, Channel::ParityOdd,
                    Channel::ParityEven, Channel::Heun1, Channel::Heun2})
    if (to_string(c) == s) return c;
  throw DomainError("unknown channel '" + s + "'");
}

int branch_index(Channel c) {
  switch (c) {
    case Channel::A1: return 0;
    case Channel::A2: return 1;
    case Channel::A3: return 2;
    default: throw DomainError("channel " + to_string(c) + " is not a mixing branch");
  }
}

Channel branch_channel(int index) {
  switch (index) {
    case 0: return Channel::A1;
    case 1: return Channel::A2;
    case 2: return Channel::A3;
    default: throw DomainError("branch index out of range");
  }
}

}  // namespace monopole
