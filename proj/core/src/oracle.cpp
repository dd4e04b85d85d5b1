#include "monopole/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "monopole/specfun.hpp"

namespace monopole {

void Grid::validate() const {
  if (!(r_min >= 0) || !(r_max > r_min) || !std::isfinite(r_max))
    throw DomainError("grid needs 0 <= r_min < r_max");
  if (N < 5) throw DomainError("grid needs at least 5 points");
}

Grid Grid::extended(double factor) const {
  if (!(factor > 0)) throw DomainError("extension factor must be positive");
  const int n = static_cast<int>(std::lround((N - 1) * factor)) + 1;
  return {r_min, r_min + h() * (n - 1), n};
}

Grid default_validation_grid(const RadialProblem& p, double E_target) {
  if (p.scenario.geometry == Geometry::Lobachevsky) return {0.0, 40.0, 20000};
  const double k2 = 2.0 * p.M * p.weight * std::abs(E_target);
  if (!(k2 > 0)) throw DomainError("flat validation grid needs a non-zero target energy");
  return {0.0, std::min(80.0 / std::sqrt(k2), 400.0), 16000};
}

namespace {

// −u'' + V u = λ u on the interior nodes: diagonal 2/h² + V, off-diagonal −1/h².
struct Tridiagonal {
  std::vector<double> diag;
  double off2 = 0;  // square of the off-diagonal
  double lo = 0, hi = 0;  // Gershgorin bounds
};

Tridiagonal assemble(const RadialProblem& p, const Grid& g) {
  if (p.linearity != Linearity::LinearInE)
    throw DomainError("finite-difference eigensolve needs a problem linear in E");
  if (!p.V) throw DomainError("problem has no potential");
  g.validate();
  const double h = g.h(), ih2 = 1.0 / (h * h);
  Tridiagonal t;
  t.diag.resize(g.N - 2);
  t.off2 = ih2 * ih2;
  double dmin = std::numeric_limits<double>::infinity(), dmax = -dmin;
  for (int i = 1; i + 1 < g.N; ++i) {
    const double v = p.V(g.r_min + i * h);
    if (!std::isfinite(v)) throw DomainError("potential is not finite on the grid");
    const double d = 2.0 * ih2 + v;
    t.diag[i - 1] = d;
    dmin = std::min(dmin, d);
    dmax = std::max(dmax, d);
  }
  t.lo = dmin - 2.0 * ih2;
  t.hi = dmax + 2.0 * ih2;
  return t;
}

// Number of eigenvalues below x (Sturm sequence of the LDLᵀ pivots).
int sturm_count(const Tridiagonal& t, double x) {
  int count = 0;
  double q = 1.0;
  const double tiny = std::numeric_limits<double>::min() / std::numeric_limits<double>::epsilon();
  for (std::size_t i = 0; i < t.diag.size(); ++i) {
    q = t.diag[i] - x - (i ? t.off2 / q : 0.0);
    if (q == 0.0) q = -tiny;
    if (q < 0) ++count;
  }
  return count;
}

// k-th (0-based) eigenvalue by bisection.
double bisect(const Tridiagonal& t, int k) {
  double lo = t.lo, hi = t.hi;
  for (int it = 0; it < 400; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (hi - lo <= 2.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(lo), std::abs(hi))) break;
    if (sturm_count(t, mid) > k)
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + hi);
}

double energy_factor(const RadialProblem& p) {
  const double f = 2.0 * p.M * p.weight;
  if (!(f > 0)) throw DomainError("problem needs M > 0 and a positive weight");
  return f;
}

}  // namespace

std::vector<double> fd_eigen_raw(const RadialProblem& p, const Grid& g, int count) {
  if (count < 0) throw DomainError("count must be non-negative");
  const Tridiagonal t = assemble(p, g);
  if (count > static_cast<int>(t.diag.size())) throw DomainError("count exceeds the number of interior nodes");
  const double f = energy_factor(p);
  std::vector<double> out(count);
  for (int k = 0; k < count; ++k) out[k] = bisect(t, k) / f;
  return out;
}

int fd_count_below(const RadialProblem& p, const Grid& g, double E) {
  const Tridiagonal t = assemble(p, g);
  return sturm_count(t, E * energy_factor(p));
}

std::vector<double> fd_eigen(const RadialProblem& p, const Grid& g, int count, const FdOptions& opt) {
  std::vector<double> raw = fd_eigen_raw(p, g, count);
  if (count == 0) return raw;
  if (p.continuum_edge && raw.back() >= *p.continuum_edge)
    throw DomainError("requested " + std::to_string(count) + " levels but only " +
                      std::to_string(fd_count_below(p, g, *p.continuum_edge)) +
                      " lie below the continuum edge; the rest are box states");
  if (opt.check_resolution) {
    const double lam = raw.back() * energy_factor(p), h = g.h();
    for (int i = std::max(1, opt.resolution_skip); i + 1 < g.N; ++i) {
      const double r = g.r_min + i * h;
      const double kh = h * std::sqrt(std::max(0.0, lam - p.V(r)));
      if (kh > 0.05)
        throw ResolutionError("grid too coarse: h*k(r) = " + std::to_string(kh) + " at r = " + std::to_string(r) +
                              " exceeds 0.05");
    }
  }
  if (!opt.richardson) return raw;
  const std::vector<double> fine = fd_eigen_raw(p, g.refined(), count);
  for (int k = 0; k < count; ++k) raw[k] = (4.0 * fine[k] - raw[k]) / 3.0;
  return raw;
}

int count_bound_states(const RadialProblem& p, const Grid& g) {
  if (!p.continuum_edge)
    throw DomainError("no finite continuum edge: the bound-state count grows with r_max");
  const int a = fd_count_below(p, g, *p.continuum_edge);
  const int b = fd_count_below(p, g.extended(1.5), *p.continuum_edge);
  if (a != b)
    throw DomainError("bound-state count changes from " + std::to_string(a) + " to " + std::to_string(b) +
                      " when r_max grows by 1.5; use a larger r_max");
  return a;
}

namespace {

using State = std::array<double, 2>;  // F, F'

// Adaptive RK4 with step doubling from r0 to r1 (either direction); the
// state is rescaled whenever it grows or shrinks far from unity.
State integrate(const RadialProblem& p, double eps, State y, double r0, double r1, double h0, double tol) {
  auto f = [&](double r, const State& s) { return State{s[1], -p.Q(r, eps) * s[0]}; };
  auto rk4 = [&](double r, const State& s, double h) {
    const State k1 = f(r, s);
    const State k2 = f(r + h / 2, {s[0] + h / 2 * k1[0], s[1] + h / 2 * k1[1]});
    const State k3 = f(r + h / 2, {s[0] + h / 2 * k2[0], s[1] + h / 2 * k2[1]});
    const State k4 = f(r + h, {s[0] + h * k3[0], s[1] + h * k3[1]});
    return State{s[0] + h / 6 * (k1[0] + 2 * k2[0] + 2 * k3[0] + k4[0]),
                 s[1] + h / 6 * (k1[1] + 2 * k2[1] + 2 * k3[1] + k4[1])};
  };
  const double dir = r1 > r0 ? 1.0 : -1.0;
  double r = r0, h = std::abs(h0);
  for (long step = 0; step < 10'000'000; ++step) {
    const double left = std::abs(r1 - r);
    if (left <= 1e-15 * std::max(1.0, std::abs(r1))) return y;
    h = std::min(h, left);
    const State big = rk4(r, y, dir * h);
    const State half = rk4(r, y, dir * h / 2);
    const State small = rk4(r + dir * h / 2, half, dir * h / 2);
    const double scale = std::abs(small[0]) + std::abs(small[1]) * std::max(std::abs(r), h);
    const double err = (std::abs(small[0] - big[0]) + std::abs(small[1] - big[1]) * std::max(std::abs(r), h)) /
                       (15.0 * std::max(scale, 1e-300));
    if (err <= tol || h < 1e-14 * std::max(1.0, std::abs(r))) {
      r = h == left ? r1 : r + dir * h;
      y = {small[0] + (small[0] - big[0]) / 15.0, small[1] + (small[1] - big[1]) / 15.0};
      const double mag = std::abs(y[0]) + std::abs(y[1]);
      if (mag > 1e100 || mag < 1e-100) y = {y[0] / mag, y[1] / mag};
    }
    const double grow = err == 0 ? 4.0 : std::clamp(0.9 * std::pow(tol / err, 0.2), 0.2, 4.0);
    h *= grow;
  }
  throw ConvergenceError("shooting integrator exceeded its step budget");
}

}  // namespace

ShootResult shoot_decay(const RadialProblem& p, double eps, const ShootOptions& opt) {
  if (p.linearity != Linearity::QuadraticInEpsilon || !p.Q)
    throw DomainError("shooting needs a problem quadratic in epsilon");
  if (!(opt.r_start > 0) || !(opt.r_match > opt.r_start) || !(opt.r_far > opt.r_match))
    throw DomainError("shooting needs 0 < r_start < r_match < r_far");
  const double M = p.M;
  const double alpha = p.scenario.geometry == Geometry::Lobachevsky ? p.scenario.alpha : 0.0;
  if (alpha < 0 || alpha > 0.5) throw DomainError("origin exponent is complex for alpha > 1/2");
  ShootResult res;
  const double gap = M * M - (eps + alpha) * (eps + alpha);
  if (!(gap > 0)) {
    res.note = "non-decaying far field: (epsilon + alpha)^2 >= M^2, no bound solution at this epsilon";
    return res;
  }
  res.kappa = std::sqrt(gap);
  res.decays = true;

  // F = r^A (1 + c1 r + c2 r² + …); Q = α²/r² + 2εα/r + q0 + O(r).
  const double A = 0.5 * (1.0 + std::sqrt(1.0 - 4.0 * alpha * alpha));
  const double q0 = eps * eps - M * M + 2.0 * alpha * alpha / 3.0;
  const double c1 = -eps * alpha / A;
  const double c2 = -(2.0 * eps * alpha * c1 + q0) / (4.0 * A + 2.0);
  const double r0 = opt.r_start;
  // Common factor r0^A dropped.
  const double poly = 1.0 + c1 * r0 + c2 * r0 * r0;
  const State out0{poly, A / r0 * poly + c1 + 2.0 * c2 * r0};
  const State out = integrate(p, eps, out0, r0, opt.r_match, r0 / 10.0, opt.tolerance);

  // Far field: Q is constant up to e^{−2r} corrections, so e^{−κr} is exact there.
  const double kf = std::sqrt(std::max(0.0, -p.Q(opt.r_far, eps)));
  const State in = integrate(p, eps, {1.0, -kf}, opt.r_far, opt.r_match, 1e-2, opt.tolerance);

  res.mismatch = out[1] / out[0] - in[1] / in[0];
  const double w1 = out[0] * in[1], w2 = out[1] * in[0];
  res.wronskian = (w1 - w2) / (std::abs(w1) + std::abs(w2));
  return res;
}

OracleEntry make_entry(std::string label, const EnergyLevel& lv, double numeric) {
  OracleEntry e;
  e.label = std::move(label);
  e.channel = lv.channel;
  e.j = lv.j;
  e.n = lv.n;
  e.analytic = lv.E;
  e.numeric = numeric;
  e.abs_dev = std::abs(numeric - lv.E);
  e.rel_dev = e.abs_dev / std::max(std::abs(lv.E), std::numeric_limits<double>::min());
  return e;
}

ArbitrationVerdict arbitrate_oscillator_prefactor(const Scenario& sc,
                                                  const std::vector<std::pair<Channel, HalfInt>>& channels,
                                                  int n_max, double tolerance, OracleReport* report) {
  if (sc.geometry != Geometry::Flat || sc.potential != PotentialKind::Oscillator)
    throw DomainError("arbitration needs a flat oscillator scenario");
  if (channels.empty() || n_max < 1) throw DomainError("arbitration needs channels and n_max >= 1");

  ArbitrationVerdict v;
  v.family = sc.tag();
  std::string first_matching;
  for (int variant = 0; variant < 2; ++variant) {
    double dev_q = 0, dev_p = 0;
    for (const auto& [ch, j] : channels) {
      const RadialProblem p = build_problem(sc, ch, j);
      std::vector<EnergyLevel> levels;
      double e_min = std::numeric_limits<double>::infinity();
      for (int n = 0; n <= n_max; ++n) {
        levels.push_back(flat_oscillator(sc.K_osc, sc.M, j, sc.charge, n, ch));
        e_min = std::min(e_min, levels.back().candidates->printed);
      }
      Grid g = default_validation_grid(p, e_min);
      if (variant == 1) g = {g.r_min, g.r_max * 1.25, static_cast<int>(g.N * 1.5)};
      const std::vector<double> fd = fd_eigen(p, g, n_max + 1);
      for (int n = 0; n <= n_max; ++n) {
        const auto& c = *levels[n].candidates;
        dev_q = std::max(dev_q, std::abs(fd[n] - c.quantization) / std::abs(c.quantization));
        dev_p = std::max(dev_p, std::abs(fd[n] - c.printed) / std::abs(c.printed));
        if (report && variant == 0)
          report->entries.push_back(make_entry("flat-oscillator " + to_string(ch) + " j=" + j.str(), levels[n], fd[n]));
      }
      if (variant == 0 && ch == channels.front().first && j == channels.front().second) {
        v.fd_spacing = (fd[n_max] - fd[0]) / n_max;
        const auto& c0 = *levels[0].candidates;
        const auto& cn = *levels[n_max].candidates;
        v.spacing_quantization = (cn.quantization - c0.quantization) / n_max;
        v.spacing_printed = (cn.printed - c0.printed) / n_max;
      }
    }
    const bool q_ok = dev_q <= tolerance, p_ok = dev_p <= tolerance;
    const std::string matching = q_ok && p_ok ? "both" : q_ok ? "quantization" : p_ok ? "printed" : "none";
    if (variant == 0) {
      v.matching = matching;
      v.max_rel_dev_quantization = dev_q;
      v.max_rel_dev_printed = dev_p;
    } else {
      v.stable_across_grids = matching == v.matching;
    }
  }
  if (report) report->verdicts.push_back(v);
  if (v.matching == "none") throw DomainError("neither oscillator candidate matches the FD eigenvalues");
  return v;
}

}  // namespace monopole
