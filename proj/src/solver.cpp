#include "fracperim/solver.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "fracperim/simplex.hpp"

namespace fracperim {

ObstacleSpec::ObstacleSpec(SetMask omega, Field psi, Field f)
    : omega_(std::move(omega)), psi_(std::move(psi)), f_(std::move(f)) {
  const std::size_t n = omega_.size();
  if (psi_.size() != n || f_.size() != n) throw Error("obstacle: omega, psi and f must share one length");
  if (omega_.none()) throw Error("obstacle: omega is empty");
  for (PointId x = 0; x < n; ++x) {
    if (omega_[x]) {
      if (std::isnan(psi_[x]) || psi_[x] == std::numeric_limits<double>::infinity())
        throw Error("obstacle: psi must be finite or -inf on omega (point " + std::to_string(x) + ")");
    } else if (!std::isfinite(f_[x])) {
      throw Error("obstacle: boundary data must be finite off omega (point " + std::to_string(x) + ")");
    }
  }
}

std::vector<double> ObstacleSpec::breakpoints() const {
  std::vector<double> b;
  for (PointId x = 0; x < size(); ++x) {
    const double v = omega_[x] ? psi_[x] : f_[x];
    if (std::isfinite(v)) b.push_back(v);
  }
  std::sort(b.begin(), b.end());
  b.erase(std::unique(b.begin(), b.end()), b.end());
  return b;
}

bool ObstacleSpec::admits(std::span<const double> u) const {
  if (u.size() != size()) return false;
  for (PointId x = 0; x < size(); ++x) {
    if (!std::isfinite(u[x])) return false;
    if (omega_[x] ? u[x] < psi_[x] : u[x] != f_[x]) return false;
  }
  return true;
}

Field ObstacleSpec::witness() const {
  const auto b = breakpoints();
  const double c = b.empty() ? 0.0 : b.front();
  Field u(size());
  for (PointId x = 0; x < size(); ++x) u[x] = omega_[x] ? std::max(psi_[x], c) : f_[x];
  return u;
}

double CutSolution::certificate_error() const {
  return std::abs(certificate - energy) / std::max(1.0, std::abs(energy));
}

MinCut min_cut(const Kernel& k, std::span<const double> unary_sink, const SetMask& S,
               const SetMask& T) {
  return min_cut(PairCapacities{k.size(), k.weights(), 2.0}, unary_sink, S, T);
}

namespace {

void require_size(const Kernel& k, const SetMask& m, const char* what) {
  if (m.size() != k.size()) throw Error(std::string(what) + ": mask length does not match space");
}

CutSolution from_cut(const Kernel& k, MinCut cut) {
  CutSolution out;
  out.mask = std::move(cut.source_side);
  out.degenerate = !(out.mask == cut.maximal_source_side);
  out.energy = seminorm(k, indicator(out.mask));
  out.certificate = cut.flow_value;
  out.iterations = cut.phases;
  return out;
}

}  // namespace

CutSolution solve_set_obstacle(const Kernel& k, const SetMask& A, const SetMask& omega) {
  require_size(k, A, "solve_set_obstacle");
  require_size(k, omega, "solve_set_obstacle");
  if (!A.subset_of(omega)) throw Error("solve_set_obstacle: obstacle set is not contained in omega");
  return from_cut(k, min_cut(k, {}, A, ~omega));
}

CutSolution condenser_capacity(const Kernel& k, const SetMask& A, const SetMask& F) {
  require_size(k, A, "condenser_capacity");
  require_size(k, F, "condenser_capacity");
  if (!A.subset_of(F)) throw Error("condenser_capacity: A is not contained in F");
  if (F.count() == F.size()) throw Error("condenser_capacity: F must have a nonempty complement");
  return from_cut(k, min_cut(k, {}, A, ~F));
}

CutSolution total_capacity(const Kernel& k, const SetMask& A) {
  require_size(k, A, "total_capacity");
  const auto masses = k.space().masses();
  auto cut = min_cut(k, masses, A, SetMask(k.size()));
  CutSolution out;
  out.mask = std::move(cut.source_side);
  out.degenerate = !(out.mask == cut.maximal_source_side);
  out.energy = norm_full(k, indicator(out.mask));
  out.certificate = cut.flow_value;
  out.iterations = cut.phases;
  return out;
}

CutSolution solve_general_obstacle(const Kernel& k, const ObstacleSpec& spec) {
  const std::size_t n = k.size();
  if (spec.size() != n) throw Error("solve_general_obstacle: spec does not match space");
  const auto b = spec.breakpoints();
  const SetMask& omega = spec.omega();
  CutSolution out;
  out.field.assign(n, b.empty() ? 0.0 : b.front());
  if (b.size() < 2) {
    // One admissible level: the constant is feasible and has zero energy.
    out.energy = 0.0;
    out.certificate = 0.0;
    return out;
  }

  std::vector<std::size_t> height(n, 0);
  SetMask previous = SetMask::full(n);
  double certificate = 0.0;
  for (std::size_t level = 0; level + 1 < b.size(); ++level) {
    const double t = b[level];
    SetMask S(n), T(n);
    for (PointId x = 0; x < n; ++x) {
      if (omega[x]) {
        if (spec.psi()[x] > t) S.set(x);
      } else if (spec.f()[x] > t) {
        S.set(x);
      } else {
        T.set(x);
      }
    }
    auto cut = min_cut(k, {}, S, T);
    if (!cut.source_side.subset_of(previous))
      throw Error("solve_general_obstacle: superlevel sets are not nested at level " +
                  std::to_string(level) + " (threshold " + std::to_string(t) + ")");
    const double weight = b[level + 1] - t;
    certificate += weight * cut.flow_value;
    out.degenerate = out.degenerate || !(cut.source_side == cut.maximal_source_side);
    out.iterations += cut.phases;
    out.levels.push_back({t, weight, cut.flow_value, cut.source_side.count()});
    for (PointId x = 0; x < n; ++x)
      if (cut.source_side[x]) ++height[x];
    previous = std::move(cut.source_side);
  }
  // Read values straight off the breakpoint list so constraints hold exactly.
  for (PointId x = 0; x < n; ++x) out.field[x] = b[height[x]];
  if (!spec.admits(out.field)) throw Error("solve_general_obstacle: reassembled field violates the constraints");
  out.energy = seminorm(k, out.field);
  out.certificate = certificate;
  return out;
}

CutSolution lp_oracle(const Kernel& k, const ObstacleSpec& spec) {
  const std::size_t n = k.size();
  if (spec.size() != n) throw Error("lp_oracle: spec does not match space");
  if (n > kLpOracleEnvelope)
    throw Error("lp_oracle: " + std::to_string(n) + " points exceed the oracle envelope of " +
                std::to_string(kLpOracleEnvelope));
  const SetMask& omega = spec.omega();
  const Field& psi = spec.psi();
  const Field& f = spec.f();

  // Rows: one per point of omega. Columns: one bounded pair flow per unordered
  // pair touching omega, then a nonnegative slack per constrained point.
  std::vector<std::size_t> row_of(n, n);
  std::size_t rows = 0;
  for (PointId x = 0; x < n; ++x)
    if (omega[x]) row_of[x] = rows++;

  struct Pair {
    PointId x, y;
  };
  std::vector<Pair> pairs;
  double fixed = 0.0;  // pairs entirely off omega contribute a constant
  for (PointId x = 0; x < n; ++x)
    for (PointId y = x + 1; y < n; ++y) {
      if (omega[x] || omega[y])
        pairs.push_back({x, y});
      else
        fixed += 2.0 * (k(x, y) * std::abs(f[x] - f[y]));
    }
  std::vector<PointId> slack_point;
  for (PointId x = 0; x < n; ++x)
    if (omega[x] && std::isfinite(psi[x])) slack_point.push_back(x);

  LinearProgram lp;
  lp.rows = rows;
  lp.cols = pairs.size() + slack_point.size();
  lp.A.assign(lp.rows * lp.cols, 0.0);
  lp.b.assign(lp.rows, 0.0);
  lp.c.assign(lp.cols, 0.0);
  lp.lower.assign(lp.cols, 0.0);
  lp.upper.assign(lp.cols, std::numeric_limits<double>::infinity());
  for (std::size_t j = 0; j < pairs.size(); ++j) {
    const auto [x, y] = pairs[j];
    const double cap = 2.0 * k(x, y);
    lp.lower[j] = -cap;
    lp.upper[j] = cap;
    if (omega[x]) lp.A[row_of[x] * lp.cols + j] = 1.0;
    else lp.c[j] += f[x];
    if (omega[y]) lp.A[row_of[y] * lp.cols + j] = -1.0;
    else lp.c[j] -= f[y];
  }
  for (std::size_t i = 0; i < slack_point.size(); ++i) {
    const std::size_t j = pairs.size() + i;
    const PointId x = slack_point[i];
    lp.A[row_of[x] * lp.cols + j] = -1.0;
    lp.c[j] = psi[x];
  }

  const LpSolution sol = solve_bounded_simplex(lp);
  CutSolution out;
  out.field.assign(n, 0.0);
  for (PointId x = 0; x < n; ++x) {
    if (omega[x])
      out.field[x] = std::max(-sol.duals[row_of[x]], psi[x]);
    else
      out.field[x] = f[x];
  }
  out.energy = seminorm(k, out.field);
  out.certificate = sol.objective + fixed;
  out.duality_gap = out.energy - out.certificate;
  out.iterations = sol.iterations;
  return out;
}

PerturbationCheck perturbation_check(const Kernel& k, std::span<const double> u,
                                     std::span<const double> eta, const SetMask& omega) {
  const std::size_t n = k.size();
  if (eta.size() != n) throw Error("perturbation_check: perturbation length mismatch");
  Field v(u.begin(), u.end());
  for (PointId x = 0; x < n; ++x) {
    if (!omega[x] && eta[x] != 0.0) throw Error("perturbation_check: perturbation leaves omega");
    v[x] += eta[x];
  }
  PerturbationCheck out{functional_F(k, u, v, omega), 0.0};
  for (PointId x = 0; x < n; ++x)
    for (PointId y = x + 1; y < n; ++y) {
      if (!omega[x] && !omega[y]) continue;
      out.scale += 2.0 * k(x, y) * (std::abs(u[x] - u[y]) + std::abs(v[x] - v[y]));
    }
  return out;
}

namespace {

double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::size_t pick(std::mt19937_64& rng, std::size_t n) {
  return std::min(n - 1, static_cast<std::size_t>(unit(rng) * static_cast<double>(n)));
}

const char* const kKinds[] = {"ball", "field", "point", "mixture"};

Field sample_perturbation(const Space& sp, const std::vector<PointId>& inside, const SetMask& omega,
                          double amplitude, std::mt19937_64& rng, std::size_t kind) {
  const std::size_t n = sp.size();
  Field eta(n, 0.0);
  auto add_ball = [&] {
    const PointId c = inside[pick(rng, inside.size())];
    const auto order = sp.order(c);
    const std::size_t reach = 1 + pick(rng, n);
    const double h = amplitude * unit(rng);
    for (std::size_t i = 0; i < reach; ++i)
      if (omega[order[i]]) eta[order[i]] += h;
  };
  auto add_field = [&] {
    const double keep = unit(rng);
    for (PointId x : inside)
      if (unit(rng) < keep) eta[x] += amplitude * unit(rng);
  };
  auto add_point = [&] { eta[inside[pick(rng, inside.size())]] += amplitude * unit(rng); };
  switch (kind) {
    case 0: add_ball(); break;
    case 1: add_field(); break;
    case 2: add_point(); break;
    default:
      add_ball();
      add_point();
      if (unit(rng) < 0.5) add_field();
  }
  return eta;
}

}  // namespace

SuperminimizerReport superminimizer_certificate(const Kernel& k, std::span<const double> u,
                                                const SetMask& omega, std::size_t trials,
                                                std::uint64_t seed, double tolerance) {
  require_size(k, omega, "superminimizer_certificate");
  if (u.size() != k.size()) throw Error("superminimizer_certificate: field length mismatch");
  SuperminimizerReport rep;
  rep.trials = trials;
  rep.tolerance = tolerance;
  rep.seed = seed;
  const auto inside = omega.ids();
  if (inside.empty() || trials == 0) return rep;

  double lo = u[0], hi = u[0];
  for (double v : u) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  const double amplitude = 2.0 * std::max(1.0, hi - lo);

  std::vector<double> ratio(trials, 0.0);
  std::vector<char> bad(trials, 0);
  const auto count = static_cast<std::ptrdiff_t>(trials);
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t t = 0; t < count; ++t) {
    const auto i = static_cast<std::size_t>(t);
    std::mt19937_64 rng(seed + 0x9E3779B97F4A7C15ull * (i + 1));
    const Field eta = sample_perturbation(k.space(), inside, omega, amplitude, rng, i % 4);
    const auto chk = perturbation_check(k, u, eta, omega);
    const double scale = std::max(chk.scale, 1e-300);
    ratio[i] = chk.F / scale;
    bad[i] = chk.F > tolerance * chk.scale ? 1 : 0;
  }
  rep.worst_ratio = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < trials; ++i) {
    if (bad[i]) ++rep.violations;
    if (ratio[i] > rep.worst_ratio) {
      rep.worst_ratio = ratio[i];
      rep.worst_trial = i;
      rep.worst_kind = kKinds[i % 4];
    }
  }
  return rep;
}

}  // namespace fracperim
