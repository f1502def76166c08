#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fracperim/energy.hpp"
#include "fracperim/maxflow.hpp"

namespace fracperim {

/// Constraint class K_{psi,f}(Omega): u >= psi on Omega, u = f off Omega.
class ObstacleSpec {
 public:
  /// psi may hold kUnconstrained on Omega; f must be finite on the complement.
  /// Values of psi off Omega and of f on Omega are ignored.
  ObstacleSpec(SetMask omega, Field psi, Field f);

  const SetMask& omega() const noexcept { return omega_; }
  const Field& psi() const noexcept { return psi_; }
  const Field& f() const noexcept { return f_; }
  std::size_t size() const noexcept { return omega_.size(); }

  /// Sorted distinct finite values of psi on Omega and f off Omega.
  std::vector<double> breakpoints() const;
  /// Whether u satisfies the constraints (exactly).
  bool admits(std::span<const double> u) const;
  /// max(psi, c) on Omega and f off Omega, for a feasible constant c.
  Field witness() const;

 private:
  SetMask omega_;
  Field psi_;
  Field f_;
};

struct LevelTrace {
  double threshold;
  double weight;
  double flow;
  std::size_t members;
};

struct CutSolution {
  SetMask mask;              ///< set-valued problems
  Field field;               ///< function-valued problems
  double energy = 0.0;       ///< seminorm (or full norm for total capacity)
  double certificate = 0.0;  ///< max-flow value, or dual objective for the LP oracle
  double duality_gap = 0.0;  ///< LP oracle only
  bool degenerate = false;   ///< minimal and maximal minimisers differ
  std::size_t iterations = 0;
  std::vector<LevelTrace> levels;

  /// |certificate - energy| / max(1, |energy|)
  double certificate_error() const;
};

/// Exact min cut with contraction of forced points; thin wrapper over the flow engine.
MinCut min_cut(const Kernel& k, std::span<const double> unary_sink, const SetMask& S,
               const SetMask& T);

/// Minimise seminorm(1_E, X) over A c E c Omega.
CutSolution solve_set_obstacle(const Kernel& k, const SetMask& A, const SetMask& omega);

/// cap_{s,1}(A, F) = min seminorm(1_E, X) over A c E c F, with the extremal set.
CutSolution condenser_capacity(const Kernel& k, const SetMask& A, const SetMask& F);

/// C_{s,1}(A) = min (mu(E) + seminorm(1_E, X)) over E containing A.
CutSolution total_capacity(const Kernel& k, const SetMask& A);

/// Minimise seminorm(u, X) over K_{psi,f}(Omega) by one cut per breakpoint gap;
/// superlevel sets are asserted nested.
CutSolution solve_general_obstacle(const Kernel& k, const ObstacleSpec& spec);

inline constexpr std::size_t kLpOracleEnvelope = 60;

/// Independent route: the same obstacle problem as a linear program, solved
/// through its dual (one bounded flow per unordered pair). The primal field is
/// recovered from the row multipliers and the gap is measured directly.
CutSolution lp_oracle(const Kernel& k, const ObstacleSpec& spec);

struct SuperminimizerReport {
  std::size_t trials = 0;
  std::size_t violations = 0;
  double worst_ratio = 0.0;  ///< max over trials of F(u,u+eta) / scale
  std::size_t worst_trial = 0;
  std::string worst_kind;
  double tolerance = 1e-9;
  std::uint64_t seed = 0;
  bool pass() const { return violations == 0; }
};

/// Samples nonnegative perturbations supported in Omega and checks F(u,u+eta) <= tol*scale.
/// A necessary-condition sampler; the max-flow certificate is the optimality proof.
SuperminimizerReport superminimizer_certificate(const Kernel& k, std::span<const double> u,
                                                const SetMask& omega, std::size_t trials,
                                                std::uint64_t seed, double tolerance = 1e-9);

/// F(u, u+eta) for one perturbation, with the scale used for the tolerance.
struct PerturbationCheck {
  double F;
  double scale;
};
PerturbationCheck perturbation_check(const Kernel& k, std::span<const double> u,
                                     std::span<const double> eta, const SetMask& omega);

}  // namespace fracperim
