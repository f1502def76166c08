#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "fracperim/energy.hpp"
#include "fracperim/potential.hpp"
#include "fracperim/solver.hpp"

namespace fracperim {

using json = nlohmann::json;

/// Structured outcome of one inequality check. `empirical_constant` is lhs/rhs
/// with the structural factors already folded into rhs.
struct Report {
  std::string name;
  json inputs = json::object();
  double lhs = 0.0;
  double rhs = 0.0;
  double empirical_constant = 0.0;
  double threshold = std::numeric_limits<double>::infinity();
  bool pass = true;
  json trace = json::object();
  std::vector<std::string> flags;
};

/// lhs/rhs with 0/0 = 0 and x/0 = inf.
double ratio_or_zero(double lhs, double rhs);

/// Direct seminorm against its layer decomposition; passes within rel_tol.
Report coarea_check(const Kernel& k, std::span<const double> u, const SetMask& omega,
                    double rel_tol = 1e-10);

/// Weak Harnack: max_{B(x0,r)} (u-k0) against (R/(R-r))^Q times the mean of (u-k0)_+ on B(x0,R).
Report harnack_check(const Kernel& k, std::span<const double> u, PointId x0, double r, double R,
                     double k0, double Q, double threshold = std::numeric_limits<double>::infinity());

/// Seminorm of (u-k)_+ phi (phi the Lipschitz cutoff between rho and (R+rho)/2)
/// against sum_{B(x0,R)} (u-k)_+ mu / (s(1-s)(R-rho)^s).
Report caccioppoli_check(const Kernel& k, std::span<const double> u, double level, PointId x0,
                         double rho, double R, double threshold = std::numeric_limits<double>::infinity());

/// De Giorgi level/radius iteration. With C unset the minimal admissible C is bisected.
Report degiorgi_iterate(const Kernel& k, std::span<const double> u, PointId x0, double r, double R,
                        double k0, double Q, std::optional<double> C = std::nullopt,
                        std::size_t max_steps = 60);

/// Mean deviation over B against r^s/mu(B) times the seminorm on B.
Report poincare_check(const Kernel& k, const SetMask& B, double r, std::span<const double> u,
                      double threshold = std::numeric_limits<double>::infinity());

/// mu(E) / (r^s seminorm(1_E)) for E inside B(x, r).
Report isoperimetric_check(const Kernel& k, const SetMask& E, PointId x, double r,
                           double threshold = std::numeric_limits<double>::infinity());

/// cap(B(x,r), B(x,R)) against mu(B(x,r))/r^s; requires theta R <= 2r <= R.
Report ball_capacity_check(const Kernel& k, PointId x, double r, double R, double theta = 0.5,
                           double bound = std::numeric_limits<double>::infinity());

/// Monotonicity in the target ball (exact), the annulus comparison constant, and
/// the two-sided total-vs-condenser capacity ratio. A must lie in B(x, r), r < r1 < r2.
Report capacity_comparisons(const Kernel& k, const SetMask& A, PointId x, double r, double r1, double r2);

struct AnnulusConstant {
  std::size_t k = 0;
  bool found = false;
  bool scale_floor = false;  ///< inner ball shrank to {x0} first
  Report report;
};
/// Smallest k > 3 with pot(y, X\B(x0,r)) <= c0 pot(y, X\B(x0,2^{-(k-3)}r)) for every y in the inner ball.
AnnulusConstant find_annulus_k(const Kernel& k, PointId x0, double r, double c0,
                               std::size_t max_k = 64);
/// Exhaustive pointwise re-check of a given k.
bool annulus_holds(const Kernel& k, PointId x0, double r, double c0, std::size_t kk);

struct CartanFamily {
  PointId x = 0;
  double R = 0.0;
  std::size_t k = 0;
  std::size_t L = 0;
  std::vector<SetMask> B;  ///< B[j + offset] = ball(x, 2^{-j} R), see `offset`
  int offset = 0;          ///< lowest scale index stored is -offset
  std::vector<SetMask> H, D, W, E;
  std::vector<CutSolution> solutions;
  std::vector<Report> checks;  ///< per-(i,l) emptiness and perimeter checks, then coverage and density
  double hypothesis_ratio = 0.0;
  bool pass = true;
};
/// Thin-set decomposition near x and the superminimizer family separating x from W.
CartanFamily weak_cartan(const Kernel& k, const SetMask& W, PointId x, double R, std::size_t kk,
                         std::size_t L, double hypothesis_bound = 1.0,
                         std::size_t certificate_trials = 200, std::uint64_t seed = 0);

struct StrongCartan {
  Field u;
  std::vector<double> ladder;        ///< r_1 > r_2 > ...
  std::vector<double> capacities;    ///< cap(A n B(x,r_j), B(x,R0))
  std::vector<double> lower_limits;  ///< min over A n B(x, r_j) of u
  double value_at_x = 0.0;
  Report report;
};
/// Truncated series construction of a superminimizer growing along A while staying small at x.
StrongCartan strong_cartan(const Kernel& k, const SetMask& A, PointId x, double R0, std::size_t J,
                           double eps);

/// s-perimeter of B(z, r) along the radii, flagging jumps at distance atoms.
Report ball_perimeter_scan(const Kernel& k, PointId z, std::span<const double> radii);

/// cap((interior-like or boundary-like points of E) n B(x,r), B(x,2r)) against seminorm(1_E).
/// `scale` is the classification radius. Throws when E is too dense in B(x,2r).
Report boundary_capacity_check(const Kernel& k, const SetMask& E, PointId x, double r, double scale,
                               double C_mu);

/// Flat CSV row: name,lhs,rhs,empirical_constant,pass.
std::string csv_row(const Report& r);
std::string csv_header();
json to_json(const Report& r);

}  // namespace fracperim
