#include <doctest.h>

#include <cmath>
#include <limits>

#include "fracperim/mspace.hpp"
#include "fracperim/simplex.hpp"

using namespace fracperim;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

TEST_CASE("small bounded program") {
  // max 3x + 2y  s.t. x + y + s = 4, x + 3y + t = 6, 0 <= x <= 3, y, s, t >= 0.
  LinearProgram lp;
  lp.rows = 2;
  lp.cols = 4;
  lp.A = {1, 1, 1, 0, 1, 3, 0, 1};
  lp.b = {4, 6};
  lp.c = {3, 2, 0, 0};
  lp.lower = {0, 0, 0, 0};
  lp.upper = {3, kInf, kInf, kInf};
  const auto sol = solve_bounded_simplex(lp);
  CHECK(sol.objective == doctest::Approx(11.0));
  CHECK(sol.x[0] == doctest::Approx(3.0));
  CHECK(sol.x[1] == doctest::Approx(1.0));
  // Strong duality: b.pi plus the bound contributions of nonbasic columns at their upper bound.
  double dual = lp.b[0] * sol.duals[0] + lp.b[1] * sol.duals[1];
  const double reduced_x = lp.c[0] - (sol.duals[0] * 1 + sol.duals[1] * 1);
  dual += reduced_x * lp.upper[0];
  CHECK(dual == doctest::Approx(11.0));
}

TEST_CASE("negative lower bounds and right-hand sides") {
  // max -x0 - x1  s.t. x0 - x1 = -2, x0 in [-5, 5], x1 in [-1, 1].
  LinearProgram lp;
  lp.rows = 1;
  lp.cols = 2;
  lp.A = {1, -1};
  lp.b = {-2};
  lp.c = {-1, -1};
  lp.lower = {-5, -1};
  lp.upper = {5, 1};
  const auto sol = solve_bounded_simplex(lp);
  CHECK(sol.x[0] - sol.x[1] == doctest::Approx(-2.0));
  CHECK(sol.objective == doctest::Approx(4.0));  // x0 = -3, x1 = -1
}

TEST_CASE("infeasible and malformed programs") {
  LinearProgram lp;
  lp.rows = 1;
  lp.cols = 1;
  lp.A = {1};
  lp.b = {5};
  lp.c = {1};
  lp.lower = {0};
  lp.upper = {1};
  CHECK_THROWS_AS(solve_bounded_simplex(lp), Error);
  lp.c = {};
  CHECK_THROWS_AS(solve_bounded_simplex(lp), Error);
}

TEST_CASE("unbounded program") {
  LinearProgram lp;
  lp.rows = 1;
  lp.cols = 2;
  lp.A = {1, -1};
  lp.b = {0};
  lp.c = {1, 0};
  lp.lower = {0, 0};
  lp.upper = {kInf, kInf};
  CHECK_THROWS_AS(solve_bounded_simplex(lp), Error);
}
