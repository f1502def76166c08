#pragma once

#include <cstddef>
#include <vector>

namespace fracperim {

/// maximise c.x subject to A x = b, lower <= x <= upper (dense, row-major A).
/// Every lower bound must be finite; upper bounds may be +inf.
struct LinearProgram {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> A;
  std::vector<double> b;
  std::vector<double> c;
  std::vector<double> lower;
  std::vector<double> upper;
};

struct LpSolution {
  std::vector<double> x;
  std::vector<double> duals;  ///< row multipliers pi with c_j - pi.A_j the reduced costs
  double objective = 0.0;
  std::size_t iterations = 0;
};

/// Two-phase bounded-variable primal simplex on a dense tableau. Dantzig
/// pricing, switching to Bland's rule after a run of degenerate pivots.
/// Throws Error on infeasible or unbounded programs.
LpSolution solve_bounded_simplex(const LinearProgram& lp);

}  // namespace fracperim
