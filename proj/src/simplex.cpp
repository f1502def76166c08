#include "fracperim/simplex.hpp"

#include <cmath>
#include <limits>

#include "fracperim/mspace.hpp"

namespace fracperim {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPivotTol = 1e-11;
constexpr double kCostTol = 1e-10;
constexpr std::size_t kDegenerateSwitch = 50;
constexpr std::size_t kMaxIterations = 200000;

enum class State : unsigned char { Basic, AtLower, AtUpper };

class Tableau {
 public:
  Tableau(const LinearProgram& lp)
      : m_(lp.rows), n_(lp.cols), total_(lp.cols + lp.rows), t_(m_ * total_, 0.0),
        lower_(total_, 0.0), upper_(total_, 0.0), state_(total_, State::AtLower),
        value_(total_, 0.0), basis_(m_), sign_(m_, 1.0) {
    for (std::size_t j = 0; j < n_; ++j) {
      lower_[j] = lp.lower[j];
      upper_[j] = lp.upper[j];
      if (!std::isfinite(lower_[j])) throw Error("simplex: lower bounds must be finite");
      if (upper_[j] < lower_[j]) throw Error("simplex: empty variable range");
      value_[j] = lower_[j];
    }
    for (std::size_t i = 0; i < m_; ++i) {
      double r = lp.b[i];
      for (std::size_t j = 0; j < n_; ++j) r -= lp.A[i * n_ + j] * value_[j];
      sign_[i] = r >= 0.0 ? 1.0 : -1.0;
      for (std::size_t j = 0; j < n_; ++j) t_[i * total_ + j] = sign_[i] * lp.A[i * n_ + j];
      const std::size_t art = n_ + i;
      t_[i * total_ + art] = 1.0;
      lower_[art] = 0.0;
      upper_[art] = kInf;
      state_[art] = State::Basic;
      value_[art] = std::abs(r);
      basis_[i] = art;
    }
  }

  std::size_t optimise(const std::vector<double>& cost) {
    std::size_t iterations = 0;
    std::size_t degenerate_run = 0;
    std::vector<double> d(total_);
    while (true) {
      if (++iterations > kMaxIterations) throw Error("simplex: iteration limit reached");
      for (std::size_t j = 0; j < total_; ++j) {
        if (state_[j] == State::Basic) {
          d[j] = 0.0;
          continue;
        }
        double acc = cost[j];
        for (std::size_t i = 0; i < m_; ++i) acc -= cost[basis_[i]] * t_[i * total_ + j];
        d[j] = acc;
      }
      const bool bland = degenerate_run >= kDegenerateSwitch;
      std::size_t enter = total_;
      double best = 0.0;
      for (std::size_t j = 0; j < total_; ++j) {
        if (state_[j] == State::Basic || upper_[j] == lower_[j]) continue;
        double gain = state_[j] == State::AtLower ? d[j] : -d[j];
        if (gain <= kCostTol) continue;
        if (bland) {
          enter = j;
          break;
        }
        if (gain > best) {
          best = gain;
          enter = j;
        }
      }
      if (enter == total_) return iterations;

      const double dir = state_[enter] == State::AtLower ? 1.0 : -1.0;
      double theta = upper_[enter] - lower_[enter];
      std::size_t leave_row = m_;
      bool leave_to_upper = false;
      for (std::size_t i = 0; i < m_; ++i) {
        const double delta = -dir * t_[i * total_ + enter];
        const std::size_t bv = basis_[i];
        double limit = kInf;
        bool to_upper = false;
        if (delta < -kPivotTol) {
          limit = (value_[bv] - lower_[bv]) / -delta;
        } else if (delta > kPivotTol && std::isfinite(upper_[bv])) {
          limit = (upper_[bv] - value_[bv]) / delta;
          to_upper = true;
        } else {
          continue;
        }
        if (limit < 0.0) limit = 0.0;
        bool take = limit < theta;
        if (!take && leave_row < m_ && limit == theta) {
          take = bland ? bv < basis_[leave_row]
                       : std::abs(t_[i * total_ + enter]) > std::abs(t_[leave_row * total_ + enter]);
        }
        if (take) {
          theta = limit;
          leave_row = i;
          leave_to_upper = to_upper;
        }
      }
      if (!std::isfinite(theta)) throw Error("simplex: objective unbounded");
      degenerate_run = theta == 0.0 ? degenerate_run + 1 : 0;

      for (std::size_t i = 0; i < m_; ++i)
        value_[basis_[i]] += -dir * t_[i * total_ + enter] * theta;
      value_[enter] += dir * theta;

      if (leave_row == m_) {
        state_[enter] = state_[enter] == State::AtLower ? State::AtUpper : State::AtLower;
        value_[enter] = state_[enter] == State::AtLower ? lower_[enter] : upper_[enter];
        continue;
      }
      const std::size_t leaving = basis_[leave_row];
      state_[leaving] = leave_to_upper ? State::AtUpper : State::AtLower;
      value_[leaving] = leave_to_upper ? upper_[leaving] : lower_[leaving];
      state_[enter] = State::Basic;
      basis_[leave_row] = enter;
      pivot(leave_row, enter);
    }
  }

  double artificial_sum() const {
    double acc = 0.0;
    for (std::size_t i = 0; i < m_; ++i) acc += value_[n_ + i];
    return acc;
  }

  void freeze_artificials() {
    for (std::size_t i = 0; i < m_; ++i) {
      const std::size_t art = n_ + i;
      upper_[art] = 0.0;
      if (state_[art] != State::Basic) {
        state_[art] = State::AtLower;
        value_[art] = 0.0;
      }
    }
  }

  std::vector<double> solution() const { return {value_.begin(), value_.begin() + static_cast<std::ptrdiff_t>(n_)}; }

  // pi = c_B B^{-1}; the artificial block of the tableau holds B^{-1} diag(sign).
  std::vector<double> duals(const std::vector<double>& cost) const {
    std::vector<double> pi(m_, 0.0);
    for (std::size_t k = 0; k < m_; ++k) {
      double acc = 0.0;
      for (std::size_t i = 0; i < m_; ++i) acc += cost[basis_[i]] * t_[i * total_ + n_ + k];
      pi[k] = acc * sign_[k];
    }
    return pi;
  }

 private:
  void pivot(std::size_t r, std::size_t col) {
    double* row = &t_[r * total_];
    const double p = row[col];
    for (std::size_t j = 0; j < total_; ++j) row[j] /= p;
    row[col] = 1.0;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r) continue;
      double* other = &t_[i * total_];
      const double f = other[col];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < total_; ++j) other[j] -= f * row[j];
      other[col] = 0.0;
    }
  }

  std::size_t m_, n_, total_;
  std::vector<double> t_;
  std::vector<double> lower_, upper_;
  std::vector<State> state_;
  std::vector<double> value_;
  std::vector<std::size_t> basis_;
  std::vector<double> sign_;
};

}  // namespace

LpSolution solve_bounded_simplex(const LinearProgram& lp) {
  if (lp.A.size() != lp.rows * lp.cols || lp.b.size() != lp.rows || lp.c.size() != lp.cols ||
      lp.lower.size() != lp.cols || lp.upper.size() != lp.cols)
    throw Error("simplex: inconsistent program dimensions");

  Tableau tab(lp);
  const std::size_t total = lp.cols + lp.rows;
  std::vector<double> phase1(total, 0.0);
  for (std::size_t i = 0; i < lp.rows; ++i) phase1[lp.cols + i] = -1.0;
  LpSolution out;
  out.iterations = tab.optimise(phase1);

  double scale = 1.0;
  for (double v : lp.b) scale += std::abs(v);
  if (tab.artificial_sum() > 1e-9 * scale) throw Error("simplex: program infeasible");
  tab.freeze_artificials();

  std::vector<double> phase2(total, 0.0);
  for (std::size_t j = 0; j < lp.cols; ++j) phase2[j] = lp.c[j];
  out.iterations += tab.optimise(phase2);
  out.x = tab.solution();
  out.duals = tab.duals(phase2);
  for (std::size_t j = 0; j < lp.cols; ++j) out.objective += lp.c[j] * out.x[j];
  return out;
}

}  // namespace fracperim
