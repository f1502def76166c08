#pragma once

#include <limits>
#include <memory>
#include <span>
#include <vector>

#include "fracperim/mspace.hpp"

namespace fracperim {

/// Extended-real function on the points. `kUnconstrained` marks obstacle
/// entries that impose no constraint; every other entry must be finite.
using Field = std::vector<double>;
inline constexpr double kUnconstrained = -std::numeric_limits<double>::infinity();

/// Symmetric interaction weights
///   W(x,y) = mu(x) mu(y) / (mu(B_{x,y}) d(x,y)^s),  B_{x,y} = B(x,d) u B(y,d),
/// with zero diagonal. Each unordered pair is computed once and mirrored.
class Kernel {
 public:
  Kernel(std::shared_ptr<const Space> space, double s, std::vector<double> weights);

  const Space& space() const noexcept { return *space_; }
  std::shared_ptr<const Space> space_ptr() const noexcept { return space_; }
  std::size_t size() const noexcept { return space_->size(); }
  double s() const noexcept { return s_; }
  double operator()(PointId x, PointId y) const { return w_[x * size() + y]; }
  std::span<const double> weights() const noexcept { return w_; }

 private:
  std::shared_ptr<const Space> space_;
  double s_;
  std::vector<double> w_;
};

/// mu(B_{x,y}) via the sorted distance lists of x and y.
double union_ball_measure(const Space& space, PointId x, PointId y);

/// Kernel assembly, rows distributed over OpenMP threads.
Kernel assemble(std::shared_ptr<const Space> space, double s);

/// Serial reference assembly by direct membership tests (O(n^3)).
Kernel assemble_reference(std::shared_ptr<const Space> space, double s);

/// Throws Error unless 0 < s < 1.
void require_fractional_order(double s);

// All energies sum over unordered pairs x < y in index order, so results are
// reproducible and the factor-of-two relations below hold bit for bit.

/// Sum over ordered pairs in omega x omega of |u(x)-u(y)| W(x,y).
double seminorm(const Kernel& k, std::span<const double> u, const SetMask& omega);
double seminorm(const Kernel& k, std::span<const double> u);

/// Seminorms of many fields at once; queries are independent and run in parallel.
std::vector<double> seminorm_batch(const Kernel& k, std::span<const Field> fields,
                                   const SetMask& omega);

/// L1(mu) norm plus the seminorm on the whole space.
double norm_full(const Kernel& k, std::span<const double> u);

/// (sum over omega x omega + 2 sum over omega x omega^c) of
/// (|u(x)-u(y)| - |v(x)-v(y)|) W(x,y).
double functional_F(const Kernel& k, std::span<const double> u, std::span<const double> v,
                    const SetMask& omega);

/// Sum of W over unordered pairs {x in E n omega, y in omega \ E}; equals half
/// the seminorm of 1_E on omega.
double perimeter(const Kernel& k, const SetMask& E, const SetMask& omega);
double perimeter(const Kernel& k, const SetMask& E);

/// Sum of W(x,y) over x in E, y in F for disjoint E, F.
double interaction(const Kernel& k, const SetMask& E, const SetMask& F);

struct CoareaLayer {
  double threshold;
  double weight;
  double layer_seminorm;
};

struct CoareaDecomposition {
  std::vector<CoareaLayer> layers;
  double direct = 0.0;   ///< seminorm(u, omega)
  double layered = 0.0;  ///< sum of weight * layer_seminorm
};

/// Discrete layer-cake split of the seminorm over the distinct values of u on omega.
CoareaDecomposition coarea_decompose(const Kernel& k, std::span<const double> u,
                                     const SetMask& omega);

/// sum over x in M of mu(x) / (mu(B_{x,y}) d(x,y)^s).
double annular_potential(const Kernel& k, PointId y, const SetMask& M);

Field indicator(const SetMask& E);

}  // namespace fracperim
