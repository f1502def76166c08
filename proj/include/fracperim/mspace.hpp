#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace fracperim {

/// Raised on violated preconditions and malformed inputs.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using PointId = std::size_t;

/// Characteristic function of a subset of the points of a Space.
class SetMask {
 public:
  SetMask() = default;
  explicit SetMask(std::size_t n, bool value = false) : bits_(n, value ? 1 : 0) {}

  static SetMask from_ids(std::size_t n, std::span<const PointId> ids);
  static SetMask full(std::size_t n) { return SetMask(n, true); }

  std::size_t size() const noexcept { return bits_.size(); }
  bool operator[](PointId i) const { return bits_[i] != 0; }
  bool test(PointId i) const { return bits_.at(i) != 0; }
  void set(PointId i, bool value = true) { bits_.at(i) = value ? 1 : 0; }

  std::size_t count() const noexcept;
  bool none() const noexcept { return count() == 0; }
  bool any() const noexcept { return !none(); }
  std::vector<PointId> ids() const;

  bool subset_of(const SetMask& other) const;
  bool intersects(const SetMask& other) const;

  SetMask operator|(const SetMask& o) const;
  SetMask operator&(const SetMask& o) const;
  SetMask operator-(const SetMask& o) const;  // set difference
  SetMask operator~() const;

  bool operator==(const SetMask& o) const = default;

 private:
  void require_same_size(const SetMask& o) const;
  std::vector<std::uint8_t> bits_;
};

/// Finite metric measure space with a dense distance matrix.
///
/// Immutable after construction. Per-point distance orderings and mass prefix
/// sums are precomputed so that ball measures cost O(log n).
class Space {
 public:
  /// `dist` is row-major n*n. Throws Error naming the first violated invariant.
  Space(std::vector<double> dist, std::vector<double> mu, std::string label = {});

  std::size_t size() const noexcept { return mu_.size(); }
  double dist(PointId x, PointId y) const { return dist_[x * size() + y]; }
  double mu(PointId x) const { return mu_[x]; }
  std::span<const double> masses() const noexcept { return mu_; }
  std::span<const double> distances() const noexcept { return dist_; }
  const std::string& label() const noexcept { return label_; }

  /// Euclidean coordinates when the space was built from points (empty otherwise).
  const std::vector<std::vector<double>>& coords() const noexcept { return coords_; }
  void set_coords(std::vector<std::vector<double>> coords) { coords_ = std::move(coords); }

  /// Free-form diagnostics collected during construction (weight warnings etc).
  const std::vector<std::string>& notes() const noexcept { return notes_; }
  void add_note(std::string note) { notes_.push_back(std::move(note)); }

  double measure(const SetMask& m) const;
  double total_measure() const;
  double diameter() const;
  double min_positive_distance() const;

  /// Points sorted by distance from x (x first), ties broken by id.
  std::span<const std::uint32_t> order(PointId x) const {
    return {order_.data() + x * size(), size()};
  }
  /// Number of points y with dist(x,y) < r.
  std::size_t count_within(PointId x, double r) const;
  /// Number of points y with dist(x,y) <= r.
  std::size_t count_within_closed(PointId x, double r) const;
  /// mu of the first `k` points of order(x).
  double prefix_mass(PointId x, std::size_t k) const { return prefix_[x * (size() + 1) + k]; }
  /// mu(B(x,r)) for the open ball.
  double ball_measure(PointId x, double r) const { return prefix_mass(x, count_within(x, r)); }

  /// O(n^3) scan; returns the first (x,y,z) with d(x,z) > d(x,y) + d(y,z).
  std::optional<std::array<PointId, 3>> triangle_violation(double rel_tol = 1e-12) const;

  /// Distinct positive distances from x in increasing order.
  std::vector<double> distinct_distances(PointId x) const;

 private:
  std::vector<double> dist_;
  std::vector<double> mu_;
  std::string label_;
  std::vector<std::vector<double>> coords_;
  std::vector<std::string> notes_;
  std::vector<std::uint32_t> order_;
  std::vector<double> sorted_dist_;
  std::vector<double> prefix_;
};

struct DoublingSample {
  PointId x;
  double r;
  double ratio;
};

struct DoublingProfile {
  double C_mu = 1.0;
  double Q = 0.0;
  std::vector<DoublingSample> samples;
};

enum class WeightRegime { Divergent, ThickPoint, Regular };

/// Where a power weight |x|^delta in dimension n sits relative to the
/// thick-point band -n < delta < s - n.
WeightRegime classify_weight_exponent(int dim, double delta, double s);

/// Cell integral of |x|^delta over the hypercube of side `side` centered at
/// the origin. Ring-by-ring Gauss-Legendre quadrature with a self-similar tail.
double origin_cell_integral(int dim, double delta, double side);

/// Euclidean space with mu(x) = |x|^delta * cell_volume (cube cells). A point
/// at the origin receives the cell integral when delta < 0.
Space build_euclidean(const std::vector<std::vector<double>>& points, double delta,
                      double cell_volume, std::string label = {});

/// As build_euclidean, with one cell volume per point (graded grids).
Space build_euclidean_cells(const std::vector<std::vector<double>>& points, double delta,
                            const std::vector<double>& cell_volumes, std::string label = {});

/// Space from an explicit distance matrix.
Space build_from_matrix(const std::vector<std::vector<double>>& dist, std::vector<double> mu,
                        std::string label = {});

/// Open ball {y : d(x,y) < r}. Requires r > 0.
SetMask ball(const Space& space, PointId x, double r);
/// Closed ball {y : d(x,y) <= r}.
SetMask closed_ball(const Space& space, PointId x, double r);

DoublingProfile doubling_profile(const Space& space, std::span<const double> radii,
                                 std::span<const PointId> centers);

/// Single-linkage connectivity at twice the largest nearest-neighbour gap.
/// Heuristic only; the kernel graph itself is always complete.
bool looks_connected(const Space& space);

}  // namespace fracperim
