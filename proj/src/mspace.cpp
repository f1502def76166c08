#include "fracperim/mspace.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>

namespace fracperim {

// ---------------------------------------------------------------- SetMask

SetMask SetMask::from_ids(std::size_t n, std::span<const PointId> ids) {
  SetMask m(n);
  for (PointId i : ids) {
    if (i >= n) throw Error("point id " + std::to_string(i) + " out of range (n=" +
                            std::to_string(n) + ")");
    m.bits_[i] = 1;
  }
  return m;
}

std::size_t SetMask::count() const noexcept {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

std::vector<PointId> SetMask::ids() const {
  std::vector<PointId> out;
  for (std::size_t i = 0; i < bits_.size(); ++i)
    if (bits_[i]) out.push_back(i);
  return out;
}

void SetMask::require_same_size(const SetMask& o) const {
  if (o.size() != size()) throw Error("mask length mismatch");
}

bool SetMask::subset_of(const SetMask& o) const {
  require_same_size(o);
  for (std::size_t i = 0; i < bits_.size(); ++i)
    if (bits_[i] && !o.bits_[i]) return false;
  return true;
}

bool SetMask::intersects(const SetMask& o) const {
  require_same_size(o);
  for (std::size_t i = 0; i < bits_.size(); ++i)
    if (bits_[i] && o.bits_[i]) return true;
  return false;
}

SetMask SetMask::operator|(const SetMask& o) const {
  require_same_size(o);
  SetMask r(size());
  for (std::size_t i = 0; i < bits_.size(); ++i) r.bits_[i] = bits_[i] | o.bits_[i];
  return r;
}

SetMask SetMask::operator&(const SetMask& o) const {
  require_same_size(o);
  SetMask r(size());
  for (std::size_t i = 0; i < bits_.size(); ++i) r.bits_[i] = bits_[i] & o.bits_[i];
  return r;
}

SetMask SetMask::operator-(const SetMask& o) const {
  require_same_size(o);
  SetMask r(size());
  for (std::size_t i = 0; i < bits_.size(); ++i) r.bits_[i] = bits_[i] & (o.bits_[i] ^ 1);
  return r;
}

SetMask SetMask::operator~() const {
  SetMask r(size());
  for (std::size_t i = 0; i < bits_.size(); ++i) r.bits_[i] = bits_[i] ^ 1;
  return r;
}

// ---------------------------------------------------------------- Space

Space::Space(std::vector<double> dist, std::vector<double> mu, std::string label)
    : dist_(std::move(dist)), mu_(std::move(mu)), label_(std::move(label)) {
  const std::size_t n = mu_.size();
  if (n == 0) throw Error("space must contain at least one point");
  if (n > std::numeric_limits<std::uint32_t>::max()) throw Error("space too large");
  if (dist_.size() != n * n)
    throw Error("distance matrix has " + std::to_string(dist_.size()) + " entries, expected " +
                std::to_string(n * n));
  for (std::size_t x = 0; x < n; ++x) {
    if (!(mu_[x] > 0.0) || !std::isfinite(mu_[x]))
      throw Error("mu(" + std::to_string(x) + ") must be positive and finite");
    if (dist_[x * n + x] != 0.0)
      throw Error("dist(" + std::to_string(x) + "," + std::to_string(x) + ") must be 0");
    for (std::size_t y = x + 1; y < n; ++y) {
      double a = dist_[x * n + y];
      double b = dist_[y * n + x];
      if (a != b)
        throw Error("distance matrix not symmetric at (" + std::to_string(x) + "," +
                    std::to_string(y) + ")");
      if (!(a > 0.0) || !std::isfinite(a))
        throw Error("dist(" + std::to_string(x) + "," + std::to_string(y) +
                    ") must be positive and finite");
    }
  }

  order_.resize(n * n);
  sorted_dist_.resize(n * n);
  prefix_.resize(n * (n + 1));
  std::vector<std::uint32_t> idx(n);
  for (std::size_t x = 0; x < n; ++x) {
    std::iota(idx.begin(), idx.end(), 0u);
    const double* row = &dist_[x * n];
    std::sort(idx.begin(), idx.end(), [row](std::uint32_t a, std::uint32_t b) {
      return row[a] < row[b] || (row[a] == row[b] && a < b);
    });
    double acc = 0.0;
    prefix_[x * (n + 1)] = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      order_[x * n + k] = idx[k];
      sorted_dist_[x * n + k] = row[idx[k]];
      acc += mu_[idx[k]];
      prefix_[x * (n + 1) + k + 1] = acc;
    }
  }
}

double Space::measure(const SetMask& m) const {
  if (m.size() != size()) throw Error("mask length does not match space");
  double acc = 0.0;
  for (std::size_t i = 0; i < size(); ++i)
    if (m[i]) acc += mu_[i];
  return acc;
}

double Space::total_measure() const {
  return std::accumulate(mu_.begin(), mu_.end(), 0.0);
}

double Space::diameter() const {
  return *std::max_element(dist_.begin(), dist_.end());
}

double Space::min_positive_distance() const {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t x = 0; x + 1 < size(); ++x) best = std::min(best, sorted_dist_[x * size() + 1]);
  return best;
}

std::size_t Space::count_within(PointId x, double r) const {
  auto first = sorted_dist_.begin() + static_cast<std::ptrdiff_t>(x * size());
  return static_cast<std::size_t>(std::lower_bound(first, first + size(), r) - first);
}

std::size_t Space::count_within_closed(PointId x, double r) const {
  auto first = sorted_dist_.begin() + static_cast<std::ptrdiff_t>(x * size());
  return static_cast<std::size_t>(std::upper_bound(first, first + size(), r) - first);
}

std::optional<std::array<PointId, 3>> Space::triangle_violation(double rel_tol) const {
  const std::size_t n = size();
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t z = x + 1; z < n; ++z) {
      double dxz = dist(x, z);
      for (std::size_t y = 0; y < n; ++y) {
        if (y == x || y == z) continue;
        double via = dist(x, y) + dist(y, z);
        if (dxz > via * (1.0 + rel_tol)) return std::array<PointId, 3>{x, y, z};
      }
    }
  return std::nullopt;
}

std::vector<double> Space::distinct_distances(PointId x) const {
  std::vector<double> out;
  for (std::size_t k = 1; k < size(); ++k) {
    double d = sorted_dist_[x * size() + k];
    if (out.empty() || out.back() != d) out.push_back(d);
  }
  return out;
}

// ---------------------------------------------------------------- builders

WeightRegime classify_weight_exponent(int dim, double delta, double s) {
  if (delta <= -dim) return WeightRegime::Divergent;
  if (delta < s - dim) return WeightRegime::ThickPoint;
  return WeightRegime::Regular;
}

namespace {

constexpr int kRingLevels = 3;
constexpr int kSplitsPerAxis = 3;

// 8-point Gauss-Legendre nodes and weights on [-1, 1].
constexpr double kGaussNodes[8] = {-0.9602898564975363, -0.7966664774136267, -0.5255324099163290,
                                   -0.1834346424956498, 0.1834346424956498,  0.5255324099163290,
                                   0.7966664774136267,  0.9602898564975363};
constexpr double kGaussWeights[8] = {0.1012285362903763, 0.2223810344533745, 0.3137066458778873,
                                     0.3626837833783620, 0.3626837833783620, 0.3137066458778873,
                                     0.2223810344533745, 0.1012285362903763};

// Tensor Gauss-Legendre rule for |x|^delta over the cube [lo, lo+h]^dim, after
// splitting each axis into kSplitsPerAxis pieces.
double gauss_cube(int dim, double delta, const std::vector<double>& lo, double h) {
  const int m = kSplitsPerAxis * 8;
  const double piece = h / kSplitsPerAxis;
  std::size_t total = 1;
  for (int d = 0; d < dim; ++d) total *= static_cast<std::size_t>(m);
  double acc = 0.0;
  for (std::size_t k = 0; k < total; ++k) {
    std::size_t rest = k;
    double r2 = 0.0, w = 1.0;
    for (int d = 0; d < dim; ++d) {
      const int j = static_cast<int>(rest % static_cast<std::size_t>(m));
      rest /= static_cast<std::size_t>(m);
      const int cell = j / 8, node = j % 8;
      const double c = lo[static_cast<std::size_t>(d)] + piece * (cell + 0.5 * (1.0 + kGaussNodes[node]));
      r2 += c * c;
      w *= kGaussWeights[node];
    }
    acc += w * std::pow(r2, 0.5 * delta);
  }
  return acc * std::pow(0.5 * piece, dim);
}

// Integral over [-a,a]^dim minus [-a/3,a/3]^dim.
double ring_integral(int dim, double delta, double a) {
  const double sub = 2.0 * a / 3.0;
  std::size_t total = 1;
  for (int d = 0; d < dim; ++d) total *= 3;
  double acc = 0.0;
  std::vector<double> lo(static_cast<std::size_t>(dim));
  for (std::size_t k = 0; k < total; ++k) {
    std::size_t rest = k;
    bool centre = true;
    for (int d = 0; d < dim; ++d) {
      int j = static_cast<int>(rest % 3);
      rest /= 3;
      if (j != 1) centre = false;
      lo[static_cast<std::size_t>(d)] = -a + j * sub;
    }
    if (!centre) acc += gauss_cube(dim, delta, lo, sub);
  }
  return acc;
}

double norm(const std::vector<double>& p) {
  double r2 = 0.0;
  for (double c : p) r2 += c * c;
  return std::sqrt(r2);
}

}  // namespace

double origin_cell_integral(int dim, double delta, double side) {
  if (dim <= 0 || !(side > 0.0)) throw Error("origin_cell_integral: bad cell");
  double a = side / 2.0;
  double head = 0.0;
  for (int level = 0; level < kRingLevels; ++level) {
    head += ring_integral(dim, delta, a);
    a /= 3.0;
  }
  // The centre cube scales as 3^{-(dim+delta)} per level, so the remaining
  // tail sums to a geometric series over the rings computed above.
  double q = std::pow(3.0, -kRingLevels * (dim + delta));
  if (dim + delta <= 0.0) return head;  // divergent weight; caller records a note
  return head / (1.0 - q);
}

Space build_euclidean_cells(const std::vector<std::vector<double>>& points, double delta,
                            const std::vector<double>& cell_volumes, std::string label) {
  const std::size_t n = points.size();
  if (n == 0) throw Error("build_euclidean: no points");
  if (cell_volumes.size() != n) throw Error("build_euclidean: one cell volume per point required");
  const std::size_t dim = points.front().size();
  if (dim == 0) throw Error("build_euclidean: zero-dimensional points");
  for (const auto& p : points)
    if (p.size() != dim) throw Error("build_euclidean: inconsistent point dimensions");

  std::vector<double> dist(n * n, 0.0);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = x + 1; y < n; ++y) {
      double r2 = 0.0;
      for (std::size_t d = 0; d < dim; ++d) {
        double c = points[x][d] - points[y][d];
        r2 += c * c;
      }
      if (r2 == 0.0)
        throw Error("build_euclidean: duplicate points " + std::to_string(x) + " and " +
                    std::to_string(y));
      dist[x * n + y] = dist[y * n + x] = std::sqrt(r2);
    }

  std::vector<std::string> notes;
  std::vector<double> mu(n);
  const int idim = static_cast<int>(dim);
  for (std::size_t x = 0; x < n; ++x) {
    if (!(cell_volumes[x] > 0.0)) throw Error("build_euclidean: cell volume must be positive");
    double r = norm(points[x]);
    if (delta == 0.0) {
      mu[x] = cell_volumes[x];
    } else if (r == 0.0) {
      // |0|^delta is singular (delta<0) or zero (delta>0); integrate over the cell.
      double side = std::pow(cell_volumes[x], 1.0 / idim);
      mu[x] = origin_cell_integral(idim, delta, side);
    } else {
      mu[x] = std::pow(r, delta) * cell_volumes[x];
    }
  }
  if (delta <= -static_cast<double>(dim)) {
    std::ostringstream os;
    os << "weight exponent delta=" << delta << " <= -n=" << -static_cast<double>(dim)
       << ": mass near the origin diverges under refinement";
    notes.push_back(os.str());
  }
  Space space(std::move(dist), std::move(mu), std::move(label));
  space.set_coords(points);
  for (auto& note : notes) space.add_note(std::move(note));
  return space;
}

Space build_euclidean(const std::vector<std::vector<double>>& points, double delta,
                      double cell_volume, std::string label) {
  return build_euclidean_cells(points, delta, std::vector<double>(points.size(), cell_volume),
                               std::move(label));
}

Space build_from_matrix(const std::vector<std::vector<double>>& dist, std::vector<double> mu,
                        std::string label) {
  const std::size_t n = dist.size();
  std::vector<double> flat;
  flat.reserve(n * n);
  for (const auto& row : dist) {
    if (row.size() != n) throw Error("distance matrix must be square");
    flat.insert(flat.end(), row.begin(), row.end());
  }
  return Space(std::move(flat), std::move(mu), std::move(label));
}

// ---------------------------------------------------------------- queries

SetMask ball(const Space& space, PointId x, double r) {
  if (!(r > 0.0)) throw Error("ball radius must be positive");
  if (x >= space.size()) throw Error("ball centre out of range");
  SetMask m(space.size());
  auto ord = space.order(x);
  std::size_t k = space.count_within(x, r);
  for (std::size_t i = 0; i < k; ++i) m.set(ord[i]);
  return m;
}

SetMask closed_ball(const Space& space, PointId x, double r) {
  if (!(r >= 0.0)) throw Error("closed ball radius must be nonnegative");
  if (x >= space.size()) throw Error("ball centre out of range");
  SetMask m(space.size());
  auto ord = space.order(x);
  std::size_t k = space.count_within_closed(x, r);
  for (std::size_t i = 0; i < k; ++i) m.set(ord[i]);
  return m;
}

DoublingProfile doubling_profile(const Space& space, std::span<const double> radii,
                                 std::span<const PointId> centers) {
  if (radii.empty() || centers.empty()) throw Error("doubling_profile: empty sample set");
  DoublingProfile prof;
  for (PointId x : centers) {
    if (x >= space.size()) throw Error("doubling_profile: centre out of range");
    for (double r : radii) {
      if (!(r > 0.0)) throw Error("doubling_profile: radii must be positive");
      double ratio = space.ball_measure(x, 2.0 * r) / space.ball_measure(x, r);
      prof.samples.push_back({x, r, ratio});
      prof.C_mu = std::max(prof.C_mu, ratio);
    }
  }
  prof.Q = std::log2(prof.C_mu);
  return prof;
}

bool looks_connected(const Space& space) {
  const std::size_t n = space.size();
  if (n <= 1) return true;
  double gap = 0.0;
  for (std::size_t x = 0; x < n; ++x) gap = std::max(gap, space.dist(x, space.order(x)[1]));
  const double link = 2.0 * gap;
  std::vector<char> seen(n, 0);
  std::vector<std::size_t> stack{0};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    std::size_t x = stack.back();
    stack.pop_back();
    for (std::size_t y = 0; y < n; ++y)
      if (!seen[y] && space.dist(x, y) <= link) {
        seen[y] = 1;
        ++reached;
        stack.push_back(y);
      }
  }
  return reached == n;
}

}  // namespace fracperim
