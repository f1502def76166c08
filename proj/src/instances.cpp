#include "fracperim/instances.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace fracperim {

std::size_t uniform_index(std::mt19937_64& rng, std::size_t n) {
  if (n == 0) throw Error("uniform_index: empty range");
  return std::min(n - 1, static_cast<std::size_t>(uniform01(rng) * static_cast<double>(n)));
}

Space two_point(double d) { return build_from_matrix({{0.0, d}, {d, 0.0}}, {1.0, 1.0}, "two-point"); }

Space collinear3() { return chain(3, 1.0); }

Space chain(std::size_t n, double spacing) {
  std::vector<std::vector<double>> pts;
  for (std::size_t i = 0; i < n; ++i) pts.push_back({spacing * static_cast<double>(i)});
  std::ostringstream label;
  label << "chain n=" << n;
  return build_euclidean(pts, 0.0, 1.0, label.str());
}

Space random_planar(std::size_t n, std::mt19937_64& rng) {
  std::vector<std::vector<double>> pts(n);
  std::vector<double> mu(n);
  for (std::size_t i = 0; i < n; ++i) {
    pts[i] = {uniform01(rng), uniform01(rng)};
    mu[i] = 0.5 + 1.5 * uniform01(rng);
  }
  Space base = build_euclidean(pts, 0.0, 1.0);
  std::vector<double> dist(base.distances().begin(), base.distances().end());
  std::ostringstream label;
  label << "random planar n=" << n;
  Space out(std::move(dist), std::move(mu), label.str());
  out.set_coords(pts);
  return out;
}

Space unit_square_grid(std::size_t N) {
  if (N == 0) throw Error("unit_square_grid: N must be positive");
  std::vector<std::vector<double>> pts;
  pts.reserve(N * N);
  const double h = 1.0 / static_cast<double>(N);
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j)
      pts.push_back({(static_cast<double>(i) + 0.5) * h, (static_cast<double>(j) + 0.5) * h});
  std::ostringstream label;
  label << "unit square grid " << N << "x" << N;
  return build_euclidean(pts, 0.0, h * h, label.str());
}

PointId grid_point(std::size_t N, double u, double v) {
  auto index = [N](double t) {
    long i = std::lround(t * static_cast<double>(N) - 0.5);
    return static_cast<std::size_t>(std::clamp(i, 0L, static_cast<long>(N) - 1));
  };
  return index(u) * N + index(v);
}

GradedGrid graded_weighted_grid(const GradedGridSpec& spec) {
  if (spec.core % 2 == 0) throw Error("graded grid: core size must be odd");
  if (!(spec.h > 0.0)) throw Error("graded grid: spacing must be positive");
  std::vector<std::vector<double>> pts;
  std::vector<double> vol;
  const long half = static_cast<long>(spec.core / 2);
  GradedGrid out;
  for (long i = -half; i <= half; ++i)
    for (long j = -half; j <= half; ++j) {
      if (i == 0 && j == 0) out.origin = pts.size();
      pts.push_back({spec.h * static_cast<double>(i), spec.h * static_cast<double>(j)});
      vol.push_back(spec.h * spec.h);
    }
  out.core_points = pts.size();
  double inner = spec.h * static_cast<double>(spec.core) / 2.0;
  out.core_halfwidth = inner;
  for (std::size_t t = 0; t < spec.rings; ++t) {
    // Ring between half-widths a and 2a, cells of side a/2: an 8x8 block minus its 4x4 centre.
    const double a = inner, c = a / 2.0;
    for (int p = 0; p < 8; ++p)
      for (int q = 0; q < 8; ++q) {
        if (p >= 2 && p < 6 && q >= 2 && q < 6) continue;
        pts.push_back({-2.0 * a + (p + 0.5) * c, -2.0 * a + (q + 0.5) * c});
        vol.push_back(c * c);
      }
    inner = 2.0 * a;
  }
  out.outer_halfwidth = inner;
  std::ostringstream label;
  label << "graded weighted grid core=" << spec.core << " h=" << spec.h << " rings=" << spec.rings
        << " delta=" << spec.delta;
  out.space = std::make_shared<const Space>(build_euclidean_cells(pts, spec.delta, vol, label.str()));
  return out;
}

PointId find_point(const Space& space, double x, double y) {
  const auto& c = space.coords();
  double scale = 1e-9 * std::max(1.0, space.min_positive_distance());
  for (PointId i = 0; i < c.size(); ++i)
    if (c[i].size() == 2 && std::abs(c[i][0] - x) <= scale && std::abs(c[i][1] - y) <= scale) return i;
  throw Error("find_point: no point at the requested coordinates");
}

}  // namespace fracperim
