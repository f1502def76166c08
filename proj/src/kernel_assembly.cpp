#include <cmath>

#include "fracperim/energy.hpp"

namespace fracperim {

double union_ball_measure(const Space& space, PointId x, PointId y) {
  const double d = space.dist(x, y);
  // mu(B(x,d)) from the prefix sums, then the part of B(y,d) outside B(x,d).
  double m = space.prefix_mass(x, space.count_within(x, d));
  auto ord_y = space.order(y);
  const std::size_t ky = space.count_within(y, d);
  for (std::size_t i = 0; i < ky; ++i) {
    PointId z = ord_y[i];
    if (space.dist(x, z) >= d) m += space.mu(z);
  }
  return m;
}

Kernel assemble(std::shared_ptr<const Space> space, double s) {
  require_fractional_order(s);
  const Space& sp = *space;
  const auto n = static_cast<std::ptrdiff_t>(sp.size());
  std::vector<double> w(sp.size() * sp.size(), 0.0);

#pragma omp parallel for schedule(dynamic, 4)
  for (std::ptrdiff_t xi = 0; xi < n; ++xi) {
    const auto x = static_cast<PointId>(xi);
    for (PointId y = x + 1; y < sp.size(); ++y) {
      const double d = sp.dist(x, y);
      const double value = sp.mu(x) * sp.mu(y) / (union_ball_measure(sp, x, y) * std::pow(d, s));
      w[x * sp.size() + y] = value;
      w[y * sp.size() + x] = value;
    }
  }
  return Kernel(std::move(space), s, std::move(w));
}

}  // namespace fracperim
