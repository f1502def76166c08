#include <cmath>

#include "fracperim/energy.hpp"

namespace fracperim {

// Straight from the definition: scan every z for membership in B(x,d) u B(y,d).
Kernel assemble_reference(std::shared_ptr<const Space> space, double s) {
  require_fractional_order(s);
  const Space& sp = *space;
  const std::size_t n = sp.size();
  std::vector<double> w(n * n, 0.0);
  for (PointId x = 0; x < n; ++x)
    for (PointId y = x + 1; y < n; ++y) {
      const double d = sp.dist(x, y);
      double m = 0.0;
      for (PointId z = 0; z < n; ++z)
        if (sp.dist(x, z) < d || sp.dist(y, z) < d) m += sp.mu(z);
      const double value = sp.mu(x) * sp.mu(y) / (m * std::pow(d, s));
      w[x * n + y] = value;
      w[y * n + x] = value;
    }
  return Kernel(std::move(space), s, std::move(w));
}

}  // namespace fracperim
