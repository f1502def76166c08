#include <doctest.h>

#include <cmath>
#include <limits>
#include <memory>
#include <random>

#include "fracperim/instances.hpp"
#include "fracperim/potential.hpp"
#include "fracperim/solver.hpp"

using namespace fracperim;

namespace {

Kernel kernel_of(Space sp, double s = 0.5) { return assemble(std::make_shared<const Space>(std::move(sp)), s); }

// Cheapest single open ball B(c, r), r <= R, containing x; radii range over all distances and R.
double single_point_content(const Space& sp, double s, PointId x, double R) {
  std::vector<double> radii{R};
  for (double d : sp.distances())
    if (d > 0.0 && d <= R) radii.push_back(d);
  double best = std::numeric_limits<double>::infinity();
  for (PointId c = 0; c < sp.size(); ++c)
    for (double r : radii) {
      if (!(sp.dist(c, x) < r)) continue;
      double m = 0.0;
      for (PointId y = 0; y < sp.size(); ++y)
        if (sp.dist(c, y) < r) m += sp.mu(y);
      best = std::min(best, m / std::pow(r, s));
    }
  return best;
}

}  // namespace

TEST_CASE("approximate limits") {
  const Space two = two_point();
  auto l = approx_limits(two, Field{3.0, 3.0}, 0, 2.0, 0.25);
  CHECK(l.lower == 3.0);
  CHECK(l.upper == 3.0);
  l = approx_limits(two, Field{0.0, 1.0}, 0, 2.0);
  CHECK(l.lower == 0.0);
  CHECK(l.upper == 1.0);

  const Space g = unit_square_grid(8);
  const PointId c = grid_point(8, 0.5, 0.5);
  const SetMask E = ball(g, c, 0.4);
  l = approx_limits(g, indicator(E), c, 0.2, 0.1);
  CHECK(l.lower == 1.0);
  CHECK(l.upper == 1.0);
  // With theta the minority values are ignored.
  Field spike = indicator(E);
  spike[c] = 0.0;
  l = approx_limits(g, spike, c, 0.3, 0.2);
  CHECK(l.lower == 1.0);
}

TEST_CASE("density classification") {
  const Space g = unit_square_grid(10);
  const std::vector<double> radii{0.4, 0.2, 0.1};
  const PointId c = grid_point(10, 0.5, 0.5);

  auto scan = density_classify(g, SetMask(g.size()), c, radii);
  CHECK(scan.cls == DensityClass::Exterior);

  const SetMask cluster = ball(g, c, 0.35);
  scan = density_classify(g, cluster, c, radii);
  CHECK(scan.cls == DensityClass::Interior);
  CHECK(scan.profile.values.back() == 1.0);

  SetMask checker(g.size());
  for (std::size_t i = 0; i < 10; ++i)
    for (std::size_t j = 0; j < 10; ++j)
      if ((i + j) % 2 == 0) checker.set(i * 10 + j);
  scan = density_classify(g, checker, c, std::vector<double>{0.45});
  CHECK(scan.profile.values[0] == doctest::Approx(0.5).epsilon(0.1));
  CHECK(scan.cls == DensityClass::Boundary);

  const auto part = density_partition(g, cluster, 0.15);
  CHECK((part.interior | part.exterior | part.boundary).count() == g.size());
  CHECK_FALSE(part.interior.intersects(part.exterior));
  CHECK_FALSE(part.interior.intersects(part.boundary));
  CHECK_FALSE(part.exterior.intersects(part.boundary));
  CHECK(part.interior[c]);

  CHECK(classify_density(0.995) == DensityClass::Interior);
  CHECK(classify_density(0.005) == DensityClass::Exterior);
  CHECK(classify_density(0.5) == DensityClass::Boundary);
}

TEST_CASE("thinness profile limits") {
  const Space g = unit_square_grid(10);
  const Kernel k = kernel_of(g);
  const PointId c = grid_point(10, 0.5, 0.5);
  const std::vector<double> radii{0.2, 0.1};

  auto scan = thinness_scan(k, SetMask(g.size()), c, radii);
  for (double v : scan.profile.values) CHECK(v == 0.0);

  scan = thinness_scan(k, ball(g, c, 0.25), c, radii);
  for (double v : scan.profile.values) CHECK(v == 1.0);

  // Radii whose doubled ball is the whole space are skipped and recorded.
  scan = thinness_scan(k, SetMask(g.size()), c, std::vector<double>{2.0, 0.2});
  CHECK(scan.skipped == std::vector<double>{2.0});
  CHECK(scan.profile.radii == std::vector<double>{0.2});

  CHECK_THROWS_AS(thinness_scan(k, SetMask(g.size()), c, std::vector<double>{0.1, 0.2}), Error);
  CHECK(geometric_radii(8.0, 2.0, 3) == std::vector<double>{8.0, 4.0, 2.0});
}

TEST_CASE("single point is thick at every scale") {
  const Space g = unit_square_grid(8);
  const Kernel k = kernel_of(g);
  const PointId c = grid_point(8, 0.5, 0.5);
  SetMask A(g.size());
  A.set(c);
  const auto scan = thinness_scan(k, A, c, std::vector<double>{0.05});  // ball = {c}
  CHECK(scan.profile.values[0] == 1.0);
}

TEST_CASE("profile monotonicity helper") {
  ScaleProfile p;
  p.radii = {4, 2, 1};
  p.values = {0.5, 0.4, 0.1};
  CHECK(p.strictly_decreasing());
  p.values = {0.5, 0.5, 0.1};
  CHECK_FALSE(p.strictly_decreasing());
}

TEST_CASE("Hausdorff content") {
  std::mt19937_64 rng(8);
  const Space sp = random_planar(18, rng);
  CHECK(hausdorff_content(sp, 0.5, SetMask(18), 1.0, ContentMode::Greedy).value == 0.0);

  for (PointId x : {0u, 5u, 11u}) {
    SetMask A(18);
    A.set(x);
    for (double R : {0.2, 5.0}) {
      const double oracle = single_point_content(sp, 0.5, x, R);
      CHECK(hausdorff_content(sp, 0.5, A, R, ContentMode::Exact).value == doctest::Approx(oracle).epsilon(1e-13));
      CHECK(hausdorff_content(sp, 0.5, A, R, ContentMode::Greedy).value == doctest::Approx(oracle).epsilon(1e-13));
    }
  }

  for (int t = 0; t < 10; ++t) {
    SetMask A(18);
    for (PointId x = 0; x < 18; ++x)
      if (uniform01(rng) < 0.4) A.set(x);
    if (A.none()) A.set(0);
    const double R = 0.1 + uniform01(rng);
    const auto g = hausdorff_content(sp, 0.5, A, R, ContentMode::Greedy);
    const auto e = hausdorff_content(sp, 0.5, A, R, ContentMode::Exact);
    CHECK(g.value >= e.value * (1 - 1e-12));
    SetMask covered(18);
    for (const auto& b : e.cover) covered = covered | ball(sp, b.center, b.radius);
    CHECK(A.subset_of(covered));
  }
}

TEST_CASE("Lebesgue profile") {
  const Space g = unit_square_grid(8);
  const PointId c = grid_point(8, 0.5, 0.5);
  const std::vector<double> radii{0.4, 0.2, 0.05};
  auto p = lebesgue_profile(g, Field(g.size(), 2.0), c, radii);
  for (double v : p.values) CHECK(v == 0.0);

  // Exterior-like centre: u(x) = 0, so the mean oscillation is the density.
  const PointId corner = grid_point(8, 0.1, 0.1);
  const SetMask E = ball(g, corner, 0.3) - ball(g, corner, 0.1);
  p = lebesgue_profile(g, indicator(E), corner, radii);
  const auto d = density_classify(g, E, corner, radii);
  for (std::size_t i = 0; i < radii.size(); ++i) CHECK(p.values[i] == doctest::Approx(d.profile.values[i]));
  CHECK(p.values.back() == 0.0);
}
