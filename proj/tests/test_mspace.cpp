#include <doctest.h>

#include <cmath>

#include "fracperim/instances.hpp"
#include "fracperim/mspace.hpp"

using namespace fracperim;

namespace {

std::vector<std::vector<double>> grid3() {
  std::vector<std::vector<double>> pts;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) pts.push_back({double(i), double(j)});
  return pts;
}

}  // namespace

TEST_CASE("unweighted grid has unit masses and euclidean distances") {
  const Space sp = build_euclidean(grid3(), 0.0, 1.0);
  REQUIRE(sp.size() == 9);
  for (PointId x = 0; x < 9; ++x) CHECK(sp.mu(x) == 1.0);
  CHECK(sp.dist(0, 4) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(sp.dist(4, 0) == sp.dist(0, 4));
}

TEST_CASE("two points from coordinates") {
  const Space sp = build_euclidean({{0.0}, {1.0}}, 0.0, 1.0);
  CHECK(sp.dist(0, 1) == 1.0);
  CHECK(sp.dist(0, 0) == 0.0);
  CHECK(sp.mu(0) == 1.0);
  CHECK(sp.mu(1) == 1.0);
}

TEST_CASE("open and closed balls on the 3x3 grid") {
  const Space sp = build_euclidean(grid3(), 0.0, 1.0);
  const PointId c = 4;
  CHECK(ball(sp, c, 1.2).count() == 5);
  CHECK(ball(sp, c, 1.5).count() == 9);
  CHECK(ball(sp, c, 1.0).count() == 1);
  CHECK(closed_ball(sp, c, 1.0).count() == 5);
  CHECK(ball(sp, c, std::sqrt(2.0)).count() == 5);
  CHECK(closed_ball(sp, c, std::sqrt(2.0)).count() == 9);
  CHECK(ball(sp, c, 1e-6).ids() == std::vector<PointId>{c});
  CHECK_THROWS_AS(ball(sp, c, 0.0), Error);
  CHECK(sp.ball_measure(c, 1.2) == 5.0);
  CHECK(sp.count_within(c, 1.2) == 5);
  CHECK(sp.count_within_closed(c, 1.0) == 5);
}

TEST_CASE("thick-point regime of power weights") {
  for (double delta : {-1.99, -1.75, -1.51})
    CHECK(classify_weight_exponent(2, delta, 0.5) == WeightRegime::ThickPoint);
  CHECK(classify_weight_exponent(2, -2.0, 0.5) == WeightRegime::Divergent);
  CHECK(classify_weight_exponent(2, -1.5, 0.5) == WeightRegime::Regular);
  CHECK(classify_weight_exponent(2, 0.0, 0.5) == WeightRegime::Regular);
}

TEST_CASE("power weights and the origin cell") {
  const Space sp = build_euclidean({{0.0, 0.0}, {2.0, 0.0}}, -1.0, 0.5);
  CHECK(sp.mu(1) == doctest::Approx(0.25));
  // |x|^-1 over a square of side a: a * 4 asinh(1) in closed form.
  const double side = std::sqrt(0.5);
  CHECK(origin_cell_integral(2, -1.0, side) == doctest::Approx(side * 4.0 * std::asinh(1.0)).epsilon(1e-9));
  CHECK(sp.mu(0) == doctest::Approx(side * 4.0 * std::asinh(1.0)).epsilon(1e-9));
  // One dimension: 2 (L/2)^(1+delta) / (1+delta).
  for (double delta : {-0.5, -0.9, 0.5})
    CHECK(origin_cell_integral(1, delta, 2.0) == doctest::Approx(2.0 / (1.0 + delta)).epsilon(1e-9));
  CHECK_FALSE(build_euclidean({{0.0, 0.0}, {1.0, 0.0}}, -2.5, 1.0).notes().empty());
}

TEST_CASE("space validation") {
  CHECK_THROWS_AS(Space({0, 1, 1, 0}, {1, 0}), Error);            // zero mass
  CHECK_THROWS_AS(Space({0, 1, 2, 0}, {1, 1}), Error);            // asymmetric
  CHECK_THROWS_AS(Space({0, 0, 0, 0}, {1, 1}), Error);            // coincident points
  CHECK_THROWS_AS(Space({0, 1, 1, 0, 1}, {1, 1}), Error);         // shape
  const std::vector<std::vector<double>> bad{{0, 1, 5}, {1, 0, 1}, {5, 1, 0}};
  const auto v = build_from_matrix(bad, {1, 1, 1}).triangle_violation();
  REQUIRE(v.has_value());
  CHECK((*v)[0] != (*v)[1]);
  CHECK(build_euclidean(grid3(), 0.0, 1.0).triangle_violation() == std::nullopt);
}

TEST_CASE("doubling diagnostics") {
  const Space one({0.0}, {1.0});
  const PointId c0 = 0;
  const std::vector<double> r1{1.0, 0.5};
  auto p = doubling_profile(one, r1, std::span<const PointId>(&c0, 1));
  CHECK(p.C_mu == 1.0);
  CHECK(p.Q == 0.0);

  const Space two = two_point(1.0);
  const std::vector<double> r2{0.75};
  const PointId c[] = {0, 1};
  p = doubling_profile(two, r2, c);
  CHECK(p.C_mu == 2.0);

  const Space line = chain(64);
  std::vector<double> radii{32, 16, 8, 4, 2};
  std::vector<PointId> centres{16, 32, 47};
  p = doubling_profile(line, radii, centres);
  CHECK(p.C_mu >= 1.8);
  CHECK(p.C_mu <= 3.0);
}

TEST_CASE("set masks") {
  SetMask a = SetMask::from_ids(5, std::vector<PointId>{0, 2});
  SetMask b = SetMask::from_ids(5, std::vector<PointId>{2, 3});
  CHECK((a | b).ids() == std::vector<PointId>{0, 2, 3});
  CHECK((a & b).ids() == std::vector<PointId>{2});
  CHECK((a - b).ids() == std::vector<PointId>{0});
  CHECK((~a).count() == 3);
  CHECK(a.intersects(b));
  CHECK((a & b).subset_of(a));
  CHECK_THROWS_AS(a | SetMask(4), Error);
}

TEST_CASE("generated instances") {
  const Space g = unit_square_grid(8);
  CHECK(g.size() == 64);
  CHECK(g.total_measure() == doctest::Approx(1.0));
  const PointId c = grid_point(8, 0.5, 0.5);
  CHECK(g.coords()[c][0] == doctest::Approx(0.5).epsilon(0.2));

  GradedGridSpec spec;
  spec.core = 5;
  spec.rings = 2;
  const GradedGrid gg = graded_weighted_grid(spec);
  CHECK(gg.space->size() == 25 + 2 * 48);
  CHECK(gg.space->coords()[gg.origin][0] == 0.0);
  CHECK(find_point(*gg.space, 1.0, 0.0) != gg.origin);
  CHECK_THROWS_AS(find_point(*gg.space, 0.5, 0.0), Error);
  // No cells overlap: masses follow the local cell area.
  const PointId p = find_point(*gg.space, 2.0, 0.0);
  CHECK(gg.space->mu(p) == doctest::Approx(std::pow(2.0, -1.75)));
}
