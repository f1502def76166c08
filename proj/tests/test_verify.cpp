#include <doctest.h>

#include <cmath>
#include <limits>
#include <memory>
#include <random>

#include "fracperim/instances.hpp"
#include "fracperim/verify.hpp"

using namespace fracperim;

namespace {

Kernel kernel_of(Space sp, double s = 0.5) { return assemble(std::make_shared<const Space>(std::move(sp)), s); }

SetMask ids(std::size_t n, std::vector<PointId> v) { return SetMask::from_ids(n, v); }

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

}  // namespace

TEST_CASE("coarea report") {
  const Kernel k = kernel_of(two_point());
  auto rep = coarea_check(k, Field{0.0, 3.0}, SetMask::full(2));
  CHECK(rep.pass);
  CHECK(rep.lhs == rep.rhs);
  rep = coarea_check(k, Field{1.0, 1.0}, SetMask::full(2));
  CHECK(rep.pass);
  CHECK(rep.lhs == 0.0);

  std::mt19937_64 rng(2);
  const Kernel big = kernel_of(random_planar(40, rng), 0.3);
  Field u(40);
  for (auto& v : u) v = uniform01(rng);
  CHECK(coarea_check(big, u, SetMask::full(40)).pass);
  CHECK_FALSE(coarea_check(big, u, SetMask::full(40), 0.0).pass);  // no tolerance at all
}

TEST_CASE("Harnack report") {
  const Space g = unit_square_grid(8);
  const Kernel k = kernel_of(g);
  const PointId c = grid_point(8, 0.5, 0.5);
  const double r = 0.2, R = 0.4, Q = 2.0, k0 = 0.3;

  auto rep = harnack_check(k, Field(g.size(), k0 + 1.0), c, r, R, k0, Q);
  CHECK(rep.lhs == doctest::Approx(1.0));
  CHECK(rep.empirical_constant == doctest::Approx(std::pow((R - r) / R, Q)));
  CHECK(rep.empirical_constant <= 1.0);

  rep = harnack_check(k, Field(g.size(), k0 - 1.0), c, r, R, k0, Q, 1.0);
  CHECK(rep.lhs == 0.0);
  CHECK(rep.empirical_constant == 0.0);
  CHECK(rep.pass);
  CHECK_THROWS_AS(harnack_check(k, Field(g.size(), 0.0), c, R, r, k0, Q), Error);
}

TEST_CASE("Caccioppoli report") {
  const Space g = unit_square_grid(8);
  const Kernel k = kernel_of(g);
  const PointId c = grid_point(8, 0.5, 0.5);
  auto rep = caccioppoli_check(k, Field(g.size(), 0.0), 0.5, c, 0.1, 0.3);
  CHECK(rep.lhs == 0.0);
  CHECK(rep.rhs == 0.0);
  CHECK(rep.pass);
  rep = caccioppoli_check(k, Field(g.size(), 1.5), 0.5, c, 0.1, 0.3);
  CHECK(rep.rhs > 0.0);
  CHECK(std::isfinite(rep.empirical_constant));
}

TEST_CASE("De Giorgi iteration") {
  const Space g = unit_square_grid(8);
  const Kernel k = kernel_of(g);
  const PointId c = grid_point(8, 0.5, 0.5);
  auto rep = degiorgi_iterate(k, Field(g.size(), 0.2), c, 0.15, 0.4, 0.2, 2.0, 1.0);
  CHECK(rep.pass);
  CHECK(rep.lhs == 0.0);
  // With C = 1 the level jump d exceeds the excess, so every later iterate vanishes.
  rep = degiorgi_iterate(k, Field(g.size(), 1.2), c, 0.15, 0.4, 0.2, 2.0, 1.0);
  CHECK(rep.pass);
  CHECK(rep.lhs == 0.0);
  // The bisected constant is the smallest admissible one and is no larger.
  const auto bis = degiorgi_iterate(k, Field(g.size(), 1.2), c, 0.15, 0.4, 0.2, 2.0);
  CHECK(bis.pass);
  CHECK(bis.empirical_constant <= 1.0);
}

TEST_CASE("Poincare and isoperimetric by hand") {
  const Kernel k = kernel_of(two_point());
  const auto p = poincare_check(k, SetMask::full(2), 2.0, Field{0.0, 1.0});
  CHECK(p.lhs == doctest::Approx(0.5));
  CHECK(p.rhs == doctest::Approx(kInvSqrt2));
  CHECK(p.empirical_constant == doctest::Approx(kInvSqrt2));
  CHECK(poincare_check(k, SetMask::full(2), 2.0, Field{3.0, 3.0}).empirical_constant == 0.0);

  const auto iso = isoperimetric_check(k, ids(2, {0}), 0, 2.0);
  CHECK(iso.empirical_constant == doctest::Approx(kInvSqrt2));
  CHECK(isoperimetric_check(k, SetMask(2), 0, 2.0).empirical_constant == 0.0);
  CHECK_THROWS_AS(isoperimetric_check(k, ids(2, {1}), 0, 0.5), Error);
}

TEST_CASE("ball capacity") {
  // Tiny ball {0} inside B(0, 1.2) = {0, 1} on a 3-chain: the cut is the cheaper of E = {0} and E = {0, 1}.
  const Kernel c3 = kernel_of(chain(3));
  const auto rep = ball_capacity_check(c3, 0, 0.6, 1.2);
  const double e0 = 2.0 * (c3(0, 1) + c3(0, 2));
  const double e01 = 2.0 * (c3(0, 2) + c3(1, 2));
  CHECK(rep.lhs == doctest::Approx(std::min(e0, e01)));
  CHECK(rep.rhs == doctest::Approx(1.0 / std::pow(0.6, 0.5)));

  // Both sides scale with the measure.
  std::mt19937_64 rng(6);
  const Space base = random_planar(30, rng);
  std::vector<double> d(base.distances().begin(), base.distances().end());
  std::vector<double> mu(base.masses().begin(), base.masses().end());
  for (auto& m : mu) m *= 4.0;
  const auto a = ball_capacity_check(kernel_of(base), 0, 0.2, 0.4);
  const auto b = ball_capacity_check(kernel_of(Space(d, mu)), 0, 0.2, 0.4);
  CHECK(a.empirical_constant == doctest::Approx(b.empirical_constant).epsilon(1e-12));
}

TEST_CASE("capacity comparisons") {
  const Space g = unit_square_grid(10);
  const Kernel k = kernel_of(g);
  const PointId c = grid_point(10, 0.5, 0.5);
  auto rep = capacity_comparisons(k, SetMask(g.size()), c, 0.1, 0.2, 0.35);
  CHECK(rep.lhs == 0.0);
  CHECK(rep.rhs == 0.0);
  CHECK(rep.pass);

  std::mt19937_64 rng(12);
  for (int t = 0; t < 5; ++t) {
    SetMask A = ball(g, c, 0.1) & SetMask(g.size(), true);
    for (PointId x : A.ids())
      if (uniform01(rng) < 0.5) A.set(x, false);
    rep = capacity_comparisons(k, A, c, 0.1, 0.2, 0.35);
    CHECK(rep.pass);
    CHECK(rep.lhs <= rep.rhs);
  }
}

TEST_CASE("annulus constant on a chain") {
  const Kernel k = kernel_of(chain(64));
  const auto a = find_annulus_k(k, 32, 16.0, 0.25);
  REQUIRE(a.found);
  CHECK(annulus_holds(k, 32, 16.0, 0.25, a.k));
  CHECK_FALSE(annulus_holds(k, 32, 16.0, 0.25, a.k - 1));
  // A larger c0 never needs a larger k.
  const auto loose = find_annulus_k(k, 32, 16.0, 0.9);
  CHECK((loose.found && loose.k <= a.k));
}

TEST_CASE("weak Cartan with an empty set") {
  // The outermost obstacle domain B(x, 2^(k-1) R) must leave a complement.
  const Kernel k = kernel_of(chain(256));
  const auto fam = weak_cartan(k, SetMask(256), 128, 8.0, 4, 1, 1.0, 50, 0);
  CHECK_THROWS_AS(weak_cartan(k, SetMask(256), 128, 32.0, 4, 1, 1.0, 50, 0), Error);
  for (const auto& E : fam.E) CHECK(E.none());
  CHECK(fam.pass);
  for (const auto& r : fam.checks) CHECK(r.pass);
}

TEST_CASE("strong Cartan degenerate inputs") {
  const Space g = unit_square_grid(10);
  const Kernel k = kernel_of(g);
  const PointId c = grid_point(10, 0.5, 0.5);
  const auto sc = strong_cartan(k, SetMask(g.size()), c, 0.4, 3, 10.0);
  for (double v : sc.u) CHECK(v == 0.0);
  SetMask A(g.size());
  A.set(c);
  CHECK_THROWS_AS(strong_cartan(k, A, c, 0.4, 3, 10.0), Error);
}

TEST_CASE("ball perimeter scan") {
  const Kernel k = kernel_of(collinear3());
  auto rep = ball_perimeter_scan(k, 0, std::vector<double>{10.0, 0.5});
  const auto& rows = rep.trace["rows"];
  CHECK(rows[0]["perimeter"].get<double>() == 0.0);
  CHECK(rows[1]["perimeter"].get<double>() == doctest::Approx(perimeter(k, ids(3, {0}))));
  CHECK_FALSE(rep.flags.empty());
}

TEST_CASE("boundary capacity") {
  const Space g = unit_square_grid(16);
  const Kernel k = kernel_of(g);
  const PointId c = grid_point(16, 0.5, 0.5);
  auto rep = boundary_capacity_check(k, SetMask(g.size()), c, 0.2, 0.1, 1.0);
  CHECK(rep.lhs == 0.0);
  CHECK(rep.empirical_constant == 0.0);
  CHECK_THROWS_AS(boundary_capacity_check(k, SetMask::full(g.size()), c, 0.2, 0.1, 1.0), Error);
}

TEST_CASE("report serialisation") {
  Report r;
  r.name = "x";
  r.lhs = 1.0;
  r.rhs = 0.0;
  r.empirical_constant = ratio_or_zero(r.lhs, r.rhs);
  CHECK(std::isinf(r.empirical_constant));
  CHECK(ratio_or_zero(0.0, 0.0) == 0.0);
  const json j = to_json(r);
  CHECK(j["empirical_constant"].is_string());
  CHECK(csv_row(r).rfind("\"x\",", 0) == 0);
  CHECK(csv_header().find("empirical_constant") != std::string::npos);
}
