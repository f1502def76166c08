#include <doctest.h>

#include <memory>
#include <random>

#include "fracperim/instances.hpp"
#include "fracperim/oracle.hpp"
#include "fracperim/solver.hpp"

using namespace fracperim;

TEST_CASE("enumeration on the collinear example") {
  const Kernel k = assemble(std::make_shared<const Space>(collinear3()), 0.5);
  const auto e = enumerate_set_minimum(k, SetMask::from_ids(3, std::vector<PointId>{0}),
                                       SetMask::from_ids(3, std::vector<PointId>{0, 1}), false);
  CHECK(e.evaluated == 2);
  CHECK(e.minimisers == 2);
  CHECK(e.minimal.ids() == std::vector<PointId>{0});
  CHECK(e.value == doctest::Approx(1.4714045207910317));
}

TEST_CASE("enumeration with the mass term") {
  const Kernel k = assemble(std::make_shared<const Space>(two_point()), 0.5);
  const auto e = enumerate_set_minimum(k, SetMask::from_ids(2, std::vector<PointId>{0}), SetMask::full(2), true);
  CHECK(e.value == doctest::Approx(2.0));
  CHECK(e.minimisers == 2);
  CHECK(e.minimal.ids() == std::vector<PointId>{0});
}

TEST_CASE("solvers agree with enumeration on small random instances") {
  std::mt19937_64 rng(77);
  for (int t = 0; t < 30; ++t) {
    const std::size_t n = 4 + uniform_index(rng, 9);
    const Kernel k = assemble(std::make_shared<const Space>(random_planar(n, rng)), 0.5);
    SetMask A(n), F(n);
    A.set(0);
    for (PointId x = 0; x + 1 < n; ++x)
      if (uniform01(rng) < 0.6) F.set(x);
    F = F | A;
    const auto cut = condenser_capacity(k, A, F);
    const auto ref = enumerate_set_minimum(k, A, F, false);
    CHECK(cut.energy == ref.value);
    CHECK(cut.mask == ref.minimal);
    const auto tot = total_capacity(k, A);
    const auto tref = enumerate_set_minimum(k, A, SetMask::full(n), true);
    CHECK(tot.energy == tref.value);
    CHECK(tot.mask == tref.minimal);
  }
}

TEST_CASE("enumeration envelope") {
  const Kernel k = assemble(std::make_shared<const Space>(chain(kBruteForceEnvelope + 2)), 0.5);
  CHECK_THROWS_AS(enumerate_set_minimum(k, SetMask(k.size()), SetMask::full(k.size()), false), Error);
}
