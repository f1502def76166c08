#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "fracperim/instances.hpp"
#include "fracperim/maxflow.hpp"

using namespace fracperim;

namespace {

struct Brute {
  double value = std::numeric_limits<double>::infinity();
  SetMask minimal;
};

// Enumerates every admissible side; the minimal optimum is the intersection of all optima.
Brute enumerate(const PairCapacities& cap, std::span<const double> unary, const SetMask& S, const SetMask& T) {
  const std::size_t n = cap.n;
  std::vector<PointId> free;
  for (PointId x = 0; x < n; ++x)
    if (!S[x] && !T[x]) free.push_back(x);
  std::vector<double> values;
  std::vector<SetMask> sides;
  for (std::uint64_t bits = 0; bits < (1ull << free.size()); ++bits) {
    SetMask E = S;
    for (std::size_t i = 0; i < free.size(); ++i)
      if (bits >> i & 1) E.set(free[i]);
    double v = 0.0;
    for (PointId x = 0; x < n; ++x) {
      if (!E[x]) continue;
      if (!unary.empty()) v += unary[x];
      for (PointId y = 0; y < n; ++y)
        if (!E[y]) v += cap(x, y);
    }
    values.push_back(v);
    sides.push_back(E);
  }
  Brute b;
  for (double v : values) b.value = std::min(b.value, v);
  b.minimal = SetMask::full(n);
  for (std::size_t i = 0; i < values.size(); ++i)
    if (values[i] <= b.value * (1 + 1e-12)) b.minimal = b.minimal & sides[i];
  return b;
}

}  // namespace

TEST_CASE("two nodes") {
  const std::vector<double> w{0.0, 0.5, 0.5, 0.0};
  const PairCapacities cap{2, w, 1.0};
  const auto cut = min_cut(cap, {}, SetMask::from_ids(2, std::vector<PointId>{0}),
                           SetMask::from_ids(2, std::vector<PointId>{1}));
  CHECK(cut.source_side.ids() == std::vector<PointId>{0});
  CHECK(cut.cut_value == 0.5);
  CHECK(cut.flow_value == doctest::Approx(0.5));
}

TEST_CASE("collinear tie resolves to the minimal side") {
  const double a = 0.5, b = 1.0 / (3.0 * std::sqrt(2.0));
  const std::vector<double> w{0, a, b, a, 0, a, b, a, 0};
  const PairCapacities cap{3, w, 2.0};
  const auto cut = min_cut(cap, {}, SetMask::from_ids(3, std::vector<PointId>{0}),
                           SetMask::from_ids(3, std::vector<PointId>{2}));
  CHECK(cut.source_side.ids() == std::vector<PointId>{0});
  CHECK(cut.maximal_source_side.ids() == std::vector<PointId>{0, 1});
  CHECK(cut.cut_value == doctest::Approx(1.4714045207910317).epsilon(1e-14));
}

TEST_CASE("random complete graphs against enumeration") {
  std::mt19937_64 rng(42);
  for (int t = 0; t < 60; ++t) {
    const std::size_t n = 10;
    std::vector<double> w(n * n, 0.0);
    for (PointId x = 0; x < n; ++x)
      for (PointId y = x + 1; y < n; ++y) w[x * n + y] = w[y * n + x] = t % 3 == 0 ? double(uniform_index(rng, 3)) : uniform01(rng);
    std::vector<double> unary;
    if (t % 2) {
      unary.resize(n);
      for (auto& u : unary) u = uniform01(rng);
    }
    const PairCapacities cap{n, w, 2.0};
    SetMask S(n), T(n);
    S.set(uniform_index(rng, n));
    for (PointId x = 0; x < n; ++x)
      if (!S[x] && uniform01(rng) < 0.2) T.set(x);
    const auto cut = min_cut(cap, unary, S, T);
    const auto ref = enumerate(cap, unary, S, T);
    CHECK(cut.cut_value == doctest::Approx(ref.value).epsilon(1e-12));
    CHECK(std::abs(cut.flow_value - ref.value) <= 1e-12 * std::max(1.0, ref.value));
    CHECK(cut.source_side == ref.minimal);
    CHECK(cut.source_side.subset_of(cut.maximal_source_side));
  }
}

TEST_CASE("empty terminal sets are allowed") {
  const std::vector<double> w{0.0, 1.0, 1.0, 0.0};
  const PairCapacities cap{2, w, 1.0};
  const auto cut = min_cut(cap, {}, SetMask(2), SetMask(2));
  CHECK(cut.source_side.none());
  CHECK(cut.cut_value == 0.0);
  CHECK_THROWS_AS(min_cut(cap, {}, SetMask::full(2), SetMask::full(2)), Error);
}
