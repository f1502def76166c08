#pragma once

#include <cstdint>
#include <memory>
#include <random>
#include <vector>

#include "fracperim/mspace.hpp"

namespace fracperim {

/// Deterministic double in [0,1) from a 64-bit engine (platform independent).
inline double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }
/// Uniform integer in [0, n).
std::size_t uniform_index(std::mt19937_64& rng, std::size_t n);

/// Two points at distance d with unit masses.
Space two_point(double d = 1.0);
/// Points 0, 1, 2 on a line, unit masses.
Space collinear3();
/// n equally spaced points on a line with unit masses.
Space chain(std::size_t n, double spacing = 1.0);
/// n random points in the unit square with masses in [0.5, 2).
Space random_planar(std::size_t n, std::mt19937_64& rng);

/// Cell-centred N x N grid on the unit square, mu = 1/N^2.
Space unit_square_grid(std::size_t N);
/// Id of the grid point closest to (u, v) in a unit_square_grid(N).
PointId grid_point(std::size_t N, double u, double v);

/// Weighted plane |x|^delta dx around a thick origin: a uniform core of
/// core x core cells of side h (core odd, origin at the centre cell) wrapped in
/// dyadically graded square rings, each ring twice as wide as the last.
struct GradedGridSpec {
  std::size_t core = 25;
  double h = 1.0;
  std::size_t rings = 8;
  double delta = -1.75;
};
struct GradedGrid {
  std::shared_ptr<const Space> space;
  PointId origin = 0;
  std::size_t core_points = 0;
  double core_halfwidth = 0.0;
  double outer_halfwidth = 0.0;
};
GradedGrid graded_weighted_grid(const GradedGridSpec& spec);
/// Id of the point at the given coordinates (exact match within 1e-9 h), or throws.
PointId find_point(const Space& space, double x, double y);

}  // namespace fracperim
