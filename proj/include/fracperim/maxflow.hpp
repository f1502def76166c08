#pragma once

#include <span>
#include <vector>

#include "fracperim/mspace.hpp"

namespace fracperim {

/// Dense symmetric pairwise capacities scale * weights[x*n + y].
struct PairCapacities {
  std::size_t n = 0;
  std::span<const double> weights;
  double scale = 1.0;

  double operator()(PointId x, PointId y) const { return scale * weights[x * n + y]; }
};

struct MinCut {
  SetMask source_side;          ///< inclusion-minimal optimal E (residual reachability)
  SetMask maximal_source_side;  ///< inclusion-maximal optimal E
  double cut_value = 0.0;       ///< sum of capacities leaving E, evaluated on the mask
  double flow_value = 0.0;      ///< max-flow value
  std::size_t phases = 0;       ///< BFS phases of the blocking-flow loop
};

/// Minimise sum_{x in E, y notin E} cap(x,y) + sum_{x in E} unary_sink(x)
/// over E with S c E and E n T = {}. Forced points are contracted into the
/// terminals. `unary_sink` may be empty.
MinCut min_cut(const PairCapacities& cap, std::span<const double> unary_sink, const SetMask& S,
               const SetMask& T);

}  // namespace fracperim
