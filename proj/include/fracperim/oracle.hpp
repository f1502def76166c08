#pragma once

#include "fracperim/energy.hpp"

namespace fracperim {

inline constexpr std::size_t kBruteForceEnvelope = 20;

struct EnumeratedMinimum {
  double value = 0.0;
  SetMask minimal;                ///< intersection of all (near-)minimisers
  std::size_t minimisers = 0;
  std::size_t evaluated = 0;
};

/// Exhaustive search over S c E c allowed of seminorm(1_E) (plus mu(E) when
/// `with_mass`). Candidates within rel_tie of the best count as ties.
EnumeratedMinimum enumerate_set_minimum(const Kernel& k, const SetMask& S, const SetMask& allowed,
                                        bool with_mass, double rel_tie = 1e-12);

}  // namespace fracperim
