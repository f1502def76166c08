#include "fracperim/oracle.hpp"

#include <cmath>
#include <string>

namespace fracperim {

EnumeratedMinimum enumerate_set_minimum(const Kernel& k, const SetMask& S, const SetMask& allowed,
                                        bool with_mass, double rel_tie) {
  if (!S.subset_of(allowed)) throw Error("enumerate_set_minimum: forced set is not allowed");
  const auto free = (allowed - S).ids();
  if (free.size() > kBruteForceEnvelope)
    throw Error("enumerate_set_minimum: " + std::to_string(free.size()) + " free points exceed the envelope");
  const std::uint64_t total = std::uint64_t{1} << free.size();

  std::vector<double> values(total);
  Field u = indicator(S);
  for (std::uint64_t bits = 0; bits < total; ++bits) {
    for (std::size_t i = 0; i < free.size(); ++i) u[free[i]] = (bits >> i) & 1u ? 1.0 : 0.0;
    values[bits] = with_mass ? norm_full(k, u) : seminorm(k, u);
  }
  double best = values[0];
  for (double v : values) best = std::min(best, v);

  EnumeratedMinimum out;
  out.evaluated = total;
  out.minimal = allowed;
  out.value = best;
  const double slack = rel_tie * std::max(std::abs(best), 1e-300);
  for (std::uint64_t bits = 0; bits < total; ++bits) {
    if (values[bits] > best + slack) continue;
    ++out.minimisers;
    SetMask E = S;
    for (std::size_t i = 0; i < free.size(); ++i)
      if ((bits >> i) & 1u) E.set(free[i]);
    out.minimal = out.minimal & E;
  }
  return out;
}

}  // namespace fracperim
