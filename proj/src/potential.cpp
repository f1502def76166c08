#include "fracperim/potential.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "fracperim/solver.hpp"

namespace fracperim {

bool ScaleProfile::strictly_decreasing() const {
  for (std::size_t i = 1; i < values.size(); ++i)
    if (!(values[i] < values[i - 1])) return false;
  return true;
}

void require_decreasing_radii(std::span<const double> radii) {
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 0.0)) throw Error("radii must be positive");
    if (i > 0 && !(radii[i] < radii[i - 1])) throw Error("radii must be strictly decreasing");
  }
}

namespace {

struct Sample {
  double value;
  double mass;
};

std::vector<Sample> ball_samples(const Space& space, std::span<const double> u, PointId x, double r) {
  if (u.size() != space.size()) throw Error("field length does not match space");
  const auto order = space.order(x);
  const std::size_t m = space.count_within(x, r);
  std::vector<Sample> out;
  out.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    const PointId y = order[i];
    if (!std::isfinite(u[y])) throw Error("field must be finite on the ball");
    out.push_back({u[y], space.mu(y)});
  }
  return out;
}

}  // namespace

ApproxLimits approx_limits(const Space& space, std::span<const double> u, PointId x, double r,
                           double theta) {
  if (!(r > 0.0)) throw Error("approx_limits: radius must be positive");
  if (!(theta >= 0.0 && theta < 1.0)) throw Error("approx_limits: theta must lie in [0,1)");
  auto samples = ball_samples(space, u, x, r);
  std::sort(samples.begin(), samples.end(), [](const Sample& a, const Sample& b) { return a.value < b.value; });
  double total = 0.0;
  for (const auto& p : samples) total += p.mass;
  const double allowance = theta * total;

  ApproxLimits out{samples.front().value, samples.back().value};
  double acc = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    acc += samples[i].mass;
    if ((i + 1 == samples.size() || samples[i + 1].value != samples[i].value) && acc > allowance) {
      out.lower = samples[i].value;
      break;
    }
  }
  acc = 0.0;
  for (std::size_t i = samples.size(); i-- > 0;) {
    acc += samples[i].mass;
    if ((i == 0 || samples[i - 1].value != samples[i].value) && acc > allowance) {
      out.upper = samples[i].value;
      break;
    }
  }
  return out;
}

const char* to_string(DensityClass c) {
  switch (c) {
    case DensityClass::Interior: return "interior-like";
    case DensityClass::Exterior: return "exterior-like";
    default: return "boundary-like";
  }
}

DensityClass classify_density(double density, double theta0) {
  if (density >= 1.0 - theta0) return DensityClass::Interior;
  if (density <= theta0) return DensityClass::Exterior;
  return DensityClass::Boundary;
}

namespace {

double ball_density(const Space& space, const SetMask& E, PointId x, double r) {
  const auto order = space.order(x);
  const std::size_t m = space.count_within(x, r);
  double in = 0.0;
  for (std::size_t i = 0; i < m; ++i)
    if (E[order[i]]) in += space.mu(order[i]);
  return in / space.prefix_mass(x, m);
}

}  // namespace

DensityScan density_classify(const Space& space, const SetMask& E, PointId x,
                             std::span<const double> radii, double theta0) {
  if (E.size() != space.size()) throw Error("density_classify: mask length mismatch");
  if (radii.empty()) throw Error("density_classify: no radii");
  require_decreasing_radii(radii);
  DensityScan out;
  out.profile.center = x;
  out.profile.kind = "density";
  for (double r : radii) {
    out.profile.radii.push_back(r);
    out.profile.values.push_back(ball_density(space, E, x, r));
  }
  out.cls = classify_density(out.profile.values.back(), theta0);
  return out;
}

DensityPartition density_partition(const Space& space, const SetMask& E, double r, double theta0) {
  if (!(r > 0.0)) throw Error("density_partition: radius must be positive");
  const std::size_t n = space.size();
  DensityPartition out{SetMask(n), SetMask(n), SetMask(n)};
  for (PointId x = 0; x < n; ++x) {
    switch (classify_density(ball_density(space, E, x, r), theta0)) {
      case DensityClass::Interior: out.interior.set(x); break;
      case DensityClass::Exterior: out.exterior.set(x); break;
      default: out.boundary.set(x);
    }
  }
  return out;
}

ThinnessScan thinness_scan(const Kernel& k, const SetMask& A, PointId x, std::span<const double> radii) {
  const Space& sp = k.space();
  if (A.size() != sp.size()) throw Error("thinness_scan: mask length mismatch");
  require_decreasing_radii(radii);
  ThinnessScan out;
  out.profile.center = x;
  out.profile.kind = "capacity ratio";
  for (double r : radii) {
    const SetMask outer = ball(sp, x, 2.0 * r);
    if (outer.count() == sp.size()) {
      out.skipped.push_back(r);
      out.profile.flags.push_back("skipped r=" + std::to_string(r) + ": B(x,2r) is the whole space");
      continue;
    }
    const SetMask inner = ball(sp, x, r);
    const double num = condenser_capacity(k, A & inner, outer).energy;
    const double den = condenser_capacity(k, inner, outer).energy;
    out.profile.radii.push_back(r);
    out.numerators.push_back(num);
    out.denominators.push_back(den);
    out.profile.values.push_back(num / den);
  }
  return out;
}

std::vector<double> geometric_radii(double R, double M, std::size_t count) {
  if (!(R > 0.0) || !(M > 1.0)) throw Error("geometric_radii: need R > 0 and M > 1");
  std::vector<double> out;
  double r = R;
  for (std::size_t i = 0; i < count; ++i, r /= M) out.push_back(r);
  return out;
}

HausdorffContent hausdorff_content(const Space& space, double s, const SetMask& A, double R,
                                   ContentMode mode) {
  require_fractional_order(s);
  if (A.size() != space.size()) throw Error("hausdorff_content: mask length mismatch");
  if (!(R > 0.0)) throw Error("hausdorff_content: R must be positive");
  HausdorffContent out;
  const auto targets = A.ids();
  if (targets.empty()) return out;
  if (mode == ContentMode::Exact && targets.size() > kExactContentEnvelope)
    throw Error("hausdorff_content: exact mode supports at most " + std::to_string(kExactContentEnvelope) +
                " points of A");

  // An open ball of radius r in (d_k, d_{k+1}] holds exactly the closed ball of
  // radius d_k, and its cost falls with r, so r = min(d_{k+1}, R) is the only
  // radius worth trying for that membership.
  struct Candidate {
    ContentBall ball;
    std::vector<char> covers;  // over targets
    std::uint64_t bits = 0;
  };
  std::vector<Candidate> cands;
  for (PointId c = 0; c < space.size(); ++c) {
    std::vector<double> levels{0.0};
    for (double d : space.distinct_distances(c)) levels.push_back(d);
    for (std::size_t j = 0; j < levels.size() && levels[j] < R; ++j) {
      const double r = j + 1 < levels.size() ? std::min(levels[j + 1], R) : R;
      const std::size_t m = space.count_within_closed(c, levels[j]);
      Candidate cand{{c, r, space.prefix_mass(c, m) / std::pow(r, s)}, std::vector<char>(targets.size(), 0), 0};
      bool any = false;
      for (std::size_t t = 0; t < targets.size(); ++t)
        if (space.dist(c, targets[t]) <= levels[j]) {
          cand.covers[t] = 1;
          if (t < 64) cand.bits |= std::uint64_t{1} << t;
          any = true;
        }
      if (any) cands.push_back(std::move(cand));
    }
  }
  out.candidates = cands.size();

  if (mode == ContentMode::Greedy) {
    std::vector<char> covered(targets.size(), 0);
    std::size_t left = targets.size();
    while (left > 0) {
      std::size_t best = cands.size();
      double best_rate = -1.0;
      for (std::size_t i = 0; i < cands.size(); ++i) {
        double gain = 0.0;
        for (std::size_t t = 0; t < targets.size(); ++t)
          if (cands[i].covers[t] && !covered[t]) gain += space.mu(targets[t]);
        const double rate = gain / cands[i].ball.cost;
        if (gain > 0.0 && rate > best_rate) {
          best_rate = rate;
          best = i;
        }
      }
      for (std::size_t t = 0; t < targets.size(); ++t)
        if (cands[best].covers[t] && !covered[t]) {
          covered[t] = 1;
          --left;
        }
      out.cover.push_back(cands[best].ball);
      out.value += cands[best].ball.cost;
    }
    return out;
  }

  // Exact weighted set cover: cheapest candidate per coverage pattern, then DP over subsets.
  const std::size_t m = targets.size();
  const std::uint64_t full = (std::uint64_t{1} << m) - 1;
  std::vector<std::size_t> cheapest_for(full + 1, cands.size());
  for (std::size_t i = 0; i < cands.size(); ++i) {
    auto& slot = cheapest_for[cands[i].bits];
    if (slot == cands.size() || cands[i].ball.cost < cands[slot].ball.cost) slot = i;
  }
  std::vector<std::size_t> useful;
  for (std::uint64_t b = 1; b <= full; ++b)
    if (cheapest_for[b] != cands.size()) useful.push_back(cheapest_for[b]);
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> best(full + 1, inf);
  std::vector<std::size_t> via(full + 1, cands.size());
  std::vector<std::uint64_t> from(full + 1, 0);
  best[0] = 0.0;
  for (std::uint64_t b = 0; b < full; ++b) {
    if (best[b] == inf) continue;
    for (std::size_t i : useful) {
      const std::uint64_t nb = b | cands[i].bits;
      if (nb == b) continue;
      const double v = best[b] + cands[i].ball.cost;
      if (v < best[nb]) {
        best[nb] = v;
        via[nb] = i;
        from[nb] = b;
      }
    }
  }
  out.value = best[full];
  for (std::uint64_t b = full; b != 0; b = from[b]) out.cover.push_back(cands[via[b]].ball);
  std::reverse(out.cover.begin(), out.cover.end());
  return out;
}

ScaleProfile lebesgue_profile(const Space& space, std::span<const double> u, PointId x,
                              std::span<const double> radii) {
  require_decreasing_radii(radii);
  if (u.size() != space.size()) throw Error("lebesgue_profile: field length mismatch");
  ScaleProfile out;
  out.center = x;
  out.kind = "lebesgue";
  for (double r : radii) {
    double acc = 0.0, mass = 0.0;
    for (const auto& p : ball_samples(space, u, x, r)) {
      acc += std::abs(p.value - u[x]) * p.mass;
      mass += p.mass;
    }
    out.radii.push_back(r);
    out.values.push_back(acc / mass);
  }
  return out;
}

}  // namespace fracperim
