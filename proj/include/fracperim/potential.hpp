#pragma once

#include <string>
#include <vector>

#include "fracperim/energy.hpp"

namespace fracperim {

/// Per-radius diagnostic values around one centre; radii strictly decreasing.
struct ScaleProfile {
  PointId center = 0;
  std::vector<double> radii;
  std::vector<double> values;
  std::string kind;
  std::vector<std::string> flags;

  /// values[i+1] < values[i] for every consecutive pair (i.e. along shrinking radii).
  bool strictly_decreasing() const;
};

/// Throws unless radii are positive and strictly decreasing.
void require_decreasing_radii(std::span<const double> radii);

struct ApproxLimits {
  double lower;  ///< sup{t : mu({u<t} n B) <= theta mu(B)}
  double upper;  ///< inf{t : mu({u>t} n B) <= theta mu(B)}
};

/// Fixed-scale surrogate of the lower/upper approximate limits at x.
ApproxLimits approx_limits(const Space& space, std::span<const double> u, PointId x, double r,
                           double theta = 0.0);

enum class DensityClass { Interior, Exterior, Boundary };
const char* to_string(DensityClass c);

inline constexpr double kDensityTolerance = 0.01;

struct DensityScan {
  ScaleProfile profile;
  DensityClass cls = DensityClass::Boundary;
};

/// Density mu(B n E)/mu(B) along the radii; class from the smallest radius.
DensityScan density_classify(const Space& space, const SetMask& E, PointId x,
                             std::span<const double> radii, double theta0 = kDensityTolerance);

DensityClass classify_density(double density, double theta0 = kDensityTolerance);

struct DensityPartition {
  SetMask interior;
  SetMask exterior;
  SetMask boundary;
};
/// Interior-like / exterior-like / boundary-like points of E at one scale; a partition of X.
DensityPartition density_partition(const Space& space, const SetMask& E, double r,
                                   double theta0 = kDensityTolerance);

struct ThinnessScan {
  ScaleProfile profile;  ///< ratio cap(A n B(x,r), B(x,2r)) / cap(B(x,r), B(x,2r))
  std::vector<double> numerators;
  std::vector<double> denominators;
  std::vector<double> skipped;  ///< radii with B(x,2r) = X
};

/// Capacity-ratio profile of A at x. Radii where B(x,2r) covers the space are skipped.
ThinnessScan thinness_scan(const Kernel& k, const SetMask& A, PointId x, std::span<const double> radii);

/// R, R/M, R/M^2, ... (count terms).
std::vector<double> geometric_radii(double R, double M, std::size_t count);

struct ContentBall {
  PointId center;
  double radius;
  double cost;  ///< mu(B(center, radius)) / radius^s
};
struct HausdorffContent {
  double value = 0.0;
  std::vector<ContentBall> cover;
  std::size_t candidates = 0;
};
enum class ContentMode { Greedy, Exact };
inline constexpr std::size_t kExactContentEnvelope = 20;

/// Upper bound on the R-restricted codimension-s Hausdorff content of A using open balls
/// centred at data points with radii from the distance multiset (capped at R).
HausdorffContent hausdorff_content(const Space& space, double s, const SetMask& A, double R,
                                   ContentMode mode);

/// Mean of |u - u(x)| over B(x, r) along the radii.
ScaleProfile lebesgue_profile(const Space& space, std::span<const double> u, PointId x,
                              std::span<const double> radii);

}  // namespace fracperim
