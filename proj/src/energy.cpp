#include "fracperim/energy.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace fracperim {

void require_fractional_order(double s) {
  if (!(s > 0.0 && s < 1.0)) throw Error("fractional order s must lie in (0,1), got " + std::to_string(s));
}

Kernel::Kernel(std::shared_ptr<const Space> space, double s, std::vector<double> weights)
    : space_(std::move(space)), s_(s), w_(std::move(weights)) {
  if (!space_) throw Error("kernel requires a space");
  if (w_.size() != space_->size() * space_->size()) throw Error("kernel weight matrix has wrong size");
  require_fractional_order(s_);
}

namespace {

void require_field(const Kernel& k, std::span<const double> u, const char* what) {
  if (u.size() != k.size())
    throw Error(std::string(what) + ": field length " + std::to_string(u.size()) +
                " does not match space size " + std::to_string(k.size()));
}

void require_finite_on(std::span<const double> u, const SetMask& omega, const char* what) {
  for (std::size_t x = 0; x < u.size(); ++x)
    if (omega[x] && !std::isfinite(u[x]))
      throw Error(std::string(what) + ": non-finite value at point " + std::to_string(x));
}

void require_mask(const Kernel& k, const SetMask& m) {
  if (m.size() != k.size()) throw Error("mask length does not match kernel");
}

}  // namespace

double seminorm(const Kernel& k, std::span<const double> u, const SetMask& omega) {
  require_field(k, u, "seminorm");
  require_mask(k, omega);
  require_finite_on(u, omega, "seminorm");
  const std::size_t n = k.size();
  const auto w = k.weights();
  double acc = 0.0;
  for (PointId x = 0; x < n; ++x) {
    if (!omega[x]) continue;
    for (PointId y = x + 1; y < n; ++y) {
      if (!omega[y]) continue;
      acc += 2.0 * (w[x * n + y] * std::abs(u[x] - u[y]));
    }
  }
  return acc;
}

double seminorm(const Kernel& k, std::span<const double> u) {
  return seminorm(k, u, SetMask::full(k.size()));
}

std::vector<double> seminorm_batch(const Kernel& k, std::span<const Field> fields,
                                   const SetMask& omega) {
  std::vector<double> out(fields.size());
  for (const auto& f : fields) {
    require_field(k, f, "seminorm_batch");
    require_finite_on(f, omega, "seminorm_batch");
  }
  const auto count = static_cast<std::ptrdiff_t>(fields.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < count; ++i)
    out[static_cast<std::size_t>(i)] = seminorm(k, fields[static_cast<std::size_t>(i)], omega);
  return out;
}

double norm_full(const Kernel& k, std::span<const double> u) {
  require_field(k, u, "norm_full");
  const Space& sp = k.space();
  double l1 = 0.0;
  for (PointId x = 0; x < k.size(); ++x) {
    if (!std::isfinite(u[x])) throw Error("norm_full: non-finite value at point " + std::to_string(x));
    l1 += sp.mu(x) * std::abs(u[x]);
  }
  return l1 + seminorm(k, u);
}

double functional_F(const Kernel& k, std::span<const double> u, std::span<const double> v,
                    const SetMask& omega) {
  require_field(k, u, "functional_F");
  require_field(k, v, "functional_F");
  require_mask(k, omega);
  const SetMask all = SetMask::full(k.size());
  require_finite_on(u, all, "functional_F");
  require_finite_on(v, all, "functional_F");
  const std::size_t n = k.size();
  const auto w = k.weights();
  double acc = 0.0;
  for (PointId x = 0; x < n; ++x)
    for (PointId y = x + 1; y < n; ++y) {
      // Both orientations inside omega, or the doubled cross term: weight 2 either way.
      if (!omega[x] && !omega[y]) continue;
      acc += 2.0 * (w[x * n + y] * (std::abs(u[x] - u[y]) - std::abs(v[x] - v[y])));
    }
  return acc;
}

double perimeter(const Kernel& k, const SetMask& E, const SetMask& omega) {
  require_mask(k, E);
  require_mask(k, omega);
  const std::size_t n = k.size();
  const auto w = k.weights();
  double acc = 0.0;
  for (PointId x = 0; x < n; ++x) {
    if (!omega[x]) continue;
    for (PointId y = x + 1; y < n; ++y) {
      if (!omega[y] || E[x] == E[y]) continue;
      acc += w[x * n + y];
    }
  }
  return acc;
}

double perimeter(const Kernel& k, const SetMask& E) {
  return perimeter(k, E, SetMask::full(k.size()));
}

double interaction(const Kernel& k, const SetMask& E, const SetMask& F) {
  require_mask(k, E);
  require_mask(k, F);
  if (E.intersects(F)) throw Error("interaction: masks must be disjoint");
  const std::size_t n = k.size();
  const auto w = k.weights();
  double acc = 0.0;
  for (PointId x = 0; x < n; ++x) {
    if (!E[x] && !F[x]) continue;
    for (PointId y = x + 1; y < n; ++y)
      if ((E[x] && F[y]) || (F[x] && E[y])) acc += w[x * n + y];
  }
  return acc;
}

CoareaDecomposition coarea_decompose(const Kernel& k, std::span<const double> u,
                                     const SetMask& omega) {
  require_field(k, u, "coarea_decompose");
  require_mask(k, omega);
  require_finite_on(u, omega, "coarea_decompose");
  CoareaDecomposition out;
  std::vector<double> levels;
  for (PointId x = 0; x < k.size(); ++x)
    if (omega[x]) levels.push_back(u[x]);
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

  Field layer(k.size(), 0.0);
  for (std::size_t i = 0; i + 1 < levels.size(); ++i) {
    const double t = levels[i];
    for (PointId x = 0; x < k.size(); ++x) layer[x] = (omega[x] && u[x] > t) ? 1.0 : 0.0;
    CoareaLayer l{t, levels[i + 1] - t, seminorm(k, layer, omega)};
    out.layered += l.weight * l.layer_seminorm;
    out.layers.push_back(l);
  }
  out.direct = seminorm(k, u, omega);
  return out;
}

double annular_potential(const Kernel& k, PointId y, const SetMask& M) {
  require_mask(k, M);
  if (y >= k.size()) throw Error("annular_potential: point out of range");
  const std::size_t n = k.size();
  const auto w = k.weights();
  double acc = 0.0;
  for (PointId x = 0; x < n; ++x)
    if (M[x] && x != y) acc += w[x * n + y];
  return acc / k.space().mu(y);
}

Field indicator(const SetMask& E) {
  Field f(E.size(), 0.0);
  for (std::size_t i = 0; i < E.size(); ++i)
    if (E[i]) f[i] = 1.0;
  return f;
}

}  // namespace fracperim
