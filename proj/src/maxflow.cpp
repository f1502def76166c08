#include "fracperim/maxflow.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <queue>

namespace fracperim {

namespace {

// Residuals below this fraction of an arc's capacity count as saturated.
constexpr double kSaturationTol = 1e-12;

class Dinic {
 public:
  explicit Dinic(std::size_t nodes) : head_(nodes + 1, 0), level_(nodes), cursor_(nodes) {}

  // Two-phase construction: count degrees, then place arcs.
  void count(std::size_t u, std::size_t v) {
    ++head_[u + 1];
    ++head_[v + 1];
  }
  void finish_counting() {
    for (std::size_t i = 1; i < head_.size(); ++i) head_[i] += head_[i - 1];
    fill_ = head_;
    arcs_.resize(head_.back());
  }
  void add(std::size_t u, std::size_t v, double cap_uv, double cap_vu) {
    const double tol = kSaturationTol * std::max(cap_uv, cap_vu);
    std::size_t a = fill_[u]++;
    std::size_t b = fill_[v]++;
    arcs_[a] = {static_cast<std::uint32_t>(v), static_cast<std::uint32_t>(b), cap_uv, tol};
    arcs_[b] = {static_cast<std::uint32_t>(u), static_cast<std::uint32_t>(a), cap_vu, tol};
  }

  double run(std::size_t source, std::size_t sink, std::size_t& phases) {
    double flow = 0.0;
    phases = 0;
    while (bfs(source, sink)) {
      ++phases;
      for (std::size_t i = 0; i < cursor_.size(); ++i) cursor_[i] = head_[i];
      while (true) {
        double pushed = dfs(source, sink, std::numeric_limits<double>::infinity());
        if (pushed <= 0.0) break;
        flow += pushed;
      }
    }
    return flow;
  }

  std::vector<char> reachable_from(std::size_t source) const {
    std::vector<char> seen(level_.size(), 0);
    std::vector<std::size_t> stack{source};
    seen[source] = 1;
    while (!stack.empty()) {
      std::size_t u = stack.back();
      stack.pop_back();
      for (std::size_t i = head_[u]; i < head_[u + 1]; ++i) {
        const Arc& a = arcs_[i];
        if (!seen[a.to] && a.res > a.tol) {
          seen[a.to] = 1;
          stack.push_back(a.to);
        }
      }
    }
    return seen;
  }

  std::vector<char> reaching(std::size_t sink) const {
    std::vector<char> seen(level_.size(), 0);
    std::vector<std::size_t> stack{sink};
    seen[sink] = 1;
    while (!stack.empty()) {
      std::size_t v = stack.back();
      stack.pop_back();
      for (std::size_t i = head_[v]; i < head_[v + 1]; ++i) {
        const Arc& back = arcs_[i];
        const Arc& forward = arcs_[back.rev];  // back.to -> v
        if (!seen[back.to] && forward.res > forward.tol) {
          seen[back.to] = 1;
          stack.push_back(back.to);
        }
      }
    }
    return seen;
  }

 private:
  struct Arc {
    std::uint32_t to;
    std::uint32_t rev;
    double res;
    double tol;
  };

  bool bfs(std::size_t source, std::size_t sink) {
    std::fill(level_.begin(), level_.end(), -1);
    std::queue<std::size_t> q;
    level_[source] = 0;
    q.push(source);
    while (!q.empty()) {
      std::size_t u = q.front();
      q.pop();
      for (std::size_t i = head_[u]; i < head_[u + 1]; ++i) {
        const Arc& a = arcs_[i];
        if (level_[a.to] < 0 && a.res > a.tol) {
          level_[a.to] = level_[u] + 1;
          q.push(a.to);
        }
      }
    }
    return level_[sink] >= 0;
  }

  double dfs(std::size_t u, std::size_t sink, double limit) {
    if (u == sink) return limit;
    for (std::size_t& i = cursor_[u]; i < head_[u + 1]; ++i) {
      Arc& a = arcs_[i];
      if (a.res <= a.tol || level_[a.to] != level_[u] + 1) continue;
      double d = dfs(a.to, sink, std::min(limit, a.res));
      if (d > 0.0) {
        a.res -= d;
        arcs_[a.rev].res += d;
        return d;
      }
    }
    return 0.0;
  }

  std::vector<std::size_t> head_;
  std::vector<std::size_t> fill_;
  std::vector<Arc> arcs_;
  std::vector<int> level_;
  std::vector<std::size_t> cursor_;
};

}  // namespace

MinCut min_cut(const PairCapacities& cap, std::span<const double> unary_sink, const SetMask& S,
               const SetMask& T) {
  const std::size_t n = cap.n;
  if (S.size() != n || T.size() != n) throw Error("min_cut: mask length mismatch");
  if (!unary_sink.empty() && unary_sink.size() != n) throw Error("min_cut: unary length mismatch");
  if (S.intersects(T)) throw Error("min_cut: source and sink sets overlap");
  auto unary = [&](PointId x) { return unary_sink.empty() ? 0.0 : unary_sink[x]; };

  constexpr std::size_t kSource = 0;
  constexpr std::size_t kSink = 1;
  std::vector<std::size_t> node(n, 0);
  std::vector<PointId> free_points;
  for (PointId x = 0; x < n; ++x) {
    if (S[x]) {
      node[x] = kSource;
    } else if (T[x]) {
      node[x] = kSink;
    } else {
      node[x] = 2 + free_points.size();
      free_points.push_back(x);
    }
  }

  const std::size_t f = free_points.size();
  std::vector<double> to_source(f, 0.0), to_sink(f, 0.0);
  double constant = 0.0;
  for (PointId x = 0; x < n; ++x)
    if (S[x]) constant += unary(x);
  for (PointId x = 0; x < n; ++x)
    for (PointId y = x + 1; y < n; ++y) {
      const double c = cap(x, y);
      if (c == 0.0) continue;
      const std::size_t a = node[x], b = node[y];
      if (a == b && a < 2) continue;  // both contracted into the same terminal
      if ((a == kSource && b == kSink) || (a == kSink && b == kSource)) {
        constant += c;
      } else if (a == kSource) {
        to_source[b - 2] += c;
      } else if (b == kSource) {
        to_source[a - 2] += c;
      } else if (a == kSink) {
        to_sink[b - 2] += c;
      } else if (b == kSink) {
        to_sink[a - 2] += c;
      }
    }

  Dinic g(f + 2);
  for (std::size_t i = 0; i < f; ++i) {
    if (to_source[i] > 0.0) g.count(kSource, 2 + i);
    if (to_sink[i] > 0.0 || unary(free_points[i]) > 0.0) g.count(2 + i, kSink);
    for (std::size_t j = i + 1; j < f; ++j)
      if (cap(free_points[i], free_points[j]) > 0.0) g.count(2 + i, 2 + j);
  }
  g.finish_counting();
  for (std::size_t i = 0; i < f; ++i) {
    if (to_source[i] > 0.0) g.add(kSource, 2 + i, to_source[i], to_source[i]);
    const double u = unary(free_points[i]);
    if (to_sink[i] > 0.0 || u > 0.0) g.add(2 + i, kSink, to_sink[i] + u, to_sink[i]);
    for (std::size_t j = i + 1; j < f; ++j) {
      const double c = cap(free_points[i], free_points[j]);
      if (c > 0.0) g.add(2 + i, 2 + j, c, c);
    }
  }

  MinCut out;
  out.flow_value = constant + g.run(kSource, kSink, out.phases);

  const auto from_source = g.reachable_from(kSource);
  const auto to_sink_set = g.reaching(kSink);
  out.source_side = S;
  out.maximal_source_side = S;
  for (std::size_t i = 0; i < f; ++i) {
    if (from_source[2 + i]) out.source_side.set(free_points[i]);
    if (!to_sink_set[2 + i]) out.maximal_source_side.set(free_points[i]);
  }

  double value = 0.0;
  const SetMask& E = out.source_side;
  for (PointId x = 0; x < n; ++x)
    for (PointId y = x + 1; y < n; ++y)
      if (E[x] != E[y]) value += cap(x, y);
  for (PointId x = 0; x < n; ++x)
    if (E[x]) value += unary(x);
  out.cut_value = value;
  return out;
}

}  // namespace fracperim
