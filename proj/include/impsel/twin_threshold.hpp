//
// Copyright 2026 The impsel Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

// The Twin Threshold Mechanism.
//
// Starting from d = Delta(G), while d >= t: if no undeleted vertex has current
// (residual) indegree d, lower d by one; otherwise take the largest such
// vertex, delete all of its outgoing edges and mark it deleted. Afterwards
// select the largest vertex of maximum residual indegree, provided that
// indegree is at least T.
//
// Threshold planning follows the sufficient impartiality condition
//   (T^2 + 3T + t - t^2) / 2 > k (n + 2)
// on G_n(k), and the worst-case additive bound T + floor(kn/t) - 2.

#ifndef IMPSEL_TWIN_THRESHOLD_HPP_
#define IMPSEL_TWIN_THRESHOLD_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "impsel/graph.hpp"
#include "impsel/outcome.hpp"

namespace impsel {

/// Upper threshold T (selection) and lower threshold t (deletion).
struct ThresholdPair {
  int upper = 1;
  int lower = 1;

  bool valid_for(int n) const { return 1 <= lower && lower <= upper && upper <= n - 1; }

  void validate(int n) const {
    if (!valid_for(n))
      throw std::invalid_argument("thresholds need 1 <= t <= T <= n-1 (got T=" + std::to_string(upper) +
                                  ", t=" + std::to_string(lower) + ", n=" + std::to_string(n) + ")");
  }

  friend bool operator==(const ThresholdPair&, const ThresholdPair&) = default;
};

struct DeletionRecord {
  int iteration = 0;
  Vertex vertex = 0;
  // Residual indegree at the moment the vertex's outgoing edges were deleted.
  int degree = 0;

  friend bool operator==(const DeletionRecord&, const DeletionRecord&) = default;
};

/// Everything the deletion loop did. For an undeleted vertex, `istar` is the
/// iteration count I and `dstar` is its final residual indegree.
struct DeletionTrace {
  std::vector<DeletionRecord> deletions;
  VertexMap<int> final_degrees;
  VertexMap<bool> deleted;
  int iteration_count = 0;
  VertexMap<int> istar;
  VertexMap<int> dstar;
  // Number of times the scan level d was lowered.
  int level_decrements = 0;
};

struct TwinThresholdRun {
  Outcome outcome;
  DeletionTrace trace;
};

namespace detail {

// Shared by the traced and untraced entry points. `on_delete(i, v, degree)` is
// invoked for each deletion.
template <typename OnDelete>
Outcome twin_threshold_core(const DirectedGraph& g, ThresholdPair p, VertexMap<int>& residual,
                            VertexMap<bool>& deleted, int& decrements, OnDelete&& on_delete) {
  const int n = g.size();
  const VertexMap<int> indegree = g.indegrees();
  residual = indegree;
  deleted = VertexMap<bool>(n, false);
  decrements = 0;
  int d = *std::max_element(indegree.begin(), indegree.end());
  int iteration = 0;
  while (d >= p.lower) {
    Vertex chosen = 0;
    for (Vertex u = n; u >= 1; --u) {
      if (!deleted[u] && residual[u] == d) {
        chosen = u;
        break;
      }
    }
    if (chosen == 0) {
      --d;
      ++decrements;
      continue;
    }
    on_delete(iteration, chosen, residual[chosen]);
    for (Vertex u : g.out_neighbors(chosen)) --residual[u];
    deleted[chosen] = true;
    ++iteration;
  }
  int best = 0;
  Vertex best_vertex = 1;
  for (Vertex v = 1; v <= n; ++v) {
    if (residual[v] >= best) {
      best = residual[v];
      best_vertex = v;
    }
  }
  if (best >= p.upper) return select_vertex(indegree, best_vertex);
  return no_selection();
}

}  // namespace detail

inline TwinThresholdRun run_twin_threshold(const DirectedGraph& g, ThresholdPair p) {
  p.validate(g.size());
  TwinThresholdRun run;
  auto& tr = run.trace;
  run.outcome = detail::twin_threshold_core(g, p, tr.final_degrees, tr.deleted, tr.level_decrements,
                                            [&](int i, Vertex v, int degree) { tr.deletions.push_back({i, v, degree}); });
  const int n = g.size();
  tr.iteration_count = static_cast<int>(tr.deletions.size());
  tr.istar = VertexMap<int>(n, tr.iteration_count);
  tr.dstar = tr.final_degrees;
  for (const auto& rec : tr.deletions) {
    tr.istar[rec.vertex] = rec.iteration;
    tr.dstar[rec.vertex] = rec.degree;
  }
  return run;
}

/// Same selection as run_twin_threshold without building the trace.
inline Outcome select_twin_threshold(const DirectedGraph& g, ThresholdPair p) {
  p.validate(g.size());
  VertexMap<int> residual;
  VertexMap<bool> deleted;
  int decrements = 0;
  return detail::twin_threshold_core(g, p, residual, deleted, decrements, [](int, Vertex, int) {});
}

// ---------------------------------------------------------------------------
// Threshold validation and planning.

struct PlanReport {
  ThresholdPair thresholds;
  int n = 0;
  int k = 0;
  // (T^2 + 3T + t - t^2) / 2; always an integer since T(T+3) and t(t-1) are even.
  std::int64_t certificate_lhs = 0;
  // k (n + 2)
  std::int64_t certificate_rhs = 0;
  bool impartial_certified = false;
  // T + floor(kn / t) - 2, or n - 1 for a degenerate plan.
  std::int64_t alpha_bound = 0;
  // The planned T exceeded n - 1 (or t could not be placed); run the
  // never-select mechanism instead.
  bool degenerate = false;
};

inline std::int64_t certificate_lhs(ThresholdPair p) {
  const std::int64_t T = p.upper, t = p.lower;
  return (T * T + 3 * T + t - t * t) / 2;
}

inline PlanReport validate_thresholds(int n, int k, ThresholdPair p) {
  p.validate(n);
  if (k < 1 || k > n - 1) throw std::invalid_argument("outdegree bound needs 1 <= k <= n-1");
  PlanReport r;
  r.thresholds = p;
  r.n = n;
  r.k = k;
  const std::int64_t T = p.upper, t = p.lower;
  // Compare the doubled quantities so no division is involved.
  const std::int64_t lhs2 = T * T + 3 * T + t - t * t;
  const std::int64_t rhs2 = 2 * static_cast<std::int64_t>(k) * (n + 2);
  r.certificate_lhs = lhs2 / 2;
  r.certificate_rhs = rhs2 / 2;
  r.impartial_certified = lhs2 > rhs2;
  r.alpha_bound = T + (static_cast<std::int64_t>(k) * n) / t - 2;
  return r;
}

/// floor(sqrt(x)) by integer Newton iteration.
inline std::uint64_t isqrt(std::uint64_t x) {
  if (x < 2) return x;
  std::uint64_t r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(x)));
  // Fix up the floating-point estimate so that r^2 <= x < (r+1)^2 exactly.
  while (r > 0 && (r > x / r)) --r;
  while ((r + 1) <= x / (r + 1)) ++r;
  return r;
}

inline std::uint64_t ceil_sqrt(std::uint64_t x) {
  std::uint64_t r = isqrt(x);
  return r * r == x ? r : r + 1;
}

namespace detail {

inline PlanReport finish_plan(int n, int k, std::int64_t upper, std::int64_t lower) {
  bool degenerate = upper > n - 1 || lower > n - 1;
  upper = std::clamp<std::int64_t>(upper, 1, n - 1);
  lower = std::clamp<std::int64_t>(lower, 1, upper);
  PlanReport r = validate_thresholds(n, k, {static_cast<int>(upper), static_cast<int>(lower)});
  r.degenerate = degenerate;
  if (degenerate) r.alpha_bound = n - 1;
  return r;
}

}  // namespace detail

/// Plan for outdegree one: t = ceil(sqrt n), T = floor(sqrt(t^2 - t + 2n + 25/4) - 1/2).
/// With Q = t^2 - t + 2n the root is sqrt(4Q + 25) / 2, so
/// T = floor((sqrt(4Q + 25) - 1) / 2) = (isqrt(4Q + 25) - 1) / 2 in integers.
inline PlanReport plan_thresholds_k1(int n) {
  if (n < 2) throw std::invalid_argument("planning needs n >= 2");
  const std::uint64_t t = ceil_sqrt(static_cast<std::uint64_t>(n));
  const std::uint64_t q = t * t - t + 2 * static_cast<std::uint64_t>(n);
  const std::uint64_t s = isqrt(4 * q + 25);
  const std::uint64_t T = (s - 1) / 2;
  return detail::finish_plan(n, 1, static_cast<std::int64_t>(T), static_cast<std::int64_t>(t));
}

/// Plan for k <= c n^kappa with T = (5/2) sqrt(c) n^((1+kappa)/2) - 1 rounded
/// up and t = (1/2) sqrt(c) n^((1+kappa)/2) rounded down. The certificate is
/// recomputed on the rounded integers.
inline PlanReport plan_thresholds_general(int n, int k, double kappa, double c) {
  if (n < 2) throw std::invalid_argument("planning needs n >= 2");
  if (!(kappa >= 0.0 && kappa <= 1.0)) throw std::invalid_argument("kappa must lie in [0, 1]");
  if (!(c > 0.0)) throw std::invalid_argument("c must be positive");
  if (k < 1 || k > n - 1) throw std::invalid_argument("outdegree bound needs 1 <= k <= n-1");
  constexpr double kSnap = 1e-9;
  const double bound = c * std::pow(static_cast<double>(n), kappa);
  if (static_cast<double>(k) > bound * (1 + kSnap))
    throw std::invalid_argument("k exceeds c * n^kappa");
  const double scale = std::sqrt(c) * std::pow(static_cast<double>(n), (1.0 + kappa) / 2.0);
  // Values within a relative 1e-9 of an integer are treated as that integer
  // before rounding, so e.g. 2.5 * 10 - 1 = 24 is not pushed to 25.
  auto snap = [](double x) {
    double r = std::round(x);
    return std::abs(x - r) <= kSnap * std::max(1.0, std::abs(x)) ? r : x;
  };
  const double upper_real = snap(2.5 * scale - 1.0);
  const double lower_real = snap(0.5 * scale);
  const double cap = static_cast<double>(n);
  const auto upper = static_cast<std::int64_t>(std::ceil(std::min(upper_real, cap)));
  const auto lower = static_cast<std::int64_t>(std::floor(std::min(lower_real, cap)));
  return detail::finish_plan(n, k, upper, lower);
}

}  // namespace impsel

#endif  // IMPSEL_TWIN_THRESHOLD_HPP_
