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

// Ordered-partition graphs. A composition s = (s_1, ..., s_r) of n puts the
// vertices 1..n into consecutive blocks S_1, ..., S_r, and every vertex points
// to every other vertex of its own block and of all later blocks. These graphs
// carry the infeasibility argument for impartial, weakly unanimous selection:
// a signed, multiplicity-weighted sum of per-graph constraints whose variable
// coefficients cancel while the constants add up to a negative number.

#ifndef IMPSEL_PARTITIONS_HPP_
#define IMPSEL_PARTITIONS_HPP_

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "impsel/enumerate.hpp"
#include "impsel/exact.hpp"
#include "impsel/graph.hpp"

namespace impsel {

inline constexpr int kDefaultCompositionCap = 24;

class OrderedPartition {
 public:
  OrderedPartition() : parts_{1} {}

  explicit OrderedPartition(std::vector<int> parts) : parts_(std::move(parts)) {
    if (parts_.empty()) throw std::invalid_argument("a composition needs at least one part");
    for (int s : parts_)
      if (s < 1) throw std::invalid_argument("composition parts must be positive");
  }

  OrderedPartition(std::initializer_list<int> parts) : OrderedPartition(std::vector<int>(parts)) {}

  const std::vector<int>& parts() const { return parts_; }
  int n() const { return std::accumulate(parts_.begin(), parts_.end(), 0); }
  int r() const { return static_cast<int>(parts_.size()); }

  /// s_i, 1-based.
  int part(int i) const { return parts_.at(static_cast<std::size_t>(i - 1)); }

  /// First vertex of block i (1-based blocks and vertices).
  Vertex block_start(int i) const {
    Vertex v = 1;
    for (int b = 1; b < i; ++b) v += part(b);
    return v;
  }

  /// Block index of vertex v.
  int block_of(Vertex v) const {
    int acc = 0;
    for (int i = 1; i <= r(); ++i) {
      acc += part(i);
      if (v <= acc) return i;
    }
    throw std::out_of_range("vertex outside the composition");
  }

  /// Lowest block whose vertices can have positive indegree: 2 when the first
  /// block is a single vertex (it has no in-edges), otherwise 1.
  int first_index() const { return parts_.front() == 1 ? 2 : 1; }

  std::string str() const {
    std::string out = "(";
    for (std::size_t i = 0; i < parts_.size(); ++i) out += (i ? "," : "") + std::to_string(parts_[i]);
    return out + ")";
  }

  friend bool operator==(const OrderedPartition&, const OrderedPartition&) = default;
  friend auto operator<=>(const OrderedPartition& a, const OrderedPartition& b) { return a.parts_ <=> b.parts_; }

 private:
  std::vector<int> parts_;
};

namespace detail {

inline void check_composition_n(int n, int cap) {
  if (n < 1) throw std::invalid_argument("compositions need n >= 1");
  if (n > cap)
    throw CapExceeded("n=" + std::to_string(n) + " exceeds the composition cap " + std::to_string(cap));
}

inline void compositions_dfs(int remaining, std::vector<int>& prefix, std::vector<OrderedPartition>& out) {
  if (remaining == 0) {
    out.emplace_back(prefix);
    return;
  }
  for (int s = 1; s <= remaining; ++s) {
    prefix.push_back(s);
    compositions_dfs(remaining - s, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace detail

/// All 2^(n-1) compositions of n in lexicographic order of their part tuples,
/// so (1,...,1) comes first and (n) last.
inline std::vector<OrderedPartition> enumerate_compositions(int n, int cap = kDefaultCompositionCap) {
  detail::check_composition_n(n, cap);
  std::vector<OrderedPartition> out;
  out.reserve(std::size_t{1} << (n - 1));
  std::vector<int> prefix;
  detail::compositions_dfs(n, prefix, out);
  return out;
}

/// n! / prod s_i!, the number of labeled graphs isomorphic to the composition graph.
inline BigInt lambda_of(const OrderedPartition& p) {
  BigInt denom = 1;
  for (int s : p.parts()) denom *= factorial(s);
  return factorial(p.n()) / denom;
}

struct FubiniValue {
  BigInt value;
  bool odd = false;
};

/// Number of weak orders on n elements, as the sum of lambda over all compositions.
inline FubiniValue fubini(int n, int cap = kDefaultCompositionCap) {
  FubiniValue f;
  for (const auto& p : enumerate_compositions(n, cap)) f.value += lambda_of(p);
  f.odd = (f.value & 1) == 1;
  return f;
}

/// Edges (u, v) for u != v with block(u) <= block(v).
inline DirectedGraph graph_of_composition(const OrderedPartition& p) {
  const int n = p.n();
  std::vector<std::vector<Vertex>> out(static_cast<std::size_t>(n));
  for (Vertex u = 1; u <= n; ++u) {
    const Vertex from = p.block_start(p.block_of(u));
    for (Vertex v = from; v <= n; ++v)
      if (v != u) out[static_cast<std::size_t>(u - 1)].push_back(v);
  }
  return DirectedGraph(n, std::move(out));
}

/// Inverse of graph_of_composition on its image. Vertex v shares a block with
/// v-1 exactly when the edge (v, v-1) is present.
inline std::optional<OrderedPartition> composition_of_graph(const DirectedGraph& g) {
  std::vector<int> parts{1};
  for (Vertex v = 2; v <= g.size(); ++v) {
    if (g.has_edge(v, v - 1))
      ++parts.back();
    else
      parts.push_back(1);
  }
  OrderedPartition p(std::move(parts));
  if (graph_of_composition(p) != g) return std::nullopt;
  return p;
}

// ---------------------------------------------------------------------------
// Transitions.

/// The singleton block j of `source` is merged into block j-1: one vertex
/// rewrites its outgoing edges to also cover block j-1.
struct TransitionEdge {
  OrderedPartition source;
  OrderedPartition target;
  int j = 0;

  friend bool operator==(const TransitionEdge&, const TransitionEdge&) = default;
};

/// Target of the j-transition from p, or nullopt when j is out of range or
/// s_j != 1.
inline std::optional<OrderedPartition> apply_transition(const OrderedPartition& p, int j) {
  if (j < 2 || j > p.r() || p.part(j) != 1) return std::nullopt;
  std::vector<int> parts = p.parts();
  parts[static_cast<std::size_t>(j - 2)] += 1;
  parts.erase(parts.begin() + (j - 1));
  return OrderedPartition(std::move(parts));
}

inline std::vector<TransitionEdge> transitions(int n, int cap = kDefaultCompositionCap) {
  std::vector<TransitionEdge> edges;
  for (const auto& p : enumerate_compositions(n, cap))
    for (int j = 2; j <= p.r(); ++j)
      if (auto target = apply_transition(p, j)) edges.push_back({p, *target, j});
  return edges;
}

struct TransitionStructureReport {
  int n = 0;
  std::size_t compositions = 0;
  std::size_t edges = 0;
  // Every (G, j) with i(G) <= j <= r(G) has exactly one transition partner.
  bool unique_partner = true;
  // Every edge joins compositions whose lengths differ by one.
  bool bipartite = true;
  // lambda(G') * s(G')_{j-1} == lambda(G) * s(G)_j on every edge.
  bool coefficient_identity = true;
  // No pair carries transitions both ways, and no pair carries two labels.
  bool antisymmetric = true;
  std::vector<std::string> failures;

  bool ok() const { return unique_partner && bipartite && coefficient_identity && antisymmetric; }
};

inline TransitionStructureReport verify_transition_structure(int n, int cap = kDefaultCompositionCap) {
  TransitionStructureReport rep;
  rep.n = n;
  const auto comps = enumerate_compositions(n, cap);
  const auto edges = transitions(n, cap);
  rep.compositions = comps.size();
  rep.edges = edges.size();
  auto fail = [&rep](bool& flag, std::string why) {
    flag = false;
    if (rep.failures.size() < 32) rep.failures.push_back(std::move(why));
  };

  // Partners of (G, j): outgoing j-transitions and incoming (j+1)-transitions.
  std::map<std::pair<OrderedPartition, int>, int> partners;
  std::map<std::pair<OrderedPartition, OrderedPartition>, int> labels;
  for (const auto& e : edges) {
    ++partners[{e.source, e.j}];
    ++partners[{e.target, e.j - 1}];
    if (++labels[{e.source, e.target}] > 1) fail(rep.antisymmetric, "two labels on " + e.source.str() + "->" + e.target.str());
    if (e.source.r() != e.target.r() + 1)
      fail(rep.bipartite, "lengths of " + e.source.str() + " and " + e.target.str() + " do not differ by one");
    const BigInt left = lambda_of(e.target) * e.target.part(e.j - 1);
    const BigInt right = lambda_of(e.source) * e.source.part(e.j);
    if (left != right)
      fail(rep.coefficient_identity, "coefficient identity fails on " + e.source.str() + "->" + e.target.str());
  }
  for (const auto& [pair, count] : labels)
    if (labels.count({pair.second, pair.first})) fail(rep.antisymmetric, "transitions both ways between " + pair.first.str() + " and " + pair.second.str());

  for (const auto& g : comps) {
    for (int j = g.first_index(); j <= g.r(); ++j) {
      auto it = partners.find({g, j});
      const int count = it == partners.end() ? 0 : it->second;
      if (count != 1)
        fail(rep.unique_partner, g.str() + " block " + std::to_string(j) + " has " + std::to_string(count) + " partners");
      // The partner comes from merging when s_j = 1 and from splitting otherwise.
      if (g.part(j) == 1 && !apply_transition(g, j))
        fail(rep.unique_partner, g.str() + " block " + std::to_string(j) + " has no outgoing transition");
    }
  }
  for (const auto& [key, count] : partners)
    if (key.second < key.first.first_index())
      fail(rep.unique_partner, key.first.str() + " pairs block " + std::to_string(key.second) + " below its first index");
  return rep;
}

// ---------------------------------------------------------------------------
// Exact row-combination checking.

/// A row  sum_v coeff_v x_v  (<= or >=)  rhs  over nonnegative variables.
struct LinearRow {
  enum class Sense { kAtMost, kAtLeast };
  std::map<int, Rational> coeffs;
  Sense sense = Sense::kAtMost;
  Rational rhs = 0;
};

struct CombinationResult {
  // Combined coefficient of every variable, after turning >= rows into <= rows.
  std::map<int, Rational> combined;
  Rational combined_rhs = 0;
  bool multipliers_nonnegative = true;
  bool all_zero = true;
  bool all_nonnegative = true;

  // 0 <= (combined) . x <= combined_rhs < 0 is impossible for x >= 0.
  bool proves_infeasible() const { return multipliers_nonnegative && all_nonnegative && combined_rhs < 0; }
};

/// Sums multiplier_r * row_r with every >= row negated into <= form.
inline CombinationResult combine_rows(const std::vector<LinearRow>& rows, const std::vector<Rational>& multipliers) {
  if (rows.size() != multipliers.size()) throw std::invalid_argument("one multiplier per row is required");
  CombinationResult res;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const Rational& y = multipliers[i];
    if (y < 0) res.multipliers_nonnegative = false;
    const Rational orient = rows[i].sense == LinearRow::Sense::kAtMost ? Rational(1) : Rational(-1);
    for (const auto& [var, c] : rows[i].coeffs) res.combined[var] += orient * y * c;
    res.combined_rhs += orient * y * rows[i].rhs;
  }
  for (const auto& [var, c] : res.combined) {
    if (c != 0) res.all_zero = false;
    if (c < 0) res.all_nonnegative = false;
  }
  return res;
}

// ---------------------------------------------------------------------------
// Infeasibility certificate.

struct CertificateRow {
  OrderedPartition composition;
  BigInt lambda;
  // kAtMost: sum_i s_i p_i <= 1 (at most one selected vertex).
  // kAtLeast: sum_{i >= i(G)} s_i p_i >= 1 (a positive-indegree vertex is selected).
  LinearRow::Sense sense = LinearRow::Sense::kAtMost;
  int sign = 1;

  BigInt multiplier() const { return sign * lambda; }
};

struct Certificate {
  int n = 0;
  std::vector<CertificateRow> rows;
  BigInt rhs_total;
  // Total under the opposite assignment of signs to the two length classes.
  BigInt rhs_total_other_orientation;
  bool rhs_odd = false;
  bool cancellation_ok = false;
  // The same combination pushed through the generic row checker.
  bool proves_infeasible = false;
};

/// Variables are p(G, i): the probability of selecting one particular vertex
/// of block i of G (all vertices of a block are interchangeable). Impartiality
/// identifies p(G, j) with p(G', j-1) across a j-transition, since the moving
/// vertex's own probability may not change. Each row is weighted by lambda and
/// signed by the parity of the composition's length.
inline Certificate build_certificate(int n, int cap = kDefaultCompositionCap) {
  if (n < 2) throw std::invalid_argument("certificates need n >= 2");
  const auto comps = enumerate_compositions(n, cap);
  Certificate cert;
  cert.n = n;

  BigInt odd_total = 0;  // sum of lambda over odd-length compositions
  BigInt even_total = 0;
  for (const auto& p : comps) (p.r() % 2 ? odd_total : even_total) += lambda_of(p);
  // Orientation A: +1 on odd lengths, -1 on even lengths.
  const BigInt total_a = odd_total - even_total;
  const int odd_sign = total_a < 0 ? 1 : -1;
  cert.rhs_total = odd_sign == 1 ? total_a : BigInt(-total_a);
  cert.rhs_total_other_orientation = -cert.rhs_total;
  cert.rhs_odd = (abs(cert.rhs_total) & 1) == 1;

  // Variable ids: union-find over (composition index, block).
  std::map<std::pair<std::size_t, int>, int> var_id;
  std::map<OrderedPartition, std::size_t> index;
  for (std::size_t c = 0; c < comps.size(); ++c) {
    index[comps[c]] = c;
    for (int i = comps[c].first_index(); i <= comps[c].r(); ++i) {
      const int id = static_cast<int>(var_id.size());
      var_id[{c, i}] = id;
    }
  }
  std::vector<int> parent(var_id.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&parent](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
    return x;
  };
  for (const auto& e : transitions(n, cap)) {
    const int a = find(var_id.at({index.at(e.source), e.j}));
    const int b = find(var_id.at({index.at(e.target), e.j - 1}));
    if (a != b) parent[static_cast<std::size_t>(a)] = b;
  }

  std::vector<LinearRow> rows;
  std::vector<Rational> multipliers;
  for (std::size_t c = 0; c < comps.size(); ++c) {
    const auto& p = comps[c];
    CertificateRow row;
    row.composition = p;
    row.lambda = lambda_of(p);
    row.sign = (p.r() % 2 ? odd_sign : -odd_sign);
    row.sense = row.sign > 0 ? LinearRow::Sense::kAtMost : LinearRow::Sense::kAtLeast;
    cert.rows.push_back(row);

    // Both senses range over blocks i >= i(G). For an at-most-one row the
    // omitted first-block term is nonnegative, so dropping it keeps the row valid.
    LinearRow lr;
    lr.sense = row.sense;
    lr.rhs = 1;
    for (int i = p.first_index(); i <= p.r(); ++i) lr.coeffs[find(var_id.at({c, i}))] += p.part(i);
    rows.push_back(std::move(lr));
    multipliers.emplace_back(row.lambda);
  }
  const CombinationResult res = combine_rows(rows, multipliers);
  cert.cancellation_ok = res.all_zero;
  cert.proves_infeasible = res.proves_infeasible() && res.combined_rhs == Rational(cert.rhs_total);
  return cert;
}

// ---------------------------------------------------------------------------
// Reductions.

/// Pads G with isolated vertices up to n_target; edges are unchanged.
inline DirectedGraph reduce_add_isolated(const DirectedGraph& g, int n_target) {
  if (n_target < g.size())
    throw std::invalid_argument("target size " + std::to_string(n_target) + " is below the graph size " + std::to_string(g.size()));
  std::vector<std::vector<Vertex>> out(static_cast<std::size_t>(n_target));
  for (Vertex v = 1; v <= g.size(); ++v) {
    auto nb = g.out_neighbors(v);
    out[static_cast<std::size_t>(v - 1)].assign(nb.begin(), nb.end());
  }
  return DirectedGraph(n_target, std::move(out));
}

/// For a composition graph G on N = {1..k}, adds vertices u_j = k + j for
/// j = 1..n_target-k with edge set
///   E  +  (every u_j -> every vertex of N)  +  (every sink of G -> u_1).
inline DirectedGraph reduce_add_inneighbors(const DirectedGraph& g, int n_target) {
  const int k = g.size();
  if (k < 2) throw std::invalid_argument("the input graph needs at least 2 vertices");
  if (!composition_of_graph(g)) throw std::invalid_argument("the input graph is not generated by a composition");
  if (n_target < k + 1)
    throw std::invalid_argument("target size must exceed the graph size (" + std::to_string(k) + ")");
  std::vector<std::vector<Vertex>> out(static_cast<std::size_t>(n_target));
  const Vertex u1 = k + 1;
  for (Vertex v = 1; v <= k; ++v) {
    auto nb = g.out_neighbors(v);
    auto& row = out[static_cast<std::size_t>(v - 1)];
    row.assign(nb.begin(), nb.end());
    if (row.empty()) row.push_back(u1);
  }
  for (Vertex u = u1; u <= n_target; ++u) {
    auto& row = out[static_cast<std::size_t>(u - 1)];
    for (Vertex v = 1; v <= k; ++v) row.push_back(v);
  }
  return DirectedGraph(n_target, std::move(out));
}

}  // namespace impsel

#endif  // IMPSEL_PARTITIONS_HPP_
