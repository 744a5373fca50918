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

// Exhaustive enumeration and seeded sampling of the graph classes G_n, G+_n,
// G_n(k) and G+_n(k), plus single-vertex deviations.

#ifndef IMPSEL_ENUMERATE_HPP_
#define IMPSEL_ENUMERATE_HPP_

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "impsel/graph.hpp"

namespace impsel {

inline constexpr std::uint64_t kDefaultEnumerationCap = 100'000'000;

class CapExceeded : public std::length_error {
 public:
  using std::length_error::length_error;
};

namespace detail {

inline std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) return std::numeric_limits<std::uint64_t>::max();
  return a * b;
}

inline std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) {
  if (b > std::numeric_limits<std::uint64_t>::max() - a) return std::numeric_limits<std::uint64_t>::max();
  return a + b;
}

inline std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) {
    // r * (n - k + i) / i stays exact because r is C(n-k+i-1, i-1).
    unsigned __int128 wide = static_cast<unsigned __int128>(r) * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
    if (wide > std::numeric_limits<std::uint64_t>::max()) return std::numeric_limits<std::uint64_t>::max();
    r = static_cast<std::uint64_t>(wide);
  }
  return r;
}

inline void out_sets_dfs(const std::vector<Vertex>& targets, std::size_t from, int max_size, int min_size,
                         std::vector<Vertex>& current, std::vector<std::vector<Vertex>>& result) {
  if (static_cast<int>(current.size()) >= min_size) result.push_back(current);
  if (static_cast<int>(current.size()) == max_size) return;
  for (std::size_t i = from; i < targets.size(); ++i) {
    current.push_back(targets[i]);
    out_sets_dfs(targets, i + 1, max_size, min_size, current, result);
    current.pop_back();
  }
}

}  // namespace detail

/// Number of admissible out-sets of a single vertex (saturating).
inline std::uint64_t out_set_count(const GraphClassSpec& spec) {
  spec.validate();
  std::uint64_t total = 0;
  for (int j = spec.min_outdegree(); j <= spec.max_outdegree(); ++j)
    total = detail::saturating_add(total, detail::binomial(spec.n - 1, j));
  return total;
}

/// |class|, saturating at UINT64_MAX.
inline std::uint64_t class_size(const GraphClassSpec& spec) {
  std::uint64_t per_vertex = out_set_count(spec);
  std::uint64_t total = 1;
  for (int v = 0; v < spec.n; ++v) total = detail::saturating_mul(total, per_vertex);
  return total;
}

/// Admissible out-sets of `v`, in lexicographic order of their sorted member
/// lists (so abstention, when allowed, comes first).
inline std::vector<std::vector<Vertex>> admissible_out_sets(const GraphClassSpec& spec, Vertex v,
                                                            std::uint64_t cap = kDefaultEnumerationCap) {
  if (out_set_count(spec) > cap)
    throw CapExceeded("vertex " + std::to_string(v) + " has more than " + std::to_string(cap) + " admissible out-sets");
  std::vector<Vertex> targets;
  for (Vertex u = 1; u <= spec.n; ++u)
    if (u != v) targets.push_back(u);
  std::vector<std::vector<Vertex>> result;
  std::vector<Vertex> current;
  detail::out_sets_dfs(targets, 0, spec.max_outdegree(), spec.min_outdegree(), current, result);
  return result;
}

/// Random access over all graphs of a class. Graph number `index` has out-set
/// choice digits (c_1, ..., c_n) in mixed radix with vertex n least
/// significant, so iterating indices in order walks the class in lexicographic
/// order of the per-vertex choice tuple.
class GraphEnumerator {
 public:
  explicit GraphEnumerator(GraphClassSpec spec, std::uint64_t cap = kDefaultEnumerationCap) : spec_(spec) {
    spec_.validate();
    if (spec_.n > 64) throw CapExceeded("exhaustive enumeration supports at most 64 vertices");
    size_ = class_size(spec_);
    if (size_ > cap)
      throw CapExceeded(spec_.describe() + " has " + (size_ == std::numeric_limits<std::uint64_t>::max() ? std::string(">2^64") : std::to_string(size_)) +
                        " graphs, above the enumeration cap of " + std::to_string(cap));
    radix_ = out_set_count(spec_);
    tables_.reserve(static_cast<std::size_t>(spec_.n));
    masks_.resize(static_cast<std::size_t>(spec_.n));
    for (Vertex v = 1; v <= spec_.n; ++v) {
      tables_.push_back(admissible_out_sets(spec_, v, cap));
      auto& lookup = masks_[static_cast<std::size_t>(v - 1)];
      const auto& table = tables_.back();
      for (std::size_t c = 0; c < table.size(); ++c) lookup.emplace(mask_of(table[c]), static_cast<std::uint32_t>(c));
    }
    strides_.assign(static_cast<std::size_t>(spec_.n), 1);
    for (int v = spec_.n - 2; v >= 0; --v)
      strides_[static_cast<std::size_t>(v)] = strides_[static_cast<std::size_t>(v + 1)] * radix_;
  }

  const GraphClassSpec& spec() const { return spec_; }
  std::uint64_t size() const { return size_; }
  std::uint64_t radix() const { return radix_; }
  std::uint64_t stride(Vertex v) const { return strides_[static_cast<std::size_t>(v - 1)]; }

  std::uint32_t digit(std::uint64_t index, Vertex v) const {
    return static_cast<std::uint32_t>((index / stride(v)) % radix_);
  }

  const std::vector<Vertex>& out_set(Vertex v, std::uint32_t digit) const {
    return tables_[static_cast<std::size_t>(v - 1)][digit];
  }

  DirectedGraph graph_at(std::uint64_t index) const {
    if (index >= size_) throw std::out_of_range("graph index out of range");
    std::vector<std::vector<Vertex>> out(static_cast<std::size_t>(spec_.n));
    for (Vertex v = spec_.n; v >= 1; --v) {
      out[static_cast<std::size_t>(v - 1)] = out_set(v, static_cast<std::uint32_t>(index % radix_));
      index /= radix_;
    }
    return DirectedGraph(spec_.n, std::move(out));
  }

  /// Inverse of graph_at; nullopt if the graph is not in the class.
  std::optional<std::uint64_t> index_of(const DirectedGraph& g) const {
    if (g.size() != spec_.n) return std::nullopt;
    std::uint64_t index = 0;
    for (Vertex v = 1; v <= spec_.n; ++v) {
      auto out = g.out_neighbors(v);
      auto it = masks_[static_cast<std::size_t>(v - 1)].find(mask_of(out));
      if (it == masks_[static_cast<std::size_t>(v - 1)].end()) return std::nullopt;
      index = index * radix_ + it->second;
    }
    return index;
  }

  template <typename Fn>
  void for_each(Fn&& fn) const {
    for (std::uint64_t i = 0; i < size_; ++i) fn(graph_at(i));
  }

 private:
  static std::uint64_t mask_of(std::span<const Vertex> set) {
    std::uint64_t m = 0;
    for (Vertex u : set) m |= std::uint64_t{1} << (u - 1);
    return m;
  }

  GraphClassSpec spec_;
  std::uint64_t size_ = 0;
  std::uint64_t radix_ = 0;
  std::vector<std::vector<std::vector<Vertex>>> tables_;
  std::vector<std::unordered_map<std::uint64_t, std::uint32_t>> masks_;
  std::vector<std::uint64_t> strides_;
};

inline std::vector<DirectedGraph> enumerate_graphs(const GraphClassSpec& spec, std::uint64_t cap = kDefaultEnumerationCap) {
  GraphEnumerator e(spec, cap);
  std::vector<DirectedGraph> result;
  result.reserve(static_cast<std::size_t>(e.size()));
  e.for_each([&](DirectedGraph g) { result.push_back(std::move(g)); });
  return result;
}

// ---------------------------------------------------------------------------
// Sampling.

/// SplitMix64 used as a counter-based generator: the i-th output for a seed
/// is mix(seed + (i + 1) * golden_gamma), so any output can be computed
/// directly from (seed, i).
class CounterRng {
 public:
  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

  explicit CounterRng(std::uint64_t seed, std::uint64_t counter = 0) : seed_(seed), counter_(counter) {}

  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  static std::uint64_t at(std::uint64_t seed, std::uint64_t counter) { return mix(seed + (counter + 1) * kGamma); }

  std::uint64_t operator()() { return at(seed_, counter_++); }

  /// Uniform in [0, bound) by rejection; bound > 0.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      std::uint64_t r = (*this)();
      if (r >= threshold) return r % bound;
    }
  }

  std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t seed_;
  std::uint64_t counter_;
};

/// Uniform draw from the class: each out-set is chosen uniformly among the
/// admissible ones, independently per vertex (vertex 1 first). The set size is
/// drawn with weight C(n-1, j), then a uniform j-subset by partial
/// Fisher-Yates.
inline DirectedGraph sample_graph(const GraphClassSpec& spec, std::uint64_t seed) {
  spec.validate();
  const std::uint64_t per_vertex = out_set_count(spec);
  if (per_vertex == std::numeric_limits<std::uint64_t>::max())
    throw CapExceeded("out-set count overflows 64 bits for " + spec.describe());
  if (per_vertex == 0) throw GraphError(spec.describe() + " is empty");
  CounterRng rng(seed);
  std::vector<std::vector<Vertex>> out(static_cast<std::size_t>(spec.n));
  std::vector<Vertex> pool;
  for (Vertex v = 1; v <= spec.n; ++v) {
    std::uint64_t r = rng.below(per_vertex);
    int size = spec.min_outdegree();
    for (;; ++size) {
      std::uint64_t c = detail::binomial(spec.n - 1, size);
      if (r < c) break;
      r -= c;
    }
    pool.clear();
    for (Vertex u = 1; u <= spec.n; ++u)
      if (u != v) pool.push_back(u);
    auto& chosen = out[static_cast<std::size_t>(v - 1)];
    for (int i = 0; i < size; ++i) {
      std::size_t j = static_cast<std::size_t>(i) + static_cast<std::size_t>(rng.below(pool.size() - static_cast<std::size_t>(i)));
      std::swap(pool[static_cast<std::size_t>(i)], pool[j]);
      chosen.push_back(pool[static_cast<std::size_t>(i)]);
    }
  }
  return DirectedGraph(spec.n, std::move(out));
}

/// Seed of the i-th trial in a sampled audit run with `seed`.
inline std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial) { return CounterRng::at(seed, trial); }

/// All graphs in the class that agree with `g` outside v's out-edges,
/// including `g` itself, in admissible out-set order.
inline std::vector<DirectedGraph> deviations(const DirectedGraph& g, Vertex v, const GraphClassSpec& spec,
                                             std::uint64_t cap = kDefaultEnumerationCap) {
  if (g.size() != spec.n || v < 1 || v > spec.n) throw GraphError("deviation vertex or graph size does not match class");
  std::vector<DirectedGraph> result;
  for (auto& set : admissible_out_sets(spec, v, cap)) result.push_back(g.with_out_set(v, std::move(set)));
  return result;
}

}  // namespace impsel

#endif  // IMPSEL_ENUMERATE_HPP_
