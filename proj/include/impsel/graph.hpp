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

#ifndef IMPSEL_GRAPH_HPP_
#define IMPSEL_GRAPH_HPP_

#include <algorithm>
#include <charconv>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace impsel {

// Vertices are the integers 1..n. Ties anywhere in this library are broken
// in favour of the larger vertex id.
using Vertex = int;

/// Per-vertex storage addressed by vertex id 1..n.
template <typename T>
class VertexMap {
 public:
  VertexMap() = default;
  explicit VertexMap(int n, const T& init = T{}) : data_(static_cast<std::size_t>(n), init) {}

  decltype(auto) operator[](Vertex v) { return data_[static_cast<std::size_t>(v - 1)]; }
  decltype(auto) operator[](Vertex v) const { return data_[static_cast<std::size_t>(v - 1)]; }

  int size() const { return static_cast<int>(data_.size()); }
  auto begin() { return data_.begin(); }
  auto end() { return data_.end(); }
  auto begin() const { return data_.begin(); }
  auto end() const { return data_.end(); }
  const std::vector<T>& values() const { return data_; }

  friend bool operator==(const VertexMap&, const VertexMap&) = default;

 private:
  std::vector<T> data_;
};

class GraphError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ParseError : public GraphError {
 public:
  ParseError(int line, const std::string& what)
      : GraphError("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

using Edge = std::pair<Vertex, Vertex>;

/// Loop-free directed graph on vertices 1..n, immutable after construction.
/// Out-neighbourhoods are stored sorted.
class DirectedGraph {
 public:
  DirectedGraph() : DirectedGraph(1) {}

  explicit DirectedGraph(int n) : n_(n), out_(static_cast<std::size_t>(n)) {
    if (n < 1) throw GraphError("vertex count must be positive");
  }

  DirectedGraph(int n, std::vector<std::vector<Vertex>> out_sets) : n_(n), out_(std::move(out_sets)) {
    if (n < 1) throw GraphError("vertex count must be positive");
    if (out_.size() != static_cast<std::size_t>(n)) throw GraphError("need one out-set per vertex");
    for (Vertex v = 1; v <= n_; ++v) {
      auto& set = out_[static_cast<std::size_t>(v - 1)];
      std::sort(set.begin(), set.end());
      for (std::size_t i = 0; i < set.size(); ++i) {
        Vertex u = set[i];
        if (u < 1 || u > n_)
          throw GraphError("edge (" + std::to_string(v) + "," + std::to_string(u) + ") out of range");
        if (u == v) throw GraphError("self-loop at vertex " + std::to_string(v));
        if (i > 0 && set[i - 1] == u)
          throw GraphError("duplicate edge (" + std::to_string(v) + "," + std::to_string(u) + ")");
      }
    }
  }

  static DirectedGraph from_edges(int n, std::span<const Edge> edges) {
    std::vector<std::vector<Vertex>> out(static_cast<std::size_t>(std::max(n, 0)));
    for (auto [u, v] : edges) {
      if (u < 1 || u > n)
        throw GraphError("edge (" + std::to_string(u) + "," + std::to_string(v) + ") out of range");
      out[static_cast<std::size_t>(u - 1)].push_back(v);
    }
    return DirectedGraph(n, std::move(out));
  }

  static DirectedGraph from_edges(int n, std::initializer_list<Edge> edges) {
    return from_edges(n, std::span<const Edge>(edges.begin(), edges.size()));
  }

  int size() const { return n_; }

  std::span<const Vertex> out_neighbors(Vertex v) const { return out_[static_cast<std::size_t>(v - 1)]; }

  int outdegree(Vertex v) const { return static_cast<int>(out_neighbors(v).size()); }

  bool has_edge(Vertex u, Vertex v) const {
    auto set = out_neighbors(u);
    return std::binary_search(set.begin(), set.end(), v);
  }

  std::size_t edge_count() const {
    std::size_t m = 0;
    for (const auto& s : out_) m += s.size();
    return m;
  }

  /// Edges sorted by (u, v).
  std::vector<Edge> edges() const {
    std::vector<Edge> result;
    result.reserve(edge_count());
    for (Vertex u = 1; u <= n_; ++u)
      for (Vertex v : out_neighbors(u)) result.emplace_back(u, v);
    return result;
  }

  VertexMap<int> indegrees() const {
    VertexMap<int> in(n_, 0);
    for (const auto& s : out_)
      for (Vertex v : s) ++in[v];
    return in;
  }

  /// In-neighbourhoods, each sorted ascending.
  VertexMap<std::vector<Vertex>> in_neighbors() const {
    VertexMap<std::vector<Vertex>> in(n_);
    for (Vertex u = 1; u <= n_; ++u)
      for (Vertex v : out_neighbors(u)) in[v].push_back(u);
    return in;
  }

  /// Copy of this graph with the out-set of `v` replaced.
  DirectedGraph with_out_set(Vertex v, std::vector<Vertex> out_set) const {
    auto out = out_;
    out[static_cast<std::size_t>(v - 1)] = std::move(out_set);
    return DirectedGraph(n_, std::move(out));
  }

  /// True iff the graphs agree on every edge not leaving `v`.
  bool agrees_outside(const DirectedGraph& other, Vertex v) const {
    if (n_ != other.n_) return false;
    for (Vertex u = 1; u <= n_; ++u)
      if (u != v && out_[static_cast<std::size_t>(u - 1)] != other.out_[static_cast<std::size_t>(u - 1)])
        return false;
    return true;
  }

  friend bool operator==(const DirectedGraph&, const DirectedGraph&) = default;
  friend auto operator<=>(const DirectedGraph&, const DirectedGraph&) = default;

 private:
  int n_;
  std::vector<std::vector<Vertex>> out_;
};

struct DegreeProfile {
  VertexMap<int> indegree;
  VertexMap<int> outdegree;
  int max_indegree = 0;
  // Largest vertex id attaining max_indegree.
  Vertex argmax = 1;
};

inline DegreeProfile degree_profile(const DirectedGraph& g) {
  DegreeProfile p;
  p.indegree = g.indegrees();
  p.outdegree = VertexMap<int>(g.size(), 0);
  for (Vertex v = 1; v <= g.size(); ++v) p.outdegree[v] = g.outdegree(v);
  p.argmax = 1;
  p.max_indegree = p.indegree[1];
  for (Vertex v = 2; v <= g.size(); ++v) {
    if (p.indegree[v] >= p.max_indegree) {
      p.max_indegree = p.indegree[v];
      p.argmax = v;
    }
  }
  return p;
}

inline int max_indegree(const DirectedGraph& g) {
  auto in = g.indegrees();
  return *std::max_element(in.begin(), in.end());
}

/// Graph classes G_n, G+_n, G_n(k) and G+_n(k).
struct GraphClassSpec {
  int n = 1;
  // nullopt means unbounded outdegree.
  std::optional<int> k;
  bool require_positive_outdegree = false;

  static GraphClassSpec bounded(int n, int k, bool positive = false) { return {n, k, positive}; }
  static GraphClassSpec unbounded(int n, bool positive = false) { return {n, std::nullopt, positive}; }

  void validate() const {
    if (n < 1) throw GraphError("graph class needs n >= 1");
    if (k && (*k < 1 || *k > n - 1))
      throw GraphError("graph class needs 1 <= k <= n-1 (got k=" + std::to_string(*k) + ", n=" + std::to_string(n) + ")");
  }

  int max_outdegree() const { return k ? *k : n - 1; }
  int min_outdegree() const { return require_positive_outdegree ? 1 : 0; }

  std::string describe() const {
    std::string s = require_positive_outdegree ? "G+_" : "G_";
    s += std::to_string(n);
    if (k) s += "(" + std::to_string(*k) + ")";
    return s;
  }

  friend bool operator==(const GraphClassSpec&, const GraphClassSpec&) = default;
};

inline bool class_membership(const DirectedGraph& g, const GraphClassSpec& spec) {
  if (g.size() != spec.n) return false;
  for (Vertex v = 1; v <= g.size(); ++v) {
    int d = g.outdegree(v);
    if (d < spec.min_outdegree() || d > spec.max_outdegree()) return false;
  }
  return true;
}

/// A bijection on 1..n; images[v-1] is the image of v.
class Permutation {
 public:
  explicit Permutation(std::vector<Vertex> images) : images_(std::move(images)) {
    std::vector<bool> seen(images_.size(), false);
    for (Vertex x : images_) {
      if (x < 1 || x > static_cast<int>(images_.size()) || seen[static_cast<std::size_t>(x - 1)])
        throw GraphError("not a permutation");
      seen[static_cast<std::size_t>(x - 1)] = true;
    }
  }

  static Permutation identity(int n) {
    std::vector<Vertex> img(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) img[static_cast<std::size_t>(i)] = i + 1;
    return Permutation(std::move(img));
  }

  int size() const { return static_cast<int>(images_.size()); }
  Vertex operator()(Vertex v) const { return images_[static_cast<std::size_t>(v - 1)]; }
  const std::vector<Vertex>& images() const { return images_; }

  Permutation inverse() const {
    std::vector<Vertex> inv(images_.size());
    for (std::size_t i = 0; i < images_.size(); ++i)
      inv[static_cast<std::size_t>(images_[i] - 1)] = static_cast<Vertex>(i + 1);
    return Permutation(std::move(inv));
  }

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<Vertex> images_;
};

/// Calls fn(permutation) for all n! permutations in lexicographic order of images.
template <typename Fn>
void for_each_permutation(int n, Fn&& fn) {
  std::vector<Vertex> img(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) img[static_cast<std::size_t>(i)] = i + 1;
  do {
    fn(Permutation(img));
  } while (std::next_permutation(img.begin(), img.end()));
}

/// G_pi with E_pi = {(pi(u), pi(v)) : (u, v) in E}.
inline DirectedGraph relabel(const DirectedGraph& g, const Permutation& pi) {
  if (pi.size() != g.size()) throw GraphError("permutation size does not match graph");
  std::vector<std::vector<Vertex>> out(static_cast<std::size_t>(g.size()));
  for (Vertex u = 1; u <= g.size(); ++u) {
    auto& target = out[static_cast<std::size_t>(pi(u) - 1)];
    for (Vertex v : g.out_neighbors(u)) target.push_back(pi(v));
  }
  return DirectedGraph(g.size(), std::move(out));
}

// ---------------------------------------------------------------------------
// Graph file format:
//   # comment
//   n <count>
//   e <u> <v>
// Blank lines are ignored. Duplicate edges, self-loops and out-of-range ids are
// errors.

namespace detail {

inline std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
    if (j > i) tokens.push_back(line.substr(i, j - i));
    i = j;
  }
  return tokens;
}

inline int parse_int(std::string_view tok, int line) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc{} || ptr != tok.data() + tok.size())
    throw ParseError(line, "expected integer, got '" + std::string(tok) + "'");
  return value;
}

}  // namespace detail

inline DirectedGraph parse_graph(std::string_view text) {
  std::optional<int> n;
  std::vector<std::pair<Edge, int>> edges;  // edge, line number
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    auto tokens = detail::split_ws(line);
    if (tokens.empty() || tokens[0].front() == '#') {
      if (end == text.size()) break;
      continue;
    }
    if (tokens[0] == "n") {
      if (n) throw ParseError(line_no, "duplicate header line");
      if (tokens.size() != 2) throw ParseError(line_no, "header must be 'n <count>'");
      n = detail::parse_int(tokens[1], line_no);
      if (*n < 1) throw ParseError(line_no, "vertex count must be positive");
    } else if (tokens[0] == "e") {
      if (!n) throw ParseError(line_no, "edge before header");
      if (tokens.size() != 3) throw ParseError(line_no, "edge must be 'e <u> <v>'");
      int u = detail::parse_int(tokens[1], line_no);
      int v = detail::parse_int(tokens[2], line_no);
      if (u < 1 || u > *n || v < 1 || v > *n) throw ParseError(line_no, "vertex id out of range");
      if (u == v) throw ParseError(line_no, "self-loop at vertex " + std::to_string(u));
      edges.push_back({{u, v}, line_no});
    } else {
      throw ParseError(line_no, "unknown line type '" + std::string(tokens[0]) + "'");
    }
    if (end == text.size()) break;
  }
  if (!n) throw ParseError(line_no, "missing header line 'n <count>'");
  std::vector<std::vector<Vertex>> out(static_cast<std::size_t>(*n));
  std::sort(edges.begin(), edges.end());
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (i > 0 && edges[i].first == edges[i - 1].first)
      throw ParseError(std::max(edges[i].second, edges[i - 1].second), "duplicate edge");
    out[static_cast<std::size_t>(edges[i].first.first - 1)].push_back(edges[i].first.second);
  }
  return DirectedGraph(*n, std::move(out));
}

/// Canonical form: header, then edges sorted by (u, v).
inline std::string serialize_graph(const DirectedGraph& g) {
  std::string s = "n " + std::to_string(g.size()) + "\n";
  for (auto [u, v] : g.edges()) s += "e " + std::to_string(u) + " " + std::to_string(v) + "\n";
  return s;
}

}  // namespace impsel

#endif  // IMPSEL_GRAPH_HPP_
