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

#ifndef IMPSEL_OUTCOME_HPP_
#define IMPSEL_OUTCOME_HPP_

#include <optional>

#include "impsel/graph.hpp"

namespace impsel {

/// Result of a deterministic selection: at most one vertex.
struct Outcome {
  std::optional<Vertex> selected;
  // Indegree of the selected vertex in the input graph; 0 when nothing is selected.
  int selected_indegree = 0;

  bool empty() const { return !selected.has_value(); }
  bool selects(Vertex v) const { return selected == v; }

  friend bool operator==(const Outcome&, const Outcome&) = default;
};

inline Outcome no_selection() { return {}; }

inline Outcome select_vertex(const DirectedGraph& g, Vertex v) {
  int in = 0;
  for (Vertex u = 1; u <= g.size(); ++u)
    if (g.has_edge(u, v)) ++in;
  return {v, in};
}

inline Outcome select_vertex(const VertexMap<int>& indegree, Vertex v) { return {v, indegree[v]}; }

/// Delta(G) minus the indegree of the selection (empty selection counts as 0).
inline int additive_gap(const DirectedGraph& g, const Outcome& out) { return max_indegree(g) - out.selected_indegree; }

}  // namespace impsel

#endif  // IMPSEL_OUTCOME_HPP_
