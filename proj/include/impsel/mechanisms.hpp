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

// Registry of deterministic selection mechanisms used as baselines and as
// positive/negative controls for the audit harness.

#ifndef IMPSEL_MECHANISMS_HPP_
#define IMPSEL_MECHANISMS_HPP_

#include <charconv>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>
#include <variant>

#include "impsel/graph.hpp"
#include "impsel/outcome.hpp"
#include "impsel/twin_threshold.hpp"

namespace impsel {

namespace mech {

struct Never {
  friend bool operator==(const Never&, const Never&) = default;
};
struct MaxIndegreeNaive {
  friend bool operator==(const MaxIndegreeNaive&, const MaxIndegreeNaive&) = default;
};
struct FollowFixed {
  Vertex anchor = 1;
  friend bool operator==(const FollowFixed&, const FollowFixed&) = default;
};
struct MajorityThreshold {
  friend bool operator==(const MajorityThreshold&, const MajorityThreshold&) = default;
};
struct NaiveIterated {
  int threshold = 1;
  friend bool operator==(const NaiveIterated&, const NaiveIterated&) = default;
};
struct NaiveSimultaneous {
  int threshold = 1;
  friend bool operator==(const NaiveSimultaneous&, const NaiveSimultaneous&) = default;
};
struct TwinThreshold {
  ThresholdPair thresholds;
  friend bool operator==(const TwinThreshold&, const TwinThreshold&) = default;
};

}  // namespace mech

using MechanismId = std::variant<mech::Never, mech::MaxIndegreeNaive, mech::FollowFixed, mech::MajorityThreshold,
                                 mech::NaiveIterated, mech::NaiveSimultaneous, mech::TwinThreshold>;

// ---------------------------------------------------------------------------
// Individual mechanisms.

inline Outcome select_never(const DirectedGraph&) { return no_selection(); }

/// Largest vertex among those of maximum indegree. Not impartial.
inline Outcome select_max_indegree_naive(const DirectedGraph& g) {
  auto in = g.indegrees();
  Vertex best = 1;
  for (Vertex v = 2; v <= g.size(); ++v)
    if (in[v] >= in[best]) best = v;
  return select_vertex(in, best);
}

/// Largest out-neighbour of the anchor; empty if the anchor abstains.
inline Outcome select_follow_fixed(const DirectedGraph& g, Vertex anchor) {
  if (anchor < 1 || anchor > g.size()) throw std::invalid_argument("anchor out of range");
  auto out = g.out_neighbors(anchor);
  if (out.empty()) return no_selection();
  return select_vertex(g, out.back());
}

/// Select a vertex with indegree >= floor(n/2) + 1 (largest such on inputs
/// where it is not unique), otherwise nothing.
inline Outcome select_majority_threshold(const DirectedGraph& g) {
  auto in = g.indegrees();
  const int threshold = g.size() / 2 + 1;
  for (Vertex v = g.size(); v >= 1; --v)
    if (in[v] >= threshold) return select_vertex(in, v);
  return no_selection();
}

/// Iterated deletion with lower threshold t, selecting at t as well; this is
/// the Twin Threshold Mechanism with T = t.
inline Outcome select_naive_iterated(const DirectedGraph& g, int t) {
  return select_twin_threshold(g, {t, t});
}

/// Delete, in one shot, the outgoing edges of every vertex with indegree >= t;
/// select the largest vertex of maximum remaining indegree if that is >= t+1.
inline Outcome select_naive_simultaneous(const DirectedGraph& g, int t) {
  if (t < 1 || t > g.size() - 1) throw std::invalid_argument("threshold needs 1 <= t <= n-1");
  const auto in = g.indegrees();
  VertexMap<int> remaining = in;
  for (Vertex u = 1; u <= g.size(); ++u)
    if (in[u] >= t)
      for (Vertex v : g.out_neighbors(u)) --remaining[v];
  Vertex best = 1;
  for (Vertex v = 2; v <= g.size(); ++v)
    if (remaining[v] >= remaining[best]) best = v;
  if (remaining[best] >= t + 1) return select_vertex(in, best);
  return no_selection();
}

// ---------------------------------------------------------------------------
// Registry dispatch.

/// Throws std::invalid_argument if the parameters do not fit n.
inline void validate_mechanism(const MechanismId& m, int n) {
  std::visit(
      [n](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, mech::FollowFixed>) {
          if (x.anchor < 1 || x.anchor > n) throw std::invalid_argument("anchor out of range for n=" + std::to_string(n));
        } else if constexpr (std::is_same_v<T, mech::NaiveIterated> || std::is_same_v<T, mech::NaiveSimultaneous>) {
          if (x.threshold < 1 || x.threshold > n - 1)
            throw std::invalid_argument("threshold needs 1 <= t <= n-1 for n=" + std::to_string(n));
        } else if constexpr (std::is_same_v<T, mech::TwinThreshold>) {
          x.thresholds.validate(n);
        }
      },
      m);
}

/// Evaluate a registry mechanism. A single-vertex graph always yields the
/// empty selection, whatever the parameters.
inline Outcome select(const MechanismId& m, const DirectedGraph& g) {
  if (g.size() == 1) return no_selection();
  return std::visit(
      [&g](const auto& x) -> Outcome {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, mech::Never>) return select_never(g);
        else if constexpr (std::is_same_v<T, mech::MaxIndegreeNaive>) return select_max_indegree_naive(g);
        else if constexpr (std::is_same_v<T, mech::FollowFixed>) return select_follow_fixed(g, x.anchor);
        else if constexpr (std::is_same_v<T, mech::MajorityThreshold>) return select_majority_threshold(g);
        else if constexpr (std::is_same_v<T, mech::NaiveIterated>) return select_naive_iterated(g, x.threshold);
        else if constexpr (std::is_same_v<T, mech::NaiveSimultaneous>) return select_naive_simultaneous(g, x.threshold);
        else return select_twin_threshold(g, x.thresholds);
      },
      m);
}

/// Callable wrapper so registry mechanisms can be handed to the audit templates.
struct RegistryMechanism {
  MechanismId id;
  Outcome operator()(const DirectedGraph& g) const { return select(id, g); }
};

inline std::string mechanism_name(const MechanismId& m) {
  return std::visit(
      [](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, mech::Never>) return "never";
        else if constexpr (std::is_same_v<T, mech::MaxIndegreeNaive>) return "max-naive";
        else if constexpr (std::is_same_v<T, mech::FollowFixed>) return "follow:" + std::to_string(x.anchor);
        else if constexpr (std::is_same_v<T, mech::MajorityThreshold>) return "majority";
        else if constexpr (std::is_same_v<T, mech::NaiveIterated>) return "naive-iter:" + std::to_string(x.threshold);
        else if constexpr (std::is_same_v<T, mech::NaiveSimultaneous>) return "naive-sim:" + std::to_string(x.threshold);
        else return "twin:" + std::to_string(x.thresholds.upper) + "," + std::to_string(x.thresholds.lower);
      },
      m);
}

namespace detail {

inline int parse_param(std::string_view text, std::string_view name) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size())
    throw std::invalid_argument("bad parameter '" + std::string(text) + "' for mechanism " + std::string(name));
  return value;
}

}  // namespace detail

/// Parses `never`, `max-naive`, `follow[:ANCHOR]`, `majority`, `naive-iter:t`,
/// `naive-sim:t` and `twin:T,t`.
inline MechanismId parse_mechanism(std::string_view text) {
  auto colon = text.find(':');
  std::string_view name = text.substr(0, colon);
  std::string_view args = colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);
  auto no_args = [&] {
    if (colon != std::string_view::npos) throw std::invalid_argument("mechanism " + std::string(name) + " takes no parameters");
  };
  auto need_args = [&] {
    if (colon == std::string_view::npos) throw std::invalid_argument("mechanism " + std::string(name) + " needs parameters");
  };
  if (name == "never") {
    no_args();
    return mech::Never{};
  }
  if (name == "max-naive") {
    no_args();
    return mech::MaxIndegreeNaive{};
  }
  if (name == "majority") {
    no_args();
    return mech::MajorityThreshold{};
  }
  if (name == "follow") {
    if (colon == std::string_view::npos) return mech::FollowFixed{1};
    return mech::FollowFixed{detail::parse_param(args, name)};
  }
  if (name == "naive-iter") {
    need_args();
    return mech::NaiveIterated{detail::parse_param(args, name)};
  }
  if (name == "naive-sim") {
    need_args();
    return mech::NaiveSimultaneous{detail::parse_param(args, name)};
  }
  if (name == "twin") {
    need_args();
    auto comma = args.find(',');
    if (comma == std::string_view::npos) throw std::invalid_argument("twin needs 'twin:T,t'");
    return mech::TwinThreshold{
        {detail::parse_param(args.substr(0, comma), name), detail::parse_param(args.substr(comma + 1), name)}};
  }
  throw std::invalid_argument("unknown mechanism '" + std::string(text) + "'");
}

}  // namespace impsel

#endif  // IMPSEL_MECHANISMS_HPP_
