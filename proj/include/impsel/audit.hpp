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

// Audit harness: brute-force and sampled impartiality checks, worst-case
// additive gap measurement, deletion-trace invariant checks, and the
// randomized lift / symmetrization of deterministic mechanisms.
//
// A mechanism here is any callable `Outcome(const DirectedGraph&)` that is
// pure and reentrant; audits may call it concurrently from several threads.

#ifndef IMPSEL_AUDIT_HPP_
#define IMPSEL_AUDIT_HPP_

#include <algorithm>
#include <concepts>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <tuple>
#include <utility>
#include <variant>
#include <vector>

#include "impsel/enumerate.hpp"
#include "impsel/exact.hpp"
#include "impsel/graph.hpp"
#include "impsel/mechanisms.hpp"
#include "impsel/outcome.hpp"
#include "impsel/twin_threshold.hpp"

namespace impsel {

template <typename M>
concept DeterministicMechanism = std::invocable<const M&, const DirectedGraph&> &&
                                 std::convertible_to<std::invoke_result_t<const M&, const DirectedGraph&>, Outcome>;

struct Exhaustive {};

struct Sampled {
  std::uint64_t seed = 0;
  std::uint64_t trials = 0;
};

using AuditMode = std::variant<Exhaustive, Sampled>;

struct AuditOptions {
  std::uint64_t cap = kDefaultEnumerationCap;
  unsigned jobs = 1;
  // Violations beyond this many are counted but not materialized.
  std::size_t max_reported = std::numeric_limits<std::size_t>::max();
};

namespace detail {

/// Runs fn(begin, end, worker) over [0, count) split into `jobs` contiguous
/// chunks. Results must be merged by the caller in worker order.
template <typename Fn>
void parallel_chunks(std::uint64_t count, unsigned jobs, Fn&& fn) {
  jobs = std::max(1u, jobs);
  if (jobs == 1 || count < 2 * jobs) {
    fn(std::uint64_t{0}, count, 0u);
    return;
  }
  std::vector<std::thread> workers;
  const std::uint64_t chunk = (count + jobs - 1) / jobs;
  for (unsigned w = 0; w < jobs; ++w) {
    const std::uint64_t begin = std::min<std::uint64_t>(count, w * chunk);
    const std::uint64_t end = std::min<std::uint64_t>(count, begin + chunk);
    workers.emplace_back([&fn, begin, end, w] { fn(begin, end, w); });
  }
  for (auto& t : workers) t.join();
}

inline unsigned effective_jobs(unsigned jobs, std::uint64_t count) {
  jobs = std::max(1u, jobs);
  return (count < 2ull * jobs) ? 1u : jobs;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Impartiality.

/// Two graphs that differ only in the out-edges of `deviator` while the
/// deviator's own selection status differs. Oriented so that graph_a has the
/// lexicographically smaller canonical serialization.
struct Violation {
  DirectedGraph graph_a;
  DirectedGraph graph_b;
  Vertex deviator = 0;
  bool selected_in_a = false;
  bool selected_in_b = false;
};

struct ImpartialityReport {
  std::vector<Violation> violations;
  std::uint64_t violation_count = 0;
  std::uint64_t graphs_examined = 0;
  std::uint64_t mechanism_runs = 0;
  // (graph, vertex, replacement out-set) triples compared, the base graph's
  // own out-set included.
  std::uint64_t deviations_examined = 0;
  AuditMode mode;

  bool ok() const { return violation_count == 0; }
};

namespace detail {

inline Violation make_violation(DirectedGraph a, DirectedGraph b, Vertex v, bool sel_a, bool sel_b) {
  if (serialize_graph(b) < serialize_graph(a)) {
    std::swap(a, b);
    std::swap(sel_a, sel_b);
  }
  return {std::move(a), std::move(b), v, sel_a, sel_b};
}

struct RawViolation {
  std::uint64_t a;
  std::uint64_t b;
  Vertex v;
  friend auto operator<=>(const RawViolation&, const RawViolation&) = default;
};

template <typename Mechanism>
ImpartialityReport impartiality_exhaustive(const Mechanism& m, const GraphClassSpec& spec, const AuditOptions& opt) {
  GraphEnumerator e(spec, opt.cap);
  const std::uint64_t size = e.size();
  ImpartialityReport report;
  report.mode = Exhaustive{};
  report.graphs_examined = size;
  report.mechanism_runs = size;
  report.deviations_examined = saturating_mul(saturating_mul(size, e.radix()), static_cast<std::uint64_t>(spec.n));
  if (size == 0) return report;

  // Outcome of every graph in the class, 0 meaning no selection.
  std::vector<std::uint8_t> selected(static_cast<std::size_t>(size), 0);
  parallel_chunks(size, opt.jobs, [&](std::uint64_t begin, std::uint64_t end, unsigned) {
    for (std::uint64_t i = begin; i < end; ++i) {
      Outcome o = m(e.graph_at(i));
      selected[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(o.selected.value_or(0));
    }
  });

  // Every deviation group (all graphs sharing the out-sets of all vertices but
  // v) is visited once; within a group, every pair with differing status for v
  // is a violation.
  const std::uint64_t radix = e.radix();
  const std::uint64_t groups = size / radix;
  const unsigned jobs = effective_jobs(opt.jobs, groups);
  std::vector<std::vector<RawViolation>> found(jobs);
  for (Vertex v = 1; v <= spec.n; ++v) {
    const std::uint64_t stride = e.stride(v);
    parallel_chunks(groups, jobs, [&](std::uint64_t begin, std::uint64_t end, unsigned w) {
      std::vector<std::uint64_t> in, out;
      for (std::uint64_t g = begin; g < end; ++g) {
        const std::uint64_t base = (g / stride) * stride * radix + g % stride;
        in.clear();
        out.clear();
        for (std::uint64_t c = 0; c < radix; ++c) {
          const std::uint64_t idx = base + c * stride;
          (selected[static_cast<std::size_t>(idx)] == v ? in : out).push_back(idx);
        }
        if (in.empty() || out.empty()) continue;
        for (auto a : in)
          for (auto b : out) found[w].push_back({std::min(a, b), std::max(a, b), v});
      }
    });
  }
  std::vector<RawViolation> all;
  for (auto& f : found) all.insert(all.end(), f.begin(), f.end());
  std::sort(all.begin(), all.end());
  report.violation_count = all.size();
  const std::size_t keep = std::min(all.size(), opt.max_reported);
  for (std::size_t i = 0; i < keep; ++i) {
    const auto& r = all[i];
    const bool sel_a = selected[static_cast<std::size_t>(r.a)] == r.v;
    report.violations.push_back(make_violation(e.graph_at(r.a), e.graph_at(r.b), r.v, sel_a, !sel_a));
  }
  return report;
}

template <typename Mechanism>
ImpartialityReport impartiality_sampled(const Mechanism& m, const GraphClassSpec& spec, Sampled mode,
                                        const AuditOptions& opt) {
  spec.validate();
  std::vector<std::vector<std::vector<Vertex>>> tables;
  for (Vertex v = 1; v <= spec.n; ++v) tables.push_back(admissible_out_sets(spec, v, opt.cap));

  using Key = std::pair<std::string, std::string>;
  struct Partial {
    std::map<Key, Violation> found;
    std::uint64_t runs = 0;
    std::uint64_t deviations = 0;
  };
  const unsigned jobs = effective_jobs(opt.jobs, mode.trials);
  std::vector<Partial> partial(jobs);
  parallel_chunks(mode.trials, jobs, [&](std::uint64_t begin, std::uint64_t end, unsigned w) {
    auto& mine = partial[w];
    for (std::uint64_t trial = begin; trial < end; ++trial) {
      const DirectedGraph g = sample_graph(spec, trial_seed(mode.seed, trial));
      const Outcome base = m(g);
      ++mine.runs;
      for (Vertex v = 1; v <= spec.n; ++v) {
        for (const auto& set : tables[static_cast<std::size_t>(v - 1)]) {
          ++mine.deviations;
          auto current = g.out_neighbors(v);
          if (std::equal(current.begin(), current.end(), set.begin(), set.end())) continue;
          DirectedGraph h = g.with_out_set(v, set);
          const Outcome dev = m(h);
          ++mine.runs;
          if (base.selects(v) == dev.selects(v)) continue;
          Violation viol = make_violation(g, std::move(h), v, base.selects(v), dev.selects(v));
          Key key{serialize_graph(viol.graph_a), serialize_graph(viol.graph_b)};
          mine.found.emplace(std::move(key), std::move(viol));
        }
      }
    }
  });
  std::map<Key, Violation> merged;
  ImpartialityReport report;
  report.mode = mode;
  report.graphs_examined = mode.trials;
  for (auto& p : partial) {
    report.mechanism_runs += p.runs;
    report.deviations_examined += p.deviations;
    merged.merge(p.found);
  }
  report.violation_count = merged.size();
  for (auto& [key, viol] : merged) {
    if (report.violations.size() >= opt.max_reported) break;
    report.violations.push_back(std::move(viol));
  }
  return report;
}

}  // namespace detail

/// Exhaustive mode examines every graph of the class and every deviation of
/// every vertex; sampled mode draws `trials` base graphs and checks all of
/// their deviations. Violations are deduplicated by unordered graph pair.
template <DeterministicMechanism Mechanism>
ImpartialityReport check_impartiality(const Mechanism& m, const GraphClassSpec& spec, AuditMode mode,
                                      const AuditOptions& opt = {}) {
  if (std::holds_alternative<Exhaustive>(mode)) return detail::impartiality_exhaustive(m, spec, opt);
  return detail::impartiality_sampled(m, spec, std::get<Sampled>(mode), opt);
}

inline ImpartialityReport check_impartiality(const MechanismId& id, const GraphClassSpec& spec, AuditMode mode,
                                             const AuditOptions& opt = {}) {
  validate_mechanism(id, spec.n);
  return check_impartiality(RegistryMechanism{id}, spec, mode, opt);
}

// ---------------------------------------------------------------------------
// Additive gap.

struct GapReport {
  int worst_gap = 0;
  // First graph (in enumeration or trial order) attaining worst_gap.
  std::optional<DirectedGraph> witness;
  std::uint64_t graphs_checked = 0;
  AuditMode mode;
};

template <DeterministicMechanism Mechanism>
GapReport measure_gap(const Mechanism& m, const GraphClassSpec& spec, AuditMode mode, const AuditOptions& opt = {}) {
  GapReport report;
  report.mode = mode;
  std::uint64_t count = 0;
  std::function<DirectedGraph(std::uint64_t)> graph_at;
  std::optional<GraphEnumerator> e;
  if (std::holds_alternative<Exhaustive>(mode)) {
    e.emplace(spec, opt.cap);
    count = e->size();
    graph_at = [&e](std::uint64_t i) { return e->graph_at(i); };
  } else {
    const auto s = std::get<Sampled>(mode);
    spec.validate();
    count = s.trials;
    graph_at = [&spec, s](std::uint64_t i) { return sample_graph(spec, trial_seed(s.seed, i)); };
  }
  report.graphs_checked = count;
  if (count == 0) return report;
  const unsigned jobs = detail::effective_jobs(opt.jobs, count);
  std::vector<std::pair<int, std::uint64_t>> best(jobs, {-1, 0});
  detail::parallel_chunks(count, jobs, [&](std::uint64_t begin, std::uint64_t end, unsigned w) {
    for (std::uint64_t i = begin; i < end; ++i) {
      DirectedGraph g = graph_at(i);
      int gap = additive_gap(g, m(g));
      if (gap > best[w].first) best[w] = {gap, i};
    }
  });
  std::pair<int, std::uint64_t> overall{-1, 0};
  for (auto b : best)
    if (b.first > overall.first || (b.first == overall.first && b.second < overall.second)) overall = b;
  report.worst_gap = overall.first;
  report.witness = graph_at(overall.second);
  return report;
}

inline GapReport measure_gap(const MechanismId& id, const GraphClassSpec& spec, AuditMode mode,
                             const AuditOptions& opt = {}) {
  validate_mechanism(id, spec.n);
  return measure_gap(RegistryMechanism{id}, spec, mode, opt);
}

// ---------------------------------------------------------------------------
// Deletion-trace invariants.

struct InvariantCheck {
  std::string name;
  bool passed = true;
  std::string counter_witness;

  void fail(std::string why) {
    if (passed) counter_witness = std::move(why);
    passed = false;
  }
};

struct TraceInvariantReport {
  // Bookkeeping: one deletion per iteration in order, deleted vertices were at
  // or above t, undeleted ones end below t, final degrees match the graph.
  InvariantCheck structure{"structure"};
  // indegree(v) - dstar(v) equals the number of in-neighbours deleted before v.
  InvariantCheck descent_count{"descent_count"};
  // For deleted u, v: u is deleted first iff (dstar(u), u) > (dstar(v), v).
  InvariantCheck deletion_order{"deletion_order"};
  // For deleted v with r = indegree(v) - dstar(v) >= 1 there are r distinct
  // in-neighbours u_0..u_{r-1} with (dstar(u_j), u_j) > (indegree(v) - j, v),
  // and every other in-neighbour u has (dstar(u), u) < (dstar(v), v).
  InvariantCheck in_neighbor_witnesses{"in_neighbor_witnesses"};

  bool ok() const {
    return structure.passed && descent_count.passed && deletion_order.passed && in_neighbor_witnesses.passed;
  }
  std::vector<const InvariantCheck*> checks() const {
    return {&structure, &descent_count, &deletion_order, &in_neighbor_witnesses};
  }
};

/// Verifies a trace against the graph by direct recomputation.
inline TraceInvariantReport verify_trace(const DirectedGraph& g, ThresholdPair p, const DeletionTrace& tr) {
  TraceInvariantReport rep;
  const int n = g.size();
  const auto in = g.indegrees();
  const auto in_nb = g.in_neighbors();
  auto vs = [](Vertex v) { return std::to_string(v); };

  if (tr.istar.size() != n || tr.dstar.size() != n || tr.final_degrees.size() != n || tr.deleted.size() != n) {
    rep.structure.fail("trace arrays do not have one entry per vertex");
    return rep;
  }
  if (tr.iteration_count != static_cast<int>(tr.deletions.size())) rep.structure.fail("iteration count differs from deletion count");
  VertexMap<int> seen(n, 0);
  for (std::size_t i = 0; i < tr.deletions.size(); ++i) {
    const auto& d = tr.deletions[i];
    if (d.iteration != static_cast<int>(i)) rep.structure.fail("deletion " + std::to_string(i) + " has iteration " + std::to_string(d.iteration));
    if (d.vertex < 1 || d.vertex > n) {
      rep.structure.fail("deleted vertex out of range");
      return rep;
    }
    if (++seen[d.vertex] > 1) rep.structure.fail("vertex " + vs(d.vertex) + " deleted twice");
    if (d.degree < p.lower) rep.structure.fail("vertex " + vs(d.vertex) + " deleted below t");
    if (tr.istar[d.vertex] != d.iteration || tr.dstar[d.vertex] != d.degree)
      rep.structure.fail("istar/dstar of vertex " + vs(d.vertex) + " disagree with the deletion list");
  }
  for (Vertex v = 1; v <= n; ++v) {
    int lost = 0;
    for (Vertex u : in_nb[v])
      if (seen[u]) ++lost;
    if (tr.final_degrees[v] != in[v] - lost) rep.structure.fail("final degree of vertex " + vs(v) + " is wrong");
    if ((seen[v] > 0) != tr.deleted[v]) rep.structure.fail("deleted flag of vertex " + vs(v) + " is wrong");
    if (!seen[v]) {
      if (tr.final_degrees[v] >= p.lower) rep.structure.fail("undeleted vertex " + vs(v) + " ends at or above t");
      if (tr.istar[v] != tr.iteration_count || tr.dstar[v] != tr.final_degrees[v])
        rep.structure.fail("undeleted vertex " + vs(v) + " has wrong istar/dstar convention");
    }
  }

  auto key = [&](Vertex v) { return std::pair<int, Vertex>{tr.dstar[v], v}; };

  for (const auto& d : tr.deletions) {
    const Vertex v = d.vertex;
    int earlier = 0;
    for (Vertex u : in_nb[v])
      if (tr.istar[u] < tr.istar[v]) ++earlier;
    if (in[v] - tr.dstar[v] != earlier)
      rep.descent_count.fail("vertex " + vs(v) + ": indegree " + std::to_string(in[v]) + " - dstar " + std::to_string(tr.dstar[v]) +
                             " != " + std::to_string(earlier) + " earlier-deleted in-neighbours");
  }

  for (const auto& a : tr.deletions)
    for (const auto& b : tr.deletions) {
      if (a.vertex == b.vertex) continue;
      const bool earlier = tr.istar[a.vertex] < tr.istar[b.vertex];
      const bool larger = key(a.vertex) > key(b.vertex);
      if (earlier != larger)
        rep.deletion_order.fail("vertices " + vs(a.vertex) + " and " + vs(b.vertex) + " are deleted out of (dstar, id) order");
    }

  for (const auto& d : tr.deletions) {
    const Vertex v = d.vertex;
    const int r = in[v] - tr.dstar[v];
    if (r < 1) continue;
    std::vector<Vertex> nb = in_nb[v];
    std::sort(nb.begin(), nb.end(), [&](Vertex x, Vertex y) { return key(x) > key(y); });
    // Thresholds (indegree(v) - j, v) decrease in j, so matching the sorted
    // in-neighbours greedily is optimal.
    if (static_cast<int>(nb.size()) < r) {
      rep.in_neighbor_witnesses.fail("vertex " + vs(v) + " has fewer than r in-neighbours");
      continue;
    }
    for (int j = 0; j < r; ++j) {
      if (!(key(nb[static_cast<std::size_t>(j)]) > std::pair<int, Vertex>{in[v] - j, v}))
        rep.in_neighbor_witnesses.fail("vertex " + vs(v) + ": no witness u_" + std::to_string(j));
    }
    for (std::size_t j = static_cast<std::size_t>(r); j < nb.size(); ++j) {
      if (!(key(nb[j]) < key(v)))
        rep.in_neighbor_witnesses.fail("vertex " + vs(v) + ": in-neighbour " + vs(nb[j]) + " is above (dstar(v), v) but not a witness");
    }
  }
  return rep;
}

inline TraceInvariantReport check_trace_invariants(const DirectedGraph& g, ThresholdPair p) {
  return verify_trace(g, p, run_twin_threshold(g, p).trace);
}

// ---------------------------------------------------------------------------
// Randomized mechanisms, lift and symmetrization.

struct ProbabilityVector {
  VertexMap<Rational> p;

  ProbabilityVector() = default;
  explicit ProbabilityVector(int n) : p(n, Rational(0)) {}

  int size() const { return p.size(); }
  Rational& operator[](Vertex v) { return p[v]; }
  const Rational& operator[](Vertex v) const { return p[v]; }

  Rational mass() const {
    Rational m = 0;
    for (const auto& x : p) m += x;
    return m;
  }

  bool valid() const {
    for (const auto& x : p)
      if (x < 0) return false;
    return mass() <= 1;
  }

  friend bool operator==(const ProbabilityVector&, const ProbabilityVector&) = default;
};

using RandomizedMechanism = std::function<ProbabilityVector(const DirectedGraph&)>;

inline constexpr int kDefaultFactorialCap = 7;

/// (f_rand(G))_v = 1 if v is selected by f on G, else 0.
template <typename Mechanism>
RandomizedMechanism lift_deterministic(Mechanism m) {
  return [m = std::move(m)](const DirectedGraph& g) {
    ProbabilityVector pv(g.size());
    Outcome o = m(g);
    if (o.selected) pv[*o.selected] = 1;
    return pv;
  };
}

inline RandomizedMechanism lift_deterministic(const MechanismId& id) { return lift_deterministic(RegistryMechanism{id}); }

/// (f_s(G))_v = (1/n!) sum over all permutations pi of (f(G_pi))_{pi(v)}.
inline ProbabilityVector symmetrize_eval(const RandomizedMechanism& m, const DirectedGraph& g,
                                         int factorial_cap = kDefaultFactorialCap) {
  const int n = g.size();
  if (n > factorial_cap)
    throw CapExceeded("symmetrization over " + std::to_string(n) + "! permutations exceeds the cap of " +
                      std::to_string(factorial_cap) + "!");
  ProbabilityVector sum(n);
  for_each_permutation(n, [&](const Permutation& pi) {
    const ProbabilityVector image = m(relabel(g, pi));
    for (Vertex v = 1; v <= n; ++v) sum[v] += image[pi(v)];
  });
  const Rational denom(factorial(n));
  for (auto& x : sum.p) x /= denom;
  return sum;
}

inline RandomizedMechanism symmetrize(RandomizedMechanism m, int factorial_cap = kDefaultFactorialCap) {
  return [m = std::move(m), factorial_cap](const DirectedGraph& g) { return symmetrize_eval(m, g, factorial_cap); };
}

/// Whole-class audit of a randomized mechanism and its symmetrization.
struct SymmetrizationReport {
  std::uint64_t graphs = 0;
  bool base_impartial = true;
  bool base_weakly_unanimous = true;
  bool symmetric = true;          // symmetry law of f_s under every permutation
  bool probabilities_valid = true;  // f_s entries >= 0 with mass <= 1
  bool symmetrized_impartial = true;
  bool symmetrized_weakly_unanimous = true;
  std::string counter_witness;

  // The lift must never lose impartiality or weak unanimity.
  bool inheritance_ok() const {
    return symmetric && probabilities_valid && (!base_impartial || symmetrized_impartial) &&
           (!base_weakly_unanimous || symmetrized_weakly_unanimous);
  }
};

namespace detail {

inline bool weak_unanimity_holds(const DirectedGraph& g, const VertexMap<int>& in, const ProbabilityVector& pv) {
  const int n = g.size();
  if (std::find(in.begin(), in.end(), n - 1) == in.end()) return true;
  Rational positive = 0;
  for (Vertex v = 1; v <= n; ++v)
    if (in[v] >= 1) positive += pv[v];
  return positive >= 1;
}

}  // namespace detail

/// Computes f and f_s exactly on every graph of the class (which must be
/// closed under relabeling; all G_n(k) and G+_n(k) are) and checks the
/// symmetry law, probability validity, impartiality and weak unanimity.
inline SymmetrizationReport audit_symmetrization(const RandomizedMechanism& m, const GraphClassSpec& spec,
                                                 std::uint64_t cap = kDefaultEnumerationCap,
                                                 int factorial_cap = kDefaultFactorialCap) {
  GraphEnumerator e(spec, cap);
  const int n = spec.n;
  if (n > factorial_cap) throw CapExceeded("symmetrization cap exceeded");
  const std::uint64_t size = e.size();
  SymmetrizationReport rep;
  rep.graphs = size;

  std::vector<Permutation> perms;
  for_each_permutation(n, [&](const Permutation& pi) { perms.push_back(pi); });

  std::vector<ProbabilityVector> base(static_cast<std::size_t>(size));
  std::vector<VertexMap<int>> indeg(static_cast<std::size_t>(size));
  std::vector<DirectedGraph> graphs;
  graphs.reserve(static_cast<std::size_t>(size));
  for (std::uint64_t i = 0; i < size; ++i) {
    graphs.push_back(e.graph_at(i));
    base[static_cast<std::size_t>(i)] = m(graphs.back());
    indeg[static_cast<std::size_t>(i)] = graphs.back().indegrees();
  }
  // relabeled[i][p] = index of G_i relabeled by perms[p].
  std::vector<std::vector<std::uint64_t>> relabeled(static_cast<std::size_t>(size));
  for (std::uint64_t i = 0; i < size; ++i) {
    auto& row = relabeled[static_cast<std::size_t>(i)];
    for (const auto& pi : perms) {
      auto idx = e.index_of(relabel(graphs[static_cast<std::size_t>(i)], pi));
      if (!idx) throw std::invalid_argument("graph class is not closed under relabeling");
      row.push_back(*idx);
    }
  }
  const Rational denom(factorial(n));
  std::vector<ProbabilityVector> sym(static_cast<std::size_t>(size), ProbabilityVector(n));
  for (std::uint64_t i = 0; i < size; ++i) {
    auto& out = sym[static_cast<std::size_t>(i)];
    for (std::size_t p = 0; p < perms.size(); ++p) {
      const auto& image = base[static_cast<std::size_t>(relabeled[static_cast<std::size_t>(i)][p])];
      for (Vertex v = 1; v <= n; ++v) out[v] += image[perms[p](v)];
    }
    for (auto& x : out.p) x /= denom;
  }

  auto note = [&](const std::string& why) {
    if (rep.counter_witness.empty()) rep.counter_witness = why;
  };

  for (std::uint64_t i = 0; i < size; ++i) {
    const auto& fs = sym[static_cast<std::size_t>(i)];
    const auto& g = graphs[static_cast<std::size_t>(i)];
    if (!fs.valid()) {
      rep.probabilities_valid = false;
      note("invalid probabilities on\n" + serialize_graph(g));
    }
    for (std::size_t p = 0; p < perms.size(); ++p) {
      const auto& other = sym[static_cast<std::size_t>(relabeled[static_cast<std::size_t>(i)][p])];
      for (Vertex v = 1; v <= n; ++v) {
        if (other[perms[p](v)] != fs[v]) {
          rep.symmetric = false;
          note("symmetry law fails on\n" + serialize_graph(g));
        }
      }
    }
    if (!detail::weak_unanimity_holds(g, indeg[static_cast<std::size_t>(i)], base[static_cast<std::size_t>(i)]))
      rep.base_weakly_unanimous = false;
    if (!detail::weak_unanimity_holds(g, indeg[static_cast<std::size_t>(i)], fs)) {
      rep.symmetrized_weakly_unanimous = false;
      note("symmetrization not weakly unanimous on\n" + serialize_graph(g));
    }
  }

  // Impartiality over deviation groups.
  const std::uint64_t radix = e.radix();
  for (Vertex v = 1; v <= n && size > 0; ++v) {
    const std::uint64_t stride = e.stride(v);
    for (std::uint64_t grp = 0; grp < size / radix; ++grp) {
      const std::uint64_t first = (grp / stride) * stride * radix + grp % stride;
      for (std::uint64_t c = 1; c < radix; ++c) {
        const std::uint64_t idx = first + c * stride;
        if (base[static_cast<std::size_t>(idx)][v] != base[static_cast<std::size_t>(first)][v]) rep.base_impartial = false;
        if (sym[static_cast<std::size_t>(idx)][v] != sym[static_cast<std::size_t>(first)][v]) {
          rep.symmetrized_impartial = false;
          note("symmetrization not impartial for vertex " + std::to_string(v));
        }
      }
    }
  }
  return rep;
}

}  // namespace impsel

#endif  // IMPSEL_AUDIT_HPP_
