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

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on failure.

#include <cstdint>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "impsel/impsel.hpp"
#include "../test_util.hpp"

namespace impsel {
namespace {

struct Outcomes {
  bool ok = true;
  std::ostringstream detail;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      if (!ok) detail << "; ";
      detail << what;
      ok = false;
    }
  }
};

GraphClassSpec g_n1(int n) { return GraphClassSpec::bounded(n, 1); }

ImpartialityReport exhaustive(const MechanismId& m, const GraphClassSpec& spec) {
  AuditOptions opt;
  opt.max_reported = 64;
  return check_impartiality(m, spec, Exhaustive{}, opt);
}

GapReport gap(const MechanismId& m, const GraphClassSpec& spec) { return measure_gap(m, spec, Exhaustive{}); }

void certified_thresholds_are_impartial(Outcomes& o) {
  auto r5 = exhaustive(mech::TwinThreshold{{4, 1}}, g_n1(5));
  o.require(r5.graphs_examined == 3125, "G_5(1) should have 3125 graphs");
  o.require(r5.deviations_examined == 78125, "expected 78125 deviation checks on G_5(1)");
  o.require(r5.ok(), "twin:4,1 has " + std::to_string(r5.violation_count) + " violations on G_5(1)");
  auto r6 = exhaustive(mech::TwinThreshold{{5, 1}}, g_n1(6));
  o.require(r6.graphs_examined == 46656, "G_6(1) should have 46656 graphs");
  o.require(r6.ok(), "twin:5,1 has " + std::to_string(r6.violation_count) + " violations on G_6(1)");
  auto v = validate_thresholds(5, 1, {4, 1});
  o.require(v.certificate_lhs == 14 && v.certificate_rhs == 7 && v.impartial_certified, "certificate 14 > 7 at n=5");
}

void naive_mechanisms_violate(Outcomes& o) {
  o.require(!exhaustive(mech::MaxIndegreeNaive{}, g_n1(4)).ok(), "max-naive shows no violation on G_4(1)");
  for (const char* name : {"naive-iter:2", "naive-sim:2"}) {
    bool any = false;
    for (int n = 4; n <= 6; ++n) any |= !exhaustive(parse_mechanism(name), g_n1(n)).ok();
    o.require(any, std::string(name) + " shows no violation for n in 4..6");
  }
  struct Pin {
    const char* mechanism;
    const char* stem;
    int n;
  };
  for (Pin p : {Pin{"naive-iter:2", "naive_iter2_n4", 4}, Pin{"naive-iter:2", "naive_iter2_n5", 5},
                Pin{"naive-sim:2", "naive_sim2_n5", 5}, Pin{"naive-sim:2", "naive_sim2_n6", 6}}) {
    auto a = testing::load_fixture(std::string(p.stem) + "_a.g");
    auto b = testing::load_fixture(std::string(p.stem) + "_b.g");
    auto m = parse_mechanism(p.mechanism);
    o.require(a.agrees_outside(b, 1) && class_membership(a, g_n1(p.n)) && class_membership(b, g_n1(p.n)) &&
                  select(m, a).selects(1) != select(m, b).selects(1),
              std::string("pinned witness ") + p.stem + " no longer flips");
  }
}

void additive_guarantees(Outcomes& o) {
  for (int n = 3; n <= 5; ++n) {
    auto r = gap(mech::MajorityThreshold{}, g_n1(n));
    o.require(r.worst_gap <= n / 2, "majority gap " + std::to_string(r.worst_gap) + " on G_" + std::to_string(n) + "(1)");
  }
  auto twin = gap(mech::TwinThreshold{{4, 1}}, g_n1(5));
  o.require(twin.worst_gap <= 4 + 5 / 1 - 2, "twin:4,1 gap " + std::to_string(twin.worst_gap) + " exceeds 7");
  auto follow = gap(mech::FollowFixed{1}, GraphClassSpec::unbounded(4, true));
  o.require(follow.graphs_checked == 2401, "G+_4 should have 2401 graphs");
  o.require(follow.worst_gap == 2, "follow:1 worst gap is " + std::to_string(follow.worst_gap) + ", expected 2");
}

void k1_planner(Outcomes& o) {
  for (int n : {4, 9, 16, 25, 100, 10000}) {
    auto p = plan_thresholds_k1(n);
    o.require(p.alpha_bound * p.alpha_bound <= 8LL * n, "alpha^2 > 8n at n=" + std::to_string(n));
    auto v = validate_thresholds(n, 1, p.thresholds);
    o.require(v.impartial_certified && !p.degenerate, "plan not certified at n=" + std::to_string(n));
  }
  auto p = plan_thresholds_k1(100);
  o.require(p.thresholds.lower == 10 && p.thresholds.upper == 16 && p.alpha_bound == 24, "n=100 plan is not (10,16,24)");
}

void trace_invariants(Outcomes& o) {
  struct Case {
    int n, k;
  };
  const std::uint64_t seed = 0xACCE55;
  for (Case c : {Case{20, 1}, Case{30, 2}, Case{50, 3}}) {
    const PlanReport plan = c.k == 1 ? plan_thresholds_k1(c.n) : plan_thresholds_general(c.n, c.k, 0.0, c.k);
    auto spec = GraphClassSpec::bounded(c.n, c.k);
    int failures = 0;
    for (std::uint64_t t = 0; t < 10000; ++t) {
      DirectedGraph g = sample_graph(spec, trial_seed(seed + static_cast<std::uint64_t>(c.n), t));
      if (!check_trace_invariants(g, plan.thresholds).ok()) ++failures;
    }
    o.require(failures == 0, std::to_string(failures) + " trace failures at (n,k)=(" + std::to_string(c.n) + "," +
                                 std::to_string(c.k) + ")");
  }
}

void third_plus_one_variant(Outcomes& o) {
  for (int n = 4; n <= 7; ++n) {
    const int t = n / 3 + 1;
    const MechanismId m = mech::TwinThreshold{{t + 1, t}};
    auto r = exhaustive(m, g_n1(n));
    o.require(r.ok(), "variant has " + std::to_string(r.violation_count) + " violations at n=" + std::to_string(n));
    auto g = gap(m, g_n1(n));
    o.require(g.worst_gap <= n / 3 + 2, "variant gap " + std::to_string(g.worst_gap) + " at n=" + std::to_string(n));
  }
}

std::uint64_t count_weak_orders(int n) {
  std::vector<int> f(static_cast<std::size_t>(n), 0);
  std::uint64_t count = 0;
  for (;;) {
    std::set<int> image(f.begin(), f.end());
    if (*image.rbegin() == static_cast<int>(image.size()) - 1) ++count;
    int i = 0;
    while (i < n && ++f[static_cast<std::size_t>(i)] == n) f[static_cast<std::size_t>(i++)] = 0;
    if (i == n) return count;
  }
}

void partition_lattice(Outcomes& o) {
  for (int n = 1; n <= 15; ++n) o.require(fubini(n).odd, "fubini(" + std::to_string(n) + ") is even");
  std::vector<std::pair<std::vector<int>, int>> table;
  for (int n = 2; n <= 3; ++n)
    for (const auto& p : enumerate_compositions(n)) table.emplace_back(p.parts(), static_cast<int>(lambda_of(p)));
  const std::vector<std::pair<std::vector<int>, int>> expected{
      {{1, 1}, 2}, {{2}, 1}, {{1, 1, 1}, 6}, {{1, 2}, 3}, {{2, 1}, 3}, {{3}, 1}};
  o.require(table == expected, "composition/multiplicity table for n=2,3 differs");
  for (int n = 1; n <= 6; ++n)
    o.require(fubini(n).value == count_weak_orders(n), "fubini disagrees with weak-order count at n=" + std::to_string(n));
}

void certificate(Outcomes& o) {
  for (int n = 2; n <= 8; ++n) {
    auto c = build_certificate(n);
    o.require(c.cancellation_ok, "no cancellation at n=" + std::to_string(n));
    o.require(c.rhs_total <= -1 && c.rhs_odd, "rhs_total " + to_string(c.rhs_total) + " at n=" + std::to_string(n));
  }
  auto signs = [](int n) {
    std::vector<BigInt> m;
    for (const auto& r : build_certificate(n).rows) m.push_back(r.multiplier());
    return m;
  };
  auto matches_up_to_sign = [](const std::vector<BigInt>& got, const std::vector<int>& want) {
    if (got.size() != want.size()) return false;
    bool same = true, flipped = true;
    for (std::size_t i = 0; i < got.size(); ++i) {
      same = same && got[i] == want[i];
      flipped = flipped && got[i] == -want[i];
    }
    return same || flipped;
  };
  o.require(matches_up_to_sign(signs(3), {-6, 3, 3, -1}), "n=3 multipliers differ");
  o.require(matches_up_to_sign(signs(4), {-24, 12, 12, -4, 12, -6, -4, 1}), "n=4 multipliers differ");
}

void transition_structure(Outcomes& o) {
  for (int n = 2; n <= 8; ++n) {
    auto r = verify_transition_structure(n);
    o.require(r.unique_partner && r.bipartite && r.coefficient_identity,
              "transition structure fails at n=" + std::to_string(n) + (r.failures.empty() ? "" : ": " + r.failures.front()));
  }
}

void symmetrization(Outcomes& o) {
  for (int n = 2; n <= 4; ++n) {
    const int th = std::min(2, n - 1);
    const std::vector<MechanismId> registry{mech::Never{},          mech::MaxIndegreeNaive{},   mech::FollowFixed{1},
                                            mech::MajorityThreshold{}, mech::NaiveIterated{th}, mech::NaiveSimultaneous{th},
                                            mech::TwinThreshold{{th, 1}}};
    for (const auto& spec : {GraphClassSpec::bounded(n, 1), GraphClassSpec::unbounded(n)})
      for (const auto& m : registry) {
        auto r = audit_symmetrization(lift_deterministic(m), spec);
        o.require(r.symmetric && r.probabilities_valid && (!r.base_impartial || r.symmetrized_impartial),
                  mechanism_name(m) + " on " + spec.describe());
      }
  }
}

void reductions(Outcomes& o) {
  for (int k = 1; k + 1 <= 6; ++k)
    for (const auto& p : enumerate_compositions(k + 1))
      for (int n = k + 1; n <= 10; ++n) {
        DirectedGraph g = graph_of_composition(p);
        DirectedGraph h = reduce_add_isolated(g, n);
        o.require(class_membership(h, GraphClassSpec::bounded(n, k)) && max_indegree(h) == max_indegree(g),
                  "add-isolated fails for " + p.str() + " n=" + std::to_string(n));
      }
  for (int k = 2; k <= 6; ++k)
    for (const auto& p : enumerate_compositions(k))
      for (int n = k + 1; n <= 10; ++n) {
        DirectedGraph g = graph_of_composition(p);
        DirectedGraph h = reduce_add_inneighbors(g, n);
        auto in_g = g.indegrees();
        auto in_h = h.indegrees();
        bool good = class_membership(h, GraphClassSpec::unbounded(n, true)) && in_h[k + 1] <= 1;
        for (Vertex u = k + 1; u <= n; ++u) good = good && h.outdegree(u) == k && (u == k + 1 || in_h[u] == 0);
        for (Vertex v = 1; v <= k; ++v) good = good && in_h[v] - in_g[v] == n - k;
        o.require(good, "add-inneighbors fails for " + p.str() + " n=" + std::to_string(n));
      }
}

}  // namespace
}  // namespace impsel

int main() {
  struct Criterion {
    const char* name;
    std::function<void(impsel::Outcomes&)> check;
  };
  const std::vector<Criterion> criteria{
      {"certified thresholds pass exhaustive impartiality on G_5(1) and G_6(1)", impsel::certified_thresholds_are_impartial},
      {"naive mechanisms show impartiality violations; pinned witnesses flip", impsel::naive_mechanisms_violate},
      {"worst gaps: majority <= n/2, twin:4,1 <= 7, follow:1 on G+_4 exactly 2", impsel::additive_guarantees},
      {"k=1 planner: alpha^2 <= 8n and certified; n=100 gives (10,16,24)", impsel::k1_planner},
      {"trace invariants on 3 x 10^4 seeded graphs with planned thresholds", impsel::trace_invariants},
      {"t = floor(n/3)+1, T = t+1 variant: impartial and gap <= floor(n/3)+2, n=4..7", impsel::third_plus_one_variant},
      {"fubini parity, multiplicity table, weak-order cross-check", impsel::partition_lattice},
      {"infeasibility certificate n=2..8 and multipliers for n=3,4", impsel::certificate},
      {"transition structure n=2..8", impsel::transition_structure},
      {"symmetrized registry mechanisms for n <= 4", impsel::symmetrization},
      {"reductions into G_n(k) and G+_n", impsel::reductions},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    impsel::Outcomes o;
    try {
      criteria[i].check(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    std::cout << (o.ok ? "PASS" : "FAIL") << " [" << i + 1 << "] " << criteria[i].name;
    if (!o.ok) std::cout << " -- " << o.detail.str();
    std::cout << "\n";
    failed += !o.ok;
  }
  std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << "/" << criteria.size() << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
