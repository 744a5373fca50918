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

#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "impsel/impsel.hpp"

namespace impsel::cli {
namespace {

using Json = nlohmann::ordered_json;

// Raised for problems the parser cannot see (bad combinations, bad files).
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ClassFlags {
  int n = 0;
  std::string k = "unbounded";
  bool positive = false;

  GraphClassSpec spec() const {
    GraphClassSpec s;
    s.n = n;
    if (k != "unbounded") {
      try {
        std::size_t used = 0;
        s.k = std::stoi(k, &used);
        if (used != k.size()) throw std::invalid_argument(k);
      } catch (const std::logic_error&) {
        throw UsageError("--k expects an integer or 'unbounded', got '" + k + "'");
      }
    }
    s.require_positive_outdegree = positive;
    s.validate();
    return s;
  }
};

struct ModeFlags {
  bool exhaustive = false;
  std::optional<std::uint64_t> samples;
  std::optional<std::uint64_t> seed;

  AuditMode mode() const {
    if (samples) {
      if (!seed) throw UsageError("--samples needs --seed");
      return Sampled{*seed, *samples};
    }
    return Exhaustive{};
  }
};

Json class_json(const GraphClassSpec& s) {
  Json j;
  j["n"] = s.n;
  if (s.k)
    j["k"] = *s.k;
  else
    j["k"] = "unbounded";
  j["positive_outdegree"] = s.require_positive_outdegree;
  return j;
}

Json mode_json(const AuditMode& m) {
  if (std::holds_alternative<Exhaustive>(m)) return "exhaustive";
  const auto& s = std::get<Sampled>(m);
  return Json{{"sampled", true}, {"seed", s.seed}, {"trials", s.trials}};
}

std::string mode_text(const AuditMode& m) {
  if (std::holds_alternative<Exhaustive>(m)) return "exhaustive";
  const auto& s = std::get<Sampled>(m);
  return "sampled seed=" + std::to_string(s.seed) + " trials=" + std::to_string(s.trials);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

DirectedGraph load_graph(const std::string& path) {
  try {
    return parse_graph(read_file(path));
  } catch (const ParseError& e) {
    throw UsageError(path + ":" + std::to_string(e.line()) + ": " + e.what());
  }
}

Json selected_json(const Outcome& o) {
  Json a = Json::array();
  if (o.selected) a.push_back(*o.selected);
  return a;
}

void indent(std::ostream& out, const std::string& text, const std::string& prefix) {
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out << prefix << line << "\n";
}

// ---------------------------------------------------------------------------

struct RunArgs {
  std::string graph;
  std::optional<int> upper, lower;
  std::string mechanism;
  bool json = false;
  bool trace = false;
};

int do_run(const RunArgs& a, std::ostream& out) {
  const DirectedGraph g = load_graph(a.graph);
  const int n = g.size();
  MechanismId m;
  if (!a.mechanism.empty()) {
    if (a.upper || a.lower) throw UsageError("--mechanism cannot be combined with --T/--t");
    m = parse_mechanism(a.mechanism);
  } else {
    if (!a.upper || !a.lower) throw UsageError("run needs --T and --t, or --mechanism");
    m = mech::TwinThreshold{{*a.upper, *a.lower}};
  }
  validate_mechanism(m, n);
  const auto* twin = std::get_if<mech::TwinThreshold>(&m);
  std::optional<TwinThresholdRun> run;
  Outcome o;
  if (twin && n > 1) {
    run = run_twin_threshold(g, twin->thresholds);
    o = run->outcome;
  } else {
    o = select(m, g);
  }
  const int delta = max_indegree(g);
  if (a.json) {
    Json j;
    j["n"] = n;
    j["mechanism"] = mechanism_name(m);
    j["T"] = twin ? Json(twin->thresholds.upper) : Json();
    j["t"] = twin ? Json(twin->thresholds.lower) : Json();
    j["selected"] = selected_json(o);
    j["selected_indegree"] = o.selected_indegree;
    j["max_indegree"] = delta;
    j["gap"] = additive_gap(g, o);
    Json tr = Json::array();
    Json fin = Json::array();
    if (run) {
      for (const auto& d : run->trace.deletions) tr.push_back({{"i", d.iteration}, {"v", d.vertex}, {"dstar", d.degree}});
      for (int x : run->trace.final_degrees) fin.push_back(x);
    } else {
      for (int x : g.indegrees()) fin.push_back(x);
    }
    j["trace"] = tr;
    j["final_degrees"] = fin;
    out << j.dump(2) << "\n";
    return kExitOk;
  }
  out << "mechanism  " << mechanism_name(m) << "\n";
  out << "n          " << n << "\n";
  out << "selected   " << (o.selected ? std::to_string(*o.selected) : std::string("none")) << "\n";
  out << "indegree   " << o.selected_indegree << "\n";
  out << "max        " << delta << "\n";
  out << "gap        " << additive_gap(g, o) << "\n";
  if (a.trace && run) {
    out << "deletions  " << run->trace.deletions.size() << "\n";
    for (const auto& d : run->trace.deletions)
      out << "  i=" << d.iteration << " v=" << d.vertex << " dstar=" << d.degree << "\n";
    out << "final     ";
    for (int x : run->trace.final_degrees) out << " " << x;
    out << "\n";
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct PlanArgs {
  int n = 0;
  std::string k = "1";
  std::optional<double> kappa, c;
  std::optional<int> upper, lower;
  bool json = false;
};

int do_plan(const PlanArgs& a, std::ostream& out) {
  int k = 0;
  try {
    std::size_t used = 0;
    k = std::stoi(a.k, &used);
    if (used != a.k.size()) throw std::invalid_argument(a.k);
  } catch (const std::logic_error&) {
    throw UsageError("plan needs an integer --k");
  }
  PlanReport r;
  std::string kind;
  if (a.upper || a.lower) {
    if (!a.upper || !a.lower) throw UsageError("validation needs both --T and --t");
    if (a.kappa || a.c) throw UsageError("--T/--t cannot be combined with --kappa/--c");
    r = validate_thresholds(a.n, k, {*a.upper, *a.lower});
    kind = "validate";
  } else if (a.kappa || a.c || k > 1) {
    // Without explicit parameters, k is covered by kappa = 0 and c = k.
    r = plan_thresholds_general(a.n, k, a.kappa.value_or(0.0), a.c.value_or(static_cast<double>(k)));
    kind = "general";
  } else {
    r = plan_thresholds_k1(a.n);
    kind = "k1";
  }
  const std::string mech_name =
      r.degenerate ? "never" : "twin:" + std::to_string(r.thresholds.upper) + "," + std::to_string(r.thresholds.lower);
  if (a.json) {
    Json j;
    j["plan"] = kind;
    j["n"] = r.n;
    j["k"] = r.k;
    j["T"] = r.thresholds.upper;
    j["t"] = r.thresholds.lower;
    j["certificate_lhs"] = r.certificate_lhs;
    j["certificate_rhs"] = r.certificate_rhs;
    j["certified"] = r.impartial_certified;
    j["alpha"] = r.alpha_bound;
    j["degenerate"] = r.degenerate;
    j["mechanism"] = mech_name;
    out << j.dump(2) << "\n";
    return kExitOk;
  }
  out << "plan=" << kind << " n=" << r.n << " k=" << r.k << "\n";
  out << "T=" << r.thresholds.upper << " t=" << r.thresholds.lower << "\n";
  out << "lhs=" << r.certificate_lhs << " rhs=" << r.certificate_rhs
      << " certified=" << (r.impartial_certified ? "true" : "false") << "\n";
  out << "alpha=" << r.alpha_bound << " degenerate=" << (r.degenerate ? "true" : "false") << "\n";
  out << "mechanism=" << mech_name << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct AuditArgs {
  ClassFlags cls;
  ModeFlags mode;
  std::string mechanism;
  std::optional<int> upper, lower;
  std::string graph;
  unsigned jobs = 1;
  std::uint64_t cap = kDefaultEnumerationCap;
  std::size_t max_reported = 20;
  int factorial_cap = kDefaultFactorialCap;
  bool json = false;
};

MechanismId audit_mechanism(const AuditArgs& a, int n) {
  if (a.mechanism.empty()) throw UsageError("audit needs --mechanism");
  MechanismId m = parse_mechanism(a.mechanism);
  validate_mechanism(m, n);
  return m;
}

AuditOptions audit_options(const AuditArgs& a) {
  AuditOptions o;
  o.cap = a.cap;
  o.jobs = a.jobs;
  o.max_reported = a.max_reported;
  return o;
}

int do_audit_impartiality(const AuditArgs& a, std::ostream& out) {
  const GraphClassSpec spec = a.cls.spec();
  const MechanismId m = audit_mechanism(a, spec.n);
  const AuditMode mode = a.mode.mode();
  const ImpartialityReport r = check_impartiality(m, spec, mode, audit_options(a));
  if (a.json) {
    Json j;
    j["audit"] = "impartiality";
    j["mechanism"] = mechanism_name(m);
    j["class"] = class_json(spec);
    j["mode"] = mode_json(mode);
    j["graphs_examined"] = r.graphs_examined;
    j["mechanism_runs"] = r.mechanism_runs;
    j["deviations_examined"] = r.deviations_examined;
    j["violation_count"] = r.violation_count;
    Json vs = Json::array();
    for (const auto& v : r.violations)
      vs.push_back({{"deviator", v.deviator},
                    {"graph_a", serialize_graph(v.graph_a)},
                    {"graph_b", serialize_graph(v.graph_b)},
                    {"selected_in_a", v.selected_in_a},
                    {"selected_in_b", v.selected_in_b}});
    j["violations"] = vs;
    j["ok"] = r.ok();
    out << j.dump(2) << "\n";
  } else {
    out << "impartiality " << mechanism_name(m) << " on " << spec.describe() << " (" << mode_text(mode) << ")\n";
    out << "graphs examined  " << r.graphs_examined << "\n";
    out << "mechanism runs   " << r.mechanism_runs << "\n";
    out << "deviations       " << r.deviations_examined << "\n";
    out << "violations       " << r.violation_count << "\n";
    for (std::size_t i = 0; i < r.violations.size(); ++i) {
      const auto& v = r.violations[i];
      out << "violation " << i + 1 << ": vertex " << v.deviator << " is " << (v.selected_in_a ? "selected" : "not selected")
          << " in A and " << (v.selected_in_b ? "selected" : "not selected") << " in B\n";
      out << "  A:\n";
      indent(out, serialize_graph(v.graph_a), "    ");
      out << "  B:\n";
      indent(out, serialize_graph(v.graph_b), "    ");
    }
    if (r.violations.size() < r.violation_count)
      out << "(" << r.violation_count - r.violations.size() << " more not shown)\n";
    out << (r.ok() ? "PASS" : "FAIL") << "\n";
  }
  return r.ok() ? kExitOk : kExitViolations;
}

int do_audit_gap(const AuditArgs& a, std::ostream& out) {
  const GraphClassSpec spec = a.cls.spec();
  const MechanismId m = audit_mechanism(a, spec.n);
  const AuditMode mode = a.mode.mode();
  const GapReport r = measure_gap(m, spec, mode, audit_options(a));
  if (a.json) {
    Json j;
    j["audit"] = "gap";
    j["mechanism"] = mechanism_name(m);
    j["class"] = class_json(spec);
    j["mode"] = mode_json(mode);
    j["graphs_checked"] = r.graphs_checked;
    j["worst_gap"] = r.worst_gap;
    j["witness"] = r.witness ? Json(serialize_graph(*r.witness)) : Json();
    out << j.dump(2) << "\n";
  } else {
    out << "gap " << mechanism_name(m) << " on " << spec.describe() << " (" << mode_text(mode) << ")\n";
    out << "graphs checked  " << r.graphs_checked << "\n";
    out << "worst gap       " << r.worst_gap << "\n";
    if (r.witness) {
      out << "witness:\n";
      indent(out, serialize_graph(*r.witness), "  ");
    }
  }
  return kExitOk;
}

int do_audit_trace(const AuditArgs& a, std::ostream& out) {
  std::vector<DirectedGraph> graphs;
  ThresholdPair p;
  std::string source;
  if (!a.graph.empty()) {
    graphs.push_back(load_graph(a.graph));
    if (!a.upper || !a.lower) throw UsageError("audit trace on a graph file needs --T and --t");
    p = {*a.upper, *a.lower};
    source = a.graph;
  } else {
    const GraphClassSpec spec = a.cls.spec();
    if (a.upper || a.lower) {
      if (!a.upper || !a.lower) throw UsageError("give both --T and --t");
      p = {*a.upper, *a.lower};
    } else {
      const int k = spec.max_outdegree();
      const PlanReport plan = k == 1 ? plan_thresholds_k1(spec.n) : plan_thresholds_general(spec.n, k, 0.0, k);
      p = plan.thresholds;
    }
    const AuditMode mode = a.mode.mode();
    if (std::holds_alternative<Exhaustive>(mode)) {
      graphs = enumerate_graphs(spec, a.cap);
    } else {
      const auto s = std::get<Sampled>(mode);
      for (std::uint64_t i = 0; i < s.trials; ++i) graphs.push_back(sample_graph(spec, trial_seed(s.seed, i)));
    }
    source = spec.describe() + " (" + mode_text(mode) + ")";
  }
  std::size_t failures = 0;
  std::optional<std::pair<std::size_t, TraceInvariantReport>> first_failure;
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    auto rep = check_trace_invariants(graphs[i], p);
    if (!rep.ok()) {
      ++failures;
      if (!first_failure) first_failure.emplace(i, std::move(rep));
    }
  }
  if (a.json) {
    Json j;
    j["audit"] = "trace";
    j["source"] = source;
    j["T"] = p.upper;
    j["t"] = p.lower;
    j["graphs_checked"] = graphs.size();
    j["failures"] = failures;
    if (first_failure) {
      Json checks = Json::array();
      for (const auto* c : first_failure->second.checks())
        checks.push_back({{"name", c->name}, {"passed", c->passed}, {"counter_witness", c->counter_witness}});
      j["first_failure"] = {{"graph", serialize_graph(graphs[first_failure->first])}, {"checks", checks}};
    }
    j["ok"] = failures == 0;
    out << j.dump(2) << "\n";
  } else {
    out << "trace invariants on " << source << " with T=" << p.upper << " t=" << p.lower << "\n";
    out << "graphs checked  " << graphs.size() << "\n";
    out << "failures        " << failures << "\n";
    if (first_failure) {
      for (const auto* c : first_failure->second.checks())
        out << "  " << std::left << std::setw(22) << c->name << (c->passed ? "ok" : "FAIL  " + c->counter_witness) << "\n";
      indent(out, serialize_graph(graphs[first_failure->first]), "  ");
    }
    out << (failures == 0 ? "PASS" : "FAIL") << "\n";
  }
  return failures == 0 ? kExitOk : kExitViolations;
}

int do_audit_symmetry(const AuditArgs& a, std::ostream& out) {
  const GraphClassSpec spec = a.cls.spec();
  const MechanismId m = audit_mechanism(a, spec.n);
  const auto r = audit_symmetrization(lift_deterministic(m), spec, a.cap, a.factorial_cap);
  auto yes = [](bool b) { return b ? "true" : "false"; };
  if (a.json) {
    Json j;
    j["audit"] = "symmetry";
    j["mechanism"] = mechanism_name(m);
    j["class"] = class_json(spec);
    j["graphs"] = r.graphs;
    j["base_impartial"] = r.base_impartial;
    j["base_weakly_unanimous"] = r.base_weakly_unanimous;
    j["symmetric"] = r.symmetric;
    j["probabilities_valid"] = r.probabilities_valid;
    j["symmetrized_impartial"] = r.symmetrized_impartial;
    j["symmetrized_weakly_unanimous"] = r.symmetrized_weakly_unanimous;
    j["ok"] = r.inheritance_ok();
    out << j.dump(2) << "\n";
  } else {
    out << "symmetrization of " << mechanism_name(m) << " on " << spec.describe() << "\n";
    out << "graphs                        " << r.graphs << "\n";
    out << "base impartial                " << yes(r.base_impartial) << "\n";
    out << "base weakly unanimous         " << yes(r.base_weakly_unanimous) << "\n";
    out << "symmetric                     " << yes(r.symmetric) << "\n";
    out << "probabilities valid           " << yes(r.probabilities_valid) << "\n";
    out << "symmetrized impartial         " << yes(r.symmetrized_impartial) << "\n";
    out << "symmetrized weakly unanimous  " << yes(r.symmetrized_weakly_unanimous) << "\n";
    if (!r.counter_witness.empty()) indent(out, r.counter_witness, "  ");
    out << (r.inheritance_ok() ? "PASS" : "FAIL") << "\n";
  }
  return r.inheritance_ok() ? kExitOk : kExitViolations;
}

// ---------------------------------------------------------------------------

struct PartitionArgs {
  int n = 0;
  bool certificate = false;
  bool transitions = false;
  bool json = false;
};

int do_partitions(const PartitionArgs& a, std::ostream& out) {
  const auto comps = enumerate_compositions(a.n);
  const FubiniValue fub = fubini(a.n);
  std::optional<Certificate> cert;
  if (a.n >= 2) cert = build_certificate(a.n);
  std::optional<TransitionStructureReport> structure;
  std::vector<TransitionEdge> edges;
  if (a.transitions) {
    structure = verify_transition_structure(a.n);
    edges = transitions(a.n);
  }
  auto sense_name = [](LinearRow::Sense s) { return s == LinearRow::Sense::kAtMost ? "at-most-one" : "at-least-one"; };
  bool ok = true;
  if (a.certificate) ok = ok && cert && cert->cancellation_ok && cert->rhs_total < 0 && cert->rhs_odd;
  if (structure) ok = ok && structure->ok();

  if (a.json) {
    Json j;
    j["n"] = a.n;
    Json rows = Json::array();
    for (std::size_t i = 0; i < comps.size(); ++i) {
      Json row;
      row["composition"] = comps[i].parts();
      row["r"] = comps[i].r();
      row["lambda"] = to_string(lambda_of(comps[i]));
      if (cert) {
        row["sign"] = cert->rows[i].sign;
        row["sense"] = sense_name(cert->rows[i].sense);
        row["multiplier"] = to_string(cert->rows[i].multiplier());
      }
      rows.push_back(row);
    }
    j["compositions"] = rows;
    j["fubini"] = to_string(fub.value);
    j["fubini_odd"] = fub.odd;
    if (a.certificate) {
      if (cert) {
        j["certificate"] = {{"rhs_total", to_string(cert->rhs_total)},
                            {"rhs_total_other_orientation", to_string(cert->rhs_total_other_orientation)},
                            {"parity", cert->rhs_odd ? "odd" : "even"},
                            {"cancellation_ok", cert->cancellation_ok},
                            {"proves_infeasible", cert->proves_infeasible}};
      } else {
        j["certificate"] = nullptr;
      }
    }
    if (structure) {
      Json es = Json::array();
      for (const auto& e : edges) es.push_back({{"source", e.source.parts()}, {"target", e.target.parts()}, {"j", e.j}});
      j["transitions"] = es;
      j["structure"] = {{"unique_partner", structure->unique_partner},
                        {"bipartite", structure->bipartite},
                        {"coefficient_identity", structure->coefficient_identity},
                        {"antisymmetric", structure->antisymmetric}};
    }
    out << j.dump(2) << "\n";
    return ok ? kExitOk : kExitViolations;
  }

  std::size_t width = std::string("composition").size();
  for (const auto& p : comps) width = std::max(width, p.str().size());
  out << std::left << std::setw(static_cast<int>(width)) << "composition" << "  " << std::right << std::setw(3) << "r"
      << "  " << std::setw(16) << "lambda";
  if (cert) out << "  " << std::setw(4) << "sign" << "  " << std::left << "sense";
  out << "\n";
  for (std::size_t i = 0; i < comps.size(); ++i) {
    out << std::left << std::setw(static_cast<int>(width)) << comps[i].str() << "  " << std::right << std::setw(3)
        << comps[i].r() << "  " << std::setw(16) << to_string(lambda_of(comps[i]));
    if (cert)
      out << "  " << std::setw(4) << (cert->rows[i].sign > 0 ? "+1" : "-1") << "  " << std::left
          << sense_name(cert->rows[i].sense);
    out << "\n";
  }
  out << std::left << "fubini=" << to_string(fub.value) << " (" << (fub.odd ? "odd" : "even") << ")\n";
  if (a.certificate) {
    if (cert)
      out << "rhs_total=" << to_string(cert->rhs_total) << " parity=" << (cert->rhs_odd ? "odd" : "even")
          << " cancellation_ok=" << (cert->cancellation_ok ? "true" : "false") << " other_orientation="
          << to_string(cert->rhs_total_other_orientation) << "\n";
    else
      out << "no certificate for n=1\n";
  }
  if (structure) {
    for (const auto& e : edges) out << e.source.str() << " -" << e.j << "-> " << e.target.str() << "\n";
    out << "unique_partner=" << (structure->unique_partner ? "true" : "false")
        << " bipartite=" << (structure->bipartite ? "true" : "false")
        << " coefficient_identity=" << (structure->coefficient_identity ? "true" : "false")
        << " antisymmetric=" << (structure->antisymmetric ? "true" : "false") << "\n";
    for (const auto& f : structure->failures) out << "  " << f << "\n";
  }
  return ok ? kExitOk : kExitViolations;
}

// ---------------------------------------------------------------------------

struct ReduceArgs {
  std::string graph;
  int n = 0;
  std::string mode;
  std::string output;
};

int do_reduce(const ReduceArgs& a, std::ostream& out) {
  const DirectedGraph g = load_graph(a.graph);
  const DirectedGraph h = a.mode == "isolated" ? reduce_add_isolated(g, a.n) : reduce_add_inneighbors(g, a.n);
  const std::string text = serialize_graph(h);
  if (a.output.empty()) {
    out << text;
  } else {
    std::ofstream f(a.output, std::ios::binary);
    if (!f) throw UsageError("cannot write '" + a.output + "'");
    f << text;
  }
  return kExitOk;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Impartial selection: mechanisms, audits and ordered-partition certificates", "impsel"};
  app.require_subcommand(1);

  RunArgs run;
  auto* run_cmd = app.add_subcommand("run", "Run a mechanism on a graph file");
  run_cmd->add_option("--graph", run.graph, "Graph file")->required();
  auto* run_T = run_cmd->add_option("--T", run.upper, "Upper (selection) threshold");
  auto* run_t = run_cmd->add_option("--t", run.lower, "Lower (deletion) threshold");
  run_cmd->add_option("--mechanism", run.mechanism, "Registry mechanism instead of --T/--t")->excludes(run_T)->excludes(run_t);
  run_cmd->add_flag("--json", run.json, "JSON report");
  run_cmd->add_flag("--trace", run.trace, "Print the deletion trace");

  PlanArgs plan;
  auto* plan_cmd = app.add_subcommand("plan", "Plan or validate thresholds");
  plan_cmd->add_option("--n", plan.n, "Number of vertices")->required()->check(CLI::Range(2, 1 << 30));
  plan_cmd->add_option("--k", plan.k, "Outdegree bound");
  plan_cmd->add_option("--kappa", plan.kappa, "Exponent with k <= c n^kappa");
  plan_cmd->add_option("--c", plan.c, "Coefficient with k <= c n^kappa");
  plan_cmd->add_option("--T", plan.upper, "Upper threshold to validate");
  plan_cmd->add_option("--t", plan.lower, "Lower threshold to validate");
  plan_cmd->add_flag("--json", plan.json, "JSON report");

  AuditArgs audit;
  auto* audit_cmd = app.add_subcommand("audit", "Impartiality, gap, trace and symmetrization audits");
  audit_cmd->require_subcommand(1);
  auto add_audit_flags = [&audit](CLI::App* sub, bool needs_class) {
    auto* n = sub->add_option("--n", audit.cls.n, "Number of vertices")->check(CLI::Range(1, 64));
    if (needs_class) n->required();
    sub->add_option("--k", audit.cls.k, "Outdegree bound or 'unbounded'");
    sub->add_flag("--positive-outdegree", audit.cls.positive, "Every vertex nominates someone");
    auto* ex = sub->add_flag("--exhaustive", audit.mode.exhaustive, "Examine the whole class (default)");
    sub->add_option("--samples", audit.mode.samples, "Number of sampled base graphs")->excludes(ex);
    sub->add_option("--seed", audit.mode.seed, "Seed for sampled mode");
    sub->add_option("--jobs", audit.jobs, "Worker threads")->check(CLI::Range(1u, 1024u));
    sub->add_option("--cap", audit.cap, "Enumeration cap");
    sub->add_flag("--json", audit.json, "JSON report");
  };
  auto* imp_cmd = audit_cmd->add_subcommand("impartiality", "Search for impartiality violations");
  add_audit_flags(imp_cmd, true);
  imp_cmd->add_option("--mechanism", audit.mechanism, "Mechanism name")->required();
  imp_cmd->add_option("--max-reported", audit.max_reported, "Violations to list");
  auto* gap_cmd = audit_cmd->add_subcommand("gap", "Measure the worst additive gap");
  add_audit_flags(gap_cmd, true);
  gap_cmd->add_option("--mechanism", audit.mechanism, "Mechanism name")->required();
  auto* trace_cmd = audit_cmd->add_subcommand("trace", "Check deletion-trace invariants");
  add_audit_flags(trace_cmd, false);
  trace_cmd->add_option("--graph", audit.graph, "Single graph file instead of a class");
  trace_cmd->add_option("--T", audit.upper, "Upper threshold (default: planned)");
  trace_cmd->add_option("--t", audit.lower, "Lower threshold (default: planned)");
  auto* sym_cmd = audit_cmd->add_subcommand("symmetry", "Audit the symmetrized randomized lift");
  add_audit_flags(sym_cmd, true);
  sym_cmd->add_option("--mechanism", audit.mechanism, "Mechanism name")->required();
  sym_cmd->add_option("--factorial-cap", audit.factorial_cap, "Largest n to symmetrize");

  PartitionArgs parts;
  auto* part_cmd = app.add_subcommand("partitions", "Compositions, multiplicities and the infeasibility certificate");
  part_cmd->add_option("--n", parts.n, "Size")->required()->check(CLI::Range(1, kDefaultCompositionCap));
  part_cmd->add_flag("--certificate", parts.certificate, "Certificate summary");
  part_cmd->add_flag("--transitions", parts.transitions, "Transition edges and structure checks");
  part_cmd->add_flag("--json", parts.json, "JSON report");

  ReduceArgs red;
  auto* red_cmd = app.add_subcommand("reduce", "Embed a graph into a larger one");
  red_cmd->add_option("--graph", red.graph, "Input graph file")->required();
  red_cmd->add_option("--n", red.n, "Target number of vertices")->required();
  red_cmd->add_option("--mode", red.mode, "isolated | inneighbors")
      ->required()
      ->check(CLI::IsMember({"isolated", "inneighbors"}));
  red_cmd->add_option("--output", red.output, "Write here instead of standard output");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    if (run_cmd->parsed()) return do_run(run, out);
    if (plan_cmd->parsed()) return do_plan(plan, out);
    if (imp_cmd->parsed()) return do_audit_impartiality(audit, out);
    if (gap_cmd->parsed()) return do_audit_gap(audit, out);
    if (trace_cmd->parsed()) return do_audit_trace(audit, out);
    if (sym_cmd->parsed()) return do_audit_symmetry(audit, out);
    if (part_cmd->parsed()) return do_partitions(parts, out);
    if (red_cmd->parsed()) return do_reduce(red, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  err << "error: no subcommand\n";
  return kExitUsage;
}

}  // namespace impsel::cli
