// pnts: command-line front end. JSON on stdout, diagnostics on stderr.
// Exit status: 0 success, 1 a checked property fails, 2 usage or input error.

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "pnts/bisim.hpp"
#include "pnts/compose.hpp"
#include "pnts/convex.hpp"
#include "pnts/error.hpp"
#include "pnts/evaluate.hpp"
#include "pnts/experiments.hpp"
#include "pnts/logic_tools.hpp"
#include "pnts/metric.hpp"
#include "pnts/model_io.hpp"

using namespace pnts;
using io::Json;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_violation = 1;
constexpr int exit_usage = 2;

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

Pnts load(const std::string& arg) { return io::model_from_json(io::read_json_argument(arg)); }

LabelId pick_label(const Pnts& m, const std::string& name) {
  if (!name.empty()) return m.label_id(name);
  if (m.num_labels() == 0) throw ModelError("model has no labels");
  return 0;
}

Json experiment_json(const Pnts& m, const Experiment& e, bool as_float) {
  Json j;
  if (e.label) j["label"] = m.label(*e.label).name;
  if (e.prop) j["prop"] = *e.prop;
  j["f"] = io::valuation_to_json(e.f, m, as_float);
  j["gap"] = io::rational_to_json(e.gap, as_float);
  return j;
}

Json values_json(const Pnts& m, const EvalResult& r, bool as_float) {
  Json j = Json::object();
  for (StateId x = 0; x < m.num_states(); ++x) {
    if (r.exact)
      j[m.state_name(x)] = io::rational_to_json((*r.values)[x], as_float);
    else
      j[m.state_name(x)] = r.approx[x];
  }
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Behavioral equivalences, modal logics and metrics for probabilistic nondeterministic transition systems"};
  app.require_subcommand(1);
  bool as_float = false;
  app.add_flag("--float", as_float, "Render rationals as floating-point numbers");

  std::string model, model2, kind = "ue", partition, s1, s2, logic = "r", formula, target, claim = "pnts",
                             label, f_arg, scheduler_arg, env_arg;
  std::size_t budget = 0, samples = 200, n = 1000, trials = 0;
  std::uint64_t seed = 1;
  bool exact_fix = false, upper = false;
  double epsilon = 1e-9;

  auto* bisim = app.add_subcommand("bisim", "Coarsest bisimulation of the given kind");
  bisim->add_option("--kind", kind, "standard, ue or up")->check(CLI::IsMember({"standard", "ue", "up", "convex"}));
  bisim->add_option("model", model, "Model file or inline JSON")->required();

  auto* check = app.add_subcommand("check-bisim", "Check that a partition is a UE-bisimulation");
  check->add_option("model", model)->required();
  check->add_option("partition", partition, "Partition file or inline JSON")->required();
  check->add_option("--kind", kind, "standard, ue or up")->check(CLI::IsMember({"standard", "ue", "up", "convex"}));

  auto* dist = app.add_subcommand("distinguish", "Experiment telling two states apart");
  dist->add_option("model", model)->required();
  dist->add_option("state1", s1)->required();
  dist->add_option("state2", s2)->required();

  auto* eval = app.add_subcommand("eval", "Evaluate a formula");
  eval->add_option("--logic", logic, "r, ql, ql-minus, ql-prod, luk, mu, ql-mu, ql-minus-mu, ql-prod-mu, luk-mu");
  eval->add_option("--env", env_arg, "Variable valuations as JSON {var: {state: value}}");
  eval->add_flag("--exact", exact_fix, "Iterate fixpoints in exact arithmetic");
  eval->add_option("--epsilon", epsilon, "Sup-norm tolerance for fixpoint iteration");
  eval->add_option("model", model)->required();
  eval->add_option("formula", formula)->required();

  auto* synth = app.add_subcommand("synthesize", "R formula evaluating exactly to a target valuation");
  synth->add_option("model", model)->required();
  synth->add_option("target", target, "Valuation file or inline JSON")->required();

  auto* axioms = app.add_subcommand("axioms", "Check the modal Riesz space axioms");
  axioms->add_option("--claim", claim, "pnts, mp or nts")->check(CLI::IsMember({"pnts", "mp", "nts"}));
  axioms->add_option("--label", label);
  axioms->add_option("--samples", samples);
  axioms->add_option("--seed", seed);
  axioms->add_option("model", model)->required();

  auto* metric = app.add_subcommand("metric", "Hausdorff behavioral metric on the UE quotient");
  metric->add_option("model", model)->required();
  metric->add_option("--label", label);
  metric->add_option("--estimate", budget, "Also estimate the logical distance with this many formulas");

  auto* compose = app.add_subcommand("compose", "Parallel composition of two models");
  compose->add_option("left", model)->required();
  compose->add_option("right", model2)->required();

  auto* congr = app.add_subcommand("congruence", "Check that UE-bisimilarity is preserved by composition");
  congr->add_option("model", model)->required();
  congr->add_option("partner", model2)->required();
  congr->add_option("--trials", trials, "Additional random partners");
  congr->add_option("--seed", seed);

  auto* sim = app.add_subcommand("simulate", "Monte Carlo trials of an experiment");
  sim->add_option("model", model)->required();
  sim->add_option("state", s1)->required();
  sim->add_option("--f", f_arg, "Experiment valuation (file or inline JSON)")->required();
  sim->add_option("--n", n, "Trials (per generator with --upper)");
  sim->add_option("--seed", seed);
  sim->add_option("--label", label);
  sim->add_option("--scheduler", scheduler_arg, "Generator index or JSON list of weights");
  sim->add_flag("--upper", upper, "Estimate the upper expectation instead of logging trials");

  auto* quot = app.add_subcommand("quotient", "Quotient model by a bisimilarity");
  quot->add_option("model", model)->required();
  quot->add_option("--kind", kind)->check(CLI::IsMember({"standard", "ue", "up", "convex"}));

  auto* dot = app.add_subcommand("dot", "Graphviz rendering of a model");
  dot->add_option("model", model)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return exit_usage;
  }

  try {
    const Pnts m = load(model);

    if (*bisim) {
      const BisimKind k = parse_bisim_kind(kind);
      Json j;
      j["kind"] = to_string(k);
      j["blocks"] = io::partition_to_json(bisimilarity(m, k), m);
      emit(j);
      return exit_ok;
    }

    if (*check) {
      const Partition p = io::partition_from_json(io::read_json_argument(partition), m);
      const BisimKind k = parse_bisim_kind(kind);
      Json j;
      j["kind"] = to_string(k);
      bool holds;
      if (k == BisimKind::ue) {
        const BisimCheck c = is_ue_bisimulation(m, p);
        holds = c.holds;
        j["holds"] = holds;
        if (!holds) {
          j["x"] = m.state_name(c.x);
          j["y"] = m.state_name(c.y);
          if (c.counterexample) j["counterexample"] = experiment_json(m, *c.counterexample, as_float);
        }
      } else {
        holds = k == BisimKind::standard ? is_standard_bisimulation(m, p) : is_up_bisimulation(m, p);
        j["holds"] = holds;
      }
      emit(j);
      return holds ? exit_ok : exit_violation;
    }

    if (*dist) {
      const auto e = distinguishing_experiment(m, m.state(s1), m.state(s2));
      Json j;
      j["equivalent"] = !e.has_value();
      if (e) j["experiment"] = experiment_json(m, *e, as_float);
      emit(j);
      return exit_ok;
    }

    if (*eval) {
      const Logic lg = parse_logic(logic);
      const Formula f = parse_formula(formula, lg);
      Environment env;
      if (!env_arg.empty())
        for (const auto& [var, v] : io::read_json_argument(env_arg).items())
          env[var] = io::valuation_from_json(v, m, true);
      EvalOptions opt;
      opt.logic = lg;
      opt.epsilon = epsilon;
      opt.exact_fixpoints = exact_fix;
      const EvalResult r = evaluate(m, f, env, opt);
      Json j;
      j["formula"] = to_string(f);
      j["logic"] = to_string(lg);
      j["exact"] = r.exact;
      j["values"] = values_json(m, r, as_float);
      if (!r.exact) {
        j["iterations"] = r.iterations;
        j["residual"] = r.residual;
      }
      emit(j);
      return exit_ok;
    }

    if (*synth) {
      const Valuation t = io::valuation_from_json(io::read_json_argument(target), m);
      const Partition ue = bisimilarity(m, BisimKind::ue);
      if (!is_invariant(t, ue)) {
        Json j;
        j["error"] = "target is not constant on UE-bisimilarity blocks";
        j["blocks"] = io::partition_to_json(ue, m);
        emit(j);
        return exit_violation;
      }
      const Formula f = synthesize_formula(m, t);
      Json j;
      j["formula"] = to_string(f);
      j["modal_depth"] = modal_depth(f);
      j["values"] = io::valuation_to_json(evaluate_exact(m, f), m, as_float);
      emit(j);
      return exit_ok;
    }

    if (*axioms) {
      const LabelId a = pick_label(m, label);
      const AxiomReport r = check_modal_riesz_axioms(m, a, samples, parse_model_type(claim), seed);
      Json j;
      j["claimed"] = to_string(r.claimed);
      j["label"] = m.label(a).name;
      j["samples"] = samples;
      Json list = Json::array();
      for (const auto& ax : r.axioms) {
        Json e;
        e["axiom"] = ax.name;
        e["passed"] = ax.passed;
        e["checked"] = ax.checked;
        if (ax.counterexample) {
          const auto& w = *ax.counterexample;
          e["counterexample"] = {{"f", io::valuation_to_json(w.f, m, as_float)},
                                 {"g", io::valuation_to_json(w.g, m, as_float)},
                                 {"lambda1", io::rational_to_json(w.lambda1, as_float)},
                                 {"lambda2", io::rational_to_json(w.lambda2, as_float)},
                                 {"state", m.state_name(w.state)},
                                 {"lhs", io::rational_to_json(w.lhs, as_float)},
                                 {"rhs", io::rational_to_json(w.rhs, as_float)}};
        }
        list.push_back(std::move(e));
      }
      j["axioms"] = std::move(list);
      j["all_passed"] = r.all_passed();
      emit(j);
      return r.all_passed() ? exit_ok : exit_violation;
    }

    if (*metric) {
      const LabelId a = pick_label(m, label);
      const MetricMatrix d = behavioral_metric(m, a);
      Json j;
      j["label"] = m.label(a).name;
      j["blocks"] = io::partition_to_json(d.blocks, m);
      Json rows = Json::array();
      for (const auto& row : d.d) {
        Json r = Json::array();
        for (const auto& q : row) r.push_back(io::rational_to_json(q, as_float));
        rows.push_back(std::move(r));
      }
      j["matrix"] = std::move(rows);
      if (budget > 0) {
        Json est = Json::array();
        for (std::size_t i = 0; i < d.blocks.num_blocks(); ++i)
          for (std::size_t k = i + 1; k < d.blocks.num_blocks(); ++k) {
            const StateId x = d.blocks.block(i).front();
            const StateId y = d.blocks.block(k).front();
            const MetricEstimate e = formula_metric_estimate(m, x, y, budget, a);
            const Rational half = d.d[i][k] / Rational(2);
            Json row;
            row["x"] = m.state_name(x);
            row["y"] = m.state_name(y);
            row["estimate"] = io::rational_to_json(e.value, as_float);
            row["half_metric"] = io::rational_to_json(half, as_float);
            if (half.sign() != 0) row["ratio"] = (e.value / half).to_double();
            if (e.best) row["formula"] = to_string(*e.best);
            row["formulas_tried"] = e.evaluated;
            est.push_back(std::move(row));
          }
        j["estimates"] = std::move(est);
      }
      emit(j);
      return exit_ok;
    }

    if (*compose) {
      emit(io::model_to_json(parallel_compose(m, load(model2))));
      return exit_ok;
    }

    if (*congr) {
      const CongruenceReport r = congruence_check(m, load(model2), trials, seed);
      Json j;
      j["holds"] = r.holds;
      j["partners"] = r.partners;
      j["pairs_checked"] = r.pairs_checked;
      Json v = Json::array();
      for (const auto& c : r.violations)
        v.push_back({{"partner", c.partner},
                     {"partner_on_left", c.partner_on_left},
                     {"x", m.state_name(c.x)},
                     {"x2", m.state_name(c.x2)},
                     {"partner_state", c.y}});
      j["violations"] = std::move(v);
      emit(j);
      return r.holds ? exit_ok : exit_violation;
    }

    if (*sim) {
      const StateId x = m.state(s1);
      const LabelId a = pick_label(m, label);
      const Valuation f = io::valuation_from_json(io::read_json_argument(f_arg), m);
      if (upper) {
        Json j;
        j["state"] = m.state_name(x);
        j["label"] = m.label(a).name;
        j["n"] = n;
        j["seed"] = seed;
        j["estimate"] = estimate_upper_expectation(m, x, a, f, n, seed);
        j["exact"] = io::rational_to_json(upper_expectation(m.successors(x, a), f), as_float);
        emit(j);
        return exit_ok;
      }
      Scheduler sigma = Scheduler::deterministic(0);
      if (!scheduler_arg.empty()) {
        const Json s = Json::parse(scheduler_arg);
        if (s.is_number_unsigned()) {
          sigma = Scheduler::deterministic(s.get<std::size_t>());
        } else if (s.is_array()) {
          std::vector<Rational> w;
          for (const auto& q : s) w.push_back(io::rational_from_json(q));
          sigma = Scheduler::weighted(std::move(w));
        } else {
          throw ParseError("--scheduler expects a generator index or a list of weights", 0);
        }
      }
      std::cout << run_trials(m, x, a, sigma, f, n, seed).to_json_lines(m);
      return exit_ok;
    }

    if (*quot) {
      emit(io::model_to_json(quotient_model(m, bisimilarity(m, parse_bisim_kind(kind)))));
      return exit_ok;
    }

    if (*dot) {
      std::cout << io::to_dot(m);
      return exit_ok;
    }
  } catch (const ParseError& e) {
    std::cerr << "pnts: parse error at position " << e.position() << ": " << e.what() << "\n";
    return exit_usage;
  } catch (const Json::exception& e) {
    std::cerr << "pnts: invalid JSON: " << e.what() << "\n";
    return exit_usage;
  } catch (const std::exception& e) {
    std::cerr << "pnts: " << e.what() << "\n";
    return exit_usage;
  }
  return exit_usage;
}
