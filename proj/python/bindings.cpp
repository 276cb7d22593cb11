#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pnts/bisim.hpp"
#include "pnts/compose.hpp"
#include "pnts/convex.hpp"
#include "pnts/error.hpp"
#include "pnts/evaluate.hpp"
#include "pnts/experiments.hpp"
#include "pnts/logic_tools.hpp"
#include "pnts/metric.hpp"
#include "pnts/model_io.hpp"

namespace py = pybind11;
using namespace pnts;

namespace {

py::object fraction(const Rational& r) {
  static py::object cls = py::module_::import("fractions").attr("Fraction");
  return cls(r.str());
}

Rational to_rational(const py::handle& h) {
  if (py::isinstance<py::str>(h)) return Rational::parse(h.cast<std::string>());
  return Rational::parse(py::str(h).cast<std::string>());
}

py::dict valuation_dict(const Pnts& m, const Valuation& v) {
  py::dict d;
  for (StateId x = 0; x < m.num_states(); ++x) d[py::str(m.state_name(x))] = fraction(v[x]);
  return d;
}

Valuation valuation_from(const Pnts& m, const py::dict& d) {
  std::vector<Rational> v(m.num_states());
  for (auto [k, val] : d) v[m.state(k.cast<std::string>())] = to_rational(val);
  return Valuation(std::move(v));
}

std::vector<std::vector<std::string>> blocks_of(const Pnts& m, const Partition& p) {
  std::vector<std::vector<std::string>> out;
  for (const auto& b : p.blocks()) {
    out.emplace_back();
    for (StateId x : b) out.back().push_back(m.state_name(x));
  }
  return out;
}

Partition partition_from(const Pnts& m, const std::vector<std::vector<std::string>>& blocks) {
  std::vector<std::vector<StateId>> ids;
  for (const auto& b : blocks) {
    ids.emplace_back();
    for (const auto& s : b) ids.back().push_back(m.state(s));
  }
  return Partition::from_blocks(std::move(ids), m.num_states());
}

LabelId label_of(const Pnts& m, const std::string& name) { return name.empty() ? 0 : m.label_id(name); }

py::object experiment_dict(const Pnts& m, const std::optional<Experiment>& e) {
  if (!e) return py::none();
  py::dict d;
  d["label"] = e->label ? py::object(py::str(m.label(*e->label).name)) : py::none();
  d["prop"] = e->prop ? py::object(py::str(*e->prop)) : py::none();
  d["f"] = valuation_dict(m, e->f);
  d["gap"] = fraction(e->gap);
  return d;
}

}  // namespace

PYBIND11_MODULE(_pnts, mod) {
  mod.doc() = "Bisimilarity, modal logics and metrics for probabilistic nondeterministic transition systems";

  static py::exception<Error> base(mod, "PntsError");
  py::register_exception<ParseError>(mod, "ParseError", base.ptr());
  py::register_exception<LogicError>(mod, "LogicError", base.ptr());
  py::register_exception<ResourceError>(mod, "ResourceError", base.ptr());
  py::register_exception<ModelError>(mod, "ModelError", base.ptr());
  py::register_exception<DimensionError>(mod, "DimensionError", base.ptr());

  py::class_<Pnts>(mod, "Model")
      .def_property_readonly("states", &Pnts::state_names)
      .def_property_readonly("labels",
                             [](const Pnts& m) {
                               std::vector<std::string> out;
                               for (const auto& l : m.labels()) out.push_back(l.name);
                               return out;
                             })
      .def("successors",
           [](const Pnts& m, const std::string& x, const std::string& a) {
             py::list out;
             for (const auto& mu : m.successors(m.state(x), m.label_id(a))) {
               py::dict d;
               for (StateId z = 0; z < mu.size(); ++z)
                 if (mu[z].sign() != 0) d[py::str(m.state_name(z))] = fraction(mu[z]);
               out.append(d);
             }
             return out;
           })
      .def("to_json", [](const Pnts& m) { return io::model_to_json(m).dump(); })
      .def("__eq__", [](const Pnts& a, const Pnts& b) { return a == b; })
      .def("__repr__", [](const Pnts& m) {
        return "<Model " + std::to_string(m.num_states()) + " states, " + std::to_string(m.num_labels()) +
               " labels>";
      });

  mod.def("parse_model", &io::parse_model, py::arg("json_text"), "Model from JSON text.");
  mod.def("load_model", [](const std::string& path) { return io::load_model(path); }, py::arg("path"));

  mod.def(
      "bisimilarity",
      [](const Pnts& m, const std::string& kind) { return blocks_of(m, bisimilarity(m, parse_bisim_kind(kind))); },
      py::arg("model"), py::arg("kind") = "ue", "Blocks of the coarsest bisimulation (standard, ue, up).");

  mod.def(
      "is_ue_bisimulation",
      [](const Pnts& m, const std::vector<std::vector<std::string>>& blocks) {
        const BisimCheck c = is_ue_bisimulation(m, partition_from(m, blocks));
        py::dict d;
        d["holds"] = c.holds;
        if (!c.holds) {
          d["x"] = m.state_name(c.x);
          d["y"] = m.state_name(c.y);
          d["counterexample"] = experiment_dict(m, c.counterexample);
        }
        return d;
      },
      py::arg("model"), py::arg("blocks"));

  mod.def(
      "distinguishing_experiment",
      [](const Pnts& m, const std::string& x, const std::string& y) {
        return experiment_dict(m, distinguishing_experiment(m, m.state(x), m.state(y)));
      },
      py::arg("model"), py::arg("x"), py::arg("y"), "None when x and y are UE-bisimilar.");

  mod.def(
      "upper_expectation",
      [](const Pnts& m, const std::string& x, const std::string& a, const py::dict& f) {
        return fraction(upper_expectation(m.successors(m.state(x), m.label_id(a)), valuation_from(m, f)));
      },
      py::arg("model"), py::arg("state"), py::arg("label"), py::arg("f"));

  mod.def(
      "evaluate",
      [](const Pnts& m, const std::string& text, const std::string& logic, bool exact) -> py::dict {
        const Logic lg = parse_logic(logic);
        EvalOptions opt;
        opt.logic = lg;
        opt.exact_fixpoints = exact;
        const EvalResult r = evaluate(m, parse_formula(text, lg), {}, opt);
        if (r.exact) return valuation_dict(m, *r.values);
        py::dict d;
        for (StateId x = 0; x < m.num_states(); ++x) d[py::str(m.state_name(x))] = r.approx[x];
        return d;
      },
      py::arg("model"), py::arg("formula"), py::arg("logic") = "r", py::arg("exact") = false,
      "Fractions for exact results, floats for iterated fixpoints.");

  mod.def(
      "format_formula", [](const std::string& text, const std::string& logic) {
        return to_string(parse_formula(text, parse_logic(logic)));
      },
      py::arg("formula"), py::arg("logic") = "r");

  mod.def(
      "synthesize",
      [](const Pnts& m, const py::dict& target) { return to_string(synthesize_formula(m, valuation_from(m, target))); },
      py::arg("model"), py::arg("target"), "R formula whose value is exactly the target.");

  mod.def(
      "semantic_kernel",
      [](const Pnts& m, std::size_t budget, const std::vector<std::string>& extra) {
        std::vector<Formula> fs;
        for (const auto& t : extra) fs.push_back(parse_formula(t));
        return blocks_of(m, semantic_kernel(m, budget, fs));
      },
      py::arg("model"), py::arg("budget"), py::arg("extra") = std::vector<std::string>{});

  mod.def(
      "check_axioms",
      [](const Pnts& m, const std::string& label, std::size_t samples, const std::string& claim, std::uint64_t seed) {
        const AxiomReport r = check_modal_riesz_axioms(m, label_of(m, label), samples, parse_model_type(claim), seed);
        py::dict d;
        for (const auto& a : r.axioms) d[py::str(a.name)] = a.passed;
        return d;
      },
      py::arg("model"), py::arg("label") = "", py::arg("samples") = 200, py::arg("claim") = "pnts",
      py::arg("seed") = 1);

  mod.def(
      "behavioral_metric",
      [](const Pnts& m, const std::string& label) {
        const MetricMatrix d = behavioral_metric(m, label_of(m, label));
        py::list rows;
        for (const auto& row : d.d) {
          py::list r;
          for (const auto& q : row) r.append(fraction(q));
          rows.append(r);
        }
        return py::make_tuple(blocks_of(m, d.blocks), rows);
      },
      py::arg("model"), py::arg("label") = "", "(blocks, matrix) on the UE quotient.");

  mod.def(
      "metric_estimate",
      [](const Pnts& m, const std::string& x, const std::string& y, std::size_t budget, const std::string& label) {
        const MetricEstimate e = formula_metric_estimate(m, m.state(x), m.state(y), budget, label_of(m, label));
        return py::make_tuple(fraction(e.value), e.best ? to_string(*e.best) : std::string());
      },
      py::arg("model"), py::arg("x"), py::arg("y"), py::arg("budget"), py::arg("label") = "");

  mod.def("compose", &parallel_compose, py::arg("left"), py::arg("right"));

  mod.def(
      "congruence_check",
      [](const Pnts& a, const Pnts& b, std::size_t trials, std::uint64_t seed) {
        const CongruenceReport r = congruence_check(a, b, trials, seed);
        return py::make_tuple(r.holds, r.pairs_checked);
      },
      py::arg("model"), py::arg("partner"), py::arg("trials") = 0, py::arg("seed") = 1);

  mod.def(
      "simulate",
      [](const Pnts& m, const std::string& x, const py::dict& f, std::size_t n, std::uint64_t seed,
         const std::string& label, std::size_t generator) {
        return run_trials(m, m.state(x), label_of(m, label), Scheduler::deterministic(generator), valuation_from(m, f),
                          n, seed)
            .to_json_lines(m);
      },
      py::arg("model"), py::arg("state"), py::arg("f"), py::arg("n"), py::arg("seed") = 1, py::arg("label") = "",
      py::arg("generator") = 0, "Trial log as JSON lines.");

  mod.def(
      "estimate_upper_expectation",
      [](const Pnts& m, const std::string& x, const py::dict& f, std::size_t n, std::uint64_t seed,
         const std::string& label) {
        return estimate_upper_expectation(m, m.state(x), label_of(m, label), valuation_from(m, f), n, seed);
      },
      py::arg("model"), py::arg("state"), py::arg("f"), py::arg("n"), py::arg("seed") = 1, py::arg("label") = "");
}
