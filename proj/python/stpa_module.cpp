/*
 * Copyright 2026 The stpa-rec Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Python bindings.  Terms cross the boundary either as `Term` handles or as
// strings in the concrete syntax; scalars always travel as strings such as
// "3/4" so that no precision is lost.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>
#include <variant>

#include "stpa/analysis.hpp"
#include "stpa/axioms.hpp"
#include "stpa/cli.hpp"
#include "stpa/errors.hpp"
#include "stpa/meadow_laws.hpp"
#include "stpa/protocols.hpp"
#include "stpa/semantics.hpp"
#include "stpa/soundness.hpp"
#include "stpa/syntax.hpp"

namespace py = pybind11;

namespace {

using TermLike = std::variant<stpa::Term, std::string>;

stpa::Term AsTerm(const TermLike& t) {
  if (auto* s = std::get_if<std::string>(&t)) return stpa::ParseTerm(*s);
  return std::get<stpa::Term>(t);
}

stpa::AxiomContext Ctx(const std::string& speed) {
  stpa::AxiomContext c;
  c.speed = stpa::SpeedConfig::Make(stpa::Scalar::Parse(speed));
  return c;
}

stpa::SemanticsOptions Sem(const std::string& speed) {
  stpa::SemanticsOptions o;
  o.speed = stpa::SpeedConfig::Make(stpa::Scalar::Parse(speed));
  return o;
}

py::list TraceSteps(const stpa::RewriteTrace& tr) {
  py::list out;
  for (const auto& s : tr.steps) {
    py::dict d;
    d["axiom"] = s.axiom;
    d["position"] = s.position;
    d["bindings"] = s.bindings;
    out.append(d);
  }
  return out;
}

py::list RunSteps(const stpa::Trace& tr) {
  py::list out;
  for (const auto& s : tr.steps) {
    out.append(py::make_tuple(s.time.str(),
                              s.action ? py::object(py::str(stpa::Print(*s.action)))
                                       : py::object(py::none())));
  }
  return out;
}

const char* VerdictName(stpa::BisimVerdict::Kind k) {
  switch (k) {
    case stpa::BisimVerdict::Kind::kBisimilar:
      return "bisimilar";
    case stpa::BisimVerdict::Kind::kDistinguished:
      return "distinguished";
    case stpa::BisimVerdict::Kind::kInconclusive:
      return "inconclusive";
  }
  return "?";
}

stpa::ParParams MakePar(const py::dict& kw) {
  stpa::ParParams p;
  for (auto item : kw) {
    std::string k = py::str(item.first);
    py::handle v = item.second;
    auto scalar = [&] { return stpa::Scalar::Parse(py::str(v).cast<std::string>()); };
    if (k == "timeout") p.timeout = scalar();
    else if (k == "speed") p.speed = scalar();
    else if (k == "t_s") p.t_s = scalar();
    else if (k == "t_k") p.t_k = scalar();
    else if (k == "t_l") p.t_l = scalar();
    else if (k == "t_r") p.t_r = scalar();
    else if (k == "t_r_ack") p.t_r_ack = scalar();
    else if (k == "depth") p.depth = v.cast<int>();
    else if (k == "retransmission_bound") p.retransmission_bound = v.cast<int>();
    else if (k == "data") p.data = v.cast<std::vector<std::string>>();
    else throw stpa::InvalidArgument("unknown PAR parameter " + k);
  }
  p.Validate();
  return p;
}

}  // namespace

PYBIND11_MODULE(_stpa, m) {
  m.doc() = "Space-time process algebra workbench";

  auto base = py::register_exception<stpa::Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<stpa::SyntaxError>(m, "ParseError", base.ptr());
  py::register_exception<stpa::NotRepresentable>(m, "NotRepresentable", base.ptr());
  py::register_exception<stpa::InvalidArgument>(m, "InvalidArgument", base.ptr());
  py::register_exception<stpa::BudgetExceeded>(m, "BudgetExceeded", base.ptr());

  py::class_<stpa::Term>(m, "Term")
      .def(py::init([](const std::string& s) { return stpa::ParseTerm(s); }))
      .def("__str__", [](const stpa::Term& t) { return stpa::Print(t); })
      .def("__repr__",
           [](const stpa::Term& t) { return "Term('" + stpa::Print(t) + "')"; })
      .def("__eq__", [](const stpa::Term& a, const stpa::Term& b) { return a == b; })
      .def("__hash__", [](const stpa::Term& t) { return t.hash(); })
      .def_property_readonly("closed", [](const stpa::Term& t) { return stpa::IsClosed(t); })
      .def_property_readonly("size", [](const stpa::Term& t) { return stpa::TermSize(t); })
      .def("alt_canonical", [](const stpa::Term& t) { return stpa::alt_canonical(t); })
      .def("normal_form", [](const stpa::Term& t) {
        return std::string(stpa::ToString(stpa::ClassifyNormalForm(t).cls));
      });

  m.def("parse", [](const std::string& s) { return stpa::ParseTerm(s); },
        py::arg("text"));

  m.def("normalize",
        [](const TermLike& t, int depth, const std::string& speed, bool trace) {
          stpa::RewriteTrace tr;
          stpa::Term r = stpa::normalize(AsTerm(t), depth, Ctx(speed),
                                         trace ? &tr : nullptr);
          if (!trace) return py::object(py::cast(r));
          return py::object(py::make_tuple(r, TraceSteps(tr)));
        },
        py::arg("term"), py::arg("depth") = 20, py::arg("speed") = "1",
        py::arg("trace") = false);
  m.def("shnf", [](const TermLike& t) { return stpa::shnf(AsTerm(t)); },
        py::arg("term"));
  m.def("hnf",
        [](const TermLike& t, const std::string& speed) {
          stpa::Term p = AsTerm(t);
          if (!p.is(stpa::TermKind::kStateOp)) {
            throw stpa::InvalidArgument("hnf expects a state-operator term");
          }
          return stpa::hnf_state(p.channels(), p.state_time(), p.sigma(),
                                 p.lhs(), Ctx(speed));
        },
        py::arg("term"), py::arg("speed") = "1");
  m.def("apply_axiom",
        [](const std::string& id, const TermLike& t) -> std::optional<stpa::Term> {
          return stpa::apply_axiom(id, AsTerm(t));
        },
        py::arg("axiom"), py::arg("term"));
  m.def("axioms", [] {
    std::vector<std::string> ids;
    for (const auto& a : stpa::axiom_list()) ids.push_back(a.id);
    return ids;
  });

  m.def("step",
        [](const TermLike& t, const std::string& at, const std::string& sigma,
           const std::string& speed) {
          py::list out;
          for (const auto& tr : stpa::step_set(AsTerm(t), stpa::Scalar::Parse(at),
                                               stpa::ParseSigma(sigma), Sem(speed))) {
            out.append(py::make_tuple(stpa::Print(tr.label),
                                      tr.next ? py::object(py::cast(*tr.next))
                                              : py::object(py::none())));
          }
          return out;
        },
        py::arg("term"), py::arg("at") = "0", py::arg("sigma") = "{}",
        py::arg("speed") = "1");
  m.def("idle",
        [](const TermLike& t, const std::string& at, const std::string& sigma,
           const std::string& speed) {
          return stpa::idle_set(AsTerm(t), stpa::Scalar::Parse(at),
                                stpa::ParseSigma(sigma), Sem(speed))
              .str();
        },
        py::arg("term"), py::arg("at") = "0", py::arg("sigma") = "{}",
        py::arg("speed") = "1");

  m.def("linearize",
        [](const TermLike& t, int depth) {
          stpa::Term p = AsTerm(t);
          if (!p.is(stpa::TermKind::kStateOp)) {
            throw stpa::InvalidArgument("linearize expects a state-operator term");
          }
          stpa::LinearSpec e = stpa::linearize(p.channels(), p.state_time(),
                                               p.sigma(), p.lhs(), depth);
          py::dict d;
          d["spec"] = e.str();
          d["equations"] = e.equations.size();
          d["truncated"] = std::vector<std::string>(e.truncated.begin(),
                                                    e.truncated.end());
          return d;
        },
        py::arg("term"), py::arg("depth") = 20);
  m.def("bisim",
        [](const TermLike& a, const TermLike& b, int depth) {
          stpa::Term p = AsTerm(a), q = AsTerm(b);
          stpa::BisimVerdict v = stpa::bisim_definitional(
              p, q, stpa::relevant_instants(p, q), depth);
          py::dict d;
          d["verdict"] = VerdictName(v.kind);
          d["witness"] = v.witness;
          d["reason"] = v.reason;
          return d;
        },
        py::arg("p"), py::arg("q"), py::arg("depth") = 3);

  m.def("meadow_selftest",
        [](std::size_t samples, std::uint64_t seed) {
          py::list out;
          for (const auto& r : stpa::MeadowSelfTest(samples, seed)) {
            py::dict d;
            d["law"] = r.name;
            d["equation"] = r.equation;
            d["checked"] = r.checked;
            d["failed"] = r.failed;
            out.append(d);
          }
          return out;
        },
        py::arg("samples") = 1000, py::arg("seed") = 1);
  m.def("axiom_soundness",
        [](int instances, std::uint64_t seed, std::vector<std::string> only) {
          stpa::SoundnessOptions o;
          o.instances = instances;
          o.seed = seed;
          o.only = std::move(only);
          py::list out;
          for (const auto& r : stpa::CheckAxiomSoundness(o)) {
            py::dict d;
            d["axiom"] = r.id;
            d["instances"] = r.instances;
            d["discrepancies"] = r.discrepancies;
            d["counterexample"] = r.counterexample;
            out.append(d);
          }
          return out;
        },
        py::arg("instances") = 100, py::arg("seed") = 1,
        py::arg("only") = std::vector<std::string>{});

  m.def("par_term", [](py::kwargs kw) { return stpa::build_par(MakePar(kw)); });
  m.def("par_cycle_condition", [](py::kwargs kw) {
    stpa::ParParams p = MakePar(kw);
    return py::make_tuple(stpa::cycle_condition(p), stpa::cycle_time(p).str());
  });
  m.def("par_check",
        [](std::vector<std::string> inputs, py::kwargs kw) {
          stpa::DeliveryResult r = stpa::check_delivery(MakePar(kw), inputs);
          py::dict d;
          d["verdict"] = stpa::ToString(r.verdict);
          d["reason"] = r.reason;
          d["states"] = r.states;
          d["maximal"] = r.maximal_states;
          d["truncated"] = r.truncated_states;
          d["retransmission_after_k_error"] = r.retransmission_after_k_error.has_value();
          d["trace"] = RunSteps(r.trace);
          return d;
        },
        py::arg("inputs"));

  m.def("cli",
        [](const std::vector<std::string>& args) {
          std::ostringstream out, err;
          int code = stpa::Dispatch(args, out, err);
          return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"));
}
