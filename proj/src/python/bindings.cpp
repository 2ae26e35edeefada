#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "desguard/desguard.hpp"

namespace py = pybind11;
using namespace desguard;

namespace {

py::dict witness_dict(const ProblemFile& p, const ObservabilityWitness& w) {
  const auto r = make_witness_report(p, w);
  py::dict d;
  d["staying"] = r.staying;
  d["escaping"] = r.escaping;
  d["event"] = r.event;
  d["staying_attack"] = r.staying_attack;
  d["escaping_attack"] = r.escaping_attack;
  d["shared_output"] = r.shared_output ? py::object(py::str(*r.shared_output)) : py::object(py::none());
  return d;
}

std::vector<std::string> event_names(const Alphabet& s, const EventSet& events) {
  std::vector<std::string> out;
  for (Event e : events) out.push_back(s.name(e));
  return out;
}

std::vector<std::string> language(const Alphabet& s, const BoundedLanguage& l) {
  std::vector<std::string> out;
  for (const auto& w : l.words()) out.push_back(s.format(w));
  return out;
}

py::dict check_controllability_py(const ProblemFile& p) {
  const auto v = check_controllability(p.plant, p.spec);
  py::dict d;
  d["holds"] = v.holds;
  if (v.witness) {
    d["word"] = p.alphabet.format(v.witness->word);
    d["event"] = p.alphabet.name(v.witness->event);
  }
  return d;
}

py::dict check_observability_py(const ProblemFile& p, const std::string& method, std::optional<std::size_t> depth,
                                std::size_t max_depth) {
  ObservabilityVerdict v;
  Method m = select_method(p.attacks);
  if (method == "product") m = Method::product;
  else if (method == "reduction") m = Method::reduction;
  else if (method == "brute") m = Method::brute_force;
  else if (method != "auto") throw InputError("unknown method \"" + method + "\"");
  else if (!check_controllability(p.plant, p.spec).holds) m = Method::brute_force;
  switch (m) {
    case Method::product:
      v = check_observability_rr(p.plant, p.spec, p.observation, p.attacks);
      break;
    case Method::reduction:
      v = check_observability_ir(p.plant, p.spec, p.observation, p.attacks);
      break;
    case Method::brute_force:
      v = brute_force_observability(p.plant, p.spec, p.observation, p.attacks,
                                    depth.value_or(default_oracle_depth(p.plant, p.spec, max_depth)));
      break;
  }
  py::dict d;
  d["holds"] = v.holds;
  d["method"] = to_string(v.method);
  d["witness"] = v.witness ? py::object(witness_dict(p, *v.witness)) : py::object(py::none());
  return d;
}

std::vector<py::dict> violations_py(const ProblemFile& p) {
  std::vector<py::dict> out;
  for (const auto& w : find_observability_violations_rr(p.plant, p.spec, p.observation, p.attacks))
    out.push_back(witness_dict(p, w));
  return out;
}

std::vector<std::string> ap_word_py(const ProblemFile& p, const std::string& attack, const std::string& word) {
  std::vector<std::string> out;
  for (const auto& y : ap_word(p.attacks.at(p.attack_index(attack)), p.observation, p.alphabet.parse_word(word)))
    out.push_back(p.outputs.format(y));
  return out;
}

bool ap_contains_py(const ProblemFile& p, const std::string& attack, const std::string& word,
                    const std::string& output) {
  return ap_inverse_contains(p.attacks.at(p.attack_index(attack)), p.observation, p.alphabet.parse_word(word),
                             p.outputs.parse_word(output));
}

py::dict supervisor_py(const ProblemFile& p, const std::string& output) {
  const auto y = p.outputs.parse_word(output);
  const auto bank = supervisor_feed(SupervisorBank::build(p.spec, p.observation, p.attacks), y);
  py::dict alive;
  for (std::size_t i = 0; i < bank.size(); ++i) alive[py::str(p.attack_names[i])] = bank.alive(i);
  py::dict d;
  d["enabled"] = event_names(p.alphabet, supervisor_decision(bank).enabled);
  d["alive"] = alive;
  return d;
}

py::dict observer_py(const ProblemFile& p, const std::string& attack) {
  const auto bank = SupervisorBank::build(p.spec, p.observation, p.attacks);
  const Observer& obs = bank.observer(p.attack_index(attack));
  std::vector<std::vector<std::string>> states;
  std::vector<std::vector<std::string>> psis;
  std::vector<std::tuple<std::size_t, std::string, std::size_t>> transitions;
  for (Observer::Id q = 0; q < obs.num_states(); ++q) {
    std::vector<std::string> names;
    for (State r : obs.state(q)) names.push_back(p.spec.state_name(r));
    states.push_back(names);
    psis.push_back(event_names(p.alphabet, psi(p.spec, obs.state(q))));
    for (Symbol t : p.outputs.symbols())
      if (auto to = obs.step(q, t)) transitions.emplace_back(q, p.outputs.name(t), *to);
  }
  py::dict d;
  d["states"] = states;
  d["psi"] = psis;
  d["transitions"] = transitions;
  d["initial"] = obs.initial();
  return d;
}

py::dict simulate_py(const ProblemFile& p, std::optional<std::size_t> depth) {
  const auto rep = verify_closed_loop(p.plant, p.spec, p.observation, p.attacks,
                                      depth.value_or(default_simulation_depth(p.spec)));
  py::dict d;
  d["depth"] = rep.depth;
  d["controllable"] = rep.controllability.holds;
  d["observable"] = rep.observability.holds;
  d["spec"] = language(p.alphabet, rep.spec_language);
  py::list loops;
  for (const auto& l : rep.loops) {
    py::dict e;
    e["attack"] = p.attack_names[l.attack];
    e["lmax"] = language(p.alphabet, l.lmax);
    e["lmin"] = language(p.alphabet, l.lmin);
    loops.append(e);
  }
  d["loops"] = loops;
  d["languages_match"] = rep.languages_match;
  if (rep.discrepancy) {
    py::dict x;
    x["attack"] = p.attack_names[rep.discrepancy->attack];
    x["word"] = p.alphabet.format(rep.discrepancy->word);
    x["kind"] = rep.discrepancy->kind == Discrepancy::Kind::beyond_spec ? "outside-spec" : "blocked-spec";
    d["discrepancy"] = x;
  } else {
    d["discrepancy"] = py::none();
  }
  return d;
}

std::string dot_py(const ProblemFile& p, const std::string& what) {
  if (what == "plant") return export_dot(p.plant, "plant");
  if (what == "spec") return export_dot(p.spec, "spec");
  const auto bank = SupervisorBank::build(p.spec, p.observation, p.attacks);
  return export_dot(bank.observer(p.attack_index(what)), p.spec, p.outputs, "observer_" + what);
}

std::vector<std::string> names(const SymbolTable& t) { return t.names(); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Supervisory control under observation attacks";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<UnsupportedError>(m, "UnsupportedError", base.ptr());
  py::register_exception<PreconditionError>(m, "PreconditionError", base.ptr());
  py::register_exception<NoWitnessError>(m, "NoWitnessError", base.ptr());

  py::class_<ProblemFile>(m, "Problem")
      .def_static("load", [](const std::string& path) { return load_problem(path); }, py::arg("path"))
      .def_static("from_json", [](const std::string& text) { return parse_problem(text); }, py::arg("text"))
      .def("to_json", [](const ProblemFile& p) { return to_json(p); })
      .def("save", [](const ProblemFile& p, const std::string& path) { save_problem(p, path); }, py::arg("path"))
      .def_property_readonly("events", [](const ProblemFile& p) { return names(p.alphabet.table()); })
      .def_property_readonly("controllable",
                             [](const ProblemFile& p) {
                               std::vector<std::string> out;
                               for (Event e : p.alphabet.controllable_events()) out.push_back(p.alphabet.name(e));
                               return out;
                             })
      .def_property_readonly("outputs", [](const ProblemFile& p) { return names(p.outputs.table()); })
      .def_property_readonly("attacks", [](const ProblemFile& p) { return p.attack_names; })
      .def("check_controllability", &check_controllability_py)
      .def("check_observability", &check_observability_py, py::arg("method") = "auto",
           py::arg("depth") = py::none(), py::arg("max_depth") = 10)
      .def("observability_violations", &violations_py)
      .def("ap_word", &ap_word_py, py::arg("attack"), py::arg("word"))
      .def("ap_contains", &ap_contains_py, py::arg("attack"), py::arg("word"), py::arg("output"))
      .def("supervisor", &supervisor_py, py::arg("output") = "")
      .def("observer", &observer_py, py::arg("attack"))
      .def("simulate", &simulate_py, py::arg("depth") = py::none())
      .def("dot", &dot_py, py::arg("what"))
      .def("__eq__", [](const ProblemFile& a, const ProblemFile& b) { return same_problem(a, b); });
}
