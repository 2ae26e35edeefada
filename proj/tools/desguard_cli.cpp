// desguard: controllability / observability checks, observer synthesis and
// closed-loop simulation for supervisors facing observation attacks.
//
// Exit codes: 0 property holds, 1 property fails, 2 input error,
// 3 unsupported combination, 4 internal error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "desguard/desguard.hpp"

namespace fs = std::filesystem;
using namespace desguard;

namespace {

enum Exit { kHolds = 0, kFails = 1, kInput = 2, kUnsupported = 3, kInternal = 4 };

struct CheckOptions {
  std::string file;
  std::string method = "auto";
  std::optional<std::size_t> depth;
  std::size_t max_depth = 10;
};

struct SynthOptions {
  std::string file;
  std::string out_dir;
};

struct SimOptions {
  std::string file;
  std::optional<std::size_t> depth;
};

struct OracleOptions {
  std::string file;
  std::optional<std::size_t> depth;
  std::size_t max_depth = 10;
  std::size_t output_length = 5;
};

std::vector<WitnessReport> reports_for(const ProblemFile& p, const std::vector<ObservabilityWitness>& ws) {
  std::vector<WitnessReport> out;
  for (const auto& w : ws) out.push_back(make_witness_report(p, w));
  return out;
}

int run_check(const CheckOptions& o) {
  const auto p = load_problem(o.file);
  const auto ctrl = check_controllability(p.plant, p.spec);
  std::cout << format_controllability(p, ctrl);

  Method method = select_method(p.attacks);
  if (o.method == "product") method = Method::product;
  else if (o.method == "reduction") method = Method::reduction;
  else if (o.method == "brute") method = Method::brute_force;
  else if (!ctrl.holds) method = Method::brute_force;  // efficient tests assume controllability

  ObservabilityVerdict obs;
  std::vector<ObservabilityWitness> witnesses;
  switch (method) {
    case Method::product:
      witnesses = find_observability_violations_rr(p.plant, p.spec, p.observation, p.attacks);
      obs.method = Method::product;
      obs.holds = witnesses.empty();
      break;
    case Method::reduction:
      obs = check_observability_ir(p.plant, p.spec, p.observation, p.attacks);
      break;
    case Method::brute_force:
      obs = brute_force_observability(p.plant, p.spec, p.observation, p.attacks,
                                      o.depth.value_or(default_oracle_depth(p.plant, p.spec, o.max_depth)));
      break;
  }
  if (obs.witness) witnesses.push_back(*obs.witness);
  std::cout << format_observability(p, obs, reports_for(p, witnesses));
  return ctrl.holds && obs.holds ? kHolds : kFails;
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError(path.string() + ": cannot write file");
  out << text;
}

std::string format_events(const Alphabet& sigma, const EventSet& events) {
  std::string out = "{";
  bool first = true;
  for (Event e : events) {
    if (!first) out += ",";
    out += sigma.name(e);
    first = false;
  }
  return out + "}";
}

int run_synthesize(const SynthOptions& o) {
  const auto p = load_problem(o.file);
  const auto bank = SupervisorBank::build(p.spec, p.observation, p.attacks);
  const auto ctrl = check_controllability(p.plant, p.spec);

  for (std::size_t i = 0; i < bank.size(); ++i) {
    const Observer& obs = bank.observer(i);
    std::cout << "observer " << p.attack_names[i] << " (" << to_string(p.attacks[i].kind()) << "): "
              << obs.num_states() << " states\n";
    for (Observer::Id q = 0; q < obs.num_states(); ++q) {
      std::cout << "  q" << q << " " << estimate_label(obs.state(q), p.spec)
                << " psi=" << format_events(p.alphabet, psi(p.spec, obs.state(q))) << "\n";
      for (Symbol t : p.outputs.symbols())
        if (auto to = obs.step(q, t)) std::cout << "    " << p.outputs.name(t) << " -> q" << *to << "\n";
    }
  }

  if (!o.out_dir.empty()) {
    fs::path dir(o.out_dir);
    fs::create_directories(dir);
    write_file(dir / "plant.dot", export_dot(p.plant, "plant"));
    write_file(dir / "spec.dot", export_dot(p.spec, "spec"));
    for (std::size_t i = 0; i < bank.size(); ++i)
      write_file(dir / ("observer_" + p.attack_names[i] + ".dot"),
                 export_dot(bank.observer(i), p.spec, p.outputs, "observer_" + p.attack_names[i]));
    if (select_method(p.attacks) == Method::product) {
      for (std::size_t i = 0; i < p.attacks.size(); ++i)
        for (std::size_t j = 0; j < p.attacks.size(); ++j) {
          const auto name = "test_" + p.attack_names[i] + "_" + p.attack_names[j];
          auto t = build_test_automaton(p.plant, p.spec, p.observation, p.attacks[i], p.attacks[j]);
          write_file(dir / (name + ".dot"), export_dot(t, p.plant, p.spec, name));
        }
    }
  }

  bool enforceable = ctrl.holds;
  if (enforceable) {
    auto m = select_method(p.attacks);
    auto v = m == Method::product       ? check_observability_rr(p.plant, p.spec, p.observation, p.attacks)
             : m == Method::reduction   ? check_observability_ir(p.plant, p.spec, p.observation, p.attacks)
                                        : brute_force_observability(p.plant, p.spec, p.observation, p.attacks,
                                                                    default_oracle_depth(p.plant, p.spec));
    enforceable = v.holds;
  }
  std::cout << "supervisor enforces spec: " << (enforceable ? "yes" : "no") << "\n";
  return enforceable ? kHolds : kFails;
}

int run_simulate(const SimOptions& o) {
  const auto p = load_problem(o.file);
  const auto depth = o.depth.value_or(default_simulation_depth(p.spec));
  const auto report = verify_closed_loop(p.plant, p.spec, p.observation, p.attacks, depth);
  std::cout << format_closed_loop(p, report);
  if (report.inconsistent()) {
    std::cerr << "error: closed loop leaves the specification although it is enforceable\n";
    return kInternal;
  }
  return report.languages_match ? kHolds : kFails;
}

int run_oracle(const OracleOptions& o) {
  const auto p = load_problem(o.file);
  const auto depth = o.depth.value_or(default_oracle_depth(p.plant, p.spec, o.max_depth));
  bool agree = true;
  auto line = [&](const std::string& name, bool ok, const std::string& detail) {
    std::cout << (ok ? "agree    " : "DISAGREE ") << name << ": " << detail << "\n";
    agree &= ok;
  };

  const auto ctrl = check_controllability(p.plant, p.spec);
  bool brute_ctrl = true;
  const auto spec_words = enumerate_language(p.spec, depth);
  for (const auto& w : spec_words.words()) {
    auto x = run(p.plant, w);
    auto r = run(p.spec, w);
    for (Event e : p.alphabet.uncontrollable_events())
      if (p.plant.defined(*x, e) && !p.spec.defined(*r, e)) brute_ctrl = false;
  }
  line("controllability", ctrl.holds == brute_ctrl,
       std::string("exact=") + (ctrl.holds ? "holds" : "fails") + " enumerated=" + (brute_ctrl ? "holds" : "fails"));

  const auto brute = brute_force_observability(p.plant, p.spec, p.observation, p.attacks, depth);
  if (ctrl.holds) {
    const auto m = select_method(p.attacks);
    if (m != Method::brute_force) {
      auto v = m == Method::product ? check_observability_rr(p.plant, p.spec, p.observation, p.attacks)
                                    : check_observability_ir(p.plant, p.spec, p.observation, p.attacks);
      line("observability", v.holds == brute.holds,
           to_string(m) + "=" + (v.holds ? "holds" : "fails") + " brute-force=" + (brute.holds ? "holds" : "fails"));
      if (v.witness)
        line("witness", validate_witness(p.plant, p.spec, p.observation, p.attacks, *v.witness), "re-validated");
    }
  } else {
    std::cout << "skip     observability: specification not controllable\n";
  }
  if (brute.witness)
    line("brute-force witness", validate_witness(p.plant, p.spec, p.observation, p.attacks, *brute.witness),
         "re-validated");

  const auto bank = SupervisorBank::build(p.spec, p.observation, p.attacks);
  std::size_t checked = 0;
  std::size_t mismatched = 0;
  std::vector<OutputWord> layer{{}};
  for (std::size_t len = 0; len <= o.output_length; ++len) {
    std::vector<OutputWord> next;
    for (const auto& y : layer) {
      auto fast = supervisor_decision(supervisor_feed(bank, y)).enabled;
      auto slow = brute_force_supervisor(p.plant, p.spec, p.observation, p.attacks, y,
                                         y.size() + (y.size() + 1) * p.spec.num_states())
                      .enabled;
      ++checked;
      if (fast != slow) ++mismatched;
      if (len < o.output_length)
        for (Symbol t : p.outputs.symbols()) {
          next.push_back(y);
          next.back().push_back(t);
        }
    }
    layer = std::move(next);
  }
  line("supervisor", mismatched == 0,
       std::to_string(checked) + " output words, " + std::to_string(mismatched) + " mismatches");
  return agree ? kHolds : kFails;
}

template <class F>
int guarded(F&& f) {
  try {
    return f();
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInput;
  } catch (const UnsupportedError& e) {
    std::cerr << "unsupported: " << e.what() << "\n";
    return kUnsupported;
  } catch (const PreconditionError& e) {
    std::cerr << "unsupported: " << e.what() << "\n";
    return kUnsupported;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Supervisory control under observation attacks"};
  app.require_subcommand(1);

  CheckOptions check;
  auto* c = app.add_subcommand("check", "Decide controllability and observability under the attacks");
  c->add_option("file", check.file, "Problem file")->required();
  c->add_option("--method", check.method, "Observability test")
      ->check(CLI::IsMember({"auto", "product", "reduction", "brute"}));
  c->add_option("--depth", check.depth, "Word length bound for the brute-force method");
  c->add_option("--max-depth", check.max_depth, "Cap on the default brute-force depth");

  SynthOptions synth;
  auto* s = app.add_subcommand("synthesize", "Build the observer bank, control tables and DOT files");
  s->add_option("file", synth.file, "Problem file")->required();
  s->add_option("--out-dir", synth.out_dir, "Directory for DOT output");

  SimOptions sim;
  auto* m = app.add_subcommand("simulate", "Compute the controlled languages and compare them with the spec");
  m->add_option("file", sim.file, "Problem file")->required();
  m->add_option("--depth", sim.depth, "Word length bound (default 2|R|)");

  OracleOptions oracle;
  auto* o = app.add_subcommand("oracle", "Cross-check every decision procedure against brute force");
  o->add_option("file", oracle.file, "Problem file")->required();
  o->add_option("--depth", oracle.depth, "Word length bound for brute force");
  o->add_option("--max-depth", oracle.max_depth, "Cap on the default brute-force depth");
  o->add_option("--output-length", oracle.output_length, "Longest output word fed to the supervisor");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInput;
  }

  if (*c) return guarded([&] { return run_check(check); });
  if (*s) return guarded([&] { return run_synthesize(synth); });
  if (*m) return guarded([&] { return run_simulate(sim); });
  return guarded([&] { return run_oracle(oracle); });
}
