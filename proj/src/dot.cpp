#include "desguard/dot.hpp"

#include <algorithm>
#include <sstream>

namespace desguard {

namespace {

std::string quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

void header(std::ostringstream& os, std::string_view name) {
  os << "digraph " << quote(name) << " {\n";
  os << "  rankdir=LR;\n";
  os << "  __start [shape=point];\n";
}

}  // namespace

std::string estimate_label(const ObserverState& s, const Automaton& spec) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ",";
    out += spec.state_name(s[i]);
  }
  return out + "}";
}

std::string export_dot(const Automaton& aut, std::string_view name) {
  std::ostringstream os;
  header(os, name);
  for (std::size_t s = 0; s < aut.num_states(); ++s)
    os << "  n" << s << " [label=" << quote(aut.state_names()[s]) << "];\n";
  if (aut.num_states() > 0) os << "  __start -> n" << index(aut.initial()) << ";\n";
  for (const auto& t : aut.transitions())
    os << "  n" << index(t.source) << " -> n" << index(t.target) << " [label=" << quote(aut.alphabet().name(t.event))
       << "];\n";
  os << "}\n";
  return os.str();
}

std::string export_dot(const Observer& obs, const Automaton& spec, const OutputAlphabet& outputs,
                       std::string_view name) {
  std::ostringstream os;
  header(os, name);
  for (Observer::Id q = 0; q < obs.num_states(); ++q)
    os << "  n" << q << " [label=" << quote(estimate_label(obs.state(q), spec)) << "];\n";
  if (obs.num_states() > 0) os << "  __start -> n" << obs.initial() << ";\n";
  for (Observer::Id q = 0; q < obs.num_states(); ++q)
    for (Symbol t : outputs.symbols())
      if (auto to = obs.step(q, t)) os << "  n" << q << " -> n" << *to << " [label=" << quote(outputs.name(t)) << "];\n";
  os << "}\n";
  return os.str();
}

std::string export_dot(const TestAutomaton& test, const Automaton& plant, const Automaton& spec,
                       std::string_view name) {
  const Alphabet& sigma = spec.alphabet();
  auto event_name = [&](const std::optional<Event>& e) { return e ? sigma.name(*e) : std::string(kEpsilon); };
  std::ostringstream os;
  header(os, name);
  for (std::size_t q = 0; q < test.num_states(); ++q) {
    const auto& s = test.states()[q];
    os << "  n" << q << " [label="
       << quote("(" + spec.state_name(s.r) + "," + plant.state_name(s.x_prime) + "," + spec.state_name(s.r_prime) + ")")
       << "];\n";
  }
  if (test.num_states() > 0) os << "  __start -> n0;\n";
  auto edges = test.edges();
  std::stable_sort(edges.begin(), edges.end(), [](const auto& a, const auto& b) {
    return a.source != b.source ? a.source < b.source : a.event < b.event;
  });
  for (const auto& e : edges) {
    const auto& pair = test.events()[e.event];
    os << "  n" << e.source << " -> n" << e.target << " [label="
       << quote("(" + event_name(pair.left) + "," + event_name(pair.right) + ")") << "];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace desguard
