#pragma once

#include <string>
#include <string_view>

#include "desguard/automaton.hpp"
#include "desguard/observability.hpp"
#include "desguard/observer.hpp"

namespace desguard {

/// Graphviz digraphs. Node and edge order follow state indices and
/// (source, label) order, so the text is identical across runs.
std::string export_dot(const Automaton& aut, std::string_view name = "G");

/// Observer states are labeled with their estimate sets, e.g. "{x0,x1}".
std::string export_dot(const Observer& obs, const Automaton& spec, const OutputAlphabet& outputs,
                       std::string_view name = "observer");

/// Nodes are labeled "(r,x',r')", edges "(sigma,sigma')" with ε for a
/// missing component.
std::string export_dot(const TestAutomaton& test, const Automaton& plant, const Automaton& spec,
                       std::string_view name = "test");

std::string estimate_label(const ObserverState& s, const Automaton& spec);

}  // namespace desguard
