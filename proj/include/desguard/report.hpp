#pragma once

#include <optional>
#include <string>
#include <vector>

#include "desguard/automaton.hpp"
#include "desguard/closed_loop.hpp"
#include "desguard/observability.hpp"
#include "desguard/problem.hpp"

namespace desguard {

/// A violating tuple rendered with names. Built only from witnesses that
/// pass validate_witness.
struct WitnessReport {
  std::string staying;   // w with w sigma in K
  std::string escaping;  // w' with w' sigma in L \ K
  std::string event;
  std::string staying_attack;
  std::string escaping_attack;
  std::optional<std::string> shared_output;
};

/// Throws Error when the witness does not re-validate.
WitnessReport make_witness_report(const ProblemFile& problem, const ObservabilityWitness& witness);

/// Structured (JSON) renderings, newline-terminated.
std::string format_controllability(const ProblemFile& problem, const ControllabilityVerdict& verdict);
std::string format_observability(const ProblemFile& problem, const ObservabilityVerdict& verdict,
                                 const std::vector<WitnessReport>& violations);
std::string format_closed_loop(const ProblemFile& problem, const ClosedLoopReport& report);

}  // namespace desguard
