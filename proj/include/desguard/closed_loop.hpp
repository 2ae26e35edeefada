#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "desguard/automaton.hpp"
#include "desguard/observability.hpp"
#include "desguard/observation.hpp"
#include "desguard/observer.hpp"

namespace desguard {

/// Closed-loop languages of the observer-bank supervisor when `attack` is
/// the attack actually carried out: lmax keeps w sigma when some corrupted
/// history of w enables sigma, lmin only when every history does.
struct LoopResult {
  BoundedLanguage lmax;
  BoundedLanguage lmin;
  std::size_t attack = 0;
  std::size_t depth = 0;
};

/// Breadth-first simulation to `depth`. The supervisor is the observer bank
/// built from all of `attacks`; the plant's output is corrupted by
/// attacks[attack], which must be finite.
LoopResult compute_controlled_languages(const Automaton& plant, const Automaton& spec, const ObservationMap& P,
                                        std::span<const AttackModel> attacks, std::size_t attack,
                                        std::size_t depth);

struct Discrepancy {
  enum class Kind {
    beyond_spec,   // in lmax but not in K
    blocked_spec,  // in K but not in lmin
  };
  std::size_t attack = 0;
  Word word;
  Kind kind = Kind::beyond_spec;
};

struct ClosedLoopReport {
  ControllabilityVerdict controllability;
  ObservabilityVerdict observability;
  std::size_t depth = 0;
  BoundedLanguage spec_language;  // K up to depth
  std::vector<LoopResult> loops;  // one per attack
  /// lmin = lmax = K (up to depth) for every attack.
  bool languages_match = true;
  std::optional<Discrepancy> discrepancy;

  bool enforceable() const { return controllability.holds && observability.holds; }
  /// Enforceable yet the simulated supervisor missed K: an implementation bug.
  bool inconsistent() const { return enforceable() && !languages_match; }
};

/// Checks controllability and observability, simulates the bank supervisor
/// against every attack and compares the controlled languages with K.
ClosedLoopReport verify_closed_loop(const Automaton& plant, const Automaton& spec, const ObservationMap& P,
                                    std::span<const AttackModel> attacks, std::size_t depth);

/// 2 |R|.
std::size_t default_simulation_depth(const Automaton& spec);

}  // namespace desguard
