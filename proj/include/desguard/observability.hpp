#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "desguard/automaton.hpp"
#include "desguard/observation.hpp"

namespace desguard {

/// A pair (sigma, sigma') of the test automaton's event set; nullopt is eps.
struct EventPair {
  std::optional<Event> left;
  std::optional<Event> right;
  bool operator==(const EventPair&) const = default;
};

/// (r, x', r'): spec state after w, plant and spec states after w'.
struct TestState {
  State r;
  State x_prime;
  State r_prime;
  bool operator==(const TestState&) const = default;
};

/// Product automaton pairing two specification runs (and the plant run of the
/// second) whose corrupted observations can coincide. Only the accessible
/// part is materialized, in breadth-first order from the initial triple.
class TestAutomaton {
 public:
  struct Edge {
    std::size_t source;
    std::size_t event;  // index into events()
    std::size_t target;
  };

  const std::vector<EventPair>& events() const noexcept { return events_; }
  const std::vector<TestState>& states() const noexcept { return states_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  std::size_t num_states() const noexcept { return states_.size(); }

  std::optional<std::size_t> find(const TestState& q) const;
  std::optional<std::size_t> step(std::size_t state, std::size_t event) const;

  /// A shortest pair (w, w') driving the initial triple to `state`.
  std::pair<Word, Word> path_to(std::size_t state) const;
  /// Indices of the edges on that shortest path.
  std::vector<std::size_t> edge_path_to(std::size_t state) const;

 private:
  friend TestAutomaton build_test_automaton(const Automaton&, const Automaton&, const ObservationMap&,
                                            const AttackModel&, const AttackModel&);
  std::vector<EventPair> events_;
  std::vector<TestState> states_;
  std::vector<Edge> edges_;
  std::vector<std::optional<std::size_t>> parent_edge_;  // per state
  std::vector<std::vector<std::optional<std::size_t>>> delta_;  // [state][event] -> state
};

/// Builds the accessible part of T_{A,A'} for finite attacks.
TestAutomaton build_test_automaton(const Automaton& plant, const Automaton& spec, const ObservationMap& P,
                                   const AttackModel& A, const AttackModel& A_prime);

enum class Method { product, reduction, brute_force };
std::string to_string(Method m);

/// Two specification words that may share a corrupted output yet disagree on
/// a one-event continuation: staying+event is in K, escaping+event is in L\K.
struct ObservabilityWitness {
  Word staying;
  Word escaping;
  Event event;
  std::size_t staying_attack = 0;
  std::size_t escaping_attack = 0;
  /// A corrupted output both attacks can produce, when one was computed.
  std::optional<OutputWord> shared_output;
};

struct ObservabilityVerdict {
  bool holds = true;
  Method method = Method::product;
  std::optional<ObservabilityWitness> witness;
};

/// Product-automaton test over every ordered attack pair. Requires a
/// controllable specification (PreconditionError otherwise) and finite
/// attacks (UnsupportedError otherwise).
ObservabilityVerdict check_observability_rr(const Automaton& plant, const Automaton& spec,
                                            const ObservationMap& P, std::span<const AttackModel> attacks);

/// One witness per violating ordered attack pair, in pair order.
std::vector<ObservabilityWitness> find_observability_violations_rr(const Automaton& plant, const Automaton& spec,
                                                                   const ObservationMap& P,
                                                                   std::span<const AttackModel> attacks);

/// Insertion-removal attacks (the identity counts as alpha = {}), reduced to
/// conventional observability under R_{not(alpha_i u alpha_j)} o P.
ObservabilityVerdict check_observability_ir(const Automaton& plant, const Automaton& spec,
                                            const ObservationMap& P, std::span<const AttackModel> attacks);

/// Observability without attacks under the observation map Q.
ObservabilityVerdict check_conventional_observability(const Automaton& plant, const Automaton& spec,
                                                      const ObservationMap& Q);

/// Exhaustive check over all w, w' in K of length <= depth. Uses the
/// controllable-event form when K is controllable and the full two-sided
/// definition otherwise. Accepts any mix of attack kinds.
ObservabilityVerdict brute_force_observability(const Automaton& plant, const Automaton& spec,
                                               const ObservationMap& P, std::span<const AttackModel> attacks,
                                               std::size_t depth);

/// 2 |R|^2 |X|, capped.
std::size_t default_oracle_depth(const Automaton& plant, const Automaton& spec, std::size_t cap = 10);

/// The efficient method applicable to an attack set: product when every
/// attack is finite, reduction when every attack is identity or
/// insertion-removal, brute force otherwise.
Method select_method(std::span<const AttackModel> attacks);

/// Re-checks a witness directly against the word-level definition.
bool validate_witness(const Automaton& plant, const Automaton& spec, const ObservationMap& P,
                      std::span<const AttackModel> attacks, const ObservabilityWitness& witness);

}  // namespace desguard
