#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <vector>

#include "desguard/automaton.hpp"
#include "desguard/observation.hpp"

namespace desguard {

/// A state estimate: sorted set of specification states.
using ObserverState = std::vector<State>;
using EventSet = std::set<Event>;

/// Closure of `states` under events whose attacked observation can be empty.
ObserverState unobservable_reach(const Automaton& spec, const AttackModel& A, const ObservationMap& P,
                                 const ObserverState& states);

/// Deterministic observer over the output alphabet tracking the set of
/// specification states consistent with the corrupted output under one
/// attack.
class Observer {
 public:
  using Id = std::size_t;

  const AttackModel& attack() const noexcept { return attack_; }
  std::size_t num_states() const noexcept { return states_.size(); }
  std::size_t num_symbols() const noexcept { return num_symbols_; }
  Id initial() const noexcept { return 0; }
  const ObserverState& state(Id id) const { return states_.at(id); }
  const std::vector<ObserverState>& states() const noexcept { return states_; }
  std::optional<Id> find(const ObserverState& s) const;
  std::optional<Id> step(Id from, Symbol t) const { return delta_.at(from).at(index(t)); }

  /// Runs a whole output word from the initial estimate.
  std::optional<Id> run(const OutputWord& y) const;

 private:
  friend Observer build_observer(const Automaton&, const AttackModel&, const ObservationMap&);
  AttackModel attack_;
  std::size_t num_symbols_ = 0;
  std::vector<ObserverState> states_;
  std::map<ObserverState, Id> ids_;
  std::vector<std::vector<std::optional<Id>>> delta_;  // [state][symbol]
};

/// Subset construction with attacked unobservable reaches, for identity and
/// replacement-removal attacks.
Observer build_observer(const Automaton& spec, const AttackModel& A, const ObservationMap& P);

/// Transition on one corrupted symbol; InputError when `s` is not a state of
/// `obs`.
std::optional<ObserverState> observer_step(const Observer& obs, const ObserverState& s, Symbol t);

/// Uncontrollable events plus controllable events enabled at some state of `s`.
EventSet psi(const Automaton& spec, const ObserverState& s);

struct ControlDecision {
  EventSet enabled;
};

/// A bank of observers, one per hypothesized attack. Observers whose
/// language no longer contains the received output are retired for good and
/// contribute only the uncontrollable events.
///
/// Insertion-removal attacks are served by a conventional observer over the
/// observation map R_{not alpha} o P that ignores received symbols in alpha.
class SupervisorBank {
 public:
  SupervisorBank() = default;
  static SupervisorBank build(const Automaton& spec, const ObservationMap& P, std::span<const AttackModel> attacks);

  std::size_t size() const noexcept { return observers_.size(); }
  const Observer& observer(std::size_t i) const { return *observers_.at(i); }
  bool alive(std::size_t i) const { return current_.at(i).has_value(); }
  std::optional<Observer::Id> current(std::size_t i) const { return current_.at(i); }
  const OutputWord& history() const noexcept { return history_; }

  /// Per-observer position, nullopt when retired. Two banks with the same
  /// configuration make the same decisions from now on.
  const std::vector<std::optional<Observer::Id>>& configuration() const noexcept { return current_; }

  const Automaton& spec() const { return *spec_; }

 private:
  friend SupervisorBank supervisor_feed(const SupervisorBank&, Symbol);
  std::shared_ptr<const Automaton> spec_;
  std::vector<std::shared_ptr<const Observer>> observers_;
  std::vector<InsertionRemovalSet> ignored_;  // symbols skipped per observer
  std::vector<std::optional<Observer::Id>> current_;
  OutputWord history_;
};

ControlDecision supervisor_decision(const SupervisorBank& bank);
SupervisorBank supervisor_feed(const SupervisorBank& bank, Symbol t);
SupervisorBank supervisor_feed(const SupervisorBank& bank, const OutputWord& y);

/// The supervisor defined directly on words: uncontrollable events plus every
/// controllable sigma with some w in K, |w| <= depth, y in AP(w), w sigma in K.
ControlDecision brute_force_supervisor(const Automaton& plant, const Automaton& spec, const ObservationMap& P,
                                       std::span<const AttackModel> attacks, const OutputWord& y,
                                       std::size_t depth);

}  // namespace desguard
