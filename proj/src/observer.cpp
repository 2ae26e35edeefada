#include "desguard/observer.hpp"

#include <algorithm>
#include <deque>

#include "desguard/error.hpp"

namespace desguard {

ObserverState unobservable_reach(const Automaton& spec, const AttackModel& A, const ObservationMap& P,
                                 const ObserverState& states) {
  std::vector<Event> erasable;
  for (Event e : spec.alphabet().events())
    if (epsilon_erasable(A, P, e)) erasable.push_back(e);
  std::vector<bool> in(spec.num_states(), false);
  std::vector<State> stack;
  for (State s : states) {
    if (!in.at(index(s))) {
      in[index(s)] = true;
      stack.push_back(s);
    }
  }
  while (!stack.empty()) {
    State s = stack.back();
    stack.pop_back();
    for (Event e : erasable) {
      auto t = spec.step(s, e);
      if (t && !in[index(*t)]) {
        in[index(*t)] = true;
        stack.push_back(*t);
      }
    }
  }
  ObserverState out;
  for (std::size_t i = 0; i < in.size(); ++i)
    if (in[i]) out.push_back(State(static_cast<std::uint32_t>(i)));
  return out;
}

std::optional<Observer::Id> Observer::find(const ObserverState& s) const {
  auto it = ids_.find(s);
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

std::optional<Observer::Id> Observer::run(const OutputWord& y) const {
  Id cur = initial();
  for (Symbol t : y) {
    if (index(t) >= num_symbols_) throw InputError("output word uses an unknown symbol");
    auto next = step(cur, t);
    if (!next) return std::nullopt;
    cur = *next;
  }
  return cur;
}

Observer build_observer(const Automaton& spec, const AttackModel& A, const ObservationMap& P) {
  if (!A.finite()) throw UnsupportedError("observers are built for identity and replacement-removal attacks");
  if (P.num_events() != spec.alphabet().size())
    throw InputError("observation map does not cover the event alphabet");

  Observer obs;
  obs.attack_ = A;
  obs.num_symbols_ = P.outputs().size();

  // carriers[t]: events e with t in AP(e).
  std::vector<std::vector<Event>> carriers(obs.num_symbols_);
  for (Event e : spec.alphabet().events())
    for (const auto& o : ap_event(A, P, e))
      if (o) carriers[index(*o)].push_back(e);

  auto intern = [&](ObserverState s) {
    auto [it, fresh] = obs.ids_.emplace(s, obs.states_.size());
    if (fresh) {
      obs.states_.push_back(std::move(s));
      obs.delta_.emplace_back(obs.num_symbols_);
    }
    return it->second;
  };
  intern(unobservable_reach(spec, A, P, {spec.initial()}));

  for (Observer::Id id = 0; id < obs.states_.size(); ++id) {
    for (std::size_t t = 0; t < obs.num_symbols_; ++t) {
      ObserverState targets;
      for (State r : obs.states_[id])
        for (Event e : carriers[t])
          if (auto next = spec.step(r, e)) targets.push_back(*next);
      if (targets.empty()) continue;
      std::sort(targets.begin(), targets.end());
      targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
      const auto target = intern(unobservable_reach(spec, A, P, targets));
      obs.delta_[id][t] = target;
    }
  }
  return obs;
}

std::optional<ObserverState> observer_step(const Observer& obs, const ObserverState& s, Symbol t) {
  auto id = obs.find(s);
  if (!id) throw InputError("estimate is not a state of this observer");
  if (index(t) >= obs.num_symbols()) throw InputError("unknown output symbol");
  auto next = obs.step(*id, t);
  if (!next) return std::nullopt;
  return obs.state(*next);
}

EventSet psi(const Automaton& spec, const ObserverState& s) {
  EventSet out;
  for (Event e : spec.alphabet().events()) {
    if (!spec.alphabet().controllable(e)) {
      out.insert(e);
      continue;
    }
    if (std::any_of(s.begin(), s.end(), [&](State r) { return spec.defined(r, e); })) out.insert(e);
  }
  return out;
}

SupervisorBank SupervisorBank::build(const Automaton& spec, const ObservationMap& P,
                                     std::span<const AttackModel> attacks) {
  SupervisorBank bank;
  bank.spec_ = std::make_shared<const Automaton>(spec);
  for (const auto& a : attacks) {
    if (a.finite()) {
      bank.observers_.push_back(std::make_shared<const Observer>(build_observer(spec, a, P)));
      bank.ignored_.emplace_back();
    } else {
      const auto alpha = a.alpha();
      const auto Q = compose_removal_observation(alpha, P);
      bank.observers_.push_back(std::make_shared<const Observer>(build_observer(spec, AttackModel::identity(), Q)));
      bank.ignored_.push_back(alpha);
    }
    bank.current_.emplace_back(bank.observers_.back()->initial());
  }
  return bank;
}

ControlDecision supervisor_decision(const SupervisorBank& bank) {
  ControlDecision d;
  for (Event e : bank.spec().alphabet().uncontrollable_events()) d.enabled.insert(e);
  for (std::size_t i = 0; i < bank.size(); ++i) {
    if (!bank.alive(i)) continue;
    const auto part = psi(bank.spec(), bank.observer(i).state(*bank.current(i)));
    d.enabled.insert(part.begin(), part.end());
  }
  return d;
}

SupervisorBank supervisor_feed(const SupervisorBank& bank, Symbol t) {
  SupervisorBank next = bank;
  next.history_.push_back(t);
  for (std::size_t i = 0; i < next.size(); ++i) {
    auto& cur = next.current_[i];
    if (!cur || next.ignored_[i].contains(t)) continue;
    cur = next.observers_[i]->step(*cur, t);
  }
  return next;
}

SupervisorBank supervisor_feed(const SupervisorBank& bank, const OutputWord& y) {
  SupervisorBank next = bank;
  for (Symbol t : y) next = supervisor_feed(next, t);
  return next;
}

ControlDecision brute_force_supervisor(const Automaton& plant, const Automaton& spec, const ObservationMap& P,
                                       std::span<const AttackModel> attacks, const OutputWord& y,
                                       std::size_t depth) {
  if (!(plant.alphabet() == spec.alphabet())) throw InputError("plant and specification use different alphabets");
  ControlDecision d;
  for (Event e : spec.alphabet().uncontrollable_events()) d.enabled.insert(e);
  const auto controllable = spec.alphabet().controllable_events();
  const auto events = spec.alphabet().events();

  for (const auto& A : attacks) {
    // Words of K are enumerated breadth-first together with the set of
    // prefixes of y they can produce (the membership table of
    // ap_inverse_contains, row by row). Words with equal (state, row) have the
    // same future, so only one representative is expanded.
    InsertionRemovalSet alpha;
    OutputWord target = y;
    if (!A.finite()) {
      alpha = A.alpha();
      target = r_not_alpha(alpha, y);
    }
    auto image = [&](Event e) -> OutputSet {
      if (A.finite()) return ap_event(A, P, e);
      const auto& o = P(e);
      if (!o || alpha.contains(*o)) return {std::nullopt};
      return {o};
    };
    using Row = std::vector<bool>;
    std::set<std::pair<State, Row>> seen;
    std::vector<std::pair<State, Row>> layer;
    Row start(target.size() + 1, false);
    start[0] = true;
    layer.emplace_back(spec.initial(), start);
    seen.insert(layer.front());
    for (std::size_t len = 0;; ++len) {
      for (const auto& [r, row] : layer) {
        if (!row[target.size()]) continue;
        for (Event sigma : controllable)
          if (spec.defined(r, sigma)) d.enabled.insert(sigma);
      }
      if (len == depth || layer.empty()) break;
      std::vector<std::pair<State, Row>> next_layer;
      for (const auto& [r, row] : layer) {
        for (Event e : events) {
          auto r2 = spec.step(r, e);
          if (!r2) continue;
          const auto img = image(e);
          const bool erasable = contains(img, std::nullopt);
          Row next(row.size(), false);
          bool any = false;
          for (std::size_t j = 0; j < row.size(); ++j) {
            if (!row[j]) continue;
            if (erasable) next[j] = any = true;
            if (j < target.size() && contains(img, target[j])) next[j + 1] = any = true;
          }
          if (!any) continue;
          auto node = std::make_pair(*r2, std::move(next));
          if (seen.insert(node).second) next_layer.push_back(std::move(node));
        }
      }
      layer = std::move(next_layer);
    }
  }
  return d;
}

}  // namespace desguard
