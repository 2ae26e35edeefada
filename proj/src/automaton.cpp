#include "desguard/automaton.hpp"

#include <deque>
#include <map>
#include <utility>

#include "desguard/error.hpp"

namespace desguard {

Automaton::Automaton(Alphabet alphabet, std::vector<std::string> states, State initial,
                     std::span<const Transition> transitions)
    : alphabet_(std::move(alphabet)), names_(std::move(states)), initial_(initial) {
  if (names_.empty()) throw InputError("automaton has no states");
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (!lookup_.emplace(names_[i], State(static_cast<std::uint32_t>(i))).second)
      throw InputError("duplicate state '" + names_[i] + "'");
  }
  if (index(initial_) >= names_.size()) throw InputError("initial state is not a declared state");
  table_.assign(names_.size() * alphabet_.size(), -1);
  for (const auto& t : transitions) {
    if (index(t.source) >= names_.size() || index(t.target) >= names_.size())
      throw InputError("transition endpoint is not a declared state");
    if (!alphabet_.contains(t.event)) throw InputError("transition uses an unknown event");
    auto& slot = table_[index(t.source) * alphabet_.size() + index(t.event)];
    const auto target = static_cast<std::int32_t>(index(t.target));
    if (slot >= 0 && slot != target)
      throw InputError("nondeterministic transition from '" + names_[index(t.source)] + "' on '" +
                       alphabet_.name(t.event) + "'");
    slot = target;
  }
}

Automaton Automaton::from_names(Alphabet alphabet, std::vector<std::string> states,
                                std::string_view initial,
                                const std::vector<NamedTransition>& transitions) {
  std::map<std::string, State, std::less<>> ids;
  for (std::size_t i = 0; i < states.size(); ++i)
    ids.emplace(states[i], State(static_cast<std::uint32_t>(i)));
  auto state_of = [&](std::string_view n) {
    auto it = ids.find(n);
    if (it == ids.end()) throw InputError("unknown state '" + std::string(n) + "'");
    return it->second;
  };
  std::vector<Transition> ts;
  for (const auto& [src, ev, dst] : transitions)
    ts.push_back({state_of(src), alphabet.event(ev), state_of(dst)});
  const State init = state_of(initial);
  return Automaton(std::move(alphabet), std::move(states), init, ts);
}

State Automaton::state(std::string_view name) const {
  auto s = find_state(name);
  if (!s) throw InputError("unknown state '" + std::string(name) + "'");
  return *s;
}

std::optional<State> Automaton::find_state(std::string_view name) const {
  auto it = lookup_.find(std::string(name));
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

std::optional<State> Automaton::run_from(State from, const Word& w) const {
  State cur = from;
  for (Event e : w) {
    if (!alphabet_.contains(e)) throw InputError("word uses an event outside the alphabet");
    auto next = step(cur, e);
    if (!next) return std::nullopt;
    cur = *next;
  }
  return cur;
}

std::vector<Transition> Automaton::transitions() const {
  std::vector<Transition> out;
  const std::size_t n = alphabet_.size();
  for (std::size_t i = 0; i < table_.size(); ++i) {
    if (table_[i] < 0) continue;
    out.push_back({State(static_cast<std::uint32_t>(i / n)), Event(static_cast<std::uint32_t>(i % n)),
                   State(static_cast<std::uint32_t>(table_[i]))});
  }
  return out;
}

std::size_t Automaton::num_transitions() const {
  std::size_t n = 0;
  for (auto t : table_) n += t >= 0;
  return n;
}

std::optional<State> run(const Automaton& aut, const Word& w) { return aut.run_from(aut.initial(), w); }

bool generates(const Automaton& aut, const Word& w) { return run(aut, w).has_value(); }

bool BoundedLanguage::is_prefix_closed() const {
  for (const auto& w : words_) {
    if (w.empty()) continue;
    Word prefix(w.begin(), w.end() - 1);
    if (!contains(prefix)) return false;
  }
  return true;
}

bool BoundedLanguage::subset_of(const BoundedLanguage& other) const {
  for (const auto& w : words_)
    if (!other.contains(w)) return false;
  return true;
}

BoundedLanguage enumerate_language(const Automaton& aut, std::size_t depth) {
  BoundedLanguage lang(depth);
  // Each frontier layer is generated in lexicographic order, so the
  // concatenation of layers is shortlex.
  std::vector<std::pair<Word, State>> layer{{Word{}, aut.initial()}};
  const auto events = aut.alphabet().events();
  for (std::size_t len = 0;; ++len) {
    for (const auto& [w, s] : layer) lang.insert(w);
    if (len == depth || layer.empty()) break;
    std::vector<std::pair<Word, State>> next;
    for (const auto& [w, s] : layer) {
      for (Event e : events) {
        if (auto t = aut.step(s, e)) {
          Word ext = w;
          ext.push_back(e);
          next.emplace_back(std::move(ext), *t);
        }
      }
    }
    layer = std::move(next);
  }
  return lang;
}

namespace {

void require_same_alphabet(const Automaton& a, const Automaton& b) {
  if (!(a.alphabet() == b.alphabet()))
    throw InputError("plant and specification use different alphabets");
}

// Breadth-first search over synchronized (spec, plant) pairs. The visitor is
// called once per reachable pair with a shortest word reaching it and may
// stop the search by returning false.
template <typename Visit>
void for_each_synchronized_pair(const Automaton& plant, const Automaton& spec, Visit&& visit) {
  const std::size_t nx = plant.num_states();
  struct Node {
    State r;
    State x;
    std::int64_t parent;
    Event via;
  };
  std::vector<Node> nodes;
  std::vector<bool> seen(spec.num_states() * nx, false);
  auto key = [nx](State r, State x) { return index(r) * nx + index(x); };
  nodes.push_back({spec.initial(), plant.initial(), -1, Event{}});
  seen[key(spec.initial(), plant.initial())] = true;
  auto word_of = [&](std::size_t i) {
    Word w;
    for (auto k = static_cast<std::int64_t>(i); nodes[k].parent >= 0; k = nodes[k].parent)
      w.push_back(nodes[k].via);
    return Word(w.rbegin(), w.rend());
  };
  const auto events = plant.alphabet().events();
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const Node cur = nodes[i];
    if (!visit(cur.r, cur.x, [&] { return word_of(i); })) return;
    for (Event e : events) {
      auto r2 = spec.step(cur.r, e);
      auto x2 = plant.step(cur.x, e);
      if (!r2 || !x2) continue;
      if (seen[key(*r2, *x2)]) continue;
      seen[key(*r2, *x2)] = true;
      nodes.push_back({*r2, *x2, static_cast<std::int64_t>(i), e});
    }
  }
}

}  // namespace

ControllabilityVerdict check_controllability(const Automaton& plant, const Automaton& spec) {
  require_same_alphabet(plant, spec);
  ControllabilityVerdict verdict;
  const auto uncontrollable = plant.alphabet().uncontrollable_events();
  for_each_synchronized_pair(plant, spec, [&](State r, State x, auto word) {
    for (Event e : uncontrollable) {
      if (plant.defined(x, e) && !spec.defined(r, e)) {
        verdict.holds = false;
        verdict.witness = ControllabilityWitness{word(), e};
        return false;
      }
    }
    return true;
  });
  return verdict;
}

bool check_sublanguage(const Automaton& plant, const Automaton& spec, std::size_t depth) {
  require_same_alphabet(plant, spec);
  const auto language = enumerate_language(spec, depth);
  for (const auto& w : language.words())
    if (!generates(plant, w)) return false;
  return true;
}

std::optional<Word> find_sublanguage_violation(const Automaton& plant, const Automaton& spec) {
  require_same_alphabet(plant, spec);
  // Any spec transition the synchronized plant state cannot follow is a
  // violation.
  std::optional<Word> violation;
  const auto events = spec.alphabet().events();
  for_each_synchronized_pair(plant, spec, [&](State r, State x, auto word) {
    for (Event e : events) {
      if (spec.defined(r, e) && !plant.defined(x, e)) {
        Word w = word();
        w.push_back(e);
        violation = std::move(w);
        return false;
      }
    }
    return true;
  });
  return violation;
}

}  // namespace desguard
