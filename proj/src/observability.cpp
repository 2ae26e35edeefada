#include "desguard/observability.hpp"

#include <algorithm>
#include <map>
#include <tuple>
#include <unordered_map>

#include "desguard/error.hpp"

namespace desguard {

std::optional<std::size_t> TestAutomaton::find(const TestState& q) const {
  auto it = std::find(states_.begin(), states_.end(), q);
  if (it == states_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - states_.begin());
}

std::optional<std::size_t> TestAutomaton::step(std::size_t state, std::size_t event) const {
  return delta_.at(state).at(event);
}

std::vector<std::size_t> TestAutomaton::edge_path_to(std::size_t state) const {
  std::vector<std::size_t> path;
  for (auto e = parent_edge_.at(state); e; e = parent_edge_[edges_[*e].source]) path.push_back(*e);
  std::reverse(path.begin(), path.end());
  return path;
}

std::pair<Word, Word> TestAutomaton::path_to(std::size_t state) const {
  Word w, w_prime;
  for (auto e : edge_path_to(state)) {
    const auto& pair = events_[edges_[e].event];
    if (pair.left) w.push_back(*pair.left);
    if (pair.right) w_prime.push_back(*pair.right);
  }
  return {std::move(w), std::move(w_prime)};
}

namespace {

void require_finite(std::span<const AttackModel> attacks) {
  for (const auto& a : attacks)
    if (!a.finite())
      throw UnsupportedError("the product test needs identity or replacement-removal attacks");
}

void require_controllable(const Automaton& plant, const Automaton& spec) {
  if (!check_controllability(plant, spec).holds)
    throw PreconditionError("the specification is not controllable");
}

OutputSet image_or_epsilon(const AttackModel& A, const ObservationMap& P, const std::optional<Event>& e) {
  if (!e) return {std::nullopt};
  return ap_event(A, P, *e);
}

// A common corrupted output read off the edge labels of a path.
OutputWord shared_output_along(const TestAutomaton& T, const ObservationMap& P, const AttackModel& A,
                               const AttackModel& A_prime, std::size_t state) {
  OutputWord y;
  for (auto e : T.edge_path_to(state)) {
    const auto& pair = T.events()[T.edges()[e].event];
    const auto left = image_or_epsilon(A, P, pair.left);
    const auto right = image_or_epsilon(A_prime, P, pair.right);
    // Prefer the empty output when both sides can erase.
    for (const auto& o : left) {
      if (contains(right, o)) {
        if (o) y.push_back(*o);
        break;
      }
    }
  }
  return y;
}

// Searches T_{A,A'} for a triple where a controllable event is enabled after
// w (in K) and after w' (in L) but not after w' in K.
std::optional<ObservabilityWitness> product_search(const Automaton& plant, const Automaton& spec,
                                                   const ObservationMap& P, const AttackModel& A,
                                                   const AttackModel& A_prime) {
  const auto T = build_test_automaton(plant, spec, P, A, A_prime);
  const auto controllable = spec.alphabet().controllable_events();
  for (std::size_t i = 0; i < T.num_states(); ++i) {
    const auto& q = T.states()[i];
    for (Event sigma : controllable) {
      if (spec.defined(q.r, sigma) && plant.defined(q.x_prime, sigma) && !spec.defined(q.r_prime, sigma)) {
        auto [w, w_prime] = T.path_to(i);
        ObservabilityWitness wit;
        wit.staying = std::move(w);
        wit.escaping = std::move(w_prime);
        wit.event = sigma;
        wit.shared_output = shared_output_along(T, P, A, A_prime, i);
        return wit;
      }
    }
  }
  return std::nullopt;
}

}  // namespace

TestAutomaton build_test_automaton(const Automaton& plant, const Automaton& spec, const ObservationMap& P,
                                   const AttackModel& A, const AttackModel& A_prime) {
  if (!A.finite() || !A_prime.finite())
    throw UnsupportedError("test automata are defined for identity and replacement-removal attacks only");
  if (!(plant.alphabet() == spec.alphabet()))
    throw InputError("plant and specification use different alphabets");
  if (P.num_events() != spec.alphabet().size())
    throw InputError("observation map does not cover the event alphabet");

  TestAutomaton T;
  std::vector<std::optional<Event>> choices{std::nullopt};
  for (Event e : spec.alphabet().events()) choices.emplace_back(e);
  for (const auto& s : choices) {
    for (const auto& s_prime : choices) {
      if (!s && !s_prime) continue;
      if (intersects(image_or_epsilon(A, P, s), image_or_epsilon(A_prime, P, s_prime)))
        T.events_.push_back({s, s_prime});
    }
  }

  const std::size_t nr = spec.num_states();
  const std::size_t nx = plant.num_states();
  std::vector<std::int64_t> id(nr * nx * nr, -1);
  auto key = [&](const TestState& q) { return (index(q.r) * nx + index(q.x_prime)) * nr + index(q.r_prime); };
  auto add = [&](const TestState& q, std::optional<std::size_t> via) {
    id[key(q)] = static_cast<std::int64_t>(T.states_.size());
    T.states_.push_back(q);
    T.parent_edge_.push_back(via);
    T.delta_.emplace_back(T.events_.size());
  };
  add({spec.initial(), plant.initial(), spec.initial()}, std::nullopt);

  for (std::size_t i = 0; i < T.states_.size(); ++i) {
    const TestState q = T.states_[i];
    for (std::size_t ev = 0; ev < T.events_.size(); ++ev) {
      const auto& [s, s_prime] = T.events_[ev];
      TestState next = q;
      if (s) {
        auto r = spec.step(q.r, *s);
        if (!r) continue;
        next.r = *r;
      }
      if (s_prime) {
        auto x = plant.step(q.x_prime, *s_prime);
        auto r = spec.step(q.r_prime, *s_prime);
        if (!x || !r) continue;
        next.x_prime = *x;
        next.r_prime = *r;
      }
      const std::size_t edge = T.edges_.size();
      std::size_t target;
      if (id[key(next)] < 0) {
        target = T.states_.size();
        add(next, edge);
      } else {
        target = static_cast<std::size_t>(id[key(next)]);
      }
      T.edges_.push_back({i, ev, target});
      T.delta_[i][ev] = target;
    }
  }
  return T;
}

std::string to_string(Method m) {
  switch (m) {
    case Method::product:
      return "product";
    case Method::reduction:
      return "reduction";
    case Method::brute_force:
      return "brute-force";
  }
  return "unknown";
}

std::vector<ObservabilityWitness> find_observability_violations_rr(const Automaton& plant, const Automaton& spec,
                                                                   const ObservationMap& P,
                                                                   std::span<const AttackModel> attacks) {
  require_finite(attacks);
  require_controllable(plant, spec);
  std::vector<ObservabilityWitness> out;
  for (std::size_t i = 0; i < attacks.size(); ++i) {
    for (std::size_t j = 0; j < attacks.size(); ++j) {
      if (auto wit = product_search(plant, spec, P, attacks[i], attacks[j])) {
        wit->staying_attack = i;
        wit->escaping_attack = j;
        out.push_back(std::move(*wit));
      }
    }
  }
  return out;
}

ObservabilityVerdict check_observability_rr(const Automaton& plant, const Automaton& spec, const ObservationMap& P,
                                            std::span<const AttackModel> attacks) {
  require_finite(attacks);
  require_controllable(plant, spec);
  ObservabilityVerdict verdict;
  verdict.method = Method::product;
  for (std::size_t i = 0; i < attacks.size(); ++i) {
    for (std::size_t j = 0; j < attacks.size(); ++j) {
      if (auto wit = product_search(plant, spec, P, attacks[i], attacks[j])) {
        wit->staying_attack = i;
        wit->escaping_attack = j;
        verdict.holds = false;
        verdict.witness = std::move(wit);
        return verdict;
      }
    }
  }
  return verdict;
}

ObservabilityVerdict check_conventional_observability(const Automaton& plant, const Automaton& spec,
                                                      const ObservationMap& Q) {
  const AttackModel id = AttackModel::identity();
  return check_observability_rr(plant, spec, Q, std::span<const AttackModel>(&id, 1));
}

ObservabilityVerdict check_observability_ir(const Automaton& plant, const Automaton& spec, const ObservationMap& P,
                                            std::span<const AttackModel> attacks) {
  for (const auto& a : attacks)
    if (a.kind() == AttackModel::Kind::replacement_removal)
      throw UnsupportedError("the reduction test needs identity or insertion-removal attacks");
  ObservabilityVerdict verdict;
  verdict.method = Method::reduction;
  for (std::size_t i = 0; i < attacks.size(); ++i) {
    for (std::size_t j = i; j < attacks.size(); ++j) {
      const auto alpha_i = attacks[i].alpha();
      const auto alpha_j = attacks[j].alpha();
      const auto Q = compose_removal_observation(alpha_i.unite(alpha_j), P);
      auto conventional = check_conventional_observability(plant, spec, Q);
      if (conventional.holds) continue;
      auto wit = std::move(*conventional.witness);
      wit.staying_attack = i;
      wit.escaping_attack = j;
      wit.shared_output = common_corruption_witness(alpha_i, alpha_j, project(P, wit.staying), project(P, wit.escaping));
      verdict.holds = false;
      verdict.witness = std::move(wit);
      return verdict;
    }
  }
  return verdict;
}

namespace {

struct OutputWordHash {
  std::size_t operator()(const OutputWord& y) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (Symbol s : y) h = (h ^ (index(s) + 1)) * 1099511628211ull;
    return h;
  }
};

struct SideEntry {
  State x;
  State r;
  Word word;
};

// For one attack and a pair-level removal set alpha: every key
// R_{not alpha}(y) with y in AP(w), w in K, |w| <= depth, together with the
// plant/spec states after w. Words reaching the same (key, x, r) have the
// same continuations, so only the first (shortest) one is expanded.
using SideIndex = std::map<OutputWord, std::vector<SideEntry>>;

SideIndex build_side_index(const Automaton& plant, const Automaton& spec, const ObservationMap& P,
                           const AttackModel& A, const InsertionRemovalSet& alpha, std::size_t depth) {
  const std::size_t nx = plant.num_states();
  const std::size_t nr = spec.num_states();
  std::unordered_map<OutputWord, std::vector<bool>, OutputWordHash> seen;
  SideIndex index_out;
  struct Node {
    OutputWord key;
    State x;
    State r;
    Word word;
  };
  auto visit = [&](Node& n) {
    auto& mask = seen[n.key];
    if (mask.empty()) mask.assign(nx * nr, false);
    const std::size_t slot = index(n.x) * nr + index(n.r);
    if (mask[slot]) return false;
    mask[slot] = true;
    index_out[n.key].push_back({n.x, n.r, n.word});
    return true;
  };
  std::vector<Node> layer{{OutputWord{}, plant.initial(), spec.initial(), Word{}}};
  visit(layer.front());
  const auto events = spec.alphabet().events();
  for (std::size_t len = 0; len < depth && !layer.empty(); ++len) {
    std::vector<Node> next;
    for (const auto& n : layer) {
      for (Event e : events) {
        auto r = spec.step(n.r, e);
        auto x = plant.step(n.x, e);
        if (!r || !x) continue;
        OutputSet image;
        if (A.finite())
          image = ap_event(A, P, e);
        else
          image = {P(e)};
        for (const auto& o : image) {
          Node child{n.key, *x, *r, n.word};
          child.word.push_back(e);
          if (o && !alpha.contains(*o)) child.key.push_back(*o);
          if (visit(child)) next.push_back(std::move(child));
        }
      }
    }
    layer = std::move(next);
  }
  return index_out;
}

InsertionRemovalSet removal_part(const AttackModel& a) {
  return a.finite() ? InsertionRemovalSet{} : a.alpha();
}

}  // namespace

ObservabilityVerdict brute_force_observability(const Automaton& plant, const Automaton& spec,
                                               const ObservationMap& P, std::span<const AttackModel> attacks,
                                               std::size_t depth) {
  ObservabilityVerdict verdict;
  verdict.method = Method::brute_force;
  const bool controllable = check_controllability(plant, spec).holds;
  const auto candidates = controllable ? spec.alphabet().controllable_events() : spec.alphabet().events();

  std::map<std::pair<std::size_t, std::vector<Symbol>>, SideIndex> cache;
  auto side = [&](std::size_t a, const InsertionRemovalSet& alpha) -> const SideIndex& {
    auto key = std::make_pair(a, alpha.symbols());
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, build_side_index(plant, spec, P, attacks[a], alpha, depth)).first;
    return it->second;
  };

  for (std::size_t i = 0; i < attacks.size(); ++i) {
    for (std::size_t j = 0; j < attacks.size(); ++j) {
      // Overlap of AP(w) and A'P(w') is equality of keys after removing the
      // symbols either attack may insert.
      const auto alpha = removal_part(attacks[i]).unite(removal_part(attacks[j]));
      const auto& staying = side(i, alpha);
      const auto& escaping = side(j, alpha);
      for (const auto& [key, left] : staying) {
        auto it = escaping.find(key);
        if (it == escaping.end()) continue;
        for (const auto& s : left) {
          for (const auto& e : it->second) {
            for (Event sigma : candidates) {
              if (spec.defined(s.r, sigma) && plant.defined(e.x, sigma) && !spec.defined(e.r, sigma)) {
                ObservabilityWitness wit{s.word, e.word, sigma, i, j, std::nullopt};
                wit.shared_output = common_output(attacks[i], attacks[j], P, s.word, e.word);
                verdict.holds = false;
                verdict.witness = std::move(wit);
                return verdict;
              }
            }
          }
        }
      }
    }
  }
  return verdict;
}

std::size_t default_oracle_depth(const Automaton& plant, const Automaton& spec, std::size_t cap) {
  const std::size_t r = spec.num_states();
  return std::min(cap, 2 * r * r * plant.num_states());
}

Method select_method(std::span<const AttackModel> attacks) {
  bool any_rr = false;
  bool any_ir = false;
  for (const auto& a : attacks) {
    any_rr |= a.kind() == AttackModel::Kind::replacement_removal;
    any_ir |= a.kind() == AttackModel::Kind::insertion_removal;
  }
  if (any_rr && any_ir) return Method::brute_force;
  return any_ir ? Method::reduction : Method::product;
}

bool validate_witness(const Automaton& plant, const Automaton& spec, const ObservationMap& P,
                      std::span<const AttackModel> attacks, const ObservabilityWitness& wit) {
  if (wit.staying_attack >= attacks.size() || wit.escaping_attack >= attacks.size()) return false;
  auto extend = [&](const Word& w) {
    Word out = w;
    out.push_back(wit.event);
    return out;
  };
  if (!generates(spec, wit.staying) || !generates(spec, wit.escaping)) return false;
  if (!generates(spec, extend(wit.staying))) return false;
  if (!generates(plant, extend(wit.escaping)) || generates(spec, extend(wit.escaping))) return false;
  const auto& A = attacks[wit.staying_attack];
  const auto& A_prime = attacks[wit.escaping_attack];
  auto y = wit.shared_output;
  if (!y) y = common_output(A, A_prime, P, wit.staying, wit.escaping);
  if (!y) return false;
  return ap_inverse_contains(A, P, wit.staying, *y) && ap_inverse_contains(A_prime, P, wit.escaping, *y);
}

}  // namespace desguard
