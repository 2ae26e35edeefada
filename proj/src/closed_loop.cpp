#include "desguard/closed_loop.hpp"

#include <algorithm>
#include <map>

#include "desguard/error.hpp"

namespace desguard {

namespace {

using Config = std::vector<std::optional<Observer::Id>>;

// Distinct bank configurations reachable under some corrupted history.
using ConfigSet = std::map<Config, SupervisorBank>;

}  // namespace

LoopResult compute_controlled_languages(const Automaton& plant, const Automaton& spec, const ObservationMap& P,
                                        std::span<const AttackModel> attacks, std::size_t attack,
                                        std::size_t depth) {
  if (attack >= attacks.size()) throw InputError("attack index out of range");
  const AttackModel& A = attacks[attack];
  if (!A.finite()) throw UnsupportedError("closed-loop simulation needs a finite (non insertion-removal) attack");

  LoopResult result;
  result.attack = attack;
  result.depth = depth;
  result.lmax = BoundedLanguage(depth);
  result.lmin = BoundedLanguage(depth);

  std::map<Config, EventSet> decisions;
  auto decide = [&](const SupervisorBank& bank) -> const EventSet& {
    auto it = decisions.find(bank.configuration());
    if (it == decisions.end()) it = decisions.emplace(bank.configuration(), supervisor_decision(bank).enabled).first;
    return it->second;
  };

  struct Node {
    Word word;
    State x;
    ConfigSet configs;
    bool in_lmin;
  };
  const auto bank = SupervisorBank::build(spec, P, attacks);
  std::vector<Node> layer;
  layer.push_back({Word{}, plant.initial(), ConfigSet{{bank.configuration(), bank}}, true});
  const auto events = plant.alphabet().events();

  for (std::size_t len = 0;; ++len) {
    for (const auto& n : layer) {
      result.lmax.insert(n.word);
      if (n.in_lmin) result.lmin.insert(n.word);
    }
    if (len == depth || layer.empty()) break;
    std::vector<Node> next;
    for (const auto& n : layer) {
      for (Event sigma : events) {
        auto x = plant.step(n.x, sigma);
        if (!x) continue;
        bool some = false;
        bool all = true;
        for (const auto& [cfg, b] : n.configs) {
          const bool enabled = decide(b).count(sigma) != 0;
          some |= enabled;
          all &= enabled;
        }
        if (!some) continue;
        Node child{n.word, *x, {}, n.in_lmin && all};
        child.word.push_back(sigma);
        for (const auto& o : ap_event(A, P, sigma)) {
          for (const auto& [cfg, b] : n.configs) {
            if (!o) {
              child.configs.emplace(cfg, b);
              continue;
            }
            auto fed = supervisor_feed(b, *o);
            auto key = fed.configuration();
            child.configs.emplace(std::move(key), std::move(fed));
          }
        }
        next.push_back(std::move(child));
      }
    }
    layer = std::move(next);
  }
  return result;
}

std::size_t default_simulation_depth(const Automaton& spec) { return 2 * spec.num_states(); }

ClosedLoopReport verify_closed_loop(const Automaton& plant, const Automaton& spec, const ObservationMap& P,
                                    std::span<const AttackModel> attacks, std::size_t depth) {
  ClosedLoopReport report;
  report.depth = depth;
  report.controllability = check_controllability(plant, spec);
  if (report.controllability.holds && select_method(attacks) == Method::product)
    report.observability = check_observability_rr(plant, spec, P, attacks);
  else
    report.observability =
        brute_force_observability(plant, spec, P, attacks, std::max(depth, default_oracle_depth(plant, spec)));
  report.spec_language = enumerate_language(spec, depth);

  for (std::size_t a = 0; a < attacks.size(); ++a) {
    auto loop = compute_controlled_languages(plant, spec, P, attacks, a, depth);
    if (!report.discrepancy) {
      for (const auto& w : loop.lmax.words()) {
        if (!report.spec_language.contains(w)) {
          report.discrepancy = Discrepancy{a, w, Discrepancy::Kind::beyond_spec};
          break;
        }
      }
    }
    if (!report.discrepancy) {
      for (const auto& w : report.spec_language.words()) {
        if (!loop.lmin.contains(w)) {
          report.discrepancy = Discrepancy{a, w, Discrepancy::Kind::blocked_spec};
          break;
        }
      }
    }
    if (!(loop.lmax == report.spec_language) || !(loop.lmin == report.spec_language)) report.languages_match = false;
    report.loops.push_back(std::move(loop));
  }
  return report;
}

}  // namespace desguard
