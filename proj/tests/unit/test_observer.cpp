#include <doctest.h>

#include "desguard/error.hpp"
#include "desguard/observer.hpp"
#include "testkit.hpp"

using namespace testkit;

namespace {

ObserverState states(const Automaton& aut, std::initializer_list<const char*> names) {
  ObserverState s;
  for (auto n : names) s.push_back(aut.state(n));
  std::sort(s.begin(), s.end());
  return s;
}

std::set<State> as_set(const ObserverState& s) { return {s.begin(), s.end()}; }

EventSet events(const Alphabet& s, std::string_view names) {
  EventSet out;
  for (char c : names) out.insert(s.event(std::string(1, c)));
  return out;
}

}  // namespace

TEST_CASE("unobservable reach on the cycle") {
  const auto f = cycle_example();
  const auto id = AttackModel::identity();
  CHECK(unobservable_reach(f.spec, id, f.P, states(f.spec, {"x2"})) == states(f.spec, {"x2", "x3"}));
  CHECK(unobservable_reach(f.spec, f.attacks[2], f.P, states(f.spec, {"x2"})) ==
        states(f.spec, {"x0", "x2", "x3"}));
  ObservationMap full(f.delta, {f.delta.symbol("a"), f.delta.symbol("b"), f.delta.symbol("a"), f.delta.symbol("d")});
  CHECK(unobservable_reach(f.spec, id, full, states(f.spec, {"x1"})) == states(f.spec, {"x1"}));
}

TEST_CASE("observers on the cycle") {
  const auto f = cycle_example();
  const Symbol a = f.delta.symbol("a"), b = f.delta.symbol("b"), d = f.delta.symbol("d");

  const auto id = build_observer(f.spec, AttackModel::identity(), f.P);
  CHECK(id.state(id.initial()) == states(f.spec, {"x0"}));
  CHECK(id.state(*id.run({a})) == states(f.spec, {"x1"}));
  CHECK(id.state(*id.run({a, b})) == states(f.spec, {"x2", "x3"}));
  CHECK(observer_step(id, id.state(0), a) == states(f.spec, {"x1"}));
  CHECK_FALSE(id.run({b}).has_value());
  CHECK_THROWS_AS(observer_step(id, states(f.spec, {"x1", "x2"}), a), InputError);

  // A1 only counts symbols
  const auto o1 = build_observer(f.spec, f.attacks[0], f.P);
  for (Observer::Id q = 0; q < o1.num_states(); ++q) {
    CHECK(o1.step(q, a) == o1.step(q, b));
    CHECK(o1.step(q, a) == o1.step(q, d));
  }

  const auto o3 = build_observer(f.spec, f.attacks[2], f.P);
  const auto after = o3.run({a, b, a});
  REQUIRE(after);
  CHECK(o3.step(*after, b).has_value());
  for (Observer::Id q = 0; q < o3.num_states(); ++q) CHECK_FALSE(o3.step(q, d).has_value());

  CHECK_THROWS_AS(build_observer(f.spec, AttackModel::insertion_removal({}), f.P), UnsupportedError);
}

TEST_CASE("identity observer of a fully observed spec mirrors the spec") {
  Alphabet s({"a", "b"}, {"a"});
  OutputAlphabet o({"a", "b"});
  ObservationMap P(o, {o.symbol("a"), o.symbol("b")});
  auto K = Automaton::from_names(s, {"0", "1", "2", "3"}, "0",
                                 {{"0", "a", "1"}, {"1", "b", "2"}, {"2", "a", "0"}, {"1", "a", "1"}});
  const auto obs = build_observer(K, AttackModel::identity(), P);
  CHECK(obs.num_states() == 3);  // state 3 is unreachable
  for (const auto& st : obs.states()) CHECK(st.size() == 1);
}

TEST_CASE("psi") {
  const auto f = cycle_example();
  CHECK(psi(f.spec, {}) == events(f.sigma, "bd"));
  CHECK(psi(f.spec, states(f.spec, {"x1"})) == events(f.sigma, "bd"));
  CHECK(psi(f.spec, states(f.spec, {"x2", "x3"})) == events(f.sigma, "bcd"));
}

TEST_CASE("supervisor bank on the cycle") {
  const auto f = cycle_example();
  const Symbol a = f.delta.symbol("a"), b = f.delta.symbol("b"), d = f.delta.symbol("d");
  const auto g1 = with_attacks(f, {0});
  const auto bank1 = SupervisorBank::build(g1.spec, g1.P, g1.attacks);
  CHECK(supervisor_decision(bank1).enabled == events(f.sigma, "abd"));

  const auto g = with_attacks(f, {1, 2});
  const auto bank = SupervisorBank::build(g.spec, g.P, g.attacks);
  const auto after = supervisor_feed(bank, OutputWord{a, b, a, b});
  CHECK(after.alive(0));
  CHECK(after.alive(1));
  CHECK(supervisor_decision(after).enabled.count(f.sigma.event("c")));
  CHECK(after.history() == OutputWord{a, b, a, b});
  CHECK(supervisor_decision(after).enabled ==
        brute_force_supervisor(g.plant, g.spec, g.P, g.attacks, {a, b, a, b}, 12).enabled);

  const auto fed_d = supervisor_feed(bank, d);
  CHECK_FALSE(fed_d.alive(1));

  const auto dead = supervisor_feed(supervisor_feed(bank, OutputWord{b, b, b}), OutputWord{d, d});
  CHECK_FALSE(dead.alive(0));
  CHECK_FALSE(dead.alive(1));
  CHECK(supervisor_decision(dead).enabled == events(f.sigma, "bd"));
  CHECK_FALSE(supervisor_feed(dead, a).alive(0));

  const auto g2 = with_attacks(f, {1});
  const auto b2 = supervisor_feed(SupervisorBank::build(g2.spec, g2.P, g2.attacks), OutputWord{a, b, a, b});
  REQUIRE(b2.alive(0));
  CHECK(as_set(b2.observer(0).state(*b2.current(0))) == estimate(g2.spec, g2.attacks[0], g2.P, {a, b, a, b}));
}

TEST_CASE("brute-force supervisor basics") {
  const auto f = cycle_example();
  CHECK(brute_force_supervisor(f.plant, f.spec, f.P, f.attacks, {}, 8).enabled == events(f.sigma, "abd"));
  std::vector<AttackModel> id{AttackModel::identity()};
  const Symbol b = f.delta.symbol("b");
  CHECK(brute_force_supervisor(f.plant, f.spec, f.P, id, {b}, 8).enabled == events(f.sigma, "bd"));
}

TEST_CASE("observer estimates match brute force") {
  std::mt19937_64 rng(31);
  for (int round = 0; round < 120; ++round) {
    auto f = random_fixture(rng, {});
    for (const auto& A : f.attacks) {
      const auto obs = build_observer(f.spec, A, f.P);
      CHECK(obs.num_states() <= (std::size_t{1} << f.spec.num_states()));
      for (const auto& y : output_words(f.delta, 4)) {
        const auto truth = estimate(f.spec, A, f.P, y);
        const auto q = obs.run(y);
        CHECK_MESSAGE(q.has_value() == !truth.empty(), describe(f));
        if (q) CHECK(as_set(obs.state(*q)) == truth);
      }
    }
  }
}

TEST_CASE("one-symbol steps equal multi-event steps") {
  std::mt19937_64 rng(37);
  for (int round = 0; round < 60; ++round) {
    auto f = random_fixture(rng, {});
    const auto& A = f.attacks.front();
    const auto obs = build_observer(f.spec, A, f.P);
    for (Observer::Id q = 0; q < obs.num_states(); ++q)
      for (Symbol t : f.delta.symbols()) {
        // Words u from a state of q; a node remembers whether u can emit
        // nothing (bit 0) or exactly t (bit 1).
        std::set<std::pair<State, int>> seen;
        std::vector<std::pair<State, int>> todo;
        for (State r : obs.state(q))
          if (seen.insert({r, 1}).second) todo.emplace_back(r, 1);
        std::set<State> direct;
        for (std::size_t i = 0; i < todo.size(); ++i) {
          auto [s, bits] = todo[i];
          if (bits & 2) direct.insert(s);
          for (Event e : f.sigma.events()) {
            auto s2 = f.spec.step(s, e);
            if (!s2) continue;
            int next = 0;
            for (const auto& y : images(A, f.P, {e})) {
              if (y.empty()) next |= bits;
              else if (y == OutputWord{t} && (bits & 1)) next |= 2;
            }
            if (next && seen.insert({*s2, next}).second) todo.emplace_back(*s2, next);
          }
        }
        const auto step = obs.step(q, t);
        CHECK(step.has_value() == !direct.empty());
        if (step) CHECK(as_set(obs.state(*step)) == direct);
      }
  }
}

TEST_CASE("bank decisions match brute force and stay valid") {
  std::mt19937_64 rng(41);
  for (int round = 0; round < 60; ++round) {
    GenOptions opt;
    opt.mix = round % 2 ? AttackMix::mixed : AttackMix::finite;
    auto f = random_fixture(rng, opt);
    const auto bank = SupervisorBank::build(f.spec, f.P, f.attacks);
    const auto unc = f.sigma.uncontrollable_events();
    for (const auto& y : output_words(f.delta, 4)) {
      const auto b = supervisor_feed(bank, y);
      const auto got = supervisor_decision(b).enabled;
      for (Event e : unc) CHECK(got.count(e));
      CHECK_MESSAGE(got == supervisor(f, y), describe(f));
      for (std::size_t i = 0; i < b.size(); ++i) {
        const bool alive = b.alive(i);
        CHECK(alive == !estimate(f.spec, f.attacks[i], f.P, y).empty());
        // retired observers stay retired
        for (Symbol t : f.delta.symbols())
          if (!alive) CHECK_FALSE(supervisor_feed(b, t).alive(i));
      }
    }
  }
}
