#include <doctest.h>

#include <algorithm>
#include <deque>

#include "desguard/error.hpp"
#include "desguard/observability.hpp"
#include "testkit.hpp"

using namespace testkit;

namespace {

bool has_pair(const TestAutomaton& T, std::optional<Event> l, std::optional<Event> r) {
  const EventPair p{l, r};
  return std::find(T.events().begin(), T.events().end(), p) != T.events().end();
}

// (w, w') spelled by some path of T from its initial state.
bool accepts(const TestAutomaton& T, const Word& w, const Word& wp) {
  std::set<std::tuple<std::size_t, std::size_t, std::size_t>> seen;
  std::deque<std::tuple<std::size_t, std::size_t, std::size_t>> todo{{0, 0, 0}};
  while (!todo.empty()) {
    auto [q, i, j] = todo.front();
    todo.pop_front();
    if (i == w.size() && j == wp.size()) return true;
    if (!seen.insert({q, i, j}).second) continue;
    for (std::size_t ev = 0; ev < T.events().size(); ++ev) {
      const auto& p = T.events()[ev];
      if (p.left && (i == w.size() || w[i] != *p.left)) continue;
      if (p.right && (j == wp.size() || wp[j] != *p.right)) continue;
      if (auto to = T.step(q, ev)) todo.emplace_back(*to, i + (p.left ? 1 : 0), j + (p.right ? 1 : 0));
    }
  }
  return false;
}

// (w, w') can be cut into consecutive pairs drawn from the event set of T.
bool interleaves(const TestAutomaton& T, const Word& w, const Word& wp) {
  std::vector<std::vector<bool>> ok(w.size() + 1, std::vector<bool>(wp.size() + 1, false));
  ok[0][0] = true;
  for (std::size_t i = 0; i <= w.size(); ++i)
    for (std::size_t j = 0; j <= wp.size(); ++j) {
      if (!ok[i][j]) continue;
      for (const auto& p : T.events()) {
        if (p.left && (i == w.size() || w[i] != *p.left)) continue;
        if (p.right && (j == wp.size() || wp[j] != *p.right)) continue;
        ok[i + (p.left ? 1 : 0)][j + (p.right ? 1 : 0)] = true;
      }
    }
  return ok[w.size()][wp.size()];
}

bool overlap(const AttackModel& A, const AttackModel& B, const ObservationMap& P, const Word& w, const Word& wp) {
  const auto x = images(A, P, w);
  for (const auto& y : images(B, P, wp))
    if (x.count(y)) return true;
  return false;
}

}  // namespace

TEST_CASE("verdicts on the cycle") {
  const auto f = cycle_example();
  for (std::size_t i = 0; i < 3; ++i) {
    auto g = with_attacks(f, {i});
    CHECK(check_observability_rr(g.plant, g.spec, g.P, g.attacks).holds);
  }
  const auto g = with_attacks(f, {1, 2});
  const auto v = check_observability_rr(g.plant, g.spec, g.P, g.attacks);
  REQUIRE_FALSE(v.holds);
  CHECK(v.method == Method::product);
  const auto& w = *v.witness;
  CHECK(f.sigma.format(w.escaping) == "abcda");
  CHECK(f.sigma.format(w.staying) == "abcdab");
  CHECK(f.sigma.name(w.event) == "c");
  CHECK(w.escaping_attack == 0);  // A2
  CHECK(w.staying_attack == 1);   // A3
  REQUIRE(w.shared_output);
  CHECK(f.delta.format(*w.shared_output) == "abab");
  CHECK(validate_witness(g.plant, g.spec, g.P, g.attacks, w));
}

TEST_CASE("test automaton event pairs") {
  const auto f = cycle_example();
  const auto a = f.sigma.event("a"), d = f.sigma.event("d");
  const auto T = build_test_automaton(f.plant, f.spec, f.P, f.attacks[2], f.attacks[1]);
  CHECK(has_pair(T, d, std::nullopt));
  CHECK(has_pair(T, a, d));
  CHECK_FALSE(has_pair(T, a, std::nullopt));

  Alphabet s({"p", "q"}, {"p"});
  OutputAlphabet o({"p", "q"});
  ObservationMap id(o, {o.symbol("p"), o.symbol("q")});
  auto G = Automaton::from_names(s, {"0"}, "0", {{"0", "p", "0"}, {"0", "q", "0"}});
  const auto Ti = build_test_automaton(G, G, id, AttackModel::identity(), AttackModel::identity());
  CHECK(Ti.events().size() == 2);
  CHECK(has_pair(Ti, s.event("p"), s.event("p")));
  CHECK(has_pair(Ti, s.event("q"), s.event("q")));

  CHECK_THROWS_AS(build_test_automaton(f.plant, f.spec, f.P, AttackModel::insertion_removal({}), f.attacks[0]),
                  UnsupportedError);
}

TEST_CASE("bad triple of the cycle") {
  const auto f = cycle_example();
  const auto T = build_test_automaton(f.plant, f.spec, f.P, f.attacks[2], f.attacks[1]);
  const auto q = T.find({f.spec.state("x2"), f.plant.state("x1"), f.spec.state("x1")});
  REQUIRE(q);
  auto [w, wp] = T.path_to(*q);
  CHECK(f.delta.format(project(f.P, w)) == "abdab");
  CHECK(f.delta.format(project(f.P, wp)) == "abda");
  CHECK(T.num_states() <= f.spec.num_states() * f.spec.num_states() * f.plant.num_states());
}

TEST_CASE("preconditions") {
  auto f = cycle_example();
  Alphabet u({"a", "b", "c", "d"}, {"a"});
  auto remap = [&](const Automaton& g) {
    std::vector<Automaton::NamedTransition> ts;
    for (const auto& t : g.transitions())
      ts.emplace_back(g.state_name(t.source), g.alphabet().name(t.event), g.state_name(t.target));
    return Automaton::from_names(u, g.state_names(), g.state_name(g.initial()), ts);
  };
  CHECK_THROWS_AS(check_observability_rr(remap(f.plant), remap(f.spec), f.P, f.attacks), PreconditionError);

  std::vector<AttackModel> ir{AttackModel::insertion_removal(InsertionRemovalSet({f.delta.symbol("d")}))};
  CHECK_THROWS_AS(check_observability_rr(f.plant, f.spec, f.P, ir), UnsupportedError);
  CHECK_THROWS_AS(check_observability_ir(f.plant, f.spec, f.P, f.attacks), UnsupportedError);
  CHECK(select_method(f.attacks) == Method::product);
  CHECK(select_method(ir) == Method::reduction);
  std::vector<AttackModel> mixed{f.attacks[0], ir[0]};
  CHECK(select_method(mixed) == Method::brute_force);
}

TEST_CASE("conventional observability") {
  const auto f = cycle_example();
  CHECK(check_conventional_observability(f.plant, f.spec, f.P).holds);
  CHECK(check_conventional_observability(f.spec, f.spec, f.P).holds);
  ObservationMap blind(f.delta, std::vector<Output>(4));
  const auto v = check_conventional_observability(f.plant, f.spec, blind);
  REQUIRE_FALSE(v.holds);
  std::vector<AttackModel> id{AttackModel::identity()};
  CHECK(validate_witness(f.plant, f.spec, blind, id, *v.witness));
}

TEST_CASE("insertion-removal reduction on the cycle") {
  const auto f = cycle_example();
  const Symbol a = f.delta.symbol("a"), b = f.delta.symbol("b"), d = f.delta.symbol("d");
  std::vector<AttackModel> ok{AttackModel::identity(), AttackModel::insertion_removal(InsertionRemovalSet({d}))};
  const auto v = check_observability_ir(f.plant, f.spec, f.P, ok);
  CHECK(v.holds);
  CHECK(v.method == Method::reduction);

  std::vector<AttackModel> bad{AttackModel::insertion_removal(InsertionRemovalSet({a, b}))};
  const auto u = check_observability_ir(f.plant, f.spec, f.P, bad);
  REQUIRE_FALSE(u.holds);
  CHECK(validate_witness(f.plant, f.spec, f.P, bad, *u.witness));
  REQUIRE(u.witness->shared_output);
  CHECK(member(bad[0], f.P, u.witness->staying, *u.witness->shared_output));
  CHECK(member(bad[0], f.P, u.witness->escaping, *u.witness->shared_output));
}

TEST_CASE("brute force on the cycle") {
  const auto f = cycle_example();
  const auto g = with_attacks(f, {1, 2});
  const auto v = brute_force_observability(g.plant, g.spec, g.P, g.attacks, 6);
  REQUIRE_FALSE(v.holds);
  CHECK(v.method == Method::brute_force);
  CHECK(f.sigma.format(v.witness->escaping) == "abcda");
  CHECK(f.sigma.format(v.witness->staying) == "abcdab");
  CHECK(f.sigma.name(v.witness->event) == "c");
  CHECK(validate_witness(g.plant, g.spec, g.P, g.attacks, *v.witness));
  // too shallow to contain abcdab
  CHECK(brute_force_observability(g.plant, g.spec, g.P, g.attacks, 5).holds);
  const auto h = with_attacks(f, {0});
  CHECK(brute_force_observability(h.plant, h.spec, h.P, h.attacks, 8).holds);
  std::vector<AttackModel> id{AttackModel::identity()};
  CHECK(brute_force_observability(f.spec, f.spec, f.P, id, 8).holds);
}

TEST_CASE("brute force agrees with explicit enumeration") {
  std::mt19937_64 rng(21);
  for (int round = 0; round < 150; ++round) {
    GenOptions opt;
    opt.mix = round % 3 == 0 ? AttackMix::finite : round % 3 == 1 ? AttackMix::insertion_removal : AttackMix::mixed;
    auto f = random_fixture(rng, opt);
    const bool ctrl = check_controllability(f.plant, f.spec).holds;
    const std::size_t depth = 4;
    const auto v = brute_force_observability(f.plant, f.spec, f.P, f.attacks, depth);
    const bool expect = ctrl ? observable(f, depth) : observable_general(f, depth);
    CHECK_MESSAGE(v.holds == expect, describe(f));
    if (!v.holds) CHECK(validate_witness(f.plant, f.spec, f.P, f.attacks, *v.witness));
  }
}

TEST_CASE("product test language") {
  std::mt19937_64 rng(13);
  for (int round = 0; round < 25; ++round) {
    GenOptions opt;
    opt.max_attacks = 2;
    auto f = random_fixture(rng, opt);
    const auto& A = f.attacks.front();
    const auto& B = f.attacks.back();
    const auto T = build_test_automaton(f.plant, f.spec, f.P, A, B);
    CHECK(T.num_states() <= f.spec.num_states() * f.spec.num_states() * f.plant.num_states());
    const auto K = words(f.spec, 3);
    const auto L = words(f.plant, 3);
    for (const auto& w : K)
      for (const auto& wp : K) CHECK(accepts(T, w, wp) == overlap(A, B, f.P, w, wp));
    // words outside K are never accepted
    for (const auto& w : L)
      for (const auto& wp : L)
        if (!generates(f.spec, w) || !generates(f.spec, wp)) CHECK_FALSE(accepts(T, w, wp));
    const auto all = words(Automaton(f.sigma, {"s"}, State{}, [&] {
                             std::vector<Transition> ts;
                             for (Event e : f.sigma.events()) ts.push_back({State{}, e, State{}});
                             return ts;
                           }()),
                           3);
    for (const auto& w : all)
      for (const auto& wp : all) CHECK(interleaves(T, w, wp) == overlap(A, B, f.P, w, wp));
  }
}

TEST_CASE("verdict does not depend on attack order") {
  std::mt19937_64 rng(17);
  int checked = 0;
  for (int round = 0; round < 400 && checked < 100; ++round) {
    auto f = random_fixture(rng, {});
    if (!check_controllability(f.plant, f.spec).holds || f.attacks.size() < 2) continue;
    ++checked;
    const auto v = check_observability_rr(f.plant, f.spec, f.P, f.attacks);
    auto rev = f.attacks;
    std::reverse(rev.begin(), rev.end());
    CHECK(check_observability_rr(f.plant, f.spec, f.P, rev).holds == v.holds);
    if (!v.holds) {
      CHECK(validate_witness(f.plant, f.spec, f.P, f.attacks, *v.witness));
      REQUIRE(v.witness->shared_output);
      CHECK(member(f.attacks[v.witness->staying_attack], f.P, v.witness->staying, *v.witness->shared_output));
      CHECK(member(f.attacks[v.witness->escaping_attack], f.P, v.witness->escaping, *v.witness->shared_output));
    }
  }
  CHECK(checked == 100);
}
