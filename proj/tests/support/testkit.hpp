#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "desguard/desguard.hpp"

namespace testkit {

using namespace desguard;

/// Everything a check needs, built in code rather than loaded from disk.
struct Fixture {
  Alphabet sigma;
  OutputAlphabet delta;
  ObservationMap P;
  Automaton plant;
  Automaton spec;
  std::vector<AttackModel> attacks;
  std::string label;
};

/// The four-state cycle with the shortcut c: x1 -> x3 and attacks A1, A2, A3
/// (index 0, 1, 2).
Fixture cycle_example();
Fixture with_attacks(const Fixture& f, std::vector<std::size_t> which);

enum class AttackMix { finite, insertion_removal, mixed };

struct GenOptions {
  std::size_t max_plant_states = 5;
  std::size_t max_spec_states = 5;
  std::size_t max_events = 4;
  std::size_t max_outputs = 3;
  std::size_t max_attacks = 3;
  std::size_t max_image = 2;
  double density = 0.55;
  AttackMix mix = AttackMix::finite;
};

/// Random plant G and specification G_K with K a sublanguage of L (G_K maps
/// homomorphically into G). No controllability guarantee.
Fixture random_fixture(std::mt19937_64& rng, const GenOptions& opt);
AttackModel random_attack(std::mt19937_64& rng, const OutputAlphabet& delta, AttackMix mix, std::size_t max_image);

/// Draws until `accept` holds (at most `tries` attempts).
template <class Pred>
Fixture draw(std::mt19937_64& rng, const GenOptions& opt, Pred&& accept, std::size_t tries = 10000) {
  for (std::size_t i = 0; i < tries; ++i) {
    auto f = random_fixture(rng, opt);
    if (accept(f)) return f;
  }
  throw std::runtime_error("fixture generator exhausted");
}

// Oracles. They work on explicit words and explicit sets of output strings
// and share no code with the library's decision procedures.

/// Every corrupted output of w under a finite attack, built symbol by symbol.
std::set<OutputWord> images(const AttackModel& A, const ObservationMap& P, const Word& w);

/// y in AP(w) for any attack kind.
bool member(const AttackModel& A, const ObservationMap& P, const Word& w, const OutputWord& y);

OutputWord remove_symbols(const std::vector<Symbol>& alpha, const OutputWord& y);

/// All words of L(aut) up to `depth`, shortest first.
std::vector<Word> words(const Automaton& aut, std::size_t depth);

/// Literal observability (controllable-event form) over all pairs of words
/// of K up to `depth`.
bool observable(const Fixture& f, std::size_t depth);

/// Literal observability, two-sided form, for K not assumed controllable.
bool observable_general(const Fixture& f, std::size_t depth);

bool controllable(const Fixture& f, std::size_t depth);

/// Set of spec states r = eta(r0, w) over words w of K with y in AP(w).
/// With `depth` the words are limited to that length; otherwise the search
/// runs to its fixed point.
std::set<State> estimate(const Automaton& spec, const AttackModel& A, const ObservationMap& P, const OutputWord& y,
                         std::optional<std::size_t> depth = std::nullopt);

/// Uncontrollable events plus every controllable sigma such that some attack
/// has w in K, y in AP(w), w sigma in K.
std::set<Event> supervisor(const Fixture& f, const OutputWord& y);

/// Controlled languages from their word-level definitions: lmax keeps w
/// sigma when some y in AP(w) enables sigma, lmin when every y does.
std::pair<std::set<Word>, std::set<Word>> controlled(const Fixture& f, std::size_t attack, std::size_t depth);

/// All output words up to `length`.
std::vector<OutputWord> output_words(const OutputAlphabet& delta, std::size_t length);

std::string describe(const Fixture& f);

}  // namespace testkit
