#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "desguard/alphabet.hpp"

namespace desguard {

enum class State : std::uint32_t {};
constexpr std::size_t index(State s) noexcept { return static_cast<std::size_t>(s); }

struct Transition {
  State source;
  Event event;
  State target;
};

/// Deterministic automaton with a partial transition function.
///
/// States are addressed by dense index; their original names are kept for
/// reporting. Instances are immutable once constructed.
class Automaton {
 public:
  Automaton() = default;
  Automaton(Alphabet alphabet, std::vector<std::string> states, State initial,
            std::span<const Transition> transitions);

  using NamedTransition = std::tuple<std::string, std::string, std::string>;
  static Automaton from_names(Alphabet alphabet, std::vector<std::string> states,
                              std::string_view initial,
                              const std::vector<NamedTransition>& transitions);

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  std::size_t num_states() const noexcept { return names_.size(); }
  State initial() const noexcept { return initial_; }
  const std::string& state_name(State s) const { return names_.at(index(s)); }
  const std::vector<std::string>& state_names() const noexcept { return names_; }
  State state(std::string_view name) const;
  std::optional<State> find_state(std::string_view name) const;

  std::optional<State> step(State s, Event e) const {
    auto t = table_[index(s) * alphabet_.size() + index(e)];
    if (t < 0) return std::nullopt;
    return State(static_cast<std::uint32_t>(t));
  }
  bool defined(State s, Event e) const { return step(s, e).has_value(); }

  /// Runs `w` from `from`; absent as soon as a transition is undefined.
  std::optional<State> run_from(State from, const Word& w) const;

  /// Transitions ordered by (source, event).
  std::vector<Transition> transitions() const;
  std::size_t num_transitions() const;

 private:
  Alphabet alphabet_;
  std::vector<std::string> names_;
  std::unordered_map<std::string, State> lookup_;
  State initial_{};
  std::vector<std::int32_t> table_;  // state-major, -1 when undefined
};

/// xi(x0, w), or nothing when w leaves the generated language.
std::optional<State> run(const Automaton& aut, const Word& w);
bool generates(const Automaton& aut, const Word& w);

/// Length-lexicographic order on words (shorter first, then by event index).
struct ShortLex {
  bool operator()(const Word& a, const Word& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }
};

/// All words of length at most `depth` in some language.
class BoundedLanguage {
 public:
  BoundedLanguage() = default;
  explicit BoundedLanguage(std::size_t depth) : depth_(depth) {}

  std::size_t depth() const noexcept { return depth_; }
  std::size_t size() const noexcept { return words_.size(); }
  bool contains(const Word& w) const { return words_.count(w) != 0; }
  void insert(Word w) { words_.insert(std::move(w)); }
  const std::set<Word, ShortLex>& words() const noexcept { return words_; }

  bool is_prefix_closed() const;
  bool subset_of(const BoundedLanguage& other) const;

  bool operator==(const BoundedLanguage& other) const { return words_ == other.words_; }

 private:
  std::size_t depth_ = 0;
  std::set<Word, ShortLex> words_;
};

/// Breadth-first enumeration of L(aut) up to `depth`.
BoundedLanguage enumerate_language(const Automaton& aut, std::size_t depth);

struct ControllabilityWitness {
  Word word;    // in K
  Event event;  // uncontrollable, word+event in L but not in K
};

struct ControllabilityVerdict {
  bool holds = true;
  std::optional<ControllabilityWitness> witness;
};

/// Exact controllability of L(spec) with respect to L(plant), decided on the
/// reachable synchronized pairs. The witness word is a shortest one.
ControllabilityVerdict check_controllability(const Automaton& plant, const Automaton& spec);

/// Bounded inclusion L(spec) <= L(plant) on words of length <= depth.
bool check_sublanguage(const Automaton& plant, const Automaton& spec, std::size_t depth);

/// Exact inclusion L(spec) <= L(plant), returning a shortest word of L(spec)
/// outside L(plant) when it fails.
std::optional<Word> find_sublanguage_violation(const Automaton& plant, const Automaton& spec);

}  // namespace desguard
