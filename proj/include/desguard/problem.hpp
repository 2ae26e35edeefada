#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "desguard/alphabet.hpp"
#include "desguard/automaton.hpp"
#include "desguard/observation.hpp"

namespace desguard {

inline constexpr std::string_view kSchemaVersion = "1";

/// A complete problem instance: plant G, specification G_K, observation map
/// and the hypothesized attacks.
struct ProblemFile {
  Alphabet alphabet;
  OutputAlphabet outputs;
  ObservationMap observation;
  Automaton plant;
  Automaton spec;
  std::vector<std::string> attack_names;
  std::vector<AttackModel> attacks;

  std::size_t attack_index(std::string_view name) const;
};

/// Parses and validates a problem document. Every violation is reported as
/// an InputError whose message starts with "<origin>: <field path>:".
ProblemFile parse_problem(std::string_view text, std::string_view origin = "<input>");
ProblemFile load_problem(const std::filesystem::path& path);

/// Canonical JSON rendering; parse_problem(to_json(p)) reproduces p.
std::string to_json(const ProblemFile& problem);
void save_problem(const ProblemFile& problem, const std::filesystem::path& path);

/// Structural equality of two problems, including state names and order.
bool same_problem(const ProblemFile& a, const ProblemFile& b);

}  // namespace desguard
