#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace desguard {

// Strong index types. Names live in the tables below; algorithms work on
// dense indices.
enum class Event : std::uint32_t {};
enum class Symbol : std::uint32_t {};

constexpr std::size_t index(Event e) noexcept { return static_cast<std::size_t>(e); }
constexpr std::size_t index(Symbol s) noexcept { return static_cast<std::size_t>(s); }

using Word = std::vector<Event>;
using OutputWord = std::vector<Symbol>;

/// An observed symbol or the empty output. `std::nullopt` is epsilon and
/// orders before every symbol.
using Output = std::optional<Symbol>;

/// Ordered list of unique names with reverse lookup.
class SymbolTable {
 public:
  SymbolTable() = default;
  explicit SymbolTable(std::vector<std::string> names);

  std::size_t size() const noexcept { return names_.size(); }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  std::optional<std::size_t> find(std::string_view name) const;

  /// True when every name is a single character, so words can be written
  /// without separators ("abcda").
  bool compact() const noexcept { return compact_; }

  /// Splits text into names: whitespace/comma separated, or character by
  /// character for compact tables. Unknown names throw InputError.
  std::vector<std::size_t> parse(std::string_view text) const;
  std::string format(const std::vector<std::size_t>& ids) const;

  bool operator==(const SymbolTable& other) const { return names_ == other.names_; }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, std::size_t> lookup_;
  bool compact_ = true;
};

/// Event alphabet partitioned into controllable and uncontrollable events.
class Alphabet {
 public:
  Alphabet() = default;
  Alphabet(std::vector<std::string> events, const std::vector<std::string>& controllable);

  std::size_t size() const noexcept { return table_.size(); }
  const std::string& name(Event e) const { return table_.name(index(e)); }
  Event event(std::string_view name) const;
  std::optional<Event> find(std::string_view name) const;
  bool contains(Event e) const noexcept { return index(e) < size(); }
  bool controllable(Event e) const { return controllable_.at(index(e)); }

  std::vector<Event> events() const;
  std::vector<Event> controllable_events() const;
  std::vector<Event> uncontrollable_events() const;

  const SymbolTable& table() const noexcept { return table_; }

  Word parse_word(std::string_view text) const;
  std::string format(const Word& w) const;

  bool operator==(const Alphabet& other) const = default;

 private:
  SymbolTable table_;
  std::vector<bool> controllable_;
};

/// The observation alphabet (Delta).
class OutputAlphabet {
 public:
  OutputAlphabet() = default;
  explicit OutputAlphabet(std::vector<std::string> symbols) : table_(std::move(symbols)) {}

  std::size_t size() const noexcept { return table_.size(); }
  const std::string& name(Symbol s) const { return table_.name(index(s)); }
  Symbol symbol(std::string_view name) const;
  std::optional<Symbol> find(std::string_view name) const;
  bool contains(Symbol s) const noexcept { return index(s) < size(); }
  std::vector<Symbol> symbols() const;

  const SymbolTable& table() const noexcept { return table_; }

  OutputWord parse_word(std::string_view text) const;
  std::string format(const OutputWord& y) const;
  std::string format(const Output& o) const;

  bool operator==(const OutputAlphabet& other) const = default;

 private:
  SymbolTable table_;
};

/// Printed form of the empty word.
inline constexpr std::string_view kEpsilon = "ε";

}  // namespace desguard
