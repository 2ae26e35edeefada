#include "desguard/alphabet.hpp"

#include <algorithm>
#include <cctype>
#include <utility>

#include "desguard/error.hpp"

namespace desguard {

namespace {

bool is_separator(char c) { return std::isspace(static_cast<unsigned char>(c)) || c == ','; }

}  // namespace

SymbolTable::SymbolTable(std::vector<std::string> names) : names_(std::move(names)) {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    const auto& n = names_[i];
    if (n.empty()) throw InputError("empty symbol name");
    if (n == kEpsilon) throw InputError("'" + n + "' is reserved for the empty word");
    if (std::any_of(n.begin(), n.end(), is_separator))
      throw InputError("symbol name '" + n + "' contains a separator");
    if (!lookup_.emplace(n, i).second) throw InputError("duplicate symbol '" + n + "'");
    if (n.size() != 1) compact_ = false;
  }
}

std::optional<std::size_t> SymbolTable::find(std::string_view name) const {
  auto it = lookup_.find(std::string(name));
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::size_t> SymbolTable::parse(std::string_view text) const {
  std::vector<std::size_t> out;
  if (text == kEpsilon) return out;
  const bool separated = std::any_of(text.begin(), text.end(), is_separator);
  auto lookup = [&](std::string_view tok) {
    auto id = find(tok);
    if (!id) throw InputError("unknown symbol '" + std::string(tok) + "'");
    out.push_back(*id);
  };
  if (!separated && compact_) {
    for (std::size_t i = 0; i < text.size(); ++i) lookup(text.substr(i, 1));
    return out;
  }
  std::size_t pos = 0;
  while (pos < text.size()) {
    while (pos < text.size() && is_separator(text[pos])) ++pos;
    std::size_t end = pos;
    while (end < text.size() && !is_separator(text[end])) ++end;
    if (end > pos) lookup(text.substr(pos, end - pos));
    pos = end;
  }
  return out;
}

std::string SymbolTable::format(const std::vector<std::size_t>& ids) const {
  if (ids.empty()) return std::string(kEpsilon);
  std::string out;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i > 0 && !compact_) out += ' ';
    out += name(ids[i]);
  }
  return out;
}

Alphabet::Alphabet(std::vector<std::string> events, const std::vector<std::string>& controllable)
    : table_(std::move(events)), controllable_(table_.size(), false) {
  for (const auto& c : controllable) {
    auto id = table_.find(c);
    if (!id) throw InputError("controllable event '" + c + "' is not in the alphabet");
    controllable_[*id] = true;
  }
}

Event Alphabet::event(std::string_view name) const {
  auto id = table_.find(name);
  if (!id) throw InputError("unknown event '" + std::string(name) + "'");
  return Event(static_cast<std::uint32_t>(*id));
}

std::optional<Event> Alphabet::find(std::string_view name) const {
  auto id = table_.find(name);
  if (!id) return std::nullopt;
  return Event(static_cast<std::uint32_t>(*id));
}

std::vector<Event> Alphabet::events() const {
  std::vector<Event> out;
  for (std::size_t i = 0; i < size(); ++i) out.push_back(Event(static_cast<std::uint32_t>(i)));
  return out;
}

std::vector<Event> Alphabet::controllable_events() const {
  std::vector<Event> out;
  for (Event e : events())
    if (controllable(e)) out.push_back(e);
  return out;
}

std::vector<Event> Alphabet::uncontrollable_events() const {
  std::vector<Event> out;
  for (Event e : events())
    if (!controllable(e)) out.push_back(e);
  return out;
}

Word Alphabet::parse_word(std::string_view text) const {
  Word w;
  for (auto id : table_.parse(text)) w.push_back(Event(static_cast<std::uint32_t>(id)));
  return w;
}

std::string Alphabet::format(const Word& w) const {
  std::vector<std::size_t> ids;
  for (Event e : w) ids.push_back(index(e));
  return table_.format(ids);
}

Symbol OutputAlphabet::symbol(std::string_view name) const {
  auto id = table_.find(name);
  if (!id) throw InputError("unknown output symbol '" + std::string(name) + "'");
  return Symbol(static_cast<std::uint32_t>(*id));
}

std::optional<Symbol> OutputAlphabet::find(std::string_view name) const {
  auto id = table_.find(name);
  if (!id) return std::nullopt;
  return Symbol(static_cast<std::uint32_t>(*id));
}

std::vector<Symbol> OutputAlphabet::symbols() const {
  std::vector<Symbol> out;
  for (std::size_t i = 0; i < size(); ++i) out.push_back(Symbol(static_cast<std::uint32_t>(i)));
  return out;
}

OutputWord OutputAlphabet::parse_word(std::string_view text) const {
  OutputWord y;
  for (auto id : table_.parse(text)) y.push_back(Symbol(static_cast<std::uint32_t>(id)));
  return y;
}

std::string OutputAlphabet::format(const OutputWord& y) const {
  std::vector<std::size_t> ids;
  for (Symbol s : y) ids.push_back(index(s));
  return table_.format(ids);
}

std::string OutputAlphabet::format(const Output& o) const {
  return o ? name(*o) : std::string(kEpsilon);
}

}  // namespace desguard
