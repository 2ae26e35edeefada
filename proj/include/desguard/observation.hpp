#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "desguard/alphabet.hpp"

namespace desguard {

/// Sorted, duplicate-free set of outputs (epsilon first when present).
using OutputSet = std::vector<Output>;

OutputSet make_output_set(std::vector<Output> outputs);
bool contains(const OutputSet& set, const Output& o);
bool intersects(const OutputSet& a, const OutputSet& b);

/// Per-event observation map P: Sigma -> Delta u {eps}.
class ObservationMap {
 public:
  ObservationMap() = default;
  ObservationMap(OutputAlphabet outputs, std::vector<Output> table);

  const OutputAlphabet& outputs() const noexcept { return outputs_; }
  std::size_t num_events() const noexcept { return table_.size(); }
  const Output& operator()(Event e) const { return table_.at(index(e)); }
  const std::vector<Output>& table() const noexcept { return table_; }

  bool operator==(const ObservationMap& other) const = default;

 private:
  OutputAlphabet outputs_;
  std::vector<Output> table_;
};

/// P(w) with epsilon images dropped.
OutputWord project(const ObservationMap& P, const Word& w);

/// phi: Delta -> nonempty subsets of Delta u {eps}.
class ReplacementRemovalMap {
 public:
  ReplacementRemovalMap() = default;
  /// `images[t]` is phi(t). Every image must be nonempty.
  explicit ReplacementRemovalMap(std::vector<OutputSet> images);

  /// phi(t) = {t} for every t.
  static ReplacementRemovalMap identity(std::size_t num_symbols);

  std::size_t num_symbols() const noexcept { return images_.size(); }
  const OutputSet& operator()(Symbol t) const { return images_.at(index(t)); }
  const std::vector<OutputSet>& images() const noexcept { return images_; }

  bool operator==(const ReplacementRemovalMap& other) const = default;

 private:
  std::vector<OutputSet> images_;
};

/// The symbols an insertion-removal attack may insert or delete.
class InsertionRemovalSet {
 public:
  InsertionRemovalSet() = default;
  explicit InsertionRemovalSet(std::vector<Symbol> alpha);

  bool contains(Symbol t) const;
  const std::vector<Symbol>& symbols() const noexcept { return alpha_; }
  bool empty() const noexcept { return alpha_.empty(); }
  InsertionRemovalSet unite(const InsertionRemovalSet& other) const;

  bool operator==(const InsertionRemovalSet& other) const = default;

 private:
  std::vector<Symbol> alpha_;  // sorted, unique
};

struct IdentityAttack {
  bool operator==(const IdentityAttack&) const = default;
};

/// One hypothesized attack on the observation channel.
class AttackModel {
 public:
  enum class Kind { identity, replacement_removal, insertion_removal };

  AttackModel() = default;
  static AttackModel identity() { return AttackModel(IdentityAttack{}); }
  static AttackModel replacement_removal(ReplacementRemovalMap phi) { return AttackModel(std::move(phi)); }
  static AttackModel insertion_removal(InsertionRemovalSet alpha) { return AttackModel(std::move(alpha)); }

  Kind kind() const noexcept { return static_cast<Kind>(model_.index()); }
  /// Identity and replacement-removal attacks have finite images.
  bool finite() const noexcept { return kind() != Kind::insertion_removal; }

  /// Corruptions of a single observed symbol: {t} for the identity, phi(t)
  /// for replacement-removal. Throws UnsupportedError for insertion-removal.
  OutputSet corrupt(Symbol t) const;

  const ReplacementRemovalMap& phi() const { return std::get<ReplacementRemovalMap>(model_); }
  /// Alpha of an insertion-removal attack; the identity counts as alpha = {}.
  InsertionRemovalSet alpha() const;

  bool operator==(const AttackModel& other) const = default;

 private:
  using Model = std::variant<IdentityAttack, ReplacementRemovalMap, InsertionRemovalSet>;
  explicit AttackModel(Model m) : model_(std::move(m)) {}
  Model model_;
};

std::string to_string(AttackModel::Kind kind);

/// AP(e) for a single event of a finite attack.
OutputSet ap_event(const AttackModel& A, const ObservationMap& P, Event e);

/// The finite set AP(w). Throws UnsupportedError for insertion-removal.
std::set<OutputWord> ap_word(const AttackModel& A, const ObservationMap& P, const Word& w);

/// y in AP(w), decided without enumerating AP(w).
bool ap_inverse_contains(const AttackModel& A, const ObservationMap& P, const Word& w,
                         const OutputWord& y);

/// eps in AP(e).
bool epsilon_erasable(const AttackModel& A, const ObservationMap& P, Event e);

/// u with every symbol of alpha deleted.
OutputWord r_not_alpha(const InsertionRemovalSet& alpha, const OutputWord& u);

/// The observation map e -> R_{not alpha}(P(e)).
ObservationMap compose_removal_observation(const InsertionRemovalSet& alpha, const ObservationMap& P);

/// Given v, v' that agree after deleting alpha1 u alpha2, builds y with
/// R_{not alpha1}(y) = R_{not alpha1}(v) and R_{not alpha2}(y) = R_{not alpha2}(v').
/// Throws NoWitnessError when v and v' do not agree.
OutputWord common_corruption_witness(const InsertionRemovalSet& alpha1, const InsertionRemovalSet& alpha2,
                                     const OutputWord& v, const OutputWord& v_prime);

/// Some y in AP(w) n A'P(w'), or nothing when the images are disjoint.
/// Works for every combination of attack kinds.
std::optional<OutputWord> common_output(const AttackModel& A, const AttackModel& A_prime,
                                        const ObservationMap& P, const Word& w, const Word& w_prime);

}  // namespace desguard
