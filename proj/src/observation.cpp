#include "desguard/observation.hpp"

#include <algorithm>

#include "desguard/error.hpp"

namespace desguard {

OutputSet make_output_set(std::vector<Output> outputs) {
  std::sort(outputs.begin(), outputs.end());
  outputs.erase(std::unique(outputs.begin(), outputs.end()), outputs.end());
  return outputs;
}

bool contains(const OutputSet& set, const Output& o) { return std::binary_search(set.begin(), set.end(), o); }

bool intersects(const OutputSet& a, const OutputSet& b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i == *j) return true;
    if (*i < *j)
      ++i;
    else
      ++j;
  }
  return false;
}

ObservationMap::ObservationMap(OutputAlphabet outputs, std::vector<Output> table)
    : outputs_(std::move(outputs)), table_(std::move(table)) {
  for (const auto& o : table_)
    if (o && !outputs_.contains(*o)) throw InputError("observation map uses an unknown output symbol");
}

OutputWord project(const ObservationMap& P, const Word& w) {
  OutputWord y;
  for (Event e : w)
    if (const auto& o = P(e)) y.push_back(*o);
  return y;
}

ReplacementRemovalMap::ReplacementRemovalMap(std::vector<OutputSet> images) : images_(std::move(images)) {
  for (std::size_t t = 0; t < images_.size(); ++t) {
    images_[t] = make_output_set(std::move(images_[t]));
    if (images_[t].empty()) throw InputError("empty corruption set for output symbol #" + std::to_string(t));
    for (const auto& o : images_[t])
      if (o && index(*o) >= images_.size()) throw InputError("corruption set uses an unknown output symbol");
  }
}

ReplacementRemovalMap ReplacementRemovalMap::identity(std::size_t num_symbols) {
  std::vector<OutputSet> images;
  for (std::size_t t = 0; t < num_symbols; ++t) images.push_back({Symbol(static_cast<std::uint32_t>(t))});
  return ReplacementRemovalMap(std::move(images));
}

InsertionRemovalSet::InsertionRemovalSet(std::vector<Symbol> alpha) : alpha_(std::move(alpha)) {
  std::sort(alpha_.begin(), alpha_.end());
  alpha_.erase(std::unique(alpha_.begin(), alpha_.end()), alpha_.end());
}

bool InsertionRemovalSet::contains(Symbol t) const { return std::binary_search(alpha_.begin(), alpha_.end(), t); }

InsertionRemovalSet InsertionRemovalSet::unite(const InsertionRemovalSet& other) const {
  std::vector<Symbol> u = alpha_;
  u.insert(u.end(), other.alpha_.begin(), other.alpha_.end());
  return InsertionRemovalSet(std::move(u));
}

OutputSet AttackModel::corrupt(Symbol t) const {
  switch (kind()) {
    case Kind::identity:
      return {t};
    case Kind::replacement_removal:
      return phi()(t);
    case Kind::insertion_removal:
      break;
  }
  throw UnsupportedError("insertion-removal attacks have no finite per-symbol image");
}

InsertionRemovalSet AttackModel::alpha() const {
  if (kind() == Kind::identity) return {};
  if (kind() == Kind::insertion_removal) return std::get<InsertionRemovalSet>(model_);
  throw UnsupportedError("replacement-removal attacks are not described by a removal set");
}

std::string to_string(AttackModel::Kind kind) {
  switch (kind) {
    case AttackModel::Kind::identity:
      return "identity";
    case AttackModel::Kind::replacement_removal:
      return "replacement-removal";
    case AttackModel::Kind::insertion_removal:
      return "insertion-removal";
  }
  return "unknown";
}

OutputSet ap_event(const AttackModel& A, const ObservationMap& P, Event e) {
  const auto& o = P(e);
  if (!o) return {std::nullopt};
  return A.corrupt(*o);
}

std::set<OutputWord> ap_word(const AttackModel& A, const ObservationMap& P, const Word& w) {
  if (!A.finite()) throw UnsupportedError("AP(w) is infinite for insertion-removal attacks");
  std::set<OutputWord> current{OutputWord{}};
  for (Event e : w) {
    const auto image = ap_event(A, P, e);
    std::set<OutputWord> next;
    for (const auto& y : current) {
      for (const auto& o : image) {
        OutputWord ext = y;
        if (o) ext.push_back(*o);
        next.insert(std::move(ext));
      }
    }
    current = std::move(next);
  }
  return current;
}

bool ap_inverse_contains(const AttackModel& A, const ObservationMap& P, const Word& w, const OutputWord& y) {
  if (!A.finite()) {
    const auto alpha = A.alpha();
    return r_not_alpha(alpha, project(P, w)) == r_not_alpha(alpha, y);
  }
  // reach[j]: the events processed so far can produce y[0..j).
  std::vector<bool> reach(y.size() + 1, false);
  reach[0] = true;
  for (Event e : w) {
    const auto image = ap_event(A, P, e);
    const bool erasable = contains(image, std::nullopt);
    std::vector<bool> next(y.size() + 1, false);
    for (std::size_t j = 0; j <= y.size(); ++j) {
      if (!reach[j]) continue;
      if (erasable) next[j] = true;
      if (j < y.size() && contains(image, y[j])) next[j + 1] = true;
    }
    reach = std::move(next);
  }
  return reach[y.size()];
}

bool epsilon_erasable(const AttackModel& A, const ObservationMap& P, Event e) {
  const auto& o = P(e);
  if (!o) return true;
  if (!A.finite()) return A.alpha().contains(*o);
  return contains(A.corrupt(*o), std::nullopt);
}

OutputWord r_not_alpha(const InsertionRemovalSet& alpha, const OutputWord& u) {
  OutputWord out;
  for (Symbol t : u)
    if (!alpha.contains(t)) out.push_back(t);
  return out;
}

ObservationMap compose_removal_observation(const InsertionRemovalSet& alpha, const ObservationMap& P) {
  std::vector<Output> table = P.table();
  for (auto& o : table)
    if (o && alpha.contains(*o)) o.reset();
  return ObservationMap(P.outputs(), std::move(table));
}

OutputWord common_corruption_witness(const InsertionRemovalSet& alpha1, const InsertionRemovalSet& alpha2,
                                     const OutputWord& v, const OutputWord& v_prime) {
  const auto alpha = alpha1.unite(alpha2);
  if (r_not_alpha(alpha, v) != r_not_alpha(alpha, v_prime))
    throw NoWitnessError("the words differ outside the attacked symbols");

  // y1 keeps everything of v outside alpha1; target keeps everything of v'
  // outside alpha2. Both reduce to the same core once alpha is removed, so
  // they can be merged segment by segment: between consecutive core symbols
  // take y1's (alpha2 \ alpha1)-symbols, then target's (alpha1 \ alpha2)-symbols.
  const OutputWord y1 = r_not_alpha(alpha1, v);
  const OutputWord target = r_not_alpha(alpha2, v_prime);
  OutputWord y;
  std::size_t i = 0;
  std::size_t j = 0;
  while (true) {
    while (i < y1.size() && alpha.contains(y1[i])) y.push_back(y1[i++]);
    while (j < target.size() && alpha.contains(target[j])) y.push_back(target[j++]);
    if (i == y1.size() || j == target.size()) break;
    y.push_back(y1[i]);  // shared core symbol
    ++i;
    ++j;
  }
  return y;
}

namespace {

// Some y in AP(w) with R_{not alpha}(y) = target, for a finite attack A.
std::optional<OutputWord> finite_against_target(const AttackModel& A, const ObservationMap& P, const Word& w,
                                                const InsertionRemovalSet& alpha, const OutputWord& target) {
  const std::size_t n = w.size();
  const std::size_t m = target.size();
  // back[i][j]: how (i, j) was first reached; -2 = unreached, -1 = origin.
  struct Step {
    int prev_j = -2;
    Output emitted;
  };
  std::vector<std::vector<Step>> back(n + 1, std::vector<Step>(m + 1));
  back[0][0].prev_j = -1;
  for (std::size_t i = 0; i < n; ++i) {
    const auto image = ap_event(A, P, w[i]);
    for (std::size_t j = 0; j <= m; ++j) {
      if (back[i][j].prev_j == -2) continue;
      for (const auto& o : image) {
        std::size_t nj = j;
        if (o && !alpha.contains(*o)) {
          if (j == m || target[j] != *o) continue;
          nj = j + 1;
        }
        if (back[i + 1][nj].prev_j == -2) back[i + 1][nj] = {static_cast<int>(j), o};
      }
    }
  }
  if (back[n][m].prev_j == -2) return std::nullopt;
  OutputWord y;
  std::size_t j = m;
  for (std::size_t i = n; i > 0; --i) {
    const auto& s = back[i][j];
    if (s.emitted) y.push_back(*s.emitted);
    j = static_cast<std::size_t>(s.prev_j);
  }
  std::reverse(y.begin(), y.end());
  return y;
}

// Some y in AP(w) n A'P(w') for two finite attacks, by aligning the words.
std::optional<OutputWord> finite_against_finite(const AttackModel& A, const AttackModel& A_prime,
                                                const ObservationMap& P, const Word& w, const Word& w_prime) {
  const std::size_t n = w.size();
  const std::size_t m = w_prime.size();
  struct Step {
    int kind = -1;  // -1 unreached, 0 origin, 1 left only, 2 right only, 3 both
    Output emitted;
  };
  std::vector<std::vector<Step>> back(n + 1, std::vector<Step>(m + 1));
  back[0][0].kind = 0;
  std::vector<OutputSet> left, right;
  for (Event e : w) left.push_back(ap_event(A, P, e));
  for (Event e : w_prime) right.push_back(ap_event(A_prime, P, e));
  for (std::size_t i = 0; i <= n; ++i) {
    for (std::size_t j = 0; j <= m; ++j) {
      if (back[i][j].kind < 0) continue;
      if (i < n && contains(left[i], std::nullopt) && back[i + 1][j].kind < 0) back[i + 1][j] = {1, std::nullopt};
      if (j < m && contains(right[j], std::nullopt) && back[i][j + 1].kind < 0) back[i][j + 1] = {2, std::nullopt};
      if (i < n && j < m && back[i + 1][j + 1].kind < 0) {
        for (const auto& o : left[i]) {
          if (o && contains(right[j], o)) {
            back[i + 1][j + 1] = {3, o};
            break;
          }
        }
      }
    }
  }
  if (back[n][m].kind < 0) return std::nullopt;
  OutputWord y;
  std::size_t i = n;
  std::size_t j = m;
  while (i > 0 || j > 0) {
    const auto& s = back[i][j];
    if (s.kind == 1) {
      --i;
    } else if (s.kind == 2) {
      --j;
    } else {
      y.push_back(*s.emitted);
      --i;
      --j;
    }
  }
  std::reverse(y.begin(), y.end());
  return y;
}

}  // namespace

std::optional<OutputWord> common_output(const AttackModel& A, const AttackModel& A_prime, const ObservationMap& P,
                                        const Word& w, const Word& w_prime) {
  if (A.finite() && A_prime.finite()) return finite_against_finite(A, A_prime, P, w, w_prime);
  if (!A.finite() && !A_prime.finite()) {
    try {
      return common_corruption_witness(A.alpha(), A_prime.alpha(), project(P, w), project(P, w_prime));
    } catch (const NoWitnessError&) {
      return std::nullopt;
    }
  }
  if (A.finite()) {
    const auto alpha = A_prime.alpha();
    return finite_against_target(A, P, w, alpha, r_not_alpha(alpha, project(P, w_prime)));
  }
  const auto alpha = A.alpha();
  return finite_against_target(A_prime, P, w_prime, alpha, r_not_alpha(alpha, project(P, w)));
}

}  // namespace desguard
