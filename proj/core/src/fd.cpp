#include "schemadig/fd.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <unordered_set>

#include "schemadig/errors.hpp"

namespace schemadig {

std::vector<std::size_t> AttributeSet::indexes() const {
  std::vector<std::size_t> out;
  std::uint64_t b = bits_;
  while (b) {
    out.push_back(static_cast<std::size_t>(__builtin_ctzll(b)));
    b &= b - 1;
  }
  return out;
}

bool AttributeSet::canonical_less(AttributeSet a, AttributeSet b) {
  if (a.size() != b.size()) return a.size() < b.size();
  std::uint64_t ab = a.bits_, bb = b.bits_;
  while (ab && bb) {
    const int ia = __builtin_ctzll(ab);
    const int ib = __builtin_ctzll(bb);
    if (ia != ib) return ia < ib;
    ab &= ab - 1;
    bb &= bb - 1;
  }
  return false;  // equal
}

std::string FunctionalDependency::str(const std::vector<std::string>& names) const {
  std::string out = "{";
  bool first = true;
  for (std::size_t i : lhs.indexes()) {
    if (!first) out += ", ";
    out += names[i];
    first = false;
  }
  out += "} -> ";
  out += names[rhs];
  return out;
}

bool holds_on_instance(const RelationInstance& rel, const FunctionalDependency& fd) {
  const auto lhs = fd.lhs.indexes();
  // Map from the lhs projection to the first rhs value seen for it;
  // ordered map over string tuples keeps this path independent of the
  // dictionary encoding used by the mining side.
  std::map<std::vector<std::string>, const std::string*> groups;
  std::vector<std::string> key;
  for (const auto& row : rel.rows()) {
    key.clear();
    key.reserve(lhs.size());
    for (std::size_t i : lhs) key.push_back(row[i]);
    auto [it, inserted] = groups.try_emplace(key, &row[fd.rhs]);
    if (!inserted && *it->second != row[fd.rhs]) return false;
  }
  return true;
}

AttributeSet closure(AttributeSet attrs, const std::vector<FunctionalDependency>& fds) {
  AttributeSet result = attrs;
  std::vector<bool> applied(fds.size(), false);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < fds.size(); ++i) {
      if (applied[i]) continue;
      if (result.contains_all(fds[i].lhs)) {
        applied[i] = true;
        if (!result.contains(fds[i].rhs)) {
          result.add(fds[i].rhs);
          changed = true;
        }
      }
    }
  }
  return result;
}

std::vector<FunctionalDependency> minimal_cover(std::vector<FunctionalDependency> fds) {
  std::sort(fds.begin(), fds.end());
  fds.erase(std::unique(fds.begin(), fds.end()), fds.end());

  // Drop extraneous lhs attributes: a is extraneous in X -> r when r is
  // already in closure(X \ {a}) under the current set.
  for (std::size_t i = 0; i < fds.size(); ++i) {
    for (std::size_t a : fds[i].lhs.indexes()) {
      AttributeSet reduced = fds[i].lhs;
      reduced.remove(a);
      if (closure(reduced, fds).contains(fds[i].rhs)) {
        fds[i].lhs = reduced;
      }
    }
  }
  std::sort(fds.begin(), fds.end());
  fds.erase(std::unique(fds.begin(), fds.end()), fds.end());

  // Drop redundant FDs in canonical order.
  std::vector<FunctionalDependency> kept = fds;
  for (std::size_t i = 0; i < fds.size(); ++i) {
    auto it = std::find(kept.begin(), kept.end(), fds[i]);
    if (it == kept.end()) continue;
    std::vector<FunctionalDependency> without;
    without.reserve(kept.size() - 1);
    for (const auto& fd : kept) {
      if (!(fd == fds[i])) without.push_back(fd);
    }
    if (closure(fds[i].lhs, without).contains(fds[i].rhs)) {
      kept = std::move(without);
    }
  }
  return kept;
}

std::vector<AttributeSet> minimal_determinants(AttributeSet universe, AttributeSet target,
                                               const std::vector<FunctionalDependency>& fds,
                                               const KeySearchOptions& options) {
  // Attributes of the universe appearing in no rhs can never be supplied
  // by an FD, so every determinant contains them.
  AttributeSet core;
  for (std::size_t a : universe.indexes()) {
    bool in_rhs = false;
    for (const auto& fd : fds) {
      if (fd.rhs == a) {
        in_rhs = true;
        break;
      }
    }
    if (!in_rhs) core.add(a);
  }

  std::vector<AttributeSet> found;
  auto is_superset_of_found = [&](AttributeSet s) {
    for (AttributeSet k : found) {
      if (s.contains_all(k)) return true;
    }
    return false;
  };

  std::deque<AttributeSet> frontier{core};
  std::unordered_set<std::uint64_t> visited{core.bits()};
  std::size_t budget = options.budget;

  while (!frontier.empty()) {
    AttributeSet s = frontier.front();
    frontier.pop_front();
    if (budget-- == 0) throw KeySearchBudgetError(options.budget);
    if (is_superset_of_found(s)) continue;
    if (closure(s, fds).contains_all(target)) {
      found.push_back(s);  // BFS order makes every hit minimal
      continue;
    }
    for (std::size_t a : (universe - s).indexes()) {
      AttributeSet next = s;
      next.add(a);
      if (visited.insert(next.bits()).second) frontier.push_back(next);
    }
  }

  std::sort(found.begin(), found.end(), AttributeSet::canonical_less);
  return found;
}

std::vector<AttributeSet> candidate_keys(std::size_t num_attributes,
                                         const std::vector<FunctionalDependency>& fds,
                                         const KeySearchOptions& options) {
  const AttributeSet all = AttributeSet::all(num_attributes);
  return minimal_determinants(all, all, fds, options);
}

std::vector<FunctionalDependency> discover_fds_bruteforce(const RelationInstance& rel,
                                                          std::size_t max_lhs) {
  const std::size_t n = rel.attribute_count();
  std::vector<FunctionalDependency> out;
  if (n == 0) return out;

  for (std::size_t rhs = 0; rhs < n; ++rhs) {
    if (holds_on_instance(rel, FunctionalDependency{AttributeSet{}, rhs})) {
      out.push_back(FunctionalDependency{AttributeSet{}, rhs});
    }
  }

  // Candidate determinants in (size, lex) order with superset pruning;
  // minimality is judged among non-empty determinants only, so constant
  // columns still get their single-attribute FDs.
  std::vector<std::size_t> others;
  for (std::size_t rhs = 0; rhs < n; ++rhs) {
    others.clear();
    for (std::size_t a = 0; a < n; ++a) {
      if (a != rhs) others.push_back(a);
    }
    std::vector<AttributeSet> found;
    const std::size_t limit = std::min(max_lhs, others.size());
    for (std::size_t k = 1; k <= limit; ++k) {
      // k-combinations of `others` in lexicographic order.
      std::vector<std::size_t> c(k);
      for (std::size_t i = 0; i < k; ++i) c[i] = i;
      while (true) {
        AttributeSet lhs;
        for (std::size_t i = 0; i < k; ++i) lhs.add(others[c[i]]);
        bool pruned = false;
        for (AttributeSet smaller : found) {
          if (lhs.contains_all(smaller)) {
            pruned = true;
            break;
          }
        }
        if (!pruned && holds_on_instance(rel, FunctionalDependency{lhs, rhs})) {
          found.push_back(lhs);
          out.push_back(FunctionalDependency{lhs, rhs});
        }
        std::size_t i = k;
        while (i > 0) {
          --i;
          if (c[i] != i + others.size() - k) break;
          if (i == 0) {
            i = k;
            break;
          }
        }
        if (i == k) break;
        ++c[i];
        for (std::size_t j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
      }
    }
  }

  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace schemadig
