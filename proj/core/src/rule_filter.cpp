#include "schemadig/rule_filter.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace schemadig {
namespace {

std::uint64_t pack_items_hashable(const std::vector<Item>& items) {
  // FNV-1a over packed items; used only inside per-pattern sets where a
  // full key comparison backs the hash.
  std::uint64_t h = 1469598103934665603ull;
  for (const Item& it : items) {
    h ^= it.packed();
    h *= 1099511628211ull;
  }
  return h;
}

struct ItemVecHash {
  std::size_t operator()(const std::vector<Item>& v) const {
    return static_cast<std::size_t>(pack_items_hashable(v));
  }
};
struct ItemVecEq {
  bool operator()(const std::vector<Item>& a, const std::vector<Item>& b) const {
    return a == b;
  }
};

std::vector<Item> project_items(const std::vector<Item>& items, std::uint64_t attr_mask) {
  std::vector<Item> out;
  for (const Item& it : items) {
    if (attr_mask & (1ull << it.attribute)) out.push_back(it);
  }
  return out;
}

}  // namespace

std::vector<AssociationRule> filter_confidence(const std::vector<AssociationRule>& rules,
                                               const Ratio& threshold) {
  std::vector<AssociationRule> out;
  out.reserve(rules.size());
  for (const auto& r : rules) {
    if (r.confidence >= threshold) out.push_back(r);
  }
  return out;
}

std::vector<AssociationRule> minimal_lhs_filter(const std::vector<AssociationRule>& rules) {
  // Bucket rules into patterns keyed by (antecedent attrs, consequent
  // attrs). Each bucket keeps the set of antecedent item vectors for the
  // coverage test.
  struct Pattern {
    std::uint64_t lhs_mask = 0;
    std::uint64_t rhs_mask = 0;
    std::vector<std::size_t> rule_indexes;
    std::unordered_set<std::vector<Item>, ItemVecHash, ItemVecEq> antecedents;
  };

  std::map<std::pair<std::uint64_t, std::uint64_t>, Pattern> patterns;
  for (std::size_t i = 0; i < rules.size(); ++i) {
    const auto key = std::make_pair(rules[i].antecedent.attribute_mask(),
                                    rules[i].consequent.attribute_mask());
    Pattern& p = patterns[key];
    p.lhs_mask = key.first;
    p.rhs_mask = key.second;
    p.rule_indexes.push_back(i);
    p.antecedents.insert(rules[i].antecedent.items);
  }

  // Pattern P is covered by retained P' (same consequent attrs, strict
  // antecedent subset) when every antecedent of P projects onto an
  // antecedent of P'. Processing in ascending antecedent size keeps the
  // frontier consistent; coverage is transitive.
  std::vector<Pattern*> order;
  order.reserve(patterns.size());
  for (auto& [key, p] : patterns) order.push_back(&p);
  std::sort(order.begin(), order.end(), [](const Pattern* a, const Pattern* b) {
    const int sa = __builtin_popcountll(a->lhs_mask);
    const int sb = __builtin_popcountll(b->lhs_mask);
    if (sa != sb) return sa < sb;
    if (a->lhs_mask != b->lhs_mask) return a->lhs_mask < b->lhs_mask;
    return a->rhs_mask < b->rhs_mask;
  });

  std::vector<const Pattern*> retained;
  std::vector<bool> keep(rules.size(), false);
  for (Pattern* p : order) {
    bool covered = false;
    for (const Pattern* prior : retained) {
      if (prior->rhs_mask != p->rhs_mask) continue;
      if (prior->lhs_mask == p->lhs_mask ||
          (prior->lhs_mask & p->lhs_mask) != prior->lhs_mask) {
        continue;  // not a strict attribute subset
      }
      bool all_project = true;
      for (std::size_t i : p->rule_indexes) {
        auto projected = project_items(rules[i].antecedent.items, prior->lhs_mask);
        if (prior->antecedents.find(projected) == prior->antecedents.end()) {
          all_project = false;
          break;
        }
      }
      if (all_project) {
        covered = true;
        break;
      }
    }
    if (!covered) {
      retained.push_back(p);
      for (std::size_t i : p->rule_indexes) keep[i] = true;
    }
  }

  std::vector<AssociationRule> out;
  for (std::size_t i = 0; i < rules.size(); ++i) {
    if (keep[i]) out.push_back(rules[i]);
  }
  return out;
}

namespace {

// Exact distinct-projection counter over the encoded instance, memoized by
// attribute mask. Sort-and-count keeps it exact (no hash truncation).
class ProjectionCounter {
public:
  explicit ProjectionCounter(const TransactionDB& db) : db_(db) {}

  std::uint64_t distinct(std::uint64_t attr_mask) {
    auto it = cache_.find(attr_mask);
    if (it != cache_.end()) return it->second;

    std::vector<std::size_t> attrs;
    for (std::size_t a = 0; a < db_.num_attributes(); ++a) {
      if (attr_mask & (1ull << a)) attrs.push_back(a);
    }
    std::uint64_t count = 0;
    if (attrs.empty()) {
      count = db_.num_transactions() == 0 ? 0 : 1;
    } else {
      const std::size_t w = attrs.size();
      std::vector<std::uint32_t> proj;
      proj.reserve(db_.num_transactions() * w);
      for (std::size_t t = 0; t < db_.num_transactions(); ++t) {
        auto row = db_.transaction(t);
        for (std::size_t a : attrs) proj.push_back(row[a]);
      }
      std::vector<std::size_t> idx(db_.num_transactions());
      for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
      auto cmp = [&](std::size_t x, std::size_t y) {
        return std::lexicographical_compare(proj.begin() + x * w, proj.begin() + (x + 1) * w,
                                            proj.begin() + y * w, proj.begin() + (y + 1) * w);
      };
      auto eq = [&](std::size_t x, std::size_t y) {
        return std::equal(proj.begin() + x * w, proj.begin() + (x + 1) * w,
                          proj.begin() + y * w);
      };
      std::sort(idx.begin(), idx.end(), cmp);
      for (std::size_t i = 0; i < idx.size(); ++i) {
        if (i == 0 || !eq(idx[i - 1], idx[i])) ++count;
      }
    }
    cache_.emplace(attr_mask, count);
    return count;
  }

private:
  const TransactionDB& db_;
  std::unordered_map<std::uint64_t, std::uint64_t> cache_;
};

}  // namespace

LiftedFd projection_evidence(const TransactionDB& db, const FunctionalDependency& fd) {
  ProjectionCounter counter(db);
  LiftedFd out;
  out.fd = fd;
  out.lhs_distinct = counter.distinct(fd.lhs.bits());
  out.lhs_rhs_distinct = counter.distinct(fd.lhs.bits() | (1ull << fd.rhs));
  return out;
}

std::vector<FunctionalDependency> LiftResult::fd_set() const {
  std::vector<FunctionalDependency> out;
  out.reserve(fds.size());
  for (const auto& lf : fds) out.push_back(lf.fd);
  return out;
}

LiftResult lift_to_fds(const std::vector<AssociationRule>& rules, const TransactionDB& db,
                       std::size_t max_lhs) {
  LiftResult result;
  const std::size_t n = db.num_attributes();
  const std::size_t rows = db.num_transactions();

  for (std::size_t a = 0; a < n; ++a) {
    if (db.distinct_count(a) == 1 && rows >= 1) result.constant_attributes.push_back(a);
    if (rows >= 2 && db.distinct_count(a) == rows) result.all_distinct_attributes.push_back(a);
  }

  // Attribute-set patterns from the rules, multi-attribute consequents
  // split per dependent attribute.
  std::set<std::pair<std::uint64_t, std::size_t>> pattern_set;
  for (const auto& r : rules) {
    const std::uint64_t lhs_mask = r.antecedent.attribute_mask();
    if (static_cast<std::size_t>(__builtin_popcountll(lhs_mask)) > max_lhs) continue;
    for (const Item& item : r.consequent.items) {
      pattern_set.insert({lhs_mask, item.attribute});
    }
  }
  // Constant columns are determined by the empty set; record them as
  // patterns too so the projection test below stays uniform.
  for (std::size_t a : result.constant_attributes) pattern_set.insert({0, a});

  ProjectionCounter counter(db);
  std::vector<LiftedFd> accepted;
  for (const auto& [lhs_mask, rhs] : pattern_set) {
    const std::uint64_t lhs_distinct = counter.distinct(lhs_mask);
    const std::uint64_t both_distinct = counter.distinct(lhs_mask | (1ull << rhs));
    if (lhs_distinct != both_distinct) continue;
    LiftedFd lifted;
    lifted.fd = FunctionalDependency{AttributeSet(lhs_mask), rhs};
    lifted.lhs_distinct = lhs_distinct;
    lifted.lhs_rhs_distinct = both_distinct;
    accepted.push_back(lifted);
  }

  // Keep only subset-minimal determinants per dependent attribute,
  // minimality judged among non-empty determinants (a constant column's
  // ∅-record coexists with its single-attribute FDs).
  std::vector<bool> drop(accepted.size(), false);
  for (std::size_t i = 0; i < accepted.size(); ++i) {
    if (accepted[i].fd.lhs.empty()) continue;
    for (std::size_t j = 0; j < accepted.size(); ++j) {
      if (i == j || accepted[j].fd.lhs.empty()) continue;
      if (accepted[j].fd.rhs != accepted[i].fd.rhs) continue;
      if (accepted[j].fd.lhs.is_strict_subset_of(accepted[i].fd.lhs)) {
        drop[i] = true;
        break;
      }
    }
  }
  for (std::size_t i = 0; i < accepted.size(); ++i) {
    if (!drop[i]) result.fds.push_back(accepted[i]);
  }
  std::sort(result.fds.begin(), result.fds.end(),
            [](const LiftedFd& a, const LiftedFd& b) { return a.fd < b.fd; });
  return result;
}

}  // namespace schemadig
