#pragma once

#include <cstdint>
#include <vector>

#include "schemadig/ratio.hpp"
#include "schemadig/transactions.hpp"

namespace schemadig {

// Sorted set of items, at most one per attribute (a row cannot contain two
// values of one attribute). Kept in canonical (attribute, code) order.
struct Itemset {
  std::vector<Item> items;

  std::size_t size() const { return items.size(); }
  std::uint64_t attribute_mask() const {
    std::uint64_t m = 0;
    for (const Item& it : items) m |= 1ull << it.attribute;
    return m;
  }

  friend bool operator==(const Itemset& a, const Itemset& b) {
    return a.items == b.items;
  }
  friend bool operator<(const Itemset& a, const Itemset& b);
};

struct FrequentItemset {
  Itemset itemset;
  std::uint64_t support_count = 0;
  double support_fraction = 0.0;
};

struct AssociationRule {
  Itemset antecedent;
  Itemset consequent;            // attribute-disjoint from antecedent
  std::uint64_t support_count = 0;  // support of antecedent ∪ consequent
  Ratio confidence;              // exactly {support(X∪Y), support(X)}

  friend bool operator==(const AssociationRule& a, const AssociationRule& b) {
    return a.antecedent == b.antecedent && a.consequent == b.consequent &&
           a.support_count == b.support_count &&
           a.confidence.num == b.confidence.num &&
           a.confidence.den == b.confidence.den;
  }
};

struct MinerOptions {
  std::uint64_t min_support_abs = 1;
  std::size_t max_size = 0;  // 0 = full lattice (capped at kMaxItemsetSize)
  unsigned threads = 1;      // hint; output is identical for any value
};

// Largest itemset size the packed representation supports.
inline constexpr std::size_t kMaxItemsetSize = 16;

// Level-wise Apriori. Returns exactly the itemsets of size <= max_size with
// support_count >= min_support_abs, sorted by (size, item order). Exact
// counts, no sampling; bitwise-identical output for any thread count.
std::vector<FrequentItemset> frequent_itemsets(const TransactionDB& db,
                                               const MinerOptions& options);

// Join-and-prune candidate generation. Input: all frequent itemsets of one
// size k in canonical order. Output: every size-(k+1) candidate whose valid
// size-k subsets are all present, never with two items on one attribute.
std::vector<Itemset> apriori_gen(const std::vector<Itemset>& frequent_k);

// Emits X -> Y for every frequent Z and every bipartition Z = X ⊎ Y with
// support(Z)/support(X) >= min_confidence. Counts are looked up in
// `frequent`, never recounted; throws MissingSubsetSupportError if the
// list is not downward closed.
std::vector<AssociationRule> generate_rules(const std::vector<FrequentItemset>& frequent,
                                            const Ratio& min_confidence);

}  // namespace schemadig
