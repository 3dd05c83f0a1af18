#include "schemadig/apriori.hpp"

#include <algorithm>
#include <array>
#include <thread>
#include <utility>

#include "schemadig/errors.hpp"

namespace schemadig {

bool operator<(const Itemset& a, const Itemset& b) {
  if (a.items.size() != b.items.size()) return a.items.size() < b.items.size();
  return std::lexicographical_compare(a.items.begin(), a.items.end(),
                                      b.items.begin(), b.items.end());
}

namespace {

// Fixed-width packed key: up to kMaxItemsetSize items of 32 bits each,
// zero-padded. Lexicographic array order equals canonical item order
// because packed items sort by (attribute, code).
struct PackedKey {
  std::array<std::uint32_t, kMaxItemsetSize> w{};

  friend bool operator<(const PackedKey& a, const PackedKey& b) { return a.w < b.w; }
  friend bool operator==(const PackedKey& a, const PackedKey& b) { return a.w == b.w; }
};

PackedKey pack(const Itemset& set) {
  PackedKey key;
  for (std::size_t i = 0; i < set.items.size(); ++i) key.w[i] = set.items[i].packed();
  return key;
}

Itemset unpack(const PackedKey& key, std::size_t k) {
  Itemset set;
  set.items.reserve(k);
  for (std::size_t i = 0; i < k; ++i) set.items.push_back(Item::unpack(key.w[i]));
  return set;
}

struct Level {
  std::size_t k = 0;
  std::vector<PackedKey> keys;        // sorted
  std::vector<std::uint64_t> counts;  // aligned with keys
};

std::size_t partition_begin(std::size_t total, unsigned part, unsigned parts) {
  return total * part / parts;
}

// Enumerates every size-k attribute combination of every transaction in
// [begin, end) and hands the packed subset to `sink`.
template <typename Sink>
void for_each_subset(const TransactionDB& db, std::size_t begin, std::size_t end,
                     std::size_t k, Sink&& sink) {
  const std::size_t n = db.num_attributes();
  std::vector<std::size_t> combos_flat;
  // Precompute the combination walk once; it is identical per transaction.
  {
    std::vector<std::size_t> c(k);
    for (std::size_t i = 0; i < k; ++i) c[i] = i;
    while (true) {
      combos_flat.insert(combos_flat.end(), c.begin(), c.end());
      std::size_t i = k;
      while (i > 0) {
        --i;
        if (c[i] != i + n - k) break;
        if (i == 0) {
          i = k;  // done
          break;
        }
      }
      if (i == k) break;
      ++c[i];
      for (std::size_t j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
    }
  }
  const std::size_t num_combos = combos_flat.size() / k;

  for (std::size_t t = begin; t < end; ++t) {
    auto row = db.transaction(t);
    for (std::size_t c = 0; c < num_combos; ++c) {
      const std::size_t* attrs = &combos_flat[c * k];
      PackedKey key;
      for (std::size_t i = 0; i < k; ++i) {
        const std::uint32_t a = static_cast<std::uint32_t>(attrs[i]);
        key.w[i] = (a << Item::kCodeBits) | row[a];
      }
      sink(key);
    }
  }
}

// minsup == 1 path: every size-k subset that occurs is frequent, so count
// occurrences directly by sort + run length.
Level count_all_subsets(const TransactionDB& db, std::size_t k, unsigned threads) {
  const std::size_t total = db.num_transactions();
  std::vector<std::vector<PackedKey>> buffers(threads);

  auto work = [&](unsigned part) {
    auto& buf = buffers[part];
    for_each_subset(db, partition_begin(total, part, threads),
                    partition_begin(total, part + 1, threads), k,
                    [&](const PackedKey& key) { buf.push_back(key); });
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned p = 0; p < threads; ++p) pool.emplace_back(work, p);
    for (auto& th : pool) th.join();
  }

  std::vector<PackedKey> all;
  std::size_t total_keys = 0;
  for (const auto& buf : buffers) total_keys += buf.size();
  all.reserve(total_keys);
  for (auto& buf : buffers) {
    all.insert(all.end(), buf.begin(), buf.end());
    buf.clear();
    buf.shrink_to_fit();
  }
  std::sort(all.begin(), all.end());

  Level level;
  level.k = k;
  for (std::size_t i = 0; i < all.size();) {
    std::size_t j = i;
    while (j < all.size() && all[j] == all[i]) ++j;
    level.keys.push_back(all[i]);
    level.counts.push_back(j - i);
    i = j;
  }
  return level;
}

// minsup > 1 path: count a sorted candidate list by binary search while
// enumerating transaction subsets, then prune.
Level count_candidates(const TransactionDB& db, std::size_t k,
                       std::vector<PackedKey> candidates, std::uint64_t min_support,
                       unsigned threads) {
  const std::size_t total = db.num_transactions();
  std::vector<std::vector<std::uint64_t>> counts(threads);

  auto work = [&](unsigned part) {
    auto& local = counts[part];
    local.assign(candidates.size(), 0);
    for_each_subset(db, partition_begin(total, part, threads),
                    partition_begin(total, part + 1, threads), k,
                    [&](const PackedKey& key) {
                      auto it = std::lower_bound(candidates.begin(), candidates.end(), key);
                      if (it != candidates.end() && *it == key) {
                        ++local[static_cast<std::size_t>(it - candidates.begin())];
                      }
                    });
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned p = 0; p < threads; ++p) pool.emplace_back(work, p);
    for (auto& th : pool) th.join();
  }

  Level level;
  level.k = k;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    std::uint64_t c = 0;
    for (unsigned p = 0; p < threads; ++p) c += counts[p][i];
    if (c >= min_support) {
      level.keys.push_back(candidates[i]);
      level.counts.push_back(c);
    }
  }
  return level;
}

Level count_level_one(const TransactionDB& db, std::uint64_t min_support) {
  const std::size_t n = db.num_attributes();
  std::vector<std::vector<std::uint64_t>> counts(n);
  for (std::size_t a = 0; a < n; ++a) counts[a].assign(db.distinct_count(a), 0);
  for (std::size_t t = 0; t < db.num_transactions(); ++t) {
    auto row = db.transaction(t);
    for (std::size_t a = 0; a < n; ++a) ++counts[a][row[a]];
  }
  Level level;
  level.k = 1;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::uint32_t code = 0; code < counts[a].size(); ++code) {
      if (counts[a][code] >= min_support) {
        PackedKey key;
        key.w[0] = (static_cast<std::uint32_t>(a) << Item::kCodeBits) | code;
        level.keys.push_back(key);
        level.counts.push_back(counts[a][code]);
      }
    }
  }
  // Codes iterate per attribute ascending, so keys are already sorted.
  return level;
}

std::uint32_t attr_of(std::uint32_t packed_item) { return packed_item >> Item::kCodeBits; }

// Join-and-prune over packed keys; shared by apriori_gen and the miner.
std::vector<PackedKey> gen_candidates(const std::vector<PackedKey>& frequent, std::size_t k) {
  std::vector<PackedKey> out;
  if (frequent.empty()) return out;

  // Join: pairs sharing the first k-1 items, distinct attributes on the
  // last item. Input order is canonical, so groups are contiguous.
  std::size_t group_start = 0;
  for (std::size_t i = 0; i < frequent.size(); ++i) {
    bool same_group = i > 0;
    if (same_group) {
      for (std::size_t w = 0; w + 1 < k; ++w) {
        if (frequent[i].w[w] != frequent[group_start].w[w]) {
          same_group = false;
          break;
        }
      }
    }
    if (!same_group) group_start = i;
    for (std::size_t j = group_start; j < i; ++j) {
      if (attr_of(frequent[j].w[k - 1]) == attr_of(frequent[i].w[k - 1])) continue;
      PackedKey cand = frequent[j];
      cand.w[k] = frequent[i].w[k - 1];
      out.push_back(cand);
    }
  }

  // Prune: every size-k subset must be frequent (subsets that drop one of
  // the two joined items are frequent by construction).
  std::vector<PackedKey> pruned;
  pruned.reserve(out.size());
  for (const PackedKey& cand : out) {
    bool ok = true;
    for (std::size_t drop = 0; ok && drop + 2 < k + 1; ++drop) {
      PackedKey sub{};
      std::size_t w = 0;
      for (std::size_t i = 0; i < k + 1; ++i) {
        if (i != drop) sub.w[w++] = cand.w[i];
      }
      ok = std::binary_search(frequent.begin(), frequent.end(), sub);
    }
    if (ok) pruned.push_back(cand);
  }
  std::sort(pruned.begin(), pruned.end());
  return pruned;
}

}  // namespace

std::vector<Itemset> apriori_gen(const std::vector<Itemset>& frequent_k) {
  if (frequent_k.empty()) return {};
  const std::size_t k = frequent_k.front().size();
  std::vector<PackedKey> keys;
  keys.reserve(frequent_k.size());
  for (const Itemset& set : frequent_k) keys.push_back(pack(set));
  std::sort(keys.begin(), keys.end());

  std::vector<Itemset> out;
  for (const PackedKey& key : gen_candidates(keys, k)) out.push_back(unpack(key, k + 1));
  return out;
}

std::vector<FrequentItemset> frequent_itemsets(const TransactionDB& db,
                                               const MinerOptions& options) {
  std::vector<FrequentItemset> result;
  if (db.num_transactions() == 0 || db.num_attributes() == 0) return result;

  const std::uint64_t minsup = options.min_support_abs < 1 ? 1 : options.min_support_abs;
  std::size_t max_size = options.max_size == 0 ? db.num_attributes() : options.max_size;
  max_size = std::min({max_size, db.num_attributes(), kMaxItemsetSize});
  unsigned threads = options.threads == 0
                         ? std::max(1u, std::thread::hardware_concurrency())
                         : options.threads;
  // Tiny inputs are not worth fanning out.
  threads = static_cast<unsigned>(
      std::min<std::size_t>(threads, std::max<std::size_t>(1, db.num_transactions() / 64)));

  const std::size_t total = db.num_transactions();
  std::vector<Level> levels;
  levels.push_back(count_level_one(db, minsup));

  for (std::size_t k = 2; k <= max_size; ++k) {
    if (levels.back().keys.empty()) break;
    Level level;
    if (minsup == 1) {
      level = count_all_subsets(db, k, threads);
    } else {
      std::vector<PackedKey> candidates = gen_candidates(levels.back().keys, k - 1);
      if (candidates.empty()) break;
      level = count_candidates(db, k, std::move(candidates), minsup, threads);
    }
    if (level.keys.empty()) break;
    levels.push_back(std::move(level));
  }

  std::size_t n_out = 0;
  for (const Level& level : levels) n_out += level.keys.size();
  result.reserve(n_out);
  for (const Level& level : levels) {
    for (std::size_t i = 0; i < level.keys.size(); ++i) {
      FrequentItemset f;
      f.itemset = unpack(level.keys[i], level.k);
      f.support_count = level.counts[i];
      f.support_fraction = static_cast<double>(level.counts[i]) / static_cast<double>(total);
      result.push_back(std::move(f));
    }
  }
  return result;
}

std::vector<AssociationRule> generate_rules(const std::vector<FrequentItemset>& frequent,
                                            const Ratio& min_confidence) {
  // Support lookup per size; keys within a size are unique.
  std::size_t max_k = 0;
  for (const auto& f : frequent) max_k = std::max(max_k, f.itemset.size());
  std::vector<std::vector<std::pair<PackedKey, std::uint64_t>>> by_size(max_k + 1);
  for (const auto& f : frequent) {
    by_size[f.itemset.size()].push_back({pack(f.itemset), f.support_count});
  }
  for (auto& v : by_size) std::sort(v.begin(), v.end());

  auto support_of = [&](const PackedKey& key, std::size_t k) -> std::uint64_t {
    const auto& v = by_size[k];
    auto it = std::lower_bound(v.begin(), v.end(), key,
                               [](const auto& a, const PackedKey& b) { return a.first < b; });
    if (it == v.end() || !(it->first == key)) {
      throw MissingSubsetSupportError(
          "support of a sub-itemset is missing; frequent list is not downward closed");
    }
    return it->second;
  };

  std::vector<AssociationRule> rules;
  for (const auto& f : frequent) {
    const std::size_t z = f.itemset.size();
    if (z < 2) continue;
    const std::uint64_t support_z = f.support_count;
    // All bipartitions: mask selects antecedent items.
    const std::uint32_t full = (1u << z) - 1;
    for (std::uint32_t mask = 1; mask < full; ++mask) {
      PackedKey x{};
      std::size_t nx = 0;
      for (std::size_t i = 0; i < z; ++i) {
        if (mask & (1u << i)) x.w[nx++] = f.itemset.items[i].packed();
      }
      const std::uint64_t support_x = support_of(x, nx);
      const Ratio confidence{support_z, support_x};
      if (confidence < min_confidence) continue;

      AssociationRule rule;
      rule.support_count = support_z;
      rule.confidence = confidence;
      for (std::size_t i = 0; i < z; ++i) {
        if (mask & (1u << i)) {
          rule.antecedent.items.push_back(f.itemset.items[i]);
        } else {
          rule.consequent.items.push_back(f.itemset.items[i]);
        }
      }
      rules.push_back(std::move(rule));
    }
  }
  return rules;
}

}  // namespace schemadig
