#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "schemadig/relation.hpp"

namespace schemadig {

// Dense attribute-index set over at most kMaxAttributes attributes.
class AttributeSet {
public:
  AttributeSet() = default;
  explicit AttributeSet(std::uint64_t bits) : bits_(bits) {}
  static AttributeSet single(std::size_t i) { return AttributeSet(1ull << i); }
  static AttributeSet all(std::size_t n) {
    return AttributeSet(n >= 64 ? ~0ull : (1ull << n) - 1);
  }

  std::uint64_t bits() const { return bits_; }
  bool empty() const { return bits_ == 0; }
  std::size_t size() const { return static_cast<std::size_t>(__builtin_popcountll(bits_)); }
  bool contains(std::size_t i) const { return (bits_ >> i) & 1; }
  bool contains_all(AttributeSet other) const { return (bits_ & other.bits_) == other.bits_; }
  bool is_subset_of(AttributeSet other) const { return other.contains_all(*this); }
  bool is_strict_subset_of(AttributeSet other) const {
    return bits_ != other.bits_ && is_subset_of(other);
  }

  AttributeSet& add(std::size_t i) { bits_ |= 1ull << i; return *this; }
  AttributeSet& remove(std::size_t i) { bits_ &= ~(1ull << i); return *this; }
  friend AttributeSet operator|(AttributeSet a, AttributeSet b) { return AttributeSet(a.bits_ | b.bits_); }
  friend AttributeSet operator&(AttributeSet a, AttributeSet b) { return AttributeSet(a.bits_ & b.bits_); }
  friend AttributeSet operator-(AttributeSet a, AttributeSet b) { return AttributeSet(a.bits_ & ~b.bits_); }
  friend bool operator==(AttributeSet a, AttributeSet b) { return a.bits_ == b.bits_; }

  std::vector<std::size_t> indexes() const;

  // Order by size, then lexicographically on ascending index lists;
  // {0,5} < {1,2}. Used everywhere deterministic output is required.
  static bool canonical_less(AttributeSet a, AttributeSet b);

private:
  std::uint64_t bits_ = 0;
};

// X -> A with a single dependent attribute. lhs may be empty only for
// constant-attribute records.
struct FunctionalDependency {
  AttributeSet lhs;
  std::size_t rhs = 0;

  friend bool operator==(const FunctionalDependency& a, const FunctionalDependency& b) {
    return a.lhs == b.lhs && a.rhs == b.rhs;
  }
  // Canonical order: (lhs size, lhs lex, rhs).
  friend bool operator<(const FunctionalDependency& a, const FunctionalDependency& b) {
    if (!(a.lhs == b.lhs)) return AttributeSet::canonical_less(a.lhs, b.lhs);
    return a.rhs < b.rhs;
  }

  std::string str(const std::vector<std::string>& names) const;
};

// Instance-level check: true iff no two rows agree on all lhs attributes
// while differing on rhs. For empty lhs, true iff the rhs column is
// constant. Works directly on string tokens; this is the independent
// oracle, deliberately not routed through the dictionary encoding.
bool holds_on_instance(const RelationInstance& rel, const FunctionalDependency& fd);

// Smallest superset S of attrs with: lhs ⊆ S implies rhs ∈ S for every fd.
AttributeSet closure(AttributeSet attrs, const std::vector<FunctionalDependency>& fds);

// Closure-equivalent cover with no extraneous lhs attributes and no
// redundant FDs. Processing order is canonical, so output is deterministic.
std::vector<FunctionalDependency> minimal_cover(std::vector<FunctionalDependency> fds);

struct KeySearchOptions {
  std::size_t budget = 100000;  // visited attribute sets before giving up
};

// All minimal keys of the full heading, sorted by (size, lex). Throws
// KeySearchBudgetError when the frontier exceeds the budget; no partial
// results.
std::vector<AttributeSet> candidate_keys(std::size_t num_attributes,
                                         const std::vector<FunctionalDependency>& fds,
                                         const KeySearchOptions& options = {});

// Minimal sets K ⊆ universe with target ⊆ closure(K, fds). candidate_keys
// is the special case universe = target = full heading; verify_3nf uses it
// per relation.
std::vector<AttributeSet> minimal_determinants(AttributeSet universe, AttributeSet target,
                                               const std::vector<FunctionalDependency>& fds,
                                               const KeySearchOptions& options = {});

// Exhaustive FD discovery; the independent oracle for the mining pipeline.
// Returns, in canonical order:
//   - ∅ -> A for every constant column, and
//   - every minimal non-trivial FD with 1 <= |lhs| <= max_lhs, minimality
//     judged among non-empty determinants.
std::vector<FunctionalDependency> discover_fds_bruteforce(const RelationInstance& rel,
                                                          std::size_t max_lhs);

}  // namespace schemadig
