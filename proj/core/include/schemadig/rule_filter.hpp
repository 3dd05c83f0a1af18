#pragma once

#include <cstdint>
#include <vector>

#include "schemadig/apriori.hpp"
#include "schemadig/fd.hpp"

namespace schemadig {

// Stage counters for the rule-reduction report; non-increasing through the
// stages.
struct FilterReport {
  std::uint64_t rules_before = 0;
  std::uint64_t rules_after_confidence = 0;
  std::uint64_t rules_after_minimality = 0;
  std::uint64_t fds_lifted = 0;
};

// Keeps exactly the rules with confidence >= threshold. At the default
// threshold 1 this is the exact test support(X∪Y) == support(X).
std::vector<AssociationRule> filter_confidence(const std::vector<AssociationRule>& rules,
                                               const Ratio& threshold = Ratio{1, 1});

// Drops rules whose antecedent pattern is subsumed by a smaller one.
//
// Rules are grouped into patterns (antecedent attribute set, consequent
// attribute set). A pattern P is removed iff some retained pattern P' with
// the same consequent attributes and a strict subset of P's antecedent
// attributes covers it: every rule of P projects (restricting antecedent
// items to P's sub-attributes) onto a rule of P'. Requiring one covering
// sub-pattern, rather than a per-rule witness, is what keeps the lifted FD
// set unchanged by this reduction.
std::vector<AssociationRule> minimal_lhs_filter(const std::vector<AssociationRule>& rules);

// One lifted FD plus the distinct-projection evidence that accepted it.
struct LiftedFd {
  FunctionalDependency fd;
  std::uint64_t lhs_distinct = 0;      // |π_lhs|; 1 for empty lhs
  std::uint64_t lhs_rhs_distinct = 0;  // |π_lhs∪rhs|
};

struct LiftResult {
  std::vector<LiftedFd> fds;            // canonical order
  std::vector<std::size_t> constant_attributes;      // distinct count == 1
  std::vector<std::size_t> all_distinct_attributes;  // distinct count == rows (rows >= 2)

  std::vector<FunctionalDependency> fd_set() const;
};

// Lifts rule patterns to attribute-level FDs. Every attribute-set pattern
// (X -> A) appearing among the rules with |X| <= max_lhs is accepted iff it
// holds on the full instance (|π_X| == |π_X∪A|), regardless of mining
// thresholds. Multi-attribute consequents are split per consequent
// attribute first. Constant columns are reported as ∅ -> A records. The
// result keeps only subset-minimal determinants (minimality among
// non-empty lhs).
LiftResult lift_to_fds(const std::vector<AssociationRule>& rules, const TransactionDB& db,
                       std::size_t max_lhs);

// Distinct-projection counts for one FD on the encoded instance; used to
// attach evidence to dependencies that synthesis derived rather than
// lifted directly.
LiftedFd projection_evidence(const TransactionDB& db, const FunctionalDependency& fd);

}  // namespace schemadig
