#pragma once

#include <string>
#include <vector>

#include "schemadig/fd.hpp"

namespace schemadig {

struct ForeignKey {
  AttributeSet local_attributes;
  std::string target_relation;
};

struct OutputRelation {
  std::string name;
  AttributeSet attributes;
  AttributeSet primary_key;  // nonempty, contained in attributes
  std::vector<ForeignKey> foreign_keys;
};

struct SchemaDesign {
  std::vector<std::string> attribute_names;  // of the universal relation
  std::vector<OutputRelation> relations;
  std::vector<FunctionalDependency> source_fds;  // minimal cover used
  std::vector<AttributeSet> candidate_keys;      // of the universal relation
  std::vector<std::string> warnings;
};

// Bernstein-style 3NF synthesis: one relation per lhs group of the cover,
// a key relation when no group contains a candidate key, subset absorption,
// and FD-free attributes appended to the key relation. Deterministic
// relation order and naming (pk attribute names joined by '_', prefixed
// "R_" on collision). Throws NoKeyAvailableError if keys is empty.
SchemaDesign synthesize_3nf(const std::vector<std::string>& attribute_names,
                            const std::vector<FunctionalDependency>& cover,
                            const std::vector<AttributeSet>& keys);

struct Violation {
  std::string relation;
  FunctionalDependency fd;
  std::string reason;
};

struct VerificationReport {
  std::vector<Violation> violations;
  bool lossless_join = false;
  bool dependency_preserving = false;

  bool passed() const {
    return violations.empty() && lossless_join && dependency_preserving;
  }
};

// Checks, per relation, that every cover FD embedded in it has a superkey
// determinant or a prime dependent; plus global lossless-join (some
// relation carries a universal candidate key) and dependency-preservation
// checks.
VerificationReport verify_3nf(const SchemaDesign& schema,
                              const std::vector<FunctionalDependency>& cover);

// Closure of attrs under the union of the cover's projections onto the
// schema's relations (iterated-projection fixpoint). Exposed for the
// dependency-preservation property tests.
AttributeSet projected_closure(AttributeSet attrs, const SchemaDesign& schema,
                               const std::vector<FunctionalDependency>& cover);

// Adds R.(attrs) -> S for every pair where S's primary key is contained in
// R. When several targets share a primary-key attribute set, the smallest
// relation (then lexicographic name) wins.
SchemaDesign assign_foreign_keys(SchemaDesign schema);

}  // namespace schemadig
