#include "schemadig/normalize.hpp"

#include <algorithm>
#include <map>

#include "schemadig/errors.hpp"

namespace schemadig {
namespace {

std::string relation_name_for(AttributeSet pk, const std::vector<std::string>& names) {
  std::string out;
  for (std::size_t i : pk.indexes()) {
    if (!out.empty()) out += "_";
    out += names[i];
  }
  return out;
}

}  // namespace

SchemaDesign synthesize_3nf(const std::vector<std::string>& attribute_names,
                            const std::vector<FunctionalDependency>& cover,
                            const std::vector<AttributeSet>& keys) {
  if (keys.empty()) throw NoKeyAvailableError();

  SchemaDesign schema;
  schema.attribute_names = attribute_names;
  schema.source_fds = cover;
  schema.candidate_keys = keys;

  // Group the cover by determinant; one relation per group. Empty-lhs
  // records never reach synthesis through the pipeline, but skip them
  // defensively rather than minting a keyless relation.
  std::map<std::uint64_t, AttributeSet> groups;  // lhs bits -> rhs set
  std::vector<AttributeSet> group_order;
  for (const auto& fd : cover) {
    if (fd.lhs.empty()) continue;
    auto [it, inserted] = groups.try_emplace(fd.lhs.bits(), AttributeSet{});
    if (inserted) group_order.push_back(fd.lhs);
    it->second.add(fd.rhs);
  }
  std::sort(group_order.begin(), group_order.end(), AttributeSet::canonical_less);

  struct ProtoRelation {
    AttributeSet attributes;
    AttributeSet primary_key;
    bool is_key_relation = false;
  };
  std::vector<ProtoRelation> protos;
  for (AttributeSet lhs : group_order) {
    protos.push_back(ProtoRelation{lhs | groups[lhs.bits()], lhs, false});
  }

  // Lossless-join guarantee: some relation must contain a candidate key.
  bool key_covered = false;
  for (const auto& p : protos) {
    for (AttributeSet k : keys) {
      if (p.attributes.contains_all(k)) {
        key_covered = true;
        break;
      }
    }
    if (key_covered) break;
  }
  if (!key_covered) {
    protos.push_back(ProtoRelation{keys.front(), keys.front(), true});
  }

  // Attributes appearing in no FD belong to the key relation (they are in
  // every candidate key, so the key relation exists whenever they do).
  AttributeSet in_fds;
  for (const auto& fd : cover) {
    in_fds = in_fds | fd.lhs;
    in_fds.add(fd.rhs);
  }
  AttributeSet everything = AttributeSet::all(attribute_names.size());
  AttributeSet loose = everything - in_fds;
  if (!loose.empty()) {
    ProtoRelation* home = nullptr;
    for (auto& p : protos) {
      if (p.is_key_relation) home = &p;
    }
    if (home == nullptr) {
      for (auto& p : protos) {
        if (p.attributes.contains_all(keys.front())) {
          home = &p;
          break;
        }
      }
    }
    if (home != nullptr) home->attributes = home->attributes | loose;
  }

  // Subset absorption: drop any relation whose attributes are contained in
  // another's. Earlier relations win ties so output stays deterministic.
  std::vector<bool> absorbed(protos.size(), false);
  for (std::size_t i = 0; i < protos.size(); ++i) {
    for (std::size_t j = 0; j < protos.size(); ++j) {
      if (i == j || absorbed[i] || absorbed[j]) continue;
      bool subset = protos[j].attributes.contains_all(protos[i].attributes);
      bool equal = protos[i].attributes == protos[j].attributes;
      if (subset && (!equal || j < i)) {
        absorbed[i] = true;
        schema.warnings.push_back("relation with key {" +
                                  relation_name_for(protos[i].primary_key, attribute_names) +
                                  "} absorbed by a relation containing its attributes");
      }
    }
  }

  std::vector<std::string> used_names;
  for (std::size_t i = 0; i < protos.size(); ++i) {
    if (absorbed[i]) continue;
    OutputRelation rel;
    rel.attributes = protos[i].attributes;
    rel.primary_key = protos[i].primary_key;
    rel.name = relation_name_for(rel.primary_key, attribute_names);
    while (std::find(used_names.begin(), used_names.end(), rel.name) != used_names.end()) {
      rel.name = "R_" + rel.name;
    }
    used_names.push_back(rel.name);
    schema.relations.push_back(std::move(rel));
  }
  return schema;
}

AttributeSet projected_closure(AttributeSet attrs, const SchemaDesign& schema,
                               const std::vector<FunctionalDependency>& cover) {
  // Closure under the union of the cover projected onto each relation,
  // computed without materializing the projections: iterate
  // Z ← Z ∪ (closure(Z ∩ R) ∩ R) to a fixpoint.
  AttributeSet z = attrs;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& rel : schema.relations) {
      AttributeSet gain = closure(z & rel.attributes, cover) & rel.attributes;
      if (!z.contains_all(gain)) {
        z = z | gain;
        changed = true;
      }
    }
  }
  return z;
}

VerificationReport verify_3nf(const SchemaDesign& schema,
                              const std::vector<FunctionalDependency>& cover) {
  VerificationReport report;

  for (const auto& rel : schema.relations) {
    std::vector<AttributeSet> rel_keys;
    bool rel_keys_ready = false;
    for (const auto& fd : cover) {
      if (fd.lhs.empty()) continue;
      AttributeSet embedded = fd.lhs;
      embedded.add(fd.rhs);
      if (!rel.attributes.contains_all(embedded)) continue;

      // X is a superkey of R iff its closure covers all of R.
      if (closure(fd.lhs, cover).contains_all(rel.attributes)) continue;

      if (!rel_keys_ready) {
        rel_keys = minimal_determinants(rel.attributes, rel.attributes, cover);
        rel_keys_ready = true;
      }
      bool prime = false;
      for (AttributeSet k : rel_keys) {
        if (k.contains(fd.rhs)) {
          prime = true;
          break;
        }
      }
      if (!prime) {
        report.violations.push_back(Violation{
            rel.name, fd,
            "determinant is not a superkey of the relation and the dependent "
            "attribute is not prime"});
      }
    }
  }

  report.lossless_join = false;
  for (const auto& rel : schema.relations) {
    for (AttributeSet k : schema.candidate_keys) {
      if (rel.attributes.contains_all(k)) {
        report.lossless_join = true;
        break;
      }
    }
    if (report.lossless_join) break;
  }

  // Dependency preservation: closures under projected FDs must match
  // closures under the cover. Exhaustive for small headings, sampled plus
  // every cover determinant otherwise.
  const std::size_t n = schema.attribute_names.size();
  report.dependency_preserving = true;
  auto check = [&](AttributeSet s) {
    return projected_closure(s, schema, cover) == closure(s, cover);
  };
  if (n <= 12) {
    const std::uint64_t limit = 1ull << n;
    for (std::uint64_t bits = 0; bits < limit && report.dependency_preserving; ++bits) {
      if (!check(AttributeSet(bits))) report.dependency_preserving = false;
    }
  } else {
    for (const auto& fd : cover) {
      if (!check(fd.lhs)) {
        report.dependency_preserving = false;
        break;
      }
    }
    std::uint64_t state = 0x9E3779B97F4A7C15ull;  // fixed seed: deterministic
    const AttributeSet everything = AttributeSet::all(n);
    for (int i = 0; i < 4096 && report.dependency_preserving; ++i) {
      state = state * 6364136223846793005ull + 1442695040888963407ull;
      if (!check(AttributeSet(state & everything.bits()))) {
        report.dependency_preserving = false;
      }
    }
  }
  return report;
}

SchemaDesign assign_foreign_keys(SchemaDesign schema) {
  for (auto& rel : schema.relations) {
    rel.foreign_keys.clear();
    // Candidate targets grouped by primary-key attribute set; smallest
    // relation, then lexicographic name, wins an ambiguity.
    std::map<std::uint64_t, const OutputRelation*> chosen;
    for (const auto& target : schema.relations) {
      if (&target == &rel) continue;
      if (target.name == rel.name) continue;
      if (!rel.attributes.contains_all(target.primary_key)) continue;
      auto [it, inserted] = chosen.try_emplace(target.primary_key.bits(), &target);
      if (!inserted) {
        const OutputRelation* old = it->second;
        bool better = target.attributes.size() < old->attributes.size() ||
                      (target.attributes.size() == old->attributes.size() &&
                       target.name < old->name);
        if (better) it->second = &target;
      }
    }
    std::vector<ForeignKey> fks;
    for (const auto& [bits, target] : chosen) {
      fks.push_back(ForeignKey{AttributeSet(bits), target->name});
    }
    std::sort(fks.begin(), fks.end(), [](const ForeignKey& a, const ForeignKey& b) {
      if (!(a.local_attributes == b.local_attributes)) {
        return AttributeSet::canonical_less(a.local_attributes, b.local_attributes);
      }
      return a.target_relation < b.target_relation;
    });
    rel.foreign_keys = std::move(fks);
  }
  return schema;
}

}  // namespace schemadig
