#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "schemadig/apriori.hpp"
#include "schemadig/normalize.hpp"
#include "schemadig/rule_filter.hpp"

namespace schemadig {

// One CREATE TABLE per relation, PRIMARY KEY and FOREIGN KEY clauses, all
// columns typed TEXT, tables in dependency order (referenced before
// referencing). Relations on a foreign-key cycle are emitted with their FK
// clauses commented and a cycle warning. Byte-identical for identical
// schemas.
std::string emit_ddl(const SchemaDesign& schema);

// Rule store: a header line naming the attributes, then one JSON record
// per rule with antecedent items, consequent items, support count and the
// exact confidence pair. load_rules(persist_rules(r)) == r.
std::string render_rules(const std::vector<AssociationRule>& rules, const TransactionDB& db);
void persist_rules(const std::vector<AssociationRule>& rules, const TransactionDB& db,
                   const std::string& path);
std::vector<AssociationRule> load_rules(const std::string& path);

struct StageTiming {
  std::string stage;
  std::uint64_t milliseconds = 0;
};

// Everything the run learned, in one place. The JSON rendering is the
// stable machine interface; field names are documented in the README and
// pinned by golden tests.
struct RunReport {
  std::string input_path;
  std::string relation_name;
  std::size_t rows = 0;
  std::vector<std::string> attributes;
  std::size_t rows_dropped = 0;

  std::uint64_t min_support_abs = 1;
  Ratio min_confidence{1, 1};
  std::size_t max_itemset_size = 0;
  std::size_t max_lhs = 0;
  std::string null_policy;

  std::uint64_t frequent_itemset_count = 0;
  FilterReport filter;

  std::vector<LiftedFd> lifted_fds;
  std::vector<LiftedFd> cover;  // with its own instance evidence
  std::vector<AttributeSet> candidate_keys;
  std::vector<std::string> warnings;

  SchemaDesign schema;
  VerificationReport verification;

  // Stage timings are only rendered into the report files when
  // include_timings is set; file outputs stay byte-identical across runs
  // by default.
  std::vector<StageTiming> timings;
  bool include_timings = false;
};

std::string emit_report_json(const RunReport& report);
std::string emit_report_text(const RunReport& report);

}  // namespace schemadig
