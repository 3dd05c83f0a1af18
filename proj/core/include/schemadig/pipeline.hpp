#pragma once

#include <cstdint>
#include <string>

#include "schemadig/csv.hpp"
#include "schemadig/emit.hpp"

namespace schemadig {

struct RunConfig {
  std::string input_path;
  char delimiter = ',';
  bool has_header = true;
  NullPolicy null_policy = NullPolicy::kSentinel;

  // Absolute count when >= 1 is given on the CLI, fraction rounded up
  // otherwise; resolves to >= 1.
  std::uint64_t min_support_abs = 1;
  Ratio min_confidence{1, 1};

  std::size_t max_itemset_size = 0;  // 0 = auto (min(attrs, max_lhs + 1))
  std::size_t max_lhs = 4;
  std::size_t key_search_budget = 100000;

  std::string out_dir = "schemadig_out";
  unsigned threads = 1;
  bool verbose = false;
  bool include_timings = false;
  bool write_outputs = true;  // tests can run the pipeline in memory
};

struct PipelineResult {
  int exit_code = 0;

  RelationInstance relation;
  IngestStats ingest_stats;
  std::vector<AssociationRule> mined_rules;
  FilterReport filter;
  LiftResult lift;
  std::vector<FunctionalDependency> cover;
  std::vector<AttributeSet> keys;
  SchemaDesign schema;
  VerificationReport verification;

  std::string report_json;
  std::string report_text;
  std::string ddl;
  std::string rules_store;

  std::vector<StageTiming> timings;
};

// Runs the full workflow: ingest -> encode -> frequent_itemsets ->
// generate_rules -> persist_rules -> filter_confidence ->
// minimal_lhs_filter -> lift_to_fds -> minimal_cover -> candidate_keys ->
// synthesize_3nf -> verify_3nf -> assign_foreign_keys -> emit.
//
// Output files (<out>/schema.sql, report.json, report.txt, rules.store) are
// staged in <out>/.partial and moved into place only when every stage
// succeeded; a failed run leaves nothing but the .partial directory.
//
// Exit code 0: success with zero 3NF violations; input errors raise
// InputError (CLI exit 1); budget and verification failures return 2.
PipelineResult run_pipeline(const RunConfig& config);

}  // namespace schemadig
