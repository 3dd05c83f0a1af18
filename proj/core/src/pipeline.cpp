#include "schemadig/pipeline.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <type_traits>

#include "schemadig/errors.hpp"

namespace schemadig {
namespace {

namespace fs = std::filesystem;

class StageClock {
public:
  explicit StageClock(std::vector<StageTiming>& sink) : sink_(sink) {}

  template <typename F>
  auto run(const std::string& stage, F&& f) {
    const auto start = std::chrono::steady_clock::now();
    if constexpr (std::is_void_v<decltype(f())>) {
      f();
      record(stage, start);
    } else {
      auto result = f();
      record(stage, start);
      return result;
    }
  }

private:
  void record(const std::string& stage, std::chrono::steady_clock::time_point start) {
    const auto elapsed = std::chrono::steady_clock::now() - start;
    sink_.push_back(StageTiming{
        stage, static_cast<std::uint64_t>(
                   std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count())});
  }

  std::vector<StageTiming>& sink_;
};

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path.string());
  out << content;
  out.flush();
  if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace

PipelineResult run_pipeline(const RunConfig& config) {
  PipelineResult result;
  StageClock clock(result.timings);

  fs::path out_dir(config.out_dir);
  fs::path partial_dir = out_dir / ".partial";
  if (config.write_outputs) {
    std::error_code ec;
    fs::create_directories(partial_dir, ec);
    if (ec) throw IoError("cannot create output directory: " + partial_dir.string());
  }

  IngestOptions ingest_options;
  ingest_options.delimiter = config.delimiter;
  ingest_options.has_header = config.has_header;
  ingest_options.null_policy = config.null_policy;
  result.relation = clock.run("ingest", [&] {
    return load_csv(config.input_path, ingest_options, &result.ingest_stats);
  });
  const RelationInstance& rel = result.relation;

  TransactionDB db = clock.run("encode", [&] { return encode_transactions(rel); });

  const std::size_t n = rel.attribute_count();
  const std::size_t max_lhs = std::min(config.max_lhs, n > 0 ? n - 1 : 0);
  std::size_t max_size = config.max_itemset_size;
  if (max_size == 0) max_size = std::min(n, max_lhs + 1);
  max_size = std::min({max_size, n, kMaxItemsetSize});

  MinerOptions miner;
  miner.min_support_abs = config.min_support_abs;
  miner.max_size = max_size;
  miner.threads = config.threads;
  auto frequent = clock.run("frequent_itemsets", [&] { return frequent_itemsets(db, miner); });

  result.mined_rules =
      clock.run("generate_rules", [&] { return generate_rules(frequent, config.min_confidence); });

  std::string rules_store = clock.run("persist_rules", [&] {
    std::string text = render_rules(result.mined_rules, db);
    if (config.write_outputs) write_file(partial_dir / "rules.store", text);
    return text;
  });
  result.rules_store = std::move(rules_store);

  result.filter.rules_before = result.mined_rules.size();
  auto exact_rules = clock.run("filter_confidence",
                               [&] { return filter_confidence(result.mined_rules, Ratio{1, 1}); });
  result.filter.rules_after_confidence = exact_rules.size();

  auto minimal_rules =
      clock.run("minimal_lhs_filter", [&] { return minimal_lhs_filter(exact_rules); });
  result.filter.rules_after_minimality = minimal_rules.size();

  result.lift = clock.run("lift_to_fds", [&] { return lift_to_fds(minimal_rules, db, max_lhs); });
  result.filter.fds_lifted = result.lift.fds.size();

  // Constant columns (empty determinant) are report material, not
  // synthesis input; a determinant-free FD has no home in a relation.
  std::vector<FunctionalDependency> cover_input;
  for (const auto& lf : result.lift.fds) {
    if (!lf.fd.lhs.empty()) cover_input.push_back(lf.fd);
  }

  result.cover = clock.run("minimal_cover", [&] { return minimal_cover(cover_input); });

  KeySearchOptions key_options;
  key_options.budget = config.key_search_budget;
  result.keys =
      clock.run("candidate_keys", [&] { return candidate_keys(n, result.cover, key_options); });

  result.schema = clock.run("synthesize_3nf", [&] {
    return synthesize_3nf(rel.attributes(), result.cover, result.keys);
  });

  result.verification =
      clock.run("verify_3nf", [&] { return verify_3nf(result.schema, result.cover); });

  result.schema = clock.run("assign_foreign_keys",
                            [&] { return assign_foreign_keys(std::move(result.schema)); });

  // Report assembly.
  RunReport report;
  // Basename only: report files must stay byte-identical no matter where
  // the input happens to live.
  report.input_path = fs::path(config.input_path).filename().string();
  report.relation_name = rel.name();
  report.rows = rel.row_count();
  report.attributes = rel.attributes();
  report.rows_dropped = result.ingest_stats.rows_dropped;
  report.min_support_abs = miner.min_support_abs;
  report.min_confidence = config.min_confidence;
  report.max_itemset_size = max_size;
  report.max_lhs = max_lhs;
  report.null_policy = config.null_policy == NullPolicy::kSentinel ? "sentinel" : "drop";
  report.frequent_itemset_count = frequent.size();
  report.filter = result.filter;
  report.lifted_fds = result.lift.fds;
  for (const auto& fd : result.cover) report.cover.push_back(projection_evidence(db, fd));
  report.candidate_keys = result.keys;
  report.timings = result.timings;
  report.include_timings = config.include_timings;

  for (std::size_t a : result.lift.constant_attributes) {
    std::string relations;
    for (const auto& r : result.schema.relations) {
      if (r.attributes.contains(a)) {
        if (!relations.empty()) relations += ", ";
        relations += r.name;
      }
    }
    std::string w = rel.attributes()[a] + ": constant attribute (single distinct value)";
    if (!relations.empty()) w += "; carried by relation(s): " + relations;
    report.warnings.push_back(std::move(w));
  }
  for (std::size_t a : result.lift.all_distinct_attributes) {
    report.warnings.push_back(rel.attributes()[a] +
                              ": all values distinct; FDs from " + rel.attributes()[a] +
                              " may be small-sample artifacts");
  }
  if (result.ingest_stats.rows_dropped > 0) {
    report.warnings.push_back(std::to_string(result.ingest_stats.rows_dropped) +
                              " row(s) dropped by null policy 'drop'");
  }
  if (max_size < n) {
    report.warnings.push_back(
        "itemset size bounded at " + std::to_string(max_size) +
        "; determinants larger than " + std::to_string(max_size - 1) + " were not searched");
  } else if (max_lhs < (n > 0 ? n - 1 : 0)) {
    report.warnings.push_back("determinant size bounded at max_lhs=" + std::to_string(max_lhs) +
                              "; larger determinants were not searched");
  }
  for (const auto& w : result.schema.warnings) report.warnings.push_back(w);

  report.schema = result.schema;
  report.verification = result.verification;

  clock.run("emit", [&] {
    result.ddl = emit_ddl(result.schema);
    report.timings = result.timings;  // timings known so far
    result.report_json = emit_report_json(report);
    result.report_text = emit_report_text(report);
    if (config.write_outputs) {
      write_file(partial_dir / "schema.sql", result.ddl);
      write_file(partial_dir / "report.json", result.report_json);
      write_file(partial_dir / "report.txt", result.report_text);
    }
  });

  if (config.write_outputs) {
    // Every stage succeeded; move the staged files into place.
    for (const char* file : {"rules.store", "schema.sql", "report.json", "report.txt"}) {
      std::error_code ec;
      fs::rename(partial_dir / file, out_dir / file, ec);
      if (ec) throw IoError("cannot finalize output file " + std::string(file) + ": " +
                            ec.message());
    }
    std::error_code ec;
    fs::remove_all(partial_dir, ec);
  }

  if (config.verbose) {
    for (const auto& t : result.timings) {
      std::cerr << "[schemadig] " << t.stage << ": " << t.milliseconds << " ms\n";
    }
  }

  result.exit_code = result.verification.passed() ? 0 : 2;
  return result;
}

}  // namespace schemadig
