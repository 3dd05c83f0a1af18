// schemadig: recover a 3NF relational schema from one flat table of
// instance data by mining exact association rules and synthesizing the
// dependencies they imply.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "schemadig/errors.hpp"
#include "schemadig/pipeline.hpp"

namespace {

// --min-support accepts an absolute count ("2") or a fraction of the rows
// ("0.05"); fractions resolve to ceil(rows * fraction), never below 1.
std::uint64_t resolve_min_support(const std::string& text, std::size_t rows) {
  schemadig::Ratio r = schemadig::Ratio::parse_decimal(text);
  if (r.den == 1) {
    return r.num < 1 ? 1 : r.num;
  }
  // Fraction: ceil(rows * num / den), at least 1.
  const unsigned __int128 scaled =
      static_cast<unsigned __int128>(rows) * r.num + (r.den - 1);
  std::uint64_t abs = static_cast<std::uint64_t>(scaled / r.den);
  return abs < 1 ? 1 : abs;
}

// Fractions are relative to the rows actually mined (post null-policy).
std::size_t count_data_rows(const std::string& path, const schemadig::IngestOptions& options) {
  return schemadig::load_csv(path, options).row_count();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "schemadig - reverse-engineer a 3NF schema from a flat table by "
      "association-rule mining"};

  schemadig::RunConfig config;
  std::string min_support_text = "1";
  std::string min_confidence_text = "1";
  std::string null_policy = "sentinel";
  std::string delimiter = ",";
  bool no_header = false;

  app.add_option("--input,-i", config.input_path, "Input delimited text file")->required();
  app.add_option("--delimiter", delimiter, "Field delimiter (single character, default ',')");
  app.add_flag("--no-header", no_header, "Input has no header row; columns become col_1..col_n");
  app.add_option("--null-policy", null_policy, "Empty-cell handling: sentinel | drop")
      ->check(CLI::IsMember({"sentinel", "drop"}));
  app.add_option("--min-support", min_support_text,
                 "Minimum support: absolute count (>=1) or fraction of rows (rounded up)");
  app.add_option("--min-confidence", min_confidence_text,
                 "Minimum rule confidence in (0,1]; the schema heuristic itself always "
                 "uses exact 100% rules");
  app.add_option("--max-itemset-size", config.max_itemset_size,
                 "Largest itemset mined (0 = auto: max_lhs + 1)");
  app.add_option("--max-lhs", config.max_lhs, "Largest determinant searched (default 4)");
  app.add_option("--out,-o", config.out_dir, "Output directory (default schemadig_out)")
      ->envname("SCHEMADIG_OUT");
  app.add_option("--threads", config.threads, "Worker thread hint (0 = hardware)");
  app.add_flag("--verbose,-v", config.verbose, "Print stage timings and progress to stderr");
  app.add_flag("--timings", config.include_timings,
               "Include stage timings in report files (breaks byte-identical reruns)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (delimiter.size() != 1) {
      throw schemadig::InputError("--delimiter must be a single character");
    }
    config.delimiter = delimiter[0];
    config.has_header = !no_header;
    config.null_policy = null_policy == "drop" ? schemadig::NullPolicy::kDropRow
                                               : schemadig::NullPolicy::kSentinel;

    config.min_confidence = schemadig::Ratio::parse_decimal(min_confidence_text);
    if (config.min_confidence.num == 0 ||
        config.min_confidence > schemadig::Ratio{1, 1}) {
      throw schemadig::InputError("--min-confidence must be in (0, 1]");
    }
    if (!config.min_confidence.is_one()) {
      std::cerr << "warning: the schema heuristic expects 100% confidence rules; "
                   "proceeding with min-confidence "
                << config.min_confidence.str()
                << " for rule exploration (FD acceptance still uses the exact "
                   "projection test)\n";
    }

    if (min_support_text.find('.') != std::string::npos ||
        min_support_text.find('/') != std::string::npos) {
      schemadig::IngestOptions opts;
      opts.delimiter = config.delimiter;
      opts.has_header = config.has_header;
      opts.null_policy = config.null_policy;
      config.min_support_abs =
          resolve_min_support(min_support_text, count_data_rows(config.input_path, opts));
    } else {
      config.min_support_abs = resolve_min_support(min_support_text, 0);
    }

    schemadig::PipelineResult result = schemadig::run_pipeline(config);
    if (result.exit_code == 0) {
      std::cout << "schemadig: wrote schema.sql, report.json, report.txt, rules.store to "
                << config.out_dir << "\n";
      std::cout << "relations: " << result.schema.relations.size()
                << ", candidate key" << (result.keys.size() == 1 ? "" : "s") << ": "
                << result.keys.size() << ", 3NF violations: 0\n";
    } else {
      std::cerr << "schemadig: verification reported "
                << result.verification.violations.size() << " violation(s); see report\n";
    }
    return result.exit_code;
  } catch (const schemadig::InputError& e) {
    std::cerr << "schemadig: input error: " << e.what() << "\n";
    return 1;
  } catch (const schemadig::Error& e) {
    std::cerr << "schemadig: error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "schemadig: unexpected error: " << e.what() << "\n";
    return 2;
  }
}
