#include <benchmark/benchmark.h>

#include <filesystem>

#include "schemadig/pipeline.hpp"
#include "support/datagen.hpp"

using namespace schemadig;
namespace fs = std::filesystem;

namespace {

// End-to-end run over a generated enrollment table, outputs discarded.
void BM_PipelineEndToEnd(benchmark::State& state) {
  fs::path csv = fs::temp_directory_path() / "schemadig_bench_pipeline.csv";
  testing::write_perf_dataset(csv.string(), static_cast<std::size_t>(state.range(0)));

  RunConfig config;
  config.input_path = csv.string();
  config.write_outputs = false;
  config.min_support_abs = static_cast<std::uint64_t>(state.range(0)) / 2000 + 1;
  config.max_lhs = 3;
  config.threads = 2;

  for (auto _ : state) {
    PipelineResult result = run_pipeline(config);
    benchmark::DoNotOptimize(result);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
  fs::remove(csv);
}
BENCHMARK(BM_PipelineEndToEnd)->Unit(benchmark::kMillisecond)->Arg(10000)->Arg(100000);

void BM_RegisterPipeline(benchmark::State& state) {
  RelationInstance rel = testing::register_dataset();
  fs::path csv = fs::temp_directory_path() / "schemadig_bench_register.csv";
  testing::write_csv_file(csv.string(), rel.attributes(), rel.rows());

  RunConfig config;
  config.input_path = csv.string();
  config.write_outputs = false;

  for (auto _ : state) {
    PipelineResult result = run_pipeline(config);
    benchmark::DoNotOptimize(result);
  }
  fs::remove(csv);
}
BENCHMARK(BM_RegisterPipeline)->Unit(benchmark::kMillisecond);

}  // namespace
