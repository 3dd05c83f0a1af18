#include <benchmark/benchmark.h>

#include <random>

#include "schemadig/apriori.hpp"
#include "support/datagen.hpp"

using namespace schemadig;

namespace {

TransactionDB make_db(std::size_t rows, std::size_t attrs, std::size_t alphabet) {
  std::mt19937 rng(42);
  return encode_transactions(testing::random_relation(rng, attrs, rows, alphabet));
}

void BM_FrequentItemsets_MinsupOne(benchmark::State& state) {
  TransactionDB db = make_db(static_cast<std::size_t>(state.range(0)), 8, 6);
  MinerOptions options;
  options.min_support_abs = 1;
  options.max_size = 4;
  for (auto _ : state) {
    auto frequent = frequent_itemsets(db, options);
    benchmark::DoNotOptimize(frequent);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_FrequentItemsets_MinsupOne)->Arg(1000)->Arg(10000)->Arg(50000);

void BM_FrequentItemsets_Candidates(benchmark::State& state) {
  TransactionDB db = make_db(50000, 8, 6);
  MinerOptions options;
  options.min_support_abs = static_cast<std::uint64_t>(state.range(0));
  options.max_size = 4;
  for (auto _ : state) {
    auto frequent = frequent_itemsets(db, options);
    benchmark::DoNotOptimize(frequent);
  }
}
BENCHMARK(BM_FrequentItemsets_Candidates)->Arg(50)->Arg(500)->Arg(5000);

void BM_FrequentItemsets_Threads(benchmark::State& state) {
  TransactionDB db = make_db(100000, 8, 6);
  MinerOptions options;
  options.min_support_abs = 100;
  options.max_size = 4;
  options.threads = static_cast<unsigned>(state.range(0));
  for (auto _ : state) {
    auto frequent = frequent_itemsets(db, options);
    benchmark::DoNotOptimize(frequent);
  }
}
BENCHMARK(BM_FrequentItemsets_Threads)->Arg(1)->Arg(2)->Arg(4);

void BM_GenerateRules(benchmark::State& state) {
  TransactionDB db = make_db(static_cast<std::size_t>(state.range(0)), 6, 4);
  MinerOptions options;
  options.min_support_abs = 1;
  options.max_size = 4;
  auto frequent = frequent_itemsets(db, options);
  for (auto _ : state) {
    auto rules = generate_rules(frequent, Ratio{1, 1});
    benchmark::DoNotOptimize(rules);
  }
}
BENCHMARK(BM_GenerateRules)->Arg(1000)->Arg(10000);

}  // namespace
