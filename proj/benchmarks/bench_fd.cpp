#include <benchmark/benchmark.h>

#include <random>

#include "schemadig/fd.hpp"
#include "schemadig/normalize.hpp"
#include "support/datagen.hpp"

using namespace schemadig;

namespace {

std::vector<FunctionalDependency> chain_fds(std::size_t n) {
  std::vector<FunctionalDependency> fds;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    fds.push_back(FunctionalDependency{AttributeSet::single(i), i + 1});
  }
  return fds;
}

std::vector<FunctionalDependency> random_fd_set(std::size_t n, std::size_t count,
                                                std::uint32_t seed) {
  std::mt19937 rng(seed);
  std::vector<FunctionalDependency> fds;
  while (fds.size() < count) {
    AttributeSet lhs;
    const std::size_t k = 1 + rng() % 3;
    while (lhs.size() < k) lhs.add(rng() % n);
    std::size_t rhs = rng() % n;
    if (!lhs.contains(rhs)) fds.push_back(FunctionalDependency{lhs, rhs});
  }
  return fds;
}

void BM_Closure(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  auto fds = chain_fds(n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(closure(AttributeSet::single(0), fds));
  }
}
BENCHMARK(BM_Closure)->Arg(8)->Arg(32)->Arg(64);

void BM_MinimalCover(benchmark::State& state) {
  auto fds = random_fd_set(10, static_cast<std::size_t>(state.range(0)), 3);
  for (auto _ : state) {
    auto cover = minimal_cover(fds);
    benchmark::DoNotOptimize(cover);
  }
}
BENCHMARK(BM_MinimalCover)->Arg(8)->Arg(32)->Arg(128);

void BM_CandidateKeys(benchmark::State& state) {
  auto fds = random_fd_set(static_cast<std::size_t>(state.range(0)), 12, 5);
  for (auto _ : state) {
    auto keys = candidate_keys(static_cast<std::size_t>(state.range(0)), fds);
    benchmark::DoNotOptimize(keys);
  }
}
BENCHMARK(BM_CandidateKeys)->Arg(6)->Arg(10)->Arg(14);

void BM_DiscoverFdsBruteforce(benchmark::State& state) {
  std::mt19937 rng(9);
  RelationInstance rel =
      testing::random_relation(rng, 6, static_cast<std::size_t>(state.range(0)), 4);
  for (auto _ : state) {
    auto fds = discover_fds_bruteforce(rel, 3);
    benchmark::DoNotOptimize(fds);
  }
}
BENCHMARK(BM_DiscoverFdsBruteforce)->Arg(50)->Arg(200)->Arg(1000);

void BM_Synthesize3NF(benchmark::State& state) {
  const std::size_t n = 10;
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back("a" + std::to_string(i));
  auto cover = minimal_cover(random_fd_set(n, static_cast<std::size_t>(state.range(0)), 11));
  auto keys = candidate_keys(n, cover);
  for (auto _ : state) {
    auto schema = assign_foreign_keys(synthesize_3nf(names, cover, keys));
    benchmark::DoNotOptimize(schema);
  }
}
BENCHMARK(BM_Synthesize3NF)->Arg(8)->Arg(24);

}  // namespace
