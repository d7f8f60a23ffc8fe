#include <benchmark/benchmark.h>

#include <random>

#include "sct/character_table.hpp"
#include "sct/enumerate.hpp"
#include "sct/theory.hpp"

namespace {

const sct::CharacterTable& table(const char* name) {
  static std::map<std::string, sct::CharacterTable> cache;
  auto it = cache.find(name);
  if (it == cache.end()) {
    it = cache
             .emplace(name,
                      sct::CharacterTable::load(std::string(SCT_DATA_DIR) + "/" + name + ".json"))
             .first;
  }
  return it->second;
}

sct::Partition random_identity_partition(std::mt19937_64& rng, unsigned k) {
  std::vector<unsigned> keys(k, 0);
  unsigned next = 2;
  if (k > 1) keys[1] = 1;
  for (unsigned i = 2; i < k; ++i) {
    keys[i] = 1 + static_cast<unsigned>(rng() % next);
    if (keys[i] == next) ++next;
  }
  return sct::Partition::from_keys(keys);
}

void BM_CyclotomicMul(benchmark::State& state) {
  const sct::FieldPtr f = sct::CycloField::of(static_cast<unsigned long>(state.range(0)));
  std::mt19937_64 rng(1);
  sct::Cyclotomic a(f), b(f);
  for (unsigned t = 0; t < 4; ++t) {
    a += sct::Cyclotomic::root_power(f, static_cast<long long>(rng() % f->degree()));
    b += sct::Cyclotomic::root_power(f, static_cast<long long>(rng() % f->degree()));
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(a * b);
  }
}
BENCHMARK(BM_CyclotomicMul)->Arg(7)->Arg(88)->Arg(420);

void BM_CharacterPartition(benchmark::State& state) {
  const sct::CharacterTable& t = table("a7");
  std::mt19937_64 rng(2);
  const sct::Partition p = random_identity_partition(rng, t.k());
  for (auto _ : state) {
    benchmark::DoNotOptimize(sct::character_partition(t, p.blocks()));
  }
}
BENCHMARK(BM_CharacterPartition);

void BM_RefineToTheory(benchmark::State& state) {
  const sct::CharacterTable& t = table("a7");
  std::mt19937_64 rng(3);
  std::vector<sct::Partition> seeds;
  for (int i = 0; i < 64; ++i) seeds.push_back(random_identity_partition(rng, t.k()));
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sct::refine_classes_to_theory(t, seeds[i++ % seeds.size()]));
  }
}
BENCHMARK(BM_RefineToTheory);

void BM_EnumerateAll(benchmark::State& state) {
  const char* names[] = {"a5", "a7", "m11"};
  const sct::CharacterTable& t = table(names[state.range(0)]);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sct::all_theories(t));
  }
}
BENCHMARK(BM_EnumerateAll)->Arg(0)->Arg(1)->Arg(2);

void BM_StepHistogram(benchmark::State& state) {
  const sct::CharacterTable& t = table("a7");
  for (auto _ : state) {
    benchmark::DoNotOptimize(sct::refinement_step_histogram(t));
  }
}
BENCHMARK(BM_StepHistogram);

}  // namespace

BENCHMARK_MAIN();
