#include <benchmark/benchmark.h>

#include "fsf/fsf.hpp"

namespace {

void BM_ClassifyFriendship(benchmark::State& state) {
  const auto model = fsf::train_naive_bayes(fsf::builtin_training_set());
  const auto instances = fsf::all_instances();
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(fsf::classify_friendship(model, instances[i++ % instances.size()]));
  }
}
BENCHMARK(BM_ClassifyFriendship);

void BM_BufferInsert(benchmark::State& state) {
  const auto policy = static_cast<fsf::BufferPolicy>(state.range(0));
  const fsf::SocialOracle oracle = [](fsf::NodeId d) {
    return d % 3 == 0 ? fsf::Friendship::strong : fsf::Friendship::weak;
  };
  for (auto _ : state) {
    fsf::Buffer buffer(10 * fsf::kBytesPerMB);
    for (fsf::MessageId id = 0; id < 200; ++id) {
      fsf::Message m;
      m.id = id;
      m.destination = static_cast<fsf::NodeId>(id % 40);
      m.created_at = static_cast<double>(id);
      m.size = 500'000 + (id * 7919) % 500'000;
      m.ttl = 18'000;
      benchmark::DoNotOptimize(fsf::buffer_insert(buffer, m, policy, oracle));
    }
  }
  state.SetItemsProcessed(state.iterations() * 200);
}
BENCHMARK(BM_BufferInsert)->Arg(0)->Arg(1)->Arg(2);

void BM_Simulation(benchmark::State& state) {
  const auto router = static_cast<fsf::RouterKind>(state.range(0));
  fsf::RunConfig base;
  fsf::prepare_model(base);
  const auto input = fsf::load_run_input(base, 1);
  const fsf::CellKey cell{router, 40.0, 0.3, 0.7};
  for (auto _ : state) {
    auto result = fsf::run_cell(base, cell, input, 1);
    benchmark::DoNotOptimize(result.log.size());
  }
  state.SetLabel(fsf::to_string(router));
}
BENCHMARK(BM_Simulation)->Arg(0)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_SyntheticTrace(benchmark::State& state) {
  fsf::SyntheticScenarioConfig config;
  std::uint64_t seed = 0;
  for (auto _ : state) {
    auto trace = fsf::generate_synthetic_trace(config, ++seed);
    benchmark::DoNotOptimize(trace.trace.contacts.size());
  }
}
BENCHMARK(BM_SyntheticTrace)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
