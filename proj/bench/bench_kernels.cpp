// Serial reference vs OpenMP kernels on an AUCS-sized network and a larger
// synthetic one. Thread count follows OMP_NUM_THREADS.

#include <benchmark/benchmark.h>

#include "fixtures.hpp"
#include "mlne/eval.hpp"
#include "mlne/sgns.hpp"
#include "mlne/synthetic.hpp"
#include "mlne/walker.hpp"

using namespace mlne;

namespace {

const MultilayerNetwork& network(int which) {
  static const MultilayerNetwork small = testing::sized_network(61, 5, 353, 1);
  static const MultilayerNetwork large = [] {
    SyntheticSpec s;
    s.num_nodes = 1000;
    s.num_blocks = 10;
    s.p_in = 0.05;
    s.p_out = 0.002;
    return generate_synthetic(s);
  }();
  return which == 0 ? small : large;
}

WalkParams walk_params() {
  WalkParams p;
  p.seed = 7;
  return p;
}

TrainConfig train_config() {
  TrainConfig c;
  c.dim = 64;
  c.seed = 7;
  return c;
}

template <bool Parallel>
void BM_CoanalysisWalks(benchmark::State& state) {
  const auto& mn = network(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    auto corpus = Parallel ? coanalysis_walks(mn, walk_params()) : serial::coanalysis_walks(mn, walk_params());
    benchmark::DoNotOptimize(corpus.walks.data());
    state.counters["tokens"] = static_cast<double>(corpus.total_tokens());
  }
}

template <bool Parallel>
void BM_Train(benchmark::State& state) {
  const auto& mn = network(static_cast<int>(state.range(0)));
  const auto corpus = serial::coanalysis_walks(mn, walk_params());
  for (auto _ : state) {
    auto space = Parallel ? train(corpus, mn.num_nodes(), train_config())
                          : serial::train(corpus, mn.num_nodes(), train_config());
    benchmark::DoNotOptimize(space.data().data());
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * corpus.total_tokens()));
}

template <bool Parallel>
void BM_RankCandidates(benchmark::State& state) {
  const auto& mn = network(static_cast<int>(state.range(0)));
  const auto space = serial::train(serial::coanalysis_walks(mn, walk_params()), mn.num_nodes(), train_config());
  const Graph full = merge(mn);
  const auto split = split_edges(full, 0.1, 1);
  const auto cands = candidate_pairs(full, split, ExperimentConfig{});
  for (auto _ : state) {
    auto ranked = Parallel ? rank_candidates(space, cands, Metric::euclidean)
                           : serial::rank_candidates(space, cands, Metric::euclidean);
    benchmark::DoNotOptimize(ranked.data());
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * cands.size()));
}

}  // namespace

BENCHMARK(BM_CoanalysisWalks<false>)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CoanalysisWalks<true>)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Train<false>)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Train<true>)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RankCandidates<false>)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RankCandidates<true>)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
