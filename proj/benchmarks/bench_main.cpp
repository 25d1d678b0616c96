// Micro benchmarks for the training and codelength hot paths.

#include <benchmark/benchmark.h>

#include "sgsel/corpus.hpp"
#include "sgsel/criteria.hpp"
#include "sgsel/sgmodel.hpp"
#include "sgsel/synthgen.hpp"

using namespace sgsel;

namespace {

PairStream make_stream(int s_w, int s_c, std::int64_t n, std::uint64_t seed) {
    auto truth = generate_truth({}, s_w, s_c, seed);
    return sample_corpus(truth, n, 0.0, seed + 1);
}

void bm_osg_epoch(benchmark::State& state) {
    const int d = static_cast<int>(state.range(0));
    auto stream = make_stream(40, 50, 50000, 1);
    TrainConfig cfg = default_train_config(ModelKind::oSG);
    cfg.epochs = 1;
    cfg.seed = 2;
    for (auto _ : state) {
        auto result = train(stream, 40, 50, d, cfg);
        benchmark::DoNotOptimize(result.params.E.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(stream.size()));
}
BENCHMARK(bm_osg_epoch)->Arg(10)->Arg(30)->Unit(benchmark::kMillisecond);

void bm_sgns_epoch(benchmark::State& state) {
    const int d = static_cast<int>(state.range(0));
    auto stream = make_stream(40, 50, 50000, 3);
    stream = attach_negatives(stream, context_counts(stream, 50), 15, 0.75, 4);
    TrainConfig cfg = default_train_config(ModelKind::SGNS);
    cfg.epochs = 1;
    cfg.seed = 5;
    for (auto _ : state) {
        auto result = train(stream, 40, 50, d, cfg);
        benchmark::DoNotOptimize(result.params.E.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(stream.size()));
}
BENCHMARK(bm_sgns_epoch)->Arg(10)->Arg(30)->Unit(benchmark::kMillisecond);

void bm_snml_record_osg(benchmark::State& state) {
    const int m = static_cast<int>(state.range(0));
    auto params = init_params(40, 50, 15, 0.3, 6);
    Rng rng(7);
    for (auto _ : state) {
        auto r = snml_record_osg(params, 3, 7, {m, m == 0}, 20, 0.1, rng);
        benchmark::DoNotOptimize(r.codelength);
    }
}
BENCHMARK(bm_snml_record_osg)->Arg(5)->Arg(0)->Unit(benchmark::kMicrosecond);

void bm_snml_record_sgns(benchmark::State& state) {
    auto params = init_params(40, 50, 15, 0.3, 8);
    PairRecord rec{3, 7, {1, 2, 4, 5, 6, 8, 9, 10, 11, 12, 13, 14, 15, 16, 17}};
    for (auto _ : state) {
        auto r = snml_record_sgns(params, rec, 20, 0.01);
        benchmark::DoNotOptimize(r.codelength);
    }
}
BENCHMARK(bm_snml_record_sgns)->Unit(benchmark::kMicrosecond);

void bm_pc_estimate(benchmark::State& state) {
    const int s_c = 50;
    auto params = init_params(4, s_c, 15, 0.3, 9);
    auto probs = predictive_dist_osg(params, 0);
    std::vector<double> q(s_c, 1.0 / s_c);
    Rng rng(10);
    for (auto _ : state) {
        double v = pc_estimate([&](int c) { return probs[c]; }, q, 5, false, rng);
        benchmark::DoNotOptimize(v);
    }
}
BENCHMARK(bm_pc_estimate)->Unit(benchmark::kNanosecond);

} // namespace

BENCHMARK_MAIN();
