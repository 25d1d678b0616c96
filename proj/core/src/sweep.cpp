#include "sgsel/sweep.hpp"

#include <atomic>
#include <cmath>
#include <fstream>
#include <thread>

#include "sgsel/synthgen.hpp"

namespace sgsel {

namespace {

double total_log_lik(const SkipGramParams& params, const PairStream& stream, ModelKind kind) {
    double total = 0.0;
    for (const auto& rec : stream.records)
        total += kind == ModelKind::oSG ? osg_log_prob(params, rec.word, rec.context)
                                        : sgns_log_prob(params, rec);
    return total;
}

void sweep_one_dim(const PairStream& train_stream, const PairStream& holdout, int s_w,
                   int s_c, const SweepConfig& cfg, DimSweepResult& out) {
    const int dim = out.dim;
    try {
        TrainConfig tc = cfg.train;
        tc.model_kind = cfg.model_kind;
        tc.seed = cfg.seed + static_cast<std::uint64_t>(dim) * 7919;

        TrainResult full = train(train_stream, s_w, s_c, dim, tc);
        out.params = std::move(full.params);
        out.epoch_nll = std::move(full.epoch_nll);
        out.n_train = static_cast<std::int64_t>(train_stream.size());

        if (cfg.run_aic || cfg.run_bic) {
            out.train_log_lik = total_log_lik(out.params, train_stream, cfg.model_kind);
            out.aic_value = aic(out.train_log_lik, dim, s_w, s_c);
            out.bic_value = bic(out.train_log_lik, out.n_train, dim, s_w, s_c);
        }
        if (cfg.run_cv) out.cv_value = cv_loss(out.params, holdout, cfg.model_kind);

        if (cfg.run_snml) {
            const auto n = static_cast<std::int64_t>(train_stream.size());
            const std::int64_t s = std::min(cfg.snml_records, n);
            PairStream prefix;
            prefix.order_seed = train_stream.order_seed;
            prefix.records.assign(train_stream.records.begin(),
                                  train_stream.records.end() - s);
            SkipGramParams at_tail;
            if (prefix.empty()) {
                at_tail = init_params(s_w, s_c, dim, tc.init_scale, tc.seed);
            } else {
                TrainResult pre = train(prefix, s_w, s_c, dim, tc);
                at_tail = std::move(pre.params);
            }
            ISConfig sampler;
            sampler.m = cfg.sampler_m > 0 ? cfg.sampler_m : (s_c + 9) / 10;
            sampler.exhaustive = cfg.snml_exhaustive;
            double warm_lr = cfg.warm_lr > 0 ? cfg.warm_lr : tc.learning_rate / 10.0;
            out.ledger = snml_tail(train_stream, std::move(at_tail), s, sampler,
                                   cfg.model_kind, cfg.warm_steps, warm_lr,
                                   cfg.seed ^ (static_cast<std::uint64_t>(dim) << 20));
        }
    } catch (const std::exception& e) {
        out.failed = true;
        out.error = e.what();
    }
}

} // namespace

SweepResult run_sweep(const PairStream& stream, int s_w, int s_c, const SweepConfig& config) {
    if (config.dims.size() < 2)
        throw std::invalid_argument("run_sweep: need at least 2 candidate dims");

    PairStream working = stream;
    if (config.model_kind == ModelKind::SGNS && !working.empty() &&
        working.records.front().negatives.empty()) {
        auto counts = context_counts(working, s_c);
        working = attach_negatives(working, counts, config.s_z, config.neg_power,
                                   config.seed + 0x5eed);
    }

    auto [train_stream, holdout] =
        split_holdout(working, config.holdout_fraction, config.seed + 1);

    SweepResult result;
    result.n_train = static_cast<std::int64_t>(train_stream.size());
    result.dims.resize(config.dims.size());
    for (std::size_t i = 0; i < config.dims.size(); ++i)
        result.dims[i].dim = config.dims[i];

    const int jobs = std::max(1, config.jobs);
    if (jobs == 1) {
        for (auto& dr : result.dims)
            sweep_one_dim(train_stream, holdout, s_w, s_c, config, dr);
    } else {
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            for (;;) {
                std::size_t i = next.fetch_add(1);
                if (i >= result.dims.size()) return;
                sweep_one_dim(train_stream, holdout, s_w, s_c, config, result.dims[i]);
            }
        };
        std::vector<std::thread> pool;
        for (int t = 0; t < std::min<int>(jobs, static_cast<int>(result.dims.size())); ++t)
            pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    for (const auto& dr : result.dims)
        if (dr.failed) result.any_failed = true;
    return result;
}

CriterionReport report_from_sweep(const SweepResult& sweep, Criterion criterion) {
    std::map<int, double> values;
    for (const auto& dr : sweep.dims) {
        if (dr.failed) continue;
        switch (criterion) {
            case Criterion::AIC: values[dr.dim] = dr.aic_value; break;
            case Criterion::BIC: values[dr.dim] = dr.bic_value; break;
            case Criterion::CV: values[dr.dim] = dr.cv_value; break;
            case Criterion::SNML: values[dr.dim] = dr.ledger.total(); break;
        }
    }
    CriterionReport report = select_dimension(criterion, values);
    report.n = sweep.n_train;
    if (criterion == Criterion::SNML && !sweep.dims.empty()) {
        report.s = sweep.dims.front().ledger.records_used;
        report.m = sweep.dims.front().ledger.sampler_size;
        for (const auto& dr : sweep.dims) report.seeds.push_back(dr.ledger.seed);
    }
    return report;
}

void save_comparison_curve_csv(const std::string& path, const CodelengthLedger& a,
                               const CodelengthLedger& b) {
    if (a.cumulative.size() != b.cumulative.size())
        throw std::invalid_argument("comparison curve: ledger length mismatch");
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for write: " + path);
    out.precision(17);
    out << "record_index,dimA,dimB,cumulative_diff_nats\n";
    for (std::size_t i = 0; i < a.cumulative.size(); ++i)
        out << i << ',' << a.dim << ',' << b.dim << ','
            << a.cumulative[i] - b.cumulative[i] << '\n';
}

} // namespace sgsel
