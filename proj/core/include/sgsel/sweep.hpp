#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sgsel/criteria.hpp"
#include "sgsel/sgmodel.hpp"

namespace sgsel {

struct SweepConfig {
    std::vector<int> dims;
    ModelKind model_kind = ModelKind::oSG;
    TrainConfig train;
    double holdout_fraction = 0.05;
    std::int64_t snml_records = 6000; // s
    int sampler_m = 0;                // 0 -> ceil(S_C/10)
    bool snml_exhaustive = false;
    int warm_steps = 20;
    double warm_lr = 0.0; // 0 -> training alpha / 10
    int s_z = 15;         // negatives attached for SGNS sweeps
    double neg_power = 0.75;
    std::uint64_t seed = 0;
    int jobs = 1;
    bool run_aic = true, run_bic = true, run_cv = true, run_snml = true;
};

struct DimSweepResult {
    int dim = 0;
    bool failed = false;
    std::string error;
    SkipGramParams params;          // trained on the full train split
    std::vector<double> epoch_nll;
    double train_log_lik = 0.0;     // total nats over the train split
    std::int64_t n_train = 0;
    double aic_value = 0.0;
    double bic_value = 0.0;
    double cv_value = 0.0;
    CodelengthLedger ledger;        // SNML tail ledger
};

struct SweepResult {
    std::vector<DimSweepResult> dims;
    std::int64_t n_train = 0;
    bool any_failed = false;
};

/// Trains every candidate dimensionality on the stream (minus holdout) and
/// computes the enabled criteria. For SNML a second model is trained on the
/// prefix preceding the scored tail. SGNS streams get negatives attached here
/// when records lack them.
SweepResult run_sweep(const PairStream& stream, int s_w, int s_c, const SweepConfig& config);

CriterionReport report_from_sweep(const SweepResult& sweep, Criterion criterion);

/// Fig.-1-style cumulative codelength difference rows between two ledgers.
void save_comparison_curve_csv(const std::string& path, const CodelengthLedger& a,
                               const CodelengthLedger& b);

} // namespace sgsel
