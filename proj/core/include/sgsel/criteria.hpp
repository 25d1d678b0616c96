#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "sgsel/common.hpp"
#include "sgsel/corpus.hpp"
#include "sgsel/sgmodel.hpp"

namespace sgsel {

double aic(double log_lik, int d, int s_w, int s_c);
double bic(double log_lik, std::int64_t n, int d, int s_w, int s_c);

/// Mean negative log-likelihood per record over the holdout stream.
double cv_loss(const SkipGramParams& params, const PairStream& holdout, ModelKind kind);

/// Copy of `params_prev` advanced by `steps` plain gradient steps on the
/// single record `rec`. The input is left unmodified.
SkipGramParams warm_start(const SkipGramParams& params_prev, const PairRecord& rec,
                          int steps, double lr, ModelKind kind);

struct ISConfig {
    int m = 0;               // sample count
    bool exhaustive = false; // force exact enumeration regardless of m

    bool exact_for(int s_c) const { return exhaustive || m >= s_c; }
};

/// Importance-sampling estimate of sum_c f(c): draws m contexts from Q and
/// averages f/Q. With `exhaustive` set, evaluates every context once in
/// ascending order and returns the exact sum.
double pc_estimate(const std::function<double(int)>& f, const std::vector<double>& proposal,
                   int m, bool exhaustive, Rng& rng);

struct SnmlRecord {
    double codelength = 0.0; // numerator + log_denominator, nats
    double numerator = 0.0;
    double log_denominator = 0.0;
};

SnmlRecord snml_record_osg(const SkipGramParams& params_prev, int w, int c_obs,
                           const ISConfig& sampler, int steps, double lr, Rng& rng);

/// SGNS per-record codelength over the one-hot label outcomes. `outcome_slots`
/// is the number of candidate positive positions enumerated: S_z+1 covers the
/// observed positive slot plus every negative slot.
SnmlRecord snml_record_sgns(const SkipGramParams& params_prev, const PairRecord& rec,
                            int steps, double lr, int outcome_slots = -1);

struct CodelengthLedger {
    int dim = 0;
    std::vector<double> per_record;
    std::vector<double> cumulative;
    std::int64_t records_used = 0;
    int sampler_size = 0;
    std::uint64_t seed = 0;

    double total() const { return cumulative.empty() ? 0.0 : cumulative.back(); }
};

/// Sequentially scores the last `s` records of the stream, advancing the
/// running parameters by a warm start on each observed record.
CodelengthLedger snml_tail(const PairStream& stream, SkipGramParams params_at_tail,
                           std::int64_t s, const ISConfig& sampler, ModelKind kind,
                           int steps, double lr, std::uint64_t seed);

enum class Criterion { AIC, BIC, CV, SNML };

std::string to_string(Criterion c);

struct CriterionReport {
    Criterion criterion = Criterion::SNML;
    std::map<int, double> values; // dim -> criterion value
    int chosen_dim = 0;
    std::int64_t n = 0;
    std::int64_t s = 0;
    int m = 0;
    std::vector<std::uint64_t> seeds;
};

/// Argmin over the candidate values; ties break toward the smaller dim.
CriterionReport select_dimension(Criterion criterion, const std::map<int, double>& values);

void save_ledger_csv(const std::string& path, const CodelengthLedger& ledger);
CodelengthLedger load_ledger_csv(const std::string& path);

void save_report_json(const std::string& path, const CriterionReport& report);
CriterionReport load_report_json(const std::string& path);

} // namespace sgsel
