#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sgsel/common.hpp"
#include "sgsel/corpus.hpp"

namespace sgsel {

/// Embedding matrices E (S_W x d, row-major) and F (d x S_C, row-major).
struct SkipGramParams {
    int s_w = 0;
    int s_c = 0;
    int d = 0;
    std::vector<double> E; // s_w * d
    std::vector<double> F; // d * s_c

    double* e_row(int w) { return E.data() + static_cast<std::size_t>(w) * d; }
    const double* e_row(int w) const { return E.data() + static_cast<std::size_t>(w) * d; }

    double f_at(int k, int c) const { return F[static_cast<std::size_t>(k) * s_c + c]; }
    double& f_at(int k, int c) { return F[static_cast<std::size_t>(k) * s_c + c]; }

    // w^T E F c
    double score(int w, int c) const {
        const double* e = e_row(w);
        double s = 0.0;
        for (int k = 0; k < d; ++k) s += e[k] * F[static_cast<std::size_t>(k) * s_c + c];
        return s;
    }
};

struct TrainConfig {
    ModelKind model_kind = ModelKind::oSG;
    double learning_rate = 1.0;
    double momentum = 0.9;
    int batch_size = 1000;
    int epochs = 10;
    int s_z = 15;
    double init_scale = 0.5;
    std::uint64_t seed = 0;
    // stop once relative epoch-loss improvement falls below this (0 disables)
    double min_rel_improvement = 0.0;
};

TrainConfig default_train_config(ModelKind kind);

struct TrainResult {
    SkipGramParams params;
    std::vector<double> epoch_nll; // mean nats/record per epoch
};

SkipGramParams init_params(int s_w, int s_c, int d, double init_scale, std::uint64_t seed);

double osg_log_prob(const SkipGramParams& params, int w, int c);
double sgns_log_prob(const SkipGramParams& params, const PairRecord& rec);

/// Gradient of the mean negative log-likelihood over a batch. `grad_e` has the
/// shape of E (rows of words absent from the batch stay zero), `grad_f` the
/// shape of F.
void osg_grad(const SkipGramParams& params, const std::vector<PairRecord>& batch,
              std::vector<double>& grad_e, std::vector<double>& grad_f);

/// Single-record SGNS gradient of -log P(x | w,c,z). Accumulates into the
/// given buffers (same shapes as E and F).
void sgns_grad(const SkipGramParams& params, const PairRecord& rec,
               std::vector<double>& grad_e, std::vector<double>& grad_f);

TrainResult train(const PairStream& stream, int s_w, int s_c, int d,
                  const TrainConfig& config);

std::vector<double> predictive_dist_osg(const SkipGramParams& params, int w);
std::vector<double> sgns_positive_probs(const SkipGramParams& params, int w);

double log_sigmoid(double x);

void save_params(const std::string& path, const SkipGramParams& params, ModelKind kind);
std::pair<SkipGramParams, ModelKind> load_params(const std::string& path);

void save_loss_trace_csv(const std::string& path, const std::vector<double>& epoch_nll);

} // namespace sgsel
