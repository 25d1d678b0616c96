#include "sgsel/sgmodel.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>

namespace sgsel {

double log_sigmoid(double x) {
    // -log(1 + exp(-x)) without overflow on either tail
    return x >= 0 ? -std::log1p(std::exp(-x)) : x - std::log1p(std::exp(x));
}

TrainConfig default_train_config(ModelKind kind) {
    TrainConfig c;
    c.model_kind = kind;
    if (kind == ModelKind::oSG) {
        c.learning_rate = 1.0;
        c.momentum = 0.9;
        c.batch_size = 1000;
    } else {
        c.learning_rate = 0.1;
        c.momentum = 0.0;
        c.batch_size = 1;
        c.s_z = 15;
    }
    return c;
}

SkipGramParams init_params(int s_w, int s_c, int d, double init_scale, std::uint64_t seed) {
    if (d < 1) throw std::invalid_argument("init_params: d must be >= 1");
    SkipGramParams p;
    p.s_w = s_w;
    p.s_c = s_c;
    p.d = d;
    p.E.resize(static_cast<std::size_t>(s_w) * d);
    p.F.resize(static_cast<std::size_t>(d) * s_c);
    Rng rng(seed);
    const double half = init_scale / d;
    std::uniform_real_distribution<double> unif(-half, half);
    for (auto& x : p.E) x = unif(rng);
    for (auto& x : p.F) x = unif(rng);
    return p;
}

namespace {

// logits[c] = w^T E F c for all c
void fill_logits(const SkipGramParams& p, int w, std::vector<double>& logits) {
    logits.assign(p.s_c, 0.0);
    const double* e = p.e_row(w);
    for (int k = 0; k < p.d; ++k) {
        const double ek = e[k];
        if (ek == 0.0) continue;
        const double* frow = p.F.data() + static_cast<std::size_t>(k) * p.s_c;
        for (int c = 0; c < p.s_c; ++c) logits[c] += ek * frow[c];
    }
}

double log_sum_exp(const std::vector<double>& xs) {
    double mx = *std::max_element(xs.begin(), xs.end());
    double s = 0.0;
    for (double x : xs) s += std::exp(x - mx);
    return mx + std::log(s);
}

// Adds the gradient contribution of one record (scaled by `weight`) and
// returns its negative log-likelihood.
double osg_accumulate(const SkipGramParams& p, int w, int c_obs, double weight,
                      std::vector<double>& grad_e, std::vector<double>& grad_f,
                      std::vector<double>& logits, std::vector<double>& probs) {
    fill_logits(p, w, logits);
    double lse = log_sum_exp(logits);
    probs.resize(p.s_c);
    for (int c = 0; c < p.s_c; ++c) probs[c] = std::exp(logits[c] - lse);
    probs[c_obs] -= 1.0; // dL/dlogit = softmax - onehot

    const double* e = p.e_row(w);
    double* ge = grad_e.data() + static_cast<std::size_t>(w) * p.d;
    for (int k = 0; k < p.d; ++k) {
        const double* frow = p.F.data() + static_cast<std::size_t>(k) * p.s_c;
        double* gfrow = grad_f.data() + static_cast<std::size_t>(k) * p.s_c;
        double acc = 0.0;
        const double ew = weight * e[k];
        for (int c = 0; c < p.s_c; ++c) {
            acc += frow[c] * probs[c];
            gfrow[c] += ew * probs[c];
        }
        ge[k] += weight * acc;
    }
    return lse - logits[c_obs];
}

} // namespace

double osg_log_prob(const SkipGramParams& params, int w, int c) {
    std::vector<double> logits;
    fill_logits(params, w, logits);
    return logits[c] - log_sum_exp(logits);
}

double sgns_log_prob(const SkipGramParams& params, const PairRecord& rec) {
    double lp = log_sigmoid(params.score(rec.word, rec.context));
    for (int z : rec.negatives) lp += log_sigmoid(-params.score(rec.word, z));
    return lp;
}

void osg_grad(const SkipGramParams& params, const std::vector<PairRecord>& batch,
              std::vector<double>& grad_e, std::vector<double>& grad_f) {
    if (batch.empty()) throw std::invalid_argument("osg_grad: empty batch");
    grad_e.assign(params.E.size(), 0.0);
    grad_f.assign(params.F.size(), 0.0);
    std::vector<double> logits, probs;
    const double weight = 1.0 / static_cast<double>(batch.size());
    for (const auto& rec : batch)
        osg_accumulate(params, rec.word, rec.context, weight, grad_e, grad_f, logits, probs);
}

void sgns_grad(const SkipGramParams& params, const PairRecord& rec,
               std::vector<double>& grad_e, std::vector<double>& grad_f) {
    grad_e.assign(params.E.size(), 0.0);
    grad_f.assign(params.F.size(), 0.0);
    const int d = params.d;
    const double* e = params.e_row(rec.word);
    double* ge = grad_e.data() + static_cast<std::size_t>(rec.word) * d;

    auto touch = [&](int c, double sign) {
        // dL/dscore = sigma(s) - y, with y = 1 for the positive slot, 0 for negatives
        double g = 1.0 / (1.0 + std::exp(-params.score(rec.word, c))) - (sign > 0 ? 1.0 : 0.0);
        for (int k = 0; k < d; ++k) {
            ge[k] += g * params.f_at(k, c);
            grad_f[static_cast<std::size_t>(k) * params.s_c + c] += g * e[k];
        }
    };
    touch(rec.context, +1.0);
    for (int z : rec.negatives) touch(z, -1.0);
}

TrainResult train(const PairStream& stream, int s_w, int s_c, int d,
                  const TrainConfig& config) {
    for (const auto& r : stream.records) {
        if (r.word < 0 || r.word >= s_w || r.context < 0 || r.context >= s_c)
            throw std::invalid_argument("train: record index out of range");
    }
    if (config.model_kind == ModelKind::SGNS && config.momentum != 0.0)
        throw std::invalid_argument("train: SGNS uses plain SGD (momentum must be 0)");

    TrainResult result;
    result.params = init_params(s_w, s_c, d, config.init_scale, config.seed);
    SkipGramParams& p = result.params;
    const std::size_t n = stream.size();
    if (n == 0) return result;

    const double alpha = config.learning_rate;

    if (config.model_kind == ModelKind::oSG) {
        std::vector<double> vel_e(p.E.size(), 0.0), vel_f(p.F.size(), 0.0);
        std::vector<double> grad_e(p.E.size()), grad_f(p.F.size());
        std::vector<double> logits, probs;
        const std::size_t bs = static_cast<std::size_t>(config.batch_size);

        for (int epoch = 0; epoch < config.epochs; ++epoch) {
            double epoch_loss = 0.0;
            std::size_t batch_index = 0;
            for (std::size_t start = 0; start < n; start += bs, ++batch_index) {
                std::size_t end = std::min(start + bs, n);
                std::fill(grad_e.begin(), grad_e.end(), 0.0);
                std::fill(grad_f.begin(), grad_f.end(), 0.0);
                const double weight = 1.0 / static_cast<double>(end - start);
                double batch_loss = 0.0;
                for (std::size_t i = start; i < end; ++i) {
                    const auto& rec = stream.records[i];
                    batch_loss += osg_accumulate(p, rec.word, rec.context, weight,
                                                 grad_e, grad_f, logits, probs);
                }
                if (!std::isfinite(batch_loss))
                    throw std::runtime_error("train: non-finite loss at epoch " +
                                             std::to_string(epoch) + ", batch " +
                                             std::to_string(batch_index));
                epoch_loss += batch_loss;
                // classical momentum: v <- mu v - alpha g; theta <- theta + v
                for (std::size_t i = 0; i < p.E.size(); ++i) {
                    vel_e[i] = config.momentum * vel_e[i] - alpha * grad_e[i];
                    p.E[i] += vel_e[i];
                }
                for (std::size_t i = 0; i < p.F.size(); ++i) {
                    vel_f[i] = config.momentum * vel_f[i] - alpha * grad_f[i];
                    p.F[i] += vel_f[i];
                }
            }
            result.epoch_nll.push_back(epoch_loss / static_cast<double>(n));
            if (config.min_rel_improvement > 0 && result.epoch_nll.size() >= 2) {
                double prev = result.epoch_nll[result.epoch_nll.size() - 2];
                double cur = result.epoch_nll.back();
                if (prev - cur < config.min_rel_improvement * std::abs(prev)) break;
            }
        }
    } else {
        const int d_ = p.d;
        std::vector<double> ge(d_), scratch;
        for (int epoch = 0; epoch < config.epochs; ++epoch) {
            double epoch_loss = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                const auto& rec = stream.records[i];
                if (static_cast<int>(rec.negatives.size()) < 1)
                    throw std::invalid_argument("train: SGNS record without negatives at index " +
                                                std::to_string(i));
                double* e = p.e_row(rec.word);
                std::fill(ge.begin(), ge.end(), 0.0);
                double loss = 0.0;
                auto touch = [&](int c, double sign) {
                    double s = p.score(rec.word, c);
                    loss -= log_sigmoid(sign * s);
                    double g = 1.0 / (1.0 + std::exp(-s)) - (sign > 0 ? 1.0 : 0.0);
                    for (int k = 0; k < d_; ++k) {
                        ge[k] += g * p.f_at(k, c);
                        p.f_at(k, c) -= alpha * g * e[k];
                    }
                };
                touch(rec.context, +1.0);
                for (int z : rec.negatives) touch(z, -1.0);
                for (int k = 0; k < d_; ++k) e[k] -= alpha * ge[k];
                if (!std::isfinite(loss))
                    throw std::runtime_error("train: non-finite loss at epoch " +
                                             std::to_string(epoch) + ", record " +
                                             std::to_string(i));
                epoch_loss += loss;
            }
            result.epoch_nll.push_back(epoch_loss / static_cast<double>(n));
            if (config.min_rel_improvement > 0 && result.epoch_nll.size() >= 2) {
                double prev = result.epoch_nll[result.epoch_nll.size() - 2];
                double cur = result.epoch_nll.back();
                if (prev - cur < config.min_rel_improvement * std::abs(prev)) break;
            }
        }
    }
    return result;
}

std::vector<double> predictive_dist_osg(const SkipGramParams& params, int w) {
    std::vector<double> logits;
    fill_logits(params, w, logits);
    double lse = log_sum_exp(logits);
    for (auto& x : logits) x = std::exp(x - lse);
    return logits;
}

std::vector<double> sgns_positive_probs(const SkipGramParams& params, int w) {
    std::vector<double> logits;
    fill_logits(params, w, logits);
    for (auto& x : logits) x = std::exp(log_sigmoid(x));
    return logits;
}

void save_params(const std::string& path, const SkipGramParams& params, ModelKind kind) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for write: " + path);
    const char magic[4] = {'S', 'G', 'P', '1'};
    out.write(magic, 4);
    std::uint32_t hdr[4] = {static_cast<std::uint32_t>(params.s_w),
                            static_cast<std::uint32_t>(params.s_c),
                            static_cast<std::uint32_t>(params.d),
                            static_cast<std::uint32_t>(kind)};
    out.write(reinterpret_cast<const char*>(hdr), sizeof hdr);
    out.write(reinterpret_cast<const char*>(params.E.data()),
              static_cast<std::streamsize>(params.E.size() * sizeof(double)));
    out.write(reinterpret_cast<const char*>(params.F.data()),
              static_cast<std::streamsize>(params.F.size() * sizeof(double)));
    if (!out) throw std::runtime_error("write failed: " + path);
}

std::pair<SkipGramParams, ModelKind> load_params(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open: " + path);
    char magic[4];
    in.read(magic, 4);
    if (!in || std::memcmp(magic, "SGP1", 4) != 0)
        throw std::runtime_error("not a params file (bad magic): " + path);
    std::uint32_t hdr[4];
    in.read(reinterpret_cast<char*>(hdr), sizeof hdr);
    SkipGramParams p;
    p.s_w = static_cast<int>(hdr[0]);
    p.s_c = static_cast<int>(hdr[1]);
    p.d = static_cast<int>(hdr[2]);
    p.E.resize(static_cast<std::size_t>(p.s_w) * p.d);
    p.F.resize(static_cast<std::size_t>(p.d) * p.s_c);
    in.read(reinterpret_cast<char*>(p.E.data()),
            static_cast<std::streamsize>(p.E.size() * sizeof(double)));
    in.read(reinterpret_cast<char*>(p.F.data()),
            static_cast<std::streamsize>(p.F.size() * sizeof(double)));
    if (!in) throw std::runtime_error("truncated params file: " + path);
    return {std::move(p), static_cast<ModelKind>(hdr[3])};
}

void save_loss_trace_csv(const std::string& path, const std::vector<double>& epoch_nll) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for write: " + path);
    out << "epoch,mean_nll\n";
    out.precision(17);
    for (std::size_t i = 0; i < epoch_nll.size(); ++i)
        out << i << ',' << epoch_nll[i] << '\n';
}

} // namespace sgsel
