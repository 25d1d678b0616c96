#include "sgsel/synthgen.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace sgsel {

namespace {

constexpr double kResidualTol = 1e-6;
constexpr int kMaxSweeps = 1000;

std::vector<double> dirichlet_row(int s_c, Rng& rng) {
    // symmetric Dirichlet(1) via normalized Gamma(1) = Exp(1) draws
    std::exponential_distribution<double> expo(1.0);
    std::vector<double> row(s_c);
    double sum = 0.0;
    for (auto& x : row) {
        x = expo(rng);
        sum += x;
    }
    for (auto& x : row) x /= sum;
    return row;
}

// cosine(fixed, (1-lambda)*movable + lambda*target) as a function of lambda
double mixed_cosine(const std::vector<double>& fixed, const std::vector<double>& movable,
                    const std::vector<double>& target, double lambda) {
    std::vector<double> mix(movable.size());
    for (std::size_t i = 0; i < mix.size(); ++i)
        mix[i] = (1.0 - lambda) * movable[i] + lambda * target[i];
    return cosine(fixed, mix);
}

// Moves row d along the segment toward `target` (a point on the simplex)
// until cosine(row_c, row_d) hits `want`. Monotone in lambda, so bisection.
bool adjust_toward(std::vector<double>& row_d, const std::vector<double>& row_c,
                   const std::vector<double>& target, double want) {
    double lo = 0.0, hi = 1.0;
    double clo = mixed_cosine(row_c, row_d, target, lo);
    double chi = mixed_cosine(row_c, row_d, target, hi);
    if ((want - clo) * (want - chi) > 0) return false; // not bracketed
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        double cm = mixed_cosine(row_c, row_d, target, mid);
        if ((cm - want) * (clo - want) <= 0) {
            hi = mid;
        } else {
            lo = mid;
            clo = cm;
        }
    }
    double lambda = 0.5 * (lo + hi);
    for (std::size_t i = 0; i < row_d.size(); ++i)
        row_d[i] = (1.0 - lambda) * row_d[i] + lambda * target[i];
    return true;
}

} // namespace

double cosine(const std::vector<double>& x, const std::vector<double>& y) {
    double xy = 0.0, xx = 0.0, yy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        xy += x[i] * y[i];
        xx += x[i] * x[i];
        yy += y[i] * y[i];
    }
    return xy / std::sqrt(xx * yy);
}

double max_constraint_residual(const SyntheticTruth& truth) {
    double worst = 0.0;
    for (const auto& q : truth.questions) {
        double r = std::abs(cosine(truth.dist[q.a], truth.dist[q.b]) -
                            cosine(truth.dist[q.c], truth.dist[q.d]));
        worst = std::max(worst, r);
    }
    return worst;
}

SyntheticTruth generate_truth(const std::vector<AnalogyQuestion>& questions,
                              int s_w, int s_c, std::uint64_t seed) {
    if (s_c < 2) throw std::invalid_argument("generate_truth: S_C must be >= 2");
    for (const auto& q : questions) {
        int ids[4] = {q.a, q.b, q.c, q.d};
        for (int v : ids)
            if (v < 0 || v >= s_w)
                throw std::invalid_argument("generate_truth: question index out of range");
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j)
                if (ids[i] == ids[j])
                    throw std::invalid_argument("generate_truth: question indices not distinct");
    }

    SyntheticTruth truth;
    truth.s_w = s_w;
    truth.s_c = s_c;
    truth.gen_seed = seed;
    truth.questions = questions;

    Rng rng(seed);
    truth.dist.reserve(s_w);
    for (int w = 0; w < s_w; ++w) truth.dist.push_back(dirichlet_row(s_c, rng));

    if (questions.empty()) return truth;

    // To lower a cosine we mix toward the vertex where row_c is smallest.
    auto anti_target = [&](const std::vector<double>& row_c) {
        std::vector<double> t(s_c, 0.0);
        int j = static_cast<int>(std::min_element(row_c.begin(), row_c.end()) - row_c.begin());
        t[j] = 1.0;
        return t;
    };

    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        for (const auto& q : questions) {
            auto& row_c = truth.dist[q.c];
            auto& row_d = truth.dist[q.d];
            double want = cosine(truth.dist[q.a], truth.dist[q.b]);
            double have = cosine(row_c, row_d);
            if (std::abs(have - want) <= kResidualTol * 0.1) continue;
            bool ok = want > have ? adjust_toward(row_d, row_c, row_c, want)
                                  : adjust_toward(row_d, row_c, anti_target(row_c), want);
            if (!ok)
                throw InfeasibleConstraint(
                    "generate_truth: cannot reach target cosine for question (" +
                    std::to_string(q.a) + "," + std::to_string(q.b) + "," +
                    std::to_string(q.c) + "," + std::to_string(q.d) + ")");
        }
        if (max_constraint_residual(truth) <= kResidualTol) return truth;
    }
    throw InfeasibleConstraint("generate_truth: projection did not converge within " +
                               std::to_string(kMaxSweeps) + " sweeps; residual " +
                               std::to_string(max_constraint_residual(truth)));
}

PairStream sample_corpus(const SyntheticTruth& truth, std::int64_t n,
                         double noise_sigma, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("sample_corpus: n must be >= 1");
    if (noise_sigma < 0) throw std::invalid_argument("sample_corpus: noise_sigma must be >= 0");

    Rng rng(seed);
    std::uniform_int_distribution<int> word_pick(0, truth.s_w - 1);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::normal_distribution<double> gauss(0.0, noise_sigma > 0 ? noise_sigma : 1.0);

    // noiseless case: per-word CDFs computed once
    std::vector<std::vector<double>> cdf;
    if (noise_sigma == 0.0) {
        cdf.resize(truth.s_w);
        for (int w = 0; w < truth.s_w; ++w) {
            cdf[w].resize(truth.s_c);
            double acc = 0.0;
            for (int c = 0; c < truth.s_c; ++c) {
                acc += truth.dist[w][c];
                cdf[w][c] = acc;
            }
            cdf[w].back() = 1.0;
        }
    }

    PairStream stream;
    stream.order_seed = seed;
    stream.records.reserve(static_cast<std::size_t>(n));
    std::vector<double> logits(truth.s_c);
    for (std::int64_t i = 0; i < n; ++i) {
        int w = word_pick(rng);
        int c;
        if (noise_sigma == 0.0) {
            double u = unif(rng);
            c = static_cast<int>(std::lower_bound(cdf[w].begin(), cdf[w].end(), u) -
                                 cdf[w].begin());
        } else {
            double mx = -1e300;
            for (int j = 0; j < truth.s_c; ++j) {
                double p = std::max(truth.dist[w][j], 1e-300);
                logits[j] = std::log(p) + gauss(rng);
                mx = std::max(mx, logits[j]);
            }
            double z = 0.0;
            for (int j = 0; j < truth.s_c; ++j) {
                logits[j] = std::exp(logits[j] - mx);
                z += logits[j];
            }
            double u = unif(rng) * z;
            double acc = 0.0;
            c = truth.s_c - 1;
            for (int j = 0; j < truth.s_c; ++j) {
                acc += logits[j];
                if (u <= acc) {
                    c = j;
                    break;
                }
            }
        }
        stream.records.push_back({w, c, {}});
    }
    return stream;
}

void save_truth_json(const std::string& path, const SyntheticTruth& truth) {
    nlohmann::json j;
    j["s_w"] = truth.s_w;
    j["s_c"] = truth.s_c;
    j["seed"] = truth.gen_seed;
    auto& jq = j["questions"] = nlohmann::json::array();
    for (const auto& q : truth.questions) jq.push_back({q.a, q.b, q.c, q.d});
    auto& jd = j["dist"] = nlohmann::json::array();
    for (const auto& row : truth.dist) jd.push_back(row);
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for write: " + path);
    out << j.dump() << '\n';
}

SyntheticTruth load_truth_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open: " + path);
    nlohmann::json j;
    in >> j;
    SyntheticTruth truth;
    truth.s_w = j.at("s_w").get<int>();
    truth.s_c = j.at("s_c").get<int>();
    truth.gen_seed = j.at("seed").get<std::uint64_t>();
    for (const auto& q : j.at("questions"))
        truth.questions.push_back({q.at(0).get<int>(), q.at(1).get<int>(),
                                   q.at(2).get<int>(), q.at(3).get<int>()});
    for (const auto& row : j.at("dist"))
        truth.dist.push_back(row.get<std::vector<double>>());
    if (static_cast<int>(truth.dist.size()) != truth.s_w)
        throw std::runtime_error("truth file row count mismatch: " + path);
    return truth;
}

std::vector<std::array<std::string, 4>> load_question_tokens(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open: " + path);
    std::vector<std::array<std::string, 4>> out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == ':') continue;
        std::istringstream ls(line);
        std::array<std::string, 4> q;
        if (!(ls >> q[0] >> q[1] >> q[2] >> q[3]))
            throw std::runtime_error("malformed analogy line: " + line);
        out.push_back(std::move(q));
    }
    return out;
}

} // namespace sgsel
