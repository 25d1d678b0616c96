#include "sgsel/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "json.hpp"

namespace sgsel {

namespace {

std::vector<double> fractional_ranks(const std::vector<double>& xs) {
    const std::size_t n = xs.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return xs[a] < xs[b]; });
    std::vector<double> ranks(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && xs[order[j + 1]] == xs[order[i]]) ++j;
        double avg = 0.5 * (static_cast<double>(i) + static_cast<double>(j)) + 1.0;
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = avg;
        i = j + 1;
    }
    return ranks;
}

double pearson(const std::vector<double>& xs, const std::vector<double>& ys) {
    const double n = static_cast<double>(xs.size());
    double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
    double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        double dx = xs[i] - mx, dy = ys[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0) throw ConstantInputError("pearson: constant input");
    return sxy / std::sqrt(sxx * syy);
}

double cosine_rows(const double* a, const double* b, int d) {
    double ab = 0.0, aa = 0.0, bb = 0.0;
    for (int k = 0; k < d; ++k) {
        ab += a[k] * b[k];
        aa += a[k] * a[k];
        bb += b[k] * b[k];
    }
    if (aa == 0.0 || bb == 0.0) return 0.0;
    return ab / std::sqrt(aa * bb);
}

} // namespace

double spearman(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() != ys.size()) throw std::invalid_argument("spearman: length mismatch");
    if (xs.size() < 3) throw std::invalid_argument("spearman: need at least 3 points");
    return pearson(fractional_ranks(xs), fractional_ranks(ys));
}

OracleScore dissimilar_osg(const SkipGramParams& params, const SyntheticTruth& truth,
                           bool epsilon_smooth) {
    if (params.s_w != truth.s_w || params.s_c != truth.s_c)
        throw std::invalid_argument("dissimilar_osg: shape mismatch with truth");
    OracleScore out;
    out.kind = OracleKind::DissimilarOSG;
    out.per_word.reserve(params.s_w);
    for (int w = 0; w < params.s_w; ++w) {
        auto p = predictive_dist_osg(params, w);
        std::vector<double> q = truth.dist[w];
        if (epsilon_smooth) {
            double z = 0.0;
            for (auto& x : q) {
                x += 1e-12;
                z += x;
            }
            for (auto& x : q) x /= z;
        }
        double kl = 0.0;
        for (int c = 0; c < params.s_c; ++c) {
            if (p[c] == 0.0) continue;
            if (q[c] <= 0.0)
                throw std::runtime_error("dissimilar_osg: truth mass zero at (w=" +
                                         std::to_string(w) + ", c=" + std::to_string(c) +
                                         ") where model mass is positive");
            kl += p[c] * std::log(p[c] / q[c]);
        }
        out.per_word.push_back(kl);
    }
    out.value = std::accumulate(out.per_word.begin(), out.per_word.end(), 0.0) /
                static_cast<double>(params.s_w);
    return out;
}

OracleScore similar_sgns(const SkipGramParams& params, const SyntheticTruth& truth) {
    if (params.s_w != truth.s_w || params.s_c != truth.s_c)
        throw std::invalid_argument("similar_sgns: shape mismatch with truth");
    if (params.s_c < 3) throw std::invalid_argument("similar_sgns: S_C must be >= 3");
    OracleScore out;
    out.kind = OracleKind::SimilarSGNS;
    out.per_word.reserve(params.s_w);
    for (int w = 0; w < params.s_w; ++w) {
        auto probs = sgns_positive_probs(params, w);
        try {
            out.per_word.push_back(spearman(probs, truth.dist[w]));
        } catch (const ConstantInputError&) {
            out.per_word.push_back(0.0);
            ++out.degenerate_words;
        }
    }
    out.value = std::accumulate(out.per_word.begin(), out.per_word.end(), 0.0) /
                static_cast<double>(params.s_w);
    return out;
}

TaskScore analogy_score(const SkipGramParams& params,
                        const std::vector<std::array<std::string, 4>>& questions,
                        const Vocabulary& vocab) {
    if (questions.empty()) throw std::invalid_argument("analogy_score: no questions");
    TaskScore out;
    int correct = 0;
    const int d = params.d;
    std::vector<double> target(d);
    for (const auto& q : questions) {
        int ia = vocab.index(q[0]), ib = vocab.index(q[1]);
        int ic = vocab.index(q[2]), id = vocab.index(q[3]);
        if (ia < 0 || ib < 0 || ic < 0 || id < 0) {
            ++out.skipped;
            continue;
        }
        const double* ea = params.e_row(ia);
        const double* eb = params.e_row(ib);
        const double* ec = params.e_row(ic);
        for (int k = 0; k < d; ++k) target[k] = eb[k] - ea[k] + ec[k];
        int best = -1;
        double best_cos = -2.0;
        for (int w = 0; w < params.s_w; ++w) {
            if (w == ia || w == ib || w == ic) continue;
            double cs = cosine_rows(target.data(), params.e_row(w), d);
            if (cs > best_cos) {
                best_cos = cs;
                best = w;
            }
        }
        ++out.attempted;
        if (best == id) ++correct;
    }
    if (out.attempted == 0)
        throw std::runtime_error("analogy_score: every question had out-of-vocabulary tokens");
    out.score = static_cast<double>(correct) / static_cast<double>(out.attempted);
    return out;
}

TaskScore similarity_task_score(const SkipGramParams& params,
                                const std::vector<SimilarityPair>& pairs,
                                const Vocabulary& vocab) {
    TaskScore out;
    std::vector<double> cosines, human;
    for (const auto& p : pairs) {
        int ia = vocab.index(p.word_a), ib = vocab.index(p.word_b);
        if (ia < 0 || ib < 0) {
            ++out.skipped;
            continue;
        }
        cosines.push_back(cosine_rows(params.e_row(ia), params.e_row(ib), params.d));
        human.push_back(p.human_score);
        ++out.attempted;
    }
    if (out.attempted < 3)
        throw std::runtime_error("similarity_task_score: fewer than 3 in-vocabulary pairs");
    out.score = spearman(cosines, human);
    return out;
}

std::vector<SimilarityPair> load_similarity_tsv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open: " + path);
    std::vector<SimilarityPair> pairs;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        SimilarityPair p;
        if (!(ls >> p.word_a >> p.word_b >> p.human_score))
            throw std::runtime_error("malformed similarity line: " + line);
        pairs.push_back(std::move(p));
    }
    return pairs;
}

void save_task_score_json(const std::string& path, const std::string& task,
                          const TaskScore& score) {
    nlohmann::json j;
    j["task"] = task;
    j["score"] = score.score;
    j["attempted"] = score.attempted;
    j["skipped"] = score.skipped;
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for write: " + path);
    out << j.dump(2) << '\n';
}

} // namespace sgsel
