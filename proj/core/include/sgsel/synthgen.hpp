#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "sgsel/common.hpp"
#include "sgsel/corpus.hpp"

namespace sgsel {

/// Four analogy slots a:b :: c:d as word indices.
struct AnalogyQuestion {
    int a = 0, b = 0, c = 0, d = 0;
};

/// Ground-truth categorical contextual distributions, one row per word,
/// constrained so that cosine(row a, row b) == cosine(row c, row d) for every
/// analogy question.
struct SyntheticTruth {
    int s_w = 0;
    int s_c = 0;
    std::uint64_t gen_seed = 0;
    std::vector<AnalogyQuestion> questions;
    std::vector<std::vector<double>> dist; // s_w rows of length s_c

    const std::vector<double>& row(int w) const { return dist[w]; }
};

double cosine(const std::vector<double>& x, const std::vector<double>& y);

/// Largest |cosine(a,b) - cosine(c,d)| over the questions.
double max_constraint_residual(const SyntheticTruth& truth);

/// Draws rows from a symmetric Dirichlet(1), then sweeps over the questions
/// rescaling row d toward the target cosine until every residual is below
/// 1e-6. Throws InfeasibleConstraint when the sweeps do not converge.
SyntheticTruth generate_truth(const std::vector<AnalogyQuestion>& questions,
                              int s_w, int s_c, std::uint64_t seed);

/// Samples n records: word uniform over words, context from the word's truth
/// row with i.i.d. Gaussian noise of std `noise_sigma` added to the logits.
PairStream sample_corpus(const SyntheticTruth& truth, std::int64_t n,
                         double noise_sigma, std::uint64_t seed);

void save_truth_json(const std::string& path, const SyntheticTruth& truth);
SyntheticTruth load_truth_json(const std::string& path);

/// Google analogy format: `: section` header lines are skipped, other lines
/// hold four whitespace-separated tokens.
std::vector<std::array<std::string, 4>> load_question_tokens(const std::string& path);

} // namespace sgsel
