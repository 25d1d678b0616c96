#pragma once

#include <array>
#include <string>
#include <vector>

#include "sgsel/common.hpp"
#include "sgsel/corpus.hpp"
#include "sgsel/sgmodel.hpp"
#include "sgsel/synthgen.hpp"

namespace sgsel {

struct SimilarityPair {
    std::string word_a;
    std::string word_b;
    double human_score = 0.0;
};

enum class OracleKind { DissimilarOSG, SimilarSGNS };

struct OracleScore {
    OracleKind kind = OracleKind::DissimilarOSG;
    double value = 0.0;
    std::vector<double> per_word;
    int degenerate_words = 0; // words whose rank correlation was undefined
};

/// Mean over words of KL(model predictive || truth row), nats. Zero-mass truth
/// cells raise unless `epsilon_smooth` is set (truth smoothed by 1e-12 and
/// renormalized).
OracleScore dissimilar_osg(const SkipGramParams& params, const SyntheticTruth& truth,
                           bool epsilon_smooth = false);

/// Mean over words of Spearman rho between the model's positive-occurrence
/// probabilities and the truth row. Words with a constant vector contribute 0
/// and are counted in `degenerate_words`.
OracleScore similar_sgns(const SkipGramParams& params, const SyntheticTruth& truth);

/// Tie-corrected Spearman rank correlation (Pearson on fractional ranks).
/// Throws ConstantInputError when either input is constant.
double spearman(const std::vector<double>& xs, const std::vector<double>& ys);

struct TaskScore {
    double score = 0.0;
    int attempted = 0;
    int skipped = 0;
};

/// 3CosAdd word-analogy accuracy over rows of E; questions with any
/// out-of-vocabulary token are skipped and counted.
TaskScore analogy_score(const SkipGramParams& params,
                        const std::vector<std::array<std::string, 4>>& questions,
                        const Vocabulary& vocab);

/// Spearman rho between embedding cosine similarity and human scores.
TaskScore similarity_task_score(const SkipGramParams& params,
                                const std::vector<SimilarityPair>& pairs,
                                const Vocabulary& vocab);

/// TSV `word_a<TAB>word_b<TAB>score`; lines starting with '#' are skipped.
std::vector<SimilarityPair> load_similarity_tsv(const std::string& path);

void save_task_score_json(const std::string& path, const std::string& task,
                          const TaskScore& score);

} // namespace sgsel
