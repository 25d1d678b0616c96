#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "sgsel/common.hpp"

namespace sgsel {

/// Token <-> dense-index map with occurrence counts. Indices are assigned in
/// descending count order, ties broken lexicographically.
struct Vocabulary {
    std::vector<std::string> tokens;
    std::vector<std::int64_t> counts;
    std::unordered_map<std::string, int> index_of;
    std::int64_t total = 0;

    int size() const { return static_cast<int>(tokens.size()); }

    // -1 when absent
    int index(const std::string& tok) const {
        auto it = index_of.find(tok);
        return it == index_of.end() ? -1 : it->second;
    }
};

Vocabulary build_vocab(const std::vector<std::string>& tokens, std::int64_t min_count);

void save_vocab_tsv(const std::string& path, const Vocabulary& v);
Vocabulary load_vocab_tsv(const std::string& path);

/// One training record. `negatives` is empty for oSG records and has exactly
/// S_z entries for SGNS records.
struct PairRecord {
    int word = 0;
    int context = 0;
    std::vector<int> negatives;
};

/// Ordered sequence of records; `order_seed` is the seed of the shuffle that
/// produced the order, so sequential codelength runs are reproducible.
struct PairStream {
    std::vector<PairRecord> records;
    std::uint64_t order_seed = 0;

    std::size_t size() const { return records.size(); }
    bool empty() const { return records.empty(); }
};

struct SubsampleStats {
    std::int64_t kept = 0;
    std::int64_t discarded = 0;
    std::int64_t dropped_oov = 0;
};

/// Randomly discards frequent tokens: a token with relative frequency f is
/// kept with probability min(1, sqrt(threshold/f)). Tokens absent from the
/// vocabulary are dropped and counted in stats.
std::vector<std::string> subsample(const std::vector<std::string>& tokens,
                                   const Vocabulary& vocab, double threshold,
                                   std::uint64_t seed,
                                   SubsampleStats* stats = nullptr);

/// Emits (center, neighbor) index pairs for every offset within +-window,
/// then applies one seeded global shuffle.
PairStream extract_pairs(const std::vector<std::string>& tokens,
                         const Vocabulary& word_vocab, const Vocabulary& ctx_vocab,
                         int window, std::uint64_t seed);

/// Deterministic disjoint train/validation split; sizes differ from the exact
/// fraction by less than one record.
std::pair<PairStream, PairStream> split_holdout(const PairStream& stream,
                                                double holdout_fraction,
                                                std::uint64_t seed);

/// Draws S_z negatives per record i.i.d. from counts^power, renormalized.
PairStream attach_negatives(const PairStream& stream,
                            const std::vector<std::int64_t>& ctx_counts,
                            int s_z, double power, std::uint64_t seed);
PairStream attach_negatives(const PairStream& stream, const Vocabulary& ctx_vocab,
                            int s_z, double power, std::uint64_t seed);

/// Context occurrence counts observed in a stream (size s_c).
std::vector<std::int64_t> context_counts(const PairStream& stream, int s_c);

std::vector<std::string> read_tokens(const std::string& path);

void save_pairs_csv(const std::string& path, const PairStream& stream);
PairStream load_pairs_csv(const std::string& path);

} // namespace sgsel
