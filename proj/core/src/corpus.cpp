#include "sgsel/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

namespace sgsel {

Vocabulary build_vocab(const std::vector<std::string>& tokens, std::int64_t min_count) {
    if (tokens.empty()) throw std::invalid_argument("build_vocab: empty token sequence");
    if (min_count < 1) throw std::invalid_argument("build_vocab: min_count must be >= 1");

    std::unordered_map<std::string, std::int64_t> raw;
    for (const auto& t : tokens) ++raw[t];

    std::vector<std::pair<std::string, std::int64_t>> kept;
    kept.reserve(raw.size());
    for (auto& [tok, cnt] : raw)
        if (cnt >= min_count) kept.emplace_back(tok, cnt);

    if (kept.empty())
        throw std::runtime_error("build_vocab: no token reaches min_count=" +
                                 std::to_string(min_count));

    std::sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });

    Vocabulary v;
    v.tokens.reserve(kept.size());
    v.counts.reserve(kept.size());
    for (int i = 0; i < static_cast<int>(kept.size()); ++i) {
        v.tokens.push_back(kept[i].first);
        v.counts.push_back(kept[i].second);
        v.index_of.emplace(kept[i].first, i);
        v.total += kept[i].second;
    }
    return v;
}

void save_vocab_tsv(const std::string& path, const Vocabulary& v) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for write: " + path);
    for (int i = 0; i < v.size(); ++i)
        out << v.tokens[i] << '\t' << v.counts[i] << '\t' << i << '\n';
}

Vocabulary load_vocab_tsv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open: " + path);
    Vocabulary v;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string tok;
        std::int64_t cnt;
        int idx;
        if (!(std::getline(ls, tok, '\t') && ls >> cnt >> idx))
            throw std::runtime_error("malformed vocabulary line: " + line);
        if (idx != v.size())
            throw std::runtime_error("vocabulary file not sorted by index: " + path);
        v.tokens.push_back(tok);
        v.counts.push_back(cnt);
        v.index_of.emplace(tok, idx);
        v.total += cnt;
    }
    return v;
}

std::vector<std::string> subsample(const std::vector<std::string>& tokens,
                                   const Vocabulary& vocab, double threshold,
                                   std::uint64_t seed, SubsampleStats* stats) {
    if (threshold <= 0) throw std::invalid_argument("subsample: threshold must be > 0");
    Rng rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::vector<std::string> out;
    out.reserve(tokens.size());
    SubsampleStats st;
    for (const auto& t : tokens) {
        int idx = vocab.index(t);
        if (idx < 0) {
            ++st.dropped_oov;
            continue;
        }
        double f = static_cast<double>(vocab.counts[idx]) / static_cast<double>(vocab.total);
        double keep = f <= threshold ? 1.0 : std::sqrt(threshold / f);
        // draw unconditionally so the consumed RNG stream does not depend on
        // branch layout
        double u = unif(rng);
        if (u < keep) {
            out.push_back(t);
            ++st.kept;
        } else {
            ++st.discarded;
        }
    }
    if (stats) *stats = st;
    return out;
}

PairStream extract_pairs(const std::vector<std::string>& tokens,
                         const Vocabulary& word_vocab, const Vocabulary& ctx_vocab,
                         int window, std::uint64_t seed) {
    if (window < 1) throw std::invalid_argument("extract_pairs: window must be >= 1");
    const int n = static_cast<int>(tokens.size());

    std::vector<int> widx(n), cidx(n);
    for (int i = 0; i < n; ++i) {
        widx[i] = word_vocab.index(tokens[i]);
        cidx[i] = ctx_vocab.index(tokens[i]);
    }

    PairStream stream;
    stream.order_seed = seed;
    for (int i = 0; i < n; ++i) {
        if (widx[i] < 0) continue;
        int lo = std::max(0, i - window);
        int hi = std::min(n - 1, i + window);
        for (int j = lo; j <= hi; ++j) {
            if (j == i || cidx[j] < 0) continue;
            stream.records.push_back({widx[i], cidx[j], {}});
        }
    }
    Rng rng(seed);
    std::shuffle(stream.records.begin(), stream.records.end(), rng);
    return stream;
}

std::pair<PairStream, PairStream> split_holdout(const PairStream& stream,
                                                double holdout_fraction,
                                                std::uint64_t seed) {
    if (stream.empty()) throw std::invalid_argument("split_holdout: empty stream");
    if (!(holdout_fraction > 0.0 && holdout_fraction < 1.0))
        throw std::invalid_argument("split_holdout: fraction must be in (0,1)");

    const std::size_t n = stream.size();
    auto n_hold = static_cast<std::size_t>(std::llround(holdout_fraction * static_cast<double>(n)));
    n_hold = std::min(n_hold, n - 1);
    if (n_hold == 0) n_hold = 1;

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    Rng rng(seed);
    std::shuffle(order.begin(), order.end(), rng);

    std::vector<char> held(n, 0);
    for (std::size_t k = 0; k < n_hold; ++k) held[order[k]] = 1;

    PairStream train, hold;
    train.order_seed = stream.order_seed;
    hold.order_seed = seed;
    for (std::size_t i = 0; i < n; ++i)
        (held[i] ? hold : train).records.push_back(stream.records[i]);
    return {std::move(train), std::move(hold)};
}

std::vector<std::int64_t> context_counts(const PairStream& stream, int s_c) {
    std::vector<std::int64_t> counts(s_c, 0);
    for (const auto& r : stream.records) {
        if (r.context < 0 || r.context >= s_c)
            throw std::invalid_argument("context_counts: context index out of range");
        ++counts[r.context];
    }
    return counts;
}

PairStream attach_negatives(const PairStream& stream,
                            const std::vector<std::int64_t>& ctx_counts,
                            int s_z, double power, std::uint64_t seed) {
    if (s_z < 1) throw std::invalid_argument("attach_negatives: S_z must be >= 1");
    std::vector<double> weights(ctx_counts.size());
    for (std::size_t c = 0; c < ctx_counts.size(); ++c)
        weights[c] = std::pow(static_cast<double>(ctx_counts[c]), power);
    std::discrete_distribution<int> noise(weights.begin(), weights.end());

    Rng rng(seed);
    PairStream out = stream;
    for (auto& rec : out.records) {
        rec.negatives.resize(s_z);
        for (int j = 0; j < s_z; ++j) rec.negatives[j] = noise(rng);
    }
    return out;
}

PairStream attach_negatives(const PairStream& stream, const Vocabulary& ctx_vocab,
                            int s_z, double power, std::uint64_t seed) {
    return attach_negatives(stream, ctx_vocab.counts, s_z, power, seed);
}

std::vector<std::string> read_tokens(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open: " + path);
    std::vector<std::string> tokens;
    std::string tok;
    while (in >> tok) tokens.push_back(tok);
    return tokens;
}

void save_pairs_csv(const std::string& path, const PairStream& stream) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for write: " + path);
    const int s_z = stream.empty() ? 0 : static_cast<int>(stream.records.front().negatives.size());
    out << "word,context";
    for (int j = 1; j <= s_z; ++j) out << ",neg" << j;
    out << '\n';
    for (const auto& r : stream.records) {
        out << r.word << ',' << r.context;
        for (int neg : r.negatives) out << ',' << neg;
        out << '\n';
    }
}

PairStream load_pairs_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open: " + path);
    PairStream stream;
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("empty pair file: " + path);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        PairRecord r;
        std::istringstream ls(line);
        std::string field;
        int col = 0;
        while (std::getline(ls, field, ',')) {
            int v = std::stoi(field);
            if (col == 0) r.word = v;
            else if (col == 1) r.context = v;
            else r.negatives.push_back(v);
            ++col;
        }
        if (col < 2) throw std::runtime_error("malformed pair line: " + line);
        stream.records.push_back(std::move(r));
    }
    return stream;
}

} // namespace sgsel
