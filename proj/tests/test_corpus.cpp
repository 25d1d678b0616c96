#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "doctest.h"
#include "sgsel/corpus.hpp"

using namespace sgsel;

namespace {

std::vector<std::string> random_tokens(std::size_t n, int alphabet, std::uint64_t seed) {
    Rng rng(seed);
    std::uniform_int_distribution<int> pick(0, alphabet - 1);
    std::vector<std::string> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back("t" + std::to_string(pick(rng)));
    return out;
}

// brute-force window enumeration, independent of extract_pairs
std::multiset<std::pair<int, int>> enumerate_pairs(const std::vector<std::string>& tokens,
                                                   const Vocabulary& vocab, int window) {
    std::multiset<std::pair<int, int>> out;
    const int n = static_cast<int>(tokens.size());
    for (int i = 0; i < n; ++i) {
        if (vocab.index(tokens[i]) < 0) continue;
        for (int o = -window; o <= window; ++o) {
            if (o == 0) continue;
            int j = i + o;
            if (j < 0 || j >= n) continue;
            if (vocab.index(tokens[j]) < 0) continue;
            out.emplace(vocab.index(tokens[i]), vocab.index(tokens[j]));
        }
    }
    return out;
}

std::multiset<std::pair<int, int>> as_multiset(const PairStream& s) {
    std::multiset<std::pair<int, int>> out;
    for (const auto& r : s.records) out.emplace(r.word, r.context);
    return out;
}

} // namespace

TEST_CASE("build_vocab counts and orders tokens") {
    auto v = build_vocab({"a", "a", "b"}, 1);
    REQUIRE(v.size() == 2);
    CHECK(v.tokens[0] == "a");
    CHECK(v.counts[0] == 2);
    CHECK(v.tokens[1] == "b");
    CHECK(v.counts[1] == 1);
    CHECK(v.index("a") == 0);
    CHECK(v.index("b") == 1);
    CHECK(v.total == 3);
}

TEST_CASE("build_vocab filters by min_count") {
    auto v = build_vocab({"a", "a", "b"}, 2);
    REQUIRE(v.size() == 1);
    CHECK(v.tokens[0] == "a");
    CHECK(v.index("b") == -1);
}

TEST_CASE("build_vocab breaks count ties lexicographically") {
    auto v = build_vocab({"zz", "aa", "mm", "aa", "zz", "mm"}, 1);
    CHECK(v.tokens == std::vector<std::string>{"aa", "mm", "zz"});
}

TEST_CASE("build_vocab errors") {
    CHECK_THROWS_AS(build_vocab({}, 1), std::invalid_argument);
    CHECK_THROWS_AS(build_vocab({"a"}, 0), std::invalid_argument);
    CHECK_THROWS_WITH_AS(build_vocab({"a", "b"}, 5), doctest::Contains("min_count=5"),
                         std::runtime_error);
}

TEST_CASE("build_vocab matches an independent count oracle") {
    auto tokens = random_tokens(20000, 40, 7);
    std::map<std::string, std::int64_t> oracle;
    for (const auto& t : tokens) ++oracle[t];
    const std::int64_t min_count = 400;
    auto v = build_vocab(tokens, min_count);
    std::int64_t expected_size = 0;
    for (const auto& [tok, cnt] : oracle) {
        if (cnt >= min_count) {
            ++expected_size;
            REQUIRE(v.index(tok) >= 0);
            CHECK(v.counts[v.index(tok)] == cnt);
        } else {
            CHECK(v.index(tok) == -1);
        }
    }
    CHECK(v.size() == expected_size);
}

TEST_CASE("build_vocab is idempotent on its own filtered multiset") {
    auto tokens = random_tokens(5000, 25, 11);
    auto v1 = build_vocab(tokens, 150);
    std::vector<std::string> filtered;
    for (int i = 0; i < v1.size(); ++i)
        for (std::int64_t k = 0; k < v1.counts[i]; ++k) filtered.push_back(v1.tokens[i]);
    auto v2 = build_vocab(filtered, 1);
    CHECK(v1.tokens == v2.tokens);
    CHECK(v1.counts == v2.counts);
}

TEST_CASE("subsample keeps rare tokens with probability 1") {
    // "b" has f = 1/1001 <= threshold, so it must always survive
    std::vector<std::string> tokens(1000, "a");
    tokens.push_back("b");
    auto v = build_vocab(tokens, 1);
    auto kept = subsample(tokens, v, 1.0 / 500.0, 123);
    CHECK(std::count(kept.begin(), kept.end(), "b") == 1);
}

TEST_CASE("subsample with huge threshold is the identity") {
    auto tokens = random_tokens(2000, 10, 3);
    auto v = build_vocab(tokens, 1);
    auto kept = subsample(tokens, v, 1e18, 5);
    CHECK(kept == tokens);
}

TEST_CASE("subsample keep rate at f = 4*threshold is one half") {
    // single token: f = 1, threshold 0.25 -> keep prob 0.5
    const std::size_t n = 200000;
    std::vector<std::string> tokens(n, "a");
    auto v = build_vocab(tokens, 1);
    SubsampleStats stats;
    subsample(tokens, v, 0.25, 99, &stats);
    double p = 0.5, sigma = std::sqrt(p * (1 - p) * static_cast<double>(n));
    CHECK(std::abs(static_cast<double>(stats.kept) - p * static_cast<double>(n)) < 3 * sigma);
}

TEST_CASE("subsample empirical keep rate matches sqrt(threshold/f)") {
    const std::size_t n = 1000000;
    std::vector<std::string> tokens(n, "w");
    auto v = build_vocab(tokens, 1);
    const double threshold = 1e-5; // f = 1 -> keep prob sqrt(1e-5)
    SubsampleStats stats;
    subsample(tokens, v, threshold, 2024, &stats);
    double p = std::sqrt(threshold);
    double sigma = std::sqrt(p * (1 - p) * static_cast<double>(n));
    CHECK(std::abs(static_cast<double>(stats.kept) - p * static_cast<double>(n)) < 3 * sigma);
}

TEST_CASE("subsample drops and counts OOV tokens") {
    std::vector<std::string> tokens = {"a", "a", "b", "x", "a"};
    auto v = build_vocab({"a", "a", "b"}, 1);
    SubsampleStats stats;
    auto kept = subsample(tokens, v, 1e18, 1, &stats);
    CHECK(stats.dropped_oov == 1);
    CHECK(kept == std::vector<std::string>{"a", "a", "b", "a"});
}

TEST_CASE("extract_pairs on a 3-token window-1 sequence") {
    std::vector<std::string> tokens = {"a", "b", "c"};
    auto v = build_vocab(tokens, 1);
    auto stream = extract_pairs(tokens, v, v, 1, 0);
    std::multiset<std::pair<int, int>> expect = {{v.index("a"), v.index("b")},
                                                 {v.index("b"), v.index("a")},
                                                 {v.index("b"), v.index("c")},
                                                 {v.index("c"), v.index("b")}};
    CHECK(as_multiset(stream) == expect);
}

TEST_CASE("extract_pairs on a single token is empty") {
    std::vector<std::string> tokens = {"a"};
    auto v = build_vocab(tokens, 1);
    CHECK(extract_pairs(tokens, v, v, 4, 0).empty());
}

TEST_CASE("extract_pairs emits 10 pairs for 4 tokens, window 2") {
    std::vector<std::string> tokens = {"a", "b", "c", "d"};
    auto v = build_vocab(tokens, 1);
    CHECK(extract_pairs(tokens, v, v, 2, 0).size() == 10);
}

TEST_CASE("extract_pairs matches brute-force enumeration on short sequences") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        auto tokens = random_tokens(1 + seed * 2, 6, seed + 100);
        auto v = build_vocab(tokens, 1);
        int window = 1 + static_cast<int>(seed % 4);
        auto stream = extract_pairs(tokens, v, v, window, seed);
        CHECK(as_multiset(stream) == enumerate_pairs(tokens, v, window));
    }
}

TEST_CASE("extract_pairs order is deterministic given the seed") {
    auto tokens = random_tokens(300, 8, 21);
    auto v = build_vocab(tokens, 1);
    auto s1 = extract_pairs(tokens, v, v, 3, 77);
    auto s2 = extract_pairs(tokens, v, v, 3, 77);
    auto s3 = extract_pairs(tokens, v, v, 3, 78);
    REQUIRE(s1.size() == s2.size());
    bool same = true;
    for (std::size_t i = 0; i < s1.size(); ++i)
        same = same && s1.records[i].word == s2.records[i].word &&
               s1.records[i].context == s2.records[i].context;
    CHECK(same);
    CHECK(as_multiset(s1) == as_multiset(s3)); // different order, same multiset
    CHECK(s1.order_seed == 77);
}

TEST_CASE("split_holdout partitions 100 records into 90/10") {
    PairStream s;
    for (int i = 0; i < 100; ++i) s.records.push_back({i % 7, i % 5, {}});
    auto [train, hold] = split_holdout(s, 0.1, 9);
    CHECK(train.size() == 90);
    CHECK(hold.size() == 10);

    auto [train2, hold2] = split_holdout(s, 0.1, 9);
    CHECK(as_multiset(train) == as_multiset(train2));
    CHECK(as_multiset(hold) == as_multiset(hold2));

    auto all = as_multiset(train);
    for (const auto& r : hold.records) all.emplace(r.word, r.context);
    CHECK(all == as_multiset(s));
}

TEST_CASE("split_holdout rejects bad fractions") {
    PairStream s;
    s.records.push_back({0, 0, {}});
    CHECK_THROWS_AS(split_holdout(s, 0.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(split_holdout(s, 1.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(split_holdout(PairStream{}, 0.5, 1), std::invalid_argument);
}

TEST_CASE("attach_negatives gives every record exactly S_z entries") {
    PairStream s;
    for (int i = 0; i < 50; ++i) s.records.push_back({0, i % 3, {}});
    std::vector<std::int64_t> counts = {5, 3, 2};
    auto out = attach_negatives(s, counts, 15, 0.75, 4);
    for (const auto& r : out.records) CHECK(r.negatives.size() == 15);
    // input untouched
    CHECK(s.records.front().negatives.empty());
}

TEST_CASE("attach_negatives with power 0 is uniform (chi-square)") {
    const int s_c = 20;
    PairStream s;
    s.records.push_back({0, 0, {}});
    std::vector<std::int64_t> counts(s_c, 1);
    for (int c = 0; c < s_c; ++c) counts[c] = (c + 1) * 10; // non-uniform counts
    const int draws = 1000000;
    PairStream big;
    for (int i = 0; i < draws / 10; ++i) big.records.push_back({0, 0, {}});
    auto out = attach_negatives(big, counts, 10, 0.0, 31);
    std::vector<std::int64_t> hist(s_c, 0);
    for (const auto& r : out.records)
        for (int z : r.negatives) ++hist[z];
    double expected = static_cast<double>(draws) / s_c;
    double chi2 = 0.0;
    for (int c = 0; c < s_c; ++c) {
        double d = static_cast<double>(hist[c]) - expected;
        chi2 += d * d / expected;
    }
    // chi-square critical value, 19 dof, alpha = 0.01
    CHECK(chi2 < 36.19);
}

TEST_CASE("attach_negatives power 0.75 matches closed-form frequencies") {
    std::vector<std::int64_t> counts = {3, 1};
    double w0 = std::pow(3.0, 0.75), w1 = 1.0;
    double p0 = w0 / (w0 + w1);
    const int draws = 400000;
    PairStream s;
    for (int i = 0; i < draws; ++i) s.records.push_back({0, 0, {}});
    auto out = attach_negatives(s, counts, 1, 0.75, 17);
    std::int64_t n0 = 0;
    for (const auto& r : out.records) n0 += r.negatives[0] == 0 ? 1 : 0;
    double sigma = std::sqrt(p0 * (1 - p0) * draws);
    CHECK(std::abs(static_cast<double>(n0) - p0 * draws) < 3 * sigma);
}

TEST_CASE("vocabulary TSV and pair CSV round-trip") {
    auto tokens = random_tokens(500, 12, 13);
    auto v = build_vocab(tokens, 2);
    save_vocab_tsv("/tmp/sgsel_test_vocab.tsv", v);
    auto v2 = load_vocab_tsv("/tmp/sgsel_test_vocab.tsv");
    CHECK(v.tokens == v2.tokens);
    CHECK(v.counts == v2.counts);
    CHECK(v.total == v2.total);

    auto stream = extract_pairs(tokens, v, v, 2, 5);
    auto with_negs = attach_negatives(stream, v, 3, 0.75, 6);
    save_pairs_csv("/tmp/sgsel_test_pairs.csv", with_negs);
    auto loaded = load_pairs_csv("/tmp/sgsel_test_pairs.csv");
    REQUIRE(loaded.size() == with_negs.size());
    bool same = true;
    for (std::size_t i = 0; i < loaded.size(); ++i)
        same = same && loaded.records[i].word == with_negs.records[i].word &&
               loaded.records[i].context == with_negs.records[i].context &&
               loaded.records[i].negatives == with_negs.records[i].negatives;
    CHECK(same);
}
