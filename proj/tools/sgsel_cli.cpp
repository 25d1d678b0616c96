// Command-line front end: preprocessing, synthetic data generation, training,
// criterion sweeps, and evaluation. Every command writes a manifest with the
// fully resolved configuration so runs can be reproduced byte for byte.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "sgsel/corpus.hpp"
#include "sgsel/criteria.hpp"
#include "sgsel/evaluation.hpp"
#include "sgsel/sgmodel.hpp"
#include "sgsel/sweep.hpp"
#include "sgsel/synthgen.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitPartialFailure = 1;
constexpr int kExitInputError = 2;
constexpr int kExitInfeasible = 3;

// temp + rename so readers never observe a half-written file
template <typename SaveFn>
void atomic_save(const std::string& path, SaveFn&& save) {
    const std::string tmp = path + ".tmp";
    save(tmp);
    fs::rename(tmp, path);
}

void write_manifest(const std::string& path, const json& resolved) {
    if (path.empty()) return;
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open manifest for write: " + path);
    out << resolved.dump(2) << '\n';
}

std::string default_manifest_path(const std::string& primary_output) {
    return primary_output + ".manifest.json";
}

struct GlobalOpts {
    std::uint64_t seed = 42;
    int jobs = 1;
    std::string manifest;
};

int cmd_build_vocab(const std::string& corpus_path, std::int64_t min_count,
                    const std::string& out_path, const GlobalOpts& g) {
    auto tokens = sgsel::read_tokens(corpus_path);
    sgsel::Vocabulary vocab;
    try {
        vocab = sgsel::build_vocab(tokens, min_count);
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInputError;
    }
    atomic_save(out_path, [&](const std::string& p) { sgsel::save_vocab_tsv(p, vocab); });
    json m{{"command", "build-vocab"}, {"corpus", corpus_path},  {"min_count", min_count},
           {"out", out_path},          {"vocab_size", vocab.size()}, {"total_count", vocab.total}};
    write_manifest(g.manifest.empty() ? default_manifest_path(out_path) : g.manifest, m);
    std::cout << "vocabulary: " << vocab.size() << " tokens, total count " << vocab.total
              << '\n';
    return kExitOk;
}

int cmd_pairs(const std::string& corpus_path, const std::string& vocab_path, int window,
              double threshold, const std::string& out_path, const GlobalOpts& g) {
    auto tokens = sgsel::read_tokens(corpus_path);
    auto vocab = sgsel::load_vocab_tsv(vocab_path);
    sgsel::SubsampleStats stats;
    auto kept = sgsel::subsample(tokens, vocab, threshold, g.seed, &stats);
    auto stream = sgsel::extract_pairs(kept, vocab, vocab, window, g.seed + 1);
    atomic_save(out_path, [&](const std::string& p) { sgsel::save_pairs_csv(p, stream); });
    json m{{"command", "pairs"},
           {"corpus", corpus_path},
           {"vocab", vocab_path},
           {"window", window},
           {"subsample_threshold", threshold},
           {"seed", g.seed},
           {"out", out_path},
           {"tokens_in", tokens.size()},
           {"tokens_kept", stats.kept},
           {"tokens_discarded", stats.discarded},
           {"tokens_oov", stats.dropped_oov},
           {"pairs", stream.size()}};
    write_manifest(g.manifest.empty() ? default_manifest_path(out_path) : g.manifest, m);
    std::cout << "pairs: " << stream.size() << " records (" << stats.discarded
              << " tokens subsampled away, " << stats.dropped_oov << " OOV)\n";
    return kExitOk;
}

int cmd_synth(const std::string& questions_path, int s_w, int s_c, std::int64_t n,
              double noise_sigma, int n_random_questions, const std::string& out_truth,
              const std::string& out_pairs, const GlobalOpts& g) {
    std::vector<sgsel::AnalogyQuestion> questions;
    if (!questions_path.empty()) {
        // token files are mapped onto indices in order of first appearance
        auto qtok = sgsel::load_question_tokens(questions_path);
        std::unordered_map<std::string, int> ids;
        for (const auto& q : qtok) {
            sgsel::AnalogyQuestion aq;
            int* slots[4] = {&aq.a, &aq.b, &aq.c, &aq.d};
            for (int i = 0; i < 4; ++i) {
                auto [it, inserted] = ids.emplace(q[i], static_cast<int>(ids.size()));
                *slots[i] = it->second;
            }
            questions.push_back(aq);
        }
        if (static_cast<int>(ids.size()) > s_w) {
            std::cerr << "error: questions reference " << ids.size() << " words but --s-w is "
                      << s_w << '\n';
            return kExitInputError;
        }
    } else if (n_random_questions > 0) {
        sgsel::Rng rng(g.seed + 2);
        std::uniform_int_distribution<int> pick(0, s_w - 1);
        while (static_cast<int>(questions.size()) < n_random_questions) {
            int a = pick(rng), b = pick(rng), c = pick(rng), d = pick(rng);
            if (a == b || a == c || a == d || b == c || b == d || c == d) continue;
            questions.push_back({a, b, c, d});
        }
    }

    sgsel::SyntheticTruth truth;
    try {
        truth = sgsel::generate_truth(questions, s_w, s_c, g.seed);
    } catch (const sgsel::InfeasibleConstraint& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInfeasible;
    }
    auto stream = sgsel::sample_corpus(truth, n, noise_sigma, g.seed + 1);

    atomic_save(out_truth, [&](const std::string& p) { sgsel::save_truth_json(p, truth); });
    atomic_save(out_pairs, [&](const std::string& p) { sgsel::save_pairs_csv(p, stream); });
    json m{{"command", "synth"},       {"questions", questions_path},
           {"n_questions", questions.size()}, {"s_w", s_w},
           {"s_c", s_c},               {"n", n},
           {"noise_sigma", noise_sigma}, {"seed", g.seed},
           {"out_truth", out_truth},   {"out_pairs", out_pairs},
           {"max_residual", sgsel::max_constraint_residual(truth)}};
    write_manifest(g.manifest.empty() ? default_manifest_path(out_truth) : g.manifest, m);
    std::cout << "synth: " << stream.size() << " records, constraint residual "
              << sgsel::max_constraint_residual(truth) << '\n';
    return kExitOk;
}

struct TrainOpts {
    std::string pairs_path;
    std::string model = "osg";
    int dim = 15;
    double lr = -1.0;
    double momentum = -1.0;
    int batch = -1;
    int epochs = 10;
    int s_z = 15;
    double neg_power = 0.75;
    double init_scale = 0.5;
    double min_rel_improvement = 0.0;
    int s_w = 0, s_c = 0; // 0 -> inferred from the stream
};

void infer_sizes(const sgsel::PairStream& stream, int& s_w, int& s_c) {
    for (const auto& r : stream.records) {
        s_w = std::max(s_w, r.word + 1);
        s_c = std::max(s_c, r.context + 1);
        for (int z : r.negatives) s_c = std::max(s_c, z + 1);
    }
}

sgsel::TrainConfig resolve_train_config(const TrainOpts& o, std::uint64_t seed) {
    auto kind = sgsel::model_kind_from_string(o.model);
    sgsel::TrainConfig tc = sgsel::default_train_config(kind);
    if (o.lr > 0) tc.learning_rate = o.lr;
    if (o.momentum >= 0) tc.momentum = o.momentum;
    if (o.batch > 0) tc.batch_size = o.batch;
    tc.epochs = o.epochs;
    tc.s_z = o.s_z;
    tc.init_scale = o.init_scale;
    tc.min_rel_improvement = o.min_rel_improvement;
    tc.seed = seed;
    return tc;
}

int cmd_train(const TrainOpts& o, const std::string& out_path, const std::string& trace_path,
              const GlobalOpts& g) {
    auto stream = sgsel::load_pairs_csv(o.pairs_path);
    int s_w = o.s_w, s_c = o.s_c;
    if (s_w == 0 || s_c == 0) infer_sizes(stream, s_w, s_c);
    auto tc = resolve_train_config(o, g.seed);

    if (tc.model_kind == sgsel::ModelKind::SGNS && !stream.empty() &&
        stream.records.front().negatives.empty()) {
        auto counts = sgsel::context_counts(stream, s_c);
        stream = sgsel::attach_negatives(stream, counts, tc.s_z, o.neg_power, g.seed + 3);
    }

    auto result = sgsel::train(stream, s_w, s_c, o.dim, tc);
    atomic_save(out_path, [&](const std::string& p) {
        sgsel::save_params(p, result.params, tc.model_kind);
    });
    if (!trace_path.empty())
        atomic_save(trace_path,
                    [&](const std::string& p) { sgsel::save_loss_trace_csv(p, result.epoch_nll); });

    json m{{"command", "train"},  {"pairs", o.pairs_path},  {"model", o.model},
           {"dim", o.dim},        {"learning_rate", tc.learning_rate},
           {"momentum", tc.momentum}, {"batch_size", tc.batch_size},
           {"epochs_requested", tc.epochs}, {"epochs_run", result.epoch_nll.size()},
           {"s_z", tc.s_z},       {"init_scale", tc.init_scale},
           {"seed", g.seed},      {"s_w", s_w},
           {"s_c", s_c},          {"out", out_path},
           {"final_mean_nll", result.epoch_nll.empty() ? 0.0 : result.epoch_nll.back()}};
    write_manifest(g.manifest.empty() ? default_manifest_path(out_path) : g.manifest, m);
    std::cout << "trained d=" << o.dim << ", final mean nll "
              << (result.epoch_nll.empty() ? 0.0 : result.epoch_nll.back()) << '\n';
    return kExitOk;
}

int cmd_sweep(const TrainOpts& o, const std::vector<int>& dims, std::int64_t s, int m,
              bool exhaustive, int warm_steps, double warm_lr, double holdout,
              const std::vector<std::string>& only, bool normalized,
              const std::string& out_dir, const GlobalOpts& g) {
    auto stream = sgsel::load_pairs_csv(o.pairs_path);
    int s_w = o.s_w, s_c = o.s_c;
    if (s_w == 0 || s_c == 0) infer_sizes(stream, s_w, s_c);

    sgsel::SweepConfig cfg;
    cfg.dims = dims;
    cfg.model_kind = sgsel::model_kind_from_string(o.model);
    cfg.train = resolve_train_config(o, g.seed);
    cfg.holdout_fraction = holdout;
    cfg.snml_records = s;
    cfg.sampler_m = m;
    cfg.snml_exhaustive = exhaustive;
    cfg.warm_steps = warm_steps;
    cfg.warm_lr = warm_lr;
    cfg.s_z = o.s_z;
    cfg.neg_power = o.neg_power;
    cfg.seed = g.seed;
    cfg.jobs = g.jobs;
    if (!only.empty()) {
        cfg.run_aic = cfg.run_bic = cfg.run_cv = cfg.run_snml = false;
        for (const auto& name : only) {
            if (name == "aic") cfg.run_aic = true;
            else if (name == "bic") cfg.run_bic = true;
            else if (name == "cv") cfg.run_cv = true;
            else if (name == "snml") cfg.run_snml = true;
            else {
                std::cerr << "error: unknown criterion " << name << '\n';
                return kExitInputError;
            }
        }
    }

    fs::create_directories(out_dir);
    auto result = sgsel::run_sweep(stream, s_w, s_c, cfg);

    for (const auto& dr : result.dims) {
        if (dr.failed) {
            std::cerr << "dim " << dr.dim << " failed: " << dr.error << '\n';
            continue;
        }
        const std::string stem = out_dir + "/d" + std::to_string(dr.dim);
        atomic_save(stem + ".params.bin", [&](const std::string& p) {
            sgsel::save_params(p, dr.params, cfg.model_kind);
        });
        atomic_save(stem + ".loss.csv", [&](const std::string& p) {
            sgsel::save_loss_trace_csv(p, dr.epoch_nll);
        });
        if (cfg.run_snml)
            atomic_save(stem + ".snml.csv",
                        [&](const std::string& p) { sgsel::save_ledger_csv(p, dr.ledger); });
    }

    auto emit_report = [&](sgsel::Criterion crit, const std::string& name) {
        auto report = sgsel::report_from_sweep(result, crit);
        atomic_save(out_dir + "/" + name + ".json",
                    [&](const std::string& p) { sgsel::save_report_json(p, report); });
        if (normalized) {
            // 0-1 rescale of the values, for plotting
            double lo = report.values.begin()->second, hi = lo;
            for (const auto& [_, v] : report.values) {
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            }
            sgsel::CriterionReport norm = report;
            for (auto& [_, v] : norm.values) v = hi > lo ? (v - lo) / (hi - lo) : 0.0;
            atomic_save(out_dir + "/" + name + ".normalized.json",
                        [&](const std::string& p) { sgsel::save_report_json(p, norm); });
        }
        std::cout << name << " chooses d=" << report.chosen_dim << '\n';
    };
    if (cfg.run_aic) emit_report(sgsel::Criterion::AIC, "aic");
    if (cfg.run_bic) emit_report(sgsel::Criterion::BIC, "bic");
    if (cfg.run_cv) emit_report(sgsel::Criterion::CV, "cv");
    if (cfg.run_snml) {
        emit_report(sgsel::Criterion::SNML, "snml");
        // pairwise cumulative-difference curves against the SNML-best dim
        auto snml = sgsel::report_from_sweep(result, sgsel::Criterion::SNML);
        const sgsel::DimSweepResult* best = nullptr;
        for (const auto& dr : result.dims)
            if (!dr.failed && dr.dim == snml.chosen_dim) best = &dr;
        if (best) {
            for (const auto& dr : result.dims) {
                if (dr.failed || dr.dim == best->dim) continue;
                atomic_save(out_dir + "/curve_d" + std::to_string(dr.dim) + "_vs_d" +
                                std::to_string(best->dim) + ".csv",
                            [&](const std::string& p) {
                                sgsel::save_comparison_curve_csv(p, dr.ledger, best->ledger);
                            });
            }
        }
    }

    json manifest{{"command", "sweep"},   {"pairs", o.pairs_path},
                  {"model", o.model},     {"dims", dims},
                  {"s", s},               {"m", m},
                  {"exhaustive", exhaustive}, {"warm_steps", warm_steps},
                  {"warm_lr", warm_lr},   {"holdout", holdout},
                  {"seed", g.seed},       {"jobs", g.jobs},
                  {"s_w", s_w},           {"s_c", s_c},
                  {"n_train", result.n_train}, {"out_dir", out_dir},
                  {"epochs", o.epochs},   {"learning_rate", cfg.train.learning_rate}};
    write_manifest(g.manifest.empty() ? out_dir + "/manifest.json" : g.manifest, manifest);
    return result.any_failed ? kExitPartialFailure : kExitOk;
}

int cmd_eval(const std::string& params_path, const std::string& task,
             const std::string& data_path, const std::string& vocab_path,
             const std::string& out_path, const GlobalOpts& g) {
    auto [params, kind] = sgsel::load_params(params_path);
    json m{{"command", "eval"}, {"params", params_path}, {"task", task},
           {"data", data_path}, {"out", out_path}};

    if (task == "oracle") {
        auto truth = sgsel::load_truth_json(data_path);
        sgsel::OracleScore score = kind == sgsel::ModelKind::oSG
                                       ? sgsel::dissimilar_osg(params, truth)
                                       : sgsel::similar_sgns(params, truth);
        json j{{"task", kind == sgsel::ModelKind::oSG ? "oracle_dissimilar_osg"
                                                      : "oracle_similar_sgns"},
               {"score", score.value},
               {"attempted", params.s_w},
               {"skipped", 0},
               {"degenerate_words", score.degenerate_words}};
        atomic_save(out_path, [&](const std::string& p) {
            std::ofstream out(p);
            out << j.dump(2) << '\n';
        });
        m["score"] = score.value;
        std::cout << "oracle score: " << score.value << '\n';
    } else if (task == "analogy" || task == "similarity") {
        auto vocab = sgsel::load_vocab_tsv(vocab_path);
        sgsel::TaskScore score;
        if (task == "analogy") {
            auto questions = sgsel::load_question_tokens(data_path);
            score = sgsel::analogy_score(params, questions, vocab);
        } else {
            auto pairs = sgsel::load_similarity_tsv(data_path);
            score = sgsel::similarity_task_score(params, pairs, vocab);
        }
        atomic_save(out_path, [&](const std::string& p) {
            sgsel::save_task_score_json(p, task, score);
        });
        m["score"] = score.score;
        m["attempted"] = score.attempted;
        m["skipped"] = score.skipped;
        std::cout << task << " score: " << score.score << " (attempted " << score.attempted
                  << ", skipped " << score.skipped << ")\n";
    } else {
        std::cerr << "error: unknown task " << task << '\n';
        return kExitInputError;
    }
    write_manifest(g.manifest.empty() ? default_manifest_path(out_path) : g.manifest, m);
    return kExitOk;
}

int cmd_report(const std::vector<std::string>& value_files, const std::string& out_path,
               const GlobalOpts& g) {
    // recompute the argmin from previously written report files
    std::map<int, double> merged;
    sgsel::Criterion crit = sgsel::Criterion::SNML;
    for (const auto& f : value_files) {
        auto r = sgsel::load_report_json(f);
        crit = r.criterion;
        for (const auto& [dim, v] : r.values) merged[dim] = v;
    }
    auto report = sgsel::select_dimension(crit, merged);
    atomic_save(out_path, [&](const std::string& p) { sgsel::save_report_json(p, report); });
    json m{{"command", "report"}, {"inputs", value_files}, {"out", out_path},
           {"chosen_dim", report.chosen_dim}};
    write_manifest(g.manifest.empty() ? default_manifest_path(out_path) : g.manifest, m);
    std::cout << sgsel::to_string(report.criterion) << " chooses d=" << report.chosen_dim
              << '\n';
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Skip-gram dimensionality selection by information criteria"};
    app.require_subcommand(1);

    GlobalOpts g;
    app.add_option("--seed", g.seed, "global RNG seed")->capture_default_str();
    app.add_option("--jobs", g.jobs, "parallel jobs for sweeps")->capture_default_str();
    app.add_option("--manifest", g.manifest, "manifest output path");

    // build-vocab
    auto* bv = app.add_subcommand("build-vocab", "count tokens and write a vocabulary TSV");
    std::string corpus_path, out_path;
    std::int64_t min_count = 73;
    bv->add_option("--corpus", corpus_path, "UTF-8 whitespace-tokenized text")->required();
    bv->add_option("--min-count", min_count, "minimum token count")->capture_default_str();
    bv->add_option("--out", out_path, "output vocabulary TSV")->required();

    // pairs
    auto* pc = app.add_subcommand("pairs", "subsample and extract (word, context) pairs");
    std::string vocab_path;
    int window = 5;
    double threshold = 1e-5;
    pc->add_option("--corpus", corpus_path, "input text")->required();
    pc->add_option("--vocab", vocab_path, "vocabulary TSV")->required();
    pc->add_option("--window", window, "context window size")->capture_default_str();
    pc->add_option("--subsample", threshold, "subsampling threshold")->capture_default_str();
    pc->add_option("--out", out_path, "output pair CSV")->required();

    // synth
    auto* sy = app.add_subcommand("synth", "generate constrained truth and sample a corpus");
    std::string questions_path, out_truth, out_pairs;
    int s_w = 40, s_c = 50, n_random_questions = 5;
    std::int64_t n = 1000000;
    double noise_sigma = 0.0;
    sy->add_option("--questions", questions_path, "analogy question file (token form)");
    sy->add_option("--random-questions", n_random_questions,
                   "random questions when no file is given")
        ->capture_default_str();
    sy->add_option("--s-w", s_w, "word vocabulary size")->capture_default_str();
    sy->add_option("--s-c", s_c, "context vocabulary size")->capture_default_str();
    sy->add_option("--n", n, "number of records")->capture_default_str();
    sy->add_option("--noise-sigma", noise_sigma, "logit noise std")->capture_default_str();
    sy->add_option("--out-truth", out_truth, "output truth JSON")->required();
    sy->add_option("--out-pairs", out_pairs, "output pair CSV")->required();

    // shared train options
    TrainOpts to;
    auto add_train_opts = [&](CLI::App* cmd) {
        cmd->add_option("--pairs", to.pairs_path, "pair CSV")->required();
        cmd->add_option("--model", to.model, "osg or sgns")->capture_default_str();
        cmd->add_option("--lr", to.lr, "learning rate (default per model)");
        cmd->add_option("--momentum", to.momentum, "momentum (oSG only)");
        cmd->add_option("--batch", to.batch, "batch size (oSG only)");
        cmd->add_option("--epochs", to.epochs, "epochs")->capture_default_str();
        cmd->add_option("--neg", to.s_z, "negative samples per record")->capture_default_str();
        cmd->add_option("--neg-power", to.neg_power, "unigram exponent for negatives")
            ->capture_default_str();
        cmd->add_option("--init-scale", to.init_scale, "init range scale")->capture_default_str();
        cmd->add_option("--early-stop", to.min_rel_improvement,
                        "stop when relative epoch-loss improvement drops below this");
        cmd->add_option("--s-w", to.s_w, "word vocab size (default inferred)");
        cmd->add_option("--s-c", to.s_c, "context vocab size (default inferred)");
    };

    // train
    auto* tr = app.add_subcommand("train", "train one model");
    std::string trace_path;
    add_train_opts(tr);
    tr->add_option("--dim", to.dim, "embedding dimensionality")->capture_default_str();
    tr->add_option("--out", out_path, "output params file")->required();
    tr->add_option("--loss-trace", trace_path, "optional epoch-loss CSV");

    // sweep
    auto* sw = app.add_subcommand("sweep", "train candidate dims and compute criteria");
    std::vector<int> dims;
    std::int64_t snml_s = 6000;
    int sampler_m = 0, warm_steps = 20;
    double warm_lr = 0.0, holdout = 0.05;
    bool exhaustive = false, normalized = false;
    std::vector<std::string> only;
    std::string out_dir;
    add_train_opts(sw);
    sw->add_option("--dims", dims, "candidate dimensionalities")->required()->expected(2, -1);
    sw->add_option("--s", snml_s, "SNML records to score (tail length)")->capture_default_str();
    sw->add_option("--m", sampler_m, "IS sample count (0 = ceil(S_C/10))")->capture_default_str();
    sw->add_flag("--exhaustive", exhaustive, "exact enumeration instead of sampling");
    sw->add_option("--steps", warm_steps, "warm-start gradient steps")->capture_default_str();
    sw->add_option("--snml-lr", warm_lr, "warm-start learning rate (0 = alpha/10)");
    sw->add_option("--holdout", holdout, "CV holdout fraction")->capture_default_str();
    sw->add_option("--only", only, "restrict to criteria: aic bic cv snml");
    sw->add_flag("--normalized", normalized, "also write 0-1 normalized reports");
    sw->add_option("--out-dir", out_dir, "output directory")->required();

    // eval
    auto* ev = app.add_subcommand("eval", "score a trained model");
    std::string params_path, task = "oracle", data_path;
    ev->add_option("--params", params_path, "params file")->required();
    ev->add_option("--task", task, "oracle | analogy | similarity")->capture_default_str();
    ev->add_option("--data", data_path, "truth JSON / question file / similarity TSV")
        ->required();
    ev->add_option("--vocab", vocab_path, "vocabulary TSV (analogy/similarity)");
    ev->add_option("--out", out_path, "output score JSON")->required();

    // report
    auto* rp = app.add_subcommand("report", "recompute the argmin from report files");
    std::vector<std::string> value_files;
    rp->add_option("--values", value_files, "input report JSON files")->required();
    rp->add_option("--out", out_path, "output report JSON")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (bv->parsed()) return cmd_build_vocab(corpus_path, min_count, out_path, g);
        if (pc->parsed()) return cmd_pairs(corpus_path, vocab_path, window, threshold, out_path, g);
        if (sy->parsed())
            return cmd_synth(questions_path, s_w, s_c, n, noise_sigma, n_random_questions,
                             out_truth, out_pairs, g);
        if (tr->parsed()) return cmd_train(to, out_path, trace_path, g);
        if (sw->parsed())
            return cmd_sweep(to, dims, snml_s, sampler_m, exhaustive, warm_steps, warm_lr,
                             holdout, only, normalized, out_dir, g);
        if (ev->parsed()) return cmd_eval(params_path, task, data_path, vocab_path, out_path, g);
        if (rp->parsed()) return cmd_report(value_files, out_path, g);
    } catch (const sgsel::InfeasibleConstraint& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInfeasible;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInputError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitPartialFailure;
    }
    return kExitOk;
}
