// End-to-end tests that drive the installed command-line binary.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "sgsel/criteria.hpp"
#include "sgsel/sgmodel.hpp"
#include "sgsel/synthgen.hpp"

namespace fs = std::filesystem;

namespace {

const std::string kCli = SGSEL_CLI_PATH;

int run(const std::string& args) {
    int status = std::system((kCli + " " + args + " >/dev/null 2>&1").c_str());
    REQUIRE(status != -1);
    return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path fresh_dir(const std::string& name) {
    fs::path dir = fs::temp_directory_path() / ("sgsel_cli_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

} // namespace

TEST_CASE("build-vocab and pairs run the preprocessing pipeline") {
    auto dir = fresh_dir("prep");
    {
        std::ofstream out(dir / "corpus.txt");
        for (int i = 0; i < 50; ++i) out << "the cat sat on the mat ";
        out << "rareword\n";
    }
    CHECK(run("build-vocab --corpus " + (dir / "corpus.txt").string() +
              " --min-count 2 --out " + (dir / "vocab.tsv").string()) == 0);
    CHECK(fs::exists(dir / "vocab.tsv"));
    CHECK(fs::exists(dir / "vocab.tsv.manifest.json"));
    // rareword appears once and must be filtered
    CHECK(slurp(dir / "vocab.tsv").find("rareword") == std::string::npos);

    CHECK(run("--seed 7 pairs --corpus " + (dir / "corpus.txt").string() + " --vocab " +
              (dir / "vocab.tsv").string() + " --window 2 --subsample 1 --out " +
              (dir / "pairs.csv").string()) == 0);
    auto stream = sgsel::load_pairs_csv((dir / "pairs.csv").string());
    CHECK(stream.size() > 100);
}

TEST_CASE("synth + train + eval round-trip, byte-identical on rerun") {
    auto dir = fresh_dir("trip");
    const std::string synth = "--seed 11 synth --s-w 6 --s-c 8 --n 4000 --random-questions 2"
                              " --out-truth " + (dir / "truth.json").string() +
                              " --out-pairs " + (dir / "pairs.csv").string();
    CHECK(run(synth) == 0);
    auto truth = sgsel::load_truth_json((dir / "truth.json").string());
    CHECK(truth.s_w == 6);
    CHECK(sgsel::max_constraint_residual(truth) <= 1e-6);

    const std::string train = "--seed 11 train --pairs " + (dir / "pairs.csv").string() +
                              " --model osg --dim 3 --epochs 3 --out " +
                              (dir / "m.bin").string() + " --loss-trace " +
                              (dir / "m.loss.csv").string();
    CHECK(run(train) == 0);
    std::string first = slurp(dir / "m.bin");
    CHECK(run(train) == 0);
    CHECK(slurp(dir / "m.bin") == first); // same seed, same bytes

    CHECK(run("eval --params " + (dir / "m.bin").string() + " --task oracle --data " +
              (dir / "truth.json").string() + " --out " + (dir / "score.json").string()) == 0);
    auto j = nlohmann::json::parse(slurp(dir / "score.json"));
    CHECK(j.at("score").get<double>() >= 0.0);
}

TEST_CASE("sweep writes per-dim artifacts and criterion reports") {
    auto dir = fresh_dir("sweep");
    CHECK(run("--seed 5 synth --s-w 5 --s-c 6 --n 3000 --random-questions 0 --out-truth " +
              (dir / "truth.json").string() + " --out-pairs " +
              (dir / "pairs.csv").string()) == 0);
    auto out = (dir / "out").string();
    const std::string sweep = "--seed 5 sweep --pairs " + (dir / "pairs.csv").string() +
                              " --model osg --dims 2 3 --epochs 3 --s 40 --exhaustive"
                              " --steps 5 --out-dir " + out;
    CHECK(run(sweep) == 0);
    for (const char* f : {"d2.params.bin", "d3.params.bin", "d2.snml.csv", "aic.json",
                          "bic.json", "cv.json", "snml.json", "manifest.json"})
        CHECK(fs::exists(fs::path(out) / f));

    auto report = sgsel::load_report_json(out + "/snml.json");
    REQUIRE(report.values.size() == 2);
    CHECK((report.chosen_dim == 2 || report.chosen_dim == 3));

    std::string snml_first = slurp(fs::path(out) / "snml.json");
    CHECK(run(sweep) == 0);
    CHECK(slurp(fs::path(out) / "snml.json") == snml_first);

    // curve against the SNML-best dim is emitted for the other dim
    int other = report.chosen_dim == 2 ? 3 : 2;
    CHECK(fs::exists(fs::path(out) / ("curve_d" + std::to_string(other) + "_vs_d" +
                                      std::to_string(report.chosen_dim) + ".csv")));
}

TEST_CASE("report recomputes the argmin from report files") {
    auto dir = fresh_dir("report");
    sgsel::CriterionReport a;
    a.criterion = sgsel::Criterion::SNML;
    a.values = {{2, 5.0}, {4, 3.5}};
    sgsel::save_report_json((dir / "a.json").string(), a);
    sgsel::CriterionReport b;
    b.criterion = sgsel::Criterion::SNML;
    b.values = {{6, 4.0}};
    sgsel::save_report_json((dir / "b.json").string(), b);

    CHECK(run("report --values " + (dir / "a.json").string() + " " +
              (dir / "b.json").string() + " --out " + (dir / "merged.json").string()) == 0);
    auto merged = sgsel::load_report_json((dir / "merged.json").string());
    CHECK(merged.chosen_dim == 4);
    CHECK(merged.values.size() == 3);
}

TEST_CASE("input errors exit with code 2") {
    auto dir = fresh_dir("err");
    {
        std::ofstream out(dir / "pairs.csv");
        out << "word,context\n0,1\n1,0\n";
    }
    CHECK(run("train --pairs " + (dir / "pairs.csv").string() +
              " --model nosuch --dim 2 --out " + (dir / "x.bin").string()) == 2);
    CHECK(run("sweep --pairs " + (dir / "pairs.csv").string() +
              " --dims 2 3 --only nosuch --out-dir " + (dir / "o").string()) == 2);

    sgsel::save_params((dir / "p.bin").string(), sgsel::init_params(2, 2, 2, 0.1, 1),
                       sgsel::ModelKind::oSG);
    CHECK(run("eval --params " + (dir / "p.bin").string() + " --task nosuch --data " +
              (dir / "pairs.csv").string() + " --out " + (dir / "s.json").string()) == 2);
}
