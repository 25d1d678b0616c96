#include "sgsel/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace sgsel {

double aic(double log_lik, int d, int s_w, int s_c) {
    double k = static_cast<double>(s_w) * d + static_cast<double>(d) * s_c;
    return 2.0 * k - 2.0 * log_lik;
}

double bic(double log_lik, std::int64_t n, int d, int s_w, int s_c) {
    if (n < 1) throw std::invalid_argument("bic: n must be >= 1");
    double k = static_cast<double>(s_w) * d + static_cast<double>(d) * s_c;
    return std::log(static_cast<double>(n)) * k - 2.0 * log_lik;
}

double cv_loss(const SkipGramParams& params, const PairStream& holdout, ModelKind kind) {
    if (holdout.empty()) throw std::invalid_argument("cv_loss: empty holdout");
    double total = 0.0;
    for (const auto& rec : holdout.records)
        total -= kind == ModelKind::oSG ? osg_log_prob(params, rec.word, rec.context)
                                        : sgns_log_prob(params, rec);
    return total / static_cast<double>(holdout.size());
}

namespace {

// One plain gradient step on a single oSG record, touching E[w] and F in
// place. e points at the row of the word, f at the full F matrix.
void osg_step_inplace(double* e, double* f, int d, int s_c, int c_obs, double lr,
                      std::vector<double>& probs, std::vector<double>& e_old) {
    probs.assign(s_c, 0.0);
    for (int k = 0; k < d; ++k) {
        const double ek = e[k];
        const double* frow = f + static_cast<std::size_t>(k) * s_c;
        for (int c = 0; c < s_c; ++c) probs[c] += ek * frow[c];
    }
    double mx = *std::max_element(probs.begin(), probs.end());
    double z = 0.0;
    for (auto& x : probs) {
        x = std::exp(x - mx);
        z += x;
    }
    for (auto& x : probs) x /= z;
    probs[c_obs] -= 1.0;

    e_old.assign(e, e + d);
    for (int k = 0; k < d; ++k) {
        double* frow = f + static_cast<std::size_t>(k) * s_c;
        double acc = 0.0;
        const double lr_e = lr * e_old[k];
        for (int c = 0; c < s_c; ++c) {
            acc += frow[c] * probs[c];
            frow[c] -= lr_e * probs[c];
        }
        e[k] -= lr * acc;
    }
}

// One plain gradient step on a single SGNS labeling (positive slot + the
// remaining slots as negatives), touching E[w] and the slot columns of F.
void sgns_step_inplace(double* e, double* f, int d, int s_c, int pos,
                       const std::vector<int>& negs, double lr,
                       std::vector<double>& ge, std::vector<double>& e_old) {
    ge.assign(d, 0.0);
    e_old.assign(e, e + d);
    auto touch = [&](int c, bool positive) {
        double s = 0.0;
        for (int k = 0; k < d; ++k) s += e_old[k] * f[static_cast<std::size_t>(k) * s_c + c];
        double g = 1.0 / (1.0 + std::exp(-s)) - (positive ? 1.0 : 0.0);
        for (int k = 0; k < d; ++k) {
            ge[k] += g * f[static_cast<std::size_t>(k) * s_c + c];
            f[static_cast<std::size_t>(k) * s_c + c] -= lr * g * e_old[k];
        }
    };
    touch(pos, true);
    for (int z : negs) touch(z, false);
    for (int k = 0; k < d; ++k) e[k] -= lr * ge[k];
}

// log P(c_eval | w) after `steps` gradient steps on (w, c_train), evaluated
// on scratch copies so the base params stay intact.
double osg_adapted_log_prob(const SkipGramParams& base, int w, int c_train, int c_eval,
                            int steps, double lr, std::vector<double>& e_buf,
                            std::vector<double>& f_buf, std::vector<double>& probs,
                            std::vector<double>& e_old) {
    const int d = base.d, s_c = base.s_c;
    e_buf.assign(base.e_row(w), base.e_row(w) + d);
    f_buf = base.F;
    for (int s = 0; s < steps; ++s)
        osg_step_inplace(e_buf.data(), f_buf.data(), d, s_c, c_train, lr, probs, e_old);

    double lc = 0.0, mx = -1e300;
    probs.assign(s_c, 0.0);
    for (int k = 0; k < d; ++k) {
        const double ek = e_buf[k];
        const double* frow = f_buf.data() + static_cast<std::size_t>(k) * s_c;
        for (int c = 0; c < s_c; ++c) probs[c] += ek * frow[c];
    }
    for (double x : probs) mx = std::max(mx, x);
    double z = 0.0;
    for (double x : probs) z += std::exp(x - mx);
    lc = probs[c_eval] - mx - std::log(z);
    return lc;
}

} // namespace

SkipGramParams warm_start(const SkipGramParams& params_prev, const PairRecord& rec,
                          int steps, double lr, ModelKind kind) {
    if (steps < 0) throw std::invalid_argument("warm_start: steps must be >= 0");
    SkipGramParams p = params_prev;
    std::vector<double> scratch_a, scratch_b;
    double* e = p.e_row(rec.word);
    for (int s = 0; s < steps; ++s) {
        if (kind == ModelKind::oSG)
            osg_step_inplace(e, p.F.data(), p.d, p.s_c, rec.context, lr, scratch_a, scratch_b);
        else
            sgns_step_inplace(e, p.F.data(), p.d, p.s_c, rec.context, rec.negatives, lr,
                              scratch_a, scratch_b);
    }
    return p;
}

double pc_estimate(const std::function<double(int)>& f, const std::vector<double>& proposal,
                   int m, bool exhaustive, Rng& rng) {
    const int s_c = static_cast<int>(proposal.size());
    if (exhaustive) {
        double sum = 0.0;
        for (int c = 0; c < s_c; ++c) sum += f(c);
        return sum;
    }
    if (m < 1) throw std::invalid_argument("pc_estimate: m must be >= 1");
    for (double q : proposal)
        if (!(q > 0.0)) throw std::invalid_argument("pc_estimate: proposal must be positive everywhere");
    std::discrete_distribution<int> pick(proposal.begin(), proposal.end());
    double acc = 0.0;
    for (int i = 0; i < m; ++i) {
        int c = pick(rng);
        acc += f(c) / proposal[c];
    }
    return acc / static_cast<double>(m);
}

SnmlRecord snml_record_osg(const SkipGramParams& params_prev, int w, int c_obs,
                           const ISConfig& sampler, int steps, double lr, Rng& rng) {
    const int s_c = params_prev.s_c;
    if (w < 0 || w >= params_prev.s_w || c_obs < 0 || c_obs >= s_c)
        throw std::invalid_argument("snml_record_osg: index out of range");
    if (sampler.m < 1 && !sampler.exhaustive)
        throw std::invalid_argument("snml_record_osg: sampler m must be >= 1");

    std::vector<double> e_buf, f_buf, probs, e_old;
    auto f = [&](int c) {
        double lp = osg_adapted_log_prob(params_prev, w, c, c, steps, lr, e_buf, f_buf,
                                         probs, e_old);
        double v = std::exp(lp);
        if (!std::isfinite(v))
            throw std::runtime_error("snml_record_osg: non-finite term at candidate context " +
                                     std::to_string(c));
        return v;
    };

    SnmlRecord out;
    out.numerator = -osg_adapted_log_prob(params_prev, w, c_obs, c_obs, steps, lr, e_buf,
                                          f_buf, probs, e_old);

    const bool exact = sampler.exact_for(s_c);
    std::vector<double> uniform_q(s_c, 1.0 / static_cast<double>(s_c));
    double denom = pc_estimate(f, uniform_q, sampler.m, exact, rng);
    if (!(denom > 0.0) || !std::isfinite(denom))
        throw std::runtime_error("snml_record_osg: non-positive denominator estimate");
    out.log_denominator = std::log(denom);
    out.codelength = out.numerator + out.log_denominator;
    return out;
}

SnmlRecord snml_record_sgns(const SkipGramParams& params_prev, const PairRecord& rec,
                            int steps, double lr, int outcome_slots) {
    const int s_z = static_cast<int>(rec.negatives.size());
    if (s_z < 1) throw std::invalid_argument("snml_record_sgns: record has no negatives");
    const int n_slots = s_z + 1;
    int n_outcomes = outcome_slots < 0 ? n_slots : outcome_slots;
    if (n_outcomes < 1 || n_outcomes > n_slots)
        throw std::invalid_argument("snml_record_sgns: invalid outcome slot count");

    std::vector<int> slots(n_slots);
    slots[0] = rec.context;
    for (int j = 0; j < s_z; ++j) slots[j + 1] = rec.negatives[j];

    std::vector<double> e_buf, ge, e_old, f_buf;
    const int d = params_prev.d, s_c = params_prev.s_c;

    // P(positive at slot k) under params warm-started on that labeling
    auto outcome_prob = [&](int k) {
        e_buf.assign(params_prev.e_row(rec.word), params_prev.e_row(rec.word) + d);
        f_buf = params_prev.F;
        std::vector<int> negs;
        negs.reserve(n_slots - 1);
        for (int j = 0; j < n_slots; ++j)
            if (j != k) negs.push_back(slots[j]);
        for (int s = 0; s < steps; ++s)
            sgns_step_inplace(e_buf.data(), f_buf.data(), d, s_c, slots[k], negs, lr,
                              ge, e_old);
        auto score = [&](int c) {
            double v = 0.0;
            for (int kk = 0; kk < d; ++kk)
                v += e_buf[kk] * f_buf[static_cast<std::size_t>(kk) * s_c + c];
            return v;
        };
        double lp = log_sigmoid(score(slots[k]));
        for (int c : negs) lp += log_sigmoid(-score(c));
        return lp;
    };

    SnmlRecord out;
    double lp_obs = outcome_prob(0);
    out.numerator = -lp_obs;
    double denom = 0.0;
    for (int k = 0; k < n_outcomes; ++k)
        denom += std::exp(k == 0 ? lp_obs : outcome_prob(k));
    out.log_denominator = std::log(denom);
    out.codelength = out.numerator + out.log_denominator;
    return out;
}

CodelengthLedger snml_tail(const PairStream& stream, SkipGramParams params_at_tail,
                           std::int64_t s, const ISConfig& sampler, ModelKind kind,
                           int steps, double lr, std::uint64_t seed) {
    const auto n = static_cast<std::int64_t>(stream.size());
    if (s < 0 || s > n) throw std::invalid_argument("snml_tail: s out of range");

    CodelengthLedger ledger;
    ledger.dim = params_at_tail.d;
    ledger.records_used = s;
    ledger.sampler_size = sampler.m;
    ledger.seed = seed;

    Rng rng(seed);
    double running = 0.0;
    for (std::int64_t i = n - s; i < n; ++i) {
        const auto& rec = stream.records[static_cast<std::size_t>(i)];
        SnmlRecord r;
        try {
            r = kind == ModelKind::oSG
                    ? snml_record_osg(params_at_tail, rec.word, rec.context, sampler, steps,
                                      lr, rng)
                    : snml_record_sgns(params_at_tail, rec, steps, lr);
        } catch (const std::exception& e) {
            throw std::runtime_error("snml_tail: record " + std::to_string(i) + ": " + e.what());
        }
        running += r.codelength;
        ledger.per_record.push_back(r.codelength);
        ledger.cumulative.push_back(running);
        // sequential plug-in advance on the observed record
        params_at_tail = warm_start(params_at_tail, rec, steps, lr, kind);
    }
    return ledger;
}

std::string to_string(Criterion c) {
    switch (c) {
        case Criterion::AIC: return "AIC";
        case Criterion::BIC: return "BIC";
        case Criterion::CV: return "CV";
        default: return "SNML";
    }
}

CriterionReport select_dimension(Criterion criterion, const std::map<int, double>& values) {
    if (values.empty()) throw std::invalid_argument("select_dimension: empty value map");
    CriterionReport report;
    report.criterion = criterion;
    report.values = values;
    auto best = values.begin();
    for (auto it = std::next(values.begin()); it != values.end(); ++it)
        if (it->second < best->second) best = it; // strict: ties keep the smaller dim
    report.chosen_dim = best->first;
    return report;
}

void save_ledger_csv(const std::string& path, const CodelengthLedger& ledger) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for write: " + path);
    out.precision(17);
    out << "record_index,codelength_nats,cumulative_nats\n";
    for (std::size_t i = 0; i < ledger.per_record.size(); ++i)
        out << i << ',' << ledger.per_record[i] << ',' << ledger.cumulative[i] << '\n';
}

CodelengthLedger load_ledger_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open: " + path);
    CodelengthLedger ledger;
    std::string line;
    std::getline(in, line); // header
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string idx, per, cum;
        std::getline(ls, idx, ',');
        std::getline(ls, per, ',');
        std::getline(ls, cum, ',');
        ledger.per_record.push_back(std::stod(per));
        ledger.cumulative.push_back(std::stod(cum));
    }
    ledger.records_used = static_cast<std::int64_t>(ledger.per_record.size());
    return ledger;
}

void save_report_json(const std::string& path, const CriterionReport& report) {
    nlohmann::json j;
    j["criterion"] = to_string(report.criterion);
    auto& jv = j["values"] = nlohmann::json::object();
    for (const auto& [dim, v] : report.values) jv[std::to_string(dim)] = v;
    j["chosen_dim"] = report.chosen_dim;
    j["n"] = report.n;
    j["s"] = report.s;
    j["m"] = report.m;
    j["seeds"] = report.seeds;
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for write: " + path);
    out << j.dump(2) << '\n';
}

CriterionReport load_report_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open: " + path);
    nlohmann::json j;
    in >> j;
    CriterionReport report;
    const std::string name = j.at("criterion").get<std::string>();
    report.criterion = name == "AIC"   ? Criterion::AIC
                       : name == "BIC" ? Criterion::BIC
                       : name == "CV"  ? Criterion::CV
                                       : Criterion::SNML;
    for (const auto& [k, v] : j.at("values").items())
        report.values[std::stoi(k)] = v.get<double>();
    report.chosen_dim = j.at("chosen_dim").get<int>();
    report.n = j.value("n", std::int64_t{0});
    report.s = j.value("s", std::int64_t{0});
    report.m = j.value("m", 0);
    if (j.contains("seeds")) report.seeds = j["seeds"].get<std::vector<std::uint64_t>>();
    return report;
}

} // namespace sgsel
