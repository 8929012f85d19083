#include "corruptnet/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <sstream>

#include <nlohmann/json.hpp>

#include "corruptnet/errors.hpp"
#include "corruptnet/report.hpp"
#include "corruptnet/rng.hpp"

namespace corruptnet {

namespace {

std::vector<int> sample_truthful(int n, long t, Rng& rng) {
    std::vector<int> ids(n);
    std::iota(ids.begin(), ids.end(), 0);
    for (long i = 0; i < t; ++i) {
        const long j = i + static_cast<long>(rng.below(n - i));
        std::swap(ids[i], ids[j]);
    }
    ids.resize(t);
    std::sort(ids.begin(), ids.end());
    return ids;
}

Adversary make_adversary(const std::string& name, uint64_t seed) {
    if (name == "mirror-confusion") return Adversary::mirror_confusion();
    if (name == "collude-praise") return Adversary::collude_praise();
    if (name == "all-accuse") return Adversary::all_accuse();
    if (name == "random") return Adversary::random_verdicts(seed);
    throw UsageError("unknown experiment adversary: " + name);
}

std::string error_code(const std::exception& e) {
    if (const auto* inst = dynamic_cast<const InstanceError*>(&e)) {
        switch (inst->kind()) {
        case InstanceError::Kind::NoLargeComponent: return "no-large-component";
        case InstanceError::Kind::AmbiguousInstance: return "ambiguous-instance";
        case InstanceError::Kind::ImpossibleInstance: return "impossible-instance";
        }
    }
    if (dynamic_cast<const BudgetExceededError*>(&e)) return "budget-exceeded";
    return "usage-error";
}

} // namespace

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
    if (cfg.trials < 1) throw UsageError("trials must be >= 1");
    if (cfg.graph_spec.has_value() == cfg.graph_file.has_value())
        throw UsageError("configure exactly one graph source (spec or file)");
    if (cfg.t_count.has_value() == cfg.t_fraction.has_value())
        throw UsageError("configure exactly one of |T| count or fraction");

    const Graph g = cfg.graph_spec ? generate(*cfg.graph_spec) : load_graph(*cfg.graph_file);
    const long t = cfg.t_count ? *cfg.t_count
                               : std::llround(*cfg.t_fraction * static_cast<double>(g.n));
    if (t < 0 || t > g.n) throw UsageError("|T| out of range");
    long max_degree = 0;
    for (int v = 0; v < g.n; ++v) max_degree = std::max(max_degree, static_cast<long>(g.degree(v)));

    ExperimentResult result;
    result.records.reserve(cfg.trials);
    std::vector<double> coverages;
    std::vector<long> runtimes;
    int sound_trials = 0;

    for (int trial = 0; trial < cfg.trials; ++trial) {
        const uint64_t trial_seed = mix_seed(cfg.seed, trial);
        Rng world_rng(mix_seed(trial_seed, 1));
        const World world = World::from_truthful(g.n, sample_truthful(g.n, t, world_rng));
        const Adversary adv = make_adversary(cfg.adversary, mix_seed(trial_seed, 2));

        TrialRecord rec;
        rec.n = g.n;
        rec.m = g.edge_count();
        rec.d = max_degree;
        rec.delta = cfg.delta;
        rec.adversary = cfg.adversary;
        rec.trial = trial;
        rec.t_size = t;
        rec.seed = trial_seed;

        const auto start = std::chrono::steady_clock::now();
        try {
            const ReportSet reports = generate_reports(g, world, adv);
            const DetectionResult detection = detect(g, reports, cfg.mode, cfg.delta);
            rec.coverage = static_cast<double>(detection.labeled_count()) / std::max(g.n, 1);
            rec.sound = true;
            for (int v = 0; v < g.n; ++v) {
                if (detection.labels[v] == Label::Unknown) continue;
                const bool says_corrupt = detection.labels[v] == Label::Corrupt;
                if (says_corrupt != world.is_corrupt(v)) {
                    rec.sound = false;
                    break;
                }
            }
            coverages.push_back(rec.coverage);
        } catch (const std::exception& e) {
            // An error emits no labels: vacuously sound, zero coverage.
            rec.error = error_code(e);
            rec.sound = true;
            rec.coverage = 0.0;
        }
        const auto stop = std::chrono::steady_clock::now();
        rec.runtime_ms =
            std::chrono::duration_cast<std::chrono::milliseconds>(stop - start).count();
        runtimes.push_back(rec.runtime_ms);
        if (rec.sound) ++sound_trials;
        if (!rec.error.empty()) ++result.summary.errored;
        result.records.push_back(std::move(rec));
    }

    auto& s = result.summary;
    s.trials = cfg.trials;
    s.soundness_rate = static_cast<double>(sound_trials) / cfg.trials;
    if (!coverages.empty()) {
        s.min_coverage = *std::min_element(coverages.begin(), coverages.end());
        s.mean_coverage =
            std::accumulate(coverages.begin(), coverages.end(), 0.0) / coverages.size();
    }
    std::sort(runtimes.begin(), runtimes.end());
    s.runtime_p50_ms = runtimes[runtimes.size() / 2];
    s.runtime_p90_ms = runtimes[runtimes.size() * 9 / 10];
    s.runtime_max_ms = runtimes.back();
    return result;
}

std::string to_csv(const std::vector<TrialRecord>& records, bool include_timing) {
    std::ostringstream out;
    out << "n,m,d,delta,adversary,trial,T_size,sound,coverage,error,runtime_ms,seed\n";
    for (const auto& r : records) {
        out << r.n << ',' << r.m << ',' << r.d << ',' << r.delta << ',' << r.adversary << ','
            << r.trial << ',' << r.t_size << ',' << (r.sound ? 1 : 0) << ',' << r.coverage << ','
            << r.error << ',' << (include_timing ? r.runtime_ms : 0) << ',' << r.seed << '\n';
    }
    return out.str();
}

std::string to_json(const std::vector<TrialRecord>& records, const ExperimentSummary& summary,
                    bool include_timing) {
    nlohmann::json j;
    j["records"] = nlohmann::json::array();
    for (const auto& r : records) {
        j["records"].push_back({{"n", r.n},
                                {"m", r.m},
                                {"d", r.d},
                                {"delta", r.delta},
                                {"adversary", r.adversary},
                                {"trial", r.trial},
                                {"T_size", r.t_size},
                                {"sound", r.sound},
                                {"coverage", r.coverage},
                                {"error", r.error},
                                {"runtime_ms", include_timing ? r.runtime_ms : 0},
                                {"seed", r.seed}});
    }
    j["summary"] = {{"trials", summary.trials},
                    {"errored", summary.errored},
                    {"soundness_rate", summary.soundness_rate},
                    {"min_coverage", summary.min_coverage},
                    {"mean_coverage", summary.mean_coverage}};
    if (include_timing) {
        j["summary"]["runtime_p50_ms"] = summary.runtime_p50_ms;
        j["summary"]["runtime_p90_ms"] = summary.runtime_p90_ms;
        j["summary"]["runtime_max_ms"] = summary.runtime_max_ms;
    }
    return j.dump(2) + "\n";
}

std::string summary_text(const ExperimentSummary& s) {
    std::ostringstream out;
    out << "trials=" << s.trials << " errored=" << s.errored
        << " soundness=" << s.soundness_rate << " coverage[min=" << s.min_coverage
        << " mean=" << s.mean_coverage << "] runtime_ms[p50=" << s.runtime_p50_ms
        << " p90=" << s.runtime_p90_ms << " max=" << s.runtime_max_ms << "]";
    return out.str();
}

} // namespace corruptnet
