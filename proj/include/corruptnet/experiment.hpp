#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "corruptnet/detect.hpp"
#include "corruptnet/generate.hpp"
#include "corruptnet/graph.hpp"

namespace corruptnet {

// Batch experiment: one graph, many (world, adversary, detect) trials with
// all randomness derived from (base seed, trial index).
struct ExperimentConfig {
    std::optional<GenSpec> graph_spec;
    std::optional<std::string> graph_file;
    std::optional<long> t_count;      // |T| as a count...
    std::optional<double> t_fraction; // ...or as a fraction of n
    std::string adversary = "collude-praise"; // mirror-confusion | collude-praise | all-accuse | random
    DetectMode mode = DetectMode::General;
    double delta = 0.1;
    int trials = 1;
    uint64_t seed = 0;
};

struct TrialRecord {
    long n = 0, m = 0, d = 0;
    double delta = 0.0;
    std::string adversary;
    int trial = 0;
    long t_size = 0;
    bool sound = true;      // no emitted label contradicts the ground truth
    double coverage = 0.0;  // labeled fraction; 0 when the trial errored
    std::string error;      // empty on success
    long runtime_ms = 0;
    uint64_t seed = 0;
};

struct ExperimentSummary {
    int trials = 0;
    int errored = 0;
    double soundness_rate = 1.0;
    double min_coverage = 0.0;
    double mean_coverage = 0.0;
    long runtime_p50_ms = 0;
    long runtime_p90_ms = 0;
    long runtime_max_ms = 0;
};

struct ExperimentResult {
    std::vector<TrialRecord> records; // ordered by trial index
    ExperimentSummary summary;
};

ExperimentResult run_experiment(const ExperimentConfig& cfg);

// Fixed, versioned column set:
//   n,m,d,delta,adversary,trial,T_size,sound,coverage,error,runtime_ms,seed
// runtime_ms is written as 0 unless include_timing is set, so default
// output is byte-identical across reruns of the same seed.
std::string to_csv(const std::vector<TrialRecord>& records, bool include_timing);
std::string to_json(const std::vector<TrialRecord>& records, const ExperimentSummary& summary,
                    bool include_timing);
std::string summary_text(const ExperimentSummary& s);

} // namespace corruptnet
