#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "corruptnet/graph.hpp"
#include "corruptnet/report.hpp"

namespace corruptnet {

enum class Label : uint8_t { Truthful, Corrupt, Unknown };
enum class Provenance : uint8_t { None, GiantComponent, Disambiguation, NeighborPropagation };
enum class DetectMode { Fast, General, Connected };

struct DetectionResult {
    std::vector<Label> labels;
    std::vector<Provenance> provenance;
    DetectMode mode_used = DetectMode::General;
    bool fell_back = false; // fast requested but no majority component

    int unknown_count() const;
    int labeled_count() const { return static_cast<int>(labels.size()) - unknown_count(); }
};

// The spanning subgraph of G that keeps mutually-confirmed trust:
// undirected - edges whose two verdicts are both Truthful; directed -
// edges whose verdict is Truthful.
Graph agreement_graph(const Graph& g, const ReportSet& r);

// Auxiliary weighted graph on agreement-graph components: weight
// |V_i| / n, adjacency from G-edges between distinct components. Weights
// are compared through integer sizes to avoid float drift.
struct ComponentWeights {
    int total = 0;
    std::vector<int> sizes;
    std::vector<std::vector<int>> adj; // sorted, deduplicated

    int count() const { return static_cast<int>(sizes.size()); }
    double weight(int i) const { return static_cast<double>(sizes[i]) / total; }
};

ComponentWeights component_weights(const Graph& g, const ComponentPartition& parts);

// Exact maximum-weight independent set containing `forced`; branch and
// bound with the remaining-weight upper bound. Ties broken toward the
// lexicographically smallest member set.
struct MwisResult {
    long size_sum = 0;
    double weight = 0.0;
    std::vector<int> members; // sorted
};

MwisResult max_weight_independent_set_containing(const ComponentWeights& s, int forced);

struct DetectOptions {
    // Node budget for the directed general-mode consistency search.
    long long search_budget = 1'000'000;
};

// Undirected detector. fast assumes |T| > (1/2+delta)n and is linear;
// general assumes |T| > |B| on a delta-good expander and may be
// exponential (component disambiguation via independent sets). Vertices
// never guessed: labels are Unknown when the algorithm cannot be certain
// under its preconditions. Throws InstanceError when the instance
// witnesses a precondition violation.
DetectionResult detect_undirected(const Graph& g, const ReportSet& r, DetectMode mode,
                                  double delta, const DetectOptions& options = {});

// Directed analogue (SCCs; disambiguation via a consistency search over
// unions of SCCs, constraint propagation plus bounded branching).
DetectionResult detect_directed(const Graph& g, const ReportSet& r, DetectMode mode,
                                double delta, const DetectOptions& options = {});

// Dispatch on g.directed for fast/general.
DetectionResult detect(const Graph& g, const ReportSet& r, DetectMode mode,
                       double delta, const DetectOptions& options = {});

// Weak-connectivity detector: the union of agreement-graph components of
// size >= eps*n. Under eps-connectedness and |T| = (1-eps)n this is a
// subset of T of size >= (1-2eps)n. May return an empty set.
std::vector<int> detect_connected(const Graph& g, const ReportSet& r, double eps);

// Information-theoretic oracle: a vertex is labeled iff it has the same
// type in every consistent world with |T| >= min_truthful (default:
// strict majority, the |T| > |B| prior). Impossibility fixtures pass the
// weaker prior they are built for. If no consistent world exists,
// everything is Unknown and the flag is set. Exponential; bounded like
// enumerate_consistent.
struct CertainLabels {
    std::vector<Label> labels;
    bool no_consistent_world = false;
};

struct CertainOptions {
    std::optional<int> min_truthful; // default: floor(n/2) + 1
    int oracle_bound = 25;
};

CertainLabels certain_labels(const Graph& g, const ReportSet& r, CertainOptions opts = {});

std::string to_string(Label l);
std::string to_string(Provenance p);
std::string to_string(DetectMode m);

} // namespace corruptnet
