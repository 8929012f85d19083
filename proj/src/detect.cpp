#include "corruptnet/detect.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>
#include <sstream>

#include "corruptnet/errors.hpp"
#include "corruptnet/thresholds.hpp"

namespace corruptnet {

int DetectionResult::unknown_count() const {
    return static_cast<int>(std::count(labels.begin(), labels.end(), Label::Unknown));
}

Graph agreement_graph(const Graph& g, const ReportSet& r) {
    if (!r.shape_matches(g)) throw UsageError("report set does not match the graph");
    Graph h;
    h.n = g.n;
    h.directed = g.directed;
    h.adj.resize(g.n);
    if (g.directed) {
        for (int u = 0; u < g.n; ++u)
            for (size_t i = 0; i < g.adj[u].size(); ++i)
                if (r.verdicts[u][i] == Verdict::Truthful) {
                    h.adj[u].push_back(g.adj[u][i]);
                    h.edges.emplace_back(u, g.adj[u][i]);
                }
        return h;
    }
    // Reverse verdicts in one pass: sweeping sources in ascending order
    // fills each adjacency list in ascending neighbor order, so a cursor
    // per vertex lands on the right slot.
    std::vector<std::vector<Verdict>> rev(g.n);
    std::vector<size_t> cursor(g.n, 0);
    for (int u = 0; u < g.n; ++u) rev[u].resize(g.adj[u].size());
    for (int v = 0; v < g.n; ++v)
        for (size_t j = 0; j < g.adj[v].size(); ++j) {
            const int u = g.adj[v][j];
            rev[u][cursor[u]++] = r.verdicts[v][j];
        }
    for (int u = 0; u < g.n; ++u)
        for (size_t i = 0; i < g.adj[u].size(); ++i)
            if (r.verdicts[u][i] == Verdict::Truthful && rev[u][i] == Verdict::Truthful) {
                h.adj[u].push_back(g.adj[u][i]);
                if (u < g.adj[u][i]) h.edges.emplace_back(u, g.adj[u][i]);
            }
    return h;
}

ComponentWeights component_weights(const Graph& g, const ComponentPartition& parts) {
    ComponentWeights s;
    s.total = g.n;
    s.sizes.resize(parts.count());
    for (int i = 0; i < parts.count(); ++i) s.sizes[i] = static_cast<int>(parts.components[i].size());
    s.adj.resize(parts.count());
    for (const auto& [u, v] : g.edges) {
        const int a = parts.component_id[u];
        const int b = parts.component_id[v];
        if (a == b) continue;
        s.adj[a].push_back(b);
        s.adj[b].push_back(a);
    }
    for (auto& nbrs : s.adj) {
        std::sort(nbrs.begin(), nbrs.end());
        nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
    }
    return s;
}

namespace {

struct MwisSearch {
    const ComponentWeights& s;
    std::vector<int> candidates;
    std::vector<long> suffix; // upper bound on what the tail can still add
    std::vector<int> banned;  // exclusion counters
    std::vector<int> chosen;
    long best_sum = -1;
    std::vector<int> best_set;

    explicit MwisSearch(const ComponentWeights& s) : s(s), banned(s.count(), 0) {}

    void dfs(size_t idx, long sum) {
        if (sum + suffix[idx] <= best_sum) return; // cannot beat the incumbent
        if (idx == candidates.size()) {
            if (sum > best_sum) {
                best_sum = sum;
                best_set = chosen;
            }
            return;
        }
        const int v = candidates[idx];
        if (banned[v] == 0) {
            chosen.push_back(v);
            for (int w : s.adj[v]) ++banned[w];
            dfs(idx + 1, sum + s.sizes[v]);
            for (int w : s.adj[v]) --banned[w];
            chosen.pop_back();
        }
        dfs(idx + 1, sum);
    }
};

} // namespace

MwisResult max_weight_independent_set_containing(const ComponentWeights& s, int forced) {
    if (forced < 0 || forced >= s.count()) throw UsageError("forced component id out of range");
    MwisSearch search(s);
    search.chosen.push_back(forced);
    for (int w : s.adj[forced]) ++search.banned[w];
    for (int v = 0; v < s.count(); ++v)
        if (v != forced) search.candidates.push_back(v);
    // Ascending candidate order with include-first exploration makes the
    // first optimum found the lexicographically smallest one.
    search.suffix.assign(search.candidates.size() + 1, 0);
    for (size_t i = search.candidates.size(); i-- > 0;)
        search.suffix[i] = search.suffix[i + 1] + s.sizes[search.candidates[i]];
    search.dfs(0, s.sizes[forced]);

    MwisResult result;
    result.size_sum = search.best_sum;
    result.weight = s.total > 0 ? static_cast<double>(search.best_sum) / s.total : 0.0;
    result.members = search.best_set;
    std::sort(result.members.begin(), result.members.end());
    return result;
}

namespace {

struct Labeling {
    std::vector<Label> labels;
    std::vector<Provenance> provenance;

    explicit Labeling(int n)
        : labels(n, Label::Unknown), provenance(n, Provenance::None) {}

    void set(int v, Label l, Provenance p) {
        labels[v] = l;
        provenance[v] = p;
    }
};

// Closure propagation from truthful-labeled seeds: a truthful vertex's
// verdicts label its (out-)neighbors; vertices it certifies truthful
// propagate in turn. A conflicting assignment witnesses a precondition
// violation.
void propagate_from_truthful(const Graph& g, const ReportSet& r, Labeling& out) {
    std::vector<int> queue;
    for (int v = 0; v < g.n; ++v)
        if (out.labels[v] == Label::Truthful) queue.push_back(v);
    size_t head = 0;
    while (head < queue.size()) {
        const int u = queue[head++];
        for (size_t i = 0; i < g.adj[u].size(); ++i) {
            const int v = g.adj[u][i];
            const Label said =
                r.verdicts[u][i] == Verdict::Truthful ? Label::Truthful : Label::Corrupt;
            if (out.labels[v] == Label::Unknown) {
                out.set(v, said, Provenance::NeighborPropagation);
                if (said == Label::Truthful) queue.push_back(v);
            } else if (out.labels[v] != said) {
                throw InstanceError::ambiguous(
                    "conflicting propagation at vertex " + std::to_string(v) +
                    ": the instance violates the detector's preconditions");
            }
        }
    }
}

std::vector<int> qualifying_components(const ComponentPartition& parts, int n, long slack) {
    // size >= (n - slack) / 2, evaluated as 2*size >= n - slack.
    std::vector<int> ids;
    for (int i = 0; i < parts.count(); ++i)
        if (2 * static_cast<long>(parts.components[i].size()) >= static_cast<long>(n) - slack)
            ids.push_back(i);
    return ids;
}

std::optional<int> majority_component(const ComponentPartition& parts, int n) {
    for (int i = 0; i < parts.count(); ++i)
        if (2 * static_cast<long>(parts.components[i].size()) > n) return i;
    return std::nullopt;
}

void label_component(const ComponentPartition& parts, int id, Label l, Provenance p,
                     Labeling& out) {
    for (int v : parts.components[id]) out.set(v, l, p);
}

// --- directed general mode: Claim 2.8 consistency search --------------------

// Pairwise report relations between SCCs, compressed: for an ordered
// component pair the multiset of verdicts is all-praise, all-accuse, or
// mixed (in which case the source can never be truthful).
struct SccConstraints {
    int count = 0;
    long long n = 0;
    std::vector<long long> sizes;
    std::vector<bool> viable_truthful;
    // arcs[i] = (j, all_praise) for each constrained ordered pair i -> j
    std::vector<std::vector<std::pair<int, bool>>> out_arcs;
    std::vector<std::vector<std::pair<int, bool>>> in_arcs;
};

SccConstraints build_constraints(const Graph& g, const ReportSet& r,
                                 const ComponentPartition& parts) {
    SccConstraints c;
    c.count = parts.count();
    c.n = g.n;
    c.sizes.resize(c.count);
    for (int i = 0; i < c.count; ++i) c.sizes[i] = static_cast<long long>(parts.components[i].size());
    c.viable_truthful.assign(c.count, true);

    std::map<std::pair<int, int>, std::pair<bool, bool>> seen; // pair -> (praise, accuse)
    for (int u = 0; u < g.n; ++u)
        for (size_t k = 0; k < g.adj[u].size(); ++k) {
            const int v = g.adj[u][k];
            const int i = parts.component_id[u];
            const int j = parts.component_id[v];
            const bool praise = r.verdicts[u][k] == Verdict::Truthful;
            if (i == j) {
                // An internal accusation rules out an all-truthful component.
                if (!praise) c.viable_truthful[i] = false;
                continue;
            }
            auto& [saw_praise, saw_accuse] = seen[{i, j}];
            (praise ? saw_praise : saw_accuse) = true;
        }
    c.out_arcs.resize(c.count);
    c.in_arcs.resize(c.count);
    for (const auto& [pair, kinds] : seen) {
        const auto& [i, j] = pair;
        const auto& [saw_praise, saw_accuse] = kinds;
        if (saw_praise && saw_accuse) {
            // Mixed verdicts toward one target: a truthful i is impossible.
            c.viable_truthful[i] = false;
            // A truthful reporter in i would force j both ways; for
            // propagation purposes an accusation edge still binds: if i
            // were truthful... it cannot be. Record as accuse for the
            // backward rule (praise would do equally; i is never T).
            c.out_arcs[i].emplace_back(j, false);
            c.in_arcs[j].emplace_back(i, false);
            c.out_arcs[i].emplace_back(j, true);
            c.in_arcs[j].emplace_back(i, true);
        } else {
            c.out_arcs[i].emplace_back(j, saw_praise);
            c.in_arcs[j].emplace_back(i, saw_praise);
        }
    }
    return c;
}

constexpr uint8_t kUnset = 0, kTruthful = 1, kCorrupt = 2;

// Sets comp -> type and propagates all forced consequences. Returns false
// on contradiction.
bool assign_and_propagate(const SccConstraints& c, std::vector<uint8_t>& state, int comp,
                          uint8_t type) {
    std::vector<std::pair<int, uint8_t>> queue{{comp, type}};
    while (!queue.empty()) {
        const auto [i, t] = queue.back();
        queue.pop_back();
        if (state[i] == t) continue;
        if (state[i] != kUnset) return false;
        if (t == kTruthful && !c.viable_truthful[i]) return false;
        state[i] = t;
        if (t == kTruthful) {
            // Forward: a truthful component's verdicts fix its targets.
            for (const auto& [j, praise] : c.out_arcs[i])
                queue.emplace_back(j, praise ? kTruthful : kCorrupt);
            // Backward: an accuser of a truthful component cannot be truthful.
            for (const auto& [h, praise] : c.in_arcs[i])
                if (!praise) queue.emplace_back(h, kCorrupt);
        } else {
            // Backward: a praiser of a corrupt component cannot be truthful.
            for (const auto& [h, praise] : c.in_arcs[i])
                if (praise) queue.emplace_back(h, kCorrupt);
        }
    }
    return true;
}

struct UnionSearch {
    const SccConstraints& c;
    long long budget;
    std::map<std::vector<uint8_t>, bool> memo;

    UnionSearch(const SccConstraints& c, long long budget) : c(c), budget(budget) {}

    long long truthful_size(const std::vector<uint8_t>& state) const {
        long long total = 0;
        for (int i = 0; i < c.count; ++i)
            if (state[i] == kTruthful) total += c.sizes[i];
        return total;
    }

    // Any state reached by propagation extends consistently with all
    // remaining components corrupt, so a strict majority of committed
    // truthful mass is already a win.
    bool feasible(std::vector<uint8_t> state) {
        if (--budget < 0)
            throw BudgetExceededError("directed consistency search exceeded its work budget");
        const long long committed = truthful_size(state);
        if (2 * committed > c.n) return true;
        long long open = 0;
        for (int i = 0; i < c.count; ++i)
            if (state[i] == kUnset && c.viable_truthful[i]) open += c.sizes[i];
        if (2 * (committed + open) <= c.n) return false;

        const auto it = memo.find(state);
        if (it != memo.end()) return it->second;

        // Branch on the largest open component (smallest id on ties).
        int pick = -1;
        for (int i = 0; i < c.count; ++i)
            if (state[i] == kUnset && c.viable_truthful[i] &&
                (pick == -1 || c.sizes[i] > c.sizes[pick]))
                pick = i;
        bool ok = false;
        if (pick != -1) {
            std::vector<uint8_t> with = state;
            if (assign_and_propagate(c, with, pick, kTruthful) && feasible(std::move(with)))
                ok = true;
            if (!ok) {
                std::vector<uint8_t> without = state;
                if (assign_and_propagate(c, without, pick, kCorrupt) &&
                    feasible(std::move(without)))
                    ok = true;
            }
        }
        memo[state] = ok;
        return ok;
    }

    // Does some report-consistent union of SCCs of total size > n/2
    // contain `comp`?
    bool exists_majority_union_containing(int comp) {
        std::vector<uint8_t> state(c.count, kUnset);
        if (!assign_and_propagate(c, state, comp, kTruthful)) return false;
        return feasible(std::move(state));
    }
};

void validate_detect_inputs(const Graph& g, const ReportSet& r, double delta, bool directed) {
    if (g.directed != directed)
        throw UsageError(directed ? "detect_directed requires a directed graph"
                                  : "detect_undirected requires an undirected graph");
    if (!r.shape_matches(g)) throw UsageError("report set does not match the graph");
    const double upper = directed ? 1.0 / 16 : 1.0 / 8;
    if (!(delta > 0) || !(delta < upper)) {
        std::ostringstream msg;
        msg << "delta " << delta << " out of range (0, " << upper << ")";
        throw UsageError(msg.str());
    }
}

} // namespace

DetectionResult detect_undirected(const Graph& g, const ReportSet& r, DetectMode mode,
                                  double delta, const DetectOptions&) {
    validate_detect_inputs(g, r, delta, false);
    if (mode == DetectMode::Connected)
        throw UsageError("use detect_connected for the connected criterion");
    const Graph h = agreement_graph(g, r);
    const auto parts = connected_components(h);

    Labeling out(g.n);
    DetectionResult result;
    result.mode_used = mode;

    if (mode == DetectMode::Fast) {
        if (const auto giant = majority_component(parts, g.n)) {
            label_component(parts, *giant, Label::Truthful, Provenance::GiantComponent, out);
            propagate_from_truthful(g, r, out);
            result.labels = std::move(out.labels);
            result.provenance = std::move(out.provenance);
            return result;
        }
        // Visible fallback: the fast-path assumption |T| > (1/2+delta)n
        // did not materialize.
        result.fell_back = true;
        result.mode_used = DetectMode::General;
    }

    const auto ids = qualifying_components(parts, g.n, ceil_frac(2 * delta * g.n));
    if (ids.empty())
        throw InstanceError::no_large_component(
            "no agreement component of size >= (1/2-delta)n; assumptions violated");
    if (ids.size() == 1) {
        label_component(parts, ids[0], Label::Truthful, Provenance::GiantComponent, out);
    } else if (ids.size() == 2) {
        const auto weights = component_weights(g, parts);
        const auto first = max_weight_independent_set_containing(weights, ids[0]);
        const auto second = max_weight_independent_set_containing(weights, ids[1]);
        const bool first_large = 2 * first.size_sum > g.n;
        const bool second_large = 2 * second.size_sum > g.n;
        if (first_large == second_large)
            throw InstanceError::ambiguous(
                first_large ? "both large components admit a majority independent set"
                            : "neither large component admits a majority independent set");
        const int winner = first_large ? ids[0] : ids[1];
        const int loser = first_large ? ids[1] : ids[0];
        label_component(parts, winner, Label::Truthful, Provenance::Disambiguation, out);
        label_component(parts, loser, Label::Corrupt, Provenance::Disambiguation, out);
    } else {
        throw InstanceError::ambiguous("more than two components reach the (1/2-delta)n threshold");
    }
    propagate_from_truthful(g, r, out);
    result.labels = std::move(out.labels);
    result.provenance = std::move(out.provenance);
    return result;
}

DetectionResult detect_directed(const Graph& g, const ReportSet& r, DetectMode mode,
                                double delta, const DetectOptions& options) {
    validate_detect_inputs(g, r, delta, true);
    if (mode == DetectMode::Connected)
        throw UsageError("use detect_connected for the connected criterion");
    const Graph h = agreement_graph(g, r);
    const auto parts = strongly_connected_components(h);

    Labeling out(g.n);
    DetectionResult result;
    result.mode_used = mode;

    if (mode == DetectMode::Fast) {
        if (const auto giant = majority_component(parts, g.n)) {
            label_component(parts, *giant, Label::Truthful, Provenance::GiantComponent, out);
            propagate_from_truthful(g, r, out);
            result.labels = std::move(out.labels);
            result.provenance = std::move(out.provenance);
            return result;
        }
        result.fell_back = true;
        result.mode_used = DetectMode::General;
    }

    const auto ids = qualifying_components(parts, g.n, ceil_frac(4 * delta * g.n));
    if (ids.empty())
        throw InstanceError::no_large_component(
            "no agreement SCC of size >= (1/2-2delta)n; assumptions violated");
    if (ids.size() == 1) {
        label_component(parts, ids[0], Label::Truthful, Provenance::GiantComponent, out);
    } else if (ids.size() == 2) {
        const auto constraints = build_constraints(g, r, parts);
        UnionSearch search(constraints, options.search_budget);
        const bool first = search.exists_majority_union_containing(ids[0]);
        const bool second = search.exists_majority_union_containing(ids[1]);
        if (first == second)
            throw InstanceError::ambiguous(
                first ? "both large SCCs extend to consistent majority unions"
                      : "neither large SCC extends to a consistent majority union");
        const int winner = first ? ids[0] : ids[1];
        const int loser = first ? ids[1] : ids[0];
        label_component(parts, winner, Label::Truthful, Provenance::Disambiguation, out);
        label_component(parts, loser, Label::Corrupt, Provenance::Disambiguation, out);
    } else {
        throw InstanceError::ambiguous("more than two SCCs reach the (1/2-2delta)n threshold");
    }
    propagate_from_truthful(g, r, out);
    result.labels = std::move(out.labels);
    result.provenance = std::move(out.provenance);
    return result;
}

DetectionResult detect(const Graph& g, const ReportSet& r, DetectMode mode, double delta,
                       const DetectOptions& options) {
    return g.directed ? detect_directed(g, r, mode, delta, options)
                      : detect_undirected(g, r, mode, delta, options);
}

std::vector<int> detect_connected(const Graph& g, const ReportSet& r, double eps) {
    if (g.directed) throw UsageError("detect_connected requires an undirected graph");
    if (!(eps > 0) || !(eps < 1)) throw UsageError("eps out of range (0, 1)");
    if (!r.shape_matches(g)) throw UsageError("report set does not match the graph");
    const Graph h = agreement_graph(g, r);
    const auto parts = connected_components(h);
    const long threshold = ceil_frac(eps * g.n);
    std::vector<int> result;
    for (int i = 0; i < parts.count(); ++i)
        if (static_cast<long>(parts.components[i].size()) >= threshold)
            result.insert(result.end(), parts.components[i].begin(), parts.components[i].end());
    std::sort(result.begin(), result.end());
    return result;
}

CertainLabels certain_labels(const Graph& g, const ReportSet& r, CertainOptions opts) {
    const int min_truthful = opts.min_truthful.value_or(g.n / 2 + 1);
    uint32_t always_truthful = ~0u, ever_truthful = 0;
    bool any = false;
    for_each_consistent_mask(g, r, min_truthful, opts.oracle_bound, [&](uint32_t mask) {
        any = true;
        always_truthful &= mask;
        ever_truthful |= mask;
        return true;
    });
    CertainLabels result;
    result.labels.assign(g.n, Label::Unknown);
    if (!any) {
        result.no_consistent_world = true;
        return result;
    }
    for (int v = 0; v < g.n; ++v) {
        if (always_truthful >> v & 1)
            result.labels[v] = Label::Truthful;
        else if (!(ever_truthful >> v & 1))
            result.labels[v] = Label::Corrupt;
    }
    return result;
}

std::string to_string(Label l) {
    switch (l) {
    case Label::Truthful: return "T";
    case Label::Corrupt: return "C";
    case Label::Unknown: return "U";
    }
    return "?";
}

std::string to_string(Provenance p) {
    switch (p) {
    case Provenance::None: return "-";
    case Provenance::GiantComponent: return "giant-component";
    case Provenance::Disambiguation: return "disambiguation";
    case Provenance::NeighborPropagation: return "neighbor-propagation";
    }
    return "?";
}

std::string to_string(DetectMode m) {
    switch (m) {
    case DetectMode::Fast: return "fast";
    case DetectMode::General: return "general";
    case DetectMode::Connected: return "connected";
    }
    return "?";
}

} // namespace corruptnet
