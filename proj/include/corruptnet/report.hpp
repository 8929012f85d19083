#pragma once

#include <bit>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "corruptnet/graph.hpp"

namespace corruptnet {

enum class Verdict : uint8_t { Truthful, Corrupt };

// Ground truth: a partition of V into truthful and corrupt vertices.
struct World {
    std::vector<bool> corrupt; // per vertex

    static World from_truthful(int n, const std::vector<int>& truthful_ids);
    static World from_corrupt(int n, const std::vector<int>& corrupt_ids);

    int size() const { return static_cast<int>(corrupt.size()); }
    bool is_corrupt(int v) const { return corrupt[v]; }
    int truthful_count() const;
    int corrupt_count() const { return size() - truthful_count(); }
    std::vector<int> truthful_ids() const;
    std::vector<int> corrupt_ids() const;

    bool operator==(const World&) const = default;
};

// One verdict per ordered inspection pair induced by E. verdicts[u][i] is
// u's report about g.adj[u][i]; for undirected graphs adj lists both
// directions, so each edge carries two verdicts.
struct ReportSet {
    std::vector<std::vector<Verdict>> verdicts;

    Verdict verdict(const Graph& g, int u, int v) const; // lookup by edge
    bool shape_matches(const Graph& g) const;
};

// Adversary strategies decide the verdicts on edges whose source is
// corrupt; truthful sources always report the truth.
//   mirror-confusion: pairs T with an equal-size corrupt set V2 and makes
//     the reports consistent with both (T, B) and the swapped world.
//   scenario-ri: separator construction; B' accuses everyone, the chosen
//     component praises itself and accuses outward.
//   collude-praise: corrupt vertices call corrupt neighbors truthful and
//     truthful neighbors corrupt.
//   all-accuse: corrupt vertices call everyone corrupt.
//   random: per-edge fair coin, keyed by (seed, u, v) so edge order is
//     irrelevant.
//   scripted: verdicts replayed from an explicit map.
struct Adversary {
    enum class Strategy { MirrorConfusion, ScenarioRi, ColludePraise, AllAccuse, Random, Scripted };

    Strategy strategy = Strategy::AllAccuse;
    uint64_t seed = 0;
    // mirror-confusion: optional explicit pairing (truthful id, corrupt id).
    // When empty, sorted T is paired with the first |T| sorted corrupt ids.
    std::vector<std::pair<int, int>> pairing;
    // scenario-ri:
    std::vector<int> separator;
    int scenario_index = 0;
    // scripted:
    std::map<std::pair<int, int>, Verdict> script;

    static Adversary mirror_confusion(std::vector<std::pair<int, int>> pairing = {});
    static Adversary scenario_ri(std::vector<int> separator, int index);
    static Adversary collude_praise();
    static Adversary all_accuse();
    static Adversary random_verdicts(uint64_t seed);
    static Adversary scripted(std::map<std::pair<int, int>, Verdict> script);

    std::string name() const;
};

ReportSet generate_reports(const Graph& g, const World& w, const Adversary& adv);

// True iff every edge whose source is truthful under `candidate` reports
// the candidate type of its target. Corrupt sources impose no constraint.
bool consistency_check(const Graph& g, const ReportSet& r, const World& candidate);

// Exhaustive oracle: all worlds with |T| >= min_truthful consistent with
// the reports, in increasing order of the truthful-set bitmask (vertex 0
// is the lowest bit). Exponential by design; refuses when n exceeds the
// bound.
std::vector<World> enumerate_consistent(const Graph& g, const ReportSet& r,
                                        int min_truthful, int oracle_bound = 25);

namespace detail {

// Per-vertex praise/accuse masks; a truthful-set mask is consistent iff
// every member's praises stay inside it and its accusations outside.
struct ConsistencyMasks {
    int n = 0;
    std::vector<uint32_t> praised, accused;

    ConsistencyMasks(const Graph& g, const ReportSet& r, int oracle_bound);

    bool consistent(uint32_t mask) const {
        for (uint32_t rest = mask; rest;) {
            const int u = std::countr_zero(rest);
            rest &= rest - 1;
            if ((praised[u] & ~mask) || (accused[u] & mask)) return false;
        }
        return true;
    }
};

} // namespace detail

// Shared core of the exhaustive oracles: visits the truthful-set bitmask
// of every consistent world with |T| >= min_truthful, ascending. The
// visitor returns false to stop early. n is capped at 32 regardless of
// the configured bound.
template <typename Visit>
void for_each_consistent_mask(const Graph& g, const ReportSet& r, int min_truthful,
                              int oracle_bound, Visit&& visit) {
    const detail::ConsistencyMasks cm(g, r, oracle_bound);
    const uint32_t full = cm.n >= 32 ? 0xffffffffu : (1u << cm.n) - 1;
    for (uint32_t mask = 0;; ++mask) {
        if (std::popcount(mask) >= min_truthful && cm.consistent(mask)) {
            if (!visit(mask)) return;
        }
        if (mask == full) break;
    }
}

// --- text formats ----------------------------------------------------------
// Reports: one line per ordered pair `u v T|C`.
// World:   `T: id list` / `B: id list` on two lines.

std::string to_text(const Graph& g, const ReportSet& r);
ReportSet parse_reports(const Graph& g, const std::string& text);
ReportSet load_reports(const Graph& g, const std::string& path);
void save_reports(const Graph& g, const ReportSet& r, const std::string& path);

std::string to_text(const World& w);
World parse_world(int n, const std::string& text);
World load_world(int n, const std::string& path);
void save_world(const World& w, const std::string& path);

} // namespace corruptnet
