#include "corruptnet/report.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <sstream>

#include "corruptnet/errors.hpp"
#include "corruptnet/rng.hpp"

namespace corruptnet {

World World::from_truthful(int n, const std::vector<int>& truthful_ids) {
    World w;
    w.corrupt.assign(n, true);
    for (int v : truthful_ids) {
        if (v < 0 || v >= n) throw UsageError("world id out of range: " + std::to_string(v));
        w.corrupt[v] = false;
    }
    return w;
}

World World::from_corrupt(int n, const std::vector<int>& corrupt_ids) {
    World w;
    w.corrupt.assign(n, false);
    for (int v : corrupt_ids) {
        if (v < 0 || v >= n) throw UsageError("world id out of range: " + std::to_string(v));
        w.corrupt[v] = true;
    }
    return w;
}

int World::truthful_count() const {
    return static_cast<int>(std::count(corrupt.begin(), corrupt.end(), false));
}

std::vector<int> World::truthful_ids() const {
    std::vector<int> ids;
    for (int v = 0; v < size(); ++v)
        if (!corrupt[v]) ids.push_back(v);
    return ids;
}

std::vector<int> World::corrupt_ids() const {
    std::vector<int> ids;
    for (int v = 0; v < size(); ++v)
        if (corrupt[v]) ids.push_back(v);
    return ids;
}

Verdict ReportSet::verdict(const Graph& g, int u, int v) const {
    const auto& nbrs = g.adj[u];
    const auto it = std::lower_bound(nbrs.begin(), nbrs.end(), v);
    if (it == nbrs.end() || *it != v)
        throw UsageError("no inspection pair (" + std::to_string(u) + ", " + std::to_string(v) + ")");
    return verdicts[u][it - nbrs.begin()];
}

bool ReportSet::shape_matches(const Graph& g) const {
    if (static_cast<int>(verdicts.size()) != g.n) return false;
    for (int u = 0; u < g.n; ++u)
        if (verdicts[u].size() != g.adj[u].size()) return false;
    return true;
}

Adversary Adversary::mirror_confusion(std::vector<std::pair<int, int>> pairing) {
    Adversary a;
    a.strategy = Strategy::MirrorConfusion;
    a.pairing = std::move(pairing);
    return a;
}

Adversary Adversary::scenario_ri(std::vector<int> separator, int index) {
    Adversary a;
    a.strategy = Strategy::ScenarioRi;
    a.separator = std::move(separator);
    a.scenario_index = index;
    return a;
}

Adversary Adversary::collude_praise() {
    Adversary a;
    a.strategy = Strategy::ColludePraise;
    return a;
}

Adversary Adversary::all_accuse() {
    Adversary a;
    a.strategy = Strategy::AllAccuse;
    return a;
}

Adversary Adversary::random_verdicts(uint64_t seed) {
    Adversary a;
    a.strategy = Strategy::Random;
    a.seed = seed;
    return a;
}

Adversary Adversary::scripted(std::map<std::pair<int, int>, Verdict> script) {
    Adversary a;
    a.strategy = Strategy::Scripted;
    a.script = std::move(script);
    return a;
}

std::string Adversary::name() const {
    switch (strategy) {
    case Strategy::MirrorConfusion: return "mirror-confusion";
    case Strategy::ScenarioRi: return "scenario-ri";
    case Strategy::ColludePraise: return "collude-praise";
    case Strategy::AllAccuse: return "all-accuse";
    case Strategy::Random: return "random";
    case Strategy::Scripted: return "scripted";
    }
    return "?";
}

namespace {

// Membership labels for the scenario rules: separator vertices, and a
// component id for everything else (components of g minus the separator,
// numbered by smallest vertex).
struct ScenarioLayout {
    std::vector<bool> in_separator;
    std::vector<int> component_of; // -1 on separator vertices
    int component_count = 0;
};

ScenarioLayout scenario_layout(const Graph& g, const std::vector<int>& separator) {
    ScenarioLayout layout;
    layout.in_separator.assign(g.n, false);
    for (int v : separator) {
        if (v < 0 || v >= g.n) throw UsageError("separator id out of range");
        layout.in_separator[v] = true;
    }
    layout.component_of.assign(g.n, -1);
    std::vector<int> stack;
    for (int s = 0; s < g.n; ++s) {
        if (layout.in_separator[s] || layout.component_of[s] != -1) continue;
        const int id = layout.component_count++;
        layout.component_of[s] = id;
        stack.push_back(s);
        while (!stack.empty()) {
            const int u = stack.back();
            stack.pop_back();
            for (int v : g.adj[u]) {
                if (layout.in_separator[v] || layout.component_of[v] != -1) continue;
                layout.component_of[v] = id;
                stack.push_back(v);
            }
        }
    }
    return layout;
}

// The mirror pairing: T is matched with an equal-size corrupt set V2.
// Returns V2 membership. Explicit pairings are validated; the default
// pairs sorted T with the smallest corrupt ids.
std::vector<bool> mirror_v2(const Graph& g, const World& w, const Adversary& adv) {
    const auto truthful = w.truthful_ids();
    const auto corrupt = w.corrupt_ids();
    std::vector<bool> in_v2(g.n, false);
    if (!adv.pairing.empty()) {
        if (adv.pairing.size() != truthful.size())
            throw UsageError("mirror-confusion pairing must cover T exactly");
        std::vector<bool> used_t(g.n, false);
        for (const auto& [t, b] : adv.pairing) {
            if (t < 0 || t >= g.n || b < 0 || b >= g.n || w.is_corrupt(t) || !w.is_corrupt(b))
                throw UsageError("mirror-confusion pairing must map truthful to corrupt ids");
            if (used_t[t] || in_v2[b]) throw UsageError("mirror-confusion pairing has duplicates");
            used_t[t] = true;
            in_v2[b] = true;
        }
        return in_v2;
    }
    if (truthful.size() > corrupt.size())
        throw UsageError("mirror-confusion requires |T| <= |B| to pair V1 with V2 (|T|=" +
                         std::to_string(truthful.size()) + ", |B|=" +
                         std::to_string(corrupt.size()) + ")");
    for (size_t i = 0; i < truthful.size(); ++i) in_v2[corrupt[i]] = true;
    return in_v2;
}

} // namespace

ReportSet generate_reports(const Graph& g, const World& w, const Adversary& adv) {
    if (w.size() != g.n) throw UsageError("world size does not match the graph");
    ReportSet r;
    r.verdicts.resize(g.n);
    for (int u = 0; u < g.n; ++u) r.verdicts[u].resize(g.adj[u].size());

    // Truthful sources first; they are adversary-independent.
    for (int u = 0; u < g.n; ++u) {
        if (w.is_corrupt(u)) continue;
        for (size_t i = 0; i < g.adj[u].size(); ++i)
            r.verdicts[u][i] = w.is_corrupt(g.adj[u][i]) ? Verdict::Corrupt : Verdict::Truthful;
    }
    if (w.corrupt_count() == 0) return r;

    switch (adv.strategy) {
    case Adversary::Strategy::ColludePraise:
        for (int u = 0; u < g.n; ++u) {
            if (!w.is_corrupt(u)) continue;
            for (size_t i = 0; i < g.adj[u].size(); ++i)
                r.verdicts[u][i] = w.is_corrupt(g.adj[u][i]) ? Verdict::Truthful : Verdict::Corrupt;
        }
        break;
    case Adversary::Strategy::AllAccuse:
        for (int u = 0; u < g.n; ++u) {
            if (!w.is_corrupt(u)) continue;
            for (size_t i = 0; i < g.adj[u].size(); ++i) r.verdicts[u][i] = Verdict::Corrupt;
        }
        break;
    case Adversary::Strategy::Random:
        for (int u = 0; u < g.n; ++u) {
            if (!w.is_corrupt(u)) continue;
            for (size_t i = 0; i < g.adj[u].size(); ++i) {
                const uint64_t key = static_cast<uint64_t>(u) * g.n + g.adj[u][i];
                r.verdicts[u][i] =
                    (mix_seed(adv.seed, key) & 1) ? Verdict::Truthful : Verdict::Corrupt;
            }
        }
        break;
    case Adversary::Strategy::MirrorConfusion: {
        // V2 reports as if it were the truthful side of the swapped world;
        // leftover corrupt vertices W accuse everyone. The reports are then
        // consistent with both (T, B) and (V2, V - V2).
        const auto in_v2 = mirror_v2(g, w, adv);
        for (int u = 0; u < g.n; ++u) {
            if (!w.is_corrupt(u)) continue;
            for (size_t i = 0; i < g.adj[u].size(); ++i) {
                const int v = g.adj[u][i];
                r.verdicts[u][i] =
                    in_v2[u] && in_v2[v] ? Verdict::Truthful : Verdict::Corrupt;
            }
        }
        break;
    }
    case Adversary::Strategy::ScenarioRi: {
        // Separator vertices accuse everyone; corrupt component vertices
        // praise inside their own component and accuse outward. Truthful
        // vertices already reported the truth, which coincides with the
        // same rule, so all scenarios of a family emit identical reports.
        const auto layout = scenario_layout(g, adv.separator);
        for (int u = 0; u < g.n; ++u) {
            if (!w.is_corrupt(u)) continue;
            for (size_t i = 0; i < g.adj[u].size(); ++i) {
                const int v = g.adj[u][i];
                if (layout.in_separator[u])
                    r.verdicts[u][i] = Verdict::Corrupt;
                else
                    r.verdicts[u][i] = !layout.in_separator[v] &&
                                               layout.component_of[v] == layout.component_of[u]
                                           ? Verdict::Truthful
                                           : Verdict::Corrupt;
            }
        }
        break;
    }
    case Adversary::Strategy::Scripted:
        for (int u = 0; u < g.n; ++u) {
            if (!w.is_corrupt(u)) continue;
            for (size_t i = 0; i < g.adj[u].size(); ++i) {
                const int v = g.adj[u][i];
                const auto it = adv.script.find({u, v});
                if (it == adv.script.end())
                    throw UsageError("script missing verdict for edge " + std::to_string(u) + " " +
                                     std::to_string(v));
                r.verdicts[u][i] = it->second;
            }
        }
        break;
    }
    return r;
}

bool consistency_check(const Graph& g, const ReportSet& r, const World& candidate) {
    if (candidate.size() != g.n) throw UsageError("candidate world size does not match the graph");
    if (!r.shape_matches(g)) throw UsageError("report set does not match the graph");
    for (int u = 0; u < g.n; ++u) {
        if (candidate.is_corrupt(u)) continue;
        for (size_t i = 0; i < g.adj[u].size(); ++i) {
            const Verdict expected =
                candidate.is_corrupt(g.adj[u][i]) ? Verdict::Corrupt : Verdict::Truthful;
            if (r.verdicts[u][i] != expected) return false;
        }
    }
    return true;
}

namespace detail {

ConsistencyMasks::ConsistencyMasks(const Graph& g, const ReportSet& r, int oracle_bound) {
    const int cap = std::min(oracle_bound, 32);
    if (g.n > cap)
        throw UsageError("the consistency oracle is exponential; n=" + std::to_string(g.n) +
                         " exceeds the oracle bound " + std::to_string(cap));
    if (!r.shape_matches(g)) throw UsageError("report set does not match the graph");
    n = g.n;
    praised.assign(n, 0);
    accused.assign(n, 0);
    for (int u = 0; u < n; ++u)
        for (size_t i = 0; i < g.adj[u].size(); ++i) {
            const uint32_t bit = 1u << g.adj[u][i];
            if (r.verdicts[u][i] == Verdict::Truthful)
                praised[u] |= bit;
            else
                accused[u] |= bit;
        }
}

} // namespace detail

std::vector<World> enumerate_consistent(const Graph& g, const ReportSet& r, int min_truthful,
                                        int oracle_bound) {
    std::vector<World> result;
    for_each_consistent_mask(g, r, min_truthful, oracle_bound, [&](uint32_t mask) {
        World w;
        w.corrupt.resize(g.n);
        for (int v = 0; v < g.n; ++v) w.corrupt[v] = !(mask >> v & 1);
        result.push_back(std::move(w));
        return true;
    });
    return result;
}

// --- text formats -----------------------------------------------------------

std::string to_text(const Graph& g, const ReportSet& r) {
    std::ostringstream out;
    for (int u = 0; u < g.n; ++u)
        for (size_t i = 0; i < g.adj[u].size(); ++i)
            out << u << ' ' << g.adj[u][i] << ' '
                << (r.verdicts[u][i] == Verdict::Truthful ? 'T' : 'C') << '\n';
    return out.str();
}

ReportSet parse_reports(const Graph& g, const std::string& text) {
    ReportSet r;
    r.verdicts.resize(g.n);
    std::vector<std::vector<bool>> seen(g.n);
    for (int u = 0; u < g.n; ++u) {
        r.verdicts[u].resize(g.adj[u].size());
        seen[u].assign(g.adj[u].size(), false);
    }
    std::istringstream in(text);
    long u, v;
    std::string verdict;
    long lines = 0;
    while (in >> u >> v >> verdict) {
        ++lines;
        if (u < 0 || u >= g.n || v < 0 || v >= g.n)
            throw UsageError("report pair out of range: " + std::to_string(u) + " " +
                             std::to_string(v));
        const auto& nbrs = g.adj[u];
        const auto it = std::lower_bound(nbrs.begin(), nbrs.end(), static_cast<int>(v));
        if (it == nbrs.end() || *it != v)
            throw UsageError("report on a non-edge: " + std::to_string(u) + " " + std::to_string(v));
        const size_t idx = it - nbrs.begin();
        if (seen[u][idx])
            throw UsageError("duplicate report for " + std::to_string(u) + " " + std::to_string(v));
        seen[u][idx] = true;
        if (verdict == "T")
            r.verdicts[u][idx] = Verdict::Truthful;
        else if (verdict == "C")
            r.verdicts[u][idx] = Verdict::Corrupt;
        else
            throw UsageError("verdict must be T or C, got `" + verdict + "`");
    }
    long expected = 0;
    for (int w = 0; w < g.n; ++w) expected += static_cast<long>(g.adj[w].size());
    if (lines != expected)
        throw UsageError("incomplete report set: " + std::to_string(lines) + " of " +
                         std::to_string(expected) + " ordered pairs");
    return r;
}

ReportSet load_reports(const Graph& g, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open report file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_reports(g, buf.str());
}

void save_reports(const Graph& g, const ReportSet& r, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw UsageError("cannot write report file: " + path);
    out << to_text(g, r);
}

std::string to_text(const World& w) {
    std::ostringstream out;
    out << "T:";
    for (int v : w.truthful_ids()) out << ' ' << v;
    out << "\nB:";
    for (int v : w.corrupt_ids()) out << ' ' << v;
    out << '\n';
    return out.str();
}

World parse_world(int n, const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::vector<int> truthful, corrupt;
    bool saw_t = false, saw_b = false;
    while (std::getline(in, line)) {
        std::istringstream fields(line);
        std::string tag;
        if (!(fields >> tag)) continue;
        std::vector<int>* target = nullptr;
        if (tag == "T:") {
            target = &truthful;
            saw_t = true;
        } else if (tag == "B:") {
            target = &corrupt;
            saw_b = true;
        } else {
            throw UsageError("world line must start with T: or B:");
        }
        int v;
        while (fields >> v) target->push_back(v);
    }
    if (!saw_t || !saw_b) throw UsageError("world file needs both T: and B: lines");
    if (static_cast<int>(truthful.size() + corrupt.size()) != n)
        throw UsageError("world does not partition the vertex set");
    World w = World::from_truthful(n, truthful);
    for (int v : corrupt)
        if (!w.corrupt[v]) throw UsageError("vertex " + std::to_string(v) + " listed in both T and B");
    return w;
}

World load_world(int n, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open world file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_world(n, buf.str());
}

void save_world(const World& w, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw UsageError("cannot write world file: " + path);
    out << to_text(w);
}

} // namespace corruptnet
