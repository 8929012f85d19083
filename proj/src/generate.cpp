#include "corruptnet/generate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <unordered_map>

#include "corruptnet/errors.hpp"
#include "corruptnet/rng.hpp"

namespace corruptnet {

Graph make_grid(int rows, int cols) {
    if (rows < 1 || cols < 1) throw UsageError("grid dimensions must be >= 1");
    std::vector<std::pair<int, int>> edges;
    auto id = [cols](int r, int c) { return r * cols + c; };
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) {
            if (c + 1 < cols) edges.emplace_back(id(r, c), id(r, c + 1));
            if (r + 1 < rows) edges.emplace_back(id(r, c), id(r + 1, c));
        }
    return Graph::undirected(rows * cols, std::move(edges));
}

Graph make_star(int leaves) {
    if (leaves < 0) throw UsageError("star needs a nonnegative leaf count");
    std::vector<std::pair<int, int>> edges;
    for (int i = 1; i <= leaves; ++i) edges.emplace_back(0, i);
    return Graph::undirected(leaves + 1, std::move(edges));
}

Graph make_cycle(int n) {
    if (n < 3) throw UsageError("cycle needs n >= 3");
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
    return Graph::undirected(n, std::move(edges));
}

Graph make_complete(int n) {
    if (n < 0) throw UsageError("complete graph needs n >= 0");
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) edges.emplace_back(u, v);
    return Graph::undirected(n, std::move(edges));
}

Graph petersen() {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < 5; ++i) {
        edges.emplace_back(i, (i + 1) % 5);         // outer cycle
        edges.emplace_back(5 + i, 5 + (i + 2) % 5); // inner pentagram
        edges.emplace_back(i, i + 5);               // spokes
    }
    return Graph::undirected(10, std::move(edges));
}

Graph random_regular(int n, int d, uint64_t seed) {
    if (n < 0 || d < 0 || d >= std::max(n, 1))
        throw UsageError("random-regular needs 0 <= d < n");
    if (static_cast<long long>(n) * d % 2 != 0)
        throw UsageError("random-regular needs n*d even");
    if (d == 0) return Graph::undirected(n, {});

    constexpr int kPairRejections = 100; // consecutive, before a full restart
    constexpr int kRestarts = 500;

    for (int attempt = 0; attempt < kRestarts; ++attempt) {
        Rng rng(mix_seed(seed, attempt));
        std::vector<int> stubs;
        stubs.reserve(static_cast<size_t>(n) * d);
        for (int v = 0; v < n; ++v)
            for (int i = 0; i < d; ++i) stubs.push_back(v);

        std::vector<std::vector<int>> partial(n);
        std::vector<std::pair<int, int>> edges;
        edges.reserve(stubs.size() / 2);
        auto linked = [&](int u, int v) {
            const auto& nbrs = partial[u];
            return std::find(nbrs.begin(), nbrs.end(), v) != nbrs.end();
        };

        int rejections = 0;
        bool failed = false;
        while (!stubs.empty()) {
            const size_t j = 1 + rng.below(stubs.size() - 1);
            const int u = stubs[0];
            const int v = stubs[j];
            if (u == v || linked(u, v)) {
                if (++rejections > kPairRejections) {
                    failed = true;
                    break;
                }
                continue;
            }
            rejections = 0;
            partial[u].push_back(v);
            partial[v].push_back(u);
            edges.emplace_back(u, v);
            stubs[j] = stubs.back();
            stubs.pop_back();
            stubs[0] = stubs.back();
            stubs.pop_back();
        }
        if (!failed) return Graph::undirected(n, std::move(edges));
    }
    throw BudgetExceededError("random-regular pairing did not produce a simple graph within " +
                              std::to_string(kRestarts) + " restarts (n=" + std::to_string(n) +
                              ", d=" + std::to_string(d) + ")");
}

Graph blowup(const Graph& g, int k) {
    if (k < 1) throw UsageError("blowup needs k >= 1");
    if (g.directed) throw UsageError("blowup is defined for undirected graphs");
    std::vector<std::pair<int, int>> edges;
    for (int v = 0; v < g.n; ++v)
        for (int i = 0; i < k; ++i)
            for (int j = i + 1; j < k; ++j) edges.emplace_back(v * k + i, v * k + j);
    for (const auto& [u, v] : g.edges)
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) edges.emplace_back(u * k + i, v * k + j);
    return Graph::undirected(g.n * k, std::move(edges));
}

Graph generate(const GenSpec& spec) {
    if (spec.family == Family::Blowup) {
        if (!spec.base) throw UsageError("blowup needs a base family");
        GenSpec base = spec;
        base.family = *spec.base;
        base.base.reset();
        return blowup(generate(base), spec.k);
    }
    switch (spec.family) {
    case Family::RandomRegular: return random_regular(spec.n, spec.d, spec.seed);
    case Family::Grid: return make_grid(spec.rows, spec.cols);
    case Family::Star: return make_star(spec.m);
    case Family::Cycle: return make_cycle(spec.n);
    case Family::Complete: return make_complete(spec.n);
    case Family::Blowup: break;
    }
    throw UsageError("unknown family");
}

int default_orientation_k(int d) {
    return static_cast<int>(std::ceil(3 * std::sqrt(static_cast<double>(d))));
}

namespace {

// One Eulerian orientation of (possibly augmented) g: every edge gets a
// direction such that each vertex has in-degree == out-degree whenever all
// its degrees are even. Edges are (u, v, is_virtual).
struct MultiEdge {
    int u, v;
    bool is_virtual;
    bool oriented_forward = true; // u -> v
};

void euler_orient(std::vector<MultiEdge>& medges, int n) {
    std::vector<std::vector<int>> incidence(n);
    for (size_t e = 0; e < medges.size(); ++e) {
        incidence[medges[e].u].push_back(static_cast<int>(e));
        incidence[medges[e].v].push_back(static_cast<int>(e));
    }
    std::vector<size_t> ptr(n, 0);
    std::vector<bool> used(medges.size(), false);
    std::vector<int> stack;
    for (int start = 0; start < n; ++start) {
        if (ptr[start] >= incidence[start].size()) continue;
        stack.push_back(start);
        while (!stack.empty()) {
            const int v = stack.back();
            if (ptr[v] < incidence[v].size()) {
                const int e = incidence[v][ptr[v]++];
                if (used[e]) continue;
                used[e] = true;
                auto& me = medges[e];
                const int w = me.u == v ? me.v : me.u;
                me.oriented_forward = me.u == v; // traverse v -> w
                stack.push_back(w);
            } else {
                stack.pop_back();
            }
        }
    }
}

// Hopcroft-Karp on the successor graph. Left and right both index the
// vertex set; an arc u -> v exists per unused oriented edge.
struct BipartiteMatcher {
    int n;
    const std::vector<std::vector<std::pair<int, int>>>& arcs; // (target, edge id)
    const std::vector<bool>& edge_taken;
    std::vector<int> match_left, match_right, match_edge, level;

    BipartiteMatcher(int n, const std::vector<std::vector<std::pair<int, int>>>& arcs,
                     const std::vector<bool>& edge_taken)
        : n(n), arcs(arcs), edge_taken(edge_taken) {}

    bool bfs() {
        std::queue<int> q;
        level.assign(n, -1);
        for (int u = 0; u < n; ++u)
            if (match_left[u] == -1) {
                level[u] = 0;
                q.push(u);
            }
        bool reachable_free = false;
        while (!q.empty()) {
            const int u = q.front();
            q.pop();
            for (const auto& [v, e] : arcs[u]) {
                if (edge_taken[e]) continue;
                const int next = match_right[v];
                if (next == -1)
                    reachable_free = true;
                else if (level[next] == -1) {
                    level[next] = level[u] + 1;
                    q.push(next);
                }
            }
        }
        return reachable_free;
    }

    bool dfs(int u) {
        for (const auto& [v, e] : arcs[u]) {
            if (edge_taken[e]) continue;
            const int next = match_right[v];
            if (next == -1 || (level[next] == level[u] + 1 && dfs(next))) {
                match_left[u] = v;
                match_right[v] = u;
                match_edge[u] = e;
                return true;
            }
        }
        level[u] = -1;
        return false;
    }

    // Returns matched edge ids (one per left vertex) or empty when no
    // perfect matching exists.
    std::vector<int> perfect_matching() {
        match_left.assign(n, -1);
        match_right.assign(n, -1);
        match_edge.assign(n, -1);
        int matched = 0;
        while (bfs()) {
            for (int u = 0; u < n; ++u)
                if (match_left[u] == -1 && dfs(u)) ++matched;
        }
        if (matched != n) return {};
        return match_edge;
    }
};

} // namespace

OrientedGraph orient_eulerian(const Graph& g, int k, uint64_t seed) {
    if (g.directed) throw UsageError("orientation input must be undirected");
    const auto d = g.regular_degree();
    if (!d) throw UsageError("orientation input must be regular");
    if (k < 1 || 2 * k > *d)
        throw UsageError("orientation needs 1 <= k and 2k <= d (d=" + std::to_string(*d) +
                         ", k=" + std::to_string(k) + ")");
    const int n = g.n;

    constexpr int kAttempts = 64;
    std::string obstruction;
    for (int attempt = 0; attempt < kAttempts; ++attempt) {
        Rng rng(mix_seed(seed, 0xE1ULL * (attempt + 1)));

        // Augment odd-degree inputs with a virtual pairing so every degree
        // is even, Euler-orient, then drop the virtual edges. Real in/out
        // degrees end up d/2 each (or (d +- 1)/2 for odd d).
        std::vector<MultiEdge> medges;
        medges.reserve(g.edges.size() + n / 2);
        for (const auto& [u, v] : g.edges) medges.push_back({u, v, false});
        if (*d % 2 != 0) {
            std::vector<int> order(n);
            std::iota(order.begin(), order.end(), 0);
            for (int i = n - 1; i > 0; --i)
                std::swap(order[i], order[rng.below_int(i + 1)]);
            for (int i = 0; i + 1 < n; i += 2) medges.push_back({order[i], order[i + 1], true});
        }
        euler_orient(medges, n);

        // Successor graph: arc u -> v per real edge oriented u -> v. A
        // perfect matching in it is a successor permutation whose cycles
        // form a spanning 2-regular subgraph, already oriented.
        std::vector<std::vector<std::pair<int, int>>> arcs(n);
        std::vector<std::pair<int, int>> oriented(g.edges.size());
        for (size_t e = 0; e < g.edges.size(); ++e) {
            const auto& me = medges[e];
            const int from = me.oriented_forward ? me.u : me.v;
            const int to = me.oriented_forward ? me.v : me.u;
            oriented[e] = {from, to};
            arcs[from].emplace_back(to, static_cast<int>(e));
        }

        std::vector<bool> edge_taken(g.edges.size(), false);
        std::vector<std::pair<int, int>> e1;
        e1.reserve(static_cast<size_t>(n) * k);
        bool ok = true;
        for (int round = 0; round < k; ++round) {
            BipartiteMatcher matcher(n, arcs, edge_taken);
            const auto matched = matcher.perfect_matching();
            if (matched.empty() && n > 0) {
                obstruction = "2-factor extraction " + std::to_string(round + 1) + " of " +
                              std::to_string(k) + " found no perfect matching in the successor graph";
                ok = false;
                break;
            }
            for (int u = 0; u < n; ++u) {
                edge_taken[matched[u]] = true;
                e1.push_back(oriented[matched[u]]);
            }
        }
        if (!ok) continue;

        // Remaining edges get independent fair-coin orientations.
        std::vector<std::pair<int, int>> directed_edges(g.edges.size());
        for (size_t e = 0; e < g.edges.size(); ++e) {
            if (edge_taken[e]) {
                directed_edges[e] = oriented[e];
            } else {
                const auto& [u, v] = g.edges[e];
                directed_edges[e] = rng.coin() ? std::pair{u, v} : std::pair{v, u};
            }
        }
        OrientedGraph result;
        result.graph = Graph::directed_graph(n, std::move(directed_edges));
        std::sort(e1.begin(), e1.end());
        result.e1 = std::move(e1);
        return result;
    }
    throw BudgetExceededError("no 2k-regular spanning subgraph found within " +
                              std::to_string(kAttempts) + " attempts; last obstruction: " +
                              obstruction);
}

Family parse_family(const std::string& name) {
    if (name == "random-regular") return Family::RandomRegular;
    if (name == "grid") return Family::Grid;
    if (name == "star") return Family::Star;
    if (name == "cycle") return Family::Cycle;
    if (name == "complete") return Family::Complete;
    if (name == "blowup") return Family::Blowup;
    throw UsageError("unknown graph family: " + name);
}

std::string to_string(Family f) {
    switch (f) {
    case Family::RandomRegular: return "random-regular";
    case Family::Grid: return "grid";
    case Family::Star: return "star";
    case Family::Cycle: return "cycle";
    case Family::Complete: return "complete";
    case Family::Blowup: return "blowup";
    }
    return "?";
}

} // namespace corruptnet
