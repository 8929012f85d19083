#include "corruptnet/graph.hpp"

#include <algorithm>
#include <fstream>
#include <queue>
#include <sstream>
#include <unordered_set>

#include "corruptnet/errors.hpp"

namespace corruptnet {

namespace {

void validate_and_index(Graph& g) {
    std::unordered_set<uint64_t> seen;
    seen.reserve(g.edges.size() * 2);
    g.adj.assign(g.n, {});
    for (auto& [u, v] : g.edges) {
        if (u < 0 || u >= g.n || v < 0 || v >= g.n)
            throw UsageError("edge endpoint out of range: " + std::to_string(u) + " " +
                             std::to_string(v));
        if (u == v) throw UsageError("self-loop at vertex " + std::to_string(u));
        if (!g.directed && u > v) std::swap(u, v);
        const uint64_t key = static_cast<uint64_t>(u) * g.n + v;
        if (!seen.insert(key).second)
            throw UsageError("duplicate edge " + std::to_string(u) + " " + std::to_string(v));
        g.adj[u].push_back(v);
        if (!g.directed) g.adj[v].push_back(u);
    }
    for (auto& nbrs : g.adj) std::sort(nbrs.begin(), nbrs.end());
}

} // namespace

Graph Graph::undirected(int n, std::vector<std::pair<int, int>> edges) {
    if (n < 0) throw UsageError("negative vertex count");
    Graph g;
    g.n = n;
    g.directed = false;
    g.edges = std::move(edges);
    validate_and_index(g);
    return g;
}

Graph Graph::directed_graph(int n, std::vector<std::pair<int, int>> edges) {
    if (n < 0) throw UsageError("negative vertex count");
    Graph g;
    g.n = n;
    g.directed = true;
    g.edges = std::move(edges);
    validate_and_index(g);
    return g;
}

bool Graph::has_edge(int u, int v) const {
    return std::binary_search(adj[u].begin(), adj[u].end(), v);
}

std::vector<std::vector<int>> Graph::in_adjacency() const {
    if (!directed) return adj;
    std::vector<std::vector<int>> in(n);
    for (const auto& [u, v] : edges) in[v].push_back(u);
    for (auto& nbrs : in) std::sort(nbrs.begin(), nbrs.end());
    return in;
}

Graph Graph::underlying_undirected() const {
    if (!directed) return *this;
    std::vector<std::pair<int, int>> und;
    und.reserve(edges.size());
    for (const auto& [u, v] : edges) und.emplace_back(std::min(u, v), std::max(u, v));
    std::sort(und.begin(), und.end());
    und.erase(std::unique(und.begin(), und.end()), und.end());
    return Graph::undirected(n, std::move(und));
}

std::optional<int> Graph::regular_degree() const {
    const Graph& base = directed ? underlying_undirected() : *this;
    if (base.n == 0) return std::nullopt;
    const int d = base.degree(0);
    for (int v = 1; v < base.n; ++v)
        if (base.degree(v) != d) return std::nullopt;
    return d;
}

std::vector<int> Graph::degree_histogram() const {
    std::vector<int> hist;
    for (int v = 0; v < n; ++v) {
        const int d = degree(v);
        if (d >= static_cast<int>(hist.size())) hist.resize(d + 1, 0);
        ++hist[d];
    }
    return hist;
}

ComponentPartition connected_components(const Graph& g) {
    if (g.directed) throw UsageError("connected_components requires an undirected graph");
    ComponentPartition parts;
    parts.component_id.assign(g.n, -1);
    // Scanning start vertices in ascending order numbers each component by
    // its smallest member.
    std::vector<int> stack;
    for (int s = 0; s < g.n; ++s) {
        if (parts.component_id[s] != -1) continue;
        const int id = parts.count();
        parts.components.emplace_back();
        parts.component_id[s] = id;
        stack.push_back(s);
        while (!stack.empty()) {
            const int u = stack.back();
            stack.pop_back();
            parts.components[id].push_back(u);
            for (int v : g.adj[u]) {
                if (parts.component_id[v] == -1) {
                    parts.component_id[v] = id;
                    stack.push_back(v);
                }
            }
        }
        std::sort(parts.components[id].begin(), parts.components[id].end());
    }
    return parts;
}

namespace {

// Iterative Tarjan; recursion would overflow on million-vertex graphs.
struct TarjanState {
    const Graph& g;
    std::vector<int> index, low, scc_of;
    std::vector<bool> on_stack;
    std::vector<int> stack;
    int next_index = 0;
    int scc_count = 0;
    std::vector<std::vector<int>> sccs; // in pop (reverse topological) order

    explicit TarjanState(const Graph& g)
        : g(g), index(g.n, -1), low(g.n, 0), scc_of(g.n, -1), on_stack(g.n, false) {}

    void run(int root) {
        struct Frame {
            int v;
            size_t child = 0;
        };
        std::vector<Frame> frames{{root}};
        index[root] = low[root] = next_index++;
        stack.push_back(root);
        on_stack[root] = true;
        while (!frames.empty()) {
            Frame& f = frames.back();
            const int v = f.v;
            if (f.child < g.adj[v].size()) {
                const int w = g.adj[v][f.child++];
                if (index[w] == -1) {
                    index[w] = low[w] = next_index++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    frames.push_back({w});
                } else if (on_stack[w]) {
                    low[v] = std::min(low[v], index[w]);
                }
            } else {
                if (low[v] == index[v]) {
                    std::vector<int> comp;
                    int w;
                    do {
                        w = stack.back();
                        stack.pop_back();
                        on_stack[w] = false;
                        scc_of[w] = scc_count;
                        comp.push_back(w);
                    } while (w != v);
                    sccs.push_back(std::move(comp));
                    ++scc_count;
                }
                frames.pop_back();
                if (!frames.empty()) {
                    const int parent = frames.back().v;
                    low[parent] = std::min(low[parent], low[v]);
                }
            }
        }
    }
};

} // namespace

ComponentPartition strongly_connected_components(const Graph& g) {
    if (!g.directed) throw UsageError("strongly_connected_components requires a directed graph");
    TarjanState tarjan(g);
    for (int v = 0; v < g.n; ++v)
        if (tarjan.index[v] == -1) tarjan.run(v);

    // Renumber by smallest contained vertex; keep a topological order of
    // the renumbered ids (Tarjan pops sinks first, so reversed pop order
    // is topological).
    const int count = tarjan.scc_count;
    std::vector<int> smallest(count);
    for (int i = 0; i < count; ++i)
        smallest[i] = *std::min_element(tarjan.sccs[i].begin(), tarjan.sccs[i].end());
    std::vector<int> by_smallest(count);
    for (int i = 0; i < count; ++i) by_smallest[i] = i;
    std::sort(by_smallest.begin(), by_smallest.end(),
              [&](int a, int b) { return smallest[a] < smallest[b]; });
    std::vector<int> new_id(count);
    for (int rank = 0; rank < count; ++rank) new_id[by_smallest[rank]] = rank;

    ComponentPartition parts;
    parts.component_id.assign(g.n, -1);
    parts.components.assign(count, {});
    for (int old = 0; old < count; ++old) {
        auto& comp = parts.components[new_id[old]];
        comp = std::move(tarjan.sccs[old]);
        std::sort(comp.begin(), comp.end());
        for (int v : comp) parts.component_id[v] = new_id[old];
    }
    parts.topo_order.resize(count);
    for (int pop = 0; pop < count; ++pop)
        parts.topo_order[count - 1 - pop] = new_id[pop];
    return parts;
}

std::optional<int> girth(const Graph& g) {
    const Graph base = g.directed ? g.underlying_undirected() : g;
    const int n = base.n;
    int best = -1;
    std::vector<int> dist(n), parent(n);
    std::vector<int> queue;
    queue.reserve(n);
    for (int s = 0; s < n; ++s) {
        std::fill(dist.begin(), dist.end(), -1);
        queue.clear();
        size_t head = 0;
        dist[s] = 0;
        parent[s] = -1;
        queue.push_back(s);
        while (head < queue.size()) {
            const int u = queue[head++];
            if (best != -1 && 2 * dist[u] >= best) continue;
            for (int v : base.adj[u]) {
                if (dist[v] == -1) {
                    dist[v] = dist[u] + 1;
                    parent[v] = u;
                    queue.push_back(v);
                } else if (v != parent[u]) {
                    // Non-tree edge closes a cycle through the BFS root; the
                    // minimum over all roots is the exact girth.
                    const int len = dist[u] + dist[v] + 1;
                    if (best == -1 || len < best) best = len;
                }
            }
        }
    }
    if (best == -1) return std::nullopt;
    return best;
}

Graph parse_graph(const std::string& text) {
    std::istringstream in(text);
    long n, m;
    std::string kind;
    if (!(in >> n >> m >> kind))
        throw UsageError("graph header must be `n m directed|undirected`");
    bool directed;
    if (kind == "directed")
        directed = true;
    else if (kind == "undirected")
        directed = false;
    else
        throw UsageError("graph kind must be directed or undirected, got `" + kind + "`");
    if (n < 0 || m < 0) throw UsageError("negative graph header counts");
    std::vector<std::pair<int, int>> edges;
    edges.reserve(m);
    for (long i = 0; i < m; ++i) {
        long u, v;
        if (!(in >> u >> v)) throw UsageError("graph file ended before " + std::to_string(m) + " edges");
        edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
    }
    return directed ? Graph::directed_graph(static_cast<int>(n), std::move(edges))
                    : Graph::undirected(static_cast<int>(n), std::move(edges));
}

std::string to_text(const Graph& g) {
    std::ostringstream out;
    out << g.n << ' ' << g.edges.size() << ' ' << (g.directed ? "directed" : "undirected") << '\n';
    for (const auto& [u, v] : g.edges) out << u << ' ' << v << '\n';
    return out.str();
}

Graph load_graph(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open graph file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_graph(buf.str());
}

void save_graph(const Graph& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw UsageError("cannot write graph file: " + path);
    out << to_text(g);
}

} // namespace corruptnet
