#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace corruptnet {

// Finite simple graph, directed or undirected, on dense vertex ids [0, n).
// Undirected graphs store each edge once in `edges` (u < v) but list both
// directions in `adj`. Directed graphs may contain antiparallel pairs.
// No self-loops, no duplicate edges.
struct Graph {
    int n = 0;
    bool directed = false;
    std::vector<std::pair<int, int>> edges;
    std::vector<std::vector<int>> adj; // out-neighbors, sorted ascending

    static Graph undirected(int n, std::vector<std::pair<int, int>> edges);
    static Graph directed_graph(int n, std::vector<std::pair<int, int>> edges);

    int edge_count() const { return static_cast<int>(edges.size()); }
    int degree(int v) const { return static_cast<int>(adj[v].size()); }
    bool has_edge(int u, int v) const; // binary search in adj[u]

    // In-neighbor lists (for undirected graphs this equals adj).
    std::vector<std::vector<int>> in_adjacency() const;

    // Collapses orientation and antiparallel pairs into a simple
    // undirected graph on the same vertex set.
    Graph underlying_undirected() const;

    // All degrees equal; returns that degree, or nullopt. Undirected view
    // is used for directed graphs (total degree).
    std::optional<int> regular_degree() const;

    std::vector<int> degree_histogram() const;
};

// Partition of V into components. Components are numbered by their smallest
// contained vertex (ascending), which makes numbering deterministic.
// For directed graphs `topo_order` lists component ids so that every
// inter-component edge goes from an earlier to a later entry.
struct ComponentPartition {
    std::vector<int> component_id;            // per vertex
    std::vector<std::vector<int>> components; // sorted vertex lists
    std::vector<int> topo_order;              // directed case only

    int count() const { return static_cast<int>(components.size()); }
};

ComponentPartition connected_components(const Graph& g);
ComponentPartition strongly_connected_components(const Graph& g);

// Length of the shortest cycle in the underlying undirected simple graph;
// nullopt when the graph is a forest. BFS from every vertex.
std::optional<int> girth(const Graph& g);

// --- text format ----------------------------------------------------------
// First line: `n m directed|undirected`, then m lines `u v` (0-based).

Graph parse_graph(const std::string& text);
std::string to_text(const Graph& g);
Graph load_graph(const std::string& path);
void save_graph(const Graph& g, const std::string& path);

} // namespace corruptnet
