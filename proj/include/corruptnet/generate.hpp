#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "corruptnet/graph.hpp"

namespace corruptnet {

enum class Family { RandomRegular, Grid, Star, Cycle, Complete, Blowup };

// Family-specific parameters; unused fields are ignored.
//   random-regular: n, d (n*d even, d < n)
//   grid: rows, cols
//   star: m (leaves; the center is vertex 0)
//   cycle: n
//   complete: n
//   blowup: base family + its parameters, and k (clique size)
struct GenSpec {
    Family family = Family::Complete;
    int n = 0;
    int d = 0;
    int rows = 0;
    int cols = 0;
    int m = 0;
    int k = 0;
    std::optional<Family> base; // blowup only
    uint64_t seed = 0;
};

Graph generate(const GenSpec& spec);

// Direct constructors for callers that do not need the spec layer.
Graph make_grid(int rows, int cols);
Graph make_star(int leaves);
Graph make_cycle(int n);
Graph make_complete(int n);
Graph random_regular(int n, int d, uint64_t seed);

// Every vertex becomes a K_k clique; every edge becomes a complete
// bipartite join between the two cliques. Vertex v maps to ids
// [v*k, (v+1)*k).
Graph blowup(const Graph& g, int k);

// Petersen graph (outer 5-cycle, inner pentagram, spokes); a standard
// small fixture.
Graph petersen();

// Orientation of a d-regular graph in two layers: a 2k-regular spanning
// subgraph E1 is extracted as k edge-disjoint 2-factors and oriented so
// that every vertex gets in-degree k and out-degree k within E1; every
// remaining edge is oriented by an independent fair coin from the seeded
// stream. The undirected edge multiset is preserved.
struct OrientedGraph {
    Graph graph;                            // directed
    std::vector<std::pair<int, int>> e1;    // oriented E1 edges
};

OrientedGraph orient_eulerian(const Graph& g, int k, uint64_t seed);

// ceil(3*sqrt(d)): the regular-subgraph width used when the caller does
// not pick one. Only valid when 2k <= d, i.e. d >= 36.
int default_orientation_k(int d);

Family parse_family(const std::string& name);
std::string to_string(Family f);

} // namespace corruptnet
