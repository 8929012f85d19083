#pragma once

#include <string>
#include <vector>

#include "corruptnet/graph.hpp"
#include "corruptnet/report.hpp"

namespace corruptnet {

// Hardness reduction instance: an expander G' on V1 u V2 u V3 with a
// degree-<=4 graph H planted on the independent set V3. Sizes follow
// |V1| = n/2 - a*m, |V2| = n/2 - m + a*m with a = a_num/a_den, and must be
// integral; the builder refuses to round.
struct GadgetSpec {
    Graph expander;    // G'
    Graph hard_graph;  // H on m vertices, max degree 4
    long a_num = 0, a_den = 1;
    long b_num = 0, b_den = 1; // b < a < 1/2
    std::vector<int> v1, v2, v3; // placement; v3[i] hosts H vertex i
};

struct GadgetInstance {
    Graph graph; // G' plus H's edges embedded on V3
    ReportSet reports;
    std::vector<int> v1, v2, v3;
};

// Reports: V1 praises inside V1 and accuses outward; V2 likewise; V3
// accuses all neighbors. The agreement graph of the result has components
// V1, V2 and the V3 singletons.
GadgetInstance build_np_gadget(const GadgetSpec& spec);

// Deterministic small-fixture builder: V1 and V2 become cliques joined
// completely, every V3 vertex is joined to all of V2, and H is embedded
// on V3. Throws when the (n, m, a) bookkeeping does not come out integral.
GadgetSpec make_gadget_fixture(int n, int m, long a_num, long a_den,
                               long b_num, long b_den, const Graph& h);

// Independence number of a small graph by exhaustive enumeration (2^n).
int independence_number_bruteforce(const Graph& h);

// Separator scenario family: removing B' leaves components V1..Vs, each of
// size <= eps*n; scenario i makes B = B' u V_i corrupt with the fixed
// report rules, and all scenarios produce identical reports.
struct ScenarioFamily {
    Graph graph;
    double eps = 0.0;
    std::vector<int> separator;
    std::vector<std::vector<int>> components; // numbered by smallest vertex
    std::vector<World> worlds;                // per scenario
    std::vector<ReportSet> reports;           // per scenario
};

ScenarioFamily build_separator_scenarios(const Graph& g, const std::vector<int>& separator,
                                         double eps);

// True iff all scenario report sets agree verdict-for-verdict.
bool verify_indistinguishable(const ScenarioFamily& family);

// Middle-row vertex ids of a rows x cols grid (row index rows/2).
std::vector<int> grid_middle_row(int rows, int cols);
std::vector<int> grid_middle_column(int rows, int cols);

} // namespace corruptnet
