#include "corruptnet/construct.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

#include "corruptnet/errors.hpp"
#include "corruptnet/thresholds.hpp"

namespace corruptnet {

namespace {

std::vector<std::vector<int>> components_after_removal(const Graph& g,
                                                       const std::vector<bool>& removed) {
    std::vector<std::vector<int>> comps;
    std::vector<bool> seen(g.n, false);
    std::vector<int> stack;
    for (int s = 0; s < g.n; ++s) {
        if (removed[s] || seen[s]) continue;
        comps.emplace_back();
        seen[s] = true;
        stack.push_back(s);
        while (!stack.empty()) {
            const int u = stack.back();
            stack.pop_back();
            comps.back().push_back(u);
            for (int v : g.adj[u])
                if (!removed[v] && !seen[v]) {
                    seen[v] = true;
                    stack.push_back(v);
                }
        }
        std::sort(comps.back().begin(), comps.back().end());
    }
    return comps;
}

} // namespace

GadgetInstance build_np_gadget(const GadgetSpec& spec) {
    const Graph& gp = spec.expander;
    const Graph& h = spec.hard_graph;
    if (gp.directed || h.directed) throw UsageError("gadget graphs must be undirected");
    const int n = gp.n;
    const int m = h.n;
    for (int v = 0; v < m; ++v)
        if (h.degree(v) > 4)
            throw UsageError("hard graph degree exceeds 4 at vertex " + std::to_string(v));
    if (static_cast<int>(spec.v3.size()) != m)
        throw UsageError("placement V3 must host every hard-graph vertex");
    if (spec.a_den <= 0 || spec.b_den <= 0 || spec.a_num <= 0 || spec.b_num <= 0)
        throw UsageError("a and b must be positive rationals");
    if (2 * spec.a_num >= spec.a_den) throw UsageError("a must be < 1/2");
    if (spec.b_num * spec.a_den >= spec.a_num * spec.b_den) throw UsageError("b must be < a");
    if ((spec.a_num * m) % spec.a_den != 0 || n % 2 != 0)
        throw UsageError("gadget sizes must be integral: a*m and n/2");
    const long am = spec.a_num * m / spec.a_den;
    const long n1 = n / 2 - am;
    const long n2 = n / 2 - m + am;
    if (static_cast<long>(spec.v1.size()) != n1 || static_cast<long>(spec.v2.size()) != n2)
        throw UsageError("placement sizes must be |V1| = n/2 - a*m, |V2| = n/2 - m + a*m");

    // role: 1, 2 or 3 per vertex; the placement must partition V.
    std::vector<int> role(n, 0);
    auto place = [&](const std::vector<int>& part, int r) {
        for (int v : part) {
            if (v < 0 || v >= n || role[v] != 0) throw UsageError("placement must partition V");
            role[v] = r;
        }
    };
    place(spec.v1, 1);
    place(spec.v2, 2);
    place(spec.v3, 3);
    for (int v = 0; v < n; ++v)
        if (role[v] == 0) throw UsageError("placement must partition V");

    for (const auto& [u, v] : gp.edges) {
        if (role[u] == 3 && role[v] == 3)
            throw UsageError("V3 must be independent in the expander");
        if ((role[u] == 3 && role[v] != 2) || (role[v] == 3 && role[u] != 2))
            throw UsageError("every expander neighbor of V3 must lie in V2");
    }

    auto edges = gp.edges;
    for (const auto& [u, v] : h.edges) edges.emplace_back(spec.v3[u], spec.v3[v]);
    GadgetInstance inst;
    inst.graph = Graph::undirected(n, std::move(edges));
    inst.v1 = spec.v1;
    inst.v2 = spec.v2;
    inst.v3 = spec.v3;

    // V1 praises inside V1 and accuses outward; V2 symmetrically; V3
    // accuses every neighbor.
    inst.reports.verdicts.resize(n);
    for (int u = 0; u < n; ++u) {
        inst.reports.verdicts[u].resize(inst.graph.adj[u].size());
        for (size_t i = 0; i < inst.graph.adj[u].size(); ++i) {
            const int v = inst.graph.adj[u][i];
            const bool praise = role[u] != 3 && role[u] == role[v];
            inst.reports.verdicts[u][i] = praise ? Verdict::Truthful : Verdict::Corrupt;
        }
    }
    return inst;
}

GadgetSpec make_gadget_fixture(int n, int m, long a_num, long a_den, long b_num, long b_den,
                               const Graph& h) {
    if (h.n != m) throw UsageError("hard graph must have exactly m vertices");
    if (n % 2 != 0) throw UsageError("gadget fixture needs even n");
    if (a_den <= 0 || (a_num * m) % a_den != 0)
        throw UsageError("gadget fixture needs a*m integral; got a=" + std::to_string(a_num) + "/" +
                         std::to_string(a_den) + ", m=" + std::to_string(m));
    const long am = a_num * m / a_den;
    const long n1 = n / 2 - am;
    const long n2 = n / 2 - m + am;
    if (n1 < 1 || n2 < 1) throw UsageError("gadget fixture sizes are degenerate");

    GadgetSpec spec;
    spec.a_num = a_num;
    spec.a_den = a_den;
    spec.b_num = b_num;
    spec.b_den = b_den;
    for (long v = 0; v < n1; ++v) spec.v1.push_back(static_cast<int>(v));
    for (long v = n1; v < n1 + n2; ++v) spec.v2.push_back(static_cast<int>(v));
    for (long v = n1 + n2; v < n; ++v) spec.v3.push_back(static_cast<int>(v));

    // Cliques on V1 and V2, a complete join between them, and a complete
    // join from V3 to V2. Keeps V3 independent with neighbors only in V2
    // while V1 and V2 stay internally connected.
    std::vector<std::pair<int, int>> edges;
    for (size_t i = 0; i < spec.v1.size(); ++i)
        for (size_t j = i + 1; j < spec.v1.size(); ++j) edges.emplace_back(spec.v1[i], spec.v1[j]);
    for (size_t i = 0; i < spec.v2.size(); ++i)
        for (size_t j = i + 1; j < spec.v2.size(); ++j) edges.emplace_back(spec.v2[i], spec.v2[j]);
    for (int u : spec.v1)
        for (int v : spec.v2) edges.emplace_back(u, v);
    for (int u : spec.v3)
        for (int v : spec.v2) edges.emplace_back(u, v);
    spec.expander = Graph::undirected(n, std::move(edges));
    spec.hard_graph = h;
    return spec;
}

int independence_number_bruteforce(const Graph& h) {
    if (h.directed) throw UsageError("independence number is defined for undirected graphs");
    if (h.n > 25) throw UsageError("independence brute force is limited to n <= 25");
    std::vector<uint32_t> nbr(h.n, 0);
    for (const auto& [u, v] : h.edges) {
        nbr[u] |= 1u << v;
        nbr[v] |= 1u << u;
    }
    int best = 0;
    const uint32_t full = h.n >= 32 ? 0xffffffffu : (1u << h.n) - 1;
    for (uint32_t mask = 0;; ++mask) {
        bool independent = true;
        for (uint32_t rest = mask; rest;) {
            const int u = std::countr_zero(rest);
            rest &= rest - 1;
            if (nbr[u] & mask) {
                independent = false;
                break;
            }
        }
        if (independent) best = std::max(best, std::popcount(mask));
        if (mask == full) break;
    }
    return best;
}

ScenarioFamily build_separator_scenarios(const Graph& g, const std::vector<int>& separator,
                                         double eps) {
    if (g.directed) throw UsageError("scenario construction needs an undirected graph");
    if (!(eps > 0) || !(eps < 1)) throw UsageError("eps out of range (0, 1)");
    std::vector<bool> removed(g.n, false);
    for (int v : separator) {
        if (v < 0 || v >= g.n) throw UsageError("separator id out of range");
        if (removed[v]) throw UsageError("duplicate separator id " + std::to_string(v));
        removed[v] = true;
    }
    const long cap = floor_frac(eps * g.n);
    if (static_cast<long>(separator.size()) > cap)
        throw UsageError("separator larger than eps*n (" + std::to_string(separator.size()) +
                         " > " + std::to_string(cap) + ")");

    ScenarioFamily family;
    family.graph = g;
    family.eps = eps;
    family.separator = separator;
    std::sort(family.separator.begin(), family.separator.end());
    family.components = components_after_removal(g, removed);
    for (const auto& comp : family.components)
        if (static_cast<long>(comp.size()) > cap) {
            std::ostringstream msg;
            msg << "component of size " << comp.size() << " exceeds eps*n = " << cap;
            throw UsageError(msg.str());
        }

    for (size_t i = 0; i < family.components.size(); ++i) {
        std::vector<int> corrupt = family.separator;
        corrupt.insert(corrupt.end(), family.components[i].begin(), family.components[i].end());
        World w = World::from_corrupt(g.n, corrupt);
        family.reports.push_back(
            generate_reports(g, w, Adversary::scenario_ri(family.separator, static_cast<int>(i))));
        family.worlds.push_back(std::move(w));
    }
    return family;
}

bool verify_indistinguishable(const ScenarioFamily& family) {
    for (size_t i = 1; i < family.reports.size(); ++i)
        if (family.reports[i].verdicts != family.reports[0].verdicts) return false;
    return true;
}

std::vector<int> grid_middle_row(int rows, int cols) {
    if (rows < 1 || cols < 1) throw UsageError("grid dimensions must be >= 1");
    std::vector<int> ids;
    const int r = rows / 2;
    for (int c = 0; c < cols; ++c) ids.push_back(r * cols + c);
    return ids;
}

std::vector<int> grid_middle_column(int rows, int cols) {
    if (rows < 1 || cols < 1) throw UsageError("grid dimensions must be >= 1");
    std::vector<int> ids;
    const int c = cols / 2;
    for (int r = 0; r < rows; ++r) ids.push_back(r * cols + c);
    return ids;
}

} // namespace corruptnet
