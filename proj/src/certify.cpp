#include "corruptnet/certify.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

#include "corruptnet/errors.hpp"
#include "corruptnet/spectral.hpp"
#include "corruptnet/thresholds.hpp"

namespace corruptnet {

namespace {

// Dynamic bitset over vertex ids; n can exceed 64 when the work budget
// still admits small-subset enumeration.
using Bits = std::vector<uint64_t>;

int words_for(int n) { return (n + 63) / 64; }

void set_bit(Bits& b, int i) { b[i >> 6] |= 1ULL << (i & 63); }

std::vector<Bits> neighbor_bitsets(const std::vector<std::vector<int>>& adj, int n) {
    std::vector<Bits> sets(n, Bits(words_for(n), 0));
    for (int u = 0; u < n; ++u)
        for (int v : adj[u]) set_bit(sets[u], v);
    return sets;
}

// |union of neighborhoods of `members` minus the members themselves|
long boundary_size(const std::vector<Bits>& nbr, const std::vector<int>& members, int words) {
    Bits acc(words, 0), inside(words, 0);
    for (int v : members) {
        set_bit(inside, v);
        for (int w = 0; w < words; ++w) acc[w] |= nbr[v][w];
    }
    long total = 0;
    for (int w = 0; w < words; ++w) total += std::popcount(acc[w] & ~inside[w]);
    return total;
}

std::vector<int> non_neighborhood(const std::vector<Bits>& nbr, const std::vector<int>& members,
                                  int n) {
    const int words = words_for(n);
    Bits cover(words, 0);
    for (int v : members) {
        set_bit(cover, v);
        for (int w = 0; w < words; ++w) cover[w] |= nbr[v][w];
    }
    std::vector<int> rest;
    for (int v = 0; v < n; ++v)
        if (!(cover[v >> 6] >> (v & 63) & 1)) rest.push_back(v);
    return rest;
}

// min(C(n, k), cap + 1), saturating.
long long binom_capped(long n, long k, long long cap) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    long long result = 1;
    for (long i = 1; i <= k; ++i) {
        result = result * (n - k + i) / i;
        if (result > cap) return cap + 1;
    }
    return result;
}

// Enumerates all k-subsets in combination order, calling fn(members).
// fn returns false to stop early.
template <typename Fn>
void for_each_subset(int n, int k, Fn&& fn) {
    if (k < 0 || k > n) return;
    std::vector<int> members(k);
    for (int i = 0; i < k; ++i) members[i] = i;
    while (true) {
        if (!fn(members)) return;
        int i = k - 1;
        while (i >= 0 && members[i] == n - k + i) --i;
        if (i < 0) return;
        ++members[i];
        for (int j = i + 1; j < k; ++j) members[j] = members[j - 1] + 1;
    }
}

struct Limits {
    long expansion_limit = 0; // max |U| for the neighborhood condition (0 = none)
    long a_min = 0;           // minimum size of the first pair set
    long b_min = 0;           // minimum size of the second pair set
    bool directed_pair = false;
};

Limits limits_for(const Graph& g, double delta, Criterion criterion) {
    Limits lim;
    const int n = g.n;
    switch (criterion) {
    case Criterion::UndirectedGood:
        lim.expansion_limit = floor_frac(2 * delta * n);
        lim.a_min = ceil_frac(delta * n);
        lim.b_min = (n + 3) / 4;
        break;
    case Criterion::DirectedGood:
        lim.expansion_limit = floor_frac(4 * delta * n);
        lim.a_min = ceil_frac(delta * n);
        lim.b_min = (n + 3) / 4;
        lim.directed_pair = true;
        break;
    case Criterion::DeltaConnected:
        lim.a_min = ceil_frac(delta * n);
        lim.b_min = ceil_frac((1 - 3 * delta) * n);
        break;
    }
    return lim;
}

void validate_delta(const Graph& g, double delta, Criterion criterion) {
    double upper = 0;
    switch (criterion) {
    case Criterion::UndirectedGood: upper = 1.0 / 8; break;
    case Criterion::DirectedGood: upper = 1.0 / 16; break;
    case Criterion::DeltaConnected: upper = 1.0 / 3; break;
    }
    if (!(delta > 0) || !(delta < upper)) {
        std::ostringstream msg;
        msg << "delta " << delta << " out of range (0, " << upper << ") for "
            << to_string(criterion);
        throw UsageError(msg.str());
    }
    if (criterion == Criterion::DirectedGood && !g.directed)
        throw UsageError("directed-good certification requires a directed graph");
    if (criterion != Criterion::DirectedGood && g.directed)
        throw UsageError(to_string(criterion) + " certification requires an undirected graph");
}

long long exhaustive_cost(const Graph& g, const Limits& lim, long long budget) {
    long long cost = 0;
    for (long k = 1; k <= lim.expansion_limit && k <= g.n; ++k) {
        cost += binom_capped(g.n, k, budget);
        if (cost > budget) return cost;
    }
    cost += binom_capped(g.n, lim.a_min, budget);
    return cost;
}

ExpanderCert run_exhaustive(const Graph& g, double delta, Criterion criterion,
                            const Limits& lim) {
    ExpanderCert cert;
    cert.delta = delta;
    cert.criterion = criterion;
    cert.method = CertifyMethod::Exhaustive;
    const int n = g.n;
    const int words = words_for(n);
    const auto out_nbr = neighbor_bitsets(g.adj, n);

    // Neighborhood expansion: every U up to the limit needs a strictly
    // larger out-boundary.
    for (long k = 1; k <= lim.expansion_limit && k <= n; ++k) {
        bool violated = false;
        for_each_subset(n, static_cast<int>(k), [&](const std::vector<int>& u) {
            if (boundary_size(out_nbr, u, words) <= static_cast<long>(u.size())) {
                cert.witness = {u};
                violated = true;
                return false;
            }
            return true;
        });
        if (violated) {
            cert.verdict = CertVerdict::Fail;
            std::ostringstream msg;
            msg << "expansion violation: |U|=" << cert.witness[0].size()
                << ", boundary <= " << cert.witness[0].size();
            cert.detail = msg.str();
            return cert;
        }
    }

    // Pair condition by complement: a violating (A, B) exists iff some A of
    // the minimum size has a non-neighborhood of size >= b_min.
    if (lim.a_min <= n) {
        const auto in_nbr = lim.directed_pair ? neighbor_bitsets(g.in_adjacency(), n)
                                              : std::vector<Bits>{};
        bool violated = false;
        for_each_subset(n, static_cast<int>(lim.a_min), [&](const std::vector<int>& a) {
            auto rest = non_neighborhood(out_nbr, a, n);
            if (static_cast<long>(rest.size()) >= lim.b_min) {
                cert.witness = {a, rest};
                cert.detail = lim.directed_pair ? "no edge from A to B" : "no edge between A and B";
                violated = true;
                return false;
            }
            if (lim.directed_pair) {
                rest = non_neighborhood(in_nbr, a, n);
                if (static_cast<long>(rest.size()) >= lim.b_min) {
                    cert.witness = {a, rest};
                    cert.detail = "no edge from B to A";
                    violated = true;
                    return false;
                }
            }
            return true;
        });
        if (violated) {
            cert.verdict = CertVerdict::Fail;
            return cert;
        }
    }

    cert.verdict = CertVerdict::Pass;
    return cert;
}

ExpanderCert run_surrogate(const Graph& g, double delta, Criterion criterion,
                           const CertifyOptions& options) {
    ExpanderCert cert;
    cert.delta = delta;
    cert.criterion = criterion;
    cert.method = CertifyMethod::SpectralSurrogate;
    const Graph base = g.directed ? g.underlying_undirected() : g;
    const auto d = base.regular_degree();
    if (!d) {
        cert.verdict = CertVerdict::NotAttempted;
        cert.detail = "spectral surrogate requires a regular graph";
        return cert;
    }
    const double gap = spectral_gap(base);
    const double threshold =
        options.surrogate_threshold
            ? *options.surrogate_threshold
            : std::max(*d - 2 * std::sqrt(std::max(*d - 1, 0)) * (1 + delta), delta * *d);
    cert.spectral_gap_value = gap;
    cert.surrogate_threshold = threshold;
    cert.verdict = gap >= threshold - 1e-12 ? CertVerdict::Pass : CertVerdict::Fail;
    cert.detail = "spectral surrogate: heuristic evidence, not proof";
    return cert;
}

} // namespace

ExpanderCert certify(const Graph& g, double delta, Criterion criterion,
                     const CertifyOptions& options) {
    validate_delta(g, delta, criterion);
    const Limits lim = limits_for(g, delta, criterion);
    const long long cost = exhaustive_cost(g, lim, options.work_budget);
    const bool in_budget = cost <= options.work_budget;

    switch (options.method) {
    case CertifyOptions::Method::Exhaustive: {
        if (!in_budget) {
            ExpanderCert cert;
            cert.delta = delta;
            cert.criterion = criterion;
            cert.method = CertifyMethod::Exhaustive;
            cert.verdict = CertVerdict::NotAttempted;
            cert.detail = "work budget exceeded: needs > " + std::to_string(options.work_budget) +
                          " subset evaluations";
            return cert;
        }
        return run_exhaustive(g, delta, criterion, lim);
    }
    case CertifyOptions::Method::SpectralSurrogate:
        return run_surrogate(g, delta, criterion, options);
    case CertifyOptions::Method::Auto:
        if (in_budget) return run_exhaustive(g, delta, criterion, lim);
        return run_surrogate(g, delta, criterion, options);
    }
    throw UsageError("unreachable certify method");
}

bool witness_violates(const Graph& g, double delta, Criterion criterion,
                      const std::vector<std::vector<int>>& witness) {
    const Limits lim = limits_for(g, delta, criterion);
    const int n = g.n;
    const int words = words_for(n);
    const auto out_nbr = neighbor_bitsets(g.adj, n);
    if (witness.size() == 1) {
        const auto& u = witness[0];
        if (lim.expansion_limit == 0 || static_cast<long>(u.size()) > lim.expansion_limit)
            return false;
        return boundary_size(out_nbr, u, words) <= static_cast<long>(u.size());
    }
    if (witness.size() != 2) return false;
    const auto& a = witness[0];
    const auto& b = witness[1];
    if (static_cast<long>(a.size()) < lim.a_min || static_cast<long>(b.size()) < lim.b_min)
        return false;
    std::vector<bool> in_a(n, false), in_b(n, false);
    for (int v : a) in_a[v] = true;
    for (int v : b) {
        if (in_a[v]) return false; // not disjoint
        in_b[v] = true;
    }
    bool a_to_b = false, b_to_a = false;
    for (const auto& [u, v] : g.edges) {
        if (in_a[u] && in_b[v]) a_to_b = true;
        if (in_b[u] && in_a[v]) b_to_a = true;
        if (!g.directed && (in_a[v] && in_b[u])) a_to_b = true;
        if (!g.directed && (in_b[v] && in_a[u])) b_to_a = true;
    }
    if (lim.directed_pair) return !a_to_b || !b_to_a;
    return !a_to_b && !b_to_a;
}

std::string to_string(Criterion c) {
    switch (c) {
    case Criterion::UndirectedGood: return "undirected-good";
    case Criterion::DirectedGood: return "directed-good";
    case Criterion::DeltaConnected: return "delta-connected";
    }
    return "?";
}

std::string to_string(CertVerdict v) {
    switch (v) {
    case CertVerdict::Pass: return "pass";
    case CertVerdict::Fail: return "fail";
    case CertVerdict::NotAttempted: return "not-attempted";
    }
    return "?";
}

std::string to_string(CertifyMethod m) {
    return m == CertifyMethod::Exhaustive ? "exhaustive" : "spectral-surrogate";
}

} // namespace corruptnet
