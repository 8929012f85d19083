#include <doctest.h>

#include <bit>
#include <cstdint>

#include "corruptnet/certify.hpp"
#include "corruptnet/errors.hpp"
#include "corruptnet/generate.hpp"
#include "corruptnet/thresholds.hpp"
#include "test_util.hpp"

using namespace corruptnet;

namespace {

const CertifyOptions kExhaustive{.method = CertifyOptions::Method::Exhaustive,
                                 .work_budget = 1LL << 26,
                                 .surrogate_threshold = std::nullopt};

// Literal double-subset oracle for undirected-good on bitmask-sized graphs:
// enumerates every U and every disjoint (A, B) pair directly, with no
// complement shortcut.
bool undirected_good_bruteforce(const Graph& g, double delta) {
    const int n = g.n;
    REQUIRE(n <= 14);
    std::vector<uint32_t> nbr(n, 0);
    for (const auto& [u, v] : g.edges) {
        nbr[u] |= 1u << v;
        nbr[v] |= 1u << u;
    }
    const uint32_t full = (1u << n) - 1;
    const long u_limit = floor_frac(2 * delta * n);
    const long a_min = ceil_frac(delta * n);
    const long b_min = (n + 3) / 4;
    for (uint32_t mask = 1; mask <= full; ++mask) {
        uint32_t hood = 0;
        for (uint32_t rest = mask; rest;) {
            const int u = std::countr_zero(rest);
            rest &= rest - 1;
            hood |= nbr[u];
        }
        const int size = std::popcount(mask);
        if (size <= u_limit && std::popcount(hood & ~mask) <= size) return false;
        if (size >= a_min) {
            // any B inside the untouched rest violates the pair condition
            if (std::popcount(full & ~mask & ~hood) >= b_min) return false;
        }
    }
    return true;
}

} // namespace

TEST_CASE("complete graphs certify undirected-good") {
    const auto cert = certify(make_complete(6), 0.1, Criterion::UndirectedGood, kExhaustive);
    CHECK(cert.verdict == CertVerdict::Pass);
    CHECK(cert.method == CertifyMethod::Exhaustive);
}

TEST_CASE("C12 fails with the first path segment as witness") {
    const auto cert = certify(make_cycle(12), 0.1, Criterion::UndirectedGood, kExhaustive);
    REQUIRE(cert.verdict == CertVerdict::Fail);
    REQUIRE(cert.witness.size() == 1);
    CHECK(cert.witness[0] == std::vector<int>{0, 1});
    CHECK(witness_violates(make_cycle(12), 0.1, Criterion::UndirectedGood, cert.witness));
}

TEST_CASE("Petersen verdict matches the literal subset-pair oracle") {
    const Graph pet = petersen();
    const auto cert = certify(pet, 0.1, Criterion::UndirectedGood, kExhaustive);
    const bool oracle = undirected_good_bruteforce(pet, 0.1);
    CHECK(cert.passed() == oracle);
    // frozen from the oracle run: the pair condition fails (a single vertex
    // has six non-neighbors, room for a disjoint quarter-size set)
    CHECK(cert.verdict == CertVerdict::Fail);
    REQUIRE(cert.witness.size() == 2);
    CHECK(witness_violates(pet, 0.1, Criterion::UndirectedGood, cert.witness));
}

TEST_CASE("certifier agrees with the oracle on random small graphs") {
    for (uint64_t seed = 0; seed < 12; ++seed) {
        const Graph g = testutil::random_graph(10, 4 + static_cast<int>(seed) * 2, seed, false);
        const auto cert = certify(g, 0.1, Criterion::UndirectedGood, kExhaustive);
        CHECK(cert.passed() == undirected_good_bruteforce(g, 0.1));
        if (cert.verdict == CertVerdict::Fail)
            CHECK(witness_violates(g, 0.1, Criterion::UndirectedGood, cert.witness));
    }
}

TEST_CASE("expansion condition is monotone in delta") {
    // Passing at delta keeps the U-condition clean at any smaller delta;
    // a smaller-delta failure can only come from the pair condition.
    const Graph g = random_regular(16, 10, 11);
    const auto at_high = certify(g, 0.12, Criterion::UndirectedGood, kExhaustive);
    if (at_high.passed()) {
        for (const double lower : {0.10, 0.08, 0.05}) {
            const auto cert = certify(g, lower, Criterion::UndirectedGood, kExhaustive);
            if (cert.verdict == CertVerdict::Fail) CHECK(cert.witness.size() == 2);
        }
    }
    // complete graphs pass at every admissible delta
    for (const double delta : {0.02, 0.05, 0.1, 0.12})
        CHECK(certify(make_complete(9), delta, Criterion::UndirectedGood, kExhaustive).passed());
}

TEST_CASE("budget exhaustion yields not-attempted, never a pass") {
    CertifyOptions tight = kExhaustive;
    tight.work_budget = 100;
    const auto cert = certify(make_complete(30), 0.1, Criterion::UndirectedGood, tight);
    CHECK(cert.verdict == CertVerdict::NotAttempted);
    CHECK(cert.detail.find("budget") != std::string::npos);
}

TEST_CASE("auto method falls back to the labeled spectral surrogate") {
    CertifyOptions options; // auto
    options.work_budget = 100;
    const Graph g = random_regular(64, 8, 21);
    const auto cert = certify(g, 0.1, Criterion::UndirectedGood, options);
    CHECK(cert.method == CertifyMethod::SpectralSurrogate);
    REQUIRE(cert.spectral_gap_value.has_value());
    REQUIRE(cert.surrogate_threshold.has_value());
    CHECK(cert.detail.find("not proof") != std::string::npos);
    CHECK((cert.verdict == CertVerdict::Pass) ==
          (*cert.spectral_gap_value >= *cert.surrogate_threshold - 1e-12));
    // the surrogate refuses irregular graphs
    CertifyOptions surrogate;
    surrogate.method = CertifyOptions::Method::SpectralSurrogate;
    CHECK(certify(make_star(9), 0.1, Criterion::UndirectedGood, surrogate).verdict ==
          CertVerdict::NotAttempted);
}

TEST_CASE("delta ranges are enforced per criterion") {
    CHECK_THROWS_AS(certify(make_complete(6), 0.2, Criterion::UndirectedGood, kExhaustive),
                    UsageError);
    CHECK_THROWS_AS(certify(make_complete(6), 0.0, Criterion::UndirectedGood, kExhaustive),
                    UsageError);
    const Graph d = Graph::directed_graph(3, {{0, 1}, {1, 2}, {2, 0}});
    CHECK_THROWS_AS(certify(d, 0.1, Criterion::DirectedGood, kExhaustive), UsageError); // >= 1/16
    CHECK_THROWS_AS(certify(d, 0.05, Criterion::UndirectedGood, kExhaustive), UsageError);
    CHECK_THROWS_AS(certify(make_complete(6), 0.05, Criterion::DirectedGood, kExhaustive),
                    UsageError);
}

TEST_CASE("directed-good on a dense digraph") {
    // near-complete digraph: every ordered pair except (i, i+1 mod 8)
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < 8; ++u)
        for (int v = 0; v < 8; ++v)
            if (u != v && v != (u + 1) % 8) edges.emplace_back(u, v);
    const Graph g = Graph::directed_graph(8, std::move(edges));
    const auto cert = certify(g, 0.05, Criterion::DirectedGood, kExhaustive);
    CHECK(cert.passed());

    // a directed 8-cycle has no out-expansion to speak of
    std::vector<std::pair<int, int>> ring;
    for (int i = 0; i < 8; ++i) ring.emplace_back(i, (i + 1) % 8);
    const auto bad = certify(Graph::directed_graph(8, std::move(ring)), 0.05,
                             Criterion::DirectedGood, kExhaustive);
    CHECK(bad.verdict == CertVerdict::Fail);
    CHECK(witness_violates(Graph::directed_graph(8, [] {
                               std::vector<std::pair<int, int>> e;
                               for (int i = 0; i < 8; ++i) e.emplace_back(i, (i + 1) % 8);
                               return e;
                           }()),
                           0.05, Criterion::DirectedGood, bad.witness));
}

TEST_CASE("delta-connected checks") {
    // star(5) at eps = 1/(4m): vacuous pass, disjoint sets cannot both fit
    CHECK(certify(make_star(5), 0.05, Criterion::DeltaConnected, kExhaustive).passed());
    // two disjoint triangles are not connected in this sense
    const Graph two =
        Graph::undirected(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}});
    const auto cert = certify(two, 0.3, Criterion::DeltaConnected, kExhaustive);
    CHECK(cert.verdict == CertVerdict::Fail);
    CHECK(witness_violates(two, 0.3, Criterion::DeltaConnected, cert.witness));
}
