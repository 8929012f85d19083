#include <doctest.h>

#include <algorithm>
#include <set>

#include "corruptnet/construct.hpp"
#include "corruptnet/detect.hpp"
#include "corruptnet/errors.hpp"
#include "corruptnet/generate.hpp"
#include "test_util.hpp"

using namespace corruptnet;

namespace {

// Exhaustive MWIS oracle over all subsets containing `forced`, with the
// same lexicographic tie-break.
MwisResult mwis_bruteforce(const ComponentWeights& s, int forced) {
    const int k = s.count();
    std::vector<uint32_t> nbr(k, 0);
    for (int i = 0; i < k; ++i)
        for (int j : s.adj[i]) nbr[i] |= 1u << j;
    MwisResult best;
    best.size_sum = -1;
    std::vector<uint32_t> winners;
    for (uint32_t mask = 0; mask < (1u << k); ++mask) {
        if (!(mask >> forced & 1)) continue;
        bool independent = true;
        long sum = 0;
        for (int i = 0; i < k && independent; ++i) {
            if (!(mask >> i & 1)) continue;
            if (nbr[i] & mask) independent = false;
            sum += s.sizes[i];
        }
        if (!independent) continue;
        if (sum > best.size_sum) {
            best.size_sum = sum;
            winners.assign(1, mask);
        } else if (sum == best.size_sum) {
            winners.push_back(mask);
        }
    }
    // lexicographically smallest member set among equal-weight winners
    std::vector<std::vector<int>> sets;
    for (uint32_t mask : winners) {
        std::vector<int> members;
        for (int i = 0; i < k; ++i)
            if (mask >> i & 1) members.push_back(i);
        sets.push_back(std::move(members));
    }
    best.members = *std::min_element(sets.begin(), sets.end());
    best.weight = static_cast<double>(best.size_sum) / s.total;
    return best;
}

} // namespace

TEST_CASE("agreement graph from mutual praise") {
    const Graph g = make_complete(4);
    // everyone truthful: H = G
    const auto all = generate_reports(g, World::from_corrupt(4, {}), Adversary::all_accuse());
    CHECK(agreement_graph(g, all).edges == g.edges);

    // all corrupt, all accusing: H is edgeless
    const auto none = generate_reports(g, World::from_truthful(4, {}), Adversary::all_accuse());
    CHECK(agreement_graph(g, none).edge_count() == 0);

    // collude-praise with T = {0,1,2}: H is the T-triangle plus the B-clique
    const auto r =
        generate_reports(g, World::from_truthful(4, {0, 1, 2}), Adversary::collude_praise());
    const Graph h = agreement_graph(g, r);
    const auto parts = connected_components(h);
    REQUIRE(parts.count() == 2);
    CHECK(parts.components[0] == std::vector<int>{0, 1, 2});
    CHECK(parts.components[1] == std::vector<int>{3});
}

TEST_CASE("directed agreement keeps praised edges") {
    const Graph g = Graph::directed_graph(3, {{0, 1}, {1, 2}, {2, 0}});
    const auto r =
        generate_reports(g, World::from_truthful(3, {0, 1}), Adversary::all_accuse());
    const Graph h = agreement_graph(g, r);
    CHECK(h.directed);
    CHECK(h.edges == std::vector<std::pair<int, int>>{{0, 1}});
}

TEST_CASE("general detection on K5 with colluding corrupt minority") {
    const Graph g = make_complete(5);
    const World w = World::from_truthful(5, {0, 1, 2});
    const auto r = generate_reports(g, w, Adversary::collude_praise());
    const auto result = detect_undirected(g, r, DetectMode::General, 0.1);
    CHECK(result.unknown_count() == 0);
    CHECK(testutil::labels_sound(result, w));
    for (int v : {0, 1, 2}) CHECK(result.labels[v] == Label::Truthful);
    for (int v : {3, 4}) CHECK(result.labels[v] == Label::Corrupt);
    // agrees with the information-theoretic oracle wherever it is decided
    const auto oracle = certain_labels(g, r);
    for (int v = 0; v < 5; ++v)
        if (oracle.labels[v] != Label::Unknown) CHECK(oracle.labels[v] == result.labels[v]);
}

TEST_CASE("mirror confusion at |T| = |B| is ambiguous") {
    const Graph g = make_complete(4);
    const auto r = generate_reports(g, World::from_truthful(4, {0, 1}),
                                    Adversary::mirror_confusion({{0, 2}, {1, 3}}));
    CHECK_THROWS_AS(detect_undirected(g, r, DetectMode::General, 0.1), InstanceError);
    try {
        detect_undirected(g, r, DetectMode::General, 0.1);
    } catch (const InstanceError& e) {
        CHECK(e.kind() == InstanceError::Kind::AmbiguousInstance);
    }
}

TEST_CASE("separator scenarios defeat the detector with a visible error") {
    // Both halves of the split grid qualify and both extend to majority
    // independent sets: the non-expander assumption shows up as ambiguity.
    const Graph g = make_grid(5, 5);
    const auto family = build_separator_scenarios(g, grid_middle_row(5, 5), 0.4);
    REQUIRE(!family.reports.empty());
    CHECK_THROWS_AS(detect_undirected(g, family.reports[0], DetectMode::General, 0.1),
                    InstanceError);
    try {
        detect_undirected(g, family.reports[0], DetectMode::General, 0.1);
    } catch (const InstanceError& e) {
        CHECK(e.kind() == InstanceError::Kind::AmbiguousInstance);
    }
}

TEST_CASE("no large component when everyone accuses everyone") {
    const Graph g = make_grid(4, 4);
    const auto r = generate_reports(g, World::from_truthful(g.n, {}), Adversary::all_accuse());
    CHECK_THROWS_AS(detect_undirected(g, r, DetectMode::General, 0.1), InstanceError);
    try {
        detect_undirected(g, r, DetectMode::General, 0.1);
    } catch (const InstanceError& e) {
        CHECK(e.kind() == InstanceError::Kind::NoLargeComponent);
    }
}

TEST_CASE("fast mode labels the majority component and falls back visibly") {
    const Graph g = make_complete(8);
    const World w = World::from_truthful(8, {0, 1, 2, 3, 4});
    const auto r = generate_reports(g, w, Adversary::collude_praise());
    const auto fast = detect_undirected(g, r, DetectMode::Fast, 0.1);
    CHECK(fast.mode_used == DetectMode::Fast);
    CHECK_FALSE(fast.fell_back);
    CHECK(testutil::labels_sound(fast, w));
    CHECK(fast.unknown_count() == 0);

    // |T| = |B|: no majority component; fast falls back to general, which
    // then reports ambiguity
    const auto mirror = generate_reports(g, World::from_truthful(8, {0, 1, 2, 3}),
                                         Adversary::mirror_confusion());
    try {
        detect_undirected(g, mirror, DetectMode::Fast, 0.1);
        FAIL("expected InstanceError");
    } catch (const InstanceError& e) {
        CHECK(e.kind() == InstanceError::Kind::AmbiguousInstance);
    }
}

TEST_CASE("fast fallback can still decide via disambiguation") {
    // K12, |T| = 7 = (1/2 + delta)n at delta=0.08... just under the fast
    // threshold: collude-praise gives two components of sizes 7 and 5.
    const Graph g = make_complete(12);
    const World w = World::from_truthful(12, {0, 1, 2, 3, 4, 5, 6});
    const auto r = generate_reports(g, w, Adversary::collude_praise());
    const auto result = detect_undirected(g, r, DetectMode::General, 0.1);
    CHECK(testutil::labels_sound(result, w));
    CHECK(result.unknown_count() == 0);
}

TEST_CASE("directed detection basics") {
    const Graph cycle = Graph::directed_graph(3, {{0, 1}, {1, 2}, {2, 0}});
    const World all = World::from_corrupt(3, {});
    const auto r = generate_reports(cycle, all, Adversary::all_accuse());
    for (const auto mode : {DetectMode::Fast, DetectMode::General}) {
        const auto result = detect_directed(cycle, r, mode, 0.05);
        for (int v = 0; v < 3; ++v) CHECK(result.labels[v] == Label::Truthful);
    }

    const auto empty = generate_reports(cycle, World::from_truthful(3, {}), Adversary::all_accuse());
    CHECK_THROWS_AS(detect_directed(cycle, empty, DetectMode::General, 0.05), InstanceError);
}

TEST_CASE("directed disambiguation through the SCC consistency search") {
    // near-complete digraph (every ordered pair except (i, i+1 mod 8)):
    // certified directed-good at delta = 1/20 in the certify suite
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < 8; ++u)
        for (int v = 0; v < 8; ++v)
            if (u != v && v != (u + 1) % 8) edges.emplace_back(u, v);
    const Graph g = Graph::directed_graph(8, std::move(edges));
    const World w = World::from_truthful(8, {0, 2, 4, 5, 7});
    const auto r = generate_reports(g, w, Adversary::collude_praise());
    const auto result = detect_directed(g, r, DetectMode::General, 0.05);
    CHECK(testutil::labels_sound(result, w));
    CHECK(result.unknown_count() == 0);
    const auto oracle = certain_labels(g, r);
    for (int v = 0; v < 8; ++v)
        if (oracle.labels[v] != Label::Unknown) CHECK(oracle.labels[v] == result.labels[v]);
    // the union search respects its work budget
    DetectOptions strangled;
    strangled.search_budget = 0;
    CHECK_THROWS_AS(detect_directed(g, r, DetectMode::General, 0.05, strangled),
                    BudgetExceededError);
}

TEST_CASE("every non-unknown label carries a provenance") {
    const Graph g = make_complete(5);
    const World w = World::from_truthful(5, {0, 1, 2});
    const auto r = generate_reports(g, w, Adversary::collude_praise());
    const auto result = detect_undirected(g, r, DetectMode::General, 0.1);
    for (int v = 0; v < 5; ++v) {
        if (result.labels[v] == Label::Unknown)
            CHECK(result.provenance[v] == Provenance::None);
        else
            CHECK(result.provenance[v] != Provenance::None);
    }
}

TEST_CASE("maximum-weight independent set") {
    // single component
    ComponentWeights lone;
    lone.total = 10;
    lone.sizes = {6};
    lone.adj = {{}};
    auto r = max_weight_independent_set_containing(lone, 0);
    CHECK(r.size_sum == 6);
    CHECK(r.members == std::vector<int>{0});

    // two adjacent 0.45s plus an isolated 0.10
    ComponentWeights three;
    three.total = 100;
    three.sizes = {45, 45, 10};
    three.adj = {{1}, {0}, {}};
    r = max_weight_independent_set_containing(three, 0);
    CHECK(r.size_sum == 55);
    CHECK(r.weight == doctest::Approx(0.55));
    CHECK(r.members == std::vector<int>{0, 2});
}

TEST_CASE("branch and bound equals full enumeration on random instances") {
    for (uint64_t seed = 0; seed < 10; ++seed) {
        const Graph skeleton = testutil::random_graph(12, 18, seed, false);
        ComponentWeights s;
        s.total = 0;
        Rng rng(seed * 7 + 1);
        for (int i = 0; i < 12; ++i) {
            s.sizes.push_back(1 + rng.below_int(9));
            s.total += s.sizes.back();
        }
        s.adj = skeleton.adj;
        for (int forced = 0; forced < 12; forced += 5) {
            const auto fast = max_weight_independent_set_containing(s, forced);
            const auto slow = mwis_bruteforce(s, forced);
            CHECK(fast.size_sum == slow.size_sum);
            CHECK(fast.members == slow.members);
        }
    }
}

TEST_CASE("certain labels: praise forces everything on a complete graph") {
    const Graph g = make_complete(5);
    const auto r = generate_reports(g, World::from_corrupt(5, {}), Adversary::all_accuse());
    const auto oracle = certain_labels(g, r);
    for (int v = 0; v < 5; ++v) CHECK(oracle.labels[v] == Label::Truthful);
}

TEST_CASE("certain labels: mirror worlds leave everything unknown") {
    const Graph g = make_complete(4);
    const auto r = generate_reports(g, World::from_truthful(4, {0, 1}),
                                    Adversary::mirror_confusion({{0, 2}, {1, 3}}));
    // under the |T| >= n/2 prior both mirror worlds are admissible
    const auto weak = certain_labels(g, r, {.min_truthful = 2});
    CHECK_FALSE(weak.no_consistent_world);
    for (int v = 0; v < 4; ++v) CHECK(weak.labels[v] == Label::Unknown);
    // under the strict-majority prior no world is admissible at all
    const auto strict = certain_labels(g, r);
    CHECK(strict.no_consistent_world);
    for (int v = 0; v < 4; ++v) CHECK(strict.labels[v] == Label::Unknown);
}

TEST_CASE("certain labels: scenario families have no truthful-certain vertex") {
    const Graph g = make_grid(3, 3);
    const auto family = build_separator_scenarios(g, grid_middle_row(3, 3), 1.0 / 3);
    const int min_t = g.n - 2 * 3;
    const auto oracle = certain_labels(g, family.reports[0], {.min_truthful = min_t});
    for (int v = 0; v < g.n; ++v) CHECK(oracle.labels[v] != Label::Truthful);
}

TEST_CASE("type purity holds for every adversary and world") {
    for (uint64_t seed = 0; seed < 6; ++seed) {
        const Graph g = testutil::random_graph(16, 34, seed, false);
        const Graph dg = testutil::random_graph(16, 50, seed ^ 0xF00D, true);
        for (int t : {4, 8, 12, 16}) {
            const World w = testutil::random_world(16, t, seed * 131 + t);
            for (const auto& adv :
                 {Adversary::collude_praise(), Adversary::all_accuse(),
                  Adversary::random_verdicts(seed), Adversary::scenario_ri({0, 1}, 0)}) {
                const auto parts = connected_components(agreement_graph(g, generate_reports(g, w, adv)));
                CHECK(testutil::components_type_pure(parts, w));
                const auto dparts =
                    strongly_connected_components(agreement_graph(dg, generate_reports(dg, w, adv)));
                CHECK(testutil::components_type_pure(dparts, w));
            }
        }
    }
}

TEST_CASE("largest truthful component bound on certified instances") {
    // K10 is delta-good for any delta; Claim-style bound: the largest
    // truthful agreement component misses at most delta*n truthful
    // vertices.
    const Graph g = make_complete(10);
    const double delta = 0.1;
    for (int t = 6; t <= 10; ++t)
        for (uint64_t seed = 0; seed < 5; ++seed) {
            const World w = testutil::random_world(10, t, seed);
            for (const auto& adv : {Adversary::collude_praise(), Adversary::all_accuse(),
                                    Adversary::random_verdicts(seed)}) {
                const auto parts = connected_components(agreement_graph(g, generate_reports(g, w, adv)));
                long largest_truthful = 0;
                for (const auto& comp : parts.components)
                    if (!w.is_corrupt(comp.front()))
                        largest_truthful = std::max(largest_truthful, static_cast<long>(comp.size()));
                CHECK(largest_truthful >= t - static_cast<long>(delta * 10));
            }
        }
}

TEST_CASE("detect_connected on stars and blowups") {
    // star: everyone accuses everyone, nothing survives the size filter
    const Graph star = make_star(7);
    const auto accusations =
        generate_reports(star, World::from_truthful(star.n, {0}), Adversary::all_accuse());
    CHECK(detect_connected(star, accusations, 0.25).empty());

    // no corrupt vertices on a connected graph: T' = V
    const Graph grid = make_grid(3, 3);
    const auto clean = generate_reports(grid, World::from_corrupt(9, {}), Adversary::all_accuse());
    CHECK(detect_connected(grid, clean, 0.1).size() == 9);

    // blowup(star(4), 4) with two corrupt vertices in distinct leaf cliques
    const Graph b = blowup(make_star(4), 4);
    const double eps = 0.1; // eps*n = 2
    const World w = World::from_corrupt(b.n, {4, 8});
    const auto r = generate_reports(b, w, Adversary::collude_praise());
    const auto members = detect_connected(b, r, eps);
    CHECK(static_cast<long>(members.size()) >= std::lround((1 - 2 * eps) * b.n));
    for (int v : members) CHECK_FALSE(w.is_corrupt(v));
    // matches the certainty oracle where it decides
    const auto oracle = certain_labels(b, r);
    for (int v : members)
        if (oracle.labels[v] != Label::Unknown) CHECK(oracle.labels[v] == Label::Truthful);
}

TEST_CASE("detector input validation") {
    const Graph g = make_complete(4);
    const auto r = generate_reports(g, World::from_corrupt(4, {}), Adversary::all_accuse());
    CHECK_THROWS_AS(detect_undirected(g, r, DetectMode::General, 0.2), UsageError);
    CHECK_THROWS_AS(detect_undirected(g, r, DetectMode::Connected, 0.1), UsageError);
    CHECK_THROWS_AS(detect_connected(g, r, 1.5), UsageError);
    const Graph d = Graph::directed_graph(2, {{0, 1}});
    CHECK_THROWS_AS(detect_undirected(d, r, DetectMode::General, 0.1), UsageError);
}
