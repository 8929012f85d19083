#include <doctest.h>

#include <algorithm>

#include "corruptnet/construct.hpp"
#include "corruptnet/errors.hpp"
#include "corruptnet/generate.hpp"
#include "corruptnet/report.hpp"
#include "test_util.hpp"

using namespace corruptnet;

namespace {

std::vector<Adversary> adversary_suite(uint64_t seed) {
    return {Adversary::collude_praise(), Adversary::all_accuse(), Adversary::random_verdicts(seed),
            Adversary::mirror_confusion()};
}

} // namespace

TEST_CASE("no corrupt vertices: every verdict is truthful, any adversary") {
    const Graph g = make_grid(3, 4);
    const World w = World::from_corrupt(g.n, {});
    for (const auto& adv : adversary_suite(5)) {
        const auto r = generate_reports(g, w, adv);
        for (int u = 0; u < g.n; ++u)
            for (const Verdict v : r.verdicts[u]) CHECK(v == Verdict::Truthful);
    }
}

TEST_CASE("mirror confusion on K4 is invariant under the pairing swap") {
    const Graph g = make_complete(4);
    const World w = World::from_truthful(4, {0, 1});
    const auto adv = Adversary::mirror_confusion({{0, 2}, {1, 3}});
    const auto r = generate_reports(g, w, adv);

    // swap 0<->2, 1<->3 and compare verdicts pairwise
    const auto swap_id = [](int v) { return (v + 2) % 4; };
    for (int u = 0; u < 4; ++u)
        for (size_t i = 0; i < g.adj[u].size(); ++i) {
            const int v = g.adj[u][i];
            CHECK(r.verdicts[u][i] == r.verdict(g, swap_id(u), swap_id(v)));
        }

    // both the real and the swapped world are consistent
    CHECK(consistency_check(g, r, w));
    CHECK(consistency_check(g, r, World::from_truthful(4, {2, 3})));
    // and with min_T = 3 no consistent world survives
    CHECK(enumerate_consistent(g, r, 3).empty());
}

TEST_CASE("mirror confusion pairing errors") {
    const Graph g = make_complete(4);
    // |T| > |B| > 0: no pairing exists
    CHECK_THROWS_AS(
        generate_reports(g, World::from_truthful(4, {0, 1, 2}), Adversary::mirror_confusion()),
        UsageError);
    // default pairing picks the smallest corrupt ids when |T| <= |B|
    const auto r =
        generate_reports(g, World::from_truthful(4, {0}), Adversary::mirror_confusion());
    CHECK(consistency_check(g, r, World::from_truthful(4, {1})));
    // bad explicit pairing
    CHECK_THROWS_AS(generate_reports(g, World::from_truthful(4, {0, 1}),
                                     Adversary::mirror_confusion({{0, 1}, {1, 3}})),
                    UsageError);
}

TEST_CASE("scenario rules on the 5x5 grid") {
    const Graph g = make_grid(5, 5);
    const auto separator = grid_middle_row(5, 5); // ids 10..14
    // scenario 0: rows 0-1 corrupt together with the separator
    std::vector<int> corrupt = separator;
    for (int v = 0; v < 10; ++v) corrupt.push_back(v);
    const World w = World::from_corrupt(g.n, corrupt);
    const auto r = generate_reports(g, w, Adversary::scenario_ri(separator, 0));
    // separator vertices accuse everyone
    for (int v : separator)
        for (const Verdict verdict : r.verdicts[v]) CHECK(verdict == Verdict::Corrupt);
    // corrupt component vertices praise inside, accuse outward
    CHECK(r.verdict(g, 0, 1) == Verdict::Truthful);
    CHECK(r.verdict(g, 5, 10) == Verdict::Corrupt);
    // truthful side reports the truth, which matches the same pattern
    CHECK(r.verdict(g, 20, 21) == Verdict::Truthful);
    CHECK(r.verdict(g, 15, 10) == Verdict::Corrupt);
}

TEST_CASE("collude-praise and all-accuse semantics") {
    const Graph g = make_complete(4);
    const World w = World::from_truthful(4, {0, 1});
    const auto praise = generate_reports(g, w, Adversary::collude_praise());
    CHECK(praise.verdict(g, 2, 3) == Verdict::Truthful);
    CHECK(praise.verdict(g, 2, 0) == Verdict::Corrupt);
    CHECK(praise.verdict(g, 0, 1) == Verdict::Truthful);
    CHECK(praise.verdict(g, 0, 2) == Verdict::Corrupt);
    const auto accuse = generate_reports(g, w, Adversary::all_accuse());
    CHECK(accuse.verdict(g, 2, 3) == Verdict::Corrupt);
    CHECK(accuse.verdict(g, 2, 0) == Verdict::Corrupt);
}

TEST_CASE("the true world is always consistent with its reports") {
    for (uint64_t seed = 0; seed < 6; ++seed) {
        const Graph g = testutil::random_graph(14, 30, seed, false);
        for (int t = 0; t <= g.n; t += 3) {
            const World w = testutil::random_world(g.n, t, seed * 31 + t);
            for (const auto& adv : adversary_suite(seed)) {
                if (adv.strategy == Adversary::Strategy::MirrorConfusion &&
                    w.truthful_count() > w.corrupt_count() && w.corrupt_count() > 0)
                    continue; // no pairing exists
                CHECK(consistency_check(g, generate_reports(g, w, adv), w));
            }
        }
    }
}

TEST_CASE("direct contradiction fails the consistency check") {
    const Graph g = Graph::undirected(2, {{0, 1}});
    ReportSet r;
    r.verdicts = {{Verdict::Truthful}, {Verdict::Truthful}};
    // 0 praised 1, but the candidate calls 1 corrupt
    CHECK_FALSE(consistency_check(g, r, World::from_truthful(2, {0})));
    CHECK(consistency_check(g, r, World::from_truthful(2, {0, 1})));
}

TEST_CASE("enumerate_consistent on a complete graph with praise everywhere") {
    const Graph g = make_complete(6);
    const World all = World::from_corrupt(6, {});
    const auto r = generate_reports(g, all, Adversary::all_accuse());
    const auto worlds = enumerate_consistent(g, r, 6 / 2 + 1);
    REQUIRE(worlds.size() == 1);
    CHECK(worlds[0].truthful_count() == 6);
}

TEST_CASE("enumerate_consistent order is ascending in the truthful mask") {
    const Graph g = Graph::undirected(3, {});
    ReportSet r;
    r.verdicts.assign(3, {});
    const auto worlds = enumerate_consistent(g, r, 0);
    REQUIRE(worlds.size() == 8);
    CHECK(worlds[0].truthful_count() == 0);
    CHECK(worlds[1].truthful_ids() == std::vector<int>{0});
    CHECK(worlds[7].truthful_count() == 3);
}

TEST_CASE("the oracle refuses oversized instances") {
    const Graph g = make_complete(26);
    const World w = World::from_corrupt(g.n, {});
    const auto r = generate_reports(g, w, Adversary::all_accuse());
    CHECK_THROWS_AS(enumerate_consistent(g, r, 0), UsageError);
}

TEST_CASE("scenario families leave no common truthful vertex (3x3 grid)") {
    const Graph g = make_grid(3, 3);
    const auto family = build_separator_scenarios(g, grid_middle_row(3, 3), 1.0 / 3);
    REQUIRE(family.reports.size() == 2);
    // the scenarios' own worlds are consistent under the prior they are
    // built for, and no vertex is truthful in all of them
    const int min_t = g.n - 2 * 3; // n - 2*eps*n
    const auto worlds = enumerate_consistent(g, family.reports[0], min_t);
    for (const auto& scenario_world : family.worlds)
        CHECK(std::find(worlds.begin(), worlds.end(), scenario_world) != worlds.end());
    std::vector<bool> common(g.n, true);
    for (const auto& w : worlds)
        for (int v = 0; v < g.n; ++v)
            if (w.is_corrupt(v)) common[v] = false;
    CHECK(std::none_of(common.begin(), common.end(), [](bool b) { return b; }));
}

TEST_CASE("truthful-source verdicts are adversary-independent") {
    for (uint64_t seed = 0; seed < 4; ++seed) {
        const Graph g = testutil::random_graph(12, 26, seed, false);
        const World w = testutil::random_world(12, 6, seed + 100);
        const auto base = generate_reports(g, w, Adversary::all_accuse());
        for (const auto& adv : {Adversary::collude_praise(), Adversary::random_verdicts(seed),
                                Adversary::mirror_confusion()}) {
            const auto r = generate_reports(g, w, adv);
            for (int u = 0; u < g.n; ++u) {
                if (w.is_corrupt(u)) continue;
                CHECK(r.verdicts[u] == base.verdicts[u]);
            }
        }
    }
}

TEST_CASE("consistent-world set is closed under the mirror symmetry") {
    const Graph g = make_complete(4);
    const auto r = generate_reports(g, World::from_truthful(4, {0, 1}),
                                    Adversary::mirror_confusion({{0, 2}, {1, 3}}));
    const auto worlds = enumerate_consistent(g, r, 2);
    const auto swap_id = [](int v) { return (v + 2) % 4; };
    for (const auto& w : worlds) {
        std::vector<int> mapped;
        for (int v : w.truthful_ids()) mapped.push_back(swap_id(v));
        std::sort(mapped.begin(), mapped.end());
        const World image = World::from_truthful(4, mapped);
        CHECK(std::find(worlds.begin(), worlds.end(), image) != worlds.end());
    }
}

TEST_CASE("random adversary is deterministic per seed") {
    const Graph g = make_complete(6);
    const World w = World::from_truthful(6, {0, 1, 2});
    const auto a = generate_reports(g, w, Adversary::random_verdicts(9));
    const auto b = generate_reports(g, w, Adversary::random_verdicts(9));
    const auto c = generate_reports(g, w, Adversary::random_verdicts(10));
    CHECK(a.verdicts == b.verdicts);
    CHECK(a.verdicts != c.verdicts);
}

TEST_CASE("scripted adversary replays and validates coverage") {
    const Graph g = Graph::undirected(3, {{0, 1}, {1, 2}});
    const World w = World::from_truthful(3, {0, 2});
    std::map<std::pair<int, int>, Verdict> script{{{1, 0}, Verdict::Truthful},
                                                  {{1, 2}, Verdict::Corrupt}};
    const auto r = generate_reports(g, w, Adversary::scripted(script));
    CHECK(r.verdict(g, 1, 0) == Verdict::Truthful);
    CHECK(r.verdict(g, 1, 2) == Verdict::Corrupt);
    script.erase({1, 2});
    CHECK_THROWS_AS(generate_reports(g, w, Adversary::scripted(script)), UsageError);
}

TEST_CASE("report and world text formats round trip") {
    const Graph g = make_grid(2, 3);
    const World w = World::from_truthful(g.n, {0, 2, 4});
    const auto r = generate_reports(g, w, Adversary::collude_praise());
    CHECK(parse_reports(g, to_text(g, r)).verdicts == r.verdicts);
    CHECK(parse_world(g.n, to_text(w)) == w);
    CHECK_THROWS_AS(parse_reports(g, "0 1 T\n"), UsageError);        // incomplete
    CHECK_THROWS_AS(parse_reports(g, to_text(g, r) + "0 5 T\n"), UsageError); // non-edge
    CHECK_THROWS_AS(parse_world(g.n, "T: 0 1\n"), UsageError);       // missing B
}
