#include <doctest.h>

#include <cmath>
#include <tuple>
#include <vector>

#include "corruptnet/errors.hpp"
#include "corruptnet/generate.hpp"
#include "corruptnet/spectral.hpp"

using namespace corruptnet;

TEST_CASE("spectral gap of small named graphs") {
    CHECK(spectral_gap(make_complete(4), SpectralMode::ExactDense) == doctest::Approx(2.0));
    CHECK(spectral_gap(make_cycle(4), SpectralMode::ExactDense) == doctest::Approx(0.0));
    // Petersen spectrum is {3, 1^5, -2^4}; value frozen from the dense run.
    CHECK(spectral_gap(petersen(), SpectralMode::ExactDense) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("complete graphs: gap is n-2") {
    for (int n = 2; n <= 50; ++n)
        CHECK(spectral_gap(make_complete(n), SpectralMode::ExactDense) ==
              doctest::Approx(n - 2).epsilon(1e-9));
}

TEST_CASE("iterative mode tracks the dense solver") {
    for (const auto& [n, d, seed] : std::vector<std::tuple<int, int, uint64_t>>{
             {60, 6, 1}, {100, 8, 2}, {150, 10, 3}}) {
        const Graph g = random_regular(n, d, seed);
        const double dense = spectral_gap(g, SpectralMode::ExactDense);
        const double iter = spectral_gap(g, SpectralMode::Iterative);
        CHECK(std::abs(dense - iter) < 1e-4);
    }
    // bipartite spectrum: lambda_min = -d makes the gap exactly zero
    CHECK(spectral_gap(make_cycle(12), SpectralMode::Iterative) ==
          doctest::Approx(0.0).epsilon(1e-4));
    // odd cycles are not bipartite; C5's extreme is lambda_min = 2cos(4pi/5)
    CHECK(spectral_gap(make_cycle(5), SpectralMode::Iterative) ==
          doctest::Approx(2 + 2 * std::cos(4 * M_PI / 5)).epsilon(1e-4));
}

TEST_CASE("directed inputs are measured on the underlying graph") {
    const Graph oriented = orient_eulerian(make_cycle(8), 1, 5).graph;
    CHECK(oriented.directed);
    CHECK(spectral_gap(oriented, SpectralMode::ExactDense) ==
          doctest::Approx(spectral_gap(make_cycle(8), SpectralMode::ExactDense)));
}

TEST_CASE("non-regular input is a usage error carrying the degree histogram") {
    try {
        spectral_gap(make_star(5), SpectralMode::ExactDense);
        FAIL("expected UsageError");
    } catch (const UsageError& e) {
        const std::string what = e.what();
        CHECK(what.find("histogram") != std::string::npos);
        CHECK(what.find("1x5") != std::string::npos); // five degree-1 leaves
    }
}
