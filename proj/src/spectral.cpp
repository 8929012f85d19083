#include "corruptnet/spectral.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <sstream>

#include "corruptnet/errors.hpp"
#include "corruptnet/rng.hpp"

namespace corruptnet {

namespace {

constexpr int kDenseLimit = 2000;
constexpr double kIterativeTol = 1e-6;
constexpr int kIterativeCap = 20000;

double dense_gap(const Graph& g, int d) {
    const int n = g.n;
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    for (const auto& [u, v] : g.edges) {
        a(u, v) = 1.0;
        a(v, u) = 1.0;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a, Eigen::EigenvaluesOnly);
    const auto& ev = solver.eigenvalues(); // ascending
    if (n < 2) return 0.0;
    // ev[n-1] is the Perron value d; the extremes of the rest carry the
    // largest nontrivial |lambda|.
    const double lam = std::max(std::abs(ev[0]), std::abs(ev[n - 2]));
    return d - lam;
}

// Largest eigenvalue of (shift*I + sign*A) restricted to the complement of
// the all-ones vector, by power iteration with re-orthogonalization. Both
// shifted operators are PSD for a d-regular graph, so the iteration is
// stable even on bipartite spectra. Stops when the residual certifies the
// Rayleigh quotient within kIterativeTol of a true eigenvalue.
double shifted_power(const Graph& g, double shift, double sign) {
    const int n = g.n;
    std::vector<double> x(n), y(n);
    Rng rng(0x5eed5eedULL);
    for (int i = 0; i < n; ++i) x[i] = rng.unit() - 0.5;
    auto deflate = [&](std::vector<double>& v) {
        double mean = 0;
        for (double value : v) mean += value;
        mean /= n;
        for (double& value : v) value -= mean;
    };
    auto normalize = [&](std::vector<double>& v) {
        double norm = 0;
        for (double value : v) norm += value * value;
        norm = std::sqrt(norm);
        if (norm > 0)
            for (double& value : v) value /= norm;
        return norm;
    };
    deflate(x);
    normalize(x);
    double theta = 0.0;
    for (int iter = 0; iter < kIterativeCap; ++iter) {
        for (int u = 0; u < n; ++u) {
            double acc = shift * x[u];
            for (int v : g.adj[u]) acc += sign * x[v];
            y[u] = acc;
        }
        deflate(y);
        theta = 0.0;
        for (int i = 0; i < n; ++i) theta += x[i] * y[i]; // Rayleigh quotient, ||x|| = 1
        double residual = 0.0;
        for (int i = 0; i < n; ++i) {
            const double r = y[i] - theta * x[i];
            residual += r * r;
        }
        // symmetric residual bound: some eigenvalue lies within ||Bx - tx||
        if (std::sqrt(residual) <= kIterativeTol * std::max(1.0, std::abs(theta))) return theta;
        normalize(y);
        x.swap(y);
    }
    return theta;
}

double iterative_gap(const Graph& g, int d) {
    if (g.n < 2) return 0.0;
    // lambda_2 = top(dI + A) - d; -lambda_min = top(dI - A) - d.
    const double up = shifted_power(g, d, 1.0) - d;
    const double down = shifted_power(g, d, -1.0) - d;
    const double lam = std::max({up, down, 0.0});
    return d - lam;
}

} // namespace

double spectral_gap(const Graph& g, SpectralMode mode) {
    const Graph base = g.directed ? g.underlying_undirected() : g;
    const auto d = base.regular_degree();
    if (!d) {
        std::ostringstream msg;
        msg << "spectral_gap requires a regular graph; degree histogram:";
        const auto hist = base.degree_histogram();
        for (size_t deg = 0; deg < hist.size(); ++deg)
            if (hist[deg] > 0) msg << ' ' << deg << 'x' << hist[deg];
        throw UsageError(msg.str());
    }
    if (mode == SpectralMode::ExactDense) {
        if (base.n > kDenseLimit)
            throw UsageError("exact-dense spectral mode is limited to n <= " +
                             std::to_string(kDenseLimit) + "; use iterative");
        return dense_gap(base, *d);
    }
    return iterative_gap(base, *d);
}

double spectral_gap(const Graph& g) {
    const int n = g.directed ? g.underlying_undirected().n : g.n;
    return spectral_gap(g, n <= kDenseLimit ? SpectralMode::ExactDense : SpectralMode::Iterative);
}

} // namespace corruptnet
