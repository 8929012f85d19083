#pragma once

#include "corruptnet/graph.hpp"

namespace corruptnet {

enum class SpectralMode { ExactDense, Iterative };

// d - max_{i>=2} |lambda_i| of the adjacency spectrum of a d-regular graph.
// Directed inputs are measured on the underlying undirected graph.
// ExactDense: full symmetric eigendecomposition (tolerance ~1e-9), intended
// for n <= 2000. Iterative: deflated power iteration on d*I + A and
// d*I - A (relative tolerance 1e-6), linear memory, any n.
// Non-regular input is a usage error carrying the degree histogram.
double spectral_gap(const Graph& g, SpectralMode mode);

// Picks ExactDense for n <= 2000, Iterative beyond.
double spectral_gap(const Graph& g);

} // namespace corruptnet
