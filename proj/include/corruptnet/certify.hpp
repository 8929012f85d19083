#pragma once

#include <optional>
#include <string>
#include <vector>

#include "corruptnet/graph.hpp"

namespace corruptnet {

enum class Criterion { UndirectedGood, DirectedGood, DeltaConnected };

enum class CertifyMethod { Exhaustive, SpectralSurrogate };

// pass/fail come with proof obligations; NotAttempted means the work budget
// did not allow an exhaustive answer and no surrogate applied.
enum class CertVerdict { Pass, Fail, NotAttempted };

struct ExpanderCert {
    double delta = 0.0;
    Criterion criterion = Criterion::UndirectedGood;
    CertVerdict verdict = CertVerdict::NotAttempted;
    CertifyMethod method = CertifyMethod::Exhaustive;
    // On exhaustive failure: the violating set(s), re-checkable against the
    // stated inequality. One set for a neighborhood-expansion violation,
    // two for a missing-edge violation.
    std::vector<std::vector<int>> witness;
    std::optional<double> spectral_gap_value;
    std::optional<double> surrogate_threshold;
    std::string detail;

    bool passed() const { return verdict == CertVerdict::Pass; }
};

struct CertifyOptions {
    enum class Method { Auto, Exhaustive, SpectralSurrogate };
    Method method = Method::Auto;
    // Upper bound on the number of subset evaluations the exhaustive check
    // may perform before refusing.
    long long work_budget = 1LL << 26;
    // Surrogate passes when gap >= max(d - 2*sqrt(d-1)*(1+delta), delta*d).
    // Override replaces that default entirely.
    std::optional<double> surrogate_threshold;
};

// Checks the literal set conditions:
//   undirected-good (delta < 1/8):
//     (a) every U with |U| <= floor(2*delta*n) has |N(U)\U| > |U|
//     (b) every disjoint A, B with |A| >= ceil(delta*n), |B| >= ceil(n/4)
//         are joined by an edge
//   directed-good (delta < 1/16):
//     (i)  every U with |U| <= floor(4*delta*n) has |N+(U)\U| > |U|
//     (ii) A->B and B->A edges both exist for the (a,b) sizes above
//   delta-connected (delta < 1/3):
//     every disjoint A1 (>= ceil(delta*n)), A2 (>= ceil((1-3*delta)*n))
//     are joined by an edge
// The pair conditions are checked by complement: a violating pair exists
// iff some A of the minimum size has a large enough non-neighborhood.
// The spectral surrogate is a labeled heuristic, never proof.
ExpanderCert certify(const Graph& g, double delta, Criterion criterion,
                     const CertifyOptions& options = {});

// Re-evaluates a failure witness against the criterion it claims to
// violate. Used by tests and by anyone auditing a cert.
bool witness_violates(const Graph& g, double delta, Criterion criterion,
                      const std::vector<std::vector<int>>& witness);

std::string to_string(Criterion c);
std::string to_string(CertVerdict v);
std::string to_string(CertifyMethod m);

} // namespace corruptnet
