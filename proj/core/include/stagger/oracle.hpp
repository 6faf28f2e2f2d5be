#pragma once

#include <vector>

#include "stagger/field.hpp"

namespace stagger {

struct OracleOptions {
    int ng = 0;                 // half-width; 0 selects 91 + |M|
    double tolerance = 1e-10;   // relative residual of the sparse solve
    int max_iterations = 20000;
};

// Direct solve of the truncated lattice problem with a homogeneous Dirichlet
// boundary for the scattered field.
struct OracleResult {
    LatticeField field;        // window [-Ng, Ng]^2
    double residual = 0.0;     // ||A u - b|| / ||b||
    int iterations = 0;
    bool direct_fallback = false;
};

// Throws IterationDivergence when neither solver reaches the tolerance.
OracleResult solve_grid(const ScatteringScenario& s, const OracleOptions& options = {});

// Segment values v^t (crack) or w^t followed by u^t_{-1,0} and u^t_{M-1,N}
// (constraint), read from a total field. Throws WindowTooSmall.
std::vector<cplx> extract_traces(const LatticeField& field, const ScatteringScenario& s);

}  // namespace stagger
