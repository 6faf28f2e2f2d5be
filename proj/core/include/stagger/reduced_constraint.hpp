#pragma once

#include <functional>
#include <vector>

#include "stagger/reduced_crack.hpp"

namespace stagger {

// Reduced solution for the constraint pair: w^t on the segment, then
// u^t_{-1,0} and u^t_{M-1,N}.
struct ConstraintSolution {
    ReducedSolution system;
    double g_inc_max = 0.0;  // max |G^inc| on the contour

    long segment_size() const noexcept { return static_cast<long>(system.sites.size()); }
    Eigen::VectorXcd w_segment() const { return system.unknowns.head(segment_size()); }
    cplx u_m10() const { return system.unknowns(segment_size()); }
    cplx u_Mm1N() const { return system.unknowns(segment_size() + 1); }
};

// Lattice values u_{x,y} supplied to the identity below.
using LatticeValues = std::function<cplx(long x, long y)>;

// B^F(m, n; z) for row y: the transform of the discrete Helmholtz operator over
// x = m..n rewritten through its boundary terms. Zero for n < m.
cplx boundary_row_transform(long m, long n, long row, const LatticeValues& u, cplx z, cplx omega);

// Direct sum of z^{-x} (Laplacian u + omega^2 u)_{x,row} for x = m..n.
cplx helmholtz_row_sum(long m, long n, long row, const LatticeValues& u, cplx z, cplx omega);

// Matrix and right-hand side of the reduced constraint system.
struct ConstraintSystem {
    Eigen::MatrixXcd matrix;
    Eigen::VectorXcd rhs;
    std::vector<long> sites;
};

// Throws ZqOnContour or ResonantIncidence through prepare().
ConstraintSystem assemble_constraint_system(const PreparedScenario& p);

// G^inc evaluated term by term on the contour.
std::vector<cplx> g_inc_samples(const PreparedScenario& p);

ConstraintSolution solve_constraint(const PreparedScenario& p);

}  // namespace stagger
