#pragma once

#include <vector>

#include <Eigen/Dense>

#include "stagger/prepared.hpp"

namespace stagger {

// Finite unknown vector of a reduced system with its diagnostics.
struct ReducedSolution {
    std::vector<long> sites;    // x of each segment unknown
    Eigen::VectorXcd unknowns;  // segment values followed by any extra scalars
    Eigen::MatrixXcd matrix;
    Eigen::VectorXcd rhs;
    double residual = 0.0;      // max |A chi - b|
    double rhs_norm = 0.0;      // max |b|
    double condition = 1.0;     // ratio of extreme singular values
};

// Dense LU solve with an SVD condition estimate; throws SingularSystem above 1e12.
ReducedSolution solve_dense_system(Eigen::MatrixXcd matrix, Eigen::VectorXcd rhs, std::vector<long> sites);

// Segment sites: 0..M-1 for M > 0, -1, -2, .., M for M < 0, empty for M = 0.
std::vector<long> segment_sites(int m_offset);

// Incident relative openings of the two cracked rows as "+" functions.
struct IncidentJump {
    cplx q0;   // A (1 - exp(-i ky))
    cplx e_N;  // exp(i ky N)
    cplx zP;

    // delta_D^+(z / z_P) = z / (z - z_P).
    cplx delta(cplx z) const { return z / (z - zP); }
    cplx row0(cplx z) const { return q0 * delta(z); }
    cplx rowN(cplx z) const { return q0 * e_N * delta(z); }
};

IncidentJump incident_jump_plus(const PreparedScenario& p);

// Coefficient of z^{-mu} in A_x = phi_x^+ (1/alpha)_+ + psi_x^+ (1/beta)_+, x, mu >= 0.
cplx segment_entry_positive(const FactorSuite& f, long x, long mu);

// Coefficient of z^{mu} in A_{-x} = Phi_{-x}^- alpha_- + Psi_{-x}^- beta_-, x, mu >= 1.
cplx segment_entry_negative(const FactorSuite& f, long x, long mu);

// A_x as a series, built from the shift-split primitives.
LaurentSeries assemble_Ax(const FactorSuite& f, long x);

// Contour samples of the incident forcing F^inc.
std::vector<cplx> assemble_Finc(const PreparedScenario& p);

// Right-hand side entry b_mu of the reduced crack system.
cplx crack_rhs_entry(const PreparedScenario& p, long mu);

// Total relative openings v^t_{x,N} on the stagger segment.
ReducedSolution solve_crack(const PreparedScenario& p);

}  // namespace stagger
