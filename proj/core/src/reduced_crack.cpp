#include "stagger/reduced_crack.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "stagger/errors.hpp"

namespace stagger {

ReducedSolution solve_dense_system(Eigen::MatrixXcd matrix, Eigen::VectorXcd rhs, std::vector<long> sites) {
    ReducedSolution sol;
    sol.sites = std::move(sites);
    sol.matrix = std::move(matrix);
    sol.rhs = std::move(rhs);
    if (sol.matrix.rows() == 0) {
        sol.unknowns = Eigen::VectorXcd(0);
        return sol;
    }
    const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(sol.matrix);
    const auto& sv = svd.singularValues();
    const double smallest = sv(sv.size() - 1);
    sol.condition = smallest > 0.0 ? sv(0) / smallest : INFINITY;
    if (!(sol.condition <= 1e12)) {
        throw Error(ErrorCode::SingularSystem, "condition estimate " + std::to_string(sol.condition));
    }
    sol.unknowns = sol.matrix.partialPivLu().solve(sol.rhs);
    sol.residual = (sol.matrix * sol.unknowns - sol.rhs).cwiseAbs().maxCoeff();
    sol.rhs_norm = sol.rhs.cwiseAbs().maxCoeff();
    return sol;
}

std::vector<long> segment_sites(int m_offset) {
    std::vector<long> sites;
    if (m_offset > 0) {
        for (long x = 0; x < m_offset; ++x) sites.push_back(x);
    } else {
        for (long x = -1; x >= m_offset; --x) sites.push_back(x);
    }
    return sites;
}

IncidentJump incident_jump_plus(const PreparedScenario& p) {
    const cplx q0 = p.scenario.amplitude * (1.0 - std::exp(cplx(0.0, -1.0) * p.wave.ky));
    return {q0, p.e_N, p.wave.zP};
}

cplx segment_entry_positive(const FactorSuite& f, long x, long mu) {
    cplx total{};
    for (long j = 0; j <= std::min(x, mu); ++j) {
        total += f.inv_alpha_minus.coeff(j - x) * f.inv_alpha_plus.coeff(mu - j) +
                 f.inv_beta_minus.coeff(j - x) * f.inv_beta_plus.coeff(mu - j);
    }
    return total;
}

cplx segment_entry_negative(const FactorSuite& f, long x, long mu) {
    cplx total{};
    for (long k = 1; k <= std::min(x, mu); ++k) {
        total += f.alpha.plus.coeff(x - k) * f.alpha.minus.coeff(k - mu) +
                 f.beta.plus.coeff(x - k) * f.beta.minus.coeff(k - mu);
    }
    return total;
}

LaurentSeries assemble_Ax(const FactorSuite& f, long x) {
    const ShiftSplit phi = shift_split_minus(f.inv_alpha_minus, x);
    const ShiftSplit psi = shift_split_minus(f.inv_beta_minus, x);
    return product(phi.plus, f.inv_alpha_plus) + product(psi.plus, f.inv_beta_plus);
}

std::vector<cplx> assemble_Finc(const PreparedScenario& p) {
    const IncidentJump jump = incident_jump_plus(p);
    const FactorSuite& f = p.factors;
    const cplx ca = -(1.0 - p.e_N) / f.alpha_minus_zP;
    const cplx cb = (1.0 + p.e_N) / f.beta_minus_zP;
    const auto& grid = p.grid;
    std::vector<cplx> out(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const cplx z = grid.node(k);
        out[k] = (ca / f.alpha.plus_samples[k] + cb / f.beta.plus_samples[k]) * jump.row0(z);
    }
    return out;
}

cplx crack_rhs_entry(const PreparedScenario& p, long mu) {
    const FactorSuite& f = p.factors;
    const IncidentJump jump = incident_jump_plus(p);
    const cplx ca = (1.0 - p.e_N) / f.alpha_minus_zP;
    const cplx cb = (1.0 + p.e_N) / f.beta_minus_zP;
    const cplx zP = p.wave.zP;
    cplx total{};
    if (p.scenario.m_offset > 0) {
        // Convolution of (1/alpha)_+ with the geometric series of delta_D^+.
        cplx zP_power = 1.0;
        for (long j = 0; j <= mu; ++j) {
            total += (-ca * f.inv_alpha_plus.coeff(mu - j) + cb * f.inv_beta_plus.coeff(mu - j)) * zP_power;
            zP_power *= zP;
        }
    } else {
        // Polynomial part of alpha_- z^{mu} delta_D^+ expanded inside |z_P|.
        const cplx inv_zP = 1.0 / zP;
        cplx zP_power = inv_zP;
        for (long j = 1; j <= mu; ++j) {
            total += (ca * f.alpha.minus.coeff(j - mu) - cb * f.beta.minus.coeff(j - mu)) * (-zP_power);
            zP_power *= inv_zP;
        }
    }
    return total * jump.q0;
}

ReducedSolution solve_crack(const PreparedScenario& p) {
    if (p.scenario.kind != DefectKind::CrackPair) {
        throw Error(ErrorCode::InvalidScenario, "solve_crack needs a crack pair");
    }
    const int M = p.scenario.m_offset;
    std::vector<long> sites = segment_sites(M);
    const long n = static_cast<long>(sites.size());
    Eigen::MatrixXcd matrix(n, n);
    Eigen::VectorXcd rhs(n);
    for (long row = 0; row < n; ++row) {
        const long mu = M > 0 ? row : row + 1;
        for (long col = 0; col < n; ++col) {
            matrix(row, col) = M > 0 ? segment_entry_positive(p.factors, col, mu)
                                     : segment_entry_negative(p.factors, col + 1, mu);
        }
        rhs(row) = crack_rhs_entry(p, mu);
    }
    return solve_dense_system(std::move(matrix), std::move(rhs), std::move(sites));
}

}  // namespace stagger
