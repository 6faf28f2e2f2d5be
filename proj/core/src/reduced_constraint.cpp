#include "stagger/reduced_constraint.hpp"

#include <algorithm>
#include <cmath>

#include "stagger/errors.hpp"
#include "stagger/kernel.hpp"

namespace stagger {

namespace {

// Point values of the factor products that enter the two z_q rows.
struct ZqTerms {
    cplx alpha_zq, beta_zq, alpha_0, beta_0;

    // phi_x^- alpha_-(z_q) and psi_x^- beta_-(z_q) for M >= 0.
    static std::pair<cplx, cplx> minus_tails(const FactorSuite& f, long x, cplx zq) {
        return {shift_split_minus(f.inv_alpha_minus, x).minus(zq) * f.alpha_minus_zq,
                shift_split_minus(f.inv_beta_minus, x).minus(zq) * f.beta_minus_zq};
    }

    // Phi_{-x}^- alpha_-(z_q) and Psi_{-x}^- beta_-(z_q) for M < 0.
    static std::pair<cplx, cplx> plus_heads(const FactorSuite& f, long x, cplx zq) {
        return {shift_split_plus(f.alpha.plus, x).minus(zq) * f.alpha_minus_zq,
                shift_split_plus(f.beta.plus, x).minus(zq) * f.beta_minus_zq};
    }
};

cplx q_symbol(cplx z, cplx omega) { return eval_HRQ(z, omega).Q; }

}  // namespace

cplx boundary_row_transform(long m, long n, long row, const LatticeValues& u, cplx z, cplx omega) {
    if (n < m) return {};
    const cplx Q = q_symbol(z, omega);
    cplx bulk{};
    cplx vertical{};
    for (long x = m; x <= n; ++x) {
        const cplx w = ipow(z, -x);
        bulk += w * u(x, row);
        vertical += w * (u(x, row + 1) + u(x, row - 1));
    }
    return -Q * bulk + vertical + ipow(z, -m) * (-z * u(m, row) + u(m - 1, row)) +
           ipow(z, -n) * (u(n + 1, row) - u(n, row) / z);
}

cplx helmholtz_row_sum(long m, long n, long row, const LatticeValues& u, cplx z, cplx omega) {
    cplx total{};
    for (long x = m; x <= n; ++x) {
        const cplx lap = u(x + 1, row) + u(x - 1, row) + u(x, row + 1) + u(x, row - 1) - 4.0 * u(x, row);
        total += ipow(z, -x) * (lap + omega * omega * u(x, row));
    }
    return total;
}

ConstraintSystem assemble_constraint_system(const PreparedScenario& p) {
    if (p.scenario.kind != DefectKind::ConstraintPair) {
        throw Error(ErrorCode::InvalidScenario, "constraint system needs a constraint pair");
    }
    const FactorSuite& f = p.factors;
    const int M = p.scenario.m_offset;
    const long n = std::abs(M);
    const cplx A = p.scenario.amplitude;
    const cplx e = p.e_N;
    const cplx zP = p.wave.zP;
    const cplx zq = p.zeros.z_q;
    const cplx Qzp = q_symbol(zP, p.scenario.omega);
    const cplx a0 = f.alpha_minus_0;
    const cplx b0 = f.beta_minus_0;
    const cplx azq = f.alpha_minus_zq;
    const cplx bzq = f.beta_minus_zq;
    const cplx ia_zP = 1.0 / f.alpha_minus_zP;
    const cplx ib_zP = 1.0 / f.beta_minus_zP;

    ConstraintSystem sys;
    sys.sites = segment_sites(M);
    sys.matrix = Eigen::MatrixXcd::Zero(n + 2, n + 2);
    sys.rhs = Eigen::VectorXcd::Zero(n + 2);
    Eigen::MatrixXcd& A_ = sys.matrix;
    Eigen::VectorXcd& b = sys.rhs;

    const cplx delta_q = zq / (zq - zP);
    b(n) = -delta_q * 0.5 * Qzp * ((1.0 - e) * ia_zP * azq + (1.0 + e) * ib_zP * bzq) * A;
    b(n + 1) = -delta_q * 0.5 * Qzp * (-(1.0 - e) * ia_zP * azq + (1.0 + e) * ib_zP * bzq) * A;

    if (M >= 0) {
        for (long mu = 0; mu < M; ++mu) {
            for (long nu = 0; nu < M; ++nu) A_(mu, nu) = segment_entry_positive(f, nu, mu);
            A_(mu, M) = -(-f.inv_alpha_plus.coeff(mu) / a0 + f.inv_beta_plus.coeff(mu) / b0);
            A_(mu, M + 1) = -segment_entry_positive(f, M, mu);
            cplx total{};
            cplx zP_power = 1.0;
            for (long j = 0; j <= mu; ++j) {
                total += (-(1.0 - e) * ia_zP * f.inv_alpha_plus.coeff(mu - j) +
                          (1.0 + e) * ib_zP * f.inv_beta_plus.coeff(mu - j)) *
                         zP_power;
                zP_power *= zP;
            }
            b(mu) = Qzp * A * total;
        }
        for (long nu = 0; nu < M; ++nu) {
            const auto [phi, psi] = ZqTerms::minus_tails(f, nu, zq);
            A_(M, nu) = -0.5 * (phi - psi);
            A_(M + 1, nu) = -(ipow(zq, -nu) - 0.5 * (phi + psi));
        }
        const auto [phi, psi] = ZqTerms::minus_tails(f, M, zq);
        A_(M, M) = 0.5 * (azq / a0 + bzq / b0);
        A_(M, M + 1) = 0.5 * (phi - psi);
        A_(M + 1, M) = 0.5 * (-azq / a0 + bzq / b0);
        A_(M + 1, M + 1) = ipow(zq, -M) - 0.5 * (phi + psi);
    } else {
        const cplx inv_zP = 1.0 / zP;
        for (long mu = 1; mu <= n; ++mu) {
            for (long nu = 1; nu <= n; ++nu) A_(mu - 1, nu - 1) = segment_entry_negative(f, nu, mu);
            A_(mu - 1, n) = -f.alpha.minus.coeff(-mu) / a0 + f.beta.minus.coeff(-mu) / b0;
            A_(mu - 1, n + 1) = segment_entry_negative(f, n, mu) - (mu == n ? 2.0 : 0.0);
            cplx total{};
            cplx zP_power = inv_zP;
            for (long j = 1; j <= mu; ++j) {
                total += ((1.0 - e) * ia_zP * f.alpha.minus.coeff(j - mu) -
                          (1.0 + e) * ib_zP * f.beta.minus.coeff(j - mu)) *
                         (-zP_power);
                zP_power *= inv_zP;
            }
            b(mu - 1) = Qzp * A * total;
        }
        for (long nu = 1; nu <= n; ++nu) {
            const auto [phi, psi] = ZqTerms::plus_heads(f, nu, zq);
            A_(n, nu - 1) = -0.5 * (phi - psi);
            A_(n + 1, nu - 1) = 0.5 * (phi + psi);
        }
        const auto [phi, psi] = ZqTerms::plus_heads(f, n, zq);
        A_(n, n) = 0.5 * (azq / a0 + bzq / b0);
        A_(n, n + 1) = -0.5 * (phi - psi);
        A_(n + 1, n) = 0.5 * (-azq / a0 + bzq / b0);
        A_(n + 1, n + 1) = 0.5 * (phi + psi);
    }
    return sys;
}

std::vector<cplx> g_inc_samples(const PreparedScenario& p) {
    const FactorSuite& f = p.factors;
    const cplx A = p.scenario.amplitude;
    const cplx e = p.e_N;
    const cplx zP = p.wave.zP;
    const cplx u_inc_m1N = p.incident(-1, p.scenario.n_sep);
    std::vector<cplx> out(p.grid.size());
    for (std::size_t k = 0; k < out.size(); ++k) {
        const cplx z = p.grid.node(k);
        const cplx delta = z / (z - zP);
        const cplx ia = 1.0 / f.alpha.plus_samples[k];
        const cplx ib = 1.0 / f.beta.plus_samples[k];
        const cplx first = 0.5 * (-(1.0 - e) / f.alpha_minus_zP * ia + (1.0 + e) / f.beta_minus_zP * ib) / e *
                           ((1.0 / zP - 1.0 / z) * A * e * delta - u_inc_m1N);
        const cplx second = 0.5 * (-(1.0 - e) * f.alpha_plus_inf * ia + (1.0 + e) * f.beta_plus_inf * ib) / e *
                            ((zP - z) * A * e * delta + z * A * e);
        out[k] = first + second;
    }
    return out;
}

ConstraintSolution solve_constraint(const PreparedScenario& p) {
    ConstraintSystem sys = assemble_constraint_system(p);
    ConstraintSolution sol;
    sol.system = solve_dense_system(std::move(sys.matrix), std::move(sys.rhs), std::move(sys.sites));
    const std::vector<cplx> g = g_inc_samples(p);
    for (const cplx v : g) sol.g_inc_max = std::max(sol.g_inc_max, std::abs(v));
    return sol;
}

}  // namespace stagger
