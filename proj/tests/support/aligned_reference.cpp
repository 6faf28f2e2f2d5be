#include "aligned_reference.hpp"

#include <Eigen/Dense>

#include <array>
#include <cmath>

namespace stagger::testing {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

std::array<cplx, 2> to_diagonal(cplx a, cplx b) { return {(a - b) * kInvSqrt2, (a + b) * kInvSqrt2}; }
std::array<cplx, 2> from_diagonal(cplx a, cplx b) { return {(a + b) * kInvSqrt2, (b - a) * kInvSqrt2}; }

LatticeField fill(const PreparedScenario& p, const RowTransforms& rows, const FieldWindow& window) {
    LatticeField field;
    field.window = window;
    const auto count = static_cast<std::size_t>(window.width() * window.height());
    field.scattered.resize(count);
    field.incident.resize(count);
    for (long y = window.y_min; y <= window.y_max; ++y) {
        const std::vector<cplx> values = inverse_transform(rows.row(y), p.grid, window.x_min, window.x_max);
        for (long x = window.x_min; x <= window.x_max; ++x) {
            const std::size_t k = field.index(x, y);
            field.scattered[k] = values[static_cast<std::size_t>(x - window.x_min)];
            field.incident[k] = p.incident(x, y);
        }
    }
    return field;
}

AlignedReference crack_reference(const PreparedScenario& p, const FieldWindow& window) {
    const FactorSuite& f = p.factors;
    const std::size_t n = p.grid.size();
    const cplx zP = p.wave.zP;
    const cplx q0 = p.scenario.amplitude * (1.0 - std::exp(-cplx(0.0, 1.0) * p.wave.ky));
    const std::array<cplx, 2> s = to_diagonal(q0, q0 * p.e_N);
    const cplx minus_zP[2] = {f.alpha_minus_zP, f.beta_minus_zP};
    std::vector<cplx> jump0(n), jumpN(n);
    for (std::size_t i = 0; i < n; ++i) {
        const cplx z = p.grid.node(i);
        const cplx delta = z / (z - zP);
        const cplx dm[2] = {f.alpha.minus_samples[i], f.beta.minus_samples[i]};
        const cplx dp[2] = {f.alpha.plus_samples[i], f.beta.plus_samples[i]};
        cplx t_plus[2], t_minus[2];
        for (int c = 0; c < 2; ++c) {
            t_plus[c] = s[c] * delta / minus_zP[c];
            t_minus[c] = s[c] * delta * (1.0 / dm[c] - 1.0 / minus_zP[c]);
        }
        const auto vm = from_diagonal(dm[0] * t_minus[0], dm[1] * t_minus[1]);
        const auto vp = from_diagonal(t_plus[0] / dp[0], t_plus[1] / dp[1]);
        jump0[i] = vm[0] + vp[0] - q0 * delta;
        jumpN[i] = vm[1] + vp[1] - q0 * p.e_N * delta;
    }
    AlignedReference out;
    out.field = fill(p, RowTransforms::from_crack_jumps(p, jump0, jumpN), window);
    return out;
}

// Constraint forcing on row c is a_c delta + b_c; b depends on the two unknown
// total displacements u^t_{-1,0} and u^t_{-1,N}.
struct ConstraintPieces {
    std::array<cplx, 2> a;
    std::array<cplx, 2> b;
};

ConstraintPieces constraint_pieces(const PreparedScenario& p, cplx u_m10, cplx u_m1N) {
    const cplx A = p.scenario.amplitude;
    const cplx zP = p.wave.zP;
    const cplx w2 = p.scenario.omega * p.scenario.omega;
    const cplx q_zP = 4.0 - zP - 1.0 / zP - w2;
    const long N = p.scenario.n_sep;
    ConstraintPieces pieces;
    pieces.a = {-q_zP * A, -q_zP * A * p.e_N};
    pieces.b = {-A / zP + p.incident(-1, 0) - u_m10, -A * p.e_N / zP + p.incident(-1, N) - u_m1N};
    return pieces;
}

// w^- at z for the given forcing, from the point-value splits.
std::array<cplx, 2> constraint_minus(const PreparedScenario& p, const ConstraintPieces& pieces, cplx z,
                                     const cplx dm[2]) {
    const FactorSuite& f = p.factors;
    const cplx delta = z / (z - p.wave.zP);
    const cplx minus_zP[2] = {f.alpha_minus_zP, f.beta_minus_zP};
    const cplx minus_0[2] = {f.alpha_minus_0, f.beta_minus_0};
    const auto sa = to_diagonal(pieces.a[0], pieces.a[1]);
    const auto sb = to_diagonal(pieces.b[0], pieces.b[1]);
    cplx t_minus[2];
    for (int c = 0; c < 2; ++c) {
        t_minus[c] = -(sa[c] * delta * (1.0 / dm[c] - 1.0 / minus_zP[c]) + sb[c] * (1.0 / dm[c] - 1.0 / minus_0[c]));
    }
    return from_diagonal(dm[0] * t_minus[0], dm[1] * t_minus[1]);
}

// W_c(z) + w^-_c(z); each row transform is W + w^- divided by Q.
std::array<cplx, 2> constraint_numerators(const PreparedScenario& p, cplx u_m10, cplx u_m1N, cplx z,
                                          const cplx dm[2]) {
    const cplx A = p.scenario.amplitude;
    const long N = p.scenario.n_sep;
    const auto wm = constraint_minus(p, constraint_pieces(p, u_m10, u_m1N), z, dm);
    const cplx W0 = -u_m10 + p.incident(-1, 0) - z * A;
    const cplx WN = -u_m1N + p.incident(-1, N) - z * A * p.e_N;
    return {W0 + wm[0], WN + wm[1]};
}

AlignedReference constraint_reference(const PreparedScenario& p, const FieldWindow& window) {
    const FactorSuite& f = p.factors;
    const cplx zq = p.zeros.z_q;
    const cplx dm_q[2] = {f.alpha_minus_zq, f.beta_minus_zq};
    // Regularity at z_q: both numerators vanish there. They are affine in the unknowns.
    const auto base = constraint_numerators(p, 0.0, 0.0, zq, dm_q);
    const auto e1 = constraint_numerators(p, 1.0, 0.0, zq, dm_q);
    const auto e2 = constraint_numerators(p, 0.0, 1.0, zq, dm_q);
    Eigen::Matrix2cd matrix;
    matrix << e1[0] - base[0], e2[0] - base[0], e1[1] - base[1], e2[1] - base[1];
    const Eigen::Vector2cd unknowns = matrix.fullPivLu().solve(Eigen::Vector2cd(-base[0], -base[1]));

    AlignedReference out;
    out.u_m10 = unknowns(0);
    out.u_m1N = unknowns(1);
    const std::size_t n = p.grid.size();
    const cplx A = p.scenario.amplitude;
    std::vector<cplx> row0(n), rowN(n);
    for (std::size_t i = 0; i < n; ++i) {
        const cplx z = p.grid.node(i);
        const cplx delta = z / (z - p.wave.zP);
        const cplx dm[2] = {f.alpha.minus_samples[i], f.beta.minus_samples[i]};
        const auto num = constraint_numerators(p, out.u_m10, out.u_m1N, z, dm);
        row0[i] = num[0] / p.kernel.Q[i] - A * delta;
        rowN[i] = num[1] / p.kernel.Q[i] - A * p.e_N * delta;
    }
    out.field = fill(p, RowTransforms::from_constraint_rows(p, row0, rowN), window);
    return out;
}

}  // namespace

AlignedReference aligned_reference(const PreparedScenario& p, const FieldWindow& window) {
    return p.scenario.kind == DefectKind::CrackPair ? crack_reference(p, window) : constraint_reference(p, window);
}

}  // namespace stagger::testing
