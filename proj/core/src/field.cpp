#include "stagger/field.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "stagger/errors.hpp"
#include "stagger/kernel.hpp"

namespace stagger {

namespace {

using Pair = std::array<std::vector<cplx>, 2>;

const double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

Pair zero_pair(std::size_t n) { return {std::vector<cplx>(n), std::vector<cplx>(n)}; }

// J = [[1, -1], [1, 1]] / sqrt 2 and its inverse, the transpose.
std::array<cplx, 2> apply_J(cplx a, cplx b) { return {(a - b) * kInvSqrt2, (a + b) * kInvSqrt2}; }
std::array<cplx, 2> apply_J_inv(cplx a, cplx b) { return {(a + b) * kInvSqrt2, (b - a) * kInvSqrt2}; }

struct FactorView {
    const std::vector<cplx>* minus[2];
    const std::vector<cplx>* plus[2];
    cplx minus_zP[2];
};

FactorView factor_view(const PreparedScenario& p) {
    const FactorSuite& f = p.factors;
    return {{&f.alpha.minus_samples, &f.beta.minus_samples},
            {&f.alpha.plus_samples, &f.beta.plus_samples},
            {f.alpha_minus_zP, f.beta_minus_zP}};
}

// max |v^- + L v^+ - rhs| with L = scalar [[1, lambda^N], [lambda^N, 1]].
double wh_residual(const PreparedScenario& p, const Pair& minus, const Pair& plus, const Pair& rhs) {
    const KernelBundle& k = p.kernel;
    double worst = 0.0;
    for (std::size_t i = 0; i < minus[0].size(); ++i) {
        const cplx l0 = k.scalar[i] * (plus[0][i] + k.lam_N[i] * plus[1][i]);
        const cplx l1 = k.scalar[i] * (k.lam_N[i] * plus[0][i] + plus[1][i]);
        worst = std::max(worst, std::abs(minus[0][i] + l0 - rhs[0][i]));
        worst = std::max(worst, std::abs(minus[1][i] + l1 - rhs[1][i]));
    }
    return worst;
}

Pair apply_L(const PreparedScenario& p, const Pair& v) {
    const KernelBundle& k = p.kernel;
    Pair out = zero_pair(v[0].size());
    for (std::size_t i = 0; i < v[0].size(); ++i) {
        out[0][i] = k.scalar[i] * (v[0][i] + k.lam_N[i] * v[1][i]);
        out[1][i] = k.scalar[i] * (k.lam_N[i] * v[0][i] + v[1][i]);
    }
    return out;
}

// Forcing of the crack equation: delta-pole coefficients and a segment polynomial.
struct CrackDrive {
    std::array<cplx, 2> delta_coef{};
    Pair poly;
    bool poly_is_minus = false;
};

CrackDrive crack_drive(const PreparedScenario& p, const ReducedSolution& sol, FieldPart part) {
    const std::size_t n = p.grid.size();
    CrackDrive d;
    d.poly = zero_pair(n);
    const int M = p.scenario.m_offset;
    d.poly_is_minus = M < 0;
    if (part != FieldPart::Perturbation) {
        const IncidentJump jump = incident_jump_plus(p);
        d.delta_coef = {jump.q0, jump.q0 * jump.e_N};
    }
    if (part != FieldPart::Aligned && M != 0) {
        const double sign = M > 0 ? -1.0 : 1.0;
        for (std::size_t i = 0; i < n; ++i) {
            const cplx z = p.grid.node(i);
            cplx total{};
            for (std::size_t j = 0; j < sol.sites.size(); ++j) total += sol.unknowns(j) * ipow(z, -sol.sites[j]);
            d.poly[1][i] = sign * total;
        }
    }
    return d;
}

WHSolution solve_crack_wh(const PreparedScenario& p, const CrackDrive& d) {
    const std::size_t n = p.grid.size();
    const FactorView f = factor_view(p);
    const cplx zP = p.wave.zP;
    WHSolution wh;
    wh.minus = zero_pair(n);
    wh.plus = zero_pair(n);
    Pair rhs_g = zero_pair(n);

    // Pole part: delta / D_- splits by subtracting its value at z_P.
    const std::array<cplx, 2> s = apply_J(d.delta_coef[0], d.delta_coef[1]);
    Pair t_poly = zero_pair(n);
    for (std::size_t i = 0; i < n; ++i) {
        const cplx z = p.grid.node(i);
        const cplx delta = z / (z - zP);
        const cplx dm[2] = {(*f.minus[0])[i], (*f.minus[1])[i]};
        const cplx dp[2] = {(*f.plus[0])[i], (*f.plus[1])[i]};
        cplx t_plus[2];
        cplx t_minus[2];
        for (int c = 0; c < 2; ++c) {
            t_plus[c] = s[c] * delta / f.minus_zP[c];
            t_minus[c] = s[c] * delta * (1.0 / dm[c] - 1.0 / f.minus_zP[c]);
        }
        const auto vm = apply_J_inv(dm[0] * t_minus[0], dm[1] * t_minus[1]);
        const auto vp = apply_J_inv(t_plus[0] / dp[0], t_plus[1] / dp[1]);
        for (int c = 0; c < 2; ++c) {
            rhs_g[c][i] = d.delta_coef[c] * delta + d.poly[c][i];
            wh.minus[c][i] = vm[c];
            wh.plus[c][i] = vp[c] - d.delta_coef[c] * delta;
        }
        const auto jp = apply_J(d.poly[0][i], d.poly[1][i]);
        for (int c = 0; c < 2; ++c) t_poly[c][i] = d.poly_is_minus ? -dp[c] * jp[c] : jp[c] / dm[c];
    }
    Pair tp;
    Pair tm;
    for (int c = 0; c < 2; ++c) std::tie(tp[c], tm[c]) = split_samples(t_poly[c], p.grid);
    for (std::size_t i = 0; i < n; ++i) {
        const cplx dm[2] = {(*f.minus[0])[i], (*f.minus[1])[i]};
        const cplx dp[2] = {(*f.plus[0])[i], (*f.plus[1])[i]};
        const auto vm = apply_J_inv(dm[0] * tm[0][i], dm[1] * tm[1][i]);
        const auto vp = apply_J_inv(tp[0][i] / dp[0], tp[1][i] / dp[1]);
        for (int c = 0; c < 2; ++c) {
            if (d.poly_is_minus) {
                wh.minus[c][i] += d.poly[c][i] + vm[c];
                wh.plus[c][i] += vp[c];
            } else {
                wh.minus[c][i] += vm[c];
                wh.plus[c][i] += vp[c] - d.poly[c][i];
            }
        }
    }
    const Pair lg = apply_L(p, rhs_g);
    Pair rhs = zero_pair(n);
    for (int c = 0; c < 2; ++c) {
        for (std::size_t i = 0; i < n; ++i) rhs[c][i] = rhs_g[c][i] - lg[c][i];
    }
    wh.residual = wh_residual(p, wh.minus, wh.plus, rhs);
    return wh;
}

// Forcing of the constraint equation, split into its delta pole, remaining
// plus and minus parts, and the constant-row data W entering u_0^F, u_N^F.
struct ConstraintDrive {
    std::array<cplx, 2> delta_coef{};
    Pair plus_rest;
    Pair minus;
    Pair W;
    std::array<cplx, 2> row_delta{};  // delta coefficients added to u_0^F, u_N^F
};

ConstraintDrive constraint_drive(const PreparedScenario& p, const ConstraintSolution& sol, FieldPart part,
                                 cplx total_m1N) {
    const std::size_t n = p.grid.size();
    const int M = p.scenario.m_offset;
    const int N = p.scenario.n_sep;
    const cplx A = p.scenario.amplitude;
    const cplx e = p.e_N;
    const cplx zP = p.wave.zP;
    const cplx Qzp = eval_HRQ(zP, p.scenario.omega).Q;
    const cplx um10 = sol.u_m10();
    const cplx uMN = sol.u_Mm1N();
    const cplx inc_m10 = p.incident(-1, 0);
    const cplx inc_m1N = p.incident(-1, N);
    const bool base_on = part != FieldPart::Perturbation;
    const bool stagger_on = part != FieldPart::Aligned;
    const double ut_sign = part == FieldPart::Aligned ? -1.0 : (part == FieldPart::Perturbation ? 1.0 : 0.0);

    ConstraintDrive d;
    d.plus_rest = zero_pair(n);
    d.minus = zero_pair(n);
    d.W = zero_pair(n);
    if (base_on) {
        d.delta_coef = {-Qzp * A, -Qzp * A * e};
        d.row_delta = {-A, -A * e};
    }
    const Eigen::VectorXcd w = sol.w_segment();
    const double p_sign = M > 0 ? 1.0 : -1.0;
    for (std::size_t i = 0; i < n; ++i) {
        const cplx z = p.grid.node(i);
        if (base_on) {
            d.plus_rest[0][i] = -A / zP - um10 + inc_m10;
            d.W[0][i] = -um10 + inc_m10 - z * A;
            d.plus_rest[1][i] = -A * e / zP + inc_m1N;
            d.W[1][i] = inc_m1N - z * A * e;
        }
        if (stagger_on) {
            cplx stagger = -ipow(z, -M) * uMN;
            for (long j = 0; j < w.size(); ++j) stagger += p_sign * w(j) * ipow(z, -sol.system.sites[j]);
            (M < 0 ? d.minus : d.plus_rest)[1][i] += stagger;
            d.W[1][i] += stagger;
        }
        d.plus_rest[1][i] += ut_sign * total_m1N;
        d.W[1][i] += ut_sign * total_m1N;
    }
    return d;
}

struct ConstraintWH {
    WHSolution wh;
    Pair rows;  // u_0^F and u_N^F
};

ConstraintWH solve_constraint_wh(const PreparedScenario& p, const ConstraintDrive& d) {
    const std::size_t n = p.grid.size();
    const FactorView f = factor_view(p);
    const cplx zP = p.wave.zP;
    ConstraintWH out;
    WHSolution& wh = out.wh;
    wh.minus = zero_pair(n);
    wh.plus = zero_pair(n);
    Pair X = zero_pair(n);
    Pair t_rest = zero_pair(n);
    const std::array<cplx, 2> s = apply_J(d.delta_coef[0], d.delta_coef[1]);
    for (std::size_t i = 0; i < n; ++i) {
        const cplx z = p.grid.node(i);
        const cplx delta = z / (z - zP);
        const cplx dm[2] = {(*f.minus[0])[i], (*f.minus[1])[i]};
        const cplx dp[2] = {(*f.plus[0])[i], (*f.plus[1])[i]};
        cplx t_plus[2];
        cplx t_minus[2];
        for (int c = 0; c < 2; ++c) {
            t_plus[c] = -s[c] * delta / f.minus_zP[c];
            t_minus[c] = -s[c] * delta * (1.0 / dm[c] - 1.0 / f.minus_zP[c]);
        }
        const auto wm = apply_J_inv(dm[0] * t_minus[0], dm[1] * t_minus[1]);
        const auto wp = apply_J_inv(t_plus[0] / dp[0], t_plus[1] / dp[1]);
        const auto jx_plus = apply_J(d.plus_rest[0][i], d.plus_rest[1][i]);
        const auto jx_minus = apply_J(d.minus[0][i], d.minus[1][i]);
        for (int c = 0; c < 2; ++c) {
            const cplx x_plus = d.delta_coef[c] * delta + d.plus_rest[c][i];
            X[c][i] = x_plus + d.minus[c][i];
            wh.minus[c][i] = wm[c] - d.minus[c][i];
            wh.plus[c][i] = wp[c] + x_plus;
            t_rest[c][i] = -jx_plus[c] / dm[c] + dp[c] * jx_minus[c];
        }
    }
    Pair tp;
    Pair tm;
    for (int c = 0; c < 2; ++c) std::tie(tp[c], tm[c]) = split_samples(t_rest[c], p.grid);
    out.rows = zero_pair(n);
    for (std::size_t i = 0; i < n; ++i) {
        const cplx z = p.grid.node(i);
        const cplx delta = z / (z - zP);
        const cplx dm[2] = {(*f.minus[0])[i], (*f.minus[1])[i]};
        const cplx dp[2] = {(*f.plus[0])[i], (*f.plus[1])[i]};
        const auto wm = apply_J_inv(dm[0] * tm[0][i], dm[1] * tm[1][i]);
        const auto wp = apply_J_inv(tp[0][i] / dp[0], tp[1][i] / dp[1]);
        const cplx Q = p.kernel.Q[i];
        for (int c = 0; c < 2; ++c) {
            wh.minus[c][i] += wm[c];
            wh.plus[c][i] += wp[c];
            out.rows[c][i] = (d.W[c][i] + wh.minus[c][i]) / Q + d.row_delta[c] * delta;
        }
    }
    const Pair lx = apply_L(p, X);
    Pair rhs = zero_pair(n);
    for (int c = 0; c < 2; ++c) {
        for (std::size_t i = 0; i < n; ++i) rhs[c][i] = lx[c][i] - X[c][i];
    }
    wh.residual = wh_residual(p, wh.minus, wh.plus, rhs);
    return out;
}

LatticeField fill_field(const PreparedScenario& p, const RowTransforms& rows, const FieldWindow& window) {
    if (window.width() <= 0 || window.height() <= 0) {
        throw Error(ErrorCode::WindowTooSmall, "empty field window");
    }
    if (2 * std::max(std::abs(window.x_min), std::abs(window.x_max)) >= static_cast<long>(p.grid.size())) {
        throw Error(ErrorCode::WindowTooSmall, "window wider than the alias-free range of the contour grid");
    }
    LatticeField field;
    field.window = window;
    const std::size_t count = static_cast<std::size_t>(window.width() * window.height());
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

RowTransforms crack_rows(const PreparedScenario& p, const WHSolution& wh) {
    const std::size_t n = p.grid.size();
    std::vector<cplx> jump0(n);
    std::vector<cplx> jumpN(n);
    for (std::size_t i = 0; i < n; ++i) {
        jump0[i] = wh.minus[0][i] + wh.plus[0][i];
        jumpN[i] = wh.minus[1][i] + wh.plus[1][i];
    }
    return RowTransforms::from_crack_jumps(p, jump0, jumpN);
}

cplx total_at(const PreparedScenario& p, const RowTransforms& rows, long x, long y) {
    return inverse_transform(rows.row(y), p.grid, x, x)[0] + p.incident(x, y);
}

}  // namespace

std::size_t LatticeField::index(long x, long y) const {
    if (!window.contains(x, y)) {
        throw Error(ErrorCode::WindowTooSmall, "site (" + std::to_string(x) + ", " + std::to_string(y) +
                                                   ") outside the field window");
    }
    return static_cast<std::size_t>((y - window.y_min) * window.width() + (x - window.x_min));
}

RowTransforms RowTransforms::from_crack_jumps(const PreparedScenario& p, const std::vector<cplx>& jump0,
                                              const std::vector<cplx>& jumpN) {
    RowTransforms rt;
    rt.kind_ = DefectKind::CrackPair;
    rt.n_sep_ = p.scenario.n_sep;
    rt.lambda_ = p.kernel.lam;
    const std::size_t n = jump0.size();
    rt.coef_a_.resize(n);
    rt.coef_b_.resize(n);
    rt.lower_.resize(n);
    rt.upper_.resize(n);
    const int N = rt.n_sep_;
    for (std::size_t i = 0; i < n; ++i) {
        const cplx lam = rt.lambda_[i];
        const cplx lam_top = ipow(lam, N - 1);
        // Strip solution u_y = a lambda^y + b lambda^{N-1-y} matched to both jumps.
        const cplx c = lam_top * (1.0 - lam);
        const cplx det = 4.0 - c * c;
        const cplx a = (2.0 * jump0[i] + c * jumpN[i]) / det;
        const cplx b = (-2.0 * jumpN[i] - c * jump0[i]) / det;
        rt.coef_a_[i] = a;
        rt.coef_b_[i] = b;
        rt.lower_[i] = a + b * lam_top - jump0[i];  // u_{-1}
        rt.upper_[i] = a * lam_top + b + jumpN[i];  // u_N
    }
    return rt;
}

RowTransforms RowTransforms::from_constraint_rows(const PreparedScenario& p, const std::vector<cplx>& row0,
                                                  const std::vector<cplx>& rowN) {
    RowTransforms rt;
    rt.kind_ = DefectKind::ConstraintPair;
    rt.n_sep_ = p.scenario.n_sep;
    rt.lambda_ = p.kernel.lam;
    const std::size_t n = row0.size();
    rt.coef_a_.resize(n);
    rt.coef_b_.resize(n);
    rt.lower_ = row0;
    rt.upper_ = rowN;
    for (std::size_t i = 0; i < n; ++i) {
        const cplx lamN = p.kernel.lam_N[i];
        const cplx det = 1.0 - lamN * lamN;
        rt.coef_a_[i] = (row0[i] - lamN * rowN[i]) / det;
        rt.coef_b_[i] = (rowN[i] - lamN * row0[i]) / det;
    }
    return rt;
}

std::vector<cplx> RowTransforms::row(long y) const {
    const std::size_t n = lambda_.size();
    std::vector<cplx> out(n);
    const long N = n_sep_;
    const bool crack = kind_ == DefectKind::CrackPair;
    // Decaying tails outside the strip, bounded powers inside it.
    const long low_edge = crack ? -1 : 0;
    const long top = crack ? N - 1 : N;
    for (std::size_t i = 0; i < n; ++i) {
        const cplx lam = lambda_[i];
        if (y <= low_edge) {
            out[i] = lower_[i] * ipow(lam, low_edge - y);
        } else if (y >= N) {
            out[i] = upper_[i] * ipow(lam, y - N);
        } else {
            out[i] = coef_a_[i] * ipow(lam, y) + coef_b_[i] * ipow(lam, top - y);
        }
    }
    return out;
}

std::vector<cplx> inverse_transform(const std::vector<cplx>& samples, const ContourGrid& grid, long x_min,
                                    long x_max) {
    const std::vector<cplx> d = dft_inverse(samples);
    const long K = static_cast<long>(grid.size());
    const double log_radius = std::log(grid.radius());
    std::vector<cplx> out;
    out.reserve(static_cast<std::size_t>(std::max(0L, x_max - x_min + 1)));
    for (long x = x_min; x <= x_max; ++x) {
        const long idx = ((x % K) + K) % K;
        out.push_back(d[static_cast<std::size_t>(idx)] * std::exp(static_cast<double>(x) * log_radius));
    }
    return out;
}

WHSolution wh_solution_on_contour(const PreparedScenario& p, const ReducedSolution& crack, FieldPart part) {
    return solve_crack_wh(p, crack_drive(p, crack, part));
}

WHSolution wh_solution_on_contour(const PreparedScenario& p, const ConstraintSolution& constraint, FieldPart part,
                                  cplx total_m1N) {
    return solve_constraint_wh(p, constraint_drive(p, constraint, part, total_m1N)).wh;
}

LatticeField synthesize_crack(const PreparedScenario& p, const ReducedSolution& sol, const FieldWindow& window,
                              FieldPart part) {
    const WHSolution wh = wh_solution_on_contour(p, sol, part);
    return fill_field(p, crack_rows(p, wh), window);
}

LatticeField synthesize_constraint(const PreparedScenario& p, const ConstraintSolution& sol,
                                   const FieldWindow& window, FieldPart part) {
    cplx total_m1N{};
    if (part != FieldPart::Full) {
        const ConstraintWH full = solve_constraint_wh(p, constraint_drive(p, sol, FieldPart::Full, {}));
        const RowTransforms rows = RowTransforms::from_constraint_rows(p, full.rows[0], full.rows[1]);
        total_m1N = total_at(p, rows, -1, p.scenario.n_sep);
    }
    const ConstraintWH wh = solve_constraint_wh(p, constraint_drive(p, sol, part, total_m1N));
    return fill_field(p, RowTransforms::from_constraint_rows(p, wh.rows[0], wh.rows[1]), window);
}

FieldRun run_field(const ScatteringScenario& s, const FieldWindow& window, const NumericsOptions& options) {
    FieldRun run;
    run.prepared = prepare(s, options);
    const PreparedScenario& p = run.prepared;
    if (s.kind == DefectKind::CrackPair) {
        run.reduced = solve_crack(p);
        const WHSolution wh = wh_solution_on_contour(p, run.reduced);
        run.wh_residual = wh.residual;
        run.field = fill_field(p, crack_rows(p, wh), window);
    } else {
        const ConstraintSolution sol = solve_constraint(p);
        run.reduced = sol.system;
        run.g_inc_max = sol.g_inc_max;
        const ConstraintWH wh = solve_constraint_wh(p, constraint_drive(p, sol, FieldPart::Full, {}));
        run.wh_residual = wh.wh.residual;
        run.field = fill_field(p, RowTransforms::from_constraint_rows(p, wh.rows[0], wh.rows[1]), window);
    }
    return run;
}

StaggerSplit stagger_perturbation(const ScatteringScenario& s, const FieldWindow& window,
                                  const NumericsOptions& options) {
    const PreparedScenario p = prepare(s, options);
    StaggerSplit split;
    LatticeField full;
    if (s.kind == DefectKind::CrackPair) {
        const ReducedSolution sol = solve_crack(p);
        full = synthesize_crack(p, sol, window, FieldPart::Full);
        split.aligned = synthesize_crack(p, sol, window, FieldPart::Aligned);
        split.perturbation = synthesize_crack(p, sol, window, FieldPart::Perturbation);
    } else {
        const ConstraintSolution sol = solve_constraint(p);
        full = synthesize_constraint(p, sol, window, FieldPart::Full);
        split.aligned = synthesize_constraint(p, sol, window, FieldPart::Aligned);
        split.perturbation = synthesize_constraint(p, sol, window, FieldPart::Perturbation);
    }
    for (std::size_t k = 0; k < full.scattered.size(); ++k) {
        const cplx sum = split.aligned.scattered[k] + split.perturbation.scattered[k];
        split.sum_deviation = std::max(split.sum_deviation, std::abs(sum - full.scattered[k]));
    }
    return split;
}

FlipReport flip_check(const ScatteringScenario& s, const NumericsOptions& options) {
    FlipReport report;
    report.m_offset = s.m_offset;
    const PreparedScenario p1 = prepare(s, options);
    const int M = s.m_offset;
    const long N = s.n_sep;
    const bool crack = s.kind == DefectKind::CrackPair;
    ScatteringScenario mirrored = s;
    mirrored.m_offset = -M;
    mirrored.theta = -s.theta;
    const cplx phase = cplx(0.0, 1.0) * (p1.wave.kx * static_cast<double>(M) +
                                         p1.wave.ky * static_cast<double>(crack ? N - 1 : N));
    mirrored.amplitude = s.amplitude * std::exp(phase);
    const PreparedScenario p2 = prepare(mirrored, options);

    const std::vector<long> sites = segment_sites(M);
    FieldWindow window{-1, 1, -1, 1};
    for (const long x : sites) {
        window.x_min = std::min(window.x_min, x - M);
        window.x_max = std::max(window.x_max, x - M);
    }
    if (crack) {
        const ReducedSolution r1 = solve_crack(p1);
        const ReducedSolution r2 = solve_crack(p2);
        const LatticeField f2 = synthesize_crack(p2, r2, window);
        for (std::size_t j = 0; j < sites.size(); ++j) {
            const long x = sites[j] - M;
            const cplx mapped = f2.total(x, -1) - f2.total(x, 0);
            report.segment_deviation = std::max(report.segment_deviation, std::abs(r1.unknowns(j) - mapped));
        }
    } else {
        const ConstraintSolution r1 = solve_constraint(p1);
        const ConstraintSolution r2 = solve_constraint(p2);
        const LatticeField f2 = synthesize_constraint(p2, r2, window);
        for (std::size_t j = 0; j < sites.size(); ++j) {
            const long x = sites[j] - M;
            const cplx mapped = f2.total(x, -1) + f2.total(x, 1);
            report.segment_deviation =
                std::max(report.segment_deviation, std::abs(r1.system.unknowns(j) - mapped));
        }
        report.extras_deviation =
            std::max(std::abs(r1.u_m10() - r2.u_Mm1N()), std::abs(r1.u_Mm1N() - r2.u_m10()));
    }
    return report;
}

double off_defect_residual(const LatticeField& field, const ScatteringScenario& s) {
    const FieldWindow& w = field.window;
    const long N = s.n_sep;
    const long M = s.m_offset;
    const bool crack = s.kind == DefectKind::CrackPair;
    auto on_defect = [&](long x, long y) {
        if (crack) return (x >= 0 && (y == -1 || y == 0)) || (x >= M && (y == N - 1 || y == N));
        return (x >= 0 && y == 0) || (x >= M && y == N);
    };
    const cplx w2 = s.omega * s.omega;
    double worst = 0.0;
    for (long y = w.y_min + 1; y < w.y_max; ++y) {
        for (long x = w.x_min + 1; x < w.x_max; ++x) {
            if (on_defect(x, y)) continue;
            const cplx lap = field.at(x + 1, y) + field.at(x - 1, y) + field.at(x, y + 1) + field.at(x, y - 1) -
                             4.0 * field.at(x, y);
            worst = std::max(worst, std::abs(lap + w2 * field.at(x, y)));
        }
    }
    return worst;
}

std::vector<std::pair<long, long>> constrained_sites(const ScatteringScenario& s, const FieldWindow& window) {
    std::vector<std::pair<long, long>> sites;
    if (s.kind != DefectKind::ConstraintPair) return sites;
    for (long x = std::max(0L, window.x_min); x <= window.x_max; ++x) {
        if (window.contains(x, 0)) sites.emplace_back(x, 0);
    }
    for (long x = std::max<long>(s.m_offset, window.x_min); x <= window.x_max; ++x) {
        if (window.contains(x, s.n_sep)) sites.emplace_back(x, s.n_sep);
    }
    return sites;
}

}  // namespace stagger
