#include "stagger/oracle.hpp"

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/SparseLU>

#include <cmath>
#include <cstdlib>
#include <string>

#include "stagger/errors.hpp"

namespace stagger {

namespace {

using SparseMatrix = Eigen::SparseMatrix<cplx>;

}  // namespace

OracleResult solve_grid(const ScatteringScenario& s, const OracleOptions& options) {
    validate(s);
    const WaveVector wave = solve_dispersion(s.omega, s.theta);
    const long ng = options.ng > 0 ? options.ng : 91 + std::abs(s.m_offset);
    const long N = s.n_sep;
    const long M = s.m_offset;
    if (ng < 2 + std::max<long>({N + 1, std::abs(M)})) {
        throw Error(ErrorCode::WindowTooSmall, "oracle grid does not contain the defect edges");
    }
    const long side = 2 * ng + 1;
    const auto index = [&](long x, long y) { return (y + ng) * side + (x + ng); };
    const bool crack = s.kind == DefectKind::CrackPair;
    const auto broken = [&](long x, long y_low) {
        return crack && ((y_low == -1 && x >= 0) || (y_low == N - 1 && x >= M));
    };
    const auto constrained = [&](long x, long y) {
        return !crack && ((y == 0 && x >= 0) || (y == N && x >= M));
    };
    const auto incident = [&](long x, long y) { return incident_field(s, wave, x, y); };

    const cplx w2 = s.omega * s.omega;
    std::vector<Eigen::Triplet<cplx>> triplets;
    triplets.reserve(static_cast<std::size_t>(5 * side * side));
    Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(side * side);
    const long offsets[4][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
    for (long y = -ng; y <= ng; ++y) {
        for (long x = -ng; x <= ng; ++x) {
            const long row = index(x, y);
            if (constrained(x, y)) {
                triplets.emplace_back(row, row, 1.0);
                rhs(row) = -incident(x, y);
                continue;
            }
            cplx diag = w2;
            for (const auto& o : offsets) {
                const long x2 = x + o[0];
                const long y2 = y + o[1];
                if (o[0] == 0 && broken(x, std::min(y, y2))) {
                    // Broken bond: the incident jump forces the scattered field.
                    rhs(row) += incident(x2, y2) - incident(x, y);
                    continue;
                }
                diag -= 1.0;
                if (std::abs(x2) <= ng && std::abs(y2) <= ng) triplets.emplace_back(row, index(x2, y2), 1.0);
            }
            triplets.emplace_back(row, row, diag);
        }
    }
    SparseMatrix A(side * side, side * side);
    A.setFromTriplets(triplets.begin(), triplets.end());
    A.makeCompressed();

    OracleResult result;
    const double rhs_norm = rhs.norm();
    Eigen::VectorXcd u;
    if (rhs_norm == 0.0) {
        u = Eigen::VectorXcd::Zero(side * side);
    } else {
        Eigen::BiCGSTAB<SparseMatrix, Eigen::DiagonalPreconditioner<cplx>> iterative;
        iterative.setTolerance(options.tolerance);
        iterative.setMaxIterations(options.max_iterations);
        iterative.compute(A);
        u = iterative.solve(rhs);
        result.iterations = static_cast<int>(iterative.iterations());
        result.residual = (A * u - rhs).norm() / rhs_norm;
        if (iterative.info() != Eigen::Success || !(result.residual <= 10.0 * options.tolerance)) {
            Eigen::SparseLU<SparseMatrix> direct;
            direct.compute(A);
            if (direct.info() != Eigen::Success) {
                throw Error(ErrorCode::IterationDivergence, "sparse LU factorization failed");
            }
            u = direct.solve(rhs);
            result.direct_fallback = true;
            result.residual = (A * u - rhs).norm() / rhs_norm;
        }
        if (!(result.residual <= 1e-8)) {
            throw Error(ErrorCode::IterationDivergence,
                        "oracle residual " + std::to_string(result.residual));
        }
    }

    LatticeField& field = result.field;
    field.window = FieldWindow{-ng, ng, -ng, ng};
    field.scattered.resize(static_cast<std::size_t>(side * side));
    field.incident.resize(static_cast<std::size_t>(side * side));
    for (long y = -ng; y <= ng; ++y) {
        for (long x = -ng; x <= ng; ++x) {
            const std::size_t k = field.index(x, y);
            field.scattered[k] = u(index(x, y));
            field.incident[k] = incident(x, y);
        }
    }
    return result;
}

std::vector<cplx> extract_traces(const LatticeField& field, const ScatteringScenario& s) {
    const long N = s.n_sep;
    const long M = s.m_offset;
    const std::vector<long> sites = segment_sites(s.m_offset);
    std::vector<cplx> out;
    try {
        if (s.kind == DefectKind::CrackPair) {
            for (const long x : sites) out.push_back(field.total(x, N) - field.total(x, N - 1));
        } else {
            for (const long x : sites) out.push_back(field.total(x, N + 1) + field.total(x, N - 1));
            out.push_back(field.total(-1, 0));
            out.push_back(field.total(M - 1, N));
        }
    } catch (const Error&) {
        throw Error(ErrorCode::WindowTooSmall, "window does not cover the segment");
    }
    return out;
}

}  // namespace stagger
