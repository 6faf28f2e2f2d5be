#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "frozen_oracle.hpp"
#include "stagger/errors.hpp"
#include "stagger/reduced_constraint.hpp"

namespace stagger {
namespace {

using testing::desk_scenario;

double max_relative(const Eigen::VectorXcd& computed, const std::vector<cplx>& reference) {
    double worst = 0.0;
    for (std::size_t j = 0; j < reference.size(); ++j) {
        worst = std::max(worst, std::abs(computed(static_cast<long>(j)) - reference[j]) / std::abs(reference[j]));
    }
    return worst;
}

TEST(BoundaryRowTransform, EqualsDirectRowSum) {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::vector<cplx> table(41 * 9);
    for (cplx& v : table) v = {unit(rng), unit(rng)};
    const LatticeValues u = [&](long x, long y) { return table[static_cast<std::size_t>((y + 4) * 41 + x + 20)]; };
    const cplx omega(0.9, 0.1);
    for (const cplx z : {cplx(1.0, 0.0), std::polar(1.02, 0.7), std::polar(0.97, -2.1)}) {
        for (const auto& [m, n] : {std::pair<long, long>{0, 5}, {-6, -1}, {3, 3}, {-2, 4}}) {
            for (const long row : {-1L, 0L, 2L}) {
                const cplx b = boundary_row_transform(m, n, row, u, z, omega);
                EXPECT_LT(std::abs(b - helmholtz_row_sum(m, n, row, u, z, omega)), 1e-12);
            }
        }
        EXPECT_EQ(boundary_row_transform(4, 3, 0, u, z, omega), cplx(0.0));
    }
}

TEST(SolveConstraint, AlignedPairKeepsTwoExtras) {
    const ConstraintSolution c = solve_constraint(prepare(desk_scenario(DefectKind::ConstraintPair, 0)));
    EXPECT_EQ(c.segment_size(), 0);
    EXPECT_EQ(c.system.unknowns.size(), 2);
    EXPECT_LT(c.system.residual, 1e-12);
}

TEST(SolveConstraint, PositiveOffsetMatchesFrozenOracle) {
    const ConstraintSolution c = solve_constraint(prepare(desk_scenario(DefectKind::ConstraintPair, 3)));
    EXPECT_EQ(c.segment_size(), 3);
    EXPECT_LE(max_relative(c.system.unknowns, testing::frozen_constraint_plus3()), 0.05);
    EXPECT_LE(max_relative(c.system.unknowns, testing::frozen_constraint_plus3()), 1e-4);
    EXPECT_LT(c.g_inc_max, 1e-8);
}

TEST(SolveConstraint, NegativeOffsetMatchesFrozenOracle) {
    const ConstraintSolution c = solve_constraint(prepare(desk_scenario(DefectKind::ConstraintPair, -3)));
    EXPECT_EQ(c.system.sites, segment_sites(-3));
    EXPECT_LE(max_relative(c.system.unknowns, testing::frozen_constraint_minus3()), 0.05);
    EXPECT_LE(max_relative(c.system.unknowns, testing::frozen_constraint_minus3()), 1e-4);
    EXPECT_NEAR(std::abs(c.u_m10() - testing::frozen_constraint_minus3()[3]), 0.0, 1e-4);
}

TEST(SolveConstraint, RejectsCrackScenario) {
    EXPECT_THROW(assemble_constraint_system(prepare(desk_scenario(DefectKind::CrackPair, 1))), Error);
}

TEST(GIncSamples, VanishOnContour) {
    for (const int m : {-2, 0, 1, 4}) {
        const PreparedScenario p = prepare(desk_scenario(DefectKind::ConstraintPair, m));
        for (const cplx g : g_inc_samples(p)) EXPECT_LT(std::abs(g), 1e-8) << m;
    }
}

}  // namespace
}  // namespace stagger
