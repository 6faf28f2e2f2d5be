#include <gtest/gtest.h>

#include <cmath>

#include "frozen_oracle.hpp"
#include "stagger/errors.hpp"
#include "stagger/reduced_crack.hpp"

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

TEST(SegmentSites, BothOffsetSigns) {
    EXPECT_EQ(segment_sites(3), (std::vector<long>{0, 1, 2}));
    EXPECT_EQ(segment_sites(-2), (std::vector<long>{-1, -2}));
    EXPECT_TRUE(segment_sites(0).empty());
}

TEST(SolveDenseSystem, RejectsSingularMatrix) {
    Eigen::MatrixXcd singular(2, 2);
    singular << 1.0, 2.0, 2.0, 4.0;
    try {
        solve_dense_system(singular, Eigen::VectorXcd::Ones(2), {0, 1});
        FAIL() << "singular matrix accepted";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::SingularSystem);
    }
}

TEST(SolveDenseSystem, ReportsResidualAndCondition) {
    Eigen::MatrixXcd m(2, 2);
    m << 2.0, 0.0, 0.0, 0.5;
    const ReducedSolution r = solve_dense_system(m, Eigen::VectorXcd::Ones(2), {0, 1});
    EXPECT_NEAR(std::abs(r.unknowns(1) - 2.0), 0.0, 1e-15);
    EXPECT_NEAR(r.condition, 4.0, 1e-12);
    EXPECT_LT(r.residual, 1e-15);
}

TEST(SolveCrack, AlignedPairHasNoUnknowns) {
    const ReducedSolution r = solve_crack(prepare(desk_scenario(DefectKind::CrackPair, 0)));
    EXPECT_EQ(r.unknowns.size(), 0);
    EXPECT_TRUE(r.sites.empty());
}

TEST(SolveCrack, RejectsConstraintScenario) {
    EXPECT_THROW(solve_crack(prepare(desk_scenario(DefectKind::ConstraintPair, 2))), Error);
}

TEST(SolveCrack, PositiveOffsetMatchesFrozenOracle) {
    const ReducedSolution r = solve_crack(prepare(desk_scenario(DefectKind::CrackPair, 3)));
    EXPECT_EQ(r.sites, segment_sites(3));
    EXPECT_LE(max_relative(r.unknowns, testing::frozen_crack_plus3()), 0.05);
    EXPECT_LE(max_relative(r.unknowns, testing::frozen_crack_plus3()), 1e-4);
    EXPECT_LT(r.residual, 1e-12);
}

TEST(SolveCrack, NegativeOffsetMatchesFrozenOracle) {
    const ReducedSolution r = solve_crack(prepare(desk_scenario(DefectKind::CrackPair, -3)));
    EXPECT_EQ(r.sites, segment_sites(-3));
    EXPECT_LE(max_relative(r.unknowns, testing::frozen_crack_minus3()), 0.05);
    EXPECT_LE(max_relative(r.unknowns, testing::frozen_crack_minus3()), 1e-4);
    EXPECT_LT(r.residual, 1e-12);
}

TEST(SolveCrack, LinearInAmplitude) {
    ScatteringScenario s = desk_scenario(DefectKind::CrackPair, -2);
    const ReducedSolution base = solve_crack(prepare(s));
    s.amplitude = {0.3, -1.1};
    const ReducedSolution scaled = solve_crack(prepare(s));
    for (long j = 0; j < base.unknowns.size(); ++j) {
        EXPECT_LT(std::abs(scaled.unknowns(j) - s.amplitude * base.unknowns(j)), 1e-12);
    }
}

TEST(AssembleAx, BaseCaseIsConstantTimesPlusReciprocal) {
    const PreparedScenario p = prepare(desk_scenario(DefectKind::CrackPair, 2));
    const FactorSuite& f = p.factors;
    const LaurentSeries a0 = assemble_Ax(f, 0);
    const cplx f0 = f.inv_alpha_minus.coeff(0);
    const cplx g0 = f.inv_beta_minus.coeff(0);
    for (std::size_t i = 0; i < p.grid.size(); i += 31) {
        const cplx z = p.grid.node(i);
        EXPECT_LT(std::abs(a0(z) - (f0 * f.inv_alpha_plus(z) + g0 * f.inv_beta_plus(z))), 1e-10);
    }
}

TEST(AssembleAx, CoefficientsMatchDirectEntries) {
    ScatteringScenario s = desk_scenario(DefectKind::CrackPair, 2);
    s.omega = {0.9, 0.05};
    s.n_sep = 3;
    const PreparedScenario p = prepare(s);
    for (long x = 0; x < 3; ++x) {
        const LaurentSeries ax = assemble_Ax(p.factors, x);
        for (const cplx v : ax.samples(p.grid)) ASSERT_TRUE(std::isfinite(std::abs(v)));
        for (long mu = 0; mu < 4; ++mu) {
            EXPECT_LT(std::abs(ax.coeff(mu) - segment_entry_positive(p.factors, x, mu)), 1e-12);
        }
    }
}

TEST(CrackRhs, MatchesSampledForcing) {
    const PreparedScenario p = prepare(desk_scenario(DefectKind::CrackPair, 3));
    const LaurentSeries forcing = to_series(assemble_Finc(p), p.grid);
    for (long mu = 0; mu < 3; ++mu) {
        EXPECT_LT(std::abs(crack_rhs_entry(p, mu) - forcing.coeff(mu)), 1e-12) << mu;
    }
}

}  // namespace
}  // namespace stagger
