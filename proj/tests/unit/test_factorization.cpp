#include <gtest/gtest.h>

#include <cmath>

#include "frozen_oracle.hpp"
#include "stagger/errors.hpp"
#include "stagger/factorization.hpp"
#include "stagger/prepared.hpp"

namespace stagger {
namespace {

ScatteringScenario low_loss(DefectKind kind, int n_sep) {
    ScatteringScenario s = testing::desk_scenario(kind, 0);
    s.omega = {0.9, 0.05};
    s.n_sep = n_sep;
    return s;
}

TEST(CauchyFactorize, RationalFunctionSplitsExactly) {
    const ContourGrid grid(1.0, 256);
    const auto f = [](cplx z) { return (1.0 - 0.3 / z) * (1.0 - 0.2 * z); };
    const FactorPair pair = cauchy_factorize(sample(f, grid), grid, "rational");
    EXPECT_NEAR(std::abs(pair.plus.coeff(0) - 1.0), 0.0, 1e-10);
    EXPECT_NEAR(std::abs(pair.plus.coeff(1) + 0.3), 0.0, 1e-10);
    EXPECT_NEAR(std::abs(pair.minus.coeff(0) - 1.0), 0.0, 1e-10);
    EXPECT_NEAR(std::abs(pair.minus.coeff(-1) + 0.2), 0.0, 1e-10);
    EXPECT_NEAR(std::abs(pair.plus_at(2.0) - (1.0 - 0.15)), 0.0, 1e-10);
    EXPECT_NEAR(std::abs(pair.minus_at(0.5) - (1.0 - 0.1)), 0.0, 1e-10);
}

TEST(CauchyFactorize, ConstantSplitsSymmetrically) {
    const ContourGrid grid(1.0, 16);
    const FactorPair pair = cauchy_factorize(std::vector<cplx>(16, 4.0), grid);
    EXPECT_NEAR(std::abs(pair.plus_at_infinity() - 2.0), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(pair.minus_at_zero() - 2.0), 0.0, 1e-14);
}

TEST(CauchyFactorize, RejectsWindingAndZeros) {
    const ContourGrid grid(1.0, 64);
    try {
        cauchy_factorize(sample([](cplx z) { return z; }, grid), grid);
        FAIL() << "index-one function accepted";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::WindingNonZero);
    }
    std::vector<cplx> zeros(64, 1.0);
    zeros[5] = 0.0;
    try {
        cauchy_factorize(zeros, grid);
        FAIL() << "vanishing sample accepted";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::VanishingSample);
    }
}

TEST(WindingNumber, CountsTurns) {
    const ContourGrid grid(1.0, 64);
    EXPECT_EQ(winding_number(sample([](cplx z) { return z * z; }, grid)), 2);
    EXPECT_EQ(winding_number(sample([](cplx z) { return 1.0 / z; }, grid)), -1);
    EXPECT_EQ(winding_number(sample([](cplx z) { return 3.0 + z; }, grid)), 0);
}

TEST(CauchyFactorize, SymmetricSourceGivesMirroredFactors) {
    const ContourGrid grid(1.0, 1024);
    const std::vector<cplx> lk = sample([](cplx z) { return scalar_kernels(z, {0.9, 0.05}).crack; }, grid);
    const FactorPair pair = cauchy_factorize(lk, grid);
    const std::size_t K = grid.size();
    for (std::size_t i = 0; i < K; i += 13) {
        EXPECT_LT(std::abs(pair.plus_samples[(K - i) % K] - pair.minus_samples[i]), 1e-10);
    }
}

TEST(CauchyFactorize, CrackKernelAgreesWithRootFactors) {
    const PreparedScenario p = prepare(low_loss(DefectKind::CrackPair, 3));
    const KernelBundle& k = p.kernel;
    std::vector<cplx> lk(k.grid.size());
    for (std::size_t i = 0; i < lk.size(); ++i) lk[i] = k.h[i] / k.r[i];
    const FactorPair direct = cauchy_factorize(lk, k.grid);
    const FactorPair h = cauchy_factorize(k.h, k.grid);
    const FactorPair r = cauchy_factorize(k.r, k.grid);
    EXPECT_LT(product_residual(direct, lk), 1e-8);
    for (std::size_t i = 0; i < lk.size(); i += 11) {
        const cplx routed = h.plus_samples[i] / r.plus_samples[i];
        EXPECT_LT(std::abs(direct.plus_samples[i] - routed) / std::abs(routed), 1e-7);
    }
}

TEST(FactorSuite, PointValuesAndResiduals) {
    const PreparedScenario p = prepare(low_loss(DefectKind::CrackPair, 3));
    const FactorSuite& f = p.factors;
    EXPECT_LT(product_residual(f.alpha, p.kernel.alpha), 1e-8);
    EXPECT_LT(product_residual(f.beta, p.kernel.beta), 1e-8);
    EXPECT_NEAR(std::abs(f.alpha_plus_inf - f.alpha.plus.coeff(0)), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(f.alpha_minus_0 - f.alpha.minus.coeff(0)), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(f.beta_minus_zP - f.beta.minus_at(p.wave.zP)), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(f.alpha_minus_zq - f.alpha.minus_at(p.zeros.z_q)), 0.0, 1e-12);
    for (std::size_t i = 0; i < p.grid.size(); i += 17) {
        const cplx z = p.grid.node(i);
        EXPECT_LT(std::abs(f.inv_alpha_plus(z) * f.alpha.plus_samples[i] - 1.0), 1e-9);
        EXPECT_LT(std::abs(f.inv_beta_minus(z) * f.beta.minus_samples[i] - 1.0), 1e-9);
    }
}

TEST(FactorSuite, FactorsFiniteAwayFromContour) {
    const PreparedScenario p = prepare(low_loss(DefectKind::ConstraintPair, 4));
    const double rho = p.radius();
    for (int j = 0; j < 16; ++j) {
        const cplx dir = std::polar(1.0, 0.39 * j);
        EXPECT_TRUE(std::isfinite(std::abs(p.factors.alpha.plus_at(2.0 * rho * dir))));
        EXPECT_TRUE(std::isfinite(std::abs(p.factors.beta.minus_at(0.5 * rho * dir))));
        EXPECT_GT(std::abs(p.factors.alpha.plus_at(2.0 * rho * dir)), 0.0);
    }
}

TEST(ChebyshevTilde, SingleRowHasEmptyProducts) {
    const PreparedScenario p = prepare(low_loss(DefectKind::CrackPair, 1));
    const ChebyshevTilde closed(p.kernel);
    EXPECT_TRUE(closed.roots_alpha().empty());
    EXPECT_TRUE(closed.roots_beta().empty());
}

TEST(ChebyshevTilde, ProductsReproduceOneMinusLambdaPower) {
    for (int n = 2; n <= 6; ++n) {
        const PreparedScenario p = prepare(low_loss(DefectKind::CrackPair, n));
        const ChebyshevTilde closed(p.kernel);
        EXPECT_EQ(closed.roots_alpha().size(), static_cast<std::size_t>((n - 1) / 2));
        EXPECT_EQ(closed.roots_beta().size(), static_cast<std::size_t>(n / 2));
        for (const cplx g : closed.roots_alpha()) EXPECT_LT(std::abs(g), 1.0);
        for (std::size_t i = 0; i < p.grid.size(); i += 3) {
            const auto v = closed(p.grid.node(i));
            const cplx lam_n = p.kernel.lam_N[i];
            EXPECT_LT(std::abs(v.alpha_plus * v.alpha_minus - (1.0 - lam_n)), 1e-8) << n;
            EXPECT_LT(std::abs(v.beta_plus * v.beta_minus - (1.0 + lam_n)), 1e-8) << n;
        }
    }
}

TEST(ChebyshevTilde, AgreesWithCauchyRoute) {
    const PreparedScenario p = prepare(low_loss(DefectKind::CrackPair, 5));
    const ChebyshevTilde closed(p.kernel);
    const TildeCauchy direct = cauchy_tilde_factors(p.kernel);
    for (std::size_t i = 0; i < p.grid.size(); i += 5) {
        const auto v = closed(p.grid.node(i));
        EXPECT_LT(std::abs(v.alpha_plus / direct.alpha.plus_samples[i] - 1.0), 1e-6);
        EXPECT_LT(std::abs(v.beta_minus / direct.beta.minus_samples[i] - 1.0), 1e-6);
    }
}

}  // namespace
}  // namespace stagger
