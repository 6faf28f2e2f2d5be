#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "stagger/errors.hpp"
#include "stagger/kernel.hpp"
#include "stagger/laurent.hpp"

namespace stagger {
namespace {

double max_abs_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
    return worst;
}

LaurentSeries random_series(std::mt19937_64& rng, long lo, long hi, double radius = 1.0) {
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::vector<cplx> c(static_cast<std::size_t>(hi - lo + 1));
    for (std::size_t j = 0; j < c.size(); ++j) c[j] = cplx(unit(rng), unit(rng));
    return LaurentSeries::from_coefficients(radius, lo, c);
}

TEST(ContourGrid, RootsOfUnity) {
    const ContourGrid grid(1.0, 4);
    const std::vector<cplx> values = sample([](cplx z) { return z; }, grid);
    const std::vector<cplx> expected = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    EXPECT_LT(max_abs_diff(values, expected), 1e-15);
}

TEST(Sample, ConstantAndNonFinite) {
    const ContourGrid grid(1.2, 16);
    for (const cplx v : sample([](cplx) { return cplx(1.0); }, grid)) EXPECT_EQ(v, cplx(1.0));
    EXPECT_THROW(sample([](cplx) { return cplx(NAN, 0.0); }, grid), Error);
}

TEST(Sample, LambdaBoundedOnContour) {
    const ContourGrid grid(1.0005, 512);
    for (const cplx v : sample([](cplx z) { return lambda(z, {0.9, 0.05}); }, grid)) EXPECT_LE(std::abs(v), 1.0);
}

TEST(Dft, RoundTrip) {
    std::mt19937_64 rng(7);
    std::normal_distribution<double> g;
    std::vector<cplx> x(64);
    for (cplx& v : x) v = {g(rng), g(rng)};
    EXPECT_LT(max_abs_diff(dft_inverse(dft_forward(x)), x), 1e-13);
}

TEST(ToSeries, RecoversPolynomialCoefficients) {
    for (const double radius : {0.9, 1.0, 1.3}) {
        const ContourGrid grid(radius, 256);
        const LaurentSeries f = to_series(sample([](cplx z) { return 3.0 + 2.0 / z; }, grid), grid);
        EXPECT_NEAR(std::abs(f.coeff(0) - 3.0), 0.0, 1e-12);
        EXPECT_NEAR(std::abs(f.coeff(1) - 2.0), 0.0, 1e-12);
        for (long m = f.lo(); m <= f.hi(); ++m) {
            if (m != 0 && m != 1) EXPECT_LT(std::abs(f.scaled_coeff(m)), 1e-12) << m;
        }
        const LaurentSeries g = to_series(sample([](cplx z) { return z; }, grid), grid);
        EXPECT_NEAR(std::abs(g.coeff(-1) - 1.0), 0.0, 1e-12);
    }
}

TEST(ToSeries, ReconstructsSamples) {
    const ContourGrid grid(1.0005, 1024);
    const std::vector<cplx> s = sample([](cplx z) { return scalar_kernels(z, {0.9, 0.05}).crack; }, grid);
    const LaurentSeries f = to_series(s, grid);
    double scale = 0.0;
    for (const cplx v : s) scale = std::max(scale, std::abs(v));
    EXPECT_LT(max_abs_diff(f.samples(grid), s), 1e-10 * scale);
    for (std::size_t i = 0; i < grid.size(); i += 97) {
        EXPECT_LT(std::abs(f(grid.node(i)) - s[i]) / std::abs(s[i]), 1e-10);
    }
}

TEST(ToSeries, KernelCoefficientsDecay) {
    const ContourGrid grid(1.0, 4096);
    const LaurentSeries f =
        to_series(sample([](cplx z) { return scalar_kernels(z, {0.9, 0.05}).crack; }, grid), grid);
    EXPECT_LT(std::abs(f.coeff(100)), 1e-3 * std::abs(f.coeff(0)));
    EXPECT_LT(std::abs(f.coeff(-100)), 1e-3 * std::abs(f.coeff(0)));
    EXPECT_LT(tail_mass(f), 1e-10);
}

TEST(SplitAdditive, SeparatesSupports) {
    const LaurentSeries f = LaurentSeries::from_coefficients(1.0, -1, {1.0, 3.0, 2.0});
    const AdditiveSplit s = split_additive(f);
    EXPECT_EQ(s.plus.coeff(0), cplx(3.0));
    EXPECT_EQ(s.plus.coeff(1), cplx(2.0));
    EXPECT_EQ(s.plus.coeff(-1), cplx(0.0));
    EXPECT_EQ(s.minus.coeff(-1), cplx(1.0));
    EXPECT_EQ(s.minus.coeff(0), cplx(0.0));
}

TEST(SplitAdditive, PlusSeriesIsFixed) {
    std::mt19937_64 rng(3);
    const LaurentSeries f = random_series(rng, 0, 9);
    const AdditiveSplit s = split_additive(f);
    for (long m = 0; m <= 9; ++m) EXPECT_EQ(s.plus.coeff(m), f.coeff(m));
    for (long m = s.minus.lo(); m <= s.minus.hi(); ++m) EXPECT_EQ(s.minus.coeff(m), cplx(0.0));
}

TEST(SplitAdditive, SumIsExact) {
    std::mt19937_64 rng(11);
    const LaurentSeries f = random_series(rng, -12, 15);
    const AdditiveSplit s = split_additive(f);
    for (long m = -12; m <= 15; ++m) EXPECT_EQ(s.plus.coeff(m) + s.minus.coeff(m), f.coeff(m));
}

TEST(SplitSamples, MatchesSeriesSplit) {
    const ContourGrid grid(1.1, 64);
    std::mt19937_64 rng(5);
    const LaurentSeries f = random_series(rng, -10, 10, 1.1);
    const auto [plus, minus] = split_samples(f.samples(grid), grid);
    const AdditiveSplit s = split_additive(f);
    EXPECT_LT(max_abs_diff(plus, s.plus.samples(grid)), 1e-12);
    EXPECT_LT(max_abs_diff(minus, s.minus.samples(grid)), 1e-12);
}

TEST(ShiftSplitMinus, ZeroShiftIsLeadingCoefficient) {
    const LaurentSeries f = LaurentSeries::from_coefficients(1.0, -3, {0.1, 0.2, 0.3, 0.7});
    const ShiftSplit s = shift_split_minus(f, 0);
    EXPECT_EQ(s.plus.coeff(0), cplx(0.7));
    for (long m = s.plus.lo(); m <= s.plus.hi(); ++m) {
        if (m != 0) EXPECT_EQ(s.plus.coeff(m), cplx(0.0));
    }
}

TEST(ShiftSplitMinus, UnitShiftPolynomial) {
    // f = 0.7 + 0.3 z + 0.2 z^2 + 0.1 z^3; plus part of f/z is 0.7/z + 0.3.
    const LaurentSeries f = LaurentSeries::from_coefficients(1.0, -3, {0.1, 0.2, 0.3, 0.7});
    const ShiftSplit s = shift_split_minus(f, 1);
    EXPECT_EQ(s.plus.coeff(1), cplx(0.7));
    EXPECT_EQ(s.plus.coeff(0), cplx(0.3));
    EXPECT_EQ(s.minus.coeff(-1), cplx(0.2));
    EXPECT_EQ(s.minus.coeff(-2), cplx(0.1));
}

TEST(ShiftSplitMinus, PointwiseReconstruction) {
    std::mt19937_64 rng(17);
    const LaurentSeries f = random_series(rng, -7, 0);
    const ContourGrid grid(1.0, 64);
    const ShiftSplit s = shift_split_minus(f, 3);
    for (const cplx z : grid.nodes()) EXPECT_LT(std::abs(s.plus(z) + s.minus(z) - f(z) / (z * z * z)), 1e-12);
}

TEST(ShiftSplitPlus, ZeroShiftHasNoMinusPart) {
    const LaurentSeries F = LaurentSeries::from_coefficients(1.0, 0, {0.5, 0.25, 0.125});
    const ShiftSplit s = shift_split_plus(F, 0);
    for (long m = s.minus.lo(); m <= s.minus.hi(); ++m) EXPECT_EQ(s.minus.coeff(m), cplx(0.0));
}

TEST(ShiftSplitPlus, TwoShiftPolynomial) {
    const LaurentSeries F = LaurentSeries::from_coefficients(1.0, 0, {0.5, 0.25, 0.125});
    const ShiftSplit s = shift_split_plus(F, 2);
    EXPECT_EQ(s.minus.coeff(-2), cplx(0.5));
    EXPECT_EQ(s.minus.coeff(-1), cplx(0.25));
    EXPECT_EQ(s.plus.coeff(0), cplx(0.125));
}

TEST(ShiftSplitPlus, PointwiseReconstruction) {
    std::mt19937_64 rng(19);
    const LaurentSeries F = random_series(rng, 0, 10);
    const ContourGrid grid(1.0, 64);
    const ShiftSplit s = shift_split_plus(F, 4);
    for (const cplx z : grid.nodes()) EXPECT_LT(std::abs(s.plus(z) + s.minus(z) - F(z) * std::pow(z, 4)), 1e-12);
}

TEST(ProjectD, KeepsWindow) {
    const LaurentSeries f = LaurentSeries::from_coefficients(1.0, 0, {3.0, 2.0, 5.0});
    const LaurentSeries p = project_D(f, 0, 1);
    EXPECT_EQ(p.coeff(0), cplx(3.0));
    EXPECT_EQ(p.coeff(1), cplx(2.0));
    EXPECT_EQ(p.coeff(2), cplx(0.0));
    const LaurentSeries q = project_D(f, -5, -1);
    for (long m = q.lo(); m <= q.hi(); ++m) EXPECT_EQ(q.coeff(m), cplx(0.0));
}

TEST(ProjectD, LinearAndIdempotent) {
    std::mt19937_64 rng(23);
    const LaurentSeries f = random_series(rng, -6, 6);
    const LaurentSeries g = random_series(rng, -6, 6);
    const cplx a(0.3, -1.2), b(-0.7, 0.4);
    const LaurentSeries lhs = project_D(a * f + b * g, -3, 2);
    const LaurentSeries rhs = a * project_D(f, -3, 2) + b * project_D(g, -3, 2);
    const LaurentSeries twice = project_D(project_D(f, -3, 2), -3, 2);
    for (long m = -6; m <= 6; ++m) {
        EXPECT_LT(std::abs(lhs.coeff(m) - rhs.coeff(m)), 1e-14);
        EXPECT_EQ(twice.coeff(m), project_D(f, -3, 2).coeff(m));
    }
}

TEST(Coeff, OutsideRangeIsZero) {
    const LaurentSeries seven = LaurentSeries::from_coefficients(1.0, 0, {7.0});
    EXPECT_EQ(coeff(seven, 0), cplx(7.0));
    EXPECT_EQ(coeff(seven, 4), cplx(0.0));
    const LaurentSeries z2 = LaurentSeries::from_coefficients(2.0, 2, {1.0});
    EXPECT_NEAR(std::abs(coeff(z2, 2) - 1.0), 0.0, 1e-15);
}

TEST(Product, MatchesPointwise) {
    std::mt19937_64 rng(29);
    const LaurentSeries f = random_series(rng, -3, 4);
    const LaurentSeries g = random_series(rng, -2, 5);
    const LaurentSeries fg = product(f, g);
    const ContourGrid grid(1.0, 32);
    for (const cplx z : grid.nodes()) EXPECT_LT(std::abs(fg(z) - f(z) * g(z)), 1e-12);
}

}  // namespace
}  // namespace stagger
