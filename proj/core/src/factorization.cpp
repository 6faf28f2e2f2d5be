#include "stagger/factorization.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "stagger/errors.hpp"

namespace stagger {

namespace {

std::vector<cplx> exp_samples(const std::vector<cplx>& v) {
    std::vector<cplx> out(v.size());
    std::transform(v.begin(), v.end(), out.begin(), [](cplx x) { return std::exp(x); });
    return out;
}

std::vector<cplx> reciprocal(const std::vector<cplx>& v) {
    std::vector<cplx> out(v.size());
    std::transform(v.begin(), v.end(), out.begin(), [](cplx x) { return 1.0 / x; });
    return out;
}

LaurentSeries plus_support(const std::vector<cplx>& samples, const ContourGrid& grid) {
    return to_series(samples, grid).restricted(0, static_cast<long>(grid.size() / 2) - 1);
}

LaurentSeries minus_support(const std::vector<cplx>& samples, const ContourGrid& grid) {
    return to_series(samples, grid).restricted(-static_cast<long>(grid.size() / 2), 0);
}

LaurentSeries with_constant(const LaurentSeries& s, cplx scaled_constant) {
    std::vector<cplx> d = s.scaled();
    d[static_cast<std::size_t>(0 - s.lo())] = scaled_constant;
    return LaurentSeries(s.radius(), s.lo(), std::move(d));
}

cplx root_or_ambiguous(cplx b) {
    try {
        return interior_root(b);
    } catch (const Error&) {
        throw Error(ErrorCode::RootSelectionAmbiguous, "both roots on the unit circle");
    }
}

}  // namespace

cplx FactorPair::plus_at(cplx z) const { return std::exp(log_plus(z)); }

cplx FactorPair::minus_at(cplx z) const { return std::exp(log_minus(z)); }

cplx FactorPair::plus_at_infinity() const { return std::exp(log_plus.scaled_coeff(0)); }

cplx FactorPair::minus_at_zero() const { return std::exp(log_minus.scaled_coeff(0)); }

long winding_number(const std::vector<cplx>& samples) {
    double turns = 0.0;
    const std::size_t n = samples.size();
    for (std::size_t k = 0; k < n; ++k) {
        turns += std::arg(samples[(k + 1) % n] / samples[k]);
    }
    return std::lround(turns / (2.0 * std::numbers::pi));
}

FactorPair cauchy_factorize(const std::vector<cplx>& samples, const ContourGrid& grid, std::string source) {
    const std::size_t n = grid.size();
    if (samples.size() != n) throw Error(ErrorCode::InvalidScenario, "sample count does not match the grid");
    for (std::size_t k = 0; k < n; ++k) {
        const double a = std::abs(samples[k]);
        if (!std::isfinite(a)) throw Error(ErrorCode::NonFiniteSample, "non-finite sample in " + source);
        if (a <= 1e-300) throw Error(ErrorCode::VanishingSample, "vanishing sample in " + source);
    }
    const long winding = winding_number(samples);
    if (winding != 0) {
        throw Error(ErrorCode::WindingNonZero, source + " has winding number " + std::to_string(winding));
    }
    std::vector<cplx> logs(n);
    double phase = std::arg(samples[0]);
    for (std::size_t k = 0; k < n; ++k) {
        if (k > 0) phase += std::arg(samples[k] / samples[k - 1]);
        logs[k] = cplx(std::log(std::abs(samples[k])), phase);
    }
    const LaurentSeries log_series = to_series(logs, grid);
    cplx d0 = log_series.scaled_coeff(0);
    const double two_pi = 2.0 * std::numbers::pi;
    double im = d0.imag() - two_pi * std::round(d0.imag() / two_pi);
    if (im <= -std::numbers::pi) im += two_pi;
    d0 = cplx(d0.real(), im);

    FactorPair pair;
    pair.source = std::move(source);
    const long half = static_cast<long>(n / 2);
    pair.log_plus = with_constant(log_series.restricted(0, half - 1), 0.5 * d0);
    pair.log_minus = with_constant(log_series.restricted(-half, 0), 0.5 * d0);
    pair.plus_samples = exp_samples(pair.log_plus.samples(grid));
    pair.minus_samples = exp_samples(pair.log_minus.samples(grid));
    pair.plus = plus_support(pair.plus_samples, grid);
    pair.minus = minus_support(pair.minus_samples, grid);
    return pair;
}

double product_residual(const FactorPair& pair, const std::vector<cplx>& samples) {
    double worst = 0.0;
    for (std::size_t k = 0; k < samples.size(); ++k) {
        worst = std::max(worst, std::abs(pair.plus_samples[k] * pair.minus_samples[k] / samples[k] - 1.0));
    }
    return worst;
}

ChebyshevTilde::ChebyshevTilde(const KernelBundle& bundle) : n_sep_(bundle.n_sep), z_r_(bundle.zeros.z_r) {
    const int N = n_sep_;
    const double pi = std::numbers::pi;
    for (int j = 1; j <= (N - 1) / 2; ++j) {
        const double s = std::sin(pi * j / N);
        g_alpha_.push_back(root_or_ambiguous(2.0 + 4.0 * s * s - bundle.omega2));
    }
    for (int j = 1; j <= N / 2; ++j) {
        const double s = std::sin(pi * (2.0 * j - 1.0) / (2.0 * N));
        g_beta_.push_back(root_or_ambiguous(2.0 + 4.0 * s * s - bundle.omega2));
    }
    std::vector<cplx> ratio(bundle.grid.size());
    std::vector<cplx> one_plus(bundle.grid.size());
    for (std::size_t k = 0; k < ratio.size(); ++k) {
        ratio[k] = bundle.h[k] / bundle.r[k];
        one_plus[k] = 1.0 + ratio[k];
    }
    ratio_ = cauchy_factorize(ratio, bundle.grid, "h/r");
    one_plus_ = cauchy_factorize(one_plus, bundle.grid, "1+h/r");

    // Symmetric constants; the sign keeps Re of each plus factor at infinity positive.
    const double half_power = std::pow(2.0, 0.5 * N);
    alpha_const_ = half_power * std::pow(std::sqrt(z_r_), static_cast<double>(g_alpha_.size()));
    for (const cplx g : g_alpha_) alpha_const_ /= std::sqrt(g);
    beta_const_ = half_power * std::pow(std::sqrt(z_r_), static_cast<double>(g_beta_.size()));
    for (const cplx g : g_beta_) beta_const_ /= std::sqrt(g);
    const cplx one_plus_inf = ipow(one_plus_.plus_at_infinity(), N);
    if ((ratio_.plus_at_infinity() * alpha_const_ / one_plus_inf).real() < 0.0) alpha_const_ = -alpha_const_;
    if ((beta_const_ / one_plus_inf).real() < 0.0) beta_const_ = -beta_const_;
}

ChebyshevTilde::Values ChebyshevTilde::operator()(cplx z) const {
    const cplx inv_z = 1.0 / z;
    cplx ap = alpha_const_ * ratio_.plus_at(z) / ipow(one_plus_.plus_at(z), n_sep_);
    cplx am = alpha_const_ * ratio_.minus_at(z) / ipow(one_plus_.minus_at(z), n_sep_);
    for (const cplx g : g_alpha_) {
        ap *= (1.0 - g * inv_z) / (1.0 - z_r_ * inv_z);
        am *= (1.0 - g * z) / (1.0 - z_r_ * z);
    }
    cplx bp = beta_const_ / ipow(one_plus_.plus_at(z), n_sep_);
    cplx bm = beta_const_ / ipow(one_plus_.minus_at(z), n_sep_);
    for (const cplx g : g_beta_) {
        bp *= (1.0 - g * inv_z) / (1.0 - z_r_ * inv_z);
        bm *= (1.0 - g * z) / (1.0 - z_r_ * z);
    }
    return {ap, am, bp, bm};
}

TildeCauchy cauchy_tilde_factors(const KernelBundle& bundle) {
    std::vector<cplx> a(bundle.grid.size());
    std::vector<cplx> b(bundle.grid.size());
    for (std::size_t k = 0; k < a.size(); ++k) {
        a[k] = 1.0 - bundle.lam_N[k];
        b[k] = 1.0 + bundle.lam_N[k];
    }
    return {cauchy_factorize(a, bundle.grid, "1-lambda^N"), cauchy_factorize(b, bundle.grid, "1+lambda^N")};
}

FactorSuite build_factor_suite(const KernelBundle& bundle, cplx zP) {
    FactorSuite suite;
    suite.alpha = cauchy_factorize(bundle.alpha, bundle.grid, "alpha");
    suite.beta = cauchy_factorize(bundle.beta, bundle.grid, "beta");
    const ContourGrid& grid = bundle.grid;
    suite.inv_alpha_plus = plus_support(reciprocal(suite.alpha.plus_samples), grid);
    suite.inv_alpha_minus = minus_support(reciprocal(suite.alpha.minus_samples), grid);
    suite.inv_beta_plus = plus_support(reciprocal(suite.beta.plus_samples), grid);
    suite.inv_beta_minus = minus_support(reciprocal(suite.beta.minus_samples), grid);
    suite.alpha_minus_zP = suite.alpha.minus_at(zP);
    suite.beta_minus_zP = suite.beta.minus_at(zP);
    suite.alpha_minus_0 = suite.alpha.minus_at_zero();
    suite.beta_minus_0 = suite.beta.minus_at_zero();
    suite.alpha_plus_inf = suite.alpha.plus_at_infinity();
    suite.beta_plus_inf = suite.beta.plus_at_infinity();
    suite.alpha_minus_zq = suite.alpha.minus_at(bundle.zeros.z_q);
    suite.beta_minus_zq = suite.beta.minus_at(bundle.zeros.z_q);
    return suite;
}

}  // namespace stagger
