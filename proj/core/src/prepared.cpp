#include "stagger/prepared.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "stagger/errors.hpp"

namespace stagger {

namespace {

constexpr double kPoleMargin = 1e-3;

double log_tail(const std::vector<cplx>& samples, const ContourGrid& grid) {
    std::vector<cplx> logs(samples.size());
    double phase = std::arg(samples[0]);
    for (std::size_t k = 0; k < samples.size(); ++k) {
        if (k > 0) phase += std::arg(samples[k] / samples[k - 1]);
        logs[k] = cplx(std::log(std::abs(samples[k])), phase);
    }
    return tail_mass(to_series(logs, grid));
}

bool tails_converged(const KernelBundle& kernel, double zP_modulus, double tol) {
    const double radius = kernel.grid.radius();
    const double half = static_cast<double>(kernel.grid.size() / 2);
    const double pole_decay = std::pow(zP_modulus / radius, half);
    return pole_decay < tol && log_tail(kernel.alpha, kernel.grid) < tol &&
           log_tail(kernel.beta, kernel.grid) < tol;
}

}  // namespace

RadiusBounds admissible_radii(const WaveVector& wave, const DistinguishedZeros& zeros) {
    const AnnulusRadii annulus = annulus_radii(wave);
    const double r_L = kernel_radius(zeros);
    RadiusBounds b{};
    b.lower = std::max({annulus.r_plus, r_L, std::abs(wave.zP) + kPoleMargin});
    b.upper = std::min(annulus.r_minus, 1.0 / r_L);
    if (!(b.lower < b.upper)) {
        throw Error(ErrorCode::EmptyAnnulus, "no admissible contour radius");
    }
    b.preferred = std::sqrt(b.lower * b.upper);
    return b;
}

PreparedScenario prepare(const ScatteringScenario& scenario, const NumericsOptions& options) {
    validate(scenario, options.validation_mode);
    if (!(options.tail_tolerance > 0.0)) {
        throw Error(ErrorCode::InvalidScenario, "tail tolerance must be positive");
    }
    PreparedScenario p;
    p.scenario = scenario;
    p.options = options;
    p.wave = solve_dispersion(scenario.omega, scenario.theta, options.validation_mode);
    p.zeros = distinguished_zeros(scenario.omega, options.validation_mode);
    p.bounds = admissible_radii(p.wave, p.zeros);
    p.e_N = std::exp(cplx(0.0, 1.0) * p.wave.ky * static_cast<double>(scenario.n_sep));

    const double radius = options.contour_radius.value_or(p.bounds.preferred);
    const double zP_modulus = std::abs(p.wave.zP);
    if (zP_modulus >= radius * (1.0 - 1e-9)) {
        throw Error(ErrorCode::PoleOnContour, "z_P is not strictly inside the contour");
    }
    if (!(radius > p.bounds.lower * (1.0 - 1e-12) && radius < p.bounds.upper * (1.0 + 1e-12))) {
        throw Error(ErrorCode::EmptyAnnulus, "contour radius " + std::to_string(radius) +
                                                 " lies outside the admissible range");
    }
    if (scenario.kind == DefectKind::ConstraintPair) {
        if (std::abs(p.zeros.z_q) >= radius * (1.0 - kPoleMargin)) {
            throw Error(ErrorCode::ZqOnContour, "z_q is too close to the contour");
        }
        if (std::abs(p.zeros.z_q - p.wave.zP) < 1e-6) {
            throw Error(ErrorCode::ResonantIncidence, "z_q coincides with z_P");
        }
    }

    // Coefficient windows of length |M| must stay alias-free.
    std::size_t samples = std::max<std::size_t>(options.samples, 4);
    const std::size_t stagger_floor = 16 * static_cast<std::size_t>(std::abs(scenario.m_offset));
    while (samples < stagger_floor) samples *= 2;
    for (;;) {
        p.grid = ContourGrid(radius, samples);
        p.kernel = make_kernel_bundle(scenario.omega, p.grid, scenario.n_sep, scenario.kind,
                                      options.validation_mode);
        if (!options.auto_refine || samples >= options.max_samples ||
            tails_converged(p.kernel, zP_modulus, options.tail_tolerance)) {
            break;
        }
        samples *= 2;
    }
    p.factors = build_factor_suite(p.kernel, p.wave.zP);
    return p;
}

}  // namespace stagger
