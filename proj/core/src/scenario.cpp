#include "stagger/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "stagger/errors.hpp"

namespace stagger {

const char* kind_name(DefectKind kind) noexcept {
    return kind == DefectKind::CrackPair ? "crack" : "constraint";
}

void validate(const ScatteringScenario& s, bool validation_mode) {
    if (!std::isfinite(s.omega.real()) || !std::isfinite(s.omega.imag())) {
        throw Error(ErrorCode::InvalidScenario, "omega must be finite");
    }
    if (validation_mode) {
        if (s.omega.imag() < 0.0) {
            throw Error(ErrorCode::InvalidScenario, "Im omega must be non-negative");
        }
    } else if (!(s.omega.imag() > 0.0)) {
        throw Error(ErrorCode::InvalidScenario, "Im omega must be positive");
    }
    if (!(s.theta > -std::numbers::pi && s.theta <= std::numbers::pi)) {
        throw Error(ErrorCode::InvalidScenario, "theta must lie in (-pi, pi]");
    }
    if (s.n_sep < 1) {
        throw Error(ErrorCode::InvalidScenario, "N must be at least 1");
    }
    if (!std::isfinite(std::abs(s.amplitude))) {
        throw Error(ErrorCode::InvalidScenario, "amplitude must be finite");
    }
}

double dispersion_residual(cplx omega, double theta, cplx kappa) {
    const double c = std::cos(theta);
    const double sn = std::sin(theta);
    const cplx a = std::sin(kappa * c / 2.0);
    const cplx b = std::sin(kappa * sn / 2.0);
    return std::abs(4.0 * (a * a + b * b) - omega * omega);
}

WaveVector solve_dispersion(cplx omega, double theta, bool validation_mode) {
    if (!validation_mode && !(omega.imag() > 0.0)) {
        throw Error(ErrorCode::InvalidScenario, "Im omega must be positive");
    }
    if (validation_mode) {
        const double limit = 2.0 * std::numbers::sqrt2;
        if (omega.imag() == 0.0 && !(omega.real() > 0.0 && omega.real() < limit)) {
            throw Error(ErrorCode::InvalidScenario, "real omega must lie in (0, 2 sqrt 2)");
        }
    }
    const double c = std::cos(theta);
    const double sn = std::sin(theta);
    const cplx target = omega * omega;
    cplx kappa = omega;
    bool converged = false;
    for (int iter = 0; iter < 100; ++iter) {
        const cplx a = std::sin(kappa * c / 2.0);
        const cplx b = std::sin(kappa * sn / 2.0);
        const cplx g = 4.0 * (a * a + b * b) - target;
        const cplx dg = 2.0 * (c * std::sin(kappa * c) + sn * std::sin(kappa * sn));
        if (std::abs(dg) < 1e-14) {
            throw Error(ErrorCode::DegenerateAngle, "dispersion derivative vanishes");
        }
        const cplx step = g / dg;
        kappa -= step;
        if (std::abs(step) <= 1e-15 * std::max(1.0, std::abs(kappa))) {
            converged = true;
            break;
        }
    }
    if (!converged && dispersion_residual(omega, theta, kappa) > 1e-12) {
        throw Error(ErrorCode::NoConvergence, "Newton iteration for kappa did not converge");
    }
    if (kappa.real() < 0.0) kappa = -kappa;
    if (dispersion_residual(omega, theta, kappa) > 1e-12) {
        throw Error(ErrorCode::NoConvergence,
                    "dispersion residual " + std::to_string(dispersion_residual(omega, theta, kappa)));
    }
    WaveVector w;
    w.kappa = kappa;
    w.kx = kappa * c;
    w.ky = kappa * sn;
    w.zP = std::exp(cplx(0.0, 1.0) * w.kx);
    return w;
}

cplx incident_field(const ScatteringScenario& s, const WaveVector& w, long x, long y) {
    const cplx phase = cplx(0.0, 1.0) * (w.kx * static_cast<double>(x) + w.ky * static_cast<double>(y));
    return s.amplitude * std::exp(phase);
}

AnnulusRadii annulus_radii(const WaveVector& w) {
    const double kappa2 = w.kappa.imag();
    if (!(kappa2 > 0.0)) {
        throw Error(ErrorCode::EmptyAnnulus, "Im kappa must be positive");
    }
    // Im kx = Im(kappa) cos(theta).
    AnnulusRadii radii{std::exp(-kappa2), std::exp(w.kx.imag())};
    if (!(radii.r_plus < radii.r_minus)) {
        throw Error(ErrorCode::EmptyAnnulus, "R+ >= R-");
    }
    return radii;
}

}  // namespace stagger
