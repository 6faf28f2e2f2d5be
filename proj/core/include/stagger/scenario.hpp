#pragma once

#include <complex>
#include <string_view>

namespace stagger {

using cplx = std::complex<double>;

enum class DefectKind { CrackPair, ConstraintPair };

const char* kind_name(DefectKind kind) noexcept;

// Physical parameters of one scattering run.
struct ScatteringScenario {
    cplx omega{0.9, 0.1};       // complex frequency, Im > 0 for production runs
    double theta = 0.0;         // incidence angle in radians, (-pi, pi]
    cplx amplitude{1.0, 0.0};   // incident amplitude A
    DefectKind kind = DefectKind::CrackPair;
    int n_sep = 1;              // vertical separation N
    int m_offset = 0;           // horizontal stagger M
};

// Throws InvalidScenario. Real frequencies pass only in validation mode.
void validate(const ScatteringScenario& s, bool validation_mode = false);

// Incident lattice wave vector and its transform pole z_P = exp(i kx).
struct WaveVector {
    cplx kappa;
    cplx kx;
    cplx ky;
    cplx zP;
};

// |4(sin^2(kx/2) + sin^2(ky/2)) - omega^2| for kappa at angle theta.
double dispersion_residual(cplx omega, double theta, cplx kappa);

// Newton solve of the lattice dispersion relation seeded at kappa = omega.
WaveVector solve_dispersion(cplx omega, double theta, bool validation_mode = false);

// A exp(i kx x + i ky y).
cplx incident_field(const ScatteringScenario& s, const WaveVector& w, long x, long y);

struct AnnulusRadii {
    double r_plus;
    double r_minus;
};

// Strip of joint analyticity of the row transforms.
AnnulusRadii annulus_radii(const WaveVector& w);

}  // namespace stagger
