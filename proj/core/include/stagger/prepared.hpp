#pragma once

#include <cstddef>
#include <optional>

#include "stagger/factorization.hpp"
#include "stagger/kernel.hpp"
#include "stagger/laurent.hpp"
#include "stagger/scenario.hpp"

namespace stagger {

// Numerical controls shared by every pipeline stage.
struct NumericsOptions {
    std::optional<double> contour_radius;  // automatic when empty
    std::size_t samples = 4096;            // initial K
    bool auto_refine = true;               // double K until the tails are small
    double tail_tolerance = 1e-10;
    std::size_t max_samples = 1u << 16;
    bool validation_mode = false;
};

// Bounds of the admissible contour radii and the automatic choice.
struct RadiusBounds {
    double lower;      // max(R+, R_L, |z_P| + 1e-3)
    double upper;      // min(R-, 1/R_L)
    double preferred;  // geometric mean
};

// Throws EmptyAnnulus when no radius is admissible.
RadiusBounds admissible_radii(const WaveVector& wave, const DistinguishedZeros& zeros);

// Everything a solve needs: scenario, wave vector, contour, kernel and factors.
struct PreparedScenario {
    ScatteringScenario scenario;
    WaveVector wave;
    DistinguishedZeros zeros;
    RadiusBounds bounds;
    ContourGrid grid;
    KernelBundle kernel;
    FactorSuite factors;
    cplx e_N;  // exp(i ky N)
    NumericsOptions options;

    double radius() const noexcept { return grid.radius(); }
    std::size_t samples() const noexcept { return grid.size(); }
    cplx incident(long x, long y) const { return incident_field(scenario, wave, x, y); }
};

// Throws PoleOnContour, EmptyAnnulus, ZqOnContour, ResonantIncidence and
// anything raised by the kernel or factorization stages.
PreparedScenario prepare(const ScatteringScenario& scenario, const NumericsOptions& options = {});

}  // namespace stagger
