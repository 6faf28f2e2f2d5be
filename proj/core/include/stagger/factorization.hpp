#pragma once

#include <string>
#include <vector>

#include "stagger/kernel.hpp"
#include "stagger/laurent.hpp"

namespace stagger {

// Multiplicative factors f = f_plus f_minus of a contour function.
// The constant log coefficient is shared equally, so f_plus(inf) = f_minus(0).
struct FactorPair {
    std::string source;
    LaurentSeries log_plus;   // indices 0 .. K/2-1
    LaurentSeries log_minus;  // indices -K/2 .. 0
    std::vector<cplx> plus_samples;
    std::vector<cplx> minus_samples;
    LaurentSeries plus;       // series of f_plus, support m >= 0
    LaurentSeries minus;      // series of f_minus, support m <= 0

    // Off-contour evaluation through the log series.
    cplx plus_at(cplx z) const;
    cplx minus_at(cplx z) const;
    cplx plus_at_infinity() const;
    cplx minus_at_zero() const;
};

// Net number of turns of the samples around the origin.
long winding_number(const std::vector<cplx>& samples);

// Throws WindingNonZero or VanishingSample.
FactorPair cauchy_factorize(const std::vector<cplx>& samples, const ContourGrid& grid,
                            std::string source = {});

// max |plus minus / f - 1| over the contour.
double product_residual(const FactorPair& pair, const std::vector<cplx>& samples);

// Closed-form products for the factors of 1 -+ lambda^N, sharing numerically
// factored h/r and 1 + h/r.
class ChebyshevTilde {
public:
    ChebyshevTilde(const KernelBundle& bundle);

    struct Values {
        cplx alpha_plus, alpha_minus, beta_plus, beta_minus;
    };

    // Closed-form roots g^(1)_j, j = 1..floor((N-1)/2) and g^(2)_j, j = 1..floor(N/2).
    const std::vector<cplx>& roots_alpha() const noexcept { return g_alpha_; }
    const std::vector<cplx>& roots_beta() const noexcept { return g_beta_; }

    // Valid for z on or near the contour.
    Values operator()(cplx z) const;

private:
    int n_sep_;
    cplx z_r_;
    std::vector<cplx> g_alpha_;
    std::vector<cplx> g_beta_;
    FactorPair ratio_;      // h/r
    FactorPair one_plus_;   // 1 + h/r
    cplx alpha_const_;
    cplx beta_const_;
};

// Sample-based route: factor 1 -+ lambda^N directly.
struct TildeCauchy {
    FactorPair alpha;
    FactorPair beta;
};

TildeCauchy cauchy_tilde_factors(const KernelBundle& bundle);

// Factors of alpha and beta, their reciprocals, and the point values used by
// the reduced systems.
struct FactorSuite {
    FactorPair alpha;
    FactorPair beta;
    LaurentSeries inv_alpha_plus, inv_alpha_minus, inv_beta_plus, inv_beta_minus;
    cplx alpha_minus_zP, beta_minus_zP;
    cplx alpha_minus_0, beta_minus_0;
    cplx alpha_plus_inf, beta_plus_inf;
    cplx alpha_minus_zq, beta_minus_zq;
};

FactorSuite build_factor_suite(const KernelBundle& bundle, cplx zP);

}  // namespace stagger
