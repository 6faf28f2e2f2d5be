#pragma once

#include <complex>
#include <vector>

#include "stagger/laurent.hpp"
#include "stagger/scenario.hpp"

namespace stagger {

struct LatticeSymbols {
    cplx H;  // 2 - z - 1/z - omega^2
    cplx R;  // H + 4
    cplx Q;  // H + 2
};

LatticeSymbols eval_HRQ(cplx z, cplx omega);

struct BranchRoots {
    cplx h;  // sqrt(H), Re h > 0
    cplx r;  // sqrt(R), Re r > 0, sgn Im r = sgn Im h
};

// Throws OnBranchCut when H or R lies on the negative real axis.
BranchRoots branch_sqrt(cplx z, cplx omega);

// (r - h)/(r + h), the bounded root of lambda + 1/lambda = Q.
cplx lambda(cplx z, cplx omega);

struct DistinguishedZeros {
    cplx z_h;  // H(z_h) = 0
    cplx z_r;  // R(z_r) = 0
    cplx z_q;  // Q(z_q) = 0
};

// Root of z + 1/z = b inside the unit disk; throws UnitModulusRoot.
cplx interior_root(cplx b);

DistinguishedZeros distinguished_zeros(cplx omega, bool validation_mode = false);

// max(|z_h|, |z_r|).
double kernel_radius(const DistinguishedZeros& zeros);

struct ScalarKernels {
    cplx crack;       // h/r
    cplx constraint;  // Q/(r h)
};

ScalarKernels scalar_kernels(cplx z, cplx omega);

struct AlphaBeta {
    cplx alpha;  // L (1 - lambda^N)
    cplx beta;   // L (1 + lambda^N)
};

AlphaBeta alpha_beta(cplx z, cplx omega, int n_sep, DefectKind kind);

// Integer power by repeated squaring.
cplx ipow(cplx base, long exponent);

// Contour evaluations of every kernel ingredient.
struct KernelBundle {
    cplx omega;
    cplx omega2;
    DistinguishedZeros zeros;
    double r_L = 0.0;
    int n_sep = 1;
    DefectKind kind = DefectKind::CrackPair;
    ContourGrid grid;
    std::vector<cplx> H, R, Q, h, r, lam, lam_N, scalar, alpha, beta;
};

KernelBundle make_kernel_bundle(cplx omega, const ContourGrid& grid, int n_sep, DefectKind kind,
                                bool validation_mode = false);

}  // namespace stagger
