#include "stagger/kernel.hpp"

#include <algorithm>
#include <cmath>

#include "stagger/errors.hpp"

namespace stagger {

namespace {

bool on_negative_axis(cplx v) { return v.imag() == 0.0 && v.real() <= 0.0; }

int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

}  // namespace

LatticeSymbols eval_HRQ(cplx z, cplx omega) {
    if (z == cplx{}) throw Error(ErrorCode::ZeroArgument, "z = 0");
    const cplx H = 2.0 - z - 1.0 / z - omega * omega;
    return {H, H + 4.0, H + 2.0};
}

BranchRoots branch_sqrt(cplx z, cplx omega) {
    const LatticeSymbols s = eval_HRQ(z, omega);
    if (on_negative_axis(s.H) || on_negative_axis(s.R)) {
        throw Error(ErrorCode::OnBranchCut, "H or R on the negative real axis");
    }
    const cplx h = std::sqrt(s.H);
    const cplx r = std::sqrt(s.R);
    if (sign_of(h.imag()) != sign_of(r.imag())) {
        throw Error(ErrorCode::OnBranchCut, "sign of Im h and Im r differ");
    }
    return {h, r};
}

cplx lambda(cplx z, cplx omega) {
    const BranchRoots b = branch_sqrt(z, omega);
    return (b.r - b.h) / (b.r + b.h);
}

cplx interior_root(cplx b) {
    const cplx disc = std::sqrt(b * b - 4.0);
    const cplx r1 = 0.5 * (b + disc);
    const cplx r2 = 0.5 * (b - disc);
    const cplx inner = std::abs(r1) < std::abs(r2) ? r1 : r2;
    if (std::abs(std::abs(inner) - 1.0) < 1e-14) {
        throw Error(ErrorCode::UnitModulusRoot, "root on the unit circle");
    }
    return inner;
}

DistinguishedZeros distinguished_zeros(cplx omega, bool validation_mode) {
    if (!validation_mode && !(omega.imag() > 0.0)) {
        throw Error(ErrorCode::InvalidScenario, "Im omega must be positive");
    }
    const cplx w2 = omega * omega;
    return {interior_root(2.0 - w2), interior_root(6.0 - w2), interior_root(4.0 - w2)};
}

double kernel_radius(const DistinguishedZeros& zeros) {
    return std::max(std::abs(zeros.z_h), std::abs(zeros.z_r));
}

ScalarKernels scalar_kernels(cplx z, cplx omega) {
    const BranchRoots b = branch_sqrt(z, omega);
    if (b.r == cplx{}) throw Error(ErrorCode::DivisionByZero, "r vanishes");
    if (b.h == cplx{}) throw Error(ErrorCode::DivisionByZero, "h vanishes");
    const cplx Q = eval_HRQ(z, omega).Q;
    return {b.h / b.r, Q / (b.r * b.h)};
}

cplx ipow(cplx base, long exponent) {
    if (exponent < 0) return ipow(1.0 / base, -exponent);
    cplx result = 1.0;
    while (exponent > 0) {
        if (exponent & 1) result *= base;
        base *= base;
        exponent >>= 1;
    }
    return result;
}

AlphaBeta alpha_beta(cplx z, cplx omega, int n_sep, DefectKind kind) {
    if (n_sep < 1) throw Error(ErrorCode::InvalidScenario, "N must be at least 1");
    const ScalarKernels k = scalar_kernels(z, omega);
    const cplx L = kind == DefectKind::CrackPair ? k.crack : k.constraint;
    const cplx lamN = ipow(lambda(z, omega), n_sep);
    return {L * (1.0 - lamN), L * (1.0 + lamN)};
}

KernelBundle make_kernel_bundle(cplx omega, const ContourGrid& grid, int n_sep, DefectKind kind,
                                bool validation_mode) {
    KernelBundle b;
    b.omega = omega;
    b.omega2 = omega * omega;
    b.zeros = distinguished_zeros(omega, validation_mode);
    b.r_L = kernel_radius(b.zeros);
    b.n_sep = n_sep;
    b.kind = kind;
    b.grid = grid;
    const std::size_t n = grid.size();
    for (auto* v : {&b.H, &b.R, &b.Q, &b.h, &b.r, &b.lam, &b.lam_N, &b.scalar, &b.alpha, &b.beta}) {
        v->resize(n);
    }
    for (std::size_t k = 0; k < n; ++k) {
        const cplx z = grid.node(k);
        const LatticeSymbols s = eval_HRQ(z, omega);
        const BranchRoots roots = branch_sqrt(z, omega);
        if (roots.h == cplx{} || roots.r == cplx{}) {
            throw Error(ErrorCode::DivisionByZero, "kernel branch point on the contour");
        }
        b.H[k] = s.H;
        b.R[k] = s.R;
        b.Q[k] = s.Q;
        b.h[k] = roots.h;
        b.r[k] = roots.r;
        b.lam[k] = (roots.r - roots.h) / (roots.r + roots.h);
        b.lam_N[k] = ipow(b.lam[k], n_sep);
        b.scalar[k] = kind == DefectKind::CrackPair ? roots.h / roots.r : s.Q / (roots.r * roots.h);
        b.alpha[k] = b.scalar[k] * (1.0 - b.lam_N[k]);
        b.beta[k] = b.scalar[k] * (1.0 + b.lam_N[k]);
    }
    return b;
}

}  // namespace stagger
