#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

namespace stagger {

using cplx = std::complex<double>;

// K equispaced nodes on the circle |z| = radius, counter-clockwise from the real axis.
class ContourGrid {
public:
    ContourGrid() = default;
    // n_samples must be a power of two, at least 4.
    ContourGrid(double radius, std::size_t n_samples);

    double radius() const noexcept { return radius_; }
    std::size_t size() const noexcept { return nodes_.size(); }
    const cplx& node(std::size_t k) const { return nodes_[k]; }
    const std::vector<cplx>& nodes() const noexcept { return nodes_; }

private:
    double radius_ = 1.0;
    std::vector<cplx> nodes_;
};

// X_k = sum_n x_n exp(-2 pi i k n / K).
std::vector<cplx> dft_forward(const std::vector<cplx>& x);
// x_n = (1/K) sum_k X_k exp(2 pi i k n / K).
std::vector<cplx> dft_inverse(const std::vector<cplx>& x);

// f(z) = sum_m c_m z^{-m} over a contiguous index window [lo, hi].
// Coefficients are held scaled by the contour radius, d_m = c_m radius^{-m},
// so evaluation near the contour never forms large powers of the radius.
class LaurentSeries {
public:
    LaurentSeries() = default;
    LaurentSeries(double radius, long lo, std::vector<cplx> scaled);

    // Builds from true coefficients c_lo, c_lo+1, ...
    static LaurentSeries from_coefficients(double radius, long lo, const std::vector<cplx>& coeffs);

    bool empty() const noexcept { return scaled_.empty(); }
    long lo() const noexcept { return lo_; }
    long hi() const noexcept { return lo_ + static_cast<long>(scaled_.size()) - 1; }
    double radius() const noexcept { return radius_; }
    const std::vector<cplx>& scaled() const noexcept { return scaled_; }

    // True coefficient of z^{-m}; zero outside the window.
    cplx coeff(long m) const;
    cplx scaled_coeff(long m) const;

    // Direct summation; converges where the stored support allows.
    cplx operator()(cplx z) const;

    // Values at the nodes of any grid; uses one FFT.
    std::vector<cplx> samples(const ContourGrid& grid) const;

    // Keeps indices in [lo, hi] only.
    LaurentSeries restricted(long lo, long hi) const;

    LaurentSeries& operator*=(cplx factor);
    LaurentSeries& operator+=(const LaurentSeries& other);

private:
    double radius_ = 1.0;
    long lo_ = 0;
    std::vector<cplx> scaled_;
};

LaurentSeries operator+(LaurentSeries a, const LaurentSeries& b);
LaurentSeries operator*(cplx factor, LaurentSeries a);
// Cauchy product by direct convolution. Cost is the product of the two lengths.
LaurentSeries product(const LaurentSeries& a, const LaurentSeries& b);

// Evaluates fn at every node; throws NonFiniteSample.
std::vector<cplx> sample(const std::function<cplx(cplx)>& fn, const ContourGrid& grid);

// Coefficients for m in [-K/2, K/2) from K contour samples.
LaurentSeries to_series(const std::vector<cplx>& samples, const ContourGrid& grid);

struct AdditiveSplit {
    LaurentSeries plus;   // m >= 0
    LaurentSeries minus;  // m < 0
};

AdditiveSplit split_additive(const LaurentSeries& f);

// Pointwise plus/minus parts of contour samples.
std::pair<std::vector<cplx>, std::vector<cplx>> split_samples(const std::vector<cplx>& samples,
                                                              const ContourGrid& grid);

struct ShiftSplit {
    LaurentSeries plus;
    LaurentSeries minus;
};

// fminus(z) z^{-m}: plus part is the polynomial f_0 z^{-m} + ... + f_{-m}.
ShiftSplit shift_split_minus(const LaurentSeries& fminus, long m);

// Fplus(z) z^{m}: minus part is the polynomial F_0 z^m + ... + F_{m-1} z.
ShiftSplit shift_split_plus(const LaurentSeries& fplus, long m);

// Keeps the coefficients with index in [d_lo, d_hi].
LaurentSeries project_D(const LaurentSeries& f, long d_lo, long d_hi);

// Coefficient of z^{-mu}, zero outside the stored range.
cplx coeff(const LaurentSeries& f, long mu);

// Sum of |d_m| over |m| >= K/4 relative to the sum over all m.
double tail_mass(const LaurentSeries& f);

}  // namespace stagger
