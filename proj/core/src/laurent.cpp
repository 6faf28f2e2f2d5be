#include "stagger/laurent.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <string>

#include "stagger/errors.hpp"

namespace stagger {

namespace {

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

struct FftwBuffer {
    explicit FftwBuffer(std::size_t n)
        : data(static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n))) {}
    ~FftwBuffer() { fftw_free(data); }
    FftwBuffer(const FftwBuffer&) = delete;
    FftwBuffer& operator=(const FftwBuffer&) = delete;
    fftw_complex* data;
};

// Plans are created once per (size, direction) under a lock; execution with
// fresh aligned buffers through the new-array interface is thread safe.
class PlanCache {
public:
    static PlanCache& instance() {
        static PlanCache cache;
        return cache;
    }

    fftw_plan get(std::size_t n, int sign) {
        std::lock_guard<std::mutex> lock(mutex_);
        const auto key = std::make_pair(n, sign);
        auto it = plans_.find(key);
        if (it != plans_.end()) return it->second;
        FftwBuffer in(n);
        FftwBuffer out(n);
        fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(n), in.data, out.data, sign, FFTW_ESTIMATE);
        plans_.emplace(key, plan);
        return plan;
    }

    ~PlanCache() {
        for (auto& entry : plans_) fftw_destroy_plan(entry.second);
    }

private:
    std::mutex mutex_;
    std::map<std::pair<std::size_t, int>, fftw_plan> plans_;
};

std::vector<cplx> run_dft(const std::vector<cplx>& x, int sign) {
    const std::size_t n = x.size();
    if (n == 0) return {};
    FftwBuffer in(n);
    FftwBuffer out(n);
    for (std::size_t k = 0; k < n; ++k) {
        in.data[k][0] = x[k].real();
        in.data[k][1] = x[k].imag();
    }
    fftw_execute_dft(PlanCache::instance().get(n, sign), in.data, out.data);
    std::vector<cplx> result(n);
    for (std::size_t k = 0; k < n; ++k) result[k] = cplx(out.data[k][0], out.data[k][1]);
    return result;
}

long positive_mod(long a, long n) {
    const long r = a % n;
    return r < 0 ? r + n : r;
}

}  // namespace

ContourGrid::ContourGrid(double radius, std::size_t n_samples) : radius_(radius) {
    if (!(radius > 0.0) || !std::isfinite(radius)) {
        throw Error(ErrorCode::InvalidScenario, "contour radius must be positive");
    }
    if (n_samples < 4 || !is_power_of_two(n_samples)) {
        throw Error(ErrorCode::InvalidScenario, "sample count must be a power of two >= 4");
    }
    nodes_.resize(n_samples);
    const double step = 2.0 * std::numbers::pi / static_cast<double>(n_samples);
    for (std::size_t k = 0; k < n_samples; ++k) {
        nodes_[k] = std::polar(radius, step * static_cast<double>(k));
    }
    // Exact values on the axes keep small-K tests free of rounding.
    const std::size_t quarter = n_samples / 4;
    nodes_[0] = cplx(radius, 0.0);
    nodes_[quarter] = cplx(0.0, radius);
    nodes_[2 * quarter] = cplx(-radius, 0.0);
    nodes_[3 * quarter] = cplx(0.0, -radius);
}

std::vector<cplx> dft_forward(const std::vector<cplx>& x) { return run_dft(x, FFTW_FORWARD); }

std::vector<cplx> dft_inverse(const std::vector<cplx>& x) {
    std::vector<cplx> y = run_dft(x, FFTW_BACKWARD);
    const double scale = 1.0 / static_cast<double>(x.size());
    for (auto& v : y) v *= scale;
    return y;
}

LaurentSeries::LaurentSeries(double radius, long lo, std::vector<cplx> scaled)
    : radius_(radius), lo_(lo), scaled_(std::move(scaled)) {
    if (scaled_.empty()) lo_ = 0;
}

LaurentSeries LaurentSeries::from_coefficients(double radius, long lo, const std::vector<cplx>& coeffs) {
    std::vector<cplx> scaled(coeffs.size());
    const double log_radius = std::log(radius);
    for (std::size_t j = 0; j < coeffs.size(); ++j) {
        const long m = lo + static_cast<long>(j);
        scaled[j] = coeffs[j] * std::exp(-static_cast<double>(m) * log_radius);
    }
    return LaurentSeries(radius, lo, std::move(scaled));
}

cplx LaurentSeries::scaled_coeff(long m) const {
    if (scaled_.empty() || m < lo_ || m > hi()) return {};
    return scaled_[static_cast<std::size_t>(m - lo_)];
}

cplx LaurentSeries::coeff(long m) const {
    const cplx d = scaled_coeff(m);
    if (d == cplx{}) return d;
    return d * std::exp(static_cast<double>(m) * std::log(radius_));
}

cplx LaurentSeries::operator()(cplx z) const {
    if (scaled_.empty()) return {};
    if (z == cplx{}) {
        if (hi() > 0) throw Error(ErrorCode::ZeroArgument, "series with plus part evaluated at 0");
        return scaled_coeff(0);
    }
    cplx total{};
    const long h = hi();
    const long plus_start = std::max(lo_, 0L);
    if (plus_start <= h) {
        const cplx t = radius_ / z;
        cplx acc{};
        for (long m = h; m >= plus_start; --m) acc = acc * t + scaled_coeff(m);
        total += acc * std::pow(t, static_cast<int>(plus_start));
    }
    const long minus_end = std::min(h, -1L);
    if (lo_ <= minus_end) {
        const cplx u = z / radius_;
        cplx acc{};
        for (long m = lo_; m <= minus_end; ++m) acc = acc * u + scaled_coeff(m);
        total += acc * std::pow(u, static_cast<int>(-minus_end));
    }
    return total;
}

std::vector<cplx> LaurentSeries::samples(const ContourGrid& grid) const {
    const std::size_t n = grid.size();
    std::vector<cplx> aliased(n);
    const double log_ratio = std::log(radius_ / grid.radius());
    const bool same_radius = std::abs(log_ratio) < 1e-15;
    for (std::size_t j = 0; j < scaled_.size(); ++j) {
        const cplx d = scaled_[j];
        if (d == cplx{}) continue;
        const long m = lo_ + static_cast<long>(j);
        const cplx value = same_radius ? d : d * std::exp(static_cast<double>(m) * log_ratio);
        aliased[static_cast<std::size_t>(positive_mod(m, static_cast<long>(n)))] += value;
    }
    return dft_forward(aliased);
}

LaurentSeries LaurentSeries::restricted(long lo, long hi) const {
    const long a = std::max(lo, lo_);
    const long b = std::min(hi, this->hi());
    if (scaled_.empty() || a > b) return LaurentSeries(radius_, 0, {});
    std::vector<cplx> part(scaled_.begin() + (a - lo_), scaled_.begin() + (b - lo_ + 1));
    return LaurentSeries(radius_, a, std::move(part));
}

LaurentSeries& LaurentSeries::operator*=(cplx factor) {
    for (auto& d : scaled_) d *= factor;
    return *this;
}

LaurentSeries& LaurentSeries::operator+=(const LaurentSeries& other) {
    if (other.empty()) return *this;
    LaurentSeries rhs = other;
    if (std::abs(other.radius_ - radius_) > 0.0 && !empty()) {
        rhs = LaurentSeries::from_coefficients(radius_, other.lo_, [&] {
            std::vector<cplx> c(other.scaled_.size());
            for (std::size_t j = 0; j < c.size(); ++j) c[j] = other.coeff(other.lo_ + static_cast<long>(j));
            return c;
        }());
    }
    if (empty()) {
        *this = rhs;
        return *this;
    }
    const long new_lo = std::min(lo_, rhs.lo_);
    const long new_hi = std::max(hi(), rhs.hi());
    std::vector<cplx> merged(static_cast<std::size_t>(new_hi - new_lo + 1));
    for (long m = lo_; m <= hi(); ++m) merged[static_cast<std::size_t>(m - new_lo)] += scaled_coeff(m);
    for (long m = rhs.lo_; m <= rhs.hi(); ++m) merged[static_cast<std::size_t>(m - new_lo)] += rhs.scaled_coeff(m);
    lo_ = new_lo;
    scaled_ = std::move(merged);
    return *this;
}

LaurentSeries operator+(LaurentSeries a, const LaurentSeries& b) {
    a += b;
    return a;
}

LaurentSeries operator*(cplx factor, LaurentSeries a) {
    a *= factor;
    return a;
}

LaurentSeries product(const LaurentSeries& a, const LaurentSeries& b) {
    if (a.empty() || b.empty()) return LaurentSeries(a.radius(), 0, {});
    if (std::abs(a.radius() - b.radius()) > 0.0) {
        std::vector<cplx> c(b.scaled().size());
        for (std::size_t j = 0; j < c.size(); ++j) c[j] = b.coeff(b.lo() + static_cast<long>(j));
        return product(a, LaurentSeries::from_coefficients(a.radius(), b.lo(), c));
    }
    const auto& da = a.scaled();
    const auto& db = b.scaled();
    std::vector<cplx> out(da.size() + db.size() - 1);
    for (std::size_t i = 0; i < da.size(); ++i) {
        if (da[i] == cplx{}) continue;
        for (std::size_t j = 0; j < db.size(); ++j) out[i + j] += da[i] * db[j];
    }
    return LaurentSeries(a.radius(), a.lo() + b.lo(), std::move(out));
}

std::vector<cplx> sample(const std::function<cplx(cplx)>& fn, const ContourGrid& grid) {
    std::vector<cplx> values(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k) {
        values[k] = fn(grid.node(k));
        if (!std::isfinite(values[k].real()) || !std::isfinite(values[k].imag())) {
            throw Error(ErrorCode::NonFiniteSample, "non-finite value at node " + std::to_string(k));
        }
    }
    return values;
}

LaurentSeries to_series(const std::vector<cplx>& samples, const ContourGrid& grid) {
    const std::size_t n = grid.size();
    if (samples.size() != n) {
        throw Error(ErrorCode::InvalidScenario, "sample count does not match the grid");
    }
    const std::vector<cplx> d = dft_inverse(samples);
    const long half = static_cast<long>(n / 2);
    std::vector<cplx> scaled(n);
    for (long m = -half; m < half; ++m) {
        scaled[static_cast<std::size_t>(m + half)] = d[static_cast<std::size_t>(positive_mod(m, static_cast<long>(n)))];
    }
    return LaurentSeries(grid.radius(), -half, std::move(scaled));
}

AdditiveSplit split_additive(const LaurentSeries& f) {
    return {f.restricted(0, f.hi()), f.restricted(f.lo(), -1)};
}

std::pair<std::vector<cplx>, std::vector<cplx>> split_samples(const std::vector<cplx>& samples,
                                                              const ContourGrid& grid) {
    const std::size_t n = grid.size();
    std::vector<cplx> d = dft_inverse(samples);
    std::vector<cplx> plus_coeffs(n);
    std::vector<cplx> minus_coeffs(n);
    for (std::size_t j = 0; j < n; ++j) {
        if (j < n / 2) {
            plus_coeffs[j] = d[j];
        } else {
            minus_coeffs[j] = d[j];
        }
    }
    return {dft_forward(plus_coeffs), dft_forward(minus_coeffs)};
}

ShiftSplit shift_split_minus(const LaurentSeries& fminus, long m) {
    if (m < 0) throw Error(ErrorCode::InvalidScenario, "shift must be non-negative");
    if (fminus.empty()) return {fminus, fminus};
    if (fminus.hi() > 0) throw Error(ErrorCode::InvalidScenario, "shift_split_minus needs a minus-type series");
    std::vector<cplx> shifted = fminus.scaled();
    const double factor = std::pow(fminus.radius(), -static_cast<double>(m));
    for (auto& d : shifted) d *= factor;
    const LaurentSeries moved(fminus.radius(), fminus.lo() + m, std::move(shifted));
    return {moved.restricted(0, moved.hi()), moved.restricted(moved.lo(), -1)};
}

ShiftSplit shift_split_plus(const LaurentSeries& fplus, long m) {
    if (m < 0) throw Error(ErrorCode::InvalidScenario, "shift must be non-negative");
    if (fplus.empty()) return {fplus, fplus};
    if (fplus.lo() < 0) throw Error(ErrorCode::InvalidScenario, "shift_split_plus needs a plus-type series");
    std::vector<cplx> shifted = fplus.scaled();
    const double factor = std::pow(fplus.radius(), static_cast<double>(m));
    for (auto& d : shifted) d *= factor;
    const LaurentSeries moved(fplus.radius(), fplus.lo() - m, std::move(shifted));
    return {moved.restricted(0, moved.hi()), moved.restricted(moved.lo(), -1)};
}

LaurentSeries project_D(const LaurentSeries& f, long d_lo, long d_hi) { return f.restricted(d_lo, d_hi); }

cplx coeff(const LaurentSeries& f, long mu) { return f.coeff(mu); }

double tail_mass(const LaurentSeries& f) {
    if (f.empty()) return 0.0;
    const long quarter = static_cast<long>(f.scaled().size()) / 4;
    double total = 0.0;
    double tail = 0.0;
    for (long m = f.lo(); m <= f.hi(); ++m) {
        const double a = std::abs(f.scaled_coeff(m));
        total += a;
        if (std::abs(m) >= quarter) tail += a;
    }
    return total > 0.0 ? tail / total : 0.0;
}

}  // namespace stagger
