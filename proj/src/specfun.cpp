#include "telegf/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "telegf/errors.hpp"

namespace telegf::specfun {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Below this the power series is used for every order; its terms are all
// positive, so the only error is rounding in ~z terms.
constexpr double kSeriesLimit = 30.0;

void check_argument(double z) {
    if (!(z >= 0.0) || !std::isfinite(z))
        throw DomainError("bessel_i: argument must be finite and non-negative");
}

// sum_k (z^2/4)^k / (k! (k+n)!) times (z/2)^n / n!, unscaled.
double series(unsigned n, double z) {
    double lead = 1.0;
    const double half = 0.5 * z;
    for (unsigned k = 1; k <= n; ++k) {
        lead *= half / k;
        if (lead == 0.0) return 0.0;
    }
    const double q = half * half;
    double term = 1.0;
    double sum = 1.0;
    for (unsigned k = 1; k < 1000; ++k) {
        term *= q / (double(k) * double(k + n));
        sum += term;
        if (term < kEps * sum * 0.25) break;
    }
    return lead * sum;
}

// Hankel expansion of e^{-z} I_n(z); returns false if it does not reach
// machine precision before the terms start growing.
bool asymptotic_scaled(unsigned n, double z, double& out) {
    const double mu = 4.0 * double(n) * double(n);
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 200; ++k) {
        const double odd = 2.0 * k - 1.0;
        const double next = -term * (mu - odd * odd) / (8.0 * k * z);
        if (std::abs(next) > std::abs(term) && k > 1) return false;
        term = next;
        sum += term;
        if (std::abs(term) < 0.5 * kEps * std::abs(sum)) {
            out = sum / std::sqrt(2.0 * std::numbers::pi * z);
            return true;
        }
    }
    return false;
}

// Miller's algorithm: backward recurrence from a start order well beyond
// both n_max and z, normalised with e^{-z}(I_0 + 2 sum_{k>=1} I_k) = 1.
void miller_scaled(double z, std::span<double> out) {
    const std::size_t nmax = out.size() - 1;
    const double span_arg = std::max<double>(double(nmax), z);
    const auto start = std::size_t(span_arg + 20.0 + std::sqrt(200.0 * std::max(span_arg, 1.0)));
    constexpr double kBig = 1e250;

    double upper = 0.0;   // I_{k+1}
    double current = 1e-300;  // I_k, arbitrary seed
    double norm = 0.0;    // sum over k >= 1 of I_k, rescaled in step
    std::fill(out.begin(), out.end(), 0.0);
    for (std::size_t k = start; k >= 1; --k) {
        const double lower = upper + (2.0 * double(k) / z) * current;  // I_{k-1}
        norm += current;
        if (k <= nmax) out[k] = current;
        upper = current;
        current = lower;
        if (current > kBig) {
            const double s = 1.0 / kBig;
            current *= s;
            upper *= s;
            norm *= s;
            for (std::size_t j = k; j <= nmax && j < out.size(); ++j) out[j] *= s;
        }
    }
    // current now holds I_0
    const double total = current + 2.0 * norm;
    out[0] = current;
    for (auto& v : out) v /= total;
}

double scaled_single(unsigned n, double z) {
    if (z <= kSeriesLimit) return series(n, z) * std::exp(-z);
    double value = 0.0;
    if (asymptotic_scaled(n, z, value)) return value;
    std::vector<double> seq(n + 1);
    miller_scaled(z, seq);
    return seq[n];
}

}  // namespace

double bessel_i_scaled(unsigned n, double z) {
    check_argument(z);
    if (z == 0.0) return n == 0 ? 1.0 : 0.0;
    return scaled_single(n, z);
}

double bessel_i(unsigned n, double z) {
    check_argument(z);
    if (z == 0.0) return n == 0 ? 1.0 : 0.0;
    if (z <= kSeriesLimit) return series(n, z);
    const double scaled = scaled_single(n, z);
    // I_n <= I_0 <= e^z, so z below log(max) is always safe
    if (z < std::log(std::numeric_limits<double>::max())) return scaled * std::exp(z);
    const double log_value = std::log(scaled) + z;
    if (log_value >= std::log(std::numeric_limits<double>::max()))
        throw std::overflow_error("bessel_i: result exceeds double range; use bessel_i_scaled");
    return std::exp(log_value);
}

void bessel_i_scaled_sequence(double z, std::span<double> out) {
    check_argument(z);
    if (out.empty()) return;
    if (z == 0.0) {
        std::fill(out.begin(), out.end(), 0.0);
        out[0] = 1.0;
        return;
    }
    if (z <= kSeriesLimit) {
        const double damp = std::exp(-z);
        for (std::size_t k = 0; k < out.size(); ++k) out[k] = series(unsigned(k), z) * damp;
        return;
    }
    miller_scaled(z, out);
}

double bessel_i1_over_z(double z) {
    check_argument(z);
    if (z < 1e-8) return 0.5 + z * z / 16.0;
    return bessel_i(1, z) / z;
}

double bessel_i1_over_z_scaled(double z) {
    check_argument(z);
    if (z < 1e-8) return (0.5 + z * z / 16.0) * std::exp(-z);
    return bessel_i_scaled(1, z) / z;
}

}  // namespace telegf::specfun
