#include "bachvol/normal.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "bachvol/errors.hpp"

namespace bachvol {

namespace {

// 1/sqrt(2) split into a double and the remainder of its exact value.
constexpr double kInvSqrt2Hi = 0.70710678118654757274;
constexpr double kInvSqrt2Lo = -4.8336466567264565e-17;
constexpr double kTwoOverSqrtPi = 1.12837916709551257390;

// Φ(x) for x <= 0.
double lower_tail(double x) noexcept {
    const double y = -x;
    const double z = y * kInvSqrt2Hi;
    // Exact y/sqrt(2) = z + r up to O(ulp²).
    const double r = std::fma(y, kInvSqrt2Hi, -z) + y * kInvSqrt2Lo;
    const double e = std::erfc(z);
    if (e == 0.0) return 0.0;
    return 0.5 * (e - r * kTwoOverSqrtPi * std::exp(-z * z));
}

// Backward evaluation of Laplace's continued fraction tail
// K(u) = 1/(u + 2/(u + 3/(u + ...))). Converges to double precision for u >= 2.
double laplace_tail(double u) noexcept {
    constexpr int kTerms = 100;
    double t = 0.0;
    for (int n = kTerms; n >= 2; --n) t = n / (u + t);
    return 1.0 / (u + t);
}

constexpr double kContinuedFractionFrom = 2.0;

}  // namespace

double norm_pdf(double x) noexcept {
    return kInvSqrt2Pi * std::exp(-0.5 * x * x);
}

double norm_cdf(double x) noexcept {
    if (std::isnan(x)) return x;
    if (x <= 0.0) return lower_tail(x);
    return 1.0 - lower_tail(-x);
}

int tail_series_max_terms(double x) noexcept {
    const double cap = std::floor(0.5 * x * x);
    if (!(cap >= 1.0)) return 1;
    if (cap > static_cast<double>(std::numeric_limits<int>::max())) {
        return std::numeric_limits<int>::max();
    }
    return static_cast<int>(cap);
}

double norm_cdf_tail_ratio(double x, int n_terms) {
    if (!(x >= 2.0)) {
        throw DomainError("norm_cdf_tail_series: x = " + std::to_string(x) +
                          " < 2, asymptotic series unusable; use norm_cdf");
    }
    if (n_terms < 1) {
        throw DomainError("norm_cdf_tail_series: n_terms must be >= 1");
    }
    if (n_terms > tail_series_max_terms(x)) {
        throw DomainError("norm_cdf_tail_series: n_terms = " + std::to_string(n_terms) +
                          " exceeds floor(x^2/2) = " + std::to_string(tail_series_max_terms(x)) +
                          " where the series stops decreasing");
    }
    const double inv_x2 = 1.0 / (x * x);
    // term_n = (-1)^n (2n-1)!! / x^{2n}, built incrementally.
    double term = 1.0;
    double sum = 1.0;
    for (int n = 1; n < n_terms; ++n) {
        term *= -(2.0 * n - 1.0) * inv_x2;
        sum += term;
    }
    return sum / x;
}

double norm_cdf_tail_series(double x, int n_terms) {
    return norm_pdf(x) * norm_cdf_tail_ratio(x, n_terms);
}

double mills_ratio(double x) noexcept {
    if (x >= kContinuedFractionFrom) return 1.0 / (x + laplace_tail(x));
    return norm_cdf(-x) / norm_pdf(x);
}

double mills_complement(double u) noexcept {
    if (u >= kContinuedFractionFrom) {
        const double k = laplace_tail(u);
        return k / (u + k);
    }
    return 1.0 - u * norm_cdf(-u) / norm_pdf(u);
}

double bachelier_otm_factor(double u) noexcept {
    return norm_pdf(u) * mills_complement(u);
}

}  // namespace bachvol
