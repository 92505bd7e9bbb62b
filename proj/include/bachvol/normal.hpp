#pragma once

namespace bachvol {

inline constexpr double kInvSqrt2Pi = 0.398942280401432677939946059934;  // 1/sqrt(2π)
inline constexpr double kSqrt2Pi = 2.50662827463100050241576528481;      // sqrt(2π)

/// Standard normal density exp(-x²/2)/sqrt(2π).
[[nodiscard]] double norm_pdf(double x) noexcept;

/// Standard normal CDF with relative accuracy near 1e-16 in both tails.
///
/// Evaluated as erfc(-x/sqrt(2))/2 with a first-order correction for the rounding
/// of the scaled argument, which otherwise costs ~x² ulps deep in the lower tail.
[[nodiscard]] double norm_cdf(double x) noexcept;

/// Truncated asymptotic series for Φ(-x):
///
///   φ(x)/x · [1 + Σ_{n=1}^{N-1} (-1)^n (2n-1)!! / x^{2n}]
///
/// Requires x >= 2 and 1 <= n_terms <= floor(x²/2); past that cap the terms stop
/// decreasing and the series diverges. Throws DomainError otherwise.
[[nodiscard]] double norm_cdf_tail_series(double x, int n_terms);

/// Same series divided by φ(x), i.e. an approximation of the Mills ratio Φ(-x)/φ(x)
/// that never underflows. Same preconditions as norm_cdf_tail_series.
[[nodiscard]] double norm_cdf_tail_ratio(double x, int n_terms);

/// Largest usable term count of the tail series at x: floor(x²/2).
[[nodiscard]] int tail_series_max_terms(double x) noexcept;

/// Mills ratio Φ(-x)/φ(x) for any finite x; finite and accurate for large x.
[[nodiscard]] double mills_ratio(double x) noexcept;

/// 1 - u·Φ(-u)/φ(u) for u >= 0, evaluated without cancellation.
/// Equals 1 at u = 0 and behaves like 1/u² as u grows.
[[nodiscard]] double mills_complement(double u) noexcept;

/// Normalised out-of-the-money Bachelier price h(u) = φ(u) - u·Φ(-u), u >= 0.
/// An OTM option with |F-K| = u·s costs s·h(u).
[[nodiscard]] double bachelier_otm_factor(double u) noexcept;

}  // namespace bachvol
