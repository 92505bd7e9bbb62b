#pragma once

#include <optional>
#include <utility>

#include "bachvol/smile.hpp"

namespace bachvol {

struct QuadratureConfig {
    double rel_tol = 1e-8;
    double abs_tol = 1e-10;
    /// (K_min, K_max) with K_min < 0 < K_max. Chosen automatically when empty.
    std::optional<std::pair<double, double>> truncation_strikes;
    int max_subdivisions = 2000;

    void validate() const;
};

struct MomentRequest {
    /// Moment order parameter; the computed moment is E[F_T^{p+1}].
    int p = 1;
    Smile smile;
    QuadratureConfig quadrature;
};

struct MomentResult {
    double value = 0.0;
    /// Estimated mass beyond the truncation strikes, already scaled by p(p+1).
    double tail_estimate = 0.0;
    bool converged = false;

    double quadrature_error = 0.0;
    bool quadrature_converged = false;
    double k_min = 0.0;
    double k_max = 0.0;
    /// Effective wing exponents (K-F)²/(s² ln K) read off the smile at the truncation strikes.
    double right_exponent = 0.0;
    double left_exponent = 0.0;
};

/// Doubling budget of the automatic truncation search.
inline constexpr int kMaxTruncationDoublings = 64;

/// E[F_T^{p+1}] by static replication around zero:
///
///   p(p+1) [ ∫_0^∞ k^{p-1} C(k) dk + ∫_{-∞}^0 k^{p-1} P(k) dk ]
///
/// with undiscounted Bachelier prices at σ_N = smile(k). The integrals are
/// truncated at (K_min, K_max); beyond them the leading-order wing price
/// k^{p-1}C ~ k^{p-b/2} / ((b ln k)^{3/2} sqrt(2π)) is integrated in closed form
/// with b read off the smile at the truncation strike. That estimate is
/// infinite when b < 2(1+p), which is how divergent moments surface.
///
/// converged is true only if the quadrature met its tolerance and
/// tail_estimate <= rel_tol·|value|.
[[nodiscard]] MomentResult carr_madan_moment(const MomentRequest& request);

/// Closed-form integral of k^{p-b/2}/((b ln k)^{3/2} sqrt(2π)) over (k0, ∞), k0 > 1.
/// Infinite when b < 2(1+p).
[[nodiscard]] double wing_tail_integral(double k0, int p, double b);

/// Finite (p+1)-th moment guaranteed when both wings sit below the bounds with
/// b > 2(1+p) and c > 2(1+p). Throws DomainError if b or c <= 0 or p < 1.
[[nodiscard]] bool moment_exists(double b, double c, int p);

/// Wings growing like |K|^beta with beta < 1 keep every moment finite.
[[nodiscard]] bool power_wing_all_moments(double beta);

}  // namespace bachvol
