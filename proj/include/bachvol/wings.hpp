#pragma once

#include <optional>
#include <span>
#include <vector>

#include "bachvol/smile.hpp"
#include "bachvol/types.hpp"

namespace bachvol {

// Asymptotic bounds on the Bachelier implied volatility wings.
//
// The bounds are statements about K -> ±inf and involve ln K, ln|K| or ln(K-F).
// They are refused (DomainError) where the logarithm is non-positive rather than
// extrapolated inward.

/// (K-F)/sqrt(b T ln K). Requires K > 1, K > F, T > 0, b > 0.
/// Vols above this for some b < 2 on arbitrarily large strikes admit arbitrage.
[[nodiscard]] NormalVol upper_bound_right(double strike, double forward, double expiry, double b);

/// (|K|+F)/sqrt(c T ln|K|). Requires K < -1, T > 0, c > 0 and |K| + F > 0.
[[nodiscard]] NormalVol upper_bound_left(double strike, double forward, double expiry, double c);

/// (K-F)/sqrt(b T ln(K-F)) for b >= 2; arbitrage free beyond some strike.
/// Requires K - F > 1.
[[nodiscard]] NormalVol lower_bound_admissible(double strike, double forward, double expiry, double b);

/// (K-F)/sqrt(2 T ln(K-F)) · [1 + d/ln(K-F)]. Requires K - F > 1 and a positive bracket.
[[nodiscard]] NormalVol refined_lower_bound(double strike, double forward, double expiry, double d);

/// Leading term of the Bachelier call priced at upper_bound_right:
///   (K-F)/(b ln K)^{3/2} · sqrt(1/(2π K^b)).
/// The exact price over this value tends to 1 as K grows.
[[nodiscard]] double call_price_on_bound(double strike, double forward, double expiry, double b);

/// Mirror of call_price_on_bound for the put on upper_bound_left:
///   (|K|+F)/(c ln|K|)^{3/2} · sqrt(1/(2π |K|^c)).
[[nodiscard]] double put_price_on_bound(double strike, double forward, double expiry, double c);

enum class WingClass { ArbitrageViolating, Admissible };

/// b < 2 violates, b >= 2 (including exactly 2) is admissible. Throws if b <= 0.
[[nodiscard]] WingClass classify_wing(double b);
[[nodiscard]] const char* to_string(WingClass c) noexcept;

/// r(x) = x / sqrt(b ln x), the bound in the variables x = K-F, s = σ_N sqrt(T).
[[nodiscard]] double bound_stddev(double x, double b);

/// dr/dx = r/x - b r³/(2x³). Requires x > 1 and b >= 2.
[[nodiscard]] double derivative_of_bound(double x, double b);

/// Range allowed for ds/dx by -1 <= dC/dK <= 0 (equivalently 0 <= dP/dK <= 1):
///   -Φ(x/s)/φ(x/s) <= ds/dx <= Φ(-x/s)/φ(x/s).
struct SlopeRange {
    double lower;
    double upper;
};

/// Evaluated as Mills ratios; past |x/s| = 30 the small side uses the
/// tail-series ratio so neither side degenerates to 0/0.
[[nodiscard]] SlopeRange allowed_slope_range(double x, double s);

struct SlopeAuditRow {
    double strike;
    double ds_dx;
    double lower_allowed;
    double upper_allowed;
    bool pass;
};

inline constexpr double kSlopeAuditTolerance = 1e-9;

/// max(1e-4·|K-F|, 1e-6·|F|), floored at 1e-8·max(1, |K|).
[[nodiscard]] double default_fd_step(double strike, double forward) noexcept;

/// Slope no-arbitrage audit of a smile at the given non-decreasing strikes.
///
/// ds/dx is a central difference with step fd_step (per-strike default when
/// empty); where one side of the stencil leaves the smile domain a one-sided
/// difference is used instead. Throws DomainError for strikes outside the domain.
[[nodiscard]] std::vector<SlopeAuditRow> slope_no_arb_audit(const Smile& smile, std::span<const double> strikes,
                                                            std::optional<double> fd_step = std::nullopt,
                                                            double tolerance = kSlopeAuditTolerance);

/// Smallest audited strike from which every later row passes; nullopt if the last row fails.
[[nodiscard]] std::optional<double> pass_threshold(std::span<const SlopeAuditRow> rows);

}  // namespace bachvol
