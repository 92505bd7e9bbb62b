#pragma once

#include "bachvol/types.hpp"

namespace bachvol {

template <class Vol>
struct InversionResult {
    Vol vol;
    int iterations = 0;
    /// |model price at vol - input price|, discounted price units.
    double residual = 0.0;
};

inline constexpr int kMaxInversionIterations = 100;
inline constexpr double kInversionRelTol = 1e-12;
/// Prices below this are treated as unattainable rather than inverted.
inline constexpr double kMinInvertiblePrice = 1e-300;

/// Residual scale for the Bachelier round trip: max(price, B·σ√T·φ(0)).
[[nodiscard]] double normal_residual_scale(const OptionTerms& terms, double price, double vol);
/// Residual scale for the Black round trip: max(price, B·sqrt(FK)·σ√T·φ(0)).
[[nodiscard]] double black_residual_scale(const OptionTerms& terms, double price, double vol);

/// Bachelier implied volatility.
///
/// Safeguarded Newton on ln σ with an analytic derivative, falling back to
/// bisection whenever a step leaves the current bracket or fails to halve the
/// step before last. The bracket
/// [p√(2π), (p + |F-K|/2)√(2π)] / sqrt(T) on the undiscounted time value p is
/// exact, so no search is needed. ATM inversion is closed form.
///
/// Throws NoSolutionError if the price is not above discounted intrinsic (or is
/// below 1e-300) and ConvergenceError after 100 iterations or if the residual
/// contract cannot be met.
[[nodiscard]] InversionResult<NormalVol> implied_normal_vol(const OptionTerms& terms, double price,
                                                            OptionKind kind);

/// Black-76 implied volatility, same scheme. Needs F, K > 0 and a price strictly
/// between discounted intrinsic and B·F (call) or B·K (put).
[[nodiscard]] InversionResult<BlackVol> implied_black_vol(const OptionTerms& terms, double price,
                                                          OptionKind kind);

}  // namespace bachvol
