#pragma once

#include "bachvol/implied_vol.hpp"
#include "bachvol/types.hpp"

namespace bachvol {

/// Forward f, strike K and expiry T of a conversion. All expansions involve
/// ln(f/K), so f > 0 and K > 0 are required.
struct ConversionInput {
    double forward;
    double strike;
    double expiry;

    void validate() const;
};

/// Below this |ln(f/K)| the ratio (f-K)/ln(f/K) and the Grunspan correction
/// switch to their Taylor series in m = ln(f/K).
inline constexpr double kAtmSeriesThreshold = 1e-4;

/// (f-K)/ln(f/K), with the removable singularity at K = f filled in:
/// sqrt(fK)·(1 + m²/24 + m⁴/1920) near the money.
[[nodiscard]] double log_mean_ratio(double forward, double strike);

/// Hagan second order: σ_N = σ_B (f-K)/ln(f/K) · (1 - σ_B²T/24).
[[nodiscard]] NormalVol hagan_normal_from_black_o2(const ConversionInput& in, BlackVol vol);

/// Hagan fourth order:
///   σ_N = σ_B sqrt(fK) [1 + m²/24 + m⁴/1920] / [1 + (1 - m²/120) σ_B²T/24 + σ_B⁴T²/5760],
/// m = ln(f/K).
[[nodiscard]] NormalVol hagan_normal_from_black_o4(const ConversionInput& in, BlackVol vol);

/// Small-time expansion, error O(T² ln T):
///   σ_N = σ_B (f-K)/ln(f/K) · (1 - ln((f-K)/(ln(f/K) sqrt(fK))) / ln²(f/K) · σ_B²T).
/// Symmetric in f and K. Near the money the correction tends to σ_B²T/24.
[[nodiscard]] NormalVol grunspan_normal_from_black(const ConversionInput& in, BlackVol vol);

/// Third-order Black vol from a normal vol, with η = σ_N/f, l = ln(K/f):
///   σ_B = η [1 - l/2 + (8l² + η²T(4 - η²T))/96 + l η²T(-12 + 5η²T)/192].
[[nodiscard]] BlackVol lorig_black_from_normal(const ConversionInput& in, NormalVol vol);

enum class ConversionDirection { NormalToBlack, BlackToNormal };

/// Price under the source model with the out-of-the-money option (call if K >= f,
/// put otherwise), undiscounted, and invert under the target model.
/// Propagates NoSolutionError when the target model cannot attain the price.
[[nodiscard]] BlackVol exact_black_from_normal(const ConversionInput& in, NormalVol vol);
[[nodiscard]] NormalVol exact_normal_from_black(const ConversionInput& in, BlackVol vol);

/// Direction-tagged form of the two functions above, on raw vol values.
[[nodiscard]] double exact_convert(const ConversionInput& in, double source_vol, ConversionDirection direction);

}  // namespace bachvol
