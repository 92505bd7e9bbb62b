#pragma once

#include "bachvol/types.hpp"

namespace bachvol {

/// Bachelier (normal model) price of a European option.
///
///   Call = B [(F-K) Φ(d) + s φ(d)],  Put = B [(K-F) Φ(-d) + s φ(d)],
///   s = σ_N sqrt(T), d = (F-K)/s.
///
/// The put is often printed with φ((K-F)/s); φ is even so the two agree.
/// Internally the price is intrinsic + s·h(|d|) so deep out-of-the-money values
/// keep full relative precision.
[[nodiscard]] double bachelier_price(const OptionTerms& terms, NormalVol vol, OptionKind kind);

/// dPrice/dσ_N = B sqrt(T) φ(d).
[[nodiscard]] double bachelier_vega(const OptionTerms& terms, NormalVol vol);

/// Black-76 price on a positive forward. Throws DomainError if F <= 0 or K <= 0.
[[nodiscard]] double black_price(const OptionTerms& terms, BlackVol vol, OptionKind kind);

/// dPrice/dσ_B = B F sqrt(T) φ(d1).
[[nodiscard]] double black_vega(const OptionTerms& terms, BlackVol vol);

/// B · max(±(F-K), 0).
[[nodiscard]] double discounted_intrinsic(const OptionTerms& terms, OptionKind kind) noexcept;

}  // namespace bachvol
