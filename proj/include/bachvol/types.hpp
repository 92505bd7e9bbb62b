#pragma once

#include <cmath>
#include <string>

#include "bachvol/errors.hpp"

namespace bachvol {

enum class OptionKind { Call, Put };

/// Terms of one European option on a forward. The strike may be negative.
struct OptionTerms {
    double forward = 0.0;
    double strike = 0.0;
    double expiry = 1.0;
    double discount_factor = 1.0;

    /// Throws InvalidTermsError unless expiry > 0, discount_factor > 0 and F, K finite.
    void validate() const;
};

namespace detail {
[[noreturn]] void throw_bad_vol(const char* name, double value);
}

/// Bachelier volatility, price units per sqrt(year).
class NormalVol {
public:
    explicit NormalVol(double value) : value_(value) {
        if (!(value > 0.0) || !std::isfinite(value)) detail::throw_bad_vol("normal", value);
    }
    [[nodiscard]] double value() const noexcept { return value_; }
    friend bool operator==(NormalVol, NormalVol) = default;

private:
    double value_;
};

/// Black-76 lognormal volatility, 1/sqrt(year).
class BlackVol {
public:
    explicit BlackVol(double value) : value_(value) {
        if (!(value > 0.0) || !std::isfinite(value)) detail::throw_bad_vol("black", value);
    }
    [[nodiscard]] double value() const noexcept { return value_; }
    friend bool operator==(BlackVol, BlackVol) = default;

private:
    double value_;
};

[[nodiscard]] const char* to_string(OptionKind kind) noexcept;

}  // namespace bachvol
