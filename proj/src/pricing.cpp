#include "bachvol/pricing.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "bachvol/normal.hpp"

namespace bachvol {

void OptionTerms::validate() const {
    if (!std::isfinite(forward)) throw InvalidTermsError("forward must be finite");
    if (!std::isfinite(strike)) throw InvalidTermsError("strike must be finite");
    if (!(expiry > 0.0) || !std::isfinite(expiry)) {
        std::ostringstream os;
        os << "expiry must be > 0 (got " << expiry << ")";
        throw InvalidTermsError(os.str());
    }
    if (!(discount_factor > 0.0) || !std::isfinite(discount_factor)) {
        std::ostringstream os;
        os << "discount factor must be > 0 (got " << discount_factor << ")";
        throw InvalidTermsError(os.str());
    }
}

namespace detail {
void throw_bad_vol(const char* name, double value) {
    std::ostringstream os;
    os << name << " volatility must be finite and > 0 (got " << value << ")";
    throw InvalidTermsError(os.str());
}
}  // namespace detail

const char* to_string(OptionKind kind) noexcept {
    return kind == OptionKind::Call ? "call" : "put";
}

double discounted_intrinsic(const OptionTerms& terms, OptionKind kind) noexcept {
    const double diff = terms.forward - terms.strike;
    const double intrinsic = kind == OptionKind::Call ? std::max(diff, 0.0) : std::max(-diff, 0.0);
    return terms.discount_factor * intrinsic;
}

double bachelier_price(const OptionTerms& terms, NormalVol vol, OptionKind kind) {
    terms.validate();
    const double s = vol.value() * std::sqrt(terms.expiry);
    const double diff = terms.forward - terms.strike;
    const double time_value = s * bachelier_otm_factor(std::abs(diff) / s);
    const double intrinsic = kind == OptionKind::Call ? std::max(diff, 0.0) : std::max(-diff, 0.0);
    return terms.discount_factor * (intrinsic + time_value);
}

double bachelier_vega(const OptionTerms& terms, NormalVol vol) {
    terms.validate();
    const double sqrt_t = std::sqrt(terms.expiry);
    const double d = (terms.forward - terms.strike) / (vol.value() * sqrt_t);
    return terms.discount_factor * sqrt_t * norm_pdf(d);
}

namespace {

void require_positive_underlying(const OptionTerms& terms) {
    if (!(terms.forward > 0.0)) throw DomainError("black model needs forward > 0");
    if (!(terms.strike > 0.0)) throw DomainError("black model needs strike > 0");
}

}  // namespace

double black_price(const OptionTerms& terms, BlackVol vol, OptionKind kind) {
    terms.validate();
    require_positive_underlying(terms);
    const double f = terms.forward;
    const double k = terms.strike;
    const double st = vol.value() * std::sqrt(terms.expiry);
    const double d1 = std::log(f / k) / st + 0.5 * st;
    const double d2 = d1 - st;
    // Price the out-of-the-money side and add intrinsic, so parity holds by construction.
    const double otm = k >= f ? f * norm_cdf(d1) - k * norm_cdf(d2)
                              : k * norm_cdf(-d2) - f * norm_cdf(-d1);
    const double diff = f - k;
    const double intrinsic = kind == OptionKind::Call ? std::max(diff, 0.0) : std::max(-diff, 0.0);
    return terms.discount_factor * (intrinsic + std::max(otm, 0.0));
}

double black_vega(const OptionTerms& terms, BlackVol vol) {
    terms.validate();
    require_positive_underlying(terms);
    const double sqrt_t = std::sqrt(terms.expiry);
    const double st = vol.value() * sqrt_t;
    const double d1 = std::log(terms.forward / terms.strike) / st + 0.5 * st;
    return terms.discount_factor * terms.forward * sqrt_t * norm_pdf(d1);
}

}  // namespace bachvol
