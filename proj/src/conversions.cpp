#include "bachvol/conversions.hpp"

#include <cmath>
#include <sstream>

#include "bachvol/pricing.hpp"

namespace bachvol {

void ConversionInput::validate() const {
    if (!(forward > 0.0) || !std::isfinite(forward)) {
        throw DomainError("conversion needs forward > 0 (expansions use ln(f/K))");
    }
    if (!(strike > 0.0) || !std::isfinite(strike)) {
        throw DomainError("conversion needs strike > 0 (expansions use ln(f/K))");
    }
    if (!(expiry > 0.0) || !std::isfinite(expiry)) throw DomainError("conversion needs expiry > 0");
}

double log_mean_ratio(double forward, double strike) {
    const double m = std::log(forward / strike);
    if (std::abs(m) < kAtmSeriesThreshold) {
        const double m2 = m * m;
        return std::sqrt(forward * strike) * (1.0 + m2 / 24.0 + m2 * m2 / 1920.0);
    }
    return (forward - strike) / m;
}

NormalVol hagan_normal_from_black_o2(const ConversionInput& in, BlackVol vol) {
    in.validate();
    const double sb = vol.value();
    return NormalVol(sb * log_mean_ratio(in.forward, in.strike) * (1.0 - sb * sb * in.expiry / 24.0));
}

NormalVol hagan_normal_from_black_o4(const ConversionInput& in, BlackVol vol) {
    in.validate();
    const double sb = vol.value();
    const double m = std::log(in.forward / in.strike);
    const double m2 = m * m;
    const double v = sb * sb * in.expiry;
    const double numerator = 1.0 + m2 / 24.0 + m2 * m2 / 1920.0;
    const double denominator = 1.0 + (1.0 - m2 / 120.0) * v / 24.0 + v * v / 5760.0;
    return NormalVol(sb * std::sqrt(in.forward * in.strike) * numerator / denominator);
}

NormalVol grunspan_normal_from_black(const ConversionInput& in, BlackVol vol) {
    in.validate();
    const double sb = vol.value();
    const double m = std::log(in.forward / in.strike);
    const double ratio = log_mean_ratio(in.forward, in.strike);
    double correction = 0.0;
    if (std::abs(m) < 1e-2) {
        // ln(sinh(m/2)/(m/2)) / m² = 1/24 - m²/2880 + m⁴/181440 + O(m⁶)
        const double m2 = m * m;
        correction = 1.0 / 24.0 - m2 / 2880.0 + m2 * m2 / 181440.0;
    } else {
        correction = std::log(ratio / std::sqrt(in.forward * in.strike)) / (m * m);
    }
    return NormalVol(sb * ratio * (1.0 - correction * sb * sb * in.expiry));
}

BlackVol lorig_black_from_normal(const ConversionInput& in, NormalVol vol) {
    in.validate();
    const double eta = vol.value() / in.forward;
    const double l = std::log(in.strike / in.forward);
    const double v = eta * eta * in.expiry;
    const double bracket =
        1.0 - 0.5 * l + (8.0 * l * l + v * (4.0 - v)) / 96.0 + l * v * (-12.0 + 5.0 * v) / 192.0;
    return BlackVol(eta * bracket);
}

namespace {

OptionTerms undiscounted_terms(const ConversionInput& in) {
    return OptionTerms{in.forward, in.strike, in.expiry, 1.0};
}

OptionKind otm_kind(const ConversionInput& in) {
    return in.strike >= in.forward ? OptionKind::Call : OptionKind::Put;
}

}  // namespace

BlackVol exact_black_from_normal(const ConversionInput& in, NormalVol vol) {
    in.validate();
    const OptionTerms terms = undiscounted_terms(in);
    const OptionKind kind = otm_kind(in);
    return implied_black_vol(terms, bachelier_price(terms, vol, kind), kind).vol;
}

NormalVol exact_normal_from_black(const ConversionInput& in, BlackVol vol) {
    in.validate();
    const OptionTerms terms = undiscounted_terms(in);
    const OptionKind kind = otm_kind(in);
    return implied_normal_vol(terms, black_price(terms, vol, kind), kind).vol;
}

double exact_convert(const ConversionInput& in, double source_vol, ConversionDirection direction) {
    if (direction == ConversionDirection::NormalToBlack) {
        return exact_black_from_normal(in, NormalVol(source_vol)).value();
    }
    return exact_normal_from_black(in, BlackVol(source_vol)).value();
}

}  // namespace bachvol
