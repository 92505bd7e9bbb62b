#include "bachvol/smile.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <type_traits>

#include "bachvol/wings.hpp"

namespace bachvol {

void WingBoundParams::validate() const {
    if (!(b > 0.0) || !std::isfinite(b)) throw DomainError("wing parameter b must be > 0");
    if (!(c > 0.0) || !std::isfinite(c)) throw DomainError("wing parameter c must be > 0");
    if (!std::isfinite(d)) throw DomainError("wing parameter d must be finite");
}

namespace {

void check_market(double forward, double expiry) {
    if (!std::isfinite(forward)) throw DomainError("smile forward must be finite");
    if (!(expiry > 0.0) || !std::isfinite(expiry)) throw DomainError("smile expiry must be > 0");
}

std::vector<double> pchip_slopes(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    std::vector<double> h(n - 1);
    std::vector<double> delta(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        h[i] = x[i + 1] - x[i];
        delta[i] = (y[i + 1] - y[i]) / h[i];
    }
    std::vector<double> m(n, 0.0);
    if (n == 2) {
        m[0] = m[1] = delta[0];
        return m;
    }
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (delta[i - 1] * delta[i] <= 0.0) continue;
        const double w1 = 2.0 * h[i] + h[i - 1];
        const double w2 = h[i] + 2.0 * h[i - 1];
        m[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
    }
    auto end_slope = [](double h0, double h1, double d0, double d1) {
        double s = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
        if (s * d0 <= 0.0) return 0.0;
        if (d0 * d1 < 0.0 && std::abs(s) > 3.0 * std::abs(d0)) return 3.0 * d0;
        return s;
    };
    m[0] = end_slope(h[0], h[1], delta[0], delta[1]);
    m[n - 1] = end_slope(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
    return m;
}

double pchip_eval(const Smile::Tabulated& t, double k) {
    const auto& x = t.strikes;
    auto it = std::upper_bound(x.begin(), x.end(), k);
    std::size_t i = it == x.begin() ? 0 : static_cast<std::size_t>(it - x.begin()) - 1;
    if (i >= x.size() - 1) i = x.size() - 2;
    const double h = x[i + 1] - x[i];
    const double s = (k - x[i]) / h;
    const double s2 = s * s;
    const double s3 = s2 * s;
    const double h00 = 2.0 * s3 - 3.0 * s2 + 1.0;
    const double h10 = s3 - 2.0 * s2 + s;
    const double h01 = -2.0 * s3 + 3.0 * s2;
    const double h11 = s3 - s2;
    return h00 * t.stddevs[i] + h10 * h * t.slopes[i] + h01 * t.stddevs[i + 1] + h11 * h * t.slopes[i + 1];
}

}  // namespace

Smile::Smile(double forward, double expiry, StrikeDomain domain, Form form)
    : forward_(forward), expiry_(expiry), domain_(domain), form_(std::move(form)) {}

Smile Smile::flat(double forward, double expiry, double vol) {
    check_market(forward, expiry);
    (void)NormalVol(vol);
    return Smile(forward, expiry, StrikeDomain{}, Flat{vol});
}

Smile Smile::power(double forward, double expiry, double beta, double scale, double offset) {
    check_market(forward, expiry);
    if (!std::isfinite(beta)) throw DomainError("power smile: beta must be finite");
    if (!(scale > 0.0)) throw DomainError("power smile: scale must be > 0");
    if (!(offset >= 0.0)) throw DomainError("power smile: offset must be >= 0");
    StrikeDomain domain;
    if (offset == 0.0) domain.lower = forward;
    return Smile(forward, expiry, domain, Power{beta, scale, offset});
}

Smile Smile::wing_bound(double forward, double expiry, WingBoundParams params) {
    return wing_bound(forward, expiry, params, std::min(-std::numbers::e, forward - 1.0),
                      std::max(std::numbers::e, forward + 1.0));
}

Smile Smile::wing_bound(double forward, double expiry, WingBoundParams params, double k_left,
                        double k_right) {
    check_market(forward, expiry);
    params.validate();
    if (!(k_right > std::max(forward, 1.0))) {
        throw DomainError("wing-bound smile: right transition must exceed max(F, 1)");
    }
    if (!(k_left < std::min(forward, -1.0))) {
        throw DomainError("wing-bound smile: left transition must be below min(F, -1)");
    }
    return Smile(forward, expiry, StrikeDomain{}, WingBound{params, k_left, k_right});
}

Smile Smile::lemma_bound(double forward, double expiry, double b) {
    check_market(forward, expiry);
    if (!(b >= 2.0)) throw DomainError("lemma-bound smile needs b >= 2");
    return Smile(forward, expiry, StrikeDomain{forward + 1.0, std::numeric_limits<double>::infinity(), false},
                 LemmaBound{b});
}

Smile Smile::refined_bound(double forward, double expiry, double d) {
    check_market(forward, expiry);
    if (!std::isfinite(d)) throw DomainError("refined-bound smile: d must be finite");
    // Bracket 1 + d/ln(x) > 0 needs ln x > -d when d < 0.
    const double x_min = std::max(1.0, std::exp(-d));
    return Smile(forward, expiry, StrikeDomain{forward + x_min, std::numeric_limits<double>::infinity(), false},
                 RefinedBound{d});
}

Smile Smile::tabulated(double forward, double expiry, std::vector<double> strikes, const std::vector<double>& vols) {
    check_market(forward, expiry);
    if (strikes.size() != vols.size()) throw DomainError("tabulated smile: strikes and vols differ in length");
    if (strikes.size() < 2) throw DomainError("tabulated smile needs at least two points");
    for (std::size_t i = 0; i < strikes.size(); ++i) {
        if (!std::isfinite(strikes[i])) throw DomainError("tabulated smile: non-finite strike");
        if (i > 0 && !(strikes[i] > strikes[i - 1])) {
            throw DomainError("tabulated smile: strikes must be strictly increasing");
        }
        (void)NormalVol(vols[i]);
    }
    const double sqrt_t = std::sqrt(expiry);
    std::vector<double> stddevs(vols.size());
    std::transform(vols.begin(), vols.end(), stddevs.begin(), [&](double v) { return v * sqrt_t; });
    std::vector<double> slopes = pchip_slopes(strikes, stddevs);
    const StrikeDomain domain{strikes.front(), strikes.back(), true};
    return Smile(forward, expiry, domain, Tabulated{std::move(strikes), std::move(stddevs), std::move(slopes)});
}

Smile Smile::custom(double forward, double expiry, StrikeDomain domain, std::function<double(double)> vol_fn,
                    std::string label) {
    check_market(forward, expiry);
    if (!vol_fn) throw DomainError("custom smile needs a volatility function");
    return Smile(forward, expiry, domain, Custom{std::move(vol_fn), std::move(label)});
}

NormalVol Smile::vol(double strike) const {
    if (!domain_.contains(strike)) {
        std::ostringstream os;
        os.precision(17);
        os << "strike " << strike << " outside smile domain " << (domain_.closed ? "[" : "(") << domain_.lower
           << ", " << domain_.upper << (domain_.closed ? "]" : ")");
        throw DomainError(os.str());
    }
    const double f = forward_;
    const double t = expiry_;
    const double value = std::visit(
        [&](const auto& form) -> double {
            using T = std::decay_t<decltype(form)>;
            if constexpr (std::is_same_v<T, Flat>) {
                return form.vol;
            } else if constexpr (std::is_same_v<T, Power>) {
                return form.scale * std::pow(std::abs(strike - f) + form.offset, form.beta);
            } else if constexpr (std::is_same_v<T, WingBound>) {
                if (strike >= form.k_right) return upper_bound_right(strike, f, t, form.params.b).value();
                if (strike <= form.k_left) return upper_bound_left(strike, f, t, form.params.c).value();
                const double vl = upper_bound_left(form.k_left, f, t, form.params.c).value();
                const double vr = upper_bound_right(form.k_right, f, t, form.params.b).value();
                return vl + (vr - vl) * (strike - form.k_left) / (form.k_right - form.k_left);
            } else if constexpr (std::is_same_v<T, LemmaBound>) {
                return lower_bound_admissible(strike, f, t, form.b).value();
            } else if constexpr (std::is_same_v<T, RefinedBound>) {
                return refined_lower_bound(strike, f, t, form.d).value();
            } else if constexpr (std::is_same_v<T, Tabulated>) {
                return pchip_eval(form, strike) / std::sqrt(t);
            } else {
                return form.fn(strike);
            }
        },
        form_);
    if (!(value > 0.0) || !std::isfinite(value)) {
        std::ostringstream os;
        os.precision(17);
        os << "smile " << describe() << " yields non-positive vol " << value << " at strike " << strike;
        throw DomainError(os.str());
    }
    return NormalVol(value);
}

double Smile::stddev(double strike) const {
    return vol(strike).value() * std::sqrt(expiry_);
}

std::string Smile::describe() const {
    std::ostringstream os;
    std::visit(
        [&](const auto& form) {
            using T = std::decay_t<decltype(form)>;
            if constexpr (std::is_same_v<T, Flat>) {
                os << "flat(vol=" << form.vol << ")";
            } else if constexpr (std::is_same_v<T, Power>) {
                os << "power(beta=" << form.beta << ", scale=" << form.scale << ", offset=" << form.offset << ")";
            } else if constexpr (std::is_same_v<T, WingBound>) {
                os << "wing-bound(b=" << form.params.b << ", c=" << form.params.c << ")";
            } else if constexpr (std::is_same_v<T, LemmaBound>) {
                os << "lemma-bound(b=" << form.b << ")";
            } else if constexpr (std::is_same_v<T, RefinedBound>) {
                os << "refined-bound(d=" << form.d << ")";
            } else if constexpr (std::is_same_v<T, Tabulated>) {
                os << "tabulated(" << form.strikes.size() << " points)";
            } else {
                os << form.label;
            }
        },
        form_);
    return os.str();
}

}  // namespace bachvol
