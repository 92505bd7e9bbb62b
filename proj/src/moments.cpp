#include "bachvol/moments.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "bachvol/normal.hpp"
#include "bachvol/pricing.hpp"
#include "bachvol/quadrature.hpp"

namespace bachvol {

void QuadratureConfig::validate() const {
    if (!(rel_tol > 0.0)) throw DomainError("quadrature rel_tol must be > 0");
    if (!(abs_tol >= 0.0)) throw DomainError("quadrature abs_tol must be >= 0");
    if (max_subdivisions < 1) throw DomainError("quadrature max_subdivisions must be >= 1");
    if (truncation_strikes) {
        const auto [lo, hi] = *truncation_strikes;
        if (!(lo < 0.0) || !(hi > 0.0) || !std::isfinite(lo) || !std::isfinite(hi)) {
            throw DomainError("truncation strikes must satisfy K_min < 0 < K_max");
        }
    }
}

double wing_tail_integral(double k0, int p, double b) {
    if (!(k0 > 1.0)) throw DomainError("wing_tail_integral: needs k0 > 1");
    if (!(b > 0.0)) throw DomainError("wing_tail_integral: needs b > 0");
    // In L = ln k the integrand is e^{-λL} (bL)^{-3/2}/sqrt(2π), λ = b/2 - p - 1.
    const double lambda = 0.5 * b - p - 1.0;
    const double l0 = std::log(k0);
    const double scale = kInvSqrt2Pi / std::pow(b, 1.5);
    if (lambda < 0.0) return INFINITY;
    if (lambda == 0.0) return scale * 2.0 / std::sqrt(l0);
    // ∫_{L0}^∞ e^{-λL} L^{-3/2} dL = sqrt(λ) Γ(-1/2, λ L0), and with t = sqrt(2z)
    // Γ(-1/2, z) = 2 sqrt(2) e^{-z} (1/t - Φ(-t)/φ(t)) = 2 sqrt(2) e^{-z} G(t)/t.
    const double z = lambda * l0;
    const double t = std::sqrt(2.0 * z);
    const double gamma = 2.0 * std::numbers::sqrt2 * std::exp(-z) * mills_complement(t) / t;
    return scale * std::sqrt(lambda) * gamma;
}

bool moment_exists(double b, double c, int p) {
    if (!(b > 0.0) || !(c > 0.0)) throw DomainError("moment_exists: b and c must be > 0");
    if (p < 1) throw DomainError("moment_exists: p must be >= 1");
    const double threshold = 2.0 * (1.0 + p);
    return b > threshold && c > threshold;
}

bool power_wing_all_moments(double beta) {
    return beta < 1.0;
}

namespace {

double int_power(double k, int n) {
    double r = 1.0;
    for (int i = 0; i < n; ++i) r *= k;
    return r;
}

double undiscounted_price(const Smile& smile, double k, OptionKind kind) {
    const OptionTerms terms{smile.forward(), k, smile.expiry(), 1.0};
    return bachelier_price(terms, smile.vol(k), kind);
}

// (K-F)² / (s² ln|K|): the b for which the smile coincides with the wing bound at K.
double effective_exponent(const Smile& smile, double k) {
    const double x = std::abs(k - smile.forward());
    const double s = smile.stddev(k);
    return x * x / (s * s * std::log(std::abs(k)));
}

double tail_for(const Smile& smile, double k, int p, double& exponent_out) {
    const double magnitude = std::abs(k);
    const double x = std::abs(k - smile.forward());
    if (!(magnitude > 1.0) || !(x > 0.0)) {
        exponent_out = 0.0;
        return INFINITY;
    }
    exponent_out = effective_exponent(smile, k);
    // (|K-F|)/|K| factor of the leading term, taken at its largest point.
    return std::max(1.0, x / magnitude) * wing_tail_integral(magnitude, p, exponent_out);
}

}  // namespace

MomentResult carr_madan_moment(const MomentRequest& request) {
    const int p = request.p;
    if (p < 1) throw DomainError("carr_madan_moment: p must be >= 1");
    const QuadratureConfig& cfg = request.quadrature;
    cfg.validate();
    const Smile& smile = request.smile;
    const double f = smile.forward();
    const double weight = static_cast<double>(p) * (p + 1);

    MomentResult result;
    double k_min = 0.0;
    double k_max = 0.0;
    double right_exp = 0.0;
    double left_exp = 0.0;
    if (cfg.truncation_strikes) {
        std::tie(k_min, k_max) = *cfg.truncation_strikes;
    } else {
        const double reach = 20.0 * smile.stddev(f);
        k_max = std::max(f + reach, std::numbers::e);
        k_min = std::min(f - reach, -std::numbers::e);
        for (int i = 0; i < kMaxTruncationDoublings; ++i) {
            if (!smile.domain().contains(2.0 * k_max)) break;
            if (weight * tail_for(smile, k_max, p, right_exp) <= cfg.abs_tol) break;
            k_max *= 2.0;
        }
        for (int i = 0; i < kMaxTruncationDoublings; ++i) {
            if (!smile.domain().contains(2.0 * k_min)) break;
            if (weight * tail_for(smile, k_min, p, left_exp) <= cfg.abs_tol) break;
            k_min *= 2.0;
        }
    }
    if (!smile.domain().contains(k_min) || !smile.domain().contains(k_max)) {
        throw DomainError("carr_madan_moment: smile " + smile.describe() +
                          " is not defined over the truncation range");
    }
    result.k_min = k_min;
    result.k_max = k_max;

    auto call_integrand = [&](double k) { return int_power(k, p - 1) * undiscounted_price(smile, k, OptionKind::Call); };
    auto put_integrand = [&](double k) { return int_power(k, p - 1) * undiscounted_price(smile, k, OptionKind::Put); };

    // Near region in k, far wings in ln|k|.
    const double reach = 10.0 * smile.stddev(f);
    const double near_right = std::max(f, 0.0) + reach;
    const double near_left = std::max(-f, 0.0) + reach;
    const QuadratureOptions opts{cfg.abs_tol / 4.0, cfg.rel_tol / 4.0, cfg.max_subdivisions};

    auto near_nodes = [](double lo, double hi, double mark) {
        std::vector<double> nodes;
        constexpr int kPanels = 16;
        for (int i = 0; i <= kPanels; ++i) nodes.push_back(lo + (hi - lo) * i / kPanels);
        if (mark > lo && mark < hi) nodes.push_back(mark);
        std::sort(nodes.begin(), nodes.end());
        return nodes;
    };

    double value = 0.0;
    double error = 0.0;
    bool quad_ok = true;
    auto accumulate = [&](const QuadratureResult& r) {
        value += r.value;
        error += r.error;
        quad_ok = quad_ok && r.converged;
    };

    const double right_split = std::min(near_right, k_max);
    accumulate(integrate_adaptive(call_integrand, near_nodes(0.0, right_split, f), opts));
    if (k_max > right_split) accumulate(integrate_log_substituted(call_integrand, right_split, k_max, opts));

    const double left_split = std::min(near_left, -k_min);
    accumulate(integrate_adaptive(put_integrand, near_nodes(-left_split, 0.0, f), opts));
    if (-k_min > left_split) {
        auto mirrored = [&](double v) { return put_integrand(-v); };
        accumulate(integrate_log_substituted(mirrored, left_split, -k_min, opts));
    }

    const double right_tail = tail_for(smile, k_max, p, right_exp);
    const double left_tail = tail_for(smile, k_min, p, left_exp);

    result.value = weight * value;
    result.quadrature_error = weight * error;
    result.quadrature_converged = quad_ok;
    result.tail_estimate = weight * (right_tail + left_tail);
    result.right_exponent = right_exp;
    result.left_exponent = left_exp;
    result.converged = quad_ok && std::isfinite(result.value) &&
                       result.tail_estimate <= cfg.rel_tol * std::abs(result.value);
    return result;
}

}  // namespace bachvol
