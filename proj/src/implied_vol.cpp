#include "bachvol/implied_vol.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "bachvol/normal.hpp"
#include "bachvol/pricing.hpp"

namespace bachvol {

namespace {

constexpr double kLogSqrt2Pi = 0.918938533204672741780329736406;  // ln sqrt(2π)

struct Objective {
    double value;       // increasing in y
    double derivative;  // d value / dy
};

struct RootResult {
    double y;
    int iterations;
};

// Safeguarded Newton on an increasing function of y with a sign-change bracket.
// A Newton step that leaves the bracket or fails to halve the step before last
// is replaced by bisection.
template <class Fn>
RootResult newton_in_bracket(Fn&& objective, double lo, double hi, double y, const char* model) {
    if (!(y > lo && y < hi)) y = 0.5 * (lo + hi);
    double step_before_last = hi - lo;
    double last_step = step_before_last;
    for (int it = 1; it <= kMaxInversionIterations; ++it) {
        const Objective e = objective(y);
        if (e.value == 0.0) return {y, it};
        if (e.value < 0.0) {
            lo = y;
        } else {
            hi = y;
        }
        double next = y - e.value / e.derivative;
        if (!std::isfinite(next) || next <= lo || next >= hi ||
            std::abs(next - y) > 0.5 * std::abs(step_before_last)) {
            next = 0.5 * (lo + hi);
        }
        step_before_last = last_step;
        last_step = next - y;
        y = next;
        const double tol = 1e-15 * std::max(1.0, std::abs(y));
        if (std::abs(last_step) <= tol || hi - lo <= tol) return {y, it};
    }
    std::ostringstream os;
    os << model << " implied vol: no convergence after " << kMaxInversionIterations << " iterations";
    throw ConvergenceError(os.str());
}

[[noreturn]] void no_solution(const char* model, double price, double lower, double upper) {
    std::ostringstream os;
    os.precision(17);
    os << model << " implied vol: price " << price << " outside attainable range (" << lower << ", "
       << upper << ")";
    throw NoSolutionError(os.str());
}

void check_residual(const char* model, double residual, double scale) {
    if (!(residual <= kInversionRelTol * scale)) {
        std::ostringstream os;
        os.precision(6);
        os << model << " implied vol: residual " << residual << " exceeds tolerance "
           << kInversionRelTol * scale;
        throw ConvergenceError(os.str());
    }
}

}  // namespace

double normal_residual_scale(const OptionTerms& terms, double price, double vol) {
    return std::max(price, terms.discount_factor * vol * std::sqrt(terms.expiry) * kInvSqrt2Pi);
}

double black_residual_scale(const OptionTerms& terms, double price, double vol) {
    return std::max(price, terms.discount_factor * std::sqrt(terms.forward * terms.strike) * vol *
                               std::sqrt(terms.expiry) * kInvSqrt2Pi);
}

InversionResult<NormalVol> implied_normal_vol(const OptionTerms& terms, double price, OptionKind kind) {
    terms.validate();
    const double intrinsic = discounted_intrinsic(terms, kind);
    if (!std::isfinite(price)) no_solution("normal", price, intrinsic, INFINITY);
    if (!(price > intrinsic) || price < kMinInvertiblePrice) no_solution("normal", price, intrinsic, INFINITY);

    const double df = terms.discount_factor;
    const double sqrt_t = std::sqrt(terms.expiry);
    const double time_value = price / df - intrinsic / df;
    if (!(time_value > 0.0)) no_solution("normal", price, intrinsic, INFINITY);
    const double x = std::abs(terms.forward - terms.strike);

    double s = 0.0;
    int iterations = 0;
    if (x == 0.0) {
        s = time_value * kSqrt2Pi;
    } else {
        // s·h(x/s) <= s·φ(0) and >= s·φ(0) - x/2 bracket the root exactly.
        const double lo = std::log(time_value * kSqrt2Pi);
        const double hi = std::log((time_value + 0.5 * x) * kSqrt2Pi);
        const double log_target = std::log(time_value);
        auto objective = [&](double y) {
            const double u = x * std::exp(-y);
            const double g = mills_complement(u);
            // ln(s·φ(u)·G(u)) written out so it never underflows.
            return Objective{y - 0.5 * u * u - kLogSqrt2Pi + std::log(g) - log_target, 1.0 / g};
        };
        const RootResult root = newton_in_bracket(objective, lo, hi, lo, "normal");
        s = std::exp(root.y);
        iterations = root.iterations;
    }

    const NormalVol vol(s / sqrt_t);
    const double residual = std::abs(bachelier_price(terms, vol, kind) - price);
    check_residual("normal", residual, normal_residual_scale(terms, price, vol.value()));
    return {vol, iterations, residual};
}

InversionResult<BlackVol> implied_black_vol(const OptionTerms& terms, double price, OptionKind kind) {
    terms.validate();
    if (!(terms.forward > 0.0) || !(terms.strike > 0.0)) {
        throw DomainError("black implied vol needs forward > 0 and strike > 0");
    }
    const double df = terms.discount_factor;
    const double f = terms.forward;
    const double k = terms.strike;
    const double intrinsic = discounted_intrinsic(terms, kind);
    const double upper = df * (kind == OptionKind::Call ? f : k);
    if (!std::isfinite(price) || !(price > intrinsic) || !(price < upper) || price < kMinInvertiblePrice) {
        no_solution("black", price, intrinsic, upper);
    }

    const double sqrt_t = std::sqrt(terms.expiry);
    const double time_value = price / df - intrinsic / df;
    // Out-of-the-money side: call when K >= F, put otherwise; its value is capped by min(F, K).
    const double cap = std::min(f, k);
    if (!(time_value > 0.0) || !(time_value < cap)) no_solution("black", price, intrinsic, upper);
    const double log_fk = std::log(f / k);

    struct Parts {
        double otm;         // out-of-the-money value
        double complement;  // cap - otm, evaluated without cancellation
        double vega_scaled; // σ · d(otm)/dσ
    };
    auto parts = [&](double y) {
        const double st = std::exp(y) * sqrt_t;
        const double d1 = log_fk / st + 0.5 * st;
        const double d2 = d1 - st;
        const double otm = k >= f ? f * norm_cdf(d1) - k * norm_cdf(d2) : k * norm_cdf(-d2) - f * norm_cdf(-d1);
        const double complement = f * norm_cdf(-d1) + k * norm_cdf(d2);
        return Parts{std::max(otm, 0.0), complement, f * st * norm_pdf(d1)};
    };
    const bool low_branch = time_value <= 0.5 * cap;
    const double log_target = low_branch ? std::log(time_value) : std::log(cap - time_value);
    auto objective = [&](double y) {
        const Parts p = parts(y);
        if (low_branch) return Objective{std::log(p.otm) - log_target, p.vega_scaled / p.otm};
        return Objective{log_target - std::log(p.complement), p.vega_scaled / p.complement};
    };

    // Start at the vega-maximising vol sqrt(2|ln F/K|/T), or the ATM estimate.
    double sigma0 = std::sqrt(2.0 * std::abs(log_fk) / terms.expiry);
    sigma0 = std::max(sigma0, time_value * kSqrt2Pi / (std::sqrt(f * k) * sqrt_t));
    const double y0 = std::log(sigma0);
    double lo = y0;
    double hi = y0;
    constexpr double kMinLogVol = -690.0;
    constexpr double kMaxLogVol = 30.0;
    while (objective(lo).value >= 0.0) {
        lo -= 1.0;
        if (lo < kMinLogVol) no_solution("black", price, intrinsic, upper);
    }
    while (objective(hi).value <= 0.0) {
        hi += 1.0;
        if (hi > kMaxLogVol) no_solution("black", price, intrinsic, upper);
    }
    const RootResult root = newton_in_bracket(objective, lo, hi, y0, "black");

    const BlackVol vol(std::exp(root.y));
    const double residual = std::abs(black_price(terms, vol, kind) - price);
    check_residual("black", residual, black_residual_scale(terms, price, vol.value()));
    return {vol, root.iterations, residual};
}

}  // namespace bachvol
