#include "bachvol/wings.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "bachvol/normal.hpp"

namespace bachvol {

namespace {

[[noreturn]] void domain_failure(const char* op, const std::string& why) {
    throw DomainError(std::string(op) + ": " + why);
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

void check_expiry(const char* op, double expiry) {
    if (!(expiry > 0.0) || !std::isfinite(expiry)) domain_failure(op, "expiry must be > 0");
}

void check_positive(const char* op, const char* name, double v) {
    if (!(v > 0.0) || !std::isfinite(v)) domain_failure(op, std::string(name) + " must be > 0, got " + fmt(v));
}

// Tail-series terms used for |x/s| > 30; 12 terms are below 1e-20 relative there.
constexpr double kTailSeriesFrom = 30.0;
constexpr int kTailSeriesTerms = 12;

double small_side_ratio(double u) {
    // Φ(-u)/φ(u) for u > 0.
    if (u > kTailSeriesFrom) return norm_cdf_tail_ratio(u, std::min(kTailSeriesTerms, tail_series_max_terms(u)));
    return mills_ratio(u);
}

double large_side_ratio(double u) {
    // Φ(u)/φ(u) for u > 0; overflows to +inf once φ(u) underflows.
    const double pdf = norm_pdf(u);
    if (pdf == 0.0) return INFINITY;
    return (1.0 - norm_cdf(-u)) / pdf;
}

}  // namespace

NormalVol upper_bound_right(double strike, double forward, double expiry, double b) {
    constexpr const char* op = "upper_bound_right";
    check_expiry(op, expiry);
    check_positive(op, "b", b);
    if (!(strike > 1.0)) domain_failure(op, "needs K > 1 so that ln K > 0, got K = " + fmt(strike));
    if (!(strike > forward)) domain_failure(op, "needs K > F, got K = " + fmt(strike) + ", F = " + fmt(forward));
    return NormalVol((strike - forward) / std::sqrt(b * expiry * std::log(strike)));
}

NormalVol upper_bound_left(double strike, double forward, double expiry, double c) {
    constexpr const char* op = "upper_bound_left";
    check_expiry(op, expiry);
    check_positive(op, "c", c);
    if (!(strike < -1.0)) domain_failure(op, "needs K < -1 so that ln|K| > 0, got K = " + fmt(strike));
    const double numerator = std::abs(strike) + forward;
    if (!(numerator > 0.0)) domain_failure(op, "needs |K| + F > 0");
    return NormalVol(numerator / std::sqrt(c * expiry * std::log(std::abs(strike))));
}

NormalVol lower_bound_admissible(double strike, double forward, double expiry, double b) {
    constexpr const char* op = "lower_bound_admissible";
    check_expiry(op, expiry);
    if (!(b >= 2.0)) domain_failure(op, "needs b >= 2, got b = " + fmt(b));
    const double x = strike - forward;
    if (!(x > 1.0)) domain_failure(op, "needs K - F > 1, got K - F = " + fmt(x));
    return NormalVol(x / std::sqrt(b * expiry * std::log(x)));
}

NormalVol refined_lower_bound(double strike, double forward, double expiry, double d) {
    constexpr const char* op = "refined_lower_bound";
    check_expiry(op, expiry);
    if (!std::isfinite(d)) domain_failure(op, "d must be finite");
    const double x = strike - forward;
    if (!(x > 1.0)) domain_failure(op, "needs K - F > 1, got K - F = " + fmt(x));
    const double log_x = std::log(x);
    const double bracket = 1.0 + d / log_x;
    if (!(bracket > 0.0)) domain_failure(op, "bracket 1 + d/ln(K-F) = " + fmt(bracket) + " is not positive");
    return NormalVol(x / std::sqrt(2.0 * expiry * log_x) * bracket);
}

double call_price_on_bound(double strike, double forward, double expiry, double b) {
    (void)upper_bound_right(strike, forward, expiry, b);
    const double log_k = std::log(strike);
    return (strike - forward) * std::exp(-0.5 * b * log_k) * kInvSqrt2Pi / std::pow(b * log_k, 1.5);
}

double put_price_on_bound(double strike, double forward, double expiry, double c) {
    (void)upper_bound_left(strike, forward, expiry, c);
    const double log_k = std::log(std::abs(strike));
    return (std::abs(strike) + forward) * std::exp(-0.5 * c * log_k) * kInvSqrt2Pi / std::pow(c * log_k, 1.5);
}

WingClass classify_wing(double b) {
    check_positive("classify_wing", "b", b);
    return b < 2.0 ? WingClass::ArbitrageViolating : WingClass::Admissible;
}

const char* to_string(WingClass c) noexcept {
    return c == WingClass::Admissible ? "admissible" : "arbitrage-violating";
}

double bound_stddev(double x, double b) {
    if (!(x > 1.0)) domain_failure("bound_stddev", "needs x > 1, got " + fmt(x));
    check_positive("bound_stddev", "b", b);
    return x / std::sqrt(b * std::log(x));
}

double derivative_of_bound(double x, double b) {
    constexpr const char* op = "derivative_of_bound";
    if (!(x > 1.0)) domain_failure(op, "needs x > 1, got " + fmt(x));
    if (!(b >= 2.0)) domain_failure(op, "needs b >= 2, got " + fmt(b));
    const double r = x / std::sqrt(b * std::log(x));
    const double q = r / x;
    return q - 0.5 * b * q * q * q;
}

SlopeRange allowed_slope_range(double x, double s) {
    const double u = x / s;
    if (u >= 0.0) return {-large_side_ratio(u), small_side_ratio(u)};
    return {-small_side_ratio(-u), large_side_ratio(-u)};
}

double default_fd_step(double strike, double forward) noexcept {
    const double step = std::max(1e-4 * std::abs(strike - forward), 1e-6 * std::abs(forward));
    return std::max(step, 1e-8 * std::max(1.0, std::abs(strike)));
}

std::vector<SlopeAuditRow> slope_no_arb_audit(const Smile& smile, std::span<const double> strikes,
                                              std::optional<double> fd_step, double tolerance) {
    if (fd_step && !(*fd_step > 0.0)) domain_failure("slope_no_arb_audit", "fd_step must be > 0");
    for (std::size_t i = 1; i < strikes.size(); ++i) {
        if (!(strikes[i] >= strikes[i - 1])) domain_failure("slope_no_arb_audit", "strikes must be ordered");
    }
    const double f = smile.forward();
    const StrikeDomain& dom = smile.domain();
    std::vector<SlopeAuditRow> rows;
    rows.reserve(strikes.size());
    for (const double k : strikes) {
        if (!dom.contains(k)) {
            domain_failure("slope_no_arb_audit", "strike " + fmt(k) + " outside the smile domain");
        }
        const double h = fd_step ? *fd_step : default_fd_step(k, f);
        const bool has_up = dom.contains(k + h);
        const bool has_down = dom.contains(k - h);
        const double s = smile.stddev(k);
        double slope = 0.0;
        if (has_up && has_down) {
            slope = (smile.stddev(k + h) - smile.stddev(k - h)) / (2.0 * h);
        } else if (has_up) {
            slope = (smile.stddev(k + h) - s) / h;
        } else if (has_down) {
            slope = (s - smile.stddev(k - h)) / h;
        } else {
            domain_failure("slope_no_arb_audit", "no finite-difference stencil fits the domain at " + fmt(k));
        }
        const SlopeRange range = allowed_slope_range(k - f, s);
        const bool pass = slope >= range.lower - tolerance && slope <= range.upper + tolerance;
        rows.push_back({k, slope, range.lower, range.upper, pass});
    }
    return rows;
}

std::optional<double> pass_threshold(std::span<const SlopeAuditRow> rows) {
    std::optional<double> threshold;
    for (auto it = rows.rbegin(); it != rows.rend(); ++it) {
        if (!it->pass) break;
        threshold = it->strike;
    }
    return threshold;
}

}  // namespace bachvol
