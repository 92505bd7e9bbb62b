#pragma once

#include <functional>
#include <limits>
#include <string>
#include <variant>
#include <vector>

#include "bachvol/types.hpp"

namespace bachvol {

/// Strikes on which a smile is defined. Analytic forms use open intervals,
/// tabulated smiles the closed range of their quotes.
struct StrikeDomain {
    double lower = -std::numeric_limits<double>::infinity();
    double upper = std::numeric_limits<double>::infinity();
    bool closed = false;

    [[nodiscard]] bool contains(double strike) const noexcept {
        return closed ? strike >= lower && strike <= upper : strike > lower && strike < upper;
    }
};

/// Parameters of the wing-bound family.
///   right wing  (K-F)/sqrt(b T ln K)        for K -> +inf
///   left wing   (|K|+F)/sqrt(c T ln|K|)     for K -> -inf
///   refinement  (K-F)/sqrt(2T ln(K-F)) · [1 + d/ln(K-F)]
struct WingBoundParams {
    double b = 2.0;
    double c = 2.0;
    double d = 0.0;

    /// Throws DomainError unless b > 0, c > 0 and d finite.
    void validate() const;
};

/// A single-expiry Bachelier volatility smile K -> σ_N(K).
///
/// Immutable after construction and safe to share across threads.
class Smile {
public:
    struct Flat {
        double vol;
    };
    /// σ_N = scale · (|K-F| + offset)^beta. With offset = 0 only K > F is valid.
    struct Power {
        double beta;
        double scale = 1.0;
        double offset = 0.0;
    };
    /// Upper wing bounds on both sides, joined linearly between the transition
    /// strikes k_left < F < k_right.
    struct WingBound {
        WingBoundParams params;
        double k_left;
        double k_right;
    };
    /// (K-F)/sqrt(b T ln(K-F)) on K - F > 1, b >= 2.
    struct LemmaBound {
        double b;
    };
    /// (K-F)/sqrt(2T ln(K-F)) · [1 + d/ln(K-F)] where the bracket is positive.
    struct RefinedBound {
        double d;
    };
    /// Monotone piecewise-cubic (Fritsch-Carlson) in strike -> σ_N sqrt(T).
    struct Tabulated {
        std::vector<double> strikes;
        std::vector<double> stddevs;
        std::vector<double> slopes;
    };
    struct Custom {
        std::function<double(double)> fn;
        std::string label;
    };
    using Form = std::variant<Flat, Power, WingBound, LemmaBound, RefinedBound, Tabulated, Custom>;

    [[nodiscard]] static Smile flat(double forward, double expiry, double vol);
    [[nodiscard]] static Smile power(double forward, double expiry, double beta, double scale = 1.0,
                                     double offset = 0.0);
    /// Transition strikes default to max(e, F+1) and min(-e, F-1).
    [[nodiscard]] static Smile wing_bound(double forward, double expiry, WingBoundParams params);
    [[nodiscard]] static Smile wing_bound(double forward, double expiry, WingBoundParams params,
                                          double k_left, double k_right);
    [[nodiscard]] static Smile lemma_bound(double forward, double expiry, double b);
    [[nodiscard]] static Smile refined_bound(double forward, double expiry, double d);
    /// Strikes strictly increasing, vols positive, at least two points.
    [[nodiscard]] static Smile tabulated(double forward, double expiry, std::vector<double> strikes,
                                         const std::vector<double>& vols);
    [[nodiscard]] static Smile custom(double forward, double expiry, StrikeDomain domain,
                                      std::function<double(double)> vol_fn, std::string label = "custom");

    /// σ_N(K). Throws DomainError outside the domain or if the form yields a non-positive vol.
    [[nodiscard]] NormalVol vol(double strike) const;
    /// s = σ_N(K) sqrt(T).
    [[nodiscard]] double stddev(double strike) const;
    /// x = K - F.
    [[nodiscard]] double moneyness(double strike) const noexcept { return strike - forward_; }

    [[nodiscard]] double forward() const noexcept { return forward_; }
    [[nodiscard]] double expiry() const noexcept { return expiry_; }
    [[nodiscard]] const StrikeDomain& domain() const noexcept { return domain_; }
    [[nodiscard]] const Form& form() const noexcept { return form_; }
    [[nodiscard]] std::string describe() const;

private:
    Smile(double forward, double expiry, StrikeDomain domain, Form form);

    double forward_;
    double expiry_;
    StrikeDomain domain_;
    Form form_;
};

}  // namespace bachvol
