#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "bachvol/errors.hpp"
#include "bachvol/normal.hpp"
#include "bachvol/pricing.hpp"
#include "bachvol/wings.hpp"

using namespace bachvol;

namespace {

double rel_err(double a, double b) {
    return std::abs(a - b) / std::abs(b);
}

double exact_call_on_bound(double k, double f, double t, double b) {
    return bachelier_price(OptionTerms{f, k, t, 1.0}, upper_bound_right(k, f, t, b), OptionKind::Call);
}

// Five-point central difference.
double fd5(double (*fn)(double, double), double x, double b) {
    const double h = 1e-3 * x;
    return (-fn(x + 2 * h, b) + 8 * fn(x + h, b) - 8 * fn(x - h, b) + fn(x - 2 * h, b)) / (12 * h);
}

constexpr double kE2 = 7.38905609893065;

}  // namespace

TEST(UpperBoundRight, Examples) {
    EXPECT_NEAR(upper_bound_right(std::exp(2.0), 0.0, 1.0, 2.0).value(), std::exp(2.0) / 2.0, 1e-14);
    EXPECT_NEAR(upper_bound_right(100.0, 50.0, 1.0, 2.0).value(), 16.475255724556520, 1e-12);
    for (double k : {3.0, 50.0, 1e6}) {
        EXPECT_NEAR(upper_bound_right(k, 1.0, 2.0, 8.0).value(), 0.5 * upper_bound_right(k, 1.0, 2.0, 2.0).value(),
                    1e-12 * k);
    }
}

TEST(UpperBoundRight, Domain) {
    EXPECT_THROW((void)upper_bound_right(1.0, 0.0, 1.0, 2.0), DomainError);
    EXPECT_THROW((void)upper_bound_right(5.0, 6.0, 1.0, 2.0), DomainError);
    EXPECT_THROW((void)upper_bound_right(5.0, 0.0, 1.0, 0.0), DomainError);
    EXPECT_THROW((void)upper_bound_right(5.0, 0.0, 0.0, 2.0), DomainError);
}

TEST(UpperBoundLeft, Examples) {
    EXPECT_NEAR(upper_bound_left(-100.0, 0.0, 1.0, 2.0).value(), 32.950511449113040, 1e-12);
    for (double k : {1.5, 10.0, 1e5}) {
        EXPECT_NEAR(upper_bound_left(-k, 0.0, 1.0, 3.0).value(), upper_bound_right(k, 0.0, 1.0, 3.0).value(),
                    1e-12 * k);
    }
    EXPECT_NEAR(upper_bound_left(-20.0, 1.0, 1.0, 2.0).value() / upper_bound_left(-20.0, 1.0, 1.0, 8.0).value(), 2.0,
                1e-14);
    EXPECT_THROW((void)upper_bound_left(-1.0, 0.0, 1.0, 2.0), DomainError);
    EXPECT_THROW((void)upper_bound_left(3.0, 0.0, 1.0, 2.0), DomainError);
}

TEST(LowerBoundAdmissible, Examples) {
    EXPECT_NEAR(lower_bound_admissible(std::numbers::e, 0.0, 1.0, 2.0).value(), 1.9221155140795583, 1e-14);
    EXPECT_NEAR(lower_bound_admissible(200.0, 100.0, 1.0, 2.0).value(), 32.950511449113040, 1e-12);
    EXPECT_THROW((void)lower_bound_admissible(200.0, 100.0, 1.0, 1.99), DomainError);
    EXPECT_THROW((void)lower_bound_admissible(101.0, 100.0, 1.0, 2.0), DomainError);
}

TEST(LowerBoundAdmissible, ExceedsUpperBoundForPositiveForward) {
    for (double f : {0.5, 10.0, 100.0}) {
        for (double x : {3.0, 10.0, 1e3, 1e6}) {
            const double k = f + x;
            EXPECT_GT(lower_bound_admissible(k, f, 1.0, 2.0).value(), upper_bound_right(k, f, 1.0, 2.0).value());
        }
    }
}

TEST(RefinedLowerBound, Examples) {
    for (double k : {3.0, 40.0, 1e4}) {
        EXPECT_DOUBLE_EQ(refined_lower_bound(k, 0.0, 1.0, 0.0).value(), lower_bound_admissible(k, 0.0, 1.0, 2.0).value());
    }
    EXPECT_NEAR(refined_lower_bound(kE2, 0.0, 1.0, 1.0).value(), 5.541792074197987, 1e-12);
    EXPECT_THROW((void)refined_lower_bound(kE2 + 1.0, 1.0, 1.0, -std::log(kE2)), DomainError);
    EXPECT_THROW((void)refined_lower_bound(1.5, 1.0, 1.0, 0.0), DomainError);
}

TEST(CallPriceOnBound, Examples) {
    double prev_err = 1.0;
    for (double k : {1e4, 1e6, 1e8, 1e12, 1e20}) {
        const double err = rel_err(call_price_on_bound(k, 0.0, 1.0, 2.0), exact_call_on_bound(k, 0.0, 1.0, 2.0));
        EXPECT_LT(err, prev_err) << k;
        prev_err = err;
    }
    for (double k : {10.0, 1e3, 1e9}) {
        const double simplified = 1.0 / (std::pow(2.0 * std::log(k), 1.5) * std::sqrt(2.0 * std::numbers::pi));
        EXPECT_LE(rel_err(call_price_on_bound(k, 0.0, 1.0, 2.0), simplified), 1e-14);
    }
}

TEST(CallPriceOnBound, FormulaDichotomy) {
    // For b = 1.9 the growth only sets in once ln K exceeds 30.
    const double a = call_price_on_bound(1e20, 0.0, 1.0, 1.9);
    const double b = call_price_on_bound(1e40, 0.0, 1.0, 1.9);
    const double c = call_price_on_bound(1e80, 0.0, 1.0, 1.9);
    EXPECT_LT(a, b);
    EXPECT_LT(b, c);
    const double d = call_price_on_bound(1e4, 0.0, 1.0, 2.1);
    const double e = call_price_on_bound(1e6, 0.0, 1.0, 2.1);
    const double g = call_price_on_bound(1e8, 0.0, 1.0, 2.1);
    EXPECT_GT(d, e);
    EXPECT_GT(e, g);
}

TEST(CallPriceOnBound, LeadingOrderRatioAtLargeStrike) {
    const double ratio = call_price_on_bound(1e8, 0.0, 1.0, 2.0) / exact_call_on_bound(1e8, 0.0, 1.0, 2.0);
    EXPECT_GE(ratio, 0.9);
    EXPECT_LE(ratio, 1.1);
    const double put_ratio = put_price_on_bound(-1e8, 0.0, 1.0, 2.0) /
                             bachelier_price(OptionTerms{0.0, -1e8, 1.0, 1.0}, upper_bound_left(-1e8, 0.0, 1.0, 2.0),
                                             OptionKind::Put);
    EXPECT_NEAR(put_ratio, ratio, 1e-12);
}

TEST(ExactCallOnBound, DecreasesForBAboveTwo) {
    double prev = INFINITY;
    for (int j = 3; j <= 10; ++j) {
        const double p = exact_call_on_bound(std::pow(10.0, j), 1.0, 1.0, 2.1);
        EXPECT_LT(p, prev);
        prev = p;
    }
    EXPECT_LT(prev, 1e-3);
}

TEST(ExactCallOnBound, EventuallyIncreasesForBBelowTwo) {
    // Price ~ K^{1-b/2}/(ln K)^{3/2}; for b = 1.9 the power wins once ln K > 30.
    double prev = 0.0;
    for (int j = 15; j <= 40; j += 5) {
        const double p = exact_call_on_bound(std::pow(10.0, j), 1.0, 1.0, 1.9);
        EXPECT_GT(p, prev) << j;
        prev = p;
    }
}

TEST(ClassifyWing, Dichotomy) {
    EXPECT_EQ(classify_wing(1.9), WingClass::ArbitrageViolating);
    EXPECT_EQ(classify_wing(2.0), WingClass::Admissible);
    EXPECT_EQ(classify_wing(4.0), WingClass::Admissible);
    EXPECT_THROW((void)classify_wing(0.0), DomainError);
    EXPECT_THROW((void)classify_wing(-1.0), DomainError);
}

TEST(DerivativeOfBound, Examples) {
    EXPECT_NEAR(derivative_of_bound(kE2, 2.0), 3.0 / 8.0, 1e-14);
    EXPECT_LE(rel_err(derivative_of_bound(50.0, 3.0), fd5(&bound_stddev, 50.0, 3.0)), 1e-8);
    EXPECT_THROW((void)derivative_of_bound(1.0, 2.0), DomainError);
    EXPECT_THROW((void)derivative_of_bound(5.0, 1.5), DomainError);
}

TEST(DerivativeOfBound, PositiveBeyondSqrtE) {
    for (double x = std::exp(0.5) * 1.001; x < 1e6; x *= 1.1) {
        EXPECT_GT(derivative_of_bound(x, 2.0), 0.0) << x;
    }
}

TEST(DerivativeOfBound, MatchesFiniteDifferences) {
    for (double b : {2.0, 3.0, 6.0}) {
        for (double x = 10.0; x <= 1e6; x *= 1.7) {
            EXPECT_LE(rel_err(derivative_of_bound(x, b), fd5(&bound_stddev, x, b)), 1e-8) << "x=" << x << " b=" << b;
        }
    }
}

TEST(AllowedSlopeRange, MatchesMillsRatiosAndSurvivesDeepTail) {
    const SlopeRange r = allowed_slope_range(1.0, 1.0);
    EXPECT_NEAR(r.upper, norm_cdf(-1.0) / norm_pdf(1.0), 1e-14);
    EXPECT_NEAR(r.lower, -norm_cdf(1.0) / norm_pdf(1.0), 1e-14);
    EXPECT_NEAR(r.upper, 0.6556795424187984, 1e-14);
    const SlopeRange deep = allowed_slope_range(50.0, 1.0);
    EXPECT_TRUE(std::isfinite(deep.upper));
    EXPECT_GT(deep.upper, 0.0);
    EXPECT_LE(rel_err(deep.upper, mills_ratio(50.0)), 1e-12);
    EXPECT_LT(deep.lower, -1e100);
    const SlopeRange left = allowed_slope_range(-50.0, 1.0);
    EXPECT_LE(rel_err(-left.lower, mills_ratio(50.0)), 1e-12);
}

TEST(SlopeAudit, FlatSmilePasses) {
    const Smile s = Smile::flat(100.0, 1.0, 10.0);
    const std::vector<double> strikes{-100.0, 50.0, 100.0, 150.0, 500.0};
    for (const auto& row : slope_no_arb_audit(s, strikes)) {
        EXPECT_NEAR(row.ds_dx, 0.0, 1e-12);
        EXPECT_TRUE(row.pass);
        EXPECT_LT(row.lower_allowed, 0.0);
        EXPECT_GT(row.upper_allowed, 0.0);
    }
}

TEST(SlopeAudit, LemmaBoundPasses) {
    const Smile s = Smile::lemma_bound(100.0, 1.0, 2.0);
    const std::vector<double> strikes{100.0 + std::exp(2.0), 100.0 + std::exp(3.0), 100.0 + std::exp(4.0)};
    for (const auto& row : slope_no_arb_audit(s, strikes)) EXPECT_TRUE(row.pass) << row.strike;
}

TEST(SlopeAudit, LinearSmileFailsAtLargeStrikes) {
    const double f = 100.0;
    const Smile s = Smile::custom(f, 1.0, StrikeDomain{f, INFINITY, false}, [f](double k) { return k - f + 10.0; });
    const std::vector<double> strikes{f + 1e3, f + 1e4, f + 1e5};
    for (const auto& row : slope_no_arb_audit(s, strikes)) {
        EXPECT_FALSE(row.pass) << row.strike;
        EXPECT_NEAR(row.ds_dx, 1.0, 1e-6);
        EXPECT_LT(row.upper_allowed, 0.66);
    }
}

TEST(SlopeAudit, ThresholdForLemmaSmileIsFinite) {
    const Smile s = Smile::lemma_bound(0.0, 1.0, 2.0);
    std::vector<double> strikes;
    for (double x = 1.05; x <= 1e6; x *= 1.05) strikes.push_back(x);
    const auto rows = slope_no_arb_audit(s, strikes);
    const auto x0 = pass_threshold(rows);
    ASSERT_TRUE(x0.has_value());
    EXPECT_LE(*x0, 1e3);
}

TEST(SlopeAudit, OutsideDomainThrows) {
    const Smile s = Smile::lemma_bound(0.0, 1.0, 2.0);
    const std::vector<double> strikes{0.5};
    EXPECT_THROW((void)slope_no_arb_audit(s, strikes), DomainError);
}

TEST(SlopeAudit, OneSidedAtTabulatedEdges) {
    const Smile s = Smile::tabulated(0.0, 1.0, {10.0, 20.0, 30.0}, {5.0, 6.0, 7.0});
    const std::vector<double> strikes{10.0, 30.0};
    const auto rows = slope_no_arb_audit(s, strikes);
    EXPECT_NEAR(rows[0].ds_dx, 0.1, 1e-6);
    EXPECT_NEAR(rows[1].ds_dx, 0.1, 1e-6);
}

TEST(DefaultFdStep, Rule) {
    EXPECT_DOUBLE_EQ(default_fd_step(200.0, 100.0), 1e-2);
    EXPECT_DOUBLE_EQ(default_fd_step(100.0, 100.0), 1e-4);
    EXPECT_DOUBLE_EQ(default_fd_step(0.0, 0.0), 1e-8);
}
