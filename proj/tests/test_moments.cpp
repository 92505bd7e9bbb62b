#include <cmath>

#include <gtest/gtest.h>

#include "bachvol/errors.hpp"
#include "bachvol/moments.hpp"
#include "oracles/mp_values.hpp"

using namespace bachvol;

namespace {

double rel_err(double a, double b) {
    return std::abs(a - b) / std::abs(b);
}

// Raw moments of N(F, v).
double gaussian_moment(double f, double v, int order) {
    switch (order) {
        case 2: return f * f + v;
        case 3: return f * f * f + 3.0 * f * v;
        case 4: return f * f * f * f + 6.0 * f * f * v + 3.0 * v * v;
        default: return NAN;
    }
}

MomentResult bound_moment(double b, double k_max, int p = 1) {
    MomentRequest req{p, Smile::wing_bound(0.0, 1.0, WingBoundParams{b, b, 0.0}), QuadratureConfig{}};
    req.quadrature.truncation_strikes = std::make_pair(-k_max, k_max);
    return carr_madan_moment(req);
}

}  // namespace

TEST(CarrMadan, FlatSecondMoment) {
    const MomentRequest req{1, Smile::flat(100.0, 1.0, 10.0), QuadratureConfig{1e-6, 1e-10, std::nullopt, 2000}};
    const MomentResult r = carr_madan_moment(req);
    EXPECT_LE(rel_err(r.value, 10100.0), 1e-6);
    EXPECT_TRUE(r.converged);
    EXPECT_LE(r.tail_estimate, 1e-6 * r.value);
}

TEST(CarrMadan, FlatMomentsAgainstGaussian) {
    for (double f : {-3.0, 0.0, 2.5, 100.0}) {
        for (double vol : {0.5, 10.0}) {
            for (double t : {0.25, 2.0}) {
                for (int p = 1; p <= 3; ++p) {
                    const MomentRequest req{p, Smile::flat(f, t, vol), QuadratureConfig{}};
                    const MomentResult r = carr_madan_moment(req);
                    const double expected = gaussian_moment(f, vol * vol * t, p + 1);
                    EXPECT_NEAR(r.value, expected, 1e-8 * std::max(1.0, std::abs(expected)))
                        << "F=" << f << " vol=" << vol << " T=" << t << " p=" << p;
                    EXPECT_TRUE(r.converged);
                }
            }
        }
    }
}

TEST(CarrMadan, BoundSmilesAboveThresholdConverge) {
    for (double b : {5.0, 6.0}) {
        const MomentRequest req{1, Smile::wing_bound(0.0, 1.0, WingBoundParams{b, b, 0.0}), QuadratureConfig{}};
        const MomentResult r = carr_madan_moment(req);
        EXPECT_TRUE(r.converged) << b;
        EXPECT_TRUE(std::isfinite(r.value));
        EXPECT_LE(r.tail_estimate, req.quadrature.rel_tol * r.value);
    }
}

TEST(CarrMadan, BoundSmileBelowThresholdIsFlagged) {
    const MomentRequest req{1, Smile::wing_bound(0.0, 1.0, WingBoundParams{3.0, 3.0, 0.0}), QuadratureConfig{}};
    const MomentResult r = carr_madan_moment(req);
    EXPECT_FALSE(r.converged);
    EXPECT_TRUE(std::isinf(r.tail_estimate));
}

TEST(CarrMadan, StabilisesUnderTruncationGrowthAboveThreshold) {
    for (double b : {4.5, 5.0, 6.0}) {
        const double small = bound_moment(b, 1e6).value;
        const double large = bound_moment(b, 1e7).value;
        EXPECT_LE(std::abs(large - small) / small, 1e-3) << b;
    }
}

TEST(CarrMadan, GrowsUnderTruncationGrowthBelowThreshold) {
    for (double k : {1e3, 1e4, 1e5}) {
        const double small = bound_moment(3.0, k).value;
        const double large = bound_moment(3.0, 10.0 * k).value;
        EXPECT_GE(large / small - 1.0, 0.1) << k;
    }
}

TEST(CarrMadan, BoundaryExponentGrowsOnlyLogarithmically) {
    // At b = 2(1+p) the integrand decays like 1/(k (ln k)^{3/2}), which is integrable.
    const double a = bound_moment(4.0, 1e4).value;
    const double b = bound_moment(4.0, 1e5).value;
    const double c = bound_moment(4.0, 1e6).value;
    EXPECT_GT(b, a);
    EXPECT_GT(c, b);
    EXPECT_LT(c / b - 1.0, b / a - 1.0);
}

TEST(CarrMadan, TailEstimateBoundsDoubling) {
    for (double b : {5.0, 6.0, 8.0}) {
        for (double k : {1e2, 1e4}) {
            const MomentResult r = bound_moment(b, k);
            const MomentResult doubled = bound_moment(b, 2.0 * k);
            EXPECT_LT(doubled.value - r.value, r.tail_estimate) << "b=" << b << " K=" << k;
            EXPECT_GT(doubled.value, r.value);
        }
    }
}

TEST(CarrMadan, RaisingTheSmileRaisesTheMoment) {
    const QuadratureConfig cfg{1e-10, 1e-12, std::make_pair(-1e4, 1e4), 2000};
    const double low = carr_madan_moment(MomentRequest{1, Smile::wing_bound(0.0, 1.0, WingBoundParams{6.0, 6.0, 0.0}), cfg}).value;
    const double high = carr_madan_moment(MomentRequest{1, Smile::wing_bound(0.0, 1.0, WingBoundParams{5.0, 5.0, 0.0}), cfg}).value;
    EXPECT_GT(high, low);
    const double flat_low = carr_madan_moment(MomentRequest{1, Smile::flat(1.0, 1.0, 2.0), cfg}).value;
    const double flat_high = carr_madan_moment(MomentRequest{1, Smile::flat(1.0, 1.0, 2.1), cfg}).value;
    EXPECT_GT(flat_high, flat_low);
}

TEST(CarrMadan, ErrorsAndValidation) {
    EXPECT_THROW((void)carr_madan_moment(MomentRequest{0, Smile::flat(1.0, 1.0, 1.0), QuadratureConfig{}}),
                 DomainError);
    EXPECT_THROW((void)carr_madan_moment(MomentRequest{1, Smile::power(1.0, 1.0, 0.5), QuadratureConfig{}}),
                 DomainError);
    QuadratureConfig bad;
    bad.truncation_strikes = std::make_pair(1.0, 5.0);
    EXPECT_THROW((void)carr_madan_moment(MomentRequest{1, Smile::flat(1.0, 1.0, 1.0), bad}), DomainError);
    bad = QuadratureConfig{};
    bad.rel_tol = 0.0;
    EXPECT_THROW(bad.validate(), DomainError);
    bad = QuadratureConfig{};
    bad.max_subdivisions = 0;
    EXPECT_THROW(bad.validate(), DomainError);
}

TEST(CarrMadan, PowerWingsBelowOneKeepMoments) {
    const MomentRequest req{3, Smile::power(0.0, 1.0, 0.75, 1.0, 1.0), QuadratureConfig{}};
    const MomentResult r = carr_madan_moment(req);
    EXPECT_TRUE(r.converged);
    EXPECT_TRUE(power_wing_all_moments(0.75));
}

TEST(WingTailIntegral, MatchesQuadratureOracle) {
    for (const auto& t : oracle::kWingTail) {
        EXPECT_LE(rel_err(wing_tail_integral(t.k0, t.p, t.b), t.value), 1e-12)
            << "k0=" << t.k0 << " p=" << t.p << " b=" << t.b;
    }
    EXPECT_TRUE(std::isinf(wing_tail_integral(1e3, 1, 3.9)));
    EXPECT_THROW((void)wing_tail_integral(1.0, 1, 5.0), DomainError);
}

TEST(MomentExists, Examples) {
    EXPECT_TRUE(moment_exists(5.0, 5.0, 1));
    EXPECT_FALSE(moment_exists(4.0, 5.0, 1));
    EXPECT_FALSE(moment_exists(10.0, 3.0, 1));
    EXPECT_TRUE(moment_exists(8.5, 9.0, 3));
    EXPECT_FALSE(moment_exists(8.0, 9.0, 3));
    EXPECT_THROW((void)moment_exists(0.0, 5.0, 1), DomainError);
    EXPECT_THROW((void)moment_exists(5.0, 5.0, 0), DomainError);
}

TEST(PowerWingAllMoments, Examples) {
    EXPECT_TRUE(power_wing_all_moments(0.75));
    EXPECT_FALSE(power_wing_all_moments(1.0));
    EXPECT_TRUE(power_wing_all_moments(-2.0));
}
