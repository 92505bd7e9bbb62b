#include <cmath>

#include <gtest/gtest.h>

#include "bachvol/errors.hpp"
#include "bachvol/normal.hpp"
#include "bachvol/pricing.hpp"
#include "oracles/mp_values.hpp"
#include "oracles/payoff_quadrature.hpp"

using namespace bachvol;

namespace {

double rel_err(double a, double b) {
    return std::abs(a - b) / std::abs(b);
}

}  // namespace

TEST(Bachelier, AtTheMoney) {
    const OptionTerms t{100.0, 100.0, 1.0, 1.0};
    EXPECT_NEAR(bachelier_price(t, NormalVol(10.0), OptionKind::Call), 10.0 / std::sqrt(2.0 * M_PI), 1e-14);
    EXPECT_DOUBLE_EQ(bachelier_price(t, NormalVol(10.0), OptionKind::Put),
                     bachelier_price(t, NormalVol(10.0), OptionKind::Call));
}

TEST(Bachelier, MatchesPayoffQuadrature) {
    const OptionTerms t{100.0, 110.0, 2.0, 1.0};
    const double s = 15.0 * std::sqrt(2.0);
    const double price = bachelier_price(t, NormalVol(15.0), OptionKind::Call);
    EXPECT_LE(rel_err(price, oracle::gaussian_call(100.0, 110.0, s)), 1e-9);
    EXPECT_LE(rel_err(price, oracle::kBachelierCall_F100_K110_T2_S15), 1e-14);
}

TEST(Bachelier, DeepOutOfTheMoneyKeepsRelativePrecision) {
    for (const auto& row : oracle::kDeepOtmCall) {
        const double vol = (row.strike - 1.0) / std::sqrt(row.b * std::log(row.strike));
        const double price = bachelier_price(OptionTerms{1.0, row.strike, 1.0, 1.0}, NormalVol(vol), OptionKind::Call);
        EXPECT_LE(rel_err(price, row.price), 1e-12) << "b=" << row.b << " K=" << row.strike;
    }
}

TEST(Bachelier, Discounting) {
    const OptionTerms t{100.0, 95.0, 0.5, 0.97};
    const OptionTerms u{100.0, 95.0, 0.5, 1.0};
    EXPECT_NEAR(bachelier_price(t, NormalVol(8.0), OptionKind::Put),
                0.97 * bachelier_price(u, NormalVol(8.0), OptionKind::Put), 1e-14);
}

TEST(Bachelier, NegativeStrikesAllowed) {
    const OptionTerms t{0.5, -1.0, 1.0, 1.0};
    const double s = 0.8;
    EXPECT_LE(rel_err(bachelier_price(t, NormalVol(0.8), OptionKind::Put), oracle::gaussian_put(0.5, -1.0, s)), 1e-9);
}

TEST(Bachelier, PutCallParity) {
    for (double f : {-0.5, 1.0, 100.0}) {
        for (double k : {-2.0, 0.7, 95.0, 130.0}) {
            for (double vol : {0.01, 1.0, 25.0}) {
                const OptionTerms t{f, k, 1.5, 0.9};
                const double diff = bachelier_price(t, NormalVol(vol), OptionKind::Call) -
                                    bachelier_price(t, NormalVol(vol), OptionKind::Put);
                EXPECT_NEAR(diff, 0.9 * (f - k), 1e-12 * std::max(1.0, std::abs(f)));
            }
        }
    }
}

TEST(Bachelier, IncreasingInVol) {
    const OptionTerms t{100.0, 120.0, 1.0, 1.0};
    double prev = 0.0;
    for (double vol = 1.0; vol < 100.0; vol *= 1.2) {
        const double p = bachelier_price(t, NormalVol(vol), OptionKind::Call);
        EXPECT_GT(p, prev);
        EXPECT_GT(bachelier_vega(t, NormalVol(vol)), 0.0);
        prev = p;
    }
}

TEST(Bachelier, ConvexNonIncreasingInStrike) {
    const double h = 0.5;
    for (double k = 50.0; k < 150.0; k += 1.0) {
        auto c = [&](double kk) {
            return bachelier_price(OptionTerms{100.0, kk, 1.0, 1.0}, NormalVol(12.0), OptionKind::Call);
        };
        EXPECT_LE(c(k + h), c(k));
        EXPECT_GE(c(k + h) - 2.0 * c(k) + c(k - h), -1e-10);
    }
}

TEST(Bachelier, AtLeastIntrinsicAndPositive) {
    for (double k : {60.0, 100.0, 140.0}) {
        const OptionTerms t{100.0, k, 1.0, 0.95};
        for (OptionKind kind : {OptionKind::Call, OptionKind::Put}) {
            const double p = bachelier_price(t, NormalVol(3.0), kind);
            EXPECT_GE(p, discounted_intrinsic(t, kind));
            EXPECT_GT(p, 0.0);
        }
    }
}

TEST(Bachelier, InvalidTerms) {
    EXPECT_THROW((void)bachelier_price(OptionTerms{100.0, 100.0, -1.0, 1.0}, NormalVol(1.0), OptionKind::Call),
                 InvalidTermsError);
    EXPECT_THROW((void)bachelier_price(OptionTerms{100.0, 100.0, 1.0, 0.0}, NormalVol(1.0), OptionKind::Call),
                 InvalidTermsError);
    EXPECT_THROW(NormalVol(0.0), InvalidTermsError);
    EXPECT_THROW(BlackVol(-0.1), InvalidTermsError);
}

TEST(Black, AtTheMoney) {
    const OptionTerms t{100.0, 100.0, 1.0, 1.0};
    EXPECT_NEAR(black_price(t, BlackVol(0.2), OptionKind::Call), 100.0 * (2.0 * norm_cdf(0.1) - 1.0), 1e-12);
    EXPECT_NEAR(black_price(t, BlackVol(0.2), OptionKind::Call), 7.9655674554, 1e-9);
}

TEST(Black, MatchesPayoffQuadrature) {
    const OptionTerms t{100.0, 120.0, 1.0, 1.0};
    const double price = black_price(t, BlackVol(0.25), OptionKind::Call);
    EXPECT_LE(rel_err(price, oracle::lognormal_call(100.0, 120.0, 0.25)), 1e-9);
    EXPECT_LE(rel_err(price, oracle::kBlackCall_F100_K120_T1_S025), 1e-13);
    const double put = black_price(OptionTerms{100.0, 80.0, 2.0, 1.0}, BlackVol(0.3), OptionKind::Put);
    EXPECT_LE(rel_err(put, oracle::lognormal_put(100.0, 80.0, 0.3 * std::sqrt(2.0))), 1e-9);
}

TEST(Black, IntrinsicLimit) {
    const OptionTerms t{100.0, 90.0, 1.0, 0.9};
    EXPECT_NEAR(black_price(t, BlackVol(1e-6), OptionKind::Call), 0.9 * 10.0, 1e-12);
}

TEST(Black, PutCallParity) {
    for (double k : {50.0, 99.0, 100.0, 180.0}) {
        for (double vol : {0.05, 0.3, 1.5}) {
            const OptionTerms t{100.0, k, 2.0, 0.95};
            const double diff = black_price(t, BlackVol(vol), OptionKind::Call) -
                                black_price(t, BlackVol(vol), OptionKind::Put);
            EXPECT_NEAR(diff, 0.95 * (100.0 - k), 1e-12 * 100.0);
        }
    }
}

TEST(Black, NeedsPositiveForwardAndStrike) {
    EXPECT_THROW((void)black_price(OptionTerms{100.0, -1.0, 1.0, 1.0}, BlackVol(0.2), OptionKind::Call), DomainError);
    EXPECT_THROW((void)black_price(OptionTerms{0.0, 1.0, 1.0, 1.0}, BlackVol(0.2), OptionKind::Call), DomainError);
}
