#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "qwalk/analytic.hpp"
#include "qwalk/error.hpp"

using namespace qwalk;

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

WalkerState random_seed(std::mt19937_64& rng, Site k_min, std::size_t width) {
    std::normal_distribution<double> g;
    std::vector<Amplitude> a(width);
    std::vector<Amplitude> b(width);
    double norm = 0.0;
    for (std::size_t i = 0; i < width; ++i) {
        a[i] = {g(rng), g(rng)};
        b[i] = {g(rng), g(rng)};
        norm += std::norm(a[i]) + std::norm(b[i]);
    }
    const double scale = 1.0 / std::sqrt(norm);
    for (std::size_t i = 0; i < width; ++i) {
        a[i] *= scale;
        b[i] *= scale;
    }
    return WalkerState::from_amplitudes(k_min, std::move(a), std::move(b), 1);
}

// Trapezoid-free check of t*: sum of cos(theta) over unit steps approaches the
// integral; used only as a loose sanity bound.
double cos_integral_midpoint(double alpha, std::int64_t n0, std::int64_t n) {
    double total = 0.0;
    const int sub = 200;
    for (std::int64_t m = n0; m < n; ++m) {
        for (int s = 0; s < sub; ++s) {
            const double x = static_cast<double>(m) + (s + 0.5) / sub;
            total += kInvSqrt2 * std::pow(x, -alpha) / sub;
        }
    }
    return total;
}

}  // namespace

TEST_CASE("effective time") {
    CHECK(effective_time(0.0, 1, 101) == doctest::Approx(100.0 / std::numbers::sqrt2).epsilon(1e-14));
    CHECK(effective_time(0.0, 1, 101) == doctest::Approx(70.7107).epsilon(1e-6));
    CHECK(effective_time(1.0, 10, 1000) == doctest::Approx(std::log(100.0) / std::numbers::sqrt2).epsilon(1e-14));
    CHECK(effective_time(1.0, 10, 1000) == doctest::Approx(3.2563470670302936).epsilon(1e-14));
    for (double alpha : {0.0, 0.3, 1.0, 2.5}) CHECK(effective_time(alpha, 17, 17) == 0.0);
    CHECK_THROWS_AS(effective_time(0.5, 10, 5), DomainError);
    CHECK_THROWS_AS(effective_time(0.5, 0, 5), DomainError);

    SUBCASE("matches quadrature of cos(theta)") {
        for (double alpha : {0.0, 0.3, 0.5, 0.9, 1.0, 1.7}) {
            CAPTURE(alpha);
            CHECK(effective_time(alpha, 5, 400) ==
                  doctest::Approx(cos_integral_midpoint(alpha, 5, 400)).epsilon(1e-5));
        }
    }
    SUBCASE("continuous across alpha = 1") {
        for (std::int64_t n : {50, 51, 1000, 99999, 100000}) {
            const double at_one = effective_time(1.0, 50, n);
            CHECK(std::abs(effective_time(1.0 + 1e-6, 50, n) - at_one) < 1e-4);
            CHECK(std::abs(effective_time(1.0 - 1e-6, 50, n) - at_one) < 1e-4);
        }
    }
}

TEST_CASE("analytic amplitudes") {
    const auto sym = WalkerState::localized(0, {kInvSqrt2, 0.0}, {0.0, kInvSqrt2});
    SUBCASE("identity at t* = 0") {
        std::mt19937_64 rng(1);
        const auto seed = random_seed(rng, -2, 5);
        const auto out = analytic_amplitudes(AnalyticModel(seed, 0.3), 0.0);
        for (Site k = out.k_min(); k <= out.k_max(); ++k) {
            CHECK(out.upper_at(k) == seed.upper_at(k));
            CHECK(out.lower_at(k) == seed.lower_at(k));
        }
    }
    SUBCASE("single-site norm") {
        for (double t : {5.0, 0.3, 42.0}) {
            CHECK(std::abs(analytic_amplitudes(AnalyticModel(sym, 0.0), t).norm() - 1.0) < 1e-10);
        }
    }
    SUBCASE("normalization for spread seeds") {
        std::mt19937_64 rng(2);
        for (double t : {1.0, 10.0, 100.0}) {
            const auto out = analytic_amplitudes(AnalyticModel(random_seed(rng, 3, 5), 0.5), t);
            CHECK(std::abs(out.norm() - 1.0) < 1e-10);
        }
    }
    SUBCASE("symmetric seed stays symmetric") {
        const auto out = analytic_amplitudes(AnalyticModel(sym, 0.0), 7.5);
        const auto d = probability(out);
        for (Site k = 0; k <= d.k_max(); ++k) CHECK(std::abs(d.at(k) - d.at(-k)) < 1e-10);
    }
    SUBCASE("satisfies 2 da/dt* = a_{k+1} - a_{k-1}") {
        std::mt19937_64 rng(9);
        const AnalyticModel model(random_seed(rng, -1, 4), 0.0);
        const double t = 3.0;
        const double h = 1e-5;
        const auto plus = analytic_amplitudes(model, t + h);
        const auto minus = analytic_amplitudes(model, t - h);
        const auto mid = analytic_amplitudes(model, t);
        for (Site k = -10; k <= 10; ++k) {
            const Amplitude lhs = (plus.upper_at(k) - minus.upper_at(k)) / h;
            const Amplitude rhs = mid.upper_at(k + 1) - mid.upper_at(k - 1);
            CHECK(std::abs(lhs - rhs) < 1e-8);
        }
    }
}

TEST_CASE("closed-form moments") {
    const auto sym = WalkerState::localized(0, {kInvSqrt2, 0.0}, {0.0, kInvSqrt2});
    const AnalyticModel single(sym, 0.0);
    SUBCASE("single-site symmetric seed") {
        CHECK(single.sums().s1 == 0.0);
        CHECK(single.sums().s2 == 0.0);
        CHECK(single.sums().s3 == 0.0);
        for (double t : {0.0, 1.0, 10.0, 123.4}) {
            const auto r = closed_form_moments(single, t);
            CHECK(r.m1 == 0.0);
            CHECK(r.m2 == doctest::Approx(t * t / 2));
            CHECK(r.sigma == doctest::Approx(t / std::numbers::sqrt2));
        }
    }
    SUBCASE("identity at t* = 0") {
        std::mt19937_64 rng(4);
        const AnalyticModel model(random_seed(rng, 2, 5), 0.3);
        const auto r = closed_form_moments(model, 0.0);
        CHECK(r.m1 == model.m1_0());
        CHECK(r.m2 == model.m2_0());
    }
    SUBCASE("brute force over the Bessel distribution") {
        std::mt19937_64 rng(12345);
        double worst = 0.0;
        for (int trial = 0; trial < 20; ++trial) {
            const AnalyticModel model(random_seed(rng, trial - 10, 5), 0.3);
            for (double t : {1.0, 10.0, 100.0}) {
                const auto brute = moments(probability(analytic_amplitudes(model, t)));
                const auto closed = closed_form_moments(model, t);
                const double scale = std::max(std::abs(brute.m1), brute.sigma);
                worst = std::max(worst, std::abs(closed.m1 - brute.m1) / scale);
                worst = std::max(worst, std::abs(closed.m2 - brute.m2) / std::abs(brute.m2));
            }
        }
        CHECK(worst < 1e-8);
    }
}

TEST_CASE("sigma coefficients") {
    SUBCASE("single-site symmetric seed") {
        const auto sym = WalkerState::localized(0, {kInvSqrt2, 0.0}, {0.0, kInvSqrt2});
        const auto c = sigma_coefficients(AnalyticModel(sym, 0.0));
        CHECK(c.a == 0.5);
        CHECK(c.b == 0.0);
        CHECK(c.c == 0.0);
    }
    SUBCASE("point mass away from the origin has zero C") {
        const auto c = sigma_coefficients(AnalyticModel(WalkerState::localized(5, 0.6, Amplitude{0, 0.8}), 0.0));
        CHECK(c.c == 0.0);
    }
    SUBCASE("quadratic reproduces closed-form sigma") {
        std::mt19937_64 rng(77);
        for (int trial = 0; trial < 20; ++trial) {
            const AnalyticModel model(random_seed(rng, -3, 5), 0.2);
            const auto c = sigma_coefficients(model);
            CHECK(c.a >= 0.0);
            for (double t : {1.0, 10.0, 100.0}) {
                const double expect = closed_form_moments(model, t).sigma;
                CHECK(std::abs(c.sigma(t) - expect) <= 1e-10 * expect);
            }
        }
    }
}

TEST_CASE("regime prediction") {
    auto p = predict_regime(0.0);
    CHECK(p.regime == Regime::Ballistic);
    CHECK(p.exponent == 1.0);
    p = predict_regime(0.3);
    CHECK(p.regime == Regime::SubBallistic);
    CHECK(p.exponent == doctest::Approx(0.7));
    p = predict_regime(0.5);
    CHECK(p.regime == Regime::Diffusive);
    CHECK(p.exponent == 0.5);
    p = predict_regime(0.8);
    CHECK(p.regime == Regime::SubDiffusive);
    CHECK(p.law == GrowthLaw::Power);
    p = predict_regime(1.0);
    CHECK(p.regime == Regime::SubDiffusive);
    CHECK(p.law == GrowthLaw::Logarithmic);
    p = predict_regime(2.0);
    CHECK(p.regime == Regime::Localized);
    CHECK(p.law == GrowthLaw::Bounded);
    CHECK(to_string(Regime::SubBallistic) == "sub-ballistic");
    CHECK_THROWS_AS(predict_regime(-0.5), DomainError);
}

TEST_CASE("model validation") {
    CHECK_THROWS_AS(AnalyticModel(WalkerState::from_amplitudes(0, {0.5}, {0.5}, 1, 1.0), 0.0),
                    NormalizationError);
    CHECK_THROWS_AS(AnalyticModel(WalkerState::localized(0, 1.0, 0.0), -1.0), DomainError);
}
