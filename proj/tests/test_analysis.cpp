#include "doctest.h"

#include <cmath>
#include <random>
#include <sstream>

#include "qwalk/analysis.hpp"
#include "qwalk/error.hpp"

using namespace qwalk;

namespace {

template <class F>
MomentSeries synthetic(std::int64_t from, std::int64_t to, std::int64_t every, F sigma) {
    MomentSeries s;
    for (std::int64_t n = from; n <= to; n += every) {
        const double v = sigma(static_cast<double>(n));
        s.records.push_back({n, 0.0, v * v, v});
    }
    return s;
}

}  // namespace

TEST_CASE("power-law fit") {
    const auto s = synthetic(10, 10000, 10, [](double n) { return 3.0 * std::pow(n, 0.7); });
    const auto fit = fit_power_law(s, 1000, 10000);
    CHECK(std::abs(fit.exponent - 0.7) < 1e-10);
    CHECK(std::abs(fit.prefactor - 3.0) < 1e-10);
    CHECK(std::abs(fit.r_squared - 1.0) < 1e-10);
    CHECK(fit.n_lo == 1000);
    CHECK(fit.n_hi == 10000);
    CHECK(fit.points == 901);

    SUBCASE("exact power laws are recovered in any window") {
        std::mt19937_64 rng(8);
        std::uniform_real_distribution<double> expo(-1.0, 2.0);
        std::uniform_int_distribution<std::int64_t> lo(1, 5000);
        for (int trial = 0; trial < 50; ++trial) {
            const double e = expo(rng);
            const auto series = synthetic(1, 10000, 7, [e](double n) { return 0.5 * std::pow(n, e); });
            const auto n_lo = lo(rng);
            const auto f = fit_power_law(series, n_lo, n_lo + 200);
            CHECK(std::abs(f.exponent - e) < 1e-10);
        }
    }
    SUBCASE("scale equivariance") {
        std::mt19937_64 rng(9);
        std::uniform_real_distribution<double> noise(0.9, 1.1);
        auto noisy = synthetic(1, 5000, 5, [&](double n) { return std::pow(n, 0.4) * noise(rng); });
        const auto base = fit_power_law(noisy, 100, 5000);
        for (double c : {0.5, 4.0, 1024.0}) {
            auto scaled = noisy;
            for (auto& r : scaled.records) r.sigma *= c;
            const auto f = fit_power_law(scaled, 100, 5000);
            CHECK(f.exponent == doctest::Approx(base.exponent).epsilon(1e-12));
            CHECK(f.r_squared == doctest::Approx(base.r_squared).epsilon(1e-12));
            CHECK(f.prefactor == doctest::Approx(c * base.prefactor).epsilon(1e-12));
        }
    }
    SUBCASE("non-positive sigma is skipped") {
        auto t = s;
        t.records[150].sigma = 0.0;
        t.records[151].sigma = -1.0;
        const auto f = fit_power_law(t, 1000, 10000);
        CHECK(f.points == 899);
        CHECK(std::abs(f.exponent - 0.7) < 1e-10);
    }
    SUBCASE("errors") {
        CHECK_THROWS_AS(fit_power_law(s, 1000, 1080), InsufficientData);
        CHECK_THROWS_AS(fit_power_law(s, 2000, 1000), DomainError);
        auto zeros = synthetic(1, 1000, 1, [](double) { return 0.0; });
        CHECK_THROWS_AS(fit_power_law(zeros, 1, 1000), InsufficientData);
    }
}

TEST_CASE("logarithmic fit") {
    const auto s = synthetic(10, 10000, 10, [](double n) { return 2.0 * std::log(n); });
    const auto fit = fit_logarithmic(s, 100, 10000);
    CHECK(std::abs(fit.exponent - 2.0) < 1e-10);
    CHECK(std::abs(fit.prefactor) < 1e-10);
    CHECK(std::abs(fit.r_squared - 1.0) < 1e-10);

    const auto flat = synthetic(10, 10000, 10, [](double) { return 4.0; });
    const auto f = fit_logarithmic(flat, 100, 10000);
    CHECK(std::abs(f.exponent) < 1e-12);
    CHECK(f.prefactor == doctest::Approx(4.0));
}

TEST_CASE("localization") {
    SUBCASE("constant sigma") {
        const auto flat = synthetic(10, 2000, 10, [](double) { return 1.5; });
        const auto v = detect_localization(flat, 100);
        CHECK(v.is_localized);
        CHECK(v.sigma_range == 0.0);
        CHECK(v.sigma_mean == doctest::Approx(1.5));
    }
    SUBCASE("power laws with exponent >= 0.1 are not localized") {
        for (double e : {0.1, 0.15, 0.3, 0.5, 1.0}) {
            for (std::int64_t lo : {10, 1000, 5000}) {
                const auto s = synthetic(10, 10000, 10, [e](double n) { return 2.0 * std::pow(n, e); });
                CAPTURE(e);
                CAPTURE(lo);
                CHECK_FALSE(detect_localization(s, lo).is_localized);
            }
        }
    }
    SUBCASE("bounded oscillation") {
        const auto s = synthetic(10, 10000, 10, [](double n) { return 1.0 + 0.2 * std::sin(n / 37.0); });
        const auto v = detect_localization(s, 1000);
        CHECK(v.is_localized);
        CHECK(std::abs(v.rank_correlation) < 0.3);
    }
    SUBCASE("converging but monotone sigma still counts as bounded") {
        const auto s = synthetic(10, 10000, 10, [](double n) { return 1.0 - 0.01 / n; });
        const auto v = detect_localization(s, 1000);
        CHECK(v.rank_correlation == doctest::Approx(1.0));
        CHECK(v.is_localized);
    }
    SUBCASE("wide swings are not bounded") {
        const auto s = synthetic(10, 10000, 10, [](double n) { return 1.0 + 0.9 * std::sin(n / 37.0); });
        CHECK_FALSE(detect_localization(s, 1000).is_localized);
    }
    SUBCASE("too few records") {
        const auto s = synthetic(10, 1000, 10, [](double) { return 1.0; });
        CHECK_THROWS_AS(detect_localization(s, 600), InsufficientData);
    }
}

TEST_CASE("smoothing") {
    const auto ramp = synthetic(1, 50, 1, [](double n) { return n; });
    SUBCASE("window 1 is the identity") {
        const auto out = smooth(ramp, 1);
        CHECK(out.records == ramp.records);
    }
    SUBCASE("constant series unchanged") {
        const auto flat = synthetic(1, 100, 1, [](double) { return 0.75; });
        for (int w : {3, 11, 101}) {
            for (const auto& r : smooth(flat, w).records) CHECK(r.sigma == doctest::Approx(0.75).epsilon(1e-15));
        }
    }
    SUBCASE("alternating series") {
        const double c = 10.0;
        const double eps = 0.3;
        const auto alt = synthetic(1, 40, 1, [&](double n) {
            return c + ((static_cast<long>(n) % 2 == 0) ? eps : -eps);
        });
        const auto out = smooth(alt, 3);
        for (std::size_t i = 1; i + 1 < out.records.size(); ++i) {
            CHECK(std::abs(out.records[i].sigma - c) == doctest::Approx(eps / 3).epsilon(1e-12));
        }
        CHECK(out.records.front().sigma == alt.records.front().sigma);
    }
    SUBCASE("linear trends pass through") {
        const auto out = smooth(ramp, 7);
        for (std::size_t i = 0; i < out.records.size(); ++i) {
            CHECK(out.records[i].sigma == doctest::Approx(ramp.records[i].sigma));
            CHECK(out.records[i].step == ramp.records[i].step);
        }
    }
    SUBCASE("bad windows") {
        CHECK_THROWS_AS(smooth(ramp, 0), DomainError);
        CHECK_THROWS_AS(smooth(ramp, 4), DomainError);
    }
}

TEST_CASE("spearman") {
    const std::vector<double> x = {1, 2, 3, 4, 5};
    CHECK(spearman(x, std::vector<double>{2, 4, 6, 8, 10}) == doctest::Approx(1.0));
    CHECK(spearman(x, std::vector<double>{5, 4, 3, 2, 1}) == doctest::Approx(-1.0));
    CHECK(spearman(x, std::vector<double>{1, 1, 1, 1, 1}) == 0.0);
    // Ties take average ranks.
    CHECK(spearman(x, std::vector<double>{1, 2, 2, 3, 4}) == doctest::Approx(0.9746794344808963));
}

TEST_CASE("fit csv row") {
    std::ostringstream out;
    write_fit_header(out);
    write_fit_row(out, 0.3, FitResult{0.7, 2.5, 0.999, 1000, 10000, 901});
    CHECK(out.str() ==
          "alpha,exponent,prefactor,r_squared,n_lo,n_hi\n"
          "0.29999999999999999,0.69999999999999996,2.5,0.999,1000,10000\n");
}
