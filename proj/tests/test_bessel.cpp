#include "doctest.h"

#include <cmath>

#include <boost/math/special_functions/bessel.hpp>

#include "qwalk/bessel.hpp"
#include "qwalk/error.hpp"

using namespace qwalk;

namespace {

// Ascending power series in long double; fine for x up to ~15.
double series_j(int m, double x) {
    const long double h = static_cast<long double>(x) / 2.0L;
    long double term = 1.0L;
    for (int i = 1; i <= m; ++i) term *= h / i;
    long double sum = term;
    for (int k = 1; k < 200; ++k) {
        term *= -(h * h) / (static_cast<long double>(k) * (k + m));
        sum += term;
        if (std::abs(term) < 1e-30L * std::abs(sum)) break;
    }
    return static_cast<double>(sum);
}

}  // namespace

TEST_CASE("values at zero") {
    CHECK(bessel::j(0, 0.0) == 1.0);
    for (int m : {1, 2, 7, -3, 500}) CHECK(bessel::j(m, 0.0) == 0.0);
}

TEST_CASE("J_1(2)") {
    CHECK(series_j(1, 2.0) == doctest::Approx(0.5767248077568734).epsilon(1e-15));
    CHECK(std::abs(bessel::j(1, 2.0) - 0.5767248077568734) < 1e-15);
}

TEST_CASE("small arguments against the power series") {
    double worst = 0.0;
    for (double x : {0.01, 0.1, 0.5, 1.0, 2.0, 3.7, 5.0, 10.0, 15.0}) {
        const auto seq = bessel::sequence(40, x);
        for (int m = 0; m <= 40; ++m) {
            worst = std::max(worst, std::abs(seq[static_cast<std::size_t>(m)] - series_j(m, x)));
        }
    }
    CHECK(worst < 1e-13);
}

TEST_CASE("large arguments against boost") {
    double worst = 0.0;
    for (double x : {20.0, 50.0, 100.0, 333.3, 1000.0, 5000.0, 10000.0}) {
        const int top = static_cast<int>(1.3 * x) + 30;
        const auto seq = bessel::sequence(top, x);
        for (int m = 0; m <= top; m += std::max(1, top / 60)) {
            const double ref = boost::math::cyl_bessel_j(m, x);
            worst = std::max(worst, std::abs(seq[static_cast<std::size_t>(m)] - ref));
        }
    }
    CHECK(worst < 1e-12);
}

TEST_CASE("orders far above the argument") {
    CHECK(std::abs(bessel::j(300, 1.0) - 0.0) < 1e-300);
    CHECK(bessel::j(60, 10.0) == doctest::Approx(boost::math::cyl_bessel_j(60, 10.0)).epsilon(1e-12));
    const auto seq = bessel::sequence(100000, 3.0);
    CHECK(seq.size() == 100001);
    CHECK(seq[2] == doctest::Approx(boost::math::cyl_bessel_j(2, 3.0)).epsilon(1e-14));
}

TEST_CASE("negative orders") {
    for (int m = 1; m <= 9; ++m) {
        const double sign = (m % 2 == 0) ? 1.0 : -1.0;
        CHECK(bessel::j(-m, 4.2) == sign * bessel::j(m, 4.2));
    }
}

TEST_CASE("domain guards") {
    CHECK_THROWS_AS(bessel::j(0, -1.0), DomainError);
    CHECK_THROWS_AS(bessel::j(0, 1e6), DomainError);
    CHECK_THROWS_AS(bessel::j(200000, 1.0), DomainError);
    CHECK_THROWS_AS(bessel::j(0, std::nan("")), DomainError);
}

TEST_CASE("product sums") {
    CHECK(bessel::product_sum(0, 0, 2.5) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(bessel::product_sum(1, 1, 3.0) == doctest::Approx(1.5).epsilon(1e-13));
    CHECK(bessel::product_sum(2, 0, 2.0) == doctest::Approx(2.0).epsilon(1e-13));
    // Odd term of the second-moment sum: +t/2 at nu = 1, -t/2 at nu = -1.
    CHECK(bessel::product_sum(2, 1, 5.0) == doctest::Approx(2.5).epsilon(1e-12));
    CHECK(bessel::product_sum(2, -1, 5.0) == doctest::Approx(-2.5).epsilon(1e-12));
    CHECK_THROWS_AS(bessel::product_sum(3, 0, 1.0), DomainError);
}

TEST_CASE("identity suite") {
    double worst = 0.0;
    for (double t : {0.0, 0.5, 1.0, 5.0, 20.0, 100.0}) {
        for (int p = 0; p <= 2; ++p) {
            for (int nu = -4; nu <= 4; ++nu) {
                CAPTURE(t);
                worst = std::max(worst, std::abs(bessel::product_sum(p, nu, t) -
                                                 bessel::product_sum_closed_form(p, nu, t)));
            }
        }
    }
    CHECK(worst < 1e-10);
}
