#include "qwalk/bessel.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qwalk/error.hpp"

namespace qwalk::bessel {

namespace {

// Rescale the recurrence before squares can overflow a double.
constexpr double kRescaleAbove = 1e140;

void check_argument(double x) {
    if (!(x >= 0.0) || !(x <= kMaxArgument)) {
        throw DomainError("Bessel argument must lie in [0, " + std::to_string(kMaxArgument) +
                          "], got " + std::to_string(x));
    }
}

void check_order(long long order) {
    if (order > kMaxOrder || order < -static_cast<long long>(kMaxOrder)) {
        throw DomainError("Bessel order " + std::to_string(order) + " exceeds the limit " +
                          std::to_string(kMaxOrder));
    }
}

// Neumaier-compensated accumulator.
struct CompensatedSum {
    double sum = 0.0;
    double carry = 0.0;

    void add(double v) {
        const double t = sum + v;
        if (std::abs(sum) >= std::abs(v)) {
            carry += (sum - t) + v;
        } else {
            carry += (v - t) + sum;
        }
        sum = t;
    }
    double value() const { return sum + carry; }
};

}  // namespace

int truncation_order(double x) {
    check_argument(x);
    return static_cast<int>(std::ceil(x + 40.0 * std::cbrt(x) + 50.0));
}

std::vector<double> sequence(int max_order, double x) {
    check_argument(x);
    check_order(max_order);
    if (max_order < 0) throw DomainError("sequence needs a non-negative maximum order");

    std::vector<double> out(static_cast<std::size_t>(max_order) + 1, 0.0);
    if (x == 0.0) {
        out[0] = 1.0;
        return out;
    }

    // Start well past both the requested order and the turning point m = x,
    // where J_m decays faster than exponentially.
    int start = std::max(max_order, static_cast<int>(std::ceil(x))) +
                static_cast<int>(std::ceil(40.0 * std::cbrt(x))) + 50;
    start += start % 2;  // even, so the sign sum pairs up

    std::vector<double> work(static_cast<std::size_t>(start) + 2, 0.0);
    work[static_cast<std::size_t>(start)] = 1.0;
    // Entries above `top` have underflowed relative to the low orders and are zero.
    std::size_t top = static_cast<std::size_t>(start);
    const double two_over_x = 2.0 / x;
    for (int m = start; m >= 1; --m) {
        const auto um = static_cast<std::size_t>(m);
        work[um - 1] = two_over_x * m * work[um] - work[um + 1];
        if (std::abs(work[um - 1]) > kRescaleAbove) {
            std::size_t i = um - 1;
            for (; i <= top; ++i) {
                work[i] /= kRescaleAbove;
                if (i > um && work[i] == 0.0) break;
            }
            if (i <= top) {
                std::fill(work.begin() + static_cast<std::ptrdiff_t>(i),
                          work.begin() + static_cast<std::ptrdiff_t>(top) + 1, 0.0);
                top = i;
            }
        }
    }

    CompensatedSum squares;
    CompensatedSum even;
    squares.add(work[0] * work[0]);
    even.add(work[0]);
    for (int m = 1; m <= start; ++m) {
        const double v = work[static_cast<std::size_t>(m)];
        squares.add(2.0 * v * v);
        if (m % 2 == 0) even.add(2.0 * v);
    }
    const double scale = std::copysign(1.0 / std::sqrt(squares.value()), even.value());
    for (int m = 0; m <= max_order; ++m) {
        out[static_cast<std::size_t>(m)] = work[static_cast<std::size_t>(m)] * scale;
    }
    return out;
}

double j(int order, double x) {
    check_order(order);
    const int m = order < 0 ? -order : order;
    const double value = sequence(m, x)[static_cast<std::size_t>(m)];
    return (order < 0 && m % 2 != 0) ? -value : value;
}

double product_sum(int power, int nu, double t) {
    if (power < 0 || power > 2) throw DomainError("product_sum power must be 0, 1 or 2");
    const int reach = truncation_order(t) + std::abs(nu);
    check_order(reach + std::abs(nu));
    const auto table = sequence(reach + std::abs(nu), t);
    auto jm = [&](int m) {
        const double v = table[static_cast<std::size_t>(m < 0 ? -m : m)];
        return (m < 0 && (-m) % 2 != 0) ? -v : v;
    };
    CompensatedSum acc;
    for (int mu = -reach; mu <= reach; ++mu) {
        const double weight = power == 0 ? 1.0 : power == 1 ? mu : static_cast<double>(mu) * mu;
        acc.add(weight * jm(mu) * jm(mu - nu));
    }
    return acc.value();
}

double product_sum_closed_form(int power, int nu, double t) {
    auto delta = [nu](int v) { return nu == v ? 1.0 : 0.0; };
    const double h = t / 2.0;
    switch (power) {
        case 0:
            return delta(0);
        case 1:
            return h * (delta(-1) + delta(1));
        case 2:
            return h * h * (delta(-2) + 2.0 * delta(0) + delta(2)) + h * (delta(1) - delta(-1));
        default:
            throw DomainError("product_sum power must be 0, 1 or 2");
    }
}

}  // namespace qwalk::bessel
