#pragma once

#include <vector>

namespace qwalk::bessel {

/// Largest |order| and argument accepted by the evaluators.
inline constexpr int kMaxOrder = 100'000;
inline constexpr double kMaxArgument = 100'000.0;

/// Order beyond which J_m(x) is treated as zero: x + 40 x^(1/3) + 50.
int truncation_order(double x);

/// J_0(x) ... J_max_order(x) by Miller's backward recurrence, normalized with
/// sum_m J_m(x)^2 = 1 (sign fixed by J_0 + 2 sum_k J_2k = 1). Requires x >= 0.
std::vector<double> sequence(int max_order, double x);

/// Cylindrical Bessel function of the first kind, any integer order,
/// J_{-m}(x) = (-1)^m J_m(x). Requires 0 <= x <= kMaxArgument.
double j(int order, double x);

/// Sum over mu of mu^power J_mu(t) J_{mu - nu}(t), summed directly over
/// |mu| <= truncation_order(t) + |nu|. `power` is 0, 1 or 2.
double product_sum(int power, int nu, double t);

/// Closed form of `product_sum`:
///   p = 0: delta(nu, 0)
///   p = 1: (t/2) [delta(nu, -1) + delta(nu, 1)]
///   p = 2: (t/2)^2 [delta(nu, -2) + 2 delta(nu, 0) + delta(nu, 2)]
///          + (t/2) [delta(nu, 1) - delta(nu, -1)]
double product_sum_closed_form(int power, int nu, double t);

}  // namespace qwalk::bessel
