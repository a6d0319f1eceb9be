#include "qwalk/analytic.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "qwalk/bessel.hpp"
#include "qwalk/csv.hpp"
#include "qwalk/error.hpp"

namespace qwalk {

namespace {

constexpr double kCoefficientFloor = 1e-12;

// (-1)^m J_m(x) for any integer m, from a table of J_0..J_M.
double signed_kernel(const std::vector<double>& table, long long m) {
    if (m >= 0) {
        const double v = table[static_cast<std::size_t>(m)];
        return (m % 2 == 0) ? v : -v;
    }
    // (-1)^m J_m = (-1)^m (-1)^|m| J_|m| = J_|m|
    return table[static_cast<std::size_t>(-m)];
}

}  // namespace

double effective_time(double alpha, std::int64_t n0, std::int64_t n) {
    if (n0 < 1 || n < n0) {
        throw DomainError("effective_time needs n >= n0 >= 1 (n0 = " + std::to_string(n0) +
                          ", n = " + std::to_string(n) + ")");
    }
    const double log_ratio = std::log(static_cast<double>(n) / static_cast<double>(n0));
    const double e = 1.0 - alpha;
    if (e == 0.0) return log_ratio / std::numbers::sqrt2;
    // n^e - n0^e = n0^e (exp(e ln(n/n0)) - 1)
    const double span = std::pow(static_cast<double>(n0), e) * std::expm1(e * log_ratio) / e;
    return span / std::numbers::sqrt2;
}

double SigmaCoefficients::sigma(double t_star) const {
    const double v = (a * t_star + b) * t_star + c;
    return v > 0.0 ? std::sqrt(v) : 0.0;
}

InitialSums initial_sums(const WalkerState& state) {
    const auto up = state.upper();
    const auto lo = state.lower();
    InitialSums sums;
    for (std::size_t i = 1; i < up.size(); ++i) {
        const double r1 = std::real(up[i] * std::conj(up[i - 1]) + lo[i] * std::conj(lo[i - 1]));
        const auto j = static_cast<double>(state.k_min() + static_cast<Site>(i));
        sums.s1 += r1;
        sums.s3 += (2.0 * j - 1.0) * r1;
        if (i >= 2) {
            sums.s2 += std::real(up[i] * std::conj(up[i - 2]) + lo[i] * std::conj(lo[i - 2]));
        }
    }
    return sums;
}

AnalyticModel::AnalyticModel(WalkerState seed, double alpha)
    : seed_(std::move(seed)),
      alpha_(alpha),
      initial_(moments(probability(seed_))),
      sums_(initial_sums(seed_)) {
    if (!(alpha >= 0.0)) throw DomainError("analytic model needs alpha >= 0");
    const double n = seed_.norm();
    if (!(std::abs(n - 1.0) <= 1e-12)) {
        throw NormalizationError("analytic seed has norm " + csv::format(n) + ", expected 1");
    }
}

WalkerState analytic_amplitudes(const AnalyticModel& model, double t_star) {
    if (!(t_star >= 0.0)) throw DomainError("effective time must be >= 0");
    const WalkerState& seed = model.seed();
    const int reach = bessel::truncation_order(t_star);
    const auto table = bessel::sequence(reach, t_star);

    const auto width = seed.size();
    const std::size_t out_size = width + 2 * static_cast<std::size_t>(reach);
    if (out_size > 50'000'000) throw CapacityError("analytic amplitude window too large");

    std::vector<Amplitude> upper(out_size);
    std::vector<Amplitude> lower(out_size);
    const auto a0 = seed.upper();
    const auto b0 = seed.lower();
    // Output index o is site seed.k_min() - reach + o; seed index l is site k_min + l.
    for (std::size_t l = 0; l < width; ++l) {
        if (a0[l] == Amplitude{} && b0[l] == Amplitude{}) continue;
        for (long long m = -reach; m <= reach; ++m) {
            const double w = signed_kernel(table, m);
            const auto o = static_cast<std::size_t>(static_cast<long long>(l) + reach + m);
            upper[o] += w * a0[l];
            lower[o] += w * b0[l];
        }
    }
    return WalkerState::from_amplitudes(seed.k_min() - reach, std::move(upper), std::move(lower),
                                        seed.step(), 1e-6);
}

MomentRecord closed_form_moments(const AnalyticModel& model, double t_star) {
    const auto& s = model.sums();
    const double m1 = -t_star * s.s1 + model.m1_0();
    const double m2 = 0.5 * t_star * t_star * (1.0 + s.s2) - t_star * s.s3 + model.m2_0();
    return {0, m1, m2, clamped_sigma(m1, m2)};
}

SigmaCoefficients sigma_coefficients(const AnalyticModel& model) {
    const auto& s = model.sums();
    double a = 0.5 * (1.0 + s.s2) - s.s1 * s.s1;
    if (a < -kCoefficientFloor) {
        throw ConsistencyError("initial data give a negative t*^2 coefficient " + csv::format(a));
    }
    if (a < 0.0) a = 0.0;
    const double b = -s.s3 + 2.0 * s.s1 * model.m1_0();
    const double c = model.m2_0() - model.m1_0() * model.m1_0();
    return {a, b, c < 0.0 ? 0.0 : c};
}

RegimePrediction predict_regime(double alpha) {
    if (!(alpha >= 0.0)) throw DomainError("alpha must be >= 0");
    if (alpha == 0.0) return {Regime::Ballistic, GrowthLaw::Power, 1.0};
    if (alpha < 0.5) return {Regime::SubBallistic, GrowthLaw::Power, 1.0 - alpha};
    if (alpha == 0.5) return {Regime::Diffusive, GrowthLaw::Power, 0.5};
    if (alpha < 1.0) return {Regime::SubDiffusive, GrowthLaw::Power, 1.0 - alpha};
    if (alpha == 1.0) return {Regime::SubDiffusive, GrowthLaw::Logarithmic, 0.0};
    return {Regime::Localized, GrowthLaw::Bounded, 0.0};
}

std::string_view to_string(Regime regime) noexcept {
    switch (regime) {
        case Regime::Ballistic: return "ballistic";
        case Regime::SubBallistic: return "sub-ballistic";
        case Regime::Diffusive: return "diffusive";
        case Regime::SubDiffusive: return "sub-diffusive";
        case Regime::Localized: return "localized";
    }
    return "unknown";
}

std::string_view to_string(GrowthLaw law) noexcept {
    switch (law) {
        case GrowthLaw::Power: return "power";
        case GrowthLaw::Logarithmic: return "logarithmic";
        case GrowthLaw::Bounded: return "bounded";
    }
    return "unknown";
}

}  // namespace qwalk
