#pragma once

#include <cstdint>
#include <string_view>

#include "qwalk/lattice.hpp"

namespace qwalk {

/// Effective time t* accumulated between steps n0 and n under the power-law
/// coin, i.e. the integral of cos(theta) from t0 to t:
///   (n^(1-alpha) - n0^(1-alpha)) / (sqrt(2) (1 - alpha))   alpha != 1
///   ln(n / n0) / sqrt(2)                                    alpha == 1
/// Evaluated through expm1 so it stays continuous across alpha = 1.
double effective_time(double alpha, std::int64_t n0, std::int64_t n);

/// Initial-condition sums of the continuum solution:
///   s1 = sum_j Re[a_j a*_{j-1} + b_j b*_{j-1}]
///   s2 = sum_j Re[a_j a*_{j-2} + b_j b*_{j-2}]
///   s3 = sum_j (2j - 1) Re[a_j a*_{j-1} + b_j b*_{j-1}]
struct InitialSums {
    double s1 = 0.0;
    double s2 = 0.0;
    double s3 = 0.0;
};

/// sigma(t*)^2 = a t*^2 + b t* + c.
struct SigmaCoefficients {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;

    double sigma(double t_star) const;
};

/// Continuum (Bessel) description of the walk seeded from the amplitudes at
/// reference step n0. `alpha` is the power-law exponent the effective time
/// is measured with; the theory assumes a slowly varying coin.
class AnalyticModel {
public:
    AnalyticModel(WalkerState seed, double alpha);

    const WalkerState& seed() const noexcept { return seed_; }
    std::int64_t n0() const noexcept { return seed_.step(); }
    double alpha() const noexcept { return alpha_; }
    double m1_0() const noexcept { return initial_.m1; }
    double m2_0() const noexcept { return initial_.m2; }
    const InitialSums& sums() const noexcept { return sums_; }

    double effective_time(std::int64_t n) const { return qwalk::effective_time(alpha_, n0(), n); }

private:
    WalkerState seed_;
    double alpha_;
    MomentRecord initial_;
    InitialSums sums_;
};

InitialSums initial_sums(const WalkerState& state);

/// a_k(t*) = sum_l (-1)^(k-l) a_l^0 J_{k-l}(t*), same for b. The result spans
/// the seed window widened by the Bessel truncation order on each side and
/// carries the seed's step label. Not renormalized.
WalkerState analytic_amplitudes(const AnalyticModel& model, double t_star);

/// m1(t*) = -t* s1 + m1(0)
/// m2(t*) = (t*^2 / 2)(1 + s2) - t* s3 + m2(0)
/// The record's step field is left at 0; callers own the time axis.
MomentRecord closed_form_moments(const AnalyticModel& model, double t_star);

/// A = (1 + s2)/2 - s1^2, B = -s3 + 2 s1 m1(0), C = m2(0) - m1(0)^2.
/// Throws ConsistencyError if A < -1e-12; tiny negative A is clamped to zero.
SigmaCoefficients sigma_coefficients(const AnalyticModel& model);

enum class Regime { Ballistic, SubBallistic, Diffusive, SubDiffusive, Localized };

enum class GrowthLaw { Power, Logarithmic, Bounded };

struct RegimePrediction {
    Regime regime;
    GrowthLaw law;
    // sigma ~ n^exponent when law == Power; 0 otherwise.
    double exponent;
};

/// Asymptotic spreading for cos(theta) ~ n^(-alpha). Throws DomainError for alpha < 0.
RegimePrediction predict_regime(double alpha);

std::string_view to_string(Regime regime) noexcept;
std::string_view to_string(GrowthLaw law) noexcept;

}  // namespace qwalk
