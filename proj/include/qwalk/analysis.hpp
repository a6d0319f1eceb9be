#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>

#include "qwalk/evolution.hpp"

namespace qwalk {

struct FitResult {
    // Slope of the fit: power-law exponent, or d sigma / d ln n for the log fit.
    double exponent = 0.0;
    // exp(intercept) for the power law, the intercept itself for the log fit.
    double prefactor = 0.0;
    double r_squared = 0.0;
    std::int64_t n_lo = 0;
    std::int64_t n_hi = 0;
    std::size_t points = 0;
};

/// CSV header and row for fit summaries: `alpha,exponent,prefactor,r_squared,n_lo,n_hi`.
void write_fit_header(std::ostream& out);
void write_fit_row(std::ostream& out, double alpha, const FitResult& fit);

/// Least squares of ln sigma on ln n over records with n in [n_lo, n_hi].
/// Records with sigma <= 0 are skipped; fewer than 10 usable records throws
/// InsufficientData.
FitResult fit_power_law(const MomentSeries& series, std::int64_t n_lo, std::int64_t n_hi);

/// Least squares of sigma on ln n over the same window.
FitResult fit_logarithmic(const MomentSeries& series, std::int64_t n_lo, std::int64_t n_hi);

struct LocalizationThresholds {
    double relative_range = 0.5;
    double rank_correlation = 0.3;
    // A monotone trend only counts once it is visible in the log-log slope.
    double drift_exponent = 0.05;
};

struct LocalizationVerdict {
    bool is_localized = false;
    double sigma_mean = 0.0;
    // max - min of sigma over the trailing window.
    double sigma_range = 0.0;
    double relative_range = 0.0;
    double rank_correlation = 0.0;
    double drift_exponent = 0.0;
};

/// Bounded-sigma test over records with n >= n_lo (at least 50 of them).
/// Localized iff the relative range (max - min) / mean is below the threshold
/// and sigma shows no trend: either the Spearman correlation of sigma with n
/// is weak, or the log-log slope of sigma is negligible.
LocalizationVerdict detect_localization(const MomentSeries& series, std::int64_t n_lo,
                                        const LocalizationThresholds& thresholds = {});

/// Centered moving average of m1, m2 and sigma over `window` records (odd).
/// Near the ends the window shrinks symmetrically.
MomentSeries smooth(const MomentSeries& series, int window);

/// Spearman rank correlation with average ranks for ties; 0 when either
/// input is constant.
double spearman(std::span<const double> x, std::span<const double> y);

}  // namespace qwalk
