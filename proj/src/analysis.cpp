#include "qwalk/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <string>
#include <vector>

#include "qwalk/csv.hpp"
#include "qwalk/error.hpp"

namespace qwalk {

namespace {

constexpr std::size_t kMinFitPoints = 10;
constexpr std::size_t kMinLocalizationPoints = 50;

struct LineFit {
    double slope;
    double intercept;
    double r_squared;
};

LineFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
    const auto n = static_cast<double>(x.size());
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sxx = 0.0;
    double sxy = 0.0;
    double syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (sxx == 0.0) throw InsufficientData("fit window holds a single distinct time");
    const double slope = sxy / sxx;
    const double intercept = my - slope * mx;
    double ss_res = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - (intercept + slope * x[i]);
        ss_res += r * r;
    }
    double r2 = 1.0;
    if (syy > 0.0) r2 = std::clamp(1.0 - ss_res / syy, 0.0, 1.0);
    return {slope, intercept, r2};
}

template <class Transform>
FitResult fit_window(const MomentSeries& series, std::int64_t n_lo, std::int64_t n_hi,
                     Transform sigma_transform) {
    if (!(n_lo < n_hi)) {
        throw DomainError("fit window needs n_lo < n_hi (" + std::to_string(n_lo) + ", " +
                          std::to_string(n_hi) + ")");
    }
    std::vector<double> x;
    std::vector<double> y;
    std::size_t in_window = 0;
    for (const auto& r : series.records) {
        if (r.step < n_lo || r.step > n_hi || r.step < 1) continue;
        ++in_window;
        if (!(r.sigma > 0.0)) continue;
        x.push_back(std::log(static_cast<double>(r.step)));
        y.push_back(sigma_transform(r.sigma));
    }
    if (x.size() < kMinFitPoints) {
        throw InsufficientData("fit window [" + std::to_string(n_lo) + ", " +
                               std::to_string(n_hi) + "] has " + std::to_string(x.size()) +
                               " usable records of " + std::to_string(in_window) + ", need " +
                               std::to_string(kMinFitPoints));
    }
    const auto line = least_squares(x, y);
    return {line.slope, line.intercept, line.r_squared, n_lo, n_hi, x.size()};
}

std::vector<double> average_ranks(std::span<const double> v) {
    std::vector<std::size_t> order(v.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return v[a] < v[b]; });
    std::vector<double> ranks(v.size());
    for (std::size_t i = 0; i < order.size();) {
        std::size_t j = i;
        while (j + 1 < order.size() && v[order[j + 1]] == v[order[i]]) ++j;
        const double rank = 0.5 * static_cast<double>(i + j);
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
        i = j + 1;
    }
    return ranks;
}

}  // namespace

void write_fit_header(std::ostream& out) {
    out << "alpha,exponent,prefactor,r_squared,n_lo,n_hi\n";
}

void write_fit_row(std::ostream& out, double alpha, const FitResult& fit) {
    out << csv::format(alpha) << ',' << csv::format(fit.exponent) << ','
        << csv::format(fit.prefactor) << ',' << csv::format(fit.r_squared) << ',' << fit.n_lo
        << ',' << fit.n_hi << '\n';
}

FitResult fit_power_law(const MomentSeries& series, std::int64_t n_lo, std::int64_t n_hi) {
    auto fit = fit_window(series, n_lo, n_hi, [](double s) { return std::log(s); });
    fit.prefactor = std::exp(fit.prefactor);
    return fit;
}

FitResult fit_logarithmic(const MomentSeries& series, std::int64_t n_lo, std::int64_t n_hi) {
    return fit_window(series, n_lo, n_hi, [](double s) { return s; });
}

double spearman(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) return 0.0;
    const auto rx = average_ranks(x);
    const auto ry = average_ranks(y);
    const auto n = static_cast<double>(x.size());
    const double mean = 0.5 * (n - 1.0);
    double sxy = 0.0;
    double sxx = 0.0;
    double syy = 0.0;
    for (std::size_t i = 0; i < rx.size(); ++i) {
        sxy += (rx[i] - mean) * (ry[i] - mean);
        sxx += (rx[i] - mean) * (rx[i] - mean);
        syy += (ry[i] - mean) * (ry[i] - mean);
    }
    if (sxx == 0.0 || syy == 0.0) return 0.0;
    return sxy / std::sqrt(sxx * syy);
}

LocalizationVerdict detect_localization(const MomentSeries& series, std::int64_t n_lo,
                                        const LocalizationThresholds& thresholds) {
    std::vector<double> steps;
    std::vector<double> sigma;
    for (const auto& r : series.records) {
        if (r.step < n_lo) continue;
        steps.push_back(static_cast<double>(r.step));
        sigma.push_back(r.sigma);
    }
    if (sigma.size() < kMinLocalizationPoints) {
        throw InsufficientData("localization test needs " +
                               std::to_string(kMinLocalizationPoints) + " records beyond n = " +
                               std::to_string(n_lo) + ", have " + std::to_string(sigma.size()));
    }

    LocalizationVerdict v;
    const auto [lo, hi] = std::minmax_element(sigma.begin(), sigma.end());
    v.sigma_mean = std::accumulate(sigma.begin(), sigma.end(), 0.0) /
                   static_cast<double>(sigma.size());
    v.sigma_range = *hi - *lo;
    v.relative_range = v.sigma_mean > 0.0 ? v.sigma_range / v.sigma_mean : 0.0;
    v.rank_correlation = spearman(steps, sigma);

    std::vector<double> log_n;
    std::vector<double> log_sigma;
    for (std::size_t i = 0; i < sigma.size(); ++i) {
        if (sigma[i] > 0.0) {
            log_n.push_back(std::log(steps[i]));
            log_sigma.push_back(std::log(sigma[i]));
        }
    }
    if (log_n.size() >= 2 && log_n.front() != log_n.back()) {
        v.drift_exponent = least_squares(log_n, log_sigma).slope;
    }

    const bool bounded = v.relative_range < thresholds.relative_range;
    const bool trendless = std::abs(v.rank_correlation) < thresholds.rank_correlation ||
                           std::abs(v.drift_exponent) < thresholds.drift_exponent;
    v.is_localized = bounded && trendless;
    return v;
}

MomentSeries smooth(const MomentSeries& series, int window) {
    if (window < 1 || window % 2 == 0) {
        throw DomainError("smoothing window must be odd and >= 1, got " + std::to_string(window));
    }
    const auto& in = series.records;
    const auto count = static_cast<std::ptrdiff_t>(in.size());
    const std::ptrdiff_t half = window / 2;
    MomentSeries out{{}, series.schedule};
    out.records.reserve(in.size());
    for (std::ptrdiff_t i = 0; i < count; ++i) {
        const std::ptrdiff_t h = std::min({half, i, count - 1 - i});
        MomentRecord r{in[static_cast<std::size_t>(i)].step, 0.0, 0.0, 0.0};
        for (std::ptrdiff_t j = i - h; j <= i + h; ++j) {
            const auto& src = in[static_cast<std::size_t>(j)];
            r.m1 += src.m1;
            r.m2 += src.m2;
            r.sigma += src.sigma;
        }
        const auto w = static_cast<double>(2 * h + 1);
        r.m1 /= w;
        r.m2 /= w;
        r.sigma /= w;
        out.records.push_back(r);
    }
    return out;
}

}  // namespace qwalk
